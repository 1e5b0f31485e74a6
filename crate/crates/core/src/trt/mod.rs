//! The triple `(Sh(E), Mea(E), h)` of a TRT-effect algebra and the
//! reconstruction of `E` from it.
//!
//! [`eside`] works inside `E`: it decides the TRT conditions and computes
//! `x̂`, `π_s(x)`, `R(x)` and `S(x, y)` directly. [`triple`] defines the
//! [`Triple`] value and recomputes the same maps from the triple's tables
//! alone. [`tea`] builds `Tea(E)` from a triple and certifies
//! `φ(x) = (x̃, x ⊖ x̃)` as an isomorphism.

pub mod eside;
pub mod tea;
pub mod triple;

pub use eside::{m_maps, s_map, trt_check, Condition, MMaps, TrtAlgebra, TrtReport};
pub use tea::{map_discrepancy, reconstruct_tea, verify_triple_theorem, TeaAlgebra, Verification};
pub use triple::{
    extract_triple, parse_triple, serialize_triple, Triple, TripleEmbedding, TripleView,
};
