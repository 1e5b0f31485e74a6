//! Finite effect algebras: axiom checking, derived order, sharp and meager
//! elements, blocks, and reconstruction of an algebra from its triple
//! `(Sh(E), Mea(E), h)`.
//!
//! Algebras are small (at most 64 elements) and stored as dense partial
//! tables indexed by element number. Everything is a pure function of
//! immutable values.

pub mod algebra;
pub mod catalog;
pub mod checks;
pub mod elemset;
pub mod error;
pub mod format;
pub mod iso;
pub mod order;
pub mod structure;
pub mod trt;
pub mod validate;

pub use algebra::{default_labels, EffectAlgebra, Elem, GeneralizedEffectAlgebra, PartialTable};
pub use catalog::{enumerate_all, enumerate_size, generate, standard_catalog, GeneratorSpec};
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use format::{parse_ea, serialize_ea};
pub use iso::{canonical_form, find_isomorphism, fingerprint, Fingerprint};
pub use order::{classify, derive, derive_gea, Classification, DerivedStructure, Direction, GeaStructure};
pub use structure::{property_report, PropertyReport};
pub use trt::{
    extract_triple, parse_triple, reconstruct_tea, serialize_triple, trt_check, verify_triple_theorem, TeaAlgebra,
    Triple, TripleView, TrtReport, Verification,
};
pub use validate::{validate_ea, validate_gea, Axiom, ValidationReport};
