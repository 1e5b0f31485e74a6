//! Structure built on the derived order: element kinds, compatibility,
//! Riesz decomposition, blocks, and the aggregated [`PropertyReport`].

pub mod blocks;
pub mod compat;
pub mod elements;
pub mod props;
pub mod riesz;

pub use blocks::{blocks, blocks_by_compatibility, blocks_by_riesz, is_sub_effect_algebra, subalgebra, Block, Blocks};
pub use compat::{comp, compatibility_witness, compatible, has_maximality_property, is_orthocomplete, Maximality};
pub use elements::{
    atoms, center, decompose, is_atomic, is_central, is_principal, is_sharply_dominating, meager_gea, ord_of,
    sharp_set, tilde_hat, Decomposition, MeagerPart, SharpMeager,
};
pub use props::{property_report, PropertyReport};
pub use riesz::{has_rdp, is_homogeneous, riesz_counterexample};
