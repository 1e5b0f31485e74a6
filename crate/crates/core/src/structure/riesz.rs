//! Riesz decomposition and homogeneity.

use crate::algebra::Elem;
use crate::elemset::ElemSet;
use crate::order::DerivedStructure;

/// `{u₁ ⊕ u₂ | u₁ ≤ v₁, u₂ ≤ v₂}`
fn splittable(d: &DerivedStructure, v1: Elem, v2: Elem) -> ElemSet {
    let mut out = ElemSet::EMPTY;
    for u1 in d.down(v1) {
        for u2 in d.down(v2) {
            if let Some(u) = d.sum(u1, u2) {
                out.insert(u);
            }
        }
    }
    out
}

/// A failing instance `(u, v₁, v₂)`: `u ≤ v₁ ⊕ v₂` (and, for
/// homogeneity, `v₁ ⊕ v₂ ≤ u′`) yet no `u₁ ≤ v₁`, `u₂ ≤ v₂` sum to `u`.
pub fn riesz_counterexample(d: &DerivedStructure, homogeneous_only: bool) -> Option<(Elem, Elem, Elem)> {
    for v1 in d.elements() {
        for v2 in v1..d.len() {
            let Some(s) = d.sum(v1, v2) else { continue };
            let ok = splittable(d, v1, v2);
            for u in d.down(s).difference(ok) {
                if !homogeneous_only || d.leq(s, d.complement(u)) {
                    return Some((u, v1, v2));
                }
            }
        }
    }
    None
}

/// Riesz decomposition property.
pub fn has_rdp(d: &DerivedStructure) -> bool {
    riesz_counterexample(d, false).is_none()
}

/// Riesz decomposition required only when `u ≤ v₁ ⊕ v₂ ≤ u′`.
pub fn is_homogeneous(d: &DerivedStructure) -> bool {
    riesz_counterexample(d, true).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};
    use crate::order::derive;

    fn gen(s: &str) -> DerivedStructure {
        derive(&generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn riesz_and_homogeneity_of_standard_examples() {
        for (name, rdp, hom) in [
            ("chain 3", true, true),
            ("mo 2", false, true),
            ("diamond", false, true),
            ("boolean 3", true, true),
            ("product(chain 2, chain 3)", true, true),
        ] {
            let d = gen(name);
            assert_eq!(has_rdp(&d), rdp, "{name} rdp");
            assert_eq!(is_homogeneous(&d), hom, "{name} homogeneous");
        }
    }

    #[test]
    fn diamond_counterexample_is_atom_under_unit() {
        // a ≤ b ⊕ b = 1, but nothing below b splits a
        let d = gen("diamond");
        let (u, v1, v2) = riesz_counterexample(&d, false).unwrap();
        assert_eq!(d.sum(v1, v2), Some(d.unit()));
        assert!(d.lower_bounds(u, v1) == ElemSet::singleton(0) || d.lower_bounds(u, v2) == ElemSet::singleton(0));
    }
}
