//! Exhaustive axiom checks.

use std::fmt;

use serde::Serialize;

use crate::algebra::{EffectAlgebra, Elem, GeneralizedEffectAlgebra, PartialTable};

/// Axiom tags for effect algebras (`Ei`–`Eiv`) and generalized effect
/// algebras (`GE1`–`GE5`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    /// Commutativity.
    Ei,
    /// Associativity, whenever either side is defined.
    Eii,
    /// Unique orthosupplement.
    Eiii,
    /// Zero-one law: `1 ⊕ x` defined only for `x = 0`.
    Eiv,
    GE1,
    GE2,
    /// Cancellativity.
    GE3,
    /// Positivity: `x ⊕ y = 0` only for `x = y = 0`.
    GE4,
    /// `x ⊕ 0 = x`.
    GE5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One failed instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// Distinct axioms that failed, in tag order.
    pub fn failed_axioms(&self) -> Vec<Axiom> {
        let mut tags: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        tags.sort();
        tags.dedup();
        tags
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

// Per-axiom cap on recorded witnesses; the verdict does not depend on it.
const MAX_WITNESSES: usize = 64;

struct Collector {
    violations: Vec<Violation>,
    counts: [usize; 9],
}

impl Collector {
    fn new() -> Self {
        Collector {
            violations: Vec::new(),
            counts: [0; 9],
        }
    }

    fn push(&mut self, axiom: Axiom, witness: Vec<Elem>) {
        let slot = &mut self.counts[axiom as usize];
        if *slot < MAX_WITNESSES {
            self.violations.push(Violation { axiom, witness });
        }
        *slot += 1;
    }
}

fn check_symmetry(t: &PartialTable, axiom: Axiom, c: &mut Collector) {
    let n = t.len();
    for x in 0..n {
        for y in x + 1..n {
            if t.get(x, y) != t.get(y, x) {
                c.push(axiom, vec![x, y]);
            }
        }
    }
}

fn check_associativity(t: &PartialTable, axiom: Axiom, c: &mut Collector) {
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            for z in 0..n {
                let left = xy.and_then(|xy| t.get(xy, z));
                let right = t.get(y, z).and_then(|yz| t.get(x, yz));
                if (left.is_some() || right.is_some()) && left != right {
                    c.push(axiom, vec![x, y, z]);
                }
            }
        }
    }
}

/// Checks (Ei)–(Eiv) over all element combinations.
pub fn validate_ea(e: &EffectAlgebra) -> ValidationReport {
    let t = e.table();
    let n = t.len();
    let mut c = Collector::new();
    check_symmetry(t, Axiom::Ei, &mut c);
    check_associativity(t, Axiom::Eii, &mut c);
    for x in 0..n {
        let complements: Vec<Elem> = (0..n).filter(|&y| t.get(x, y) == Some(e.unit())).collect();
        if complements.len() != 1 {
            let mut w = vec![x];
            w.extend(complements);
            c.push(Axiom::Eiii, w);
        }
    }
    for x in 0..n {
        if x != e.zero() && t.get(e.unit(), x).is_some() {
            c.push(Axiom::Eiv, vec![x]);
        }
    }
    ValidationReport::from_violations(c.violations)
}

/// Checks (GE1)–(GE5) over all element combinations.
pub fn validate_gea(g: &GeneralizedEffectAlgebra) -> ValidationReport {
    let t = g.table();
    let n = t.len();
    let zero = g.zero();
    let mut c = Collector::new();
    check_symmetry(t, Axiom::GE1, &mut c);
    check_associativity(t, Axiom::GE2, &mut c);
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                if let (Some(a), Some(b)) = (t.get(x, y), t.get(x, z)) {
                    if a == b {
                        c.push(Axiom::GE3, vec![x, y, z]);
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if t.get(x, y) == Some(zero) && (x != zero || y != zero) {
                c.push(Axiom::GE4, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        if t.get(x, zero) != Some(x) {
            c.push(Axiom::GE5, vec![x]);
        }
    }
    ValidationReport::from_violations(c.violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_ea;

    fn c2() -> EffectAlgebra {
        parse_ea("ea 3\nlabels 0 a 1\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\n").unwrap()
    }

    #[test]
    fn chain_is_valid() {
        let r = validate_ea(&c2());
        assert!(r.valid, "{r:?}");
    }

    #[test]
    fn redirected_square_breaks_only_complements() {
        // a ⊕ a = a leaves a without a complement. A direct scan of the
        // four axioms over all triples shows that (Eiii) is the only one
        // violated: 0 is neutral, 1 only sums with 0, and every
        // bracketing of a, a, a gives a.
        let mut e = c2();
        e.table_mut().set(1, 1, Some(1));
        let r = validate_ea(&e);
        assert!(!r.valid);
        assert_eq!(r.failed_axioms(), vec![Axiom::Eiii]);
        assert_eq!(r.first(Axiom::Eiii).unwrap().witness, vec![1]);
    }

    #[test]
    fn unit_summing_with_nonzero_violates_zero_one_law() {
        // 1 ⊕ a = 1 for a ≠ 0
        let mut e = c2();
        e.table_mut().set_sym(2, 1, Some(2));
        let r = validate_ea(&e);
        assert!(r.failed_axioms().contains(&Axiom::Eiv));
        assert_eq!(r.first(Axiom::Eiv).unwrap().witness, vec![1]);
    }

    #[test]
    fn asymmetric_edit_violates_commutativity() {
        let mut e = c2();
        e.table_mut().set(0, 1, None);
        let r = validate_ea(&e);
        assert_eq!(r.first(Axiom::Ei).unwrap().witness, vec![0, 1]);
    }

    fn labels(n: usize) -> Vec<String> {
        crate::algebra::default_labels(n)
    }

    #[test]
    fn one_element_gea_is_valid() {
        let g = GeneralizedEffectAlgebra::from_rows(labels(1), 0, &[vec![Some(0)]]).unwrap();
        assert!(validate_gea(&g).valid);
    }

    #[test]
    fn non_cancellative_gea_is_flagged() {
        // x ⊕ y = x ⊕ z = w with y ≠ z
        let rows = vec![
            vec![Some(0), Some(1), Some(2), Some(3)],
            vec![Some(1), None, Some(3), Some(3)],
            vec![Some(2), Some(3), None, None],
            vec![Some(3), Some(3), None, None],
        ];
        let g = GeneralizedEffectAlgebra::from_rows(labels(4), 0, &rows).unwrap();
        let r = validate_gea(&g);
        assert!(r.failed_axioms().contains(&Axiom::GE3), "{r:?}");
    }
}
