//! Structural laws every finite effect algebra must satisfy, checked
//! exhaustively on concrete instances.
//!
//! Each check returns the first failing instance. [`check_all`] runs every
//! law whose hypotheses hold for the given algebra.

use std::fmt;

use crate::algebra::Elem;
use crate::elemset::ElemSet;
use crate::order::{derive, DerivedStructure};
use crate::structure::blocks::{blocks_by_compatibility, blocks_by_riesz, is_sub_effect_algebra, subalgebra};
use crate::structure::compat::{compatible, family_subsum_sets};
use crate::structure::elements::{central_elements, decompose_with, SharpMeager};
use crate::structure::riesz::{has_rdp, is_homogeneous};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// The center is a sub-effect algebra.
    CenterSubalgebra,
    /// The center is a Boolean algebra in the inherited order.
    CenterBoolean,
    /// `y = (y ∧ c) ⊕ (y ∧ c′)` for central `c`.
    CentralSplit,
    /// Orthogonal central `c, d`: `c ∨ d = c ⊕ d` and `c ∧ d = 0`.
    CentralOrthogonalJoin,
    /// `c ∧ (x ⊕ y) = (c ∧ x) ⊕ (c ∧ y)` for central `c`.
    CentralMeetDistributes,
    /// `x ∧ (c ⊕ d) = (x ∧ c) ⊕ (x ∧ d)` for central `c, d`.
    MeetDistributesOverCentralSum,
    /// Orthoalgebras are homogeneous.
    OrthoalgebraHomogeneous,
    /// Lattice effect algebras are homogeneous.
    LatticeHomogeneous,
    /// Riesz decomposition ⟺ homogeneous and compatible.
    RieszIsHomogeneousCompatible,
    /// Maximal Riesz sub-effect algebras = maximal internally compatible
    /// sets containing 1.
    BlockCharacterizationsAgree,
    /// Every finite compatible set lies in a block.
    CompatibleSetsInBlocks,
    /// The carrier is the union of the blocks.
    BlocksCover,
    /// The sharp elements form a sub-effect algebra.
    SharpSubalgebra,
    /// The center of a block is its set of sharp members.
    BlockCenterIsSharp,
    /// `{y | y ≤ x, y ≤ x′}` lies in every block containing `x`.
    BlockContainsCommonLowerBounds,
    /// `x̂ ⊖ x` is meager for meager `x`.
    MeagerCoverDifference,
    /// Meager `x, y` with `x ⊕ y` sharp: `x̂ = x ⊕ y`.
    MeagerSumIsCover,
    /// Unique sharp/meager decomposition with disjoint parts (joined in a
    /// lattice).
    UniqueDecomposition,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<Elem>,
    pub detail: String,
}

impl LawViolation {
    fn new(law: Law, witness: Vec<Elem>, detail: impl Into<String>) -> Self {
        LawViolation {
            law,
            witness,
            detail: detail.into(),
        }
    }

    /// Human-readable description with element labels.
    pub fn describe(&self, d: &DerivedStructure) -> String {
        format!(
            "{} fails at [{}]: {}",
            self.law,
            d.labels_of(self.witness.iter().copied()).join(", "),
            self.detail
        )
    }
}

type Check = Result<(), LawViolation>;

fn ensure(cond: bool, law: Law, witness: &[Elem], detail: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(LawViolation::new(law, witness.to_vec(), detail()))
    }
}

/// Meet and join computed inside a subset with the inherited order.
fn meet_in(d: &DerivedStructure, within: ElemSet, x: Elem, y: Elem) -> Option<Elem> {
    d.order().max_of(d.lower_bounds(x, y).intersection(within))
}

fn join_in(d: &DerivedStructure, within: ElemSet, x: Elem, y: Elem) -> Option<Elem> {
    d.order().min_of(d.upper_bounds(x, y).intersection(within))
}

/// The center is a Boolean sub-effect algebra, splits every element, and
/// orthogonal central elements have join `c ⊕ d` and meet 0.
pub fn check_center(d: &DerivedStructure, c: ElemSet) -> Check {
    ensure(is_sub_effect_algebra(d, c), Law::CenterSubalgebra, &[], || {
        format!("center {{{}}} is not closed", d.labels_of(c).join(", "))
    })?;
    for x in c {
        let xc = d.complement(x);
        ensure(
            meet_in(d, c, x, xc) == Some(d.zero()) && join_in(d, c, x, xc) == Some(d.unit()),
            Law::CenterBoolean,
            &[x],
            || "x′ is not a lattice complement".into(),
        )?;
        for y in c {
            let (m, j) = (meet_in(d, c, x, y), join_in(d, c, x, y));
            ensure(m.is_some() && j.is_some(), Law::CenterBoolean, &[x, y], || {
                "missing meet or join in the center".into()
            })?;
            if let Some(s) = d.sum(x, y) {
                ensure(
                    j == Some(s) && m == Some(d.zero()) && d.meet(x, y) == Some(d.zero()) && d.join(x, y) == Some(s),
                    Law::CentralOrthogonalJoin,
                    &[x, y],
                    || "orthogonal central elements: join ≠ sum or meet ≠ 0".into(),
                )?;
            }
        }
    }
    for x in c {
        for y in c {
            for z in c {
                let lhs = join_in(d, c, y, z).and_then(|yz| meet_in(d, c, x, yz));
                let rhs = match (meet_in(d, c, x, y), meet_in(d, c, x, z)) {
                    (Some(a), Some(b)) => join_in(d, c, a, b),
                    _ => None,
                };
                ensure(lhs.is_some() && lhs == rhs, Law::CenterBoolean, &[x, y, z], || {
                    "center is not distributive".into()
                })?;
            }
        }
    }
    for x in c {
        let xc = d.complement(x);
        for y in d.elements() {
            let split = match (d.meet(y, x), d.meet(y, xc)) {
                (Some(a), Some(b)) => d.sum(a, b),
                _ => None,
            };
            ensure(split == Some(y), Law::CentralSplit, &[y, x], || "y ≠ (y ∧ c) ⊕ (y ∧ c′)".into())?;
        }
    }
    Ok(())
}

/// Meets with central elements distribute over `⊕`, and meets distribute
/// over sums of central elements.
pub fn check_central_distributivity(d: &DerivedStructure, c: ElemSet) -> Check {
    let sum_of_meets = |x: Elem, a: Elem, b: Elem| -> Option<Elem> {
        let (p, q) = (d.meet(x, a)?, d.meet(x, b)?);
        d.sum(p, q)
    };
    for k in c {
        for x in d.elements() {
            for y in d.elements() {
                if let Some(s) = d.sum(x, y) {
                    let lhs = d.meet(k, s);
                    let rhs = sum_of_meets(k, x, y);
                    ensure(lhs.is_some() && lhs == rhs, Law::CentralMeetDistributes, &[k, x, y], || {
                        "c ∧ (x ⊕ y) ≠ (c ∧ x) ⊕ (c ∧ y)".into()
                    })?;
                }
            }
        }
    }
    for k in c {
        for l in c {
            let Some(s) = d.sum(k, l) else { continue };
            for x in d.elements() {
                let lhs = d.meet(x, s);
                let rhs = sum_of_meets(x, k, l);
                ensure(lhs.is_some() && lhs == rhs, Law::MeetDistributesOverCentralSum, &[x, k, l], || {
                    "x ∧ (c ⊕ d) ≠ (x ∧ c) ⊕ (x ∧ d)".into()
                })?;
            }
        }
    }
    Ok(())
}

/// Orthoalgebras and lattices are homogeneous; Riesz decomposition holds
/// exactly for homogeneous algebras whose carrier is compatible.
pub fn check_riesz_relations(d: &DerivedStructure) -> Check {
    let hom = is_homogeneous(d);
    let rdp = has_rdp(d);
    ensure(!d.is_orthoalgebra() || hom, Law::OrthoalgebraHomogeneous, &[], || {
        "orthoalgebra is not homogeneous".into()
    })?;
    ensure(!d.is_lattice() || hom, Law::LatticeHomogeneous, &[], || {
        "lattice effect algebra is not homogeneous".into()
    })?;
    let whole = compatible(d, d.carrier(), false);
    ensure(rdp == (hom && whole), Law::RieszIsHomogeneousCompatible, &[], || {
        format!("rdp = {rdp}, homogeneous = {hom}, compatible = {whole}")
    })
}

/// Checks on a homogeneous algebra's blocks: they cover the carrier, each
/// block's center is `Sh(E) ∩ B`, and common lower bounds of `x, x′` stay
/// in the block of `x`.
pub fn check_blocks(d: &DerivedStructure, blocks: &[ElemSet]) -> Check {
    let union = blocks.iter().fold(ElemSet::EMPTY, |acc, &b| acc.union(b));
    ensure(union == d.carrier(), Law::BlocksCover, &d.carrier().difference(union).to_vec(), || {
        "elements outside every block".into()
    })?;
    let sharp = SharpMeager::new(d).sharp;
    for &b in blocks {
        let (sub, embed) = subalgebra(d, b).map_err(|e| {
            LawViolation::new(Law::BlockCenterIsSharp, b.to_vec(), format!("block is not a sub-effect algebra: {e}"))
        })?;
        let sub_d = derive(&sub).map_err(|e| {
            LawViolation::new(Law::BlockCenterIsSharp, b.to_vec(), format!("block is not an effect algebra: {e}"))
        })?;
        let center: ElemSet = central_elements(&sub_d).iter().map(|i| embed[i]).collect();
        ensure(center == sharp.intersection(b), Law::BlockCenterIsSharp, &b.to_vec(), || {
            format!(
                "C(B) = {{{}}} but Sh(E) ∩ B = {{{}}}",
                d.labels_of(center).join(", "),
                d.labels_of(sharp.intersection(b)).join(", ")
            )
        })?;
        for x in b {
            let low = d.lower_bounds(x, d.complement(x));
            ensure(low.is_subset(b), Law::BlockContainsCommonLowerBounds, &[x], || {
                format!("{{{}}} leaves the block", d.labels_of(low.difference(b)).join(", "))
            })?;
        }
    }
    Ok(())
}

/// Every finite compatible subset lies in some block.
///
/// A finite compatible set is refined by a family from `E`, which can be
/// completed to sum to 1 by appending the complement of its sum, so it is
/// enough that the subsum set of every family summing to 1 fits in a
/// block.
pub fn check_compatible_sets_in_blocks(d: &DerivedStructure, blocks: &[ElemSet]) -> Check {
    for s in family_subsum_sets(d, d.carrier()) {
        if s.contains(d.unit()) {
            ensure(blocks.iter().any(|&b| s.is_subset(b)), Law::CompatibleSetsInBlocks, &s.to_vec(), || {
                "compatible set not contained in any block".into()
            })?;
        }
    }
    Ok(())
}

pub fn check_sharp_subalgebra(d: &DerivedStructure, sm: &SharpMeager) -> Check {
    ensure(is_sub_effect_algebra(d, sm.sharp), Law::SharpSubalgebra, &sm.sharp.to_vec(), || {
        "Sh(E) is not a sub-effect algebra".into()
    })
}

/// For meager `x` with `x̂` defined: `x̂ ⊖ x` is meager; and meager `x, y`
/// with sharp `x ⊕ y` have `x̂ = x ⊕ y`.
pub fn check_meager_covers(d: &DerivedStructure, sm: &SharpMeager) -> Check {
    for x in sm.meager {
        if let Some(h) = sm.hat[x] {
            let diff = d.ominus(h, x).expect("x ≤ x̂");
            ensure(sm.is_meager(diff), Law::MeagerCoverDifference, &[x], || "x̂ ⊖ x is not meager".into())?;
        }
        for y in sm.meager {
            if let Some(z) = d.sum(x, y) {
                if sm.is_sharp(z) {
                    ensure(sm.hat[x] == Some(z), Law::MeagerSumIsCover, &[x, y], || {
                        "x ⊕ y is sharp but not x̂".into()
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Unique sharp/meager decomposition of every element.
pub fn check_decompositions(d: &DerivedStructure, sm: &SharpMeager) -> Check {
    let lattice = d.is_lattice();
    for x in d.elements() {
        decompose_with(d, sm, x, lattice)
            .map_err(|e| LawViolation::new(Law::UniqueDecomposition, vec![x], e.to_string()))?;
    }
    Ok(())
}

/// Outcome of [`check_all`].
#[derive(Clone, Debug, Default)]
pub struct LawReport {
    /// Laws whose hypotheses held and which were checked.
    pub checked: Vec<Law>,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn run(&mut self, laws: &[Law], result: Check) {
        self.checked.extend_from_slice(laws);
        if let Err(v) = result {
            self.violations.push(v);
        }
    }
}

/// Runs every applicable law on `d`.
pub fn check_all(d: &DerivedStructure) -> LawReport {
    use Law::*;
    let mut r = LawReport::default();
    let c = central_elements(d);
    r.run(&[CenterSubalgebra, CenterBoolean, CentralSplit, CentralOrthogonalJoin], check_center(d, c));
    r.run(&[CentralMeetDistributes, MeetDistributesOverCentralSum], check_central_distributivity(d, c));
    r.run(
        &[OrthoalgebraHomogeneous, LatticeHomogeneous, RieszIsHomogeneousCompatible],
        check_riesz_relations(d),
    );
    let sm = SharpMeager::new(d);
    let homogeneous = is_homogeneous(d);
    if homogeneous {
        let by_compat = blocks_by_compatibility(d);
        let agree = match blocks_by_riesz(d) {
            Ok(by_riesz) => ensure(by_riesz == by_compat, BlockCharacterizationsAgree, &[], || {
                format!(
                    "compatibility: {}; Riesz: {}",
                    crate::structure::blocks::fmt_sets(d, &by_compat),
                    crate::structure::blocks::fmt_sets(d, &by_riesz)
                )
            }),
            Err(e) => Err(LawViolation::new(BlockCharacterizationsAgree, vec![], e.to_string())),
        };
        r.run(&[BlockCharacterizationsAgree], agree);
        r.run(&[CompatibleSetsInBlocks], check_compatible_sets_in_blocks(d, &by_compat));
        r.run(&[BlocksCover, BlockCenterIsSharp, BlockContainsCommonLowerBounds], check_blocks(d, &by_compat));
    }
    let dominating = sm.sharply_dominating();
    if homogeneous || dominating {
        r.run(&[SharpSubalgebra], check_sharp_subalgebra(d, &sm));
    }
    if is_sub_effect_algebra(d, sm.sharp) {
        r.run(&[MeagerCoverDifference, MeagerSumIsCover], check_meager_covers(d, &sm));
        if dominating {
            r.run(&[UniqueDecomposition], check_decompositions(d, &sm));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};

    fn gen(s: &str) -> DerivedStructure {
        derive(&generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn laws_hold_on_small_catalog() {
        for name in ["chain 3", "diamond", "mo 2", "product(chain 2, chain 1)", "boolean 3"] {
            let d = gen(name);
            let r = check_all(&d);
            assert!(r.ok(), "{name}: {:?}", r.violations.iter().map(|v| v.describe(&d)).collect::<Vec<_>>());
            assert!(r.checked.contains(&Law::UniqueDecomposition), "{name}");
        }
    }

    #[test]
    fn a_non_central_set_is_caught() {
        // {0, a, 1} in C2 × C1 is not the center
        let d = gen("product(chain 2, chain 1)");
        let bogus: ElemSet = ["(0,0)", "(a,0)", "(1,1)"]
            .iter()
            .map(|l| d.algebra().table().index_of(l).unwrap())
            .collect();
        assert!(check_center(&d, bogus).is_err());
    }
}
