//! TRT conditions and the maps `x̂`, `π_s`, `R`, `S` computed inside `E`.

use crate::algebra::Elem;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::order::DerivedStructure;
use crate::structure::blocks::blocks;
use crate::structure::elements::{meager_part, MeagerPart, SharpMeager};
use crate::structure::riesz::riesz_counterexample;

/// One TRT condition with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub holds: bool,
    pub witness: Vec<Elem>,
    pub detail: String,
}

impl Condition {
    fn pass() -> Self {
        Condition {
            holds: true,
            witness: Vec::new(),
            detail: String::new(),
        }
    }

    fn fail(witness: Vec<Elem>, detail: impl Into<String>) -> Self {
        Condition {
            holds: false,
            witness,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrtReport {
    pub homogeneous: Condition,
    pub sharply_dominating: Condition,
    /// `[x̃, x] ⊆ B` for every block `B` and `x ∈ B`.
    pub block_interval_condition: Condition,
    /// `x̂ ⊖ x` is the only meager `y` meeting conditions (i)–(iii), for
    /// every meager `x`.
    pub unique_y_condition: Condition,
    pub is_trt: bool,
}

impl TrtReport {
    /// The first failing condition, by name.
    pub fn first_failure(&self) -> Option<(&'static str, &Condition)> {
        [
            ("homogeneous", &self.homogeneous),
            ("sharplyDominating", &self.sharply_dominating),
            ("blockIntervalCondition", &self.block_interval_condition),
            ("uniqueYCondition", &self.unique_y_condition),
        ]
        .into_iter()
        .find(|(_, c)| !c.holds)
    }
}

/// Sharp/meager data of `E` plus the `Mea(E)` operations, shared by the
/// TRT check and the E-side maps.
#[derive(Clone, Debug)]
pub(crate) struct EView {
    pub d: DerivedStructure,
    pub sm: SharpMeager,
    pub meager: MeagerPart,
}

impl EView {
    pub fn new(d: DerivedStructure) -> Result<Self> {
        let sm = SharpMeager::new(&d);
        let meager = meager_part(&d, &sm)?;
        Ok(EView { d, sm, meager })
    }

    /// `x ⊕_Mea y`
    pub fn mea_sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.d.sum(x, y).filter(|&s| self.sm.is_meager(s))
    }

    /// `x ∧ y` in the meager order, checked against the meet in `E`.
    pub fn mea_meet(&self, x: Elem, y: Elem) -> Result<Option<Elem>> {
        let in_mea = self
            .d
            .order()
            .max_of(self.d.lower_bounds(x, y).intersection(self.sm.meager));
        let in_e = self.d.meet(x, y);
        if in_mea != in_e {
            return Err(Error::Consistency(format!(
                "meet of meager {} and {} differs between Mea(E) and E",
                self.d.label(x),
                self.d.label(y)
            )));
        }
        Ok(in_mea)
    }

    /// `h(s) = {x ∈ Mea | x ≤ s}`
    pub fn h(&self, s: Elem) -> ElemSet {
        self.d.down(s).intersection(self.sm.meager)
    }

    pub fn hat(&self, x: Elem) -> Option<Elem> {
        self.sm.hat[x]
    }

    /// `π_s(x) = x ∧ s`
    pub fn pi(&self, s: Elem, x: Elem) -> Option<Elem> {
        self.d.meet(x, s)
    }

    /// `R(x) = x̂ ⊖ x`
    pub fn r(&self, x: Elem) -> Option<Elem> {
        self.d.ominus(self.hat(x)?, x)
    }

    /// Which of conditions (i)–(iii) fail for the candidate `y`; empty
    /// when all hold.
    pub fn y_conditions(&self, x: Elem, y: Elem) -> Result<Vec<&'static str>> {
        let mut failed = Vec::new();
        let hx = self.hat(x).ok_or_else(|| Error::Precondition("x̂ missing".into()))?;
        if self.hat(y) != Some(hx) {
            failed.push("(i)");
        }
        let ii = match self.mea_meet(x, y)? {
            Some(m) => {
                let t = self.d.ominus(y, m).expect("x ∧ y ≤ y");
                self.mea_sum(x, t).is_some_and(|u| self.d.leq(u, hx))
            }
            None => false,
        };
        if !ii {
            failed.push("(ii)");
        }
        let iii = self.h(hx).iter().all(|z| {
            let lhs = self.mea_sum(z, x).is_some_and(|w| self.d.leq(w, hx));
            let rhs = self.d.leq(z, y)
                && self
                    .d
                    .ominus(y, z)
                    .is_some_and(|diff| self.hat(diff) == Some(hx));
            lhs == rhs
        });
        if !iii {
            failed.push("(iii)");
        }
        Ok(failed)
    }

    /// `𝒮(x, y)` by the meet formulation.
    pub fn s_set_by_meets(&self, x: Elem, y: Elem) -> ElemSet {
        self.sm
            .sharp
            .iter()
            .filter(|&z| match (self.d.meet(z, x), self.d.meet(z, y)) {
                (Some(p), Some(q)) => self.d.sum(p, q) == Some(z),
                _ => false,
            })
            .collect()
    }

    /// `𝒮(x, y)` through `π`, `x̂` and `R`.
    pub fn s_set_by_maps(&self, x: Elem, y: Elem) -> ElemSet {
        self.sm
            .sharp
            .iter()
            .filter(|&z| match (self.pi(z, x), self.pi(z, y)) {
                (Some(p), Some(q)) => self.hat(p) == Some(z) && self.r(p) == Some(q),
                _ => false,
            })
            .collect()
    }

    /// `S(x, y)`: the top element of `𝒮(x, y)` when it belongs to the set.
    pub fn s_map(&self, x: Elem, y: Elem) -> Result<Option<Elem>> {
        let by_meets = self.s_set_by_meets(x, y);
        let by_maps = self.s_set_by_maps(x, y);
        if by_meets != by_maps {
            return Err(Error::Consistency(format!(
                "𝒮({}, {}) = {{{}}} by meets but {{{}}} by π/R",
                self.d.label(x),
                self.d.label(y),
                self.d.labels_of(by_meets).join(", "),
                self.d.labels_of(by_maps).join(", ")
            )));
        }
        Ok(self.d.order().max_of(by_meets))
    }
}

fn check_conditions(view: &EView) -> Result<TrtReport> {
    let d = &view.d;
    let homogeneous = match riesz_counterexample(d, true) {
        None => Condition::pass(),
        Some((u, v1, v2)) => Condition::fail(vec![u, v1, v2], "u ≤ v₁ ⊕ v₂ ≤ u′ without a split of u"),
    };
    let sharply_dominating = match d.elements().find(|&x| view.sm.hat[x].is_none()) {
        None => Condition::pass(),
        Some(x) => Condition::fail(vec![x], "no least sharp element above x"),
    };
    let block_interval_condition = if !homogeneous.holds || !sharply_dominating.holds {
        Condition::fail(vec![], "requires a homogeneous, sharply dominating algebra")
    } else {
        let family = blocks(d)?;
        let mut cond = Condition::pass();
        'outer: for b in &family.blocks {
            for x in b.members {
                let tilde = view.sm.tilde[x].expect("sharply dominating");
                let interval = d.order().interval(tilde, x);
                if !interval.is_subset(b.members) {
                    let out = interval.difference(b.members).first().expect("nonempty");
                    let mut w = vec![x, out];
                    w.extend(b.members);
                    cond = Condition::fail(w, "[x̃, x] leaves a block containing x");
                    break 'outer;
                }
            }
        }
        cond
    };
    let unique_y_condition = if !sharply_dominating.holds {
        Condition::fail(vec![], "requires a sharply dominating algebra")
    } else {
        let mut cond = Condition::pass();
        'meager: for x in view.sm.meager {
            let y0 = view.r(x).expect("x ≤ x̂");
            let failed = view.y_conditions(x, y0)?;
            if !failed.is_empty() {
                cond = Condition::fail(vec![x, y0], format!("x̂ ⊖ x fails {}", failed.join(" ")));
                break;
            }
            for y in view.sm.meager {
                if y != y0 && view.y_conditions(x, y)?.is_empty() {
                    cond = Condition::fail(vec![x, y0, y], "a second meager y meets (i)–(iii)");
                    break 'meager;
                }
            }
        }
        cond
    };
    let is_trt = homogeneous.holds
        && sharply_dominating.holds
        && block_interval_condition.holds
        && unique_y_condition.holds;
    Ok(TrtReport {
        homogeneous,
        sharply_dominating,
        block_interval_condition,
        unique_y_condition,
        is_trt,
    })
}

/// Decides whether `d` is a TRT-effect algebra. Errors only on internal
/// inconsistencies.
pub fn trt_check(d: &DerivedStructure) -> Result<TrtReport> {
    check_conditions(&EView::new(d.clone())?)
}

/// A TRT-effect algebra with its sharp/meager data.
#[derive(Clone, Debug)]
pub struct TrtAlgebra {
    pub(crate) view: EView,
    report: TrtReport,
}

impl TrtAlgebra {
    /// Refuses algebras that are not TRT.
    pub fn new(d: &DerivedStructure) -> Result<Self> {
        let view = EView::new(d.clone())?;
        let report = check_conditions(&view)?;
        if let Some((name, c)) = report.first_failure() {
            return Err(Error::Precondition(format!(
                "not a TRT-effect algebra: {name} fails at [{}] ({})",
                d.labels_of(c.witness.iter().copied()).join(", "),
                c.detail
            )));
        }
        Ok(TrtAlgebra { view, report })
    }

    pub fn derived(&self) -> &DerivedStructure {
        &self.view.d
    }

    pub fn report(&self) -> &TrtReport {
        &self.report
    }

    pub fn sharp(&self) -> ElemSet {
        self.view.sm.sharp
    }

    pub fn meager(&self) -> ElemSet {
        self.view.sm.meager
    }

    pub fn tilde(&self, x: Elem) -> Elem {
        self.view.sm.tilde[x].expect("sharply dominating")
    }

    pub fn hat(&self, x: Elem) -> Elem {
        self.view.sm.hat[x].expect("sharply dominating")
    }

    pub fn pi(&self, s: Elem, x: Elem) -> Option<Elem> {
        self.view.pi(s, x)
    }

    pub fn r(&self, x: Elem) -> Elem {
        self.view.r(x).expect("sharply dominating")
    }

    pub fn h(&self, s: Elem) -> ElemSet {
        self.view.h(s)
    }

    pub fn s_set(&self, x: Elem, y: Elem) -> Result<ElemSet> {
        self.view.s_map(x, y)?;
        Ok(self.view.s_set_by_meets(x, y))
    }

    pub fn s_map(&self, x: Elem, y: Elem) -> Result<Option<Elem>> {
        self.view.s_map(x, y)
    }

    pub fn mea_sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.view.mea_sum(x, y)
    }

    pub fn mea_meet(&self, x: Elem, y: Elem) -> Result<Option<Elem>> {
        self.view.mea_meet(x, y)
    }
}

/// `x̂` on `Mea(E)`, `π_s(x)` for sharp `s` and meager `x`, and `R`, all
/// indexed by elements of `E` (entries for other elements are `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMaps {
    pub hat: Vec<Option<Elem>>,
    /// `pi[s][x]`
    pub pi: Vec<Vec<Option<Elem>>>,
    pub r: Vec<Option<Elem>>,
}

/// Computes the maps `x̂`, `π` and `R` of a TRT-effect algebra, checking
/// that `R(x)` is meager with `R(x)^ = x̂` and `R(R(x)) = x`.
pub fn m_maps(d: &DerivedStructure) -> Result<MMaps> {
    let t = TrtAlgebra::new(d)?;
    let n = d.len();
    let mut maps = MMaps {
        hat: vec![None; n],
        pi: vec![vec![None; n]; n],
        r: vec![None; n],
    };
    for x in t.meager() {
        maps.hat[x] = Some(t.hat(x));
        let rx = t.r(x);
        if !t.meager().contains(rx) || t.hat(rx) != t.hat(x) || t.r(rx) != x {
            return Err(Error::Consistency(format!("R misbehaves at {}", d.label(x))));
        }
        maps.r[x] = Some(rx);
        for s in t.sharp() {
            maps.pi[s][x] = t.pi(s, x);
        }
    }
    Ok(maps)
}

/// `S(x, y)` for meager `x, y` of a TRT-effect algebra.
pub fn s_map(d: &DerivedStructure, x: Elem, y: Elem) -> Result<Option<Elem>> {
    let t = TrtAlgebra::new(d)?;
    if !t.meager().contains(x) || !t.meager().contains(y) {
        return Err(Error::Precondition("S is defined on meager elements".into()));
    }
    t.s_map(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};
    use crate::order::derive;

    fn gen(s: &str) -> DerivedStructure {
        derive(&generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()).unwrap()
    }

    fn idx(d: &DerivedStructure, l: &str) -> Elem {
        d.algebra().table().index_of(l).unwrap()
    }

    #[test]
    fn diamond_is_trt_and_b_is_rejected_for_a() {
        let d = gen("diamond");
        let r = trt_check(&d).unwrap();
        assert!(r.is_trt, "{r:?}");
        let view = EView::new(d.clone()).unwrap();
        let (a, b) = (idx(&d, "a"), idx(&d, "b"));
        assert_eq!(view.r(a), Some(a));
        assert!(view.y_conditions(a, a).unwrap().is_empty());
        assert!(view.y_conditions(a, b).unwrap().contains(&"(ii)"));
    }

    #[test]
    fn boolean_square_is_trt() {
        let d = gen("boolean 2");
        assert!(trt_check(&d).unwrap().is_trt);
        assert_eq!(TrtAlgebra::new(&d).unwrap().meager().len(), 1);
    }

    #[test]
    fn maps_of_chain() {
        let d = gen("chain 3");
        let m = m_maps(&d).unwrap();
        let (a, a2) = (idx(&d, "a"), idx(&d, "2a"));
        assert_eq!(m.hat[a], Some(d.unit()));
        assert_eq!(m.r[a], Some(a2));
        assert_eq!(m.r[a2], Some(a));
        assert_eq!(m.hat[d.zero()], Some(d.zero()));
    }

    #[test]
    fn pi_with_top_and_bottom() {
        let d = gen("diamond");
        let m = m_maps(&d).unwrap();
        let a = idx(&d, "a");
        assert_eq!(m.pi[d.unit()][a], Some(a));
        assert_eq!(m.pi[d.zero()][a], Some(d.zero()));
    }

    #[test]
    fn s_map_examples() {
        let d = gen("chain 2");
        let a = idx(&d, "a");
        let t = TrtAlgebra::new(&d).unwrap();
        assert_eq!(t.s_set(a, a).unwrap(), ElemSet::full(3).difference(ElemSet::singleton(a)));
        assert_eq!(s_map(&d, a, a).unwrap(), Some(d.unit()));

        let d = gen("chain 3");
        let a = idx(&d, "a");
        assert_eq!(TrtAlgebra::new(&d).unwrap().s_set(a, a).unwrap(), ElemSet::singleton(d.zero()));
        assert_eq!(s_map(&d, a, a).unwrap(), Some(d.zero()));

        let d = gen("diamond");
        assert_eq!(s_map(&d, idx(&d, "a"), idx(&d, "b")).unwrap(), Some(d.zero()));
    }

    #[test]
    fn s_map_rejects_sharp_arguments() {
        let d = gen("chain 2");
        assert!(matches!(s_map(&d, d.unit(), d.zero()), Err(Error::Precondition(_))));
    }
}
