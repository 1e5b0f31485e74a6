//! Compatibility, orthogonal families and orthocompleteness.
//!
//! An orthogonal family `(x₁, …, x_k)` is summarized by the set of its
//! subsums `{⊕_{i∈A} x_i | A ⊆ {1..k}}`. Appending `x` maps the subsum set
//! `S` (with greatest element `t = ⊕ x_i`) to `S ∪ {s ⊕ x | s ∈ S}`, which
//! is defined exactly when `t ⊕ x` is. The successor depends only on `S`,
//! so the families drawn from a pool are explored as a finite graph of
//! subsum sets. Zero members contribute nothing and are skipped, and every
//! nonzero member strictly raises `t`, so all paths are finite.

use std::collections::{HashSet, VecDeque};

use crate::algebra::Elem;
use crate::elemset::ElemSet;
use crate::order::DerivedStructure;

fn extend(d: &DerivedStructure, subsums: ElemSet, x: Elem) -> ElemSet {
    let mut next = subsums;
    for s in subsums {
        next.insert(d.sum(s, x).expect("s ≤ total and total ⊕ x defined"));
    }
    next
}

fn total(d: &DerivedStructure, subsums: ElemSet) -> Elem {
    d.order().max_of(subsums).expect("the full sum is the top subsum")
}

/// Breadth-first walk over the subsum sets of all orthogonal families
/// drawn from `pool`. `visit` returns `true` to stop early; the function
/// then returns the stopping set.
pub fn search_families(
    d: &DerivedStructure,
    pool: ElemSet,
    mut visit: impl FnMut(ElemSet) -> bool,
) -> Option<ElemSet> {
    let mut nonzero = pool;
    nonzero.remove(d.zero());
    let start = ElemSet::singleton(d.zero());
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        if visit(s) {
            return Some(s);
        }
        let t = total(d, s);
        for x in nonzero {
            if d.sum(t, x).is_some() {
                let next = extend(d, s, x);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// All subsum sets of orthogonal families from `pool`.
pub fn family_subsum_sets(d: &DerivedStructure, pool: ElemSet) -> Vec<ElemSet> {
    let mut all = Vec::new();
    search_families(d, pool, |s| {
        all.push(s);
        false
    });
    all
}

/// A witness that `m` is (internally) compatible: an orthogonal family
/// whose subsums include every member of `m`.
pub fn compatibility_witness(d: &DerivedStructure, m: ElemSet, internal: bool) -> Option<Vec<Elem>> {
    let pool = if internal { m } else { d.carrier() };
    let target = search_families(d, pool, |s| m.is_subset(s))?;
    // Recover a family producing `target`; intermediate subsum sets grow
    // monotonically, so only subsets of `target` need exploring.
    let mut nonzero = pool;
    nonzero.remove(d.zero());
    let mut family = Vec::new();
    fn dfs(
        d: &DerivedStructure,
        pool: &[Elem],
        start: usize,
        s: ElemSet,
        target: ElemSet,
        family: &mut Vec<Elem>,
    ) -> bool {
        if s == target {
            return true;
        }
        let t = total(d, s);
        for (i, &x) in pool.iter().enumerate().skip(start) {
            if d.sum(t, x).is_some() {
                let next = extend(d, s, x);
                if next.is_subset(target) {
                    family.push(x);
                    if dfs(d, pool, i, next, target, family) {
                        return true;
                    }
                    family.pop();
                }
            }
        }
        false
    }
    let pool_vec = nonzero.to_vec();
    let found = dfs(d, &pool_vec, 0, ElemSet::singleton(d.zero()), target, &mut family);
    debug_assert!(found);
    Some(family)
}

/// `m` is compatible (`internal = false`: the family may use any element)
/// or internally compatible (`internal = true`: members of `m` only).
///
/// For a finite `m` it suffices to refine `m` itself: a family that
/// refines `m` refines each of its subsets.
pub fn compatible(d: &DerivedStructure, m: ElemSet, internal: bool) -> bool {
    let pool = if internal { m } else { d.carrier() };
    search_families(d, pool, |s| m.is_subset(s)).is_some()
}

/// `x ↔ y`
pub fn comp(d: &DerivedStructure, x: Elem, y: Elem) -> bool {
    compatible(d, ElemSet::singleton(x).with(y), false)
}

/// Every orthogonal multiset has an orthosum equal to the supremum of its
/// partial sums. Returns a failing family, if any.
///
/// On a finite carrier a multiset can repeat `x` at most `ord(x)` times,
/// so only finitely many families exist and all are enumerated.
pub fn orthocompleteness_counterexample(d: &DerivedStructure) -> Option<Vec<Elem>> {
    let nonzero: Vec<Elem> = d.elements().filter(|&x| x != d.zero()).collect();
    fn dfs(
        d: &DerivedStructure,
        pool: &[Elem],
        start: usize,
        s: ElemSet,
        sum: Elem,
        family: &mut Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        let upper = s
            .iter()
            .fold(d.carrier(), |acc, p| acc.intersection(d.up(p)));
        if d.order().min_of(upper) != Some(sum) {
            return Some(family.clone());
        }
        for (i, &x) in pool.iter().enumerate().skip(start) {
            if let Some(next_sum) = d.sum(sum, x) {
                let next = extend(d, s, x);
                family.push(x);
                if let Some(bad) = dfs(d, pool, i, next, next_sum, family) {
                    return Some(bad);
                }
                family.pop();
            }
        }
        None
    }
    dfs(d, &nonzero, 0, ElemSet::singleton(d.zero()), d.zero(), &mut Vec::new())
}

pub fn is_orthocomplete(d: &DerivedStructure) -> bool {
    orthocompleteness_counterexample(d).is_none()
}

/// For each pair `(u, v)`, one maximal lower bound, or the pair lacking
/// one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Maximality {
    pub holds: bool,
    /// `(u, v, w)` with `w` a maximal lower bound of `{u, v}`.
    pub witnesses: Vec<(Elem, Elem, Elem)>,
    pub failure: Option<(Elem, Elem)>,
}

pub fn has_maximality_property(d: &DerivedStructure) -> Maximality {
    let mut witnesses = Vec::new();
    for u in d.elements() {
        for v in u..d.len() {
            match d.order().maximal(d.lower_bounds(u, v)).first() {
                Some(w) => witnesses.push((u, v, w)),
                None => {
                    return Maximality {
                        holds: false,
                        witnesses,
                        failure: Some((u, v)),
                    }
                }
            }
        }
    }
    Maximality {
        holds: true,
        witnesses,
        failure: None,
    }
}
