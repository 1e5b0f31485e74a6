//! Isomorphism search and canonical forms.
//!
//! Both rest on an isomorphism-invariant colouring of the elements: an
//! initial colour from per-element invariants, refined by the colours of
//! each element's sums until stable. Colours are numbered by sorted
//! signature, so they agree between isomorphic algebras.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{default_labels, EffectAlgebra, Elem};
use crate::error::Result;
use crate::order::{derive, DerivedStructure};
use crate::structure::elements::{atoms, sharp_set};

/// Invariants of one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementInvariant {
    /// 0 for the zero, 2 for the unit, 1 otherwise.
    pub role: u8,
    /// Largest `k` with `k·x` defined (0 for the zero).
    pub ord: usize,
    /// Number of `y` with `x ⊕ y` defined.
    pub defined_sums: usize,
    pub atom: bool,
    pub sharp: bool,
    /// Length of the longest chain from 0 to `x`.
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    /// Sorted multiset of element invariants.
    pub elements: Vec<ElementInvariant>,
    pub lattice: bool,
    pub orthoalgebra: bool,
}

fn element_invariants(d: &DerivedStructure) -> Vec<ElementInvariant> {
    let at = atoms(d);
    let sh = sharp_set(d);
    let n = d.len();
    // heights by increasing size of the down-set
    let mut by_size: Vec<Elem> = d.elements().collect();
    by_size.sort_by_key(|&x| d.down(x).len());
    let mut height = vec![0usize; n];
    for &x in &by_size {
        height[x] = d
            .down(x)
            .iter()
            .filter(|&y| y != x)
            .map(|y| height[y] + 1)
            .max()
            .unwrap_or(0);
    }
    d.elements()
        .map(|x| {
            let ord = if x == d.zero() {
                0
            } else {
                (1..=n).take_while(|&k| d.multiple(k, x).is_some()).count()
            };
            ElementInvariant {
                role: if x == d.zero() {
                    0
                } else if x == d.unit() {
                    2
                } else {
                    1
                },
                ord,
                defined_sums: d.algebra().table().defined_in_row(x).len(),
                atom: at.contains(x),
                sharp: sh.contains(x),
                height: height[x],
            }
        })
        .collect()
}

fn fingerprint_of(d: &DerivedStructure, inv: &[ElementInvariant]) -> Fingerprint {
    let mut elements = inv.to_vec();
    elements.sort();
    Fingerprint {
        elements,
        lattice: d.is_lattice(),
        orthoalgebra: d.is_orthoalgebra(),
    }
}

/// Fingerprint of a valid effect algebra; equal for isomorphic inputs.
pub fn fingerprint(e: &EffectAlgebra) -> Result<Fingerprint> {
    let d = derive(e)?;
    let inv = element_invariants(&d);
    Ok(fingerprint_of(&d, &inv))
}

/// Renumbers colours by sorted signature.
fn renumber<K: Ord + Clone>(sigs: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    let ids: BTreeMap<K, u32> = sorted.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
    sigs.iter().map(|k| ids[k]).collect()
}

fn class_count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Refines until the number of colours stops growing. Each new colour
/// starts with the old one, so classes only split and keep their order.
fn refine(e: &EffectAlgebra, mut colors: Vec<u32>) -> Vec<u32> {
    let n = e.len();
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
            .map(|x| {
                let mut row: Vec<(u32, u32)> = (0..n)
                    .map(|y| (colors[y], e.sum(x, y).map_or(u32::MAX, |z| colors[z])))
                    .collect();
                row.sort_unstable();
                (colors[x], row)
            })
            .collect();
        let next = renumber(&sigs);
        if class_count(&next) == class_count(&colors) {
            return next;
        }
        colors = next;
    }
}

fn stable_colors(d: &DerivedStructure) -> Vec<u32> {
    refine(d.algebra(), renumber(&element_invariants(d)))
}

/// Checks that `f` is a bijection fixing 0 and 1 with
/// `x ⊕ y` defined iff `f(x) ⊕ f(y)` defined, and `f(x ⊕ y) = f(x) ⊕ f(y)`.
pub fn is_isomorphism(a: &EffectAlgebra, b: &EffectAlgebra, f: &[Elem]) -> bool {
    let n = a.len();
    if b.len() != n || f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    f[a.zero()] == b.zero()
        && f[a.unit()] == b.unit()
        && (0..n).all(|x| (0..n).all(|y| a.sum(x, y).map(|z| f[z]) == b.sum(f[x], f[y])))
}

fn inverse(f: &[Elem]) -> Vec<Elem> {
    let mut g = vec![0; f.len()];
    for (x, &y) in f.iter().enumerate() {
        g[y] = x;
    }
    g
}

struct Search<'a> {
    a: &'a EffectAlgebra,
    b: &'a EffectAlgebra,
    order: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    f: Vec<Option<Elem>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, x: Elem) -> bool {
        let fx = self.f[x].expect("just assigned");
        for y in 0..self.a.len() {
            let Some(fy) = self.f[y] else { continue };
            let (s, t) = (self.a.sum(x, y), self.b.sum(fx, fy));
            if s.is_some() != t.is_some() {
                return false;
            }
            if let (Some(s), Some(t)) = (s, t) {
                if let Some(fs) = self.f[s] {
                    if fs != t {
                        return false;
                    }
                } else if self.used[t] {
                    return false;
                }
            }
        }
        true
    }

    fn go(&mut self, depth: usize) -> bool {
        let Some(&x) = self.order.get(depth) else {
            return true;
        };
        for i in 0..self.candidates[x].len() {
            let c = self.candidates[x][i];
            if self.used[c] {
                continue;
            }
            self.f[x] = Some(c);
            self.used[c] = true;
            if self.consistent(x) && self.go(depth + 1) {
                return true;
            }
            self.f[x] = None;
            self.used[c] = false;
        }
        false
    }
}

/// An isomorphism `A → B` as an element map, or `None` if there is none.
/// The search is complete; a returned map has been checked exhaustively in
/// both directions. Both inputs must be valid effect algebras.
pub fn find_isomorphism(a: &EffectAlgebra, b: &EffectAlgebra) -> Result<Option<Vec<Elem>>> {
    let (da, db) = (derive(a)?, derive(b)?);
    if a.len() != b.len() {
        return Ok(None);
    }
    let (ia, ib) = (element_invariants(&da), element_invariants(&db));
    if fingerprint_of(&da, &ia) != fingerprint_of(&db, &ib) {
        return Ok(None);
    }
    let (ca, cb) = (refine(a, renumber(&ia)), refine(b, renumber(&ib)));
    let (mut sa, mut sb) = (ca.clone(), cb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let n = a.len();
    let class_size = |c: u32| ca.iter().filter(|&&k| k == c).count();
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&x| (class_size(ca[x]), ca[x], x));
    let candidates = (0..n)
        .map(|x| (0..n).filter(|&y| cb[y] == ca[x]).collect())
        .collect();
    let mut search = Search {
        a,
        b,
        order,
        candidates,
        f: vec![None; n],
        used: vec![false; n],
    };
    if !search.go(0) {
        return Ok(None);
    }
    let f: Vec<Elem> = search.f.into_iter().map(|y| y.expect("complete")).collect();
    assert!(
        is_isomorphism(a, b, &f) && is_isomorphism(b, a, &inverse(&f)),
        "search returned a non-isomorphism"
    );
    Ok(Some(f))
}

/// Table of `e` under the position map `pos`, as a comparable key.
fn key_under(e: &EffectAlgebra, pos: &[u32]) -> Vec<u8> {
    let n = e.len();
    let mut key = vec![u8::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            if let Some(z) = e.sum(x, y) {
                key[pos[x] as usize * n + pos[y] as usize] = pos[z] as u8;
            }
        }
    }
    key
}

/// Individualise–refine search for the least key over the leaves.
fn canon_search(e: &EffectAlgebra, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<u32>)>) {
    let n = e.len();
    if class_count(&colors) == n {
        let key = key_under(e, &colors);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, colors));
        }
        return;
    }
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c as usize] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).expect("not discrete") as u32;
    for x in (0..n).filter(|&x| colors[x] == target) {
        let sigs: Vec<(u32, bool)> = (0..n).map(|y| (colors[y], y != x)).collect();
        canon_search(e, refine(e, renumber(&sigs)), best);
    }
}

/// A relabelled copy with the zero at index 0, the unit at index `n−1` and
/// labels `e0 .. e{n-1}`. Isomorphic inputs give identical outputs.
pub fn canonical_form(e: &EffectAlgebra) -> Result<EffectAlgebra> {
    Ok(canonical_form_with_map(e)?.0)
}

/// [`canonical_form`] together with the map from `e`'s indices to the
/// canonical ones.
pub fn canonical_form_with_map(e: &EffectAlgebra) -> Result<(EffectAlgebra, Vec<Elem>)> {
    let d = derive(e)?;
    let mut best = None;
    canon_search(e, stable_colors(&d), &mut best);
    let (_, pos) = best.expect("at least one leaf");
    let perm: Vec<Elem> = pos.iter().map(|&p| p as Elem).collect();
    let mut c = e.permuted(&perm);
    c.table_mut()
        .set_labels(default_labels(e.len()))
        .expect("default labels are valid");
    debug_assert_eq!(c.zero(), 0);
    debug_assert_eq!(c.unit(), e.len() - 1);
    Ok((c, perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, standard_catalog, GeneratorSpec};
    use crate::format::serialize_ea;

    fn gen(s: &str) -> EffectAlgebra {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    fn shuffled(e: &EffectAlgebra, seed: usize) -> EffectAlgebra {
        let n = e.len();
        let perm: Vec<Elem> = (0..n).map(|x| (n - 1 - x + seed) % n).collect();
        e.permuted(&perm)
    }

    #[test]
    fn permuted_chain_is_isomorphic() {
        let c = gen("chain 3");
        let p = shuffled(&c, 1);
        let f = find_isomorphism(&c, &p).unwrap().unwrap();
        assert!(is_isomorphism(&c, &p, &f));
    }

    #[test]
    fn distinct_four_element_algebras() {
        let (c3, b2, dm) = (gen("chain 3"), gen("boolean 2"), gen("diamond"));
        assert_eq!(find_isomorphism(&c3, &b2).unwrap(), None);
        assert_eq!(find_isomorphism(&c3, &dm).unwrap(), None);
        assert_eq!(find_isomorphism(&dm, &gen("mo 1")).unwrap(), None);
        // ord by repeated addition straight from the table
        let ords = |e: &EffectAlgebra| {
            let mut v: Vec<usize> = (0..e.len())
                .filter(|&x| x != e.zero())
                .map(|x| {
                    let (mut acc, mut k) = (x, 1);
                    while let Some(s) = e.sum(acc, x) {
                        acc = s;
                        k += 1;
                    }
                    k
                })
                .collect();
            v.sort();
            v
        };
        let from_fp = |e: &EffectAlgebra| {
            let mut v: Vec<usize> = fingerprint(e).unwrap().elements.iter().filter(|i| i.role != 0).map(|i| i.ord).collect();
            v.sort();
            v
        };
        assert_eq!(ords(&c3), [1, 1, 3]);
        assert_eq!(ords(&b2), [1, 1, 1]);
        assert_eq!(from_fp(&c3), ords(&c3));
        assert_eq!(from_fp(&b2), ords(&b2));
        assert_ne!(fingerprint(&c3).unwrap(), fingerprint(&b2).unwrap());
    }

    #[test]
    fn canonical_form_is_invariant_and_idempotent() {
        for (name, e) in standard_catalog() {
            let c = canonical_form(&e).unwrap();
            assert_eq!(c.zero(), 0);
            assert_eq!(c.unit(), e.len() - 1);
            assert_eq!(canonical_form(&c).unwrap(), c, "{name}");
            for seed in 1..3 {
                let p = shuffled(&e, seed);
                assert_eq!(serialize_ea(&canonical_form(&p).unwrap()), serialize_ea(&c), "{name}");
            }
        }
    }

    #[test]
    fn product_commutes_up_to_isomorphism() {
        let a = gen("product(chain 2, chain 3)");
        let b = gen("product(chain 3, chain 2)");
        assert!(find_isomorphism(&a, &b).unwrap().is_some());
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }
}
