//! Independent reference implementations for the test suites. Everything
//! here works on raw tables straight from the definitions, without the
//! library's checkers, orders or search routines.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use ea_core::{EffectAlgebra, Elem};

pub type Table = Vec<Vec<Option<usize>>>;

pub fn table_of(e: &EffectAlgebra) -> Table {
    e.table().rows()
}

/// Axiom tags violated by a table with the given zero and unit.
pub fn naive_violations(t: &Table, zero: usize, unit: usize) -> BTreeSet<&'static str> {
    let n = t.len();
    let mut bad = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if t[x][y] != t[y][x] {
                bad.insert("Ei");
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = t[x][y].and_then(|xy| t[xy][z]);
                let right = t[y][z].and_then(|yz| t[x][yz]);
                if (left.is_some() || right.is_some()) && left != right {
                    bad.insert("Eii");
                }
            }
        }
    }
    for x in 0..n {
        if (0..n).filter(|&y| t[x][y] == Some(unit)).count() != 1 {
            bad.insert("Eiii");
        }
        if x != zero && t[unit][x].is_some() {
            bad.insert("Eiv");
        }
    }
    bad
}

pub fn naive_is_ea(t: &Table, zero: usize, unit: usize) -> bool {
    naive_violations(t, zero, unit).is_empty()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Least relabelled table over every bijection sending zero to 0 and
/// unit to n−1.
pub fn naive_canonical(t: &Table, zero: usize, unit: usize) -> Vec<Option<usize>> {
    let n = t.len();
    let interior: Vec<usize> = (0..n).filter(|&x| x != zero && x != unit).collect();
    let mut best: Option<Vec<Option<usize>>> = None;
    for p in permutations(&interior) {
        let mut pos = vec![0; n];
        pos[zero] = 0;
        pos[unit] = n - 1;
        for (k, &x) in p.iter().enumerate() {
            pos[x] = k + 1;
        }
        let mut key = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                key[pos[x] * n + pos[y]] = t[x][y].map(|z| pos[z]);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap()
}

/// Isomorphism classes of effect algebras with `n` elements, found by
/// trying every symmetric filling of the interior cells (zero and unit rows
/// are fixed by the axioms) and checking all axioms on each complete table.
pub fn naive_classes(n: usize) -> BTreeSet<Vec<Option<usize>>> {
    let (zero, unit) = (0, n - 1);
    let cells: Vec<(usize, usize)> = (1..unit).flat_map(|i| (i..unit).map(move |j| (i, j))).collect();
    let values: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let mut t: Table = vec![vec![None; n]; n];
    for x in 0..n {
        t[zero][x] = Some(x);
        t[x][zero] = Some(x);
    }
    let mut classes = BTreeSet::new();
    let total = values.len().pow(cells.len() as u32);
    for mut code in 0..total {
        for &(i, j) in &cells {
            let v = values[code % values.len()];
            code /= values.len();
            t[i][j] = v;
            t[j][i] = v;
        }
        if naive_is_ea(&t, zero, unit) {
            classes.insert(naive_canonical(&t, zero, unit));
        }
    }
    classes
}

/// `x ≤ y` straight from the table.
pub fn leq(t: &Table, x: usize, y: usize) -> bool {
    t[x].contains(&Some(y))
}

pub fn complement(t: &Table, unit: usize, x: usize) -> usize {
    (0..t.len()).find(|&y| t[x][y] == Some(unit)).unwrap()
}

/// Sharp: the only common lower bound of `x` and `x′` is 0.
pub fn sharp_elements(t: &Table, zero: usize, unit: usize) -> BTreeSet<usize> {
    let n = t.len();
    (0..n)
        .filter(|&x| {
            let c = complement(t, unit, x);
            (0..n).all(|z| !(leq(t, z, x) && leq(t, z, c)) || z == zero)
        })
        .collect()
}

/// Meager: the only sharp element below `x` is 0.
pub fn meager_elements(t: &Table, zero: usize, unit: usize) -> BTreeSet<usize> {
    let sh = sharp_elements(t, zero, unit);
    (0..t.len())
        .filter(|&x| sh.iter().all(|&s| s == zero || !leq(t, s, x)))
        .collect()
}

/// Central elements by the definition: `x` and `x′` principal, and every
/// `y` is `y₁ ⊕ y₂` with `y₁ ≤ x`, `y₂ ≤ x′`.
pub fn central_elements(t: &Table, unit: usize) -> BTreeSet<usize> {
    let n = t.len();
    let principal = |x: usize| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                !(leq(t, y, x) && leq(t, z, x)) || t[y][z].is_none_or(|s| leq(t, s, x))
            })
        })
    };
    (0..n)
        .filter(|&x| {
            let c = complement(t, unit, x);
            principal(x)
                && principal(c)
                && (0..n).all(|y| {
                    (0..n).any(|y1| {
                        (0..n).any(|y2| leq(t, y1, x) && leq(t, y2, c) && t[y1][y2] == Some(y))
                    })
                })
        })
        .collect()
}

/// `S(x, y)` by definition: top of `{z sharp | z = (z∧x) ⊕ (z∧y)}`, with
/// meets found as greatest common lower bounds.
pub fn s_map(t: &Table, zero: usize, unit: usize, x: usize, y: usize) -> Option<usize> {
    let n = t.len();
    let meet = |a: usize, b: usize| {
        let lower: Vec<usize> = (0..n).filter(|&z| leq(t, z, a) && leq(t, z, b)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&z| leq(t, z, m)))
    };
    let set: Vec<usize> = sharp_elements(t, zero, unit)
        .into_iter()
        .filter(|&z| match (meet(z, x), meet(z, y)) {
            (Some(p), Some(q)) => t[p][q] == Some(z),
            _ => false,
        })
        .collect();
    set.iter().copied().find(|&m| set.iter().all(|&z| leq(t, z, m)))
}

pub fn labels(e: &EffectAlgebra, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&x| e.label(x).to_string()).collect()
}

pub fn idx(e: &EffectAlgebra, label: &str) -> Elem {
    e.table().index_of(label).unwrap_or_else(|| panic!("no element {label}"))
}

/// Counts of naive classes per size.
pub fn naive_counts(max_n: usize) -> BTreeMap<usize, usize> {
    (2..=max_n).map(|n| (n, naive_classes(n).len())).collect()
}

/// `u ≤ v₁ ⊕ v₂` (and, if `homogeneous_only`, `u ≤ (v₁ ⊕ v₂)′`) splits as
/// `u₁ ⊕ u₂` with `u₁ ≤ v₁`, `u₂ ≤ v₂`.
fn splits(t: &Table, unit: usize, homogeneous_only: bool) -> bool {
    let n = t.len();
    (0..n).all(|v1| {
        (0..n).all(|v2| {
            let Some(v) = t[v1][v2] else { return true };
            let c = complement(t, unit, v);
            (0..n)
                .filter(|&u| leq(t, u, v) && (!homogeneous_only || leq(t, u, c)))
                .all(|u| {
                    (0..n).any(|u1| {
                        leq(t, u1, v1) && (0..n).any(|u2| leq(t, u2, v2) && t[u1][u2] == Some(u))
                    })
                })
        })
    })
}

pub fn naive_homogeneous(t: &Table, unit: usize) -> bool {
    splits(t, unit, true)
}

pub fn naive_rdp(t: &Table, unit: usize) -> bool {
    splits(t, unit, false)
}

pub struct MutationScore {
    pub total: usize,
    /// Flagged with exactly the violated axioms.
    pub exact: usize,
    /// Violates some axiom but was accepted.
    pub missed: usize,
}

/// Random single-cell edits of each algebra's table, scored against
/// [`naive_violations`]. `symmetric` edits `(i,j)` and `(j,i)` together.
pub fn mutation_score(algebras: &[EffectAlgebra], per_algebra: usize, symmetric: bool, seed: u64) -> MutationScore {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut score = MutationScore { total: 0, exact: 0, missed: 0 };
    for e in algebras {
        let n = e.len();
        for _ in 0..per_algebra {
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            let old = e.sum(i, j);
            let new = loop {
                let v = rng.random_range(0..=n);
                let v = (v < n).then_some(v);
                if v != old {
                    break v;
                }
            };
            let mut m = e.clone();
            if symmetric {
                m.table_mut().set_sym(i, j, new);
            } else {
                m.table_mut().set(i, j, new);
            }
            let expected: BTreeSet<String> = naive_violations(&table_of(&m), m.zero(), m.unit())
                .into_iter()
                .map(String::from)
                .collect();
            let got: BTreeSet<String> =
                ea_core::validate_ea(&m).failed_axioms().iter().map(|a| a.to_string()).collect();
            score.total += 1;
            if got == expected {
                score.exact += 1;
            } else if got.is_empty() {
                score.missed += 1;
            }
        }
    }
    score
}
