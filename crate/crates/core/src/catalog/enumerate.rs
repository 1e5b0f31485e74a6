//! Exhaustive enumeration of effect algebras up to isomorphism.
//!
//! The zero is fixed at index 0 and the unit at `n−1`, which forces their
//! rows. The remaining upper-triangle cells are filled in row-major order;
//! each placement is checked for cancellativity and for every
//! associativity instance whose cells are all decided. Once a row is
//! complete it must have exactly one complement. Completed tables are
//! validated in full and reduced to canonical form.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{default_labels, EffectAlgebra, PartialTable};
use crate::error::{Error, Result};
use crate::format::serialize_ea;
use crate::iso::canonical_form;
use crate::validate::validate_ea;

pub const MAX_ENUMERATION_SIZE: usize = 8;

const UNDEF: u8 = u8::MAX;

#[derive(Clone)]
struct Filler {
    n: usize,
    cells: Vec<u8>,
    decided: Vec<bool>,
    /// Interior upper-triangle cells in fill order.
    order: Vec<(usize, usize)>,
}

impl Filler {
    fn new(n: usize) -> Self {
        let mut f = Filler {
            n,
            cells: vec![UNDEF; n * n],
            decided: vec![false; n * n],
            order: Vec::new(),
        };
        let unit = n - 1;
        for x in 0..n {
            f.put(0, x, x as u8);
            if x != 0 {
                f.put(unit, x, UNDEF);
            }
        }
        for i in 1..unit {
            for j in i..unit {
                f.order.push((i, j));
            }
        }
        f
    }

    fn put(&mut self, x: usize, y: usize, v: u8) {
        let n = self.n;
        self.cells[x * n + y] = v;
        self.cells[y * n + x] = v;
        self.decided[x * n + y] = true;
        self.decided[y * n + x] = true;
    }

    fn clear(&mut self, x: usize, y: usize) {
        let n = self.n;
        self.cells[x * n + y] = UNDEF;
        self.cells[y * n + x] = UNDEF;
        self.decided[x * n + y] = false;
        self.decided[y * n + x] = false;
    }

    /// `Some(Some(z))`, `Some(None)` for a decided undefined cell, `None`
    /// while undecided.
    fn cell(&self, x: usize, y: usize) -> Option<Option<usize>> {
        let k = x * self.n + y;
        self.decided[k].then(|| (self.cells[k] != UNDEF).then_some(self.cells[k] as usize))
    }

    fn cancellative_at(&self, i: usize, j: usize, z: usize) -> bool {
        let n = self.n;
        (0..n).all(|k| {
            (k == j || self.cell(i, k) != Some(Some(z))) && (k == i || self.cell(j, k) != Some(Some(z)))
        })
    }

    fn associative(&self) -> bool {
        let n = self.n;
        for x in 1..n - 1 {
            for y in 1..n - 1 {
                let Some(xy) = self.cell(x, y) else { continue };
                for w in 1..n - 1 {
                    let Some(yw) = self.cell(y, w) else { continue };
                    let lhs = match xy {
                        None => Some(None),
                        Some(a) => self.cell(a, w),
                    };
                    let rhs = match yw {
                        None => Some(None),
                        Some(b) => self.cell(x, b),
                    };
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn row_has_one_complement(&self, i: usize) -> bool {
        let unit = self.n - 1;
        (0..self.n).filter(|&k| self.cell(i, k) == Some(Some(unit))).count() == 1
    }

    fn to_algebra(&self) -> EffectAlgebra {
        let n = self.n;
        let rows: Vec<Vec<Option<usize>>> = (0..n)
            .map(|x| (0..n).map(|y| self.cell(x, y).expect("complete")).collect())
            .collect();
        let table = PartialTable::from_rows(default_labels(n), &rows).expect("well-formed");
        EffectAlgebra::new(table, 0, n - 1).expect("zero ≠ unit")
    }

    fn fill(&mut self, p: usize, out: &mut Vec<EffectAlgebra>) {
        let Some(&(i, j)) = self.order.get(p) else {
            let e = self.to_algebra();
            if validate_ea(&e).valid {
                out.push(canonical_form(&e).expect("validated"));
            }
            return;
        };
        let row_done = j == self.n - 2;
        for v in self.choices(i, j) {
            self.put(i, j, v);
            let ok = match v {
                UNDEF => true,
                z => self.cancellative_at(i, j, z as usize),
            } && self.associative()
                && (!row_done || self.row_has_one_complement(i));
            if ok {
                self.fill(p + 1, out);
            }
            self.clear(i, j);
        }
    }

    /// `x ⊕ y` is never 0, `x` or `y` for nonzero `x, y`.
    fn choices(&self, i: usize, j: usize) -> Vec<u8> {
        std::iter::once(UNDEF)
            .chain((1..self.n).filter(|&z| z != i && z != j).map(|z| z as u8))
            .collect()
    }
}

fn canonical_set(n: usize) -> Vec<EffectAlgebra> {
    let root = Filler::new(n);
    let found: Vec<EffectAlgebra> = match root.order.first() {
        None => {
            let mut out = Vec::new();
            root.clone().fill(0, &mut out);
            out
        }
        Some(&(i, j)) => root
            .choices(i, j)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut f = root.clone();
                let mut out = Vec::new();
                f.put(i, j, v);
                let ok = v == UNDEF || f.cancellative_at(i, j, v as usize);
                if ok && f.associative() && (j != n - 2 || f.row_has_one_complement(i)) {
                    f.fill(1, &mut out);
                }
                out
            })
            .collect(),
    };
    let unique: BTreeSet<String> = found.iter().map(serialize_ea).collect();
    unique
        .iter()
        .map(|s| crate::format::parse_ea(s).expect("own serialization parses"))
        .collect()
}

/// All effect algebras with exactly `n` elements, one canonical
/// representative per isomorphism class, ordered by canonical text.
pub fn enumerate_size(n: usize) -> Result<Vec<EffectAlgebra>> {
    if !(2..=MAX_ENUMERATION_SIZE).contains(&n) {
        return Err(Error::Parameters(format!(
            "enumeration size {n} outside 2..={MAX_ENUMERATION_SIZE}"
        )));
    }
    Ok(canonical_set(n))
}

/// All effect algebras with at most `max_n` elements, by size then
/// canonical text.
pub fn enumerate_all(max_n: usize) -> Result<Vec<EffectAlgebra>> {
    if !(2..=MAX_ENUMERATION_SIZE).contains(&max_n) {
        return Err(Error::Parameters(format!(
            "enumeration bound {max_n} outside 2..={MAX_ENUMERATION_SIZE}"
        )));
    }
    let mut all = Vec::new();
    for n in 2..=max_n {
        all.extend(canonical_set(n));
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};
    use crate::iso::find_isomorphism;

    #[test]
    fn two_and_three_elements() {
        assert_eq!(enumerate_size(2).unwrap().len(), 1);
        let three = enumerate_size(3).unwrap();
        assert_eq!(three.len(), 1);
        let c2 = generate(&GeneratorSpec::Chain(2)).unwrap();
        assert!(find_isomorphism(&three[0], &c2).unwrap().is_some());
    }

    #[test]
    fn four_elements_contain_the_standard_ones() {
        let four = enumerate_size(4).unwrap();
        for s in ["chain 3", "boolean 2", "diamond"] {
            let e = generate(&s.parse().unwrap()).unwrap();
            let hits = four
                .iter()
                .filter(|c| find_isomorphism(c, &e).unwrap().is_some())
                .count();
            assert_eq!(hits, 1, "{s}");
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(enumerate_all(1).is_err());
        assert!(enumerate_all(MAX_ENUMERATION_SIZE + 1).is_err());
        assert!(enumerate_size(9).is_err());
    }
}
