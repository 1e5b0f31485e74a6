//! The order `x ≤ y ⟺ ∃z. x ⊕ z = y`, the difference `y ⊖ x`, the
//! orthosupplement `x′` and order-theoretic bounds.

use crate::algebra::{EffectAlgebra, Elem, GeneralizedEffectAlgebra, PartialTable};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::validate::{validate_ea, validate_gea};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Meet,
    Join,
}

/// The order induced by a partial sum table, with its difference table.
#[derive(Clone, Debug)]
pub struct Order {
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    // ominus[y * n + x] = y ⊖ x
    ominus: Vec<Option<Elem>>,
}

impl Order {
    /// Builds the induced relation. Assumes a cancellative table, so the
    /// difference is unique; a clash is reported as an error.
    pub fn from_table(t: &PartialTable) -> Result<Self> {
        let n = t.len();
        let mut down = vec![ElemSet::EMPTY; n];
        let mut up = vec![ElemSet::EMPTY; n];
        let mut ominus = vec![None; n * n];
        for x in 0..n {
            for z in 0..n {
                if let Some(y) = t.get(x, z) {
                    down[y].insert(x);
                    up[x].insert(y);
                    let slot = &mut ominus[y * n + x];
                    if slot.is_some_and(|w| w != z) {
                        return Err(Error::Consistency(format!(
                            "{y} ⊖ {x} is not unique (cancellativity fails)"
                        )));
                    }
                    *slot = Some(z);
                }
            }
        }
        let order = Order { down, up, ominus };
        order.check_partial_order(n)?;
        Ok(order)
    }

    fn check_partial_order(&self, n: usize) -> Result<()> {
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(Error::Consistency(format!("order is not reflexive at {x}")));
            }
            for y in self.up[x] {
                if y != x && self.leq(y, x) {
                    return Err(Error::Consistency(format!("order is not antisymmetric at ({x},{y})")));
                }
                for z in self.up[y] {
                    if !self.leq(x, z) {
                        return Err(Error::Consistency(format!(
                            "order is not transitive at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.down[y].contains(x)
    }

    /// `{z | z ≤ x}`
    pub fn down(&self, x: Elem) -> ElemSet {
        self.down[x]
    }

    /// `{z | x ≤ z}`
    pub fn up(&self, x: Elem) -> ElemSet {
        self.up[x]
    }

    /// `y ⊖ x`, defined iff `x ≤ y`.
    #[inline]
    pub fn ominus(&self, y: Elem, x: Elem) -> Option<Elem> {
        self.ominus[y * self.len() + x]
    }

    pub fn lower_bounds(&self, x: Elem, y: Elem) -> ElemSet {
        self.down[x].intersection(self.down[y])
    }

    pub fn upper_bounds(&self, x: Elem, y: Elem) -> ElemSet {
        self.up[x].intersection(self.up[y])
    }

    /// The greatest element of `set`, if it has one.
    pub fn max_of(&self, set: ElemSet) -> Option<Elem> {
        set.iter().find(|&m| set.is_subset(self.down[m]))
    }

    /// The least element of `set`, if it has one.
    pub fn min_of(&self, set: ElemSet) -> Option<Elem> {
        set.iter().find(|&m| set.is_subset(self.up[m]))
    }

    /// Maximal elements of `set`.
    pub fn maximal(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&m| self.up[m].intersection(set).single() == Some(m))
            .collect()
    }

    /// Minimal elements of `set`.
    pub fn minimal(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&m| self.down[m].intersection(set).single() == Some(m))
            .collect()
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.max_of(self.lower_bounds(x, y))
    }

    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.min_of(self.upper_bounds(x, y))
    }

    pub fn bound(&self, x: Elem, y: Elem, dir: Direction) -> Option<Elem> {
        match dir {
            Direction::Meet => self.meet(x, y),
            Direction::Join => self.join(x, y),
        }
    }

    /// `{z | lo ≤ z ≤ hi}`
    pub fn interval(&self, lo: Elem, hi: Elem) -> ElemSet {
        self.up[lo].intersection(self.down[hi])
    }
}

/// A validated effect algebra together with its order, difference and
/// orthosupplement.
#[derive(Clone, Debug)]
pub struct DerivedStructure {
    algebra: EffectAlgebra,
    order: Order,
    complement: Vec<Elem>,
}

/// Validates `e` and computes its derived structure.
pub fn derive(e: &EffectAlgebra) -> Result<DerivedStructure> {
    let report = validate_ea(e);
    if !report.valid {
        let v = &report.violations[0];
        return Err(Error::Invalid(format!(
            "axiom ({}) fails at [{}]",
            v.axiom,
            e.labels_of(v.witness.iter().copied()).join(", ")
        )));
    }
    let order = Order::from_table(e.table())?;
    let n = e.len();
    let complement: Vec<Elem> = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| e.sum(x, y) == Some(e.unit()))
                .expect("validated algebra has complements")
        })
        .collect();
    let d = DerivedStructure {
        algebra: e.clone(),
        order,
        complement,
    };
    d.check_invariants()?;
    Ok(d)
}

impl DerivedStructure {
    fn check_invariants(&self) -> Result<()> {
        let (zero, unit) = (self.zero(), self.unit());
        if self.order.down(unit) != self.carrier() || self.order.up(zero) != self.carrier() {
            return Err(Error::Consistency("zero/unit are not bottom/top".into()));
        }
        if self.complement[zero] != unit {
            return Err(Error::Consistency("0′ ≠ 1".into()));
        }
        for x in self.elements() {
            if self.complement[self.complement[x]] != x {
                return Err(Error::Consistency(format!("x′′ ≠ x at {}", self.label(x))));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &EffectAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> Elem {
        self.algebra.zero()
    }

    pub fn unit(&self) -> Elem {
        self.algebra.unit()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.algebra.elements()
    }

    pub fn carrier(&self) -> ElemSet {
        self.algebra.carrier()
    }

    pub fn label(&self, x: Elem) -> &str {
        self.algebra.label(x)
    }

    pub fn labels_of(&self, set: impl IntoIterator<Item = Elem>) -> Vec<String> {
        self.algebra.labels_of(set)
    }

    #[inline]
    pub fn sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.algebra.sum(x, y)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.order.leq(x, y)
    }

    #[inline]
    pub fn complement(&self, x: Elem) -> Elem {
        self.complement[x]
    }

    #[inline]
    pub fn ominus(&self, y: Elem, x: Elem) -> Option<Elem> {
        self.order.ominus(y, x)
    }

    pub fn down(&self, x: Elem) -> ElemSet {
        self.order.down(x)
    }

    pub fn up(&self, x: Elem) -> ElemSet {
        self.order.up(x)
    }

    pub fn lower_bounds(&self, x: Elem, y: Elem) -> ElemSet {
        self.order.lower_bounds(x, y)
    }

    pub fn upper_bounds(&self, x: Elem, y: Elem) -> ElemSet {
        self.order.upper_bounds(x, y)
    }

    /// Greatest lower bound (`Meet`) or least upper bound (`Join`) of
    /// `{x, y}`, when the bound set has a unique extreme element.
    pub fn bound(&self, x: Elem, y: Elem, dir: Direction) -> Option<Elem> {
        self.order.bound(x, y, dir)
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.order.meet(x, y)
    }

    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.order.join(x, y)
    }

    /// `k·x = x ⊕ … ⊕ x`, left-bracketed; `0·x = 0`.
    pub fn multiple(&self, k: usize, x: Elem) -> Option<Elem> {
        let mut acc = self.zero();
        for _ in 0..k {
            acc = self.sum(acc, x)?;
        }
        Some(acc)
    }

    pub fn is_orthoalgebra(&self) -> bool {
        self.elements()
            .all(|x| x == self.zero() || self.sum(x, x).is_none())
    }

    pub fn is_lattice(&self) -> bool {
        self.elements().all(|x| {
            (x..self.len()).all(|y| self.meet(x, y).is_some() && self.join(x, y).is_some())
        })
    }
}

/// A validated generalized effect algebra with its induced order.
#[derive(Clone, Debug)]
pub struct GeaStructure {
    algebra: GeneralizedEffectAlgebra,
    order: Order,
}

pub fn derive_gea(g: &GeneralizedEffectAlgebra) -> Result<GeaStructure> {
    let report = validate_gea(g);
    if !report.valid {
        let v = &report.violations[0];
        return Err(Error::Invalid(format!("axiom ({}) fails at {:?}", v.axiom, v.witness)));
    }
    Ok(GeaStructure {
        algebra: g.clone(),
        order: Order::from_table(g.table())?,
    })
}

impl GeaStructure {
    pub fn algebra(&self) -> &GeneralizedEffectAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> Elem {
        self.algebra.zero()
    }

    #[inline]
    pub fn sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.algebra.sum(x, y)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.order.leq(x, y)
    }

    #[inline]
    pub fn ominus(&self, y: Elem, x: Elem) -> Option<Elem> {
        self.order.ominus(y, x)
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.order.meet(x, y)
    }
}

/// Orthoalgebra, lattice and MV flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_orthoalgebra: bool,
    pub is_lattice: bool,
    pub is_mv: bool,
}

pub fn classify(d: &DerivedStructure) -> Classification {
    let is_lattice = d.is_lattice();
    Classification {
        is_orthoalgebra: d.is_orthoalgebra(),
        is_lattice,
        is_mv: is_lattice && crate::structure::has_rdp(d),
    }
}
