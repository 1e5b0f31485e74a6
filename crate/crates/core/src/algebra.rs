//! Dense partial-operation tables for effect algebras and generalized
//! effect algebras.
//!
//! Elements are addressed by index `0..n`. The orthosum `x ⊕ y` is stored in
//! an `n × n` table whose entries are either an element index or undefined.
//! Constructors only check that the table is well formed (indices in range,
//! distinct labels); the axioms are checked separately by
//! [`crate::validate`].

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// An element index.
pub type Elem = usize;

const UNDEF: u8 = u8::MAX;

/// An `n × n` table of a partial binary operation plus element labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTable {
    labels: Vec<String>,
    cells: Vec<u8>,
}

impl PartialTable {
    /// A table with every entry undefined.
    pub fn empty(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("carrier must be nonempty".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::Invalid(format!(
                "carrier of {n} elements exceeds the supported maximum of {MAX_ELEMENTS}"
            )));
        }
        check_labels(&labels)?;
        Ok(PartialTable {
            labels,
            cells: vec![UNDEF; n * n],
        })
    }

    /// Builds a table from rows of optional indices.
    pub fn from_rows(labels: Vec<String>, rows: &[Vec<Option<Elem>>]) -> Result<Self> {
        let mut t = PartialTable::empty(labels)?;
        let n = t.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("table must be {n}x{n}")));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if let Some(v) = v {
                    if v >= n {
                        return Err(Error::Invalid(format!(
                            "entry ({i},{j}) = {v} is out of range"
                        )));
                    }
                }
                t.set(i, j, v);
            }
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Option<Elem> {
        let v = self.cells[x * self.labels.len() + y];
        (v != UNDEF).then_some(v as Elem)
    }

    /// Sets a single cell. Symmetry is not maintained.
    pub fn set(&mut self, x: Elem, y: Elem, v: Option<Elem>) {
        let n = self.labels.len();
        assert!(x < n && y < n, "cell ({x},{y}) out of range");
        self.cells[x * n + y] = match v {
            Some(v) => {
                assert!(v < n, "value {v} out of range");
                v as u8
            }
            None => UNDEF,
        };
    }

    /// Sets `x ⊕ y` and `y ⊕ x` together.
    pub fn set_sym(&mut self, x: Elem, y: Elem, v: Option<Elem>) {
        self.set(x, y, v);
        self.set(y, x, v);
    }

    pub fn rows(&self) -> Vec<Vec<Option<Elem>>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// First asymmetric cell `(i, j)` with `i < j`, if any.
    pub fn first_asymmetry(&self) -> Option<(Elem, Elem)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    /// Elements `y` with `x ⊕ y` defined.
    pub fn defined_in_row(&self, x: Elem) -> ElemSet {
        (0..self.len()).filter(|&y| self.get(x, y).is_some()).collect()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.len() {
            return Err(Error::Invalid("label count does not match carrier".into()));
        }
        check_labels(&labels)?;
        self.labels = labels;
        Ok(())
    }

    /// The table transported along `perm`, where old element `x` becomes
    /// new element `perm[x]`.
    pub fn permuted(&self, perm: &[Elem]) -> Self {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        for (x, &px) in perm.iter().enumerate() {
            labels[px] = self.labels[x].clone();
        }
        let mut cells = vec![UNDEF; n * n];
        for x in 0..n {
            for y in 0..n {
                if let Some(v) = self.get(x, y) {
                    cells[perm[x] * n + perm[y]] = perm[v] as u8;
                }
            }
        }
        PartialTable { labels, cells }
    }

    /// Restriction to `members`, keeping `x ⊕ y` only where the result is
    /// also a member. Returns the new table and the embedding of new
    /// indices into old ones.
    pub fn restrict(&self, members: ElemSet) -> (Self, Vec<Elem>) {
        let embed = members.to_vec();
        let mut back = vec![usize::MAX; self.len()];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let k = embed.len();
        let mut cells = vec![UNDEF; k * k];
        for (i, &x) in embed.iter().enumerate() {
            for (j, &y) in embed.iter().enumerate() {
                if let Some(v) = self.get(x, y) {
                    if members.contains(v) {
                        cells[i * k + j] = back[v] as u8;
                    }
                }
            }
        }
        (PartialTable { labels, cells }, embed)
    }
}

/// Default labels `e0 .. e{n-1}`.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!("label {l:?} is not a valid token")));
        }
        if labels[..i].contains(l) {
            return Err(Error::Invalid(format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

/// A finite partial algebra `(E; ⊕, 0, 1)` given by its table.
///
/// Only well-formedness is guaranteed by construction. Use
/// [`crate::validate::validate_ea`] to check the axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EffectAlgebra {
    table: PartialTable,
    zero: Elem,
    unit: Elem,
}

impl EffectAlgebra {
    pub fn new(table: PartialTable, zero: Elem, unit: Elem) -> Result<Self> {
        let n = table.len();
        if n < 2 {
            return Err(Error::Invalid("an effect algebra needs at least 2 elements".into()));
        }
        if zero >= n || unit >= n {
            return Err(Error::Invalid("zero/unit index out of range".into()));
        }
        if zero == unit {
            return Err(Error::Invalid("zero and unit must differ".into()));
        }
        Ok(EffectAlgebra { table, zero, unit })
    }

    pub fn from_rows(
        labels: Vec<String>,
        zero: Elem,
        unit: Elem,
        rows: &[Vec<Option<Elem>>],
    ) -> Result<Self> {
        EffectAlgebra::new(PartialTable::from_rows(labels, rows)?, zero, unit)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    #[inline]
    pub fn sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.table.get(x, y)
    }

    pub fn table(&self) -> &PartialTable {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut PartialTable {
        &mut self.table
    }

    pub fn labels(&self) -> &[String] {
        self.table.labels()
    }

    pub fn label(&self, x: Elem) -> &str {
        self.table.label(x)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn labels_of(&self, set: impl IntoIterator<Item = Elem>) -> Vec<String> {
        set.into_iter().map(|x| self.label(x).to_string()).collect()
    }

    /// Relabeled copy where old element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[Elem]) -> EffectAlgebra {
        EffectAlgebra {
            table: self.table.permuted(perm),
            zero: perm[self.zero],
            unit: perm[self.unit],
        }
    }
}

/// A finite generalized effect algebra `(G; ⊕, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedEffectAlgebra {
    table: PartialTable,
    zero: Elem,
}

impl GeneralizedEffectAlgebra {
    pub fn new(table: PartialTable, zero: Elem) -> Result<Self> {
        if zero >= table.len() {
            return Err(Error::Invalid("zero index out of range".into()));
        }
        Ok(GeneralizedEffectAlgebra { table, zero })
    }

    pub fn from_rows(labels: Vec<String>, zero: Elem, rows: &[Vec<Option<Elem>>]) -> Result<Self> {
        GeneralizedEffectAlgebra::new(PartialTable::from_rows(labels, rows)?, zero)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn sum(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.table.get(x, y)
    }

    pub fn table(&self) -> &PartialTable {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut PartialTable {
        &mut self.table
    }

    pub fn labels(&self) -> &[String] {
        self.table.labels()
    }

    pub fn label(&self, x: Elem) -> &str {
        self.table.label(x)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }
}
