//! Standard example algebras and exhaustive enumeration of small ones.

mod enumerate;

use std::fmt;
use std::str::FromStr;

use crate::algebra::{EffectAlgebra, Elem, PartialTable};
use crate::elemset::MAX_ELEMENTS;
use crate::error::{Error, Result};

pub use enumerate::{enumerate_all, enumerate_size, MAX_ENUMERATION_SIZE};

/// A recipe for one of the standard finite effect algebras.
///
/// The text form is prefix notation; parentheses and commas are optional
/// separators, so `product chain 1 chain 1` and
/// `product(chain 1, chain 1)` denote the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// The MV-chain `{0, a, 2a, …, na = 1}`.
    Chain(usize),
    /// The Boolean algebra with `k` atoms.
    Boolean(usize),
    /// `MO(k)`: `2k` pairwise incomparable atoms between 0 and 1.
    Mo(usize),
    Product(Box<GeneratorSpec>, Box<GeneratorSpec>),
    /// Horizontal sum: glued at 0 and 1, cross sums undefined.
    Hsum(Box<GeneratorSpec>, Box<GeneratorSpec>),
    /// The horizontal sum of two three-element chains, labelled `0 a b 1`.
    Diamond,
}

impl GeneratorSpec {
    pub fn product(a: GeneratorSpec, b: GeneratorSpec) -> Self {
        GeneratorSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn hsum(a: GeneratorSpec, b: GeneratorSpec) -> Self {
        GeneratorSpec::Hsum(Box::new(a), Box::new(b))
    }

    /// Carrier size of the generated algebra.
    pub fn size(&self) -> usize {
        match self {
            GeneratorSpec::Chain(n) => n + 1,
            GeneratorSpec::Boolean(k) => 1usize.checked_shl(*k as u32).unwrap_or(usize::MAX),
            GeneratorSpec::Mo(k) => 2 * k + 2,
            GeneratorSpec::Product(a, b) => a.size().saturating_mul(b.size()),
            GeneratorSpec::Hsum(a, b) => a.size() + b.size() - 2,
            GeneratorSpec::Diamond => 4,
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            GeneratorSpec::Chain(n) if *n == 0 => {
                Err(Error::Parameters("chain needs at least 1 step".into()))
            }
            GeneratorSpec::Boolean(k) if *k == 0 || *k > 6 => {
                Err(Error::Parameters(format!("boolean needs 1..=6 atoms, got {k}")))
            }
            GeneratorSpec::Mo(k) if *k == 0 => Err(Error::Parameters("mo needs k ≥ 1".into())),
            GeneratorSpec::Product(a, b) | GeneratorSpec::Hsum(a, b) => {
                a.check()?;
                b.check()
            }
            _ => Ok(()),
        }?;
        if self.size() > MAX_ELEMENTS {
            return Err(Error::Parameters(format!(
                "{self} has {} elements, more than {MAX_ELEMENTS}",
                self.size()
            )));
        }
        Ok(())
    }

    fn parse_tokens<'a>(toks: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let kind = toks
            .next()
            .ok_or_else(|| Error::Parameters("missing generator kind".into()))?;
        let mut int = |what: &str| -> Result<usize> {
            let t = toks
                .next()
                .ok_or_else(|| Error::Parameters(format!("{kind} needs {what}")))?;
            t.parse()
                .map_err(|_| Error::Parameters(format!("{kind}: {what} must be an integer, got {t:?}")))
        };
        Ok(match kind {
            "chain" => GeneratorSpec::Chain(int("a step count")?),
            "boolean" => GeneratorSpec::Boolean(int("an atom count")?),
            "mo" => GeneratorSpec::Mo(int("a block count")?),
            "diamond" => GeneratorSpec::Diamond,
            "product" | "hsum" => {
                let a = Self::parse_tokens(toks)?;
                let b = Self::parse_tokens(toks)?;
                if kind == "product" {
                    GeneratorSpec::product(a, b)
                } else {
                    GeneratorSpec::hsum(a, b)
                }
            }
            other => return Err(Error::Parameters(format!("unknown generator kind {other:?}"))),
        })
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .map(|c| if matches!(c, '(' | ')' | ',') { ' ' } else { c })
            .collect();
        let mut toks = cleaned.split_whitespace();
        let spec = Self::parse_tokens(&mut toks)?;
        if let Some(extra) = toks.next() {
            return Err(Error::Parameters(format!("unexpected generator token {extra:?}")));
        }
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Chain(n) => write!(f, "chain {n}"),
            GeneratorSpec::Boolean(k) => write!(f, "boolean {k}"),
            GeneratorSpec::Mo(k) => write!(f, "mo {k}"),
            GeneratorSpec::Product(a, b) => write!(f, "product({a}, {b})"),
            GeneratorSpec::Hsum(a, b) => write!(f, "hsum({a}, {b})"),
            GeneratorSpec::Diamond => f.write_str("diamond"),
        }
    }
}

/// Builds the algebra described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<EffectAlgebra> {
    spec.check()?;
    Ok(match spec {
        GeneratorSpec::Chain(n) => chain(*n),
        GeneratorSpec::Boolean(k) => boolean(*k),
        GeneratorSpec::Mo(k) => mo(*k),
        GeneratorSpec::Product(a, b) => product(&generate(a)?, &generate(b)?),
        GeneratorSpec::Hsum(a, b) => hsum(&generate(a)?, &generate(b)?),
        GeneratorSpec::Diamond => {
            let mut d = hsum(&chain(2), &chain(2));
            d.table_mut()
                .set_labels(["0", "a", "b", "1"].map(String::from).to_vec())
                .expect("four distinct labels");
            d
        }
    })
}

fn build(labels: Vec<String>, zero: Elem, unit: Elem, sum: impl Fn(Elem, Elem) -> Option<Elem>) -> EffectAlgebra {
    let n = labels.len();
    let mut t = PartialTable::empty(labels).expect("generator labels are valid");
    for x in 0..n {
        for y in 0..n {
            t.set(x, y, sum(x, y));
        }
    }
    EffectAlgebra::new(t, zero, unit).expect("generator output is well formed")
}

fn chain(n: usize) -> EffectAlgebra {
    let labels = (0..=n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n => "1".to_string(),
            1 => "a".to_string(),
            i => format!("{i}a"),
        })
        .collect();
    build(labels, 0, n, |x, y| (x + y <= n).then_some(x + y))
}

fn boolean(k: usize) -> EffectAlgebra {
    let full = (1usize << k) - 1;
    let labels = (0..=full)
        .map(|s| match s {
            0 => "0".to_string(),
            s if s == full => "1".to_string(),
            s => (0..k)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| (b'p' + i as u8) as char)
                .collect(),
        })
        .collect();
    build(labels, 0, full, |x, y| (x & y == 0).then_some(x | y))
}

fn mo(k: usize) -> EffectAlgebra {
    let unit = 2 * k + 1;
    let mut labels = vec!["0".to_string()];
    for i in 1..=k {
        labels.push(format!("a{i}"));
        labels.push(format!("a{i}'"));
    }
    labels.push("1".to_string());
    build(labels, 0, unit, |x, y| {
        if x == 0 {
            Some(y)
        } else if y == 0 {
            Some(x)
        } else if x != unit && y != unit && x != y && (x - 1) / 2 == (y - 1) / 2 {
            Some(unit)
        } else {
            None
        }
    })
}

fn product(a: &EffectAlgebra, b: &EffectAlgebra) -> EffectAlgebra {
    let nb = b.len();
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("({la},{lb})")))
        .collect();
    build(
        labels,
        a.zero() * nb + b.zero(),
        a.unit() * nb + b.unit(),
        |x, y| {
            let s = a.sum(x / nb, y / nb)?;
            let t = b.sum(x % nb, y % nb)?;
            Some(s * nb + t)
        },
    )
}

fn hsum(a: &EffectAlgebra, b: &EffectAlgebra) -> EffectAlgebra {
    // New carrier: 0, interior of a, interior of b, 1.
    let inner_a: Vec<Elem> = a.elements().filter(|&x| x != a.zero() && x != a.unit()).collect();
    let inner_b: Vec<Elem> = b.elements().filter(|&x| x != b.zero() && x != b.unit()).collect();
    let n = inner_a.len() + inner_b.len() + 2;
    let unit = n - 1;
    let mut map_a = vec![0; a.len()];
    let mut map_b = vec![0; b.len()];
    map_a[a.unit()] = unit;
    map_b[b.unit()] = unit;
    let mut labels = vec![a.label(a.zero()).to_string()];
    for (i, &x) in inner_a.iter().enumerate() {
        map_a[x] = i + 1;
        labels.push(a.label(x).to_string());
    }
    for (i, &x) in inner_b.iter().enumerate() {
        map_b[x] = inner_a.len() + i + 1;
        let mut l = b.label(x).to_string();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    let mut unit_label = a.label(a.unit()).to_string();
    while labels.contains(&unit_label) {
        unit_label.push('\'');
    }
    labels.push(unit_label);
    let side = |x: Elem| -> (u8, Elem) {
        if x == 0 || x == unit {
            (0, x)
        } else if x <= inner_a.len() {
            (1, inner_a[x - 1])
        } else {
            (2, inner_b[x - 1 - inner_a.len()])
        }
    };
    build(labels, 0, unit, |x, y| {
        if x == 0 {
            return Some(y);
        }
        if y == 0 {
            return Some(x);
        }
        let (sx, ex) = side(x);
        let (sy, ey) = side(y);
        match (sx, sy) {
            (1, 1) => a.sum(ex, ey).map(|s| map_a[s]),
            (2, 2) => b.sum(ex, ey).map(|s| map_b[s]),
            // the unit only sums with 0 in a valid summand
            (0, 1) => a.sum(a.unit(), ey).map(|s| map_a[s]),
            (1, 0) => a.sum(ex, a.unit()).map(|s| map_a[s]),
            (0, 2) => b.sum(b.unit(), ey).map(|s| map_b[s]),
            (2, 0) => b.sum(ex, b.unit()).map(|s| map_b[s]),
            _ => None,
        }
    })
}

/// The fixed catalog of named examples used by the test suites: chains
/// with up to 8 steps, Boolean algebras with up to 4 atoms, `MO(1..=3)`,
/// the diamond, and products and horizontal sums of these with at most 16
/// elements.
pub fn standard_catalog() -> Vec<(String, EffectAlgebra)> {
    let specs = [
        "chain 1", "chain 2", "chain 3", "chain 4", "chain 5", "chain 6", "chain 7", "chain 8",
        "boolean 1", "boolean 2", "boolean 3", "boolean 4",
        "mo 1", "mo 2", "mo 3",
        "diamond",
        "product(chain 1, chain 1)",
        "product(chain 2, chain 1)",
        "product(chain 2, chain 2)",
        "product(chain 3, chain 1)",
        "product(chain 3, chain 3)",
        "product(chain 7, chain 1)",
        "product(chain 2, chain 4)",
        "product(boolean 2, chain 2)",
        "product(boolean 3, chain 1)",
        "product(diamond, chain 1)",
        "product(diamond, chain 2)",
        "product(diamond, diamond)",
        "product(mo 2, chain 1)",
        "product(mo 1, chain 3)",
        "hsum(chain 2, chain 3)",
        "hsum(chain 3, chain 3)",
        "hsum(boolean 2, chain 3)",
        "hsum(boolean 2, boolean 2)",
        "hsum(boolean 3, chain 2)",
        "hsum(mo 2, chain 4)",
        "hsum(product(chain 2, chain 1), chain 2)",
        "hsum(product(chain 2, chain 2), diamond)",
        "hsum(diamond, chain 4)",
        "product(hsum(chain 2, chain 3), chain 1)",
    ];
    specs
        .iter()
        .map(|s| {
            let spec: GeneratorSpec = s.parse().expect("catalog spec parses");
            let e = generate(&spec).expect("catalog spec is in range");
            (spec.to_string(), e)
        })
        .collect()
}
