//! The triple `((Sh, ⊕_Sh), (Mea, ⊕_Mea), h)`, its `.triple` text form,
//! and [`TripleView`], which recomputes `x̂`, `π`, `R`, `S` and the meager
//! sums from the triple alone.
//!
//! ```text
//! triple
//! sharp 2
//! labels 0 1
//! zero 0
//! unit 1
//! table
//! 0 1
//! 1 .
//! meager 3
//! labels 0 a 2a
//! zero 0
//! table
//! 0 1 2
//! 1 2 .
//! 2 . .
//! h
//! 0: 0
//! 1: 0 1 2
//! ```
//!
//! `h` lists, for each sharp index, the meager indices in `h(s)`.

use std::fmt::Write as _;

use crate::algebra::{EffectAlgebra, Elem, GeneralizedEffectAlgebra};
use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::format::{parse_block, parse_count, parse_index, write_labels, write_table, Lines};
use crate::order::{derive, derive_gea, DerivedStructure, GeaStructure};
use crate::structure::blocks::subalgebra;
use crate::trt::eside::TrtAlgebra;
use crate::validate::{validate_ea, validate_gea};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub sharp: EffectAlgebra,
    pub meager: GeneralizedEffectAlgebra,
    /// `h[s]`: meager indices below the sharp element `s`.
    pub h: Vec<ElemSet>,
}

/// Where the triple's elements sit in the algebra they were extracted from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleEmbedding {
    /// sharp index → element of `E`
    pub sharp: Vec<Elem>,
    /// meager index → element of `E`
    pub meager: Vec<Elem>,
}

impl TripleEmbedding {
    pub fn sharp_index(&self, x: Elem) -> Option<usize> {
        self.sharp.iter().position(|&e| e == x)
    }

    pub fn meager_index(&self, x: Elem) -> Option<usize> {
        self.meager.iter().position(|&e| e == x)
    }
}

impl Triple {
    /// Both algebras pass their axioms and `h` satisfies `h(0) = {0}`,
    /// `0 ∈ h(s)`, monotonicity and downward closure.
    pub fn check(&self) -> Result<()> {
        TripleView::new(self).map(|_| ())
    }

    /// `"(s,m)"` from the two labels.
    pub fn pair_label(&self, s: Elem, m: Elem) -> String {
        format!("({},{})", self.sharp.label(s), self.meager.label(m))
    }
}

fn check_h(sharp: &DerivedStructure, meager: &GeaStructure, h: &[ElemSet]) -> Result<()> {
    let bad = |msg: String| Err(Error::Invalid(format!("h: {msg}")));
    if h.len() != sharp.len() {
        return bad(format!("{} entries for {} sharp elements", h.len(), sharp.len()));
    }
    let all = ElemSet::full(meager.len());
    let m0 = meager.zero();
    for s in sharp.elements() {
        let hs = h[s];
        if !hs.is_subset(all) {
            return bad(format!("h({}) names a meager index out of range", sharp.label(s)));
        }
        if !hs.contains(m0) {
            return bad(format!("h({}) misses the meager zero", sharp.label(s)));
        }
        for x in hs {
            if !meager.order().down(x).is_subset(hs) {
                return bad(format!("h({}) is not downward closed", sharp.label(s)));
            }
        }
        for t in sharp.up(s) {
            if !hs.is_subset(h[t]) {
                return bad(format!(
                    "not monotone: {} ≤ {} but h({}) ⊄ h({})",
                    sharp.label(s),
                    sharp.label(t),
                    sharp.label(s),
                    sharp.label(t)
                ));
            }
        }
    }
    if h[sharp.zero()] != ElemSet::singleton(m0) {
        return bad("h(0) ≠ {0}".into());
    }
    Ok(())
}

/// Extracts the triple of a TRT-effect algebra.
pub fn extract_triple(d: &DerivedStructure) -> Result<(Triple, TripleEmbedding)> {
    TrtAlgebra::new(d)?.triple()
}

impl TrtAlgebra {
    /// `Sh(E)` with `⊕` restricted, `Mea(E)` with `⊕_Mea`, and
    /// `h(s) = {x ∈ Mea | x ≤ s}`.
    pub fn triple(&self) -> Result<(Triple, TripleEmbedding)> {
        let d = self.derived();
        let (sharp, sharp_embed) = subalgebra(d, self.sharp())?;
        let meager = self.view.meager.gea.clone();
        let meager_embed = self.view.meager.embed.clone();
        let h = sharp_embed
            .iter()
            .map(|&s| {
                meager_embed
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| d.leq(x, s))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let triple = Triple { sharp, meager, h };
        triple
            .check()
            .map_err(|e| Error::Consistency(format!("extracted triple is malformed: {e}")))?;
        Ok((
            triple,
            TripleEmbedding {
                sharp: sharp_embed,
                meager: meager_embed,
            },
        ))
    }
}

pub fn serialize_triple(t: &Triple) -> String {
    let mut out = String::from("triple\n");
    writeln!(out, "sharp {}", t.sharp.len()).unwrap();
    write_labels(&mut out, t.sharp.table());
    writeln!(out, "zero {}", t.sharp.zero()).unwrap();
    writeln!(out, "unit {}", t.sharp.unit()).unwrap();
    out.push_str("table\n");
    write_table(&mut out, t.sharp.table());
    writeln!(out, "meager {}", t.meager.len()).unwrap();
    write_labels(&mut out, t.meager.table());
    writeln!(out, "zero {}", t.meager.zero()).unwrap();
    out.push_str("table\n");
    write_table(&mut out, t.meager.table());
    out.push_str("h\n");
    for (s, hs) in t.h.iter().enumerate() {
        write!(out, "{s}:").unwrap();
        for m in *hs {
            write!(out, " {m}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn section_header(lines: &mut Lines<'_>, keyword: &str, min: usize) -> Result<(usize, usize)> {
    let (line, text) = lines.next_line(&format!("`{keyword} <n>`"))?;
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(Error::parse(line, format!("expected `{keyword} <n>`")));
    }
    let n = parse_count(line, toks.next(), "element count")?;
    if let Some(t) = toks.next() {
        return Err(Error::parse(line, format!("unexpected token {t:?}")));
    }
    if n < min || n > MAX_ELEMENTS {
        return Err(Error::parse(line, format!("element count {n} out of range {min}..={MAX_ELEMENTS}")));
    }
    Ok((line, n))
}

/// Parses a `.triple` document. Axioms and `h` invariants are not checked
/// here; [`Triple::check`] does that.
pub fn parse_triple(text: &str) -> Result<Triple> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.next_line("`triple` header")?;
    if head != "triple" {
        return Err(Error::parse(line, "expected header `triple`"));
    }
    let (_, k) = section_header(&mut lines, "sharp", 2)?;
    let (header, table, table_line) = parse_block(&mut lines, k, true)?;
    let zero = header.zero.ok_or_else(|| Error::parse(table_line, "missing sharp `zero` line"))?;
    let unit = header.unit.ok_or_else(|| Error::parse(table_line, "missing sharp `unit` line"))?;
    let sharp = EffectAlgebra::new(table, zero, unit).map_err(|e| Error::parse(table_line, e.to_string()))?;

    let (_, m) = section_header(&mut lines, "meager", 1)?;
    let (header, table, table_line) = parse_block(&mut lines, m, false)?;
    let zero = header.zero.ok_or_else(|| Error::parse(table_line, "missing meager `zero` line"))?;
    let meager = GeneralizedEffectAlgebra::new(table, zero).map_err(|e| Error::parse(table_line, e.to_string()))?;

    let (line, text) = lines.next_line("`h`")?;
    if text != "h" {
        return Err(Error::parse(line, "expected `h`"));
    }
    let mut h = vec![None; k];
    for _ in 0..k {
        let (line, text) = lines.next_line("an `h` row")?;
        let (idx, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `<sharp index>: <meager index>*`"))?;
        let s = parse_index(line, Some(idx.trim()), k, "sharp index")?;
        if h[s].is_some() {
            return Err(Error::parse(line, format!("duplicate h row for sharp index {s}")));
        }
        let mut set = ElemSet::EMPTY;
        for tok in rest.split_whitespace() {
            set.insert(parse_index(line, Some(tok), m, "meager index")?);
        }
        h[s] = Some(set);
    }
    lines.finish()?;
    Ok(Triple {
        sharp,
        meager,
        h: h.into_iter().map(|s| s.expect("k distinct rows")).collect(),
    })
}

/// Read-only view of a [`Triple`] with its derived orders. Every map here
/// is computed from the triple's tables and `h`; there is no way to reach
/// the algebra the triple came from.
#[derive(Clone, Debug)]
pub struct TripleView {
    triple: Triple,
    sharp: DerivedStructure,
    meager: GeaStructure,
    hat: Vec<Option<Elem>>,
    r: Vec<std::result::Result<Elem, String>>,
}

impl TripleView {
    pub fn new(t: &Triple) -> Result<Self> {
        let report = validate_ea(&t.sharp);
        if let Some(v) = report.violations.first() {
            return Err(Error::Invalid(format!(
                "sharp algebra fails ({}) at [{}]",
                v.axiom,
                t.sharp.labels_of(v.witness.iter().copied()).join(", ")
            )));
        }
        let report = validate_gea(&t.meager);
        if let Some(v) = report.violations.first() {
            let ls: Vec<&str> = v.witness.iter().map(|&i| t.meager.label(i)).collect();
            return Err(Error::Invalid(format!("meager algebra fails ({}) at [{}]", v.axiom, ls.join(", "))));
        }
        let sharp = derive(&t.sharp)?;
        let meager = derive_gea(&t.meager)?;
        check_h(&sharp, &meager, &t.h)?;
        let hat = meager
            .algebra()
            .elements()
            .map(|x| {
                let covers: ElemSet = sharp.elements().filter(|&s| t.h[s].contains(x)).collect();
                sharp.order().min_of(covers)
            })
            .collect();
        let mut view = TripleView {
            triple: t.clone(),
            sharp,
            meager,
            hat,
            r: Vec::new(),
        };
        view.r = view.meager.algebra().elements().map(|x| view.find_r(x)).collect();
        Ok(view)
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn sharp(&self) -> &DerivedStructure {
        &self.sharp
    }

    pub fn meager(&self) -> &GeaStructure {
        &self.meager
    }

    pub fn h(&self, s: Elem) -> ElemSet {
        self.triple.h[s]
    }

    fn mlabel(&self, x: Elem) -> &str {
        self.meager.algebra().label(x)
    }

    /// Least sharp `s` (in the order of `⊕_Sh`) with `x ∈ h(s)`.
    pub fn hat_from_triple(&self, x: Elem) -> Result<Elem> {
        self.hat[x].ok_or_else(|| {
            Error::Invalid(format!("no least sharp s with {} ∈ h(s)", self.mlabel(x)))
        })
    }

    /// Largest element of `h(s) ∩ ↓x` in the meager order.
    pub fn pi_from_triple(&self, s: Elem, x: Elem) -> Option<Elem> {
        self.meager
            .order()
            .max_of(self.h(s).intersection(self.meager.order().down(x)))
    }

    /// The unique meager `y` meeting conditions (i)–(iii) for `x`.
    pub fn r_from_triple(&self, x: Elem) -> Result<Elem> {
        self.r[x].clone().map_err(Error::Invalid)
    }

    fn y_ok(&self, x: Elem, hx: Elem, y: Elem) -> bool {
        let m = &self.meager;
        if self.hat[y] != Some(hx) {
            return false;
        }
        let hx_set = self.h(hx);
        let ii = m.meet(x, y).is_some_and(|w| {
            let t = m.ominus(y, w).expect("x ∧ y ≤ y");
            m.sum(x, t).is_some_and(|u| hx_set.contains(u))
        });
        ii && hx_set.iter().all(|z| {
            let lhs = m.sum(z, x).is_some_and(|w| hx_set.contains(w));
            let rhs = m.leq(z, y) && m.ominus(y, z).is_some_and(|diff| self.hat[diff] == Some(hx));
            lhs == rhs
        })
    }

    fn find_r(&self, x: Elem) -> std::result::Result<Elem, String> {
        let hx = self.hat[x].ok_or_else(|| format!("x̂ undefined for {}", self.mlabel(x)))?;
        let found: Vec<Elem> = self
            .meager
            .algebra()
            .elements()
            .filter(|&y| self.y_ok(x, hx, y))
            .collect();
        match found.as_slice() {
            [y] => Ok(*y),
            [] => Err(format!("no meager y meets (i)–(iii) for {}", self.mlabel(x))),
            ys => Err(format!(
                "several meager y meet (i)–(iii) for {}: {}",
                self.mlabel(x),
                ys.iter().map(|&y| self.mlabel(y)).collect::<Vec<_>>().join(", ")
            )),
        }
    }

    /// `𝒮(x, y) = {z ∈ Sh | π_z(x), π_z(y) defined, z = π_z(x)^, R(π_z(x)) = π_z(y)}`
    pub fn s_set(&self, x: Elem, y: Elem) -> ElemSet {
        self.sharp
            .elements()
            .filter(|&z| match (self.pi_from_triple(z, x), self.pi_from_triple(z, y)) {
                (Some(p), Some(q)) => self.hat[p] == Some(z) && self.r[p] == Ok(q),
                _ => false,
            })
            .collect()
    }

    /// Top element of `𝒮(x, y)` if it belongs to the set.
    pub fn s_map(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.sharp.order().max_of(self.s_set(x, y))
    }

    /// `S(x, y)` and `(x ⊖ π_S(x)) ⊕_Mea (y ⊖ π_S(y))`, either of which may
    /// be undefined.
    pub fn s_and_residual(&self, x: Elem, y: Elem) -> Option<(Elem, Option<Elem>)> {
        let s = self.s_map(x, y)?;
        let px = self.pi_from_triple(s, x).expect("S ∈ 𝒮(x, y)");
        let py = self.pi_from_triple(s, y).expect("S ∈ 𝒮(x, y)");
        let rx = self.meager.ominus(x, px).expect("π_S(x) ≤ x");
        let ry = self.meager.ominus(y, py).expect("π_S(y) ≤ y");
        Some((s, self.meager.sum(rx, ry)))
    }

    /// `x ⊕ y` for meager `x, y`, decided from the triple: the pair
    /// `(S(x, y), residual)` when `S` is defined, the residual sum exists
    /// and lies in `h(S′)`.
    pub fn oplus_via_triple(&self, x: Elem, y: Elem) -> Option<(Elem, Elem)> {
        let (s, residual) = self.s_and_residual(x, y)?;
        let residual = residual?;
        self.h(self.sharp.complement(s))
            .contains(residual)
            .then_some((s, residual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};

    fn triple_of(spec: &str) -> (DerivedStructure, Triple, TripleEmbedding) {
        let d = derive(&generate(&spec.parse::<GeneratorSpec>().unwrap()).unwrap()).unwrap();
        let (t, emb) = extract_triple(&d).unwrap();
        (d, t, emb)
    }

    fn m(t: &Triple, l: &str) -> Elem {
        t.meager.table().index_of(l).unwrap()
    }

    #[test]
    fn chain3_triple_text() {
        let (_, t, _) = triple_of("chain 3");
        let expected = "triple\nsharp 2\nlabels 0 1\nzero 0\nunit 1\ntable\n0 1\n1 .\n\
                        meager 3\nlabels 0 a 2a\nzero 0\ntable\n0 1 2\n1 2 .\n2 . .\nh\n0: 0\n1: 0 1 2\n";
        assert_eq!(serialize_triple(&t), expected);
        assert_eq!(parse_triple(expected).unwrap(), t);
    }

    #[test]
    fn chain3_maps_from_triple() {
        let (_, t, _) = triple_of("chain 3");
        let v = TripleView::new(&t).unwrap();
        let (a, a2) = (m(&t, "a"), m(&t, "2a"));
        assert_eq!(v.hat_from_triple(a).unwrap(), t.sharp.unit());
        assert_eq!(v.r_from_triple(a).unwrap(), a2);
        assert_eq!(v.r_from_triple(a2).unwrap(), a);
        assert_eq!(v.oplus_via_triple(a, a), Some((t.sharp.zero(), a2)));
        assert_eq!(v.oplus_via_triple(a, a2), Some((t.sharp.unit(), t.meager.zero())));
    }

    #[test]
    fn chain2_sum_goes_to_sharp_part() {
        let (_, t, _) = triple_of("chain 2");
        let v = TripleView::new(&t).unwrap();
        let a = m(&t, "a");
        assert_eq!(v.oplus_via_triple(a, a), Some((t.sharp.unit(), t.meager.zero())));
    }

    #[test]
    fn diamond_triple() {
        let (_, t, _) = triple_of("diamond");
        assert_eq!(t.sharp.len(), 2);
        assert_eq!(t.meager.len(), 3);
        assert_eq!(t.h[t.sharp.unit()].len(), 3);
        let v = TripleView::new(&t).unwrap();
        let (a, b) = (m(&t, "a"), m(&t, "b"));
        assert_eq!(v.r_from_triple(a).unwrap(), a);
        assert_eq!(v.s_map(a, b), Some(t.sharp.zero()));
        assert_eq!(v.oplus_via_triple(a, b), None);
    }

    #[test]
    fn boolean_triple_has_trivial_meager_part() {
        let (_, t, _) = triple_of("boolean 2");
        assert_eq!(t.sharp.len(), 4);
        assert_eq!(t.meager.len(), 1);
        assert!(t.h.iter().all(|hs| hs.len() == 1));
    }

    #[test]
    fn broken_h_is_rejected() {
        let (_, mut t, _) = triple_of("chain 3");
        t.h[0] = ElemSet::full(3);
        assert!(matches!(t.check(), Err(Error::Invalid(_))));
        let (_, mut t, _) = triple_of("chain 3");
        t.h[1] = ElemSet::from_bits(0b101);
        assert!(t.check().is_err(), "2a without a is not downward closed");
    }

    #[test]
    fn parse_errors_name_lines() {
        let (_, t, _) = triple_of("chain 3");
        let text = serialize_triple(&t);
        let bad = text.replace("1: 0 1 2", "1: 0 1 7");
        match parse_triple(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 18),
            other => panic!("{other:?}"),
        }
        let bad = text.replace("0: 0\n", "");
        assert!(matches!(parse_triple(&bad), Err(Error::Parse { .. })));
    }
}
