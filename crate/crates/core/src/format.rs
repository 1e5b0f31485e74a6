//! Line-oriented text formats.
//!
//! An `.ea` document looks like
//!
//! ```text
//! # the three-element chain
//! ea 3
//! labels 0 a 1
//! zero 0
//! unit 2
//! table
//! 0 1 2
//! 1 2 .
//! 2 . .
//! ```
//!
//! Row `i`, column `j` holds the index of `i ⊕ j`, or `.` when undefined.
//! Lines starting with `#` and blank lines are ignored. `labels` is
//! optional on input (defaults `e0 .. e{n-1}`) and always written on
//! output. The `.triple` format reuses the same header and table syntax;
//! see [`crate::trt::Triple`].

use std::fmt::Write as _;

use crate::algebra::{default_labels, EffectAlgebra, Elem, PartialTable};
use crate::error::{Error, Result};

/// Significant lines of a document, with 1-based line numbers.
pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines {
            inner: it.peekable(),
            last_line: text.lines().count(),
        }
    }

    pub(crate) fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .ok_or_else(|| Error::parse(self.last_line, format!("unexpected end of input, expected {what}")))
    }

    pub(crate) fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, l)) => Err(Error::parse(line, format!("unexpected trailing content {l:?}"))),
        }
    }
}

pub(crate) fn parse_count(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("{what} must be a non-negative integer, got {tok:?}")))
}

pub(crate) fn parse_index(line: usize, tok: Option<&str>, n: usize, what: &str) -> Result<Elem> {
    let v = parse_count(line, tok, what)?;
    if v >= n {
        return Err(Error::parse(line, format!("{what} {v} out of range 0..{n}")));
    }
    Ok(v)
}

fn expect_end(line: usize, mut toks: std::str::SplitWhitespace<'_>) -> Result<()> {
    match toks.next() {
        None => Ok(()),
        Some(t) => Err(Error::parse(line, format!("unexpected token {t:?}"))),
    }
}

/// Header fields shared by the `.ea` document and the blocks of a
/// `.triple` document.
#[derive(Default)]
pub(crate) struct BlockHeader {
    pub labels: Option<Vec<String>>,
    pub zero: Option<Elem>,
    pub unit: Option<Elem>,
}

/// Reads `labels`/`zero`/`unit` lines (any order) up to and including the
/// `table` line, then the `n` table rows. Returns the header and the table.
pub(crate) fn parse_block(
    lines: &mut Lines<'_>,
    n: usize,
    allow_unit: bool,
) -> Result<(BlockHeader, PartialTable, usize)> {
    let mut header = BlockHeader::default();
    let table_line = loop {
        let (line, text) = lines.next_line("`table`")?;
        let mut toks = text.split_whitespace();
        match toks.next() {
            Some("labels") => {
                if header.labels.is_some() {
                    return Err(Error::parse(line, "duplicate `labels` line"));
                }
                let ls: Vec<String> = toks.map(str::to_string).collect();
                if ls.len() != n {
                    return Err(Error::parse(line, format!("expected {n} labels, got {}", ls.len())));
                }
                for (i, l) in ls.iter().enumerate() {
                    if ls[..i].contains(l) {
                        return Err(Error::parse(line, format!("duplicate label {l:?}")));
                    }
                }
                header.labels = Some(ls);
            }
            Some("zero") => {
                if header.zero.is_some() {
                    return Err(Error::parse(line, "duplicate `zero` line"));
                }
                header.zero = Some(parse_index(line, toks.next(), n, "zero")?);
                expect_end(line, toks)?;
            }
            Some("unit") if allow_unit => {
                if header.unit.is_some() {
                    return Err(Error::parse(line, "duplicate `unit` line"));
                }
                header.unit = Some(parse_index(line, toks.next(), n, "unit")?);
                expect_end(line, toks)?;
            }
            Some("table") => {
                expect_end(line, toks)?;
                break line;
            }
            Some(other) => return Err(Error::parse(line, format!("unexpected keyword {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
    };
    let labels = header.labels.clone().unwrap_or_else(|| default_labels(n));
    let mut table = PartialTable::empty(labels).map_err(|e| Error::parse(table_line, e.to_string()))?;
    let mut row_lines = Vec::with_capacity(n);
    for i in 0..n {
        let (line, text) = lines.next_line(&format!("table row {i}"))?;
        row_lines.push(line);
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != n {
            return Err(Error::parse(line, format!("table row {i} has {} entries, expected {n}", toks.len())));
        }
        for (j, tok) in toks.into_iter().enumerate() {
            let v = if tok == "." {
                None
            } else {
                Some(parse_index(line, Some(tok), n, "table entry")?)
            };
            table.set(i, j, v);
        }
    }
    if let Some((i, j)) = table.first_asymmetry() {
        return Err(Error::parse(row_lines[i], format!("asymmetric at ({i},{j})")));
    }
    Ok((header, table, table_line))
}

pub(crate) fn write_table(out: &mut String, table: &PartialTable) {
    let n = table.len();
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            match table.get(i, j) {
                Some(v) => write!(out, "{v}").unwrap(),
                None => out.push('.'),
            }
        }
        out.push('\n');
    }
}

pub(crate) fn write_labels(out: &mut String, table: &PartialTable) {
    out.push_str("labels");
    for l in table.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
}

/// Parses an `.ea` document. The axioms are not checked.
pub fn parse_ea(text: &str) -> Result<EffectAlgebra> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.next_line("`ea <n>` header")?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some("ea") {
        return Err(Error::parse(line, "expected header `ea <n>`"));
    }
    let n = parse_count(line, toks.next(), "element count")?;
    expect_end(line, toks)?;
    if n < 2 {
        return Err(Error::parse(line, "an effect algebra needs at least 2 elements"));
    }
    if n > crate::elemset::MAX_ELEMENTS {
        return Err(Error::parse(line, format!("element count {n} exceeds {}", crate::elemset::MAX_ELEMENTS)));
    }
    let (header, table, table_line) = parse_block(&mut lines, n, true)?;
    let zero = header.zero.ok_or_else(|| Error::parse(table_line, "missing `zero` line"))?;
    let unit = header.unit.ok_or_else(|| Error::parse(table_line, "missing `unit` line"))?;
    lines.finish()?;
    EffectAlgebra::new(table, zero, unit).map_err(|e| Error::parse(table_line, e.to_string()))
}

/// Writes the canonical `.ea` text of `e`.
pub fn serialize_ea(e: &EffectAlgebra) -> String {
    let mut out = String::new();
    writeln!(out, "ea {}", e.len()).unwrap();
    write_labels(&mut out, e.table());
    writeln!(out, "zero {}", e.zero()).unwrap();
    writeln!(out, "unit {}", e.unit()).unwrap();
    out.push_str("table\n");
    write_table(&mut out, e.table());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = "ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\n";

    #[test]
    fn parses_three_element_chain() {
        let e = parse_ea(C2).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.sum(1, 1), Some(2));
        assert_eq!(e.sum(1, 2), None);
        assert_eq!(e.labels(), &["e0", "e1", "e2"]);
    }

    #[test]
    fn serialization_is_exact() {
        let e = parse_ea(C2).unwrap();
        assert_eq!(
            serialize_ea(&e),
            "ea 3\nlabels e0 e1 e2\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\n"
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# chain\n\nea 3\n  # labels follow\nlabels 0 a 1\nunit 2\nzero 0\ntable\n0 1 2\n1 2 .\n2 . .\n\n";
        let e = parse_ea(text).unwrap();
        assert_eq!(e.label(1), "a");
        assert_eq!(parse_ea(&serialize_ea(&e)).unwrap(), e);
    }

    #[test]
    fn asymmetric_table_is_rejected_with_position() {
        let text = "ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 0\n2 . .\n";
        let err = parse_ea(text).unwrap_err();
        assert_eq!(err, Error::Parse { line: 6, message: "asymmetric at (1,2)".into() });
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("eb 3\n", 1),
            ("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 7\n2 . .\n", 6),
            ("ea 3\nlabels x x y\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\n", 2),
            ("ea 3\nzero 0\ntable\n0 1 2\n1 2 .\n2 . .\n", 3),
            ("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2\n2 . .\n", 6),
            ("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n", 6),
            ("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\nextra\n", 8),
            ("ea 3\nzero 0\nunit 0\ntable\n0 1 2\n1 2 .\n2 . .\n", 4),
        ];
        for (text, line) in cases {
            match parse_ea(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }
}
