//! All decided properties of one algebra, with a counterexample for each
//! one that fails.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::algebra::Elem;
use crate::error::Result;
use crate::order::DerivedStructure;
use crate::structure::compat::{comp, compatible, has_maximality_property, orthocompleteness_counterexample};
use crate::structure::elements::{atoms, ord_of, SharpMeager};
use crate::structure::riesz::riesz_counterexample;
use crate::trt::trt_check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub n: usize,
    pub flags: BTreeMap<&'static str, bool>,
    /// Labels of a counterexample, for each false flag.
    pub witnesses: BTreeMap<&'static str, Vec<String>>,
}

impl PropertyReport {
    pub fn flag(&self, name: &str) -> bool {
        self.flags[name]
    }

    /// The JSON document: `{algebra, certificate?, flags, n, witnesses}`,
    /// keys sorted.
    pub fn to_json(&self, algebra: &str, certificate: Option<&[String]>) -> String {
        let mut doc = json!({
            "algebra": algebra,
            "flags": self.flags,
            "n": self.n,
            "witnesses": self.witnesses,
        });
        if let Some(c) = certificate {
            doc["certificate"] = Value::from(c.to_vec());
        }
        serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in &self.flags {
            write!(f, "{name}: {value}")?;
            if let Some(w) = self.witnesses.get(name) {
                write!(f, "  [{}]", w.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn pair_without_bounds(d: &DerivedStructure) -> Option<(Elem, Elem)> {
    d.elements()
        .flat_map(|x| (x..d.len()).map(move |y| (x, y)))
        .find(|&(x, y)| d.meet(x, y).is_none() || d.join(x, y).is_none())
}

pub fn property_report(d: &DerivedStructure) -> Result<PropertyReport> {
    let mut flags = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    let mut record = |name: &'static str, witness: Option<Vec<Elem>>| {
        flags.insert(name, witness.is_none());
        if let Some(w) = witness {
            witnesses.insert(name, d.labels_of(w));
        }
    };

    for x in d.elements().filter(|&x| x != d.zero()) {
        ord_of(d, x)?;
    }
    record("archimedean", None);

    let at = atoms(d);
    record(
        "atomic",
        d.elements()
            .find(|&x| x != d.zero() && d.down(x).intersection(at).is_empty())
            .map(|x| vec![x]),
    );
    record(
        "orthoalgebra",
        d.elements()
            .find(|&x| x != d.zero() && d.sum(x, x).is_some())
            .map(|x| vec![x]),
    );
    let lattice = pair_without_bounds(d).map(|(x, y)| vec![x, y]);
    let rdp = riesz_counterexample(d, false).map(|(u, v1, v2)| vec![u, v1, v2]);
    record("mv", lattice.clone().or_else(|| rdp.clone()));
    record("lattice", lattice);
    record("rdp", rdp);
    record(
        "homogeneous",
        riesz_counterexample(d, true).map(|(u, v1, v2)| vec![u, v1, v2]),
    );
    let whole = if compatible(d, d.carrier(), false) {
        None
    } else {
        let pair = d
            .elements()
            .flat_map(|x| (x + 1..d.len()).map(move |y| (x, y)))
            .find(|&(x, y)| !comp(d, x, y));
        Some(pair.map_or_else(|| d.carrier().to_vec(), |(x, y)| vec![x, y]))
    };
    record("compatibleWhole", whole);
    let sm = SharpMeager::new(d);
    record(
        "sharplyDominating",
        d.elements().find(|&x| sm.hat[x].is_none()).map(|x| vec![x]),
    );
    record("orthocomplete", orthocompleteness_counterexample(d));
    record(
        "maximalityProperty",
        has_maximality_property(d).failure.map(|(u, v)| vec![u, v]),
    );
    let trt = trt_check(d)?;
    record(
        "trt",
        trt.first_failure().map(|(_, c)| c.witness.clone()),
    );
    Ok(PropertyReport {
        n: d.len(),
        flags,
        witnesses,
    })
}
