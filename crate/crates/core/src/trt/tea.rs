//! `Tea(E)` built from a triple, and the certificate that
//! `φ(x) = (x̃, x ⊖ x̃)` is an isomorphism `E → Tea(E)`.

use std::collections::HashMap;

use crate::algebra::{EffectAlgebra, Elem, PartialTable};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::order::DerivedStructure;
use crate::trt::eside::TrtAlgebra;
use crate::trt::triple::{Triple, TripleEmbedding, TripleView};
use crate::validate::validate_ea;

#[derive(Clone, Debug)]
pub struct TeaAlgebra {
    pub algebra: EffectAlgebra,
    /// element index → (sharp index, meager index)
    pub pairs: Vec<(Elem, Elem)>,
    pair_index: HashMap<(Elem, Elem), Elem>,
}

impl TeaAlgebra {
    pub fn index_of(&self, pair: (Elem, Elem)) -> Option<Elem> {
        self.pair_index.get(&pair).copied()
    }
}

/// The sum of two pairs when conditions (i)–(iv) hold.
fn pair_sum(view: &TripleView, x: (Elem, Elem), y: (Elem, Elem)) -> Option<(Elem, Elem)> {
    let sh = view.sharp();
    let (s, residual) = view.s_and_residual(x.1, y.1)?;
    let zs = sh.sum(sh.sum(x.0, y.0)?, s)?;
    let zm = residual?;
    view.h(sh.complement(zs)).contains(zm).then_some((zs, zm))
}

pub(crate) fn build_tea(view: &TripleView) -> Result<TeaAlgebra> {
    let t = view.triple();
    let sh = view.sharp();
    let pairs: Vec<(Elem, Elem)> = sh
        .elements()
        .flat_map(|s| view.h(sh.complement(s)).iter().map(move |m| (s, m)))
        .collect();
    let pair_index: HashMap<_, _> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let labels = pairs.iter().map(|&(s, m)| t.pair_label(s, m)).collect();
    let mut table = PartialTable::empty(labels)?;
    for (i, &x) in pairs.iter().enumerate() {
        for (j, &y) in pairs.iter().enumerate() {
            if let Some(z) = pair_sum(view, x, y) {
                let k = *pair_index.get(&z).ok_or_else(|| {
                    Error::Invalid(format!(
                        "{} ⊕ {} = {} leaves the carrier",
                        t.pair_label(x.0, x.1),
                        t.pair_label(y.0, y.1),
                        t.pair_label(z.0, z.1)
                    ))
                })?;
                table.set(i, j, Some(k));
            }
        }
    }
    let zero = pair_index[&(sh.zero(), view.meager().zero())];
    let unit = *pair_index
        .get(&(sh.unit(), view.meager().zero()))
        .ok_or_else(|| Error::Invalid("(1,0) is not in the carrier".into()))?;
    let algebra = EffectAlgebra::new(table, zero, unit)?;
    let report = validate_ea(&algebra);
    if let Some(v) = report.violations.first() {
        return Err(Error::Invalid(format!(
            "Tea fails ({}) at [{}]",
            v.axiom,
            algebra.labels_of(v.witness.iter().copied()).join(", ")
        )));
    }
    Ok(TeaAlgebra {
        algebra,
        pairs,
        pair_index,
    })
}

/// Builds `Tea` on `{(z_S, z_M) | z_M ∈ h(z_S′)}` from the triple alone.
/// Fails if the triple is malformed or the resulting table is not an
/// effect algebra.
pub fn reconstruct_tea(t: &Triple) -> Result<TeaAlgebra> {
    build_tea(&TripleView::new(t)?)
}

/// First disagreement between the triple-side maps and the maps computed
/// in `E`, including both formulations of `𝒮` and the `⊕` decision of
/// [`TripleView::oplus_via_triple`].
pub fn map_discrepancy(trt: &TrtAlgebra, view: &TripleView, emb: &TripleEmbedding) -> Result<Option<String>> {
    let d = trt.derived();
    let mcount = emb.meager.len();
    let to_e_sharp = |s: Elem| emb.sharp[s];
    let to_e_meager = |m: Elem| emb.meager[m];
    for i in 0..mcount {
        let x = to_e_meager(i);
        let l = d.label(x);
        if to_e_sharp(view.hat_from_triple(i)?) != trt.hat(x) {
            return Ok(Some(format!("x̂ differs at {l}")));
        }
        let r = match view.r_from_triple(i) {
            Ok(r) => r,
            Err(e) => return Ok(Some(format!("R at {l}: {e}"))),
        };
        if to_e_meager(r) != trt.r(x) {
            return Ok(Some(format!("R differs at {l}")));
        }
        for (s, &se) in emb.sharp.iter().enumerate() {
            if view.pi_from_triple(s, i).map(to_e_meager) != trt.pi(se, x) {
                return Ok(Some(format!("π_{}({l}) differs", d.label(se))));
            }
        }
    }
    for i in 0..mcount {
        for j in 0..mcount {
            let (x, y) = (to_e_meager(i), to_e_meager(j));
            let pair = format!("({}, {})", d.label(x), d.label(y));
            let t_set: ElemSet = view.s_set(i, j).iter().map(to_e_sharp).collect();
            if t_set != trt.s_set(x, y)? {
                return Ok(Some(format!("𝒮{pair} differs between the triple and E")));
            }
            let e_sum = d.sum(x, y);
            match (view.oplus_via_triple(i, j), e_sum) {
                (None, None) => {}
                (Some((s, m)), Some(z)) => {
                    if d.sum(to_e_sharp(s), to_e_meager(m)) != Some(z) {
                        return Ok(Some(format!("S ⊕ residual ≠ x ⊕ y at {pair}")));
                    }
                }
                (Some(_), None) => return Ok(Some(format!("triple defines ⊕ at {pair}, E does not"))),
                (None, Some(_)) => return Ok(Some(format!("E defines ⊕ at {pair}, the triple does not"))),
            }
            if let Some(z) = e_sum {
                if trt.sharp().contains(z) && trt.hat(x) != z {
                    return Ok(Some(format!("x ⊕ y sharp but x̂ ≠ x ⊕ y at {pair}")));
                }
            }
        }
    }
    Ok(None)
}

/// Result of [`verify_triple_theorem`].
#[derive(Clone, Debug)]
pub struct Verification {
    pub triple: Triple,
    pub embedding: TripleEmbedding,
    pub tea: TeaAlgebra,
    /// `φ`: element of `E` → element of `Tea`
    pub phi: Vec<Elem>,
    /// First failed assertion about the maps or `φ`, if any.
    pub failure: Option<String>,
    /// Isomorphism `E → Tea` found by the independent search.
    pub independent: Option<Vec<Elem>>,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.failure.is_none() && self.independent.is_some()
    }

    /// `φ` certified but the search found nothing, or the reverse.
    pub fn disagreement(&self) -> bool {
        self.failure.is_none() != self.independent.is_some()
    }

    /// `x -> (s,m)` per element.
    pub fn certificate(&self, d: &DerivedStructure) -> Vec<String> {
        d.elements()
            .map(|x| format!("{} -> {}", d.label(x), self.tea.algebra.label(self.phi[x])))
            .collect()
    }
}

fn check_phi(d: &DerivedStructure, tea: &EffectAlgebra, phi: &[Elem]) -> Option<String> {
    let mut seen = ElemSet::EMPTY;
    for &p in phi {
        if seen.contains(p) {
            return Some(format!("φ is not injective at {}", tea.label(p)));
        }
        seen.insert(p);
    }
    if phi.len() != tea.len() {
        return Some(format!("|E| = {} but |Tea| = {}", phi.len(), tea.len()));
    }
    if phi[d.zero()] != tea.zero() || phi[d.unit()] != tea.unit() {
        return Some("φ does not fix 0 and 1".into());
    }
    for x in d.elements() {
        for y in d.elements() {
            let lhs = d.sum(x, y).map(|z| phi[z]);
            let rhs = tea.sum(phi[x], phi[y]);
            if lhs != rhs {
                return Some(format!(
                    "φ fails at ({}, {}): {} vs {}",
                    d.label(x),
                    d.label(y),
                    lhs.map_or("undefined", |z| tea.label(z)),
                    rhs.map_or("undefined", |z| tea.label(z))
                ));
            }
        }
    }
    None
}

/// Extracts the triple of `d`, rebuilds `Tea` from it, and checks that
/// `φ(x) = (x̃, x ⊖ x̃)` is an isomorphism; independently searches for any
/// isomorphism `E → Tea`. Refuses algebras that are not TRT.
pub fn verify_triple_theorem(d: &DerivedStructure) -> Result<Verification> {
    let trt = TrtAlgebra::new(d)?;
    let (triple, embedding) = trt.triple()?;
    let view = TripleView::new(&triple)?;
    let tea = build_tea(&view)?;
    let mut failure = map_discrepancy(&trt, &view, &embedding)?;
    let mut phi = Vec::with_capacity(d.len());
    for x in d.elements() {
        let s = trt.tilde(x);
        let m = d.ominus(x, s).expect("x̃ ≤ x");
        let pair = (embedding.sharp_index(s), embedding.meager_index(m));
        match pair {
            (Some(si), Some(mi)) => match tea.index_of((si, mi)) {
                Some(p) => phi.push(p),
                None => {
                    failure.get_or_insert_with(|| format!("φ({}) is not in Tea", d.label(x)));
                    phi.push(tea.algebra.zero());
                }
            },
            _ => {
                return Err(Error::Consistency(format!(
                    "decomposition of {} leaves Sh × Mea",
                    d.label(x)
                )))
            }
        }
    }
    if failure.is_none() {
        failure = check_phi(d, &tea.algebra, &phi);
    }
    let independent = crate::iso::find_isomorphism(d.algebra(), &tea.algebra)?;
    Ok(Verification {
        triple,
        embedding,
        tea,
        phi,
        failure,
        independent,
    })
}
