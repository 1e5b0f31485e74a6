//! Element-level notions: order of an element, atoms, sharp, principal,
//! central and meager elements, sharp covers and the sharp/meager
//! decomposition.

use crate::algebra::{Elem, GeneralizedEffectAlgebra};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::order::DerivedStructure;
use crate::validate::validate_gea;

/// Largest `k` with `k·x` defined. Rejects `x = 0`, whose multiples are
/// all defined.
pub fn ord_of(d: &DerivedStructure, x: Elem) -> Result<usize> {
    if x == d.zero() {
        return Err(Error::Precondition("ord(0) is unbounded".into()));
    }
    let mut acc = x;
    let mut k = 1;
    while let Some(next) = d.sum(acc, x) {
        acc = next;
        k += 1;
        // partial sums strictly increase, so k·x is undefined for k ≥ n
        if k >= d.len() {
            return Err(Error::Consistency(format!(
                "{}·{} defined in a carrier of {} elements",
                k,
                d.label(x),
                d.len()
            )));
        }
    }
    Ok(k)
}

/// Minimal nonzero elements.
pub fn atoms(d: &DerivedStructure) -> ElemSet {
    let mut nonzero = d.carrier();
    nonzero.remove(d.zero());
    d.order().minimal(nonzero)
}

/// Every nonzero element lies above some atom.
pub fn is_atomic(d: &DerivedStructure) -> bool {
    let at = atoms(d);
    d.elements()
        .filter(|&x| x != d.zero())
        .all(|x| !d.down(x).intersection(at).is_empty())
}

/// `{x | the only common lower bound of x and x′ is 0}`.
pub fn sharp_set(d: &DerivedStructure) -> ElemSet {
    let zero = ElemSet::singleton(d.zero());
    d.elements()
        .filter(|&x| {
            let by_bounds = d.lower_bounds(x, d.complement(x)) == zero;
            debug_assert_eq!(by_bounds, d.meet(x, d.complement(x)) == Some(d.zero()));
            by_bounds
        })
        .collect()
}

/// Same set via the existence of `x ∧ x′ = 0`.
pub fn sharp_set_by_meet(d: &DerivedStructure) -> ElemSet {
    d.elements()
        .filter(|&x| d.meet(x, d.complement(x)) == Some(d.zero()))
        .collect()
}

/// `y ⊕ z ≤ x` whenever `y, z ≤ x` and `y ⊕ z` is defined.
pub fn is_principal(d: &DerivedStructure, x: Elem) -> bool {
    let below = d.down(x);
    below.iter().all(|y| {
        below
            .iter()
            .all(|z| d.sum(y, z).is_none_or(|s| d.leq(s, x)))
    })
}

/// `x` and `x′` are principal and every `y` splits as `y₁ ⊕ y₂` with
/// `y₁ ≤ x`, `y₂ ≤ x′`.
pub fn is_central(d: &DerivedStructure, x: Elem) -> bool {
    let xc = d.complement(x);
    if !is_principal(d, x) || !is_principal(d, xc) {
        return false;
    }
    d.elements().all(|y| {
        d.down(x)
            .iter()
            .any(|y1| d.down(xc).iter().any(|y2| d.sum(y1, y2) == Some(y)))
    })
}

/// The set of central elements, without the follow-up checks of
/// [`center`].
pub fn central_elements(d: &DerivedStructure) -> ElemSet {
    d.elements().filter(|&x| is_central(d, x)).collect()
}

/// The center, after checking that it is a Boolean sub-effect algebra and
/// that every `y` equals `(y ∧ x) ⊕ (y ∧ x′)` for central `x`.
pub fn center(d: &DerivedStructure) -> Result<ElemSet> {
    let c = central_elements(d);
    crate::checks::check_center(d, c).map_err(|v| Error::Consistency(v.describe(d)))?;
    Ok(c)
}

/// Sharp and meager sets with the sharp covers of every element.
#[derive(Clone, Debug)]
pub struct SharpMeager {
    pub sharp: ElemSet,
    pub meager: ElemSet,
    /// `x̃`: greatest sharp element below `x`, if any.
    pub tilde: Vec<Option<Elem>>,
    /// `x̂`: least sharp element above `x`, if any.
    pub hat: Vec<Option<Elem>>,
}

impl SharpMeager {
    pub fn new(d: &DerivedStructure) -> Self {
        let sharp = sharp_set(d);
        let zero = ElemSet::singleton(d.zero());
        let meager = d
            .elements()
            .filter(|&x| d.down(x).intersection(sharp) == zero)
            .collect();
        let tilde = d
            .elements()
            .map(|x| d.order().max_of(d.down(x).intersection(sharp)))
            .collect();
        let hat = d
            .elements()
            .map(|x| d.order().min_of(d.up(x).intersection(sharp)))
            .collect();
        SharpMeager {
            sharp,
            meager,
            tilde,
            hat,
        }
    }

    pub fn is_sharp(&self, x: Elem) -> bool {
        self.sharp.contains(x)
    }

    pub fn is_meager(&self, x: Elem) -> bool {
        self.meager.contains(x)
    }

    pub fn sharply_dominating(&self) -> bool {
        self.hat.iter().all(Option::is_some)
    }
}

/// `(x̃, x̂)`.
pub fn tilde_hat(d: &DerivedStructure, x: Elem) -> (Option<Elem>, Option<Elem>) {
    let sm = SharpMeager::new(d);
    (sm.tilde[x], sm.hat[x])
}

/// Every element has a least sharp upper bound. Checked also through
/// greatest sharp lower bounds; the two must agree.
pub fn is_sharply_dominating(d: &DerivedStructure) -> Result<bool> {
    let sm = SharpMeager::new(d);
    let by_hat = sm.hat.iter().all(Option::is_some);
    let by_tilde = sm.tilde.iter().all(Option::is_some);
    if by_hat != by_tilde {
        return Err(Error::Consistency(format!(
            "sharp covers exist for all x: above = {by_hat}, below = {by_tilde}"
        )));
    }
    Ok(by_hat)
}

/// `Mea(E)` as a generalized effect algebra, with its embedding into `E`.
#[derive(Clone, Debug)]
pub struct MeagerPart {
    pub gea: GeneralizedEffectAlgebra,
    /// meager index → element of `E`
    pub embed: Vec<Elem>,
    /// element of `E` → meager index
    pub index: Vec<Option<usize>>,
}

/// Builds `(Mea(E), ⊕_Mea)`: `x ⊕_Mea y` is defined iff `x ⊕ y` is
/// defined and meager.
pub fn meager_gea(d: &DerivedStructure) -> Result<MeagerPart> {
    let sm = SharpMeager::new(d);
    meager_part(d, &sm)
}

pub(crate) fn meager_part(d: &DerivedStructure, sm: &SharpMeager) -> Result<MeagerPart> {
    let mea = sm.meager;
    let (table, embed) = d.algebra().table().restrict(mea);
    let mut index = vec![None; d.len()];
    for (i, &x) in embed.iter().enumerate() {
        index[x] = Some(i);
    }
    let zero = index[d.zero()].expect("0 is meager");
    let gea = GeneralizedEffectAlgebra::new(table, zero)?;
    let report = validate_gea(&gea);
    if !report.valid {
        let v = &report.violations[0];
        return Err(Error::Consistency(format!(
            "Mea(E) fails ({}) at [{}]",
            v.axiom,
            v.witness.iter().map(|&i| d.label(embed[i])).collect::<Vec<_>>().join(", ")
        )));
    }
    for x in mea {
        for y in d.down(x) {
            if !mea.contains(y) {
                return Err(Error::Consistency(format!(
                    "Mea(E) not downward closed: {} ≤ {}",
                    d.label(y),
                    d.label(x)
                )));
            }
            let diff = d.ominus(x, y).expect("y ≤ x");
            if !mea.contains(diff) {
                return Err(Error::Consistency(format!(
                    "{} ⊖ {} is not meager",
                    d.label(x),
                    d.label(y)
                )));
            }
        }
    }
    Ok(MeagerPart { gea, embed, index })
}

/// `x = x_S ⊕ x_M` with `x_S` sharp and `x_M` meager.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub sharp: Elem,
    pub meager: Elem,
}

/// `(x̃, x ⊖ x̃)`, after checking that it is the only sharp/meager pair
/// summing to `x`, that `x_S ∧ x_M = 0`, and (in a lattice) that
/// `x = x_S ∨ x_M`.
pub fn decompose(d: &DerivedStructure, x: Elem) -> Result<Decomposition> {
    let sm = SharpMeager::new(d);
    if !sm.sharply_dominating() {
        return Err(Error::Precondition("algebra is not sharply dominating".into()));
    }
    decompose_with(d, &sm, x, d.is_lattice())
}

pub(crate) fn decompose_with(
    d: &DerivedStructure,
    sm: &SharpMeager,
    x: Elem,
    lattice: bool,
) -> Result<Decomposition> {
    let xs = sm.tilde[x].ok_or_else(|| Error::Precondition(format!("{}~ does not exist", d.label(x))))?;
    let xm = d.ominus(x, xs).expect("x~ ≤ x");
    let fail = |what: String| Err(Error::Consistency(format!("decomposition of {}: {what}", d.label(x))));
    if !sm.is_meager(xm) {
        return fail(format!("{} ⊖ {} is not meager", d.label(x), d.label(xs)));
    }
    for s in sm.sharp {
        for m in sm.meager {
            if d.sum(s, m) == Some(x) && (s, m) != (xs, xm) {
                return fail(format!("second split {} ⊕ {}", d.label(s), d.label(m)));
            }
        }
    }
    if d.meet(xs, xm) != Some(d.zero()) {
        return fail("sharp and meager parts have a nonzero common lower bound".into());
    }
    if lattice && d.join(xs, xm) != Some(x) {
        return fail("x is not the join of its parts".into());
    }
    Ok(Decomposition { sharp: xs, meager: xm })
}
