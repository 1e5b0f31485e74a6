//! Sub-effect algebras and blocks.

use std::collections::HashSet;

use crate::algebra::{EffectAlgebra, Elem};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::order::{derive, DerivedStructure};
use crate::structure::compat::family_subsum_sets;
use crate::structure::riesz::{has_rdp, is_homogeneous};

/// A block: a maximal sub-effect algebra with the Riesz decomposition
/// property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub members: ElemSet,
    pub contains_unit: bool,
}

/// The blocks of an algebra. `homogeneous` is false when the input was not
/// homogeneous; the blocks then come from the compatibility search alone
/// and the cross-checks were skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub blocks: Vec<Block>,
    pub homogeneous: bool,
}

/// `1 ∈ q` and, whenever `x ⊕ y = z` with two of `x, y, z` in `q`, all
/// three are in `q`.
pub fn is_sub_effect_algebra(d: &DerivedStructure, q: ElemSet) -> bool {
    q.contains(d.unit()) && closure_step(d, q) == q
}

fn closure_step(d: &DerivedStructure, q: ElemSet) -> ElemSet {
    let mut out = q;
    for x in d.elements() {
        for y in x..d.len() {
            if let Some(z) = d.sum(x, y) {
                let inside = q.contains(x) as u8 + q.contains(y) as u8 + q.contains(z) as u8;
                if inside >= 2 {
                    out = out.with(x).with(y).with(z);
                }
            }
        }
    }
    out
}

/// Smallest sub-effect algebra containing `generators`.
pub fn sub_effect_closure(d: &DerivedStructure, generators: ElemSet) -> ElemSet {
    let mut q = generators.with(d.unit());
    loop {
        let next = closure_step(d, q);
        if next == q {
            return q;
        }
        q = next;
    }
}

/// All sub-effect algebras. They are closed under intersection, so each
/// is reached from the least one by adjoining elements one at a time.
pub fn sub_effect_algebras(d: &DerivedStructure) -> Vec<ElemSet> {
    let start = sub_effect_closure(d, ElemSet::EMPTY);
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        for x in d.carrier().difference(q) {
            let next = sub_effect_closure(d, q.with(x));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    let mut all: Vec<ElemSet> = seen.into_iter().collect();
    sort_sets(&mut all);
    all
}

/// The sub-effect algebra on `members` with the inherited operation.
/// Returns the algebra and the embedding of its indices into `d`.
pub fn subalgebra(d: &DerivedStructure, members: ElemSet) -> Result<(EffectAlgebra, Vec<Elem>)> {
    if !is_sub_effect_algebra(d, members) {
        return Err(Error::Precondition(format!(
            "{{{}}} is not a sub-effect algebra",
            d.labels_of(members).join(", ")
        )));
    }
    let (table, embed) = d.algebra().table().restrict(members);
    let pos = |x: Elem| embed.iter().position(|&e| e == x).expect("member");
    let e = EffectAlgebra::new(table, pos(d.zero()), pos(d.unit()))?;
    Ok((e, embed))
}

fn sort_sets(sets: &mut [ElemSet]) {
    sets.sort_by_key(|s| (s.len(), s.to_vec()));
}

fn maximal_sets(mut sets: Vec<ElemSet>) -> Vec<ElemSet> {
    sets.sort();
    sets.dedup();
    let mut out: Vec<ElemSet> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && s.is_subset(t)))
        .collect();
    sort_sets(&mut out);
    out
}

/// Maximal internally compatible subsets containing 1.
///
/// A finite set is internally compatible exactly when it lies between the
/// members and the subsums of one orthogonal family drawn from it, and
/// the subsum set of any family is itself internally compatible. The
/// maximal ones containing 1 are therefore the inclusion-maximal subsum
/// sets of families from `E` that sum to 1.
pub fn blocks_by_compatibility(d: &DerivedStructure) -> Vec<ElemSet> {
    let sets = family_subsum_sets(d, d.carrier())
        .into_iter()
        .filter(|s| s.contains(d.unit()))
        .collect();
    maximal_sets(sets)
}

/// Maximal sub-effect algebras with the Riesz decomposition property.
pub fn blocks_by_riesz(d: &DerivedStructure) -> Result<Vec<ElemSet>> {
    let mut with_rdp = Vec::new();
    for q in sub_effect_algebras(d) {
        let (sub, _) = subalgebra(d, q)?;
        if has_rdp(&derive(&sub)?) {
            with_rdp.push(q);
        }
    }
    Ok(maximal_sets(with_rdp))
}

/// Blocks, sorted by size and then by member list.
///
/// On homogeneous input both characterizations are computed and must
/// agree; the union of the blocks must be the carrier, each block's center
/// must be its sharp members, and `{y | y ≤ x, y ≤ x′}` must stay inside
/// the block of `x`.
pub fn blocks(d: &DerivedStructure) -> Result<Blocks> {
    let by_compat = blocks_by_compatibility(d);
    let homogeneous = is_homogeneous(d);
    let wrap = |sets: Vec<ElemSet>| {
        sets.into_iter()
            .map(|members| Block {
                members,
                contains_unit: members.contains(d.unit()),
            })
            .collect()
    };
    if !homogeneous {
        return Ok(Blocks {
            blocks: wrap(by_compat),
            homogeneous: false,
        });
    }
    let by_riesz = blocks_by_riesz(d)?;
    if by_riesz != by_compat {
        return Err(Error::Consistency(format!(
            "block characterizations differ: compatibility gives {}, Riesz gives {}",
            fmt_sets(d, &by_compat),
            fmt_sets(d, &by_riesz)
        )));
    }
    crate::checks::check_blocks(d, &by_compat).map_err(|v| Error::Consistency(v.describe(d)))?;
    Ok(Blocks {
        blocks: wrap(by_compat),
        homogeneous: true,
    })
}

pub(crate) fn fmt_sets(d: &DerivedStructure, sets: &[ElemSet]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", d.labels_of(*s).join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};

    fn gen(s: &str) -> DerivedStructure {
        derive(&generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()).unwrap()
    }

    fn set(d: &DerivedStructure, ls: &[&str]) -> ElemSet {
        ls.iter().map(|l| d.algebra().table().index_of(l).unwrap()).collect()
    }

    fn members(b: &Blocks) -> Vec<ElemSet> {
        b.blocks.iter().map(|b| b.members).collect()
    }

    #[test]
    fn diamond_has_two_chains_as_blocks() {
        let d = gen("diamond");
        let b = blocks(&d).unwrap();
        assert!(b.homogeneous);
        assert_eq!(members(&b), vec![set(&d, &["0", "a", "1"]), set(&d, &["0", "b", "1"])]);
    }

    #[test]
    fn mo2_blocks_are_boolean_squares() {
        let d = gen("mo 2");
        let b = blocks(&d).unwrap();
        assert_eq!(
            members(&b),
            vec![set(&d, &["0", "a1", "a1'", "1"]), set(&d, &["0", "a2", "a2'", "1"])]
        );
    }

    #[test]
    fn rdp_algebras_are_a_single_block() {
        for name in ["boolean 2", "chain 4", "product(chain 2, chain 1)"] {
            let d = gen(name);
            let b = blocks(&d).unwrap();
            assert_eq!(members(&b), vec![d.carrier()], "{name}");
            assert!(b.blocks[0].contains_unit);
        }
    }

    #[test]
    fn sub_effect_algebras_of_chain() {
        // C4 = {0, a, 2a, 3a, 1}: {0, 1}, {0, 2a, 1} and the whole chain
        let d = gen("chain 4");
        let subs = sub_effect_algebras(&d);
        assert_eq!(subs, vec![set(&d, &["0", "1"]), set(&d, &["0", "2a", "1"]), d.carrier()]);
        assert!(is_sub_effect_algebra(&d, set(&d, &["0", "2a", "1"])));
        assert!(!is_sub_effect_algebra(&d, set(&d, &["0", "a", "1"])));
    }

    #[test]
    fn subalgebra_rejects_non_closed_sets() {
        let d = gen("chain 4");
        assert!(subalgebra(&d, set(&d, &["0", "a", "1"])).is_err());
        let (sub, embed) = subalgebra(&d, set(&d, &["0", "2a", "1"])).unwrap();
        assert_eq!(sub.len(), 3);
        assert_eq!(embed.len(), 3);
        assert!(crate::validate::validate_ea(&sub).valid);
    }
}
