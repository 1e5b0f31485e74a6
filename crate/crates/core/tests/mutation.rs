mod support;

use ea_core::{standard_catalog, validate_ea, EffectAlgebra};

fn catalog() -> Vec<EffectAlgebra> {
    standard_catalog().into_iter().map(|(_, e)| e).collect()
}

#[test]
fn catalog_is_valid() {
    for (name, e) in standard_catalog() {
        let r = validate_ea(&e);
        assert!(r.valid, "{name}: {:?}", r.failed_axioms());
    }
}

#[test]
fn single_cell_edits_are_tagged_correctly() {
    for (symmetric, seed) in [(false, 7), (true, 11)] {
        let s = support::mutation_score(&catalog(), 100, symmetric, seed);
        assert!(s.exact * 100 >= s.total * 95, "symmetric={symmetric}: {}/{} exact", s.exact, s.total);
        assert_eq!(s.missed, 0);
    }
}

#[test]
fn identity_edit_is_not_a_mutation() {
    // sanity: the scoring oracle agrees with the library on the originals
    for e in catalog() {
        let t = support::table_of(&e);
        assert!(support::naive_violations(&t, e.zero(), e.unit()).is_empty());
    }
}
