mod support;

use ea_core::{
    canonical_form, derive, find_isomorphism, parse_ea, serialize_ea, standard_catalog, EffectAlgebra, PartialTable,
};
use proptest::prelude::*;

fn catalog_permuted() -> impl Strategy<Value = (EffectAlgebra, EffectAlgebra)> {
    let cat: Vec<EffectAlgebra> = standard_catalog().into_iter().map(|(_, e)| e).collect();
    (0..cat.len()).prop_flat_map(move |i| {
        let e = cat[i].clone();
        let n = e.len();
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| (e.clone(), e.permuted(&perm)))
    })
}

/// Symmetric tables with arbitrary entries, valid or not.
fn raw_algebra() -> impl Strategy<Value = EffectAlgebra> {
    (2usize..7).prop_flat_map(|n| {
        let cells = n * (n + 1) / 2;
        (
            proptest::collection::vec(proptest::option::of(0..n), cells),
            0..n,
            0..n,
        )
            .prop_filter("zero ≠ unit", |(_, z, u)| z != u)
            .prop_map(move |(vals, zero, unit)| {
                let labels = (0..n).map(|i| format!("x{i}")).collect();
                let mut t = PartialTable::empty(labels).unwrap();
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        t.set_sym(i, j, vals[k]);
                        k += 1;
                    }
                }
                EffectAlgebra::new(t, zero, unit).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn serialization_round_trips((_, e) in catalog_permuted()) {
        let text = serialize_ea(&e);
        let back = parse_ea(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(serialize_ea(&back), text);
    }

    #[test]
    fn unvalidated_tables_round_trip(e in raw_algebra()) {
        prop_assert_eq!(parse_ea(&serialize_ea(&e)).unwrap(), e);
    }

    #[test]
    fn comments_and_spacing_are_ignored((_, e) in catalog_permuted()) {
        let text = serialize_ea(&e);
        let noisy: String = text
            .lines()
            .map(|l| format!("  {}\t\n# note\n\n", l.replace(' ', "   ")))
            .collect();
        prop_assert_eq!(parse_ea(&noisy).unwrap(), e);
    }

    #[test]
    fn relabelling_preserves_class((e, p) in catalog_permuted()) {
        let f = find_isomorphism(&e, &p).unwrap();
        prop_assert!(f.is_some());
        prop_assert_eq!(canonical_form(&e).unwrap(), canonical_form(&p).unwrap());
        let c = canonical_form(&p).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn order_laws((_, e) in catalog_permuted()) {
        let d = derive(&e).unwrap();
        let t = support::table_of(&e);
        let n = e.len();
        for x in 0..n {
            prop_assert!(d.leq(d.zero(), x) && d.leq(x, d.unit()));
            prop_assert_eq!(d.complement(d.complement(x)), x);
            for y in 0..n {
                prop_assert_eq!(d.leq(x, y), support::leq(&t, x, y));
                prop_assert_eq!(d.sum(x, y), d.sum(y, x));
                prop_assert_eq!(d.sum(x, y).is_some(), d.leq(x, d.complement(y)));
                prop_assert_eq!(d.leq(x, y), d.leq(d.complement(y), d.complement(x)));
                if let Some(s) = d.sum(x, y) {
                    prop_assert!(d.leq(x, s));
                    prop_assert_eq!(d.ominus(s, x), Some(y));
                }
                if d.leq(x, y) && d.leq(y, x) {
                    prop_assert_eq!(x, y);
                }
            }
        }
    }
}
