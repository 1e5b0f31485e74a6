mod support;

use ea_core::{canonical_form, enumerate_all, enumerate_size, find_isomorphism, serialize_ea, validate_ea};

#[test]
fn class_counts_match_unpruned_search() {
    for n in 2..=5 {
        let fast = enumerate_size(n).unwrap();
        let naive = support::naive_classes(n);
        assert_eq!(fast.len(), naive.len(), "n = {n}");
        // same classes, not just the same number
        let fast_keys: std::collections::BTreeSet<_> = fast
            .iter()
            .map(|e| support::naive_canonical(&support::table_of(e), e.zero(), e.unit()))
            .collect();
        assert_eq!(fast_keys, naive, "n = {n}");
    }
}

#[test]
fn output_is_valid_sorted_and_pairwise_non_isomorphic() {
    let all = enumerate_all(6).unwrap();
    for e in &all {
        assert!(validate_ea(e).valid);
        assert_eq!(&canonical_form(e).unwrap(), e);
    }
    let keys: Vec<(usize, String)> = all.iter().map(|e| (e.len(), serialize_ea(e))).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.len() == b.len() {
                assert!(find_isomorphism(a, b).unwrap().is_none());
            }
        }
    }
}

#[test]
fn isomorphism_iff_equal_canonical_forms() {
    let all = enumerate_all(5).unwrap();
    // include relabelled copies so that positive cases are exercised too
    let mut pool = all.clone();
    for e in &all {
        let n = e.len();
        let perm: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        pool.push(e.permuted(&perm));
    }
    for a in &pool {
        for b in &pool {
            let iso = find_isomorphism(a, b).unwrap().is_some();
            assert_eq!(iso, canonical_form(a).unwrap() == canonical_form(b).unwrap());
        }
    }
}

#[test]
fn deterministic_output() {
    assert_eq!(enumerate_all(6).unwrap(), enumerate_all(6).unwrap());
}
