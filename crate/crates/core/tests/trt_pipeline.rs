mod support;

use ea_core::trt::{m_maps, map_discrepancy, s_map, TrtAlgebra};
use ea_core::{
    derive, enumerate_all, extract_triple, find_isomorphism, generate, parse_triple, reconstruct_tea,
    serialize_triple, standard_catalog, trt_check, verify_triple_theorem, EffectAlgebra, GeneratorSpec, TripleView,
};
use support::idx;

fn gen(s: &str) -> EffectAlgebra {
    generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
}

fn trt_corpus() -> Vec<(String, EffectAlgebra)> {
    let mut all = standard_catalog();
    for (i, e) in enumerate_all(6).unwrap().into_iter().enumerate() {
        all.push((format!("enumerated #{i}"), e));
    }
    all.retain(|(_, e)| trt_check(&derive(e).unwrap()).unwrap().is_trt);
    all
}

#[test]
fn s_map_matches_definition() {
    for (name, e) in trt_corpus() {
        let d = derive(&e).unwrap();
        let t = support::table_of(&e);
        let mea = support::meager_elements(&t, e.zero(), e.unit());
        for &x in &mea {
            for &y in &mea {
                assert_eq!(
                    s_map(&d, x, y).unwrap(),
                    support::s_map(&t, e.zero(), e.unit(), x, y),
                    "{name} ({}, {})",
                    e.label(x),
                    e.label(y)
                );
            }
        }
    }
}

#[test]
fn worked_s_values() {
    let e = gen("chain 2");
    let a = idx(&e, "a");
    assert_eq!(s_map(&derive(&e).unwrap(), a, a).unwrap(), Some(e.unit()));
    let e = gen("chain 3");
    let a = idx(&e, "a");
    assert_eq!(s_map(&derive(&e).unwrap(), a, a).unwrap(), Some(e.zero()));
}

#[test]
fn r_is_an_involution_on_its_fibres() {
    for (name, e) in trt_corpus() {
        let d = derive(&e).unwrap();
        let m = m_maps(&d).unwrap();
        for x in d.elements() {
            if let Some(r) = m.r[x] {
                assert_eq!(m.hat[r], m.hat[x], "{name}");
                assert_eq!(m.r[r], Some(x), "{name}");
            }
        }
    }
}

#[test]
fn triple_side_agrees_with_e_side() {
    for (name, e) in trt_corpus() {
        let trt = TrtAlgebra::new(&derive(&e).unwrap()).unwrap();
        let (t, emb) = trt.triple().unwrap();
        let view = TripleView::new(&t).unwrap();
        assert_eq!(map_discrepancy(&trt, &view, &emb).unwrap(), None, "{name}");
    }
}

#[test]
fn triple_text_round_trip_rebuilds_the_algebra() {
    for (name, e) in trt_corpus() {
        let d = derive(&e).unwrap();
        let (t, _) = extract_triple(&d).unwrap();
        let text = serialize_triple(&t);
        let back = parse_triple(&text).unwrap();
        assert_eq!(back, t, "{name}");
        assert_eq!(serialize_triple(&back), text);
        let tea = reconstruct_tea(&back).unwrap();
        assert!(find_isomorphism(&e, &tea.algebra).unwrap().is_some(), "{name}");
    }
}

#[test]
fn theorem_holds_on_corpus() {
    for (name, e) in trt_corpus() {
        let v = verify_triple_theorem(&derive(&e).unwrap()).unwrap();
        assert!(v.holds(), "{name}: {:?}", v.failure);
    }
}

#[test]
fn triple_view_examples() {
    let e = gen("chain 3");
    let (t, _) = extract_triple(&derive(&e).unwrap()).unwrap();
    let v = TripleView::new(&t).unwrap();
    let a = t.meager.table().index_of("a").unwrap();
    let a2 = t.meager.table().index_of("2a").unwrap();
    assert_eq!(v.hat_from_triple(a).unwrap(), t.sharp.unit());
    assert_eq!(v.r_from_triple(a).unwrap(), a2);
    assert_eq!(v.oplus_via_triple(a, a), Some((t.sharp.zero(), a2)));

    let e = gen("diamond");
    let (t, _) = extract_triple(&derive(&e).unwrap()).unwrap();
    let v = TripleView::new(&t).unwrap();
    let (a, b) = (t.meager.table().index_of("a").unwrap(), t.meager.table().index_of("b").unwrap());
    assert_eq!(v.r_from_triple(a).unwrap(), a);
    assert_eq!(v.oplus_via_triple(a, b), None);
}

#[test]
fn corrupted_triple_is_rejected() {
    let e = gen("chain 3");
    let (t, _) = extract_triple(&derive(&e).unwrap()).unwrap();
    // h(1) without 2a: the carrier loses (0,2a) and a ⊕ a has nowhere to go
    let text = serialize_triple(&t).replace("1: 0 1 2", "1: 0 1");
    let broken = parse_triple(&text).unwrap();
    match reconstruct_tea(&broken) {
        Err(_) => {}
        Ok(tea) => assert!(find_isomorphism(&e, &tea.algebra).unwrap().is_none()),
    }
}

#[test]
fn trt_algebra_refuses_non_trt() {
    for e in enumerate_all(6).unwrap() {
        let d = derive(&e).unwrap();
        let r = trt_check(&d).unwrap();
        assert_eq!(TrtAlgebra::new(&d).is_ok(), r.is_trt);
    }
}
