use proptest::prelude::*;
use satknot::*;

fn corpus_diagram(i: usize) -> Diagram {
    corpus()[i % 7].diagram.clone()
}

/// Knot determinant |Δ(-1)|.
fn det(p: &LaurentPoly) -> i64 {
    let mut s = num_bigint::BigInt::from(0);
    for (e, c) in p.terms() {
        s += if e.rem_euclid(2) == 0 {
            c.clone()
        } else {
            -c.clone()
        };
    }
    i64::try_from(s).unwrap().abs()
}

#[test]
fn known_determinants() {
    // Determinants of the corpus knots, independently tabulated.
    let want = [1, 3, 5, 5, 7, 9, 15];
    for (k, d) in corpus().iter().zip(want) {
        assert_eq!(
            det(&alexander_from_diagram(&k.diagram).unwrap()),
            d,
            "{}",
            k.name
        );
    }
}

#[test]
fn dropping_one_wirtinger_relator_changes_nothing() {
    for k in corpus().iter().filter(|k| k.diagram.crossing_count() > 0) {
        let p = wirtinger(&k.diagram).unwrap();
        let full = alexander_from_diagram(&k.diagram).unwrap();
        for drop in 0..p.relators.len() {
            let mut q = p.clone();
            q.relators.remove(drop);
            let im = abelianization_map(&q).unwrap();
            assert_eq!(
                alexander_from_presentation(&q, &im).unwrap(),
                full,
                "{} drop {drop}",
                k.name
            );
        }
    }
}

#[test]
fn double_of_double_keeps_the_quadratic() {
    let t = corpus_knot("3_1").unwrap().diagram;
    let d = iterated_double(&t, &[2, 5], 1).unwrap();
    assert_eq!(d.crossing_count(), 76);
    assert!(poly_eq_up_to_units(
        &alexander_from_diagram(&d).unwrap(),
        &twist_quadratic(5)
    ));
}

#[test]
fn negative_clasp_gives_mirror_quadratic() {
    let k = corpus_knot("4_1").unwrap().diagram;
    for tau in -2..=2 {
        let d = whitehead_double(&k, tau, -1).unwrap();
        // A negative clasp mirrors the pattern, so the quadratic is q(-tau).
        assert!(
            poly_eq_up_to_units(&alexander_from_diagram(&d).unwrap(), &twist_quadratic(-tau)),
            "tau {tau}"
        );
    }
}

#[test]
fn presentation_json_round_trip() {
    let p = tietze_simplify(
        &wirtinger(&corpus_knot("5_2").unwrap().diagram).unwrap(),
        1000,
    )
    .presentation;
    let q = GroupPresentation::from_json(&p.to_json()).unwrap();
    assert_eq!(p, q);
    assert_eq!(
        GroupPresentation::from_json("{").unwrap_err().name(),
        "BadJson"
    );
}

#[test]
fn amalgam_over_unknot_is_identity_on_alexander() {
    // Connected sum group with the unknot: gluing along meridians.
    let a = wirtinger(&corpus_knot("6_1").unwrap().diagram).unwrap();
    let u = wirtinger(&Diagram::unknot()).unwrap();
    let p = amalgamated_product(
        &a,
        &u,
        &[(
            a.peripheral[0].meridian.clone(),
            u.peripheral[0].meridian.clone(),
        )],
    )
    .unwrap();
    let im = abelianization_map(&p).unwrap();
    assert_eq!(
        alexander_from_presentation(&p, &im).unwrap(),
        alexander_from_diagram(&corpus_knot("6_1").unwrap().diagram).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tietze_preserves_alexander(i in 0usize..7, tau in -2i64..=2) {
        let d = whitehead_double(&corpus_diagram(i), tau, 1).unwrap();
        let p = wirtinger(&d).unwrap();
        let s = tietze_simplify(&p, 10_000);
        prop_assert!(!s.budget_exhausted);
        prop_assert!(s.presentation.generator_count() <= p.generator_count());
        prop_assert!(abelianization(&s.presentation).is_infinite_cyclic());
        let im = abelianization_map(&s.presentation).unwrap();
        let a = alexander_from_presentation(&s.presentation, &im).unwrap();
        prop_assert_eq!(a, alexander_from_diagram(&d).unwrap());
    }

    #[test]
    fn mirror_and_sum_invariants(i in 0usize..7, j in 0usize..7) {
        let (a, b) = (corpus_diagram(i), corpus_diagram(j));
        let da = alexander_from_diagram(&a).unwrap();
        prop_assert_eq!(writhe(&mirror(&a)).unwrap(), -writhe(&a).unwrap());
        prop_assert!(poly_eq_up_to_units(&alexander_from_diagram(&mirror(&a)).unwrap(), &da));
        let s = connected_sum(&a, &b).unwrap();
        prop_assert_eq!(s.crossing_count(), a.crossing_count() + b.crossing_count());
        prop_assert_eq!(writhe(&s).unwrap(), writhe(&a).unwrap() + writhe(&b).unwrap());
    }

    #[test]
    fn pd_round_trip(i in 0usize..7, tau in -3i64..=3) {
        let d = whitehead_double(&corpus_diagram(i), tau, 1).unwrap().stripped();
        let again = parse_pd(&serialize_pd(&d)).unwrap();
        prop_assert_eq!(serialize_pd(&again), serialize_pd(&d));
        prop_assert_eq!(writhe(&again).unwrap(), writhe(&d).unwrap());
    }

    #[test]
    fn certificates_are_ordered(
        hyp in proptest::option::of(any::<bool>()),
        jsj in proptest::option::of(0u32..4),
        tunnel in proptest::option::of(1u32..4),
        n in 1i64..40,
    ) {
        let meta = CompanionMeta { nontrivial: Some(true), is_hyperbolic: hyp, jsj_hyperbolic_pieces: jsj, tunnel_number: tunnel };
        if let Ok(c) = certify_rank(&meta, n) {
            prop_assert!(c.lower > n as u64);
            if let Some(u) = c.upper { prop_assert!(c.lower <= u); }
            if let (Some(e), Some(u)) = (c.exact, c.upper) { prop_assert!(c.lower <= e && e <= u); }
            if let Some(tu) = c.tunnel.upper { prop_assert!(c.tunnel.lower <= tu); }
        } else {
            prop_assert!(hyp == Some(true) && jsj.is_some_and(|j| j != 1)
                || tunnel.is_some_and(|t| u64::from(jsj.unwrap_or(0)) + n as u64 + 1 > n as u64 + 1 + u64::from(t)));
        }
    }

    #[test]
    fn classify_is_symmetric(m1 in -2i64..=2, m2 in -2i64..=2, i in 1usize..7, j in 1usize..7) {
        let a = build_w(&corpus_diagram(i), 2 * m1, LayerWord::bing()).unwrap().0;
        let b = build_w(&corpus_diagram(j), 2 * m2, LayerWord::bing()).unwrap().0;
        let ab = classify(&a, &b).unwrap();
        let ba = classify(&b, &a).unwrap();
        prop_assert_eq!(ab.verdict, ba.verdict);
        if i == j && m1 == m2 { prop_assert_ne!(ab.verdict.as_str(), "distinct"); }
    }
}
