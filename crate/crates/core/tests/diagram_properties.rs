mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vka::diagram::{parse_gauss, serialize_gauss, Diagram, DiagramError, Kind};

fn diagram(kind: Kind) -> impl Strategy<Value = Diagram> {
    (0usize..=7, any::<u64>()).prop_map(move |(c, seed)| {
        common::random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), c, kind)
    })
}

fn any_diagram() -> impl Strategy<Value = Diagram> {
    prop_oneof![diagram(Kind::Long), diagram(Kind::Closed)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn serialization_round_trips(d in any_diagram()) {
        let text = serialize_gauss(&d);
        let back = parse_gauss(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_gauss(&back), text);
        prop_assert_eq!(d.to_string().parse::<Diagram>().unwrap(), d);
    }

    #[test]
    fn concatenation_is_associative(a in diagram(Kind::Long), b in diagram(Kind::Long), c in diagram(Kind::Long)) {
        let left = a.concatenate(&b).unwrap().concatenate(&c).unwrap();
        let right = a.concatenate(&b.concatenate(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let t = Diagram::trivial();
        prop_assert_eq!(&a.concatenate(&t).unwrap(), &a);
        prop_assert_eq!(&t.concatenate(&a).unwrap(), &a);
        prop_assert_eq!(left.crossing_count(), a.crossing_count() + b.crossing_count() + c.crossing_count());
    }

    #[test]
    fn closure_of_products(a in diagram(Kind::Long), b in diagram(Kind::Long)) {
        let ab = a.concatenate(&b).unwrap().close().unwrap();
        let ba = b.concatenate(&a).unwrap().close().unwrap();
        // closing absorbs the cyclic order, so both products close to the same code
        prop_assert_eq!(&ab, &ba);
        prop_assert_eq!(ab.kind(), Kind::Closed);
        let mismatch = matches!(ab.concatenate(&a), Err(DiagramError::KindMismatch { .. }));
        prop_assert!(mismatch);
        prop_assert!(ab.close().is_err());
    }

    #[test]
    fn arc_structure_matches_passages(d in any_diagram()) {
        let arcs = d.arc_structure();
        let m = d.passages().len();
        let want = match d.kind() {
            Kind::Long => m + 1,
            Kind::Closed => m.max(1),
        };
        prop_assert_eq!(arcs.arc_count, want);
        let next = |i: usize| if d.kind() == Kind::Long { i + 1 } else { (i + 1) % want };
        for (x, (o, w, s)) in arcs.crossings.iter().zip(common::naive_crossings(&d)) {
            prop_assert_eq!((x.over_in, x.over_out, x.under_in, x.under_out), (o, next(o), w, next(w)));
            prop_assert_eq!(x.sign.value(), s);
        }
    }

    #[test]
    fn switching_is_an_involution(d in any_diagram()) {
        let s = d.switch_all_crossings();
        prop_assert_eq!(s.switch_all_crossings(), d.clone());
        prop_assert_eq!(s.crossing_count(), d.crossing_count());
    }
}

#[test]
fn corpus_parses_and_reserializes() {
    let corpus = common::corpus();
    assert!(corpus.len() >= 10);
    for (name, d) in corpus {
        let text = serialize_gauss(&d);
        assert_eq!(parse_gauss(&text).unwrap(), d, "{name}");
    }
}

#[test]
fn parse_errors_carry_locations() {
    match parse_gauss("O1+ U1+\n  O2+ X2+") {
        Err(DiagramError::MalformedToken {
            line,
            column,
            token,
        }) => {
            assert_eq!((line, column, token.as_str()), (2, 7, "X2+"));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        parse_gauss("O1+ U1+ O2+"),
        Err(DiagramError::CrossingCount {
            crossing: 2,
            count: 1
        })
    );
    assert_eq!(
        parse_gauss("O1+ U1-"),
        Err(DiagramError::SignMismatch { crossing: 1 })
    );
    assert!(matches!(
        parse_gauss("O1+ O1+"),
        Err(DiagramError::SameRole { crossing: 1, .. })
    ));
    assert_eq!(parse_gauss("# nothing\n").unwrap(), Diagram::trivial());
    assert_eq!(parse_gauss("closed").unwrap(), Diagram::unknot());
}

#[test]
fn closed_codes_compare_up_to_rotation() {
    let a: Diagram = "closed\nO1+ U2- U1+ O2-".parse().unwrap();
    let b: Diagram = "closed\nU2- U1+ O2- O1+".parse().unwrap();
    assert_eq!(a, b);
    let long_a: Diagram = "O1+ U2- U1+ O2-".parse().unwrap();
    let long_b: Diagram = "U2- U1+ O2- O1+".parse().unwrap();
    assert_ne!(long_a, long_b);
}

#[test]
fn dn_family_shape() {
    assert_eq!(
        Diagram::dn_family(&Diagram::trivial(), 1).unwrap(),
        common::load("k5")
    );
    for n in 1..=3 {
        assert_eq!(
            Diagram::dn_family(&Diagram::trivial(), n).unwrap(),
            common::load(&format!("d{n}")),
        );
    }
    let base = common::load("k1");
    for n in 0..=5 {
        let d = Diagram::dn_family(&base, n).unwrap();
        assert_eq!(d.crossing_count(), 2 * n + 2);
    }
    assert!(Diagram::dn_family(&Diagram::unknot(), 1).is_err());
}
