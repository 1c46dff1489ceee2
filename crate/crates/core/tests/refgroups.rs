use polymap_core::groebner::Budget;
use polymap_core::maps::{topological_degree, PolyMap};
use polymap_core::parser::parse_poly;
use polymap_core::polyring::*;
use polymap_core::refgroups::*;

fn xy(n: u32) -> Ring {
    Ring::of(&["x", "y"], n)
}

fn group(kind: GroupKind) -> (GroupRecord, GroupElements) {
    let g = build_group(kind).unwrap();
    let els = enumerate(&g).unwrap();
    (g, els)
}

fn exc(number: u32) -> GroupKind {
    GroupKind::Exceptional { number }
}

#[test]
fn exceptional_orders_presentations_and_centers() {
    let orders = [
        24, 72, 48, 144, 96, 192, 288, 576, 48, 96, 144, 288, 600, 1200, 1800, 3600, 360, 720, 240,
    ];
    for (number, &order) in (4..=22).zip(orders.iter()) {
        let (g, els) = group(exc(number));
        assert_eq!(els.len() as u64, order, "G{number}");
        assert_eq!(g.expected_order, order);
        assert!(verify_presentation(&g), "G{number}");
        let fp = fingerprint(&els);
        let k = g.exceptional.unwrap().k as u64;
        assert_eq!(fp.center_order, k, "G{number}");
        assert!(2 * k < order);
    }
}

#[test]
fn corrupted_presentation_is_rejected() {
    let g = build_group(exc(4)).unwrap();
    let [s, t, z] = [&g.generators[0], &g.generators[1], &g.generators[2]];
    let mut pres = g.exceptional.unwrap().presentation();
    assert!(relations_hold(s, t, z, &pres));
    pres.k1 += 1;
    assert!(!relations_hold(s, t, z, &pres));
    assert!(!verify_presentation(&build_group(GroupKind::Cyclic { m: 3 }).unwrap()));
}

#[test]
fn imprimitive_orders() {
    for m in 2..=8u32 {
        for p in (1..=m).filter(|p| m % p == 0 && !(m == 2 && *p == 2)) {
            let (g, els) = group(GroupKind::Imprimitive { m, p });
            assert_eq!(els.len() as u64, (2 * m * m / p) as u64, "G({m},{p},2)");
            assert_eq!(g.expected_order, els.len() as u64);
        }
    }
    let (_, d4) = group(GroupKind::Imprimitive { m: 4, p: 4 });
    assert_eq!(d4.len(), 8);
}

#[test]
fn involution_counts() {
    for m in [2u32, 4, 6, 8] {
        for p in [1u32, 3, 5, 7].into_iter().filter(|p| m % p == 0) {
            let (_, els) = group(GroupKind::Imprimitive { m, p });
            assert_eq!(fingerprint(&els).involutions(), (m + 3) as u64, "G({m},{p},2)");
        }
        let (_, els) = group(GroupKind::Imprimitive { m: 2 * m, p: 4 });
        let expected = if m % 4 == 0 { 2 * m + 3 } else { 2 * m + 1 };
        assert_eq!(fingerprint(&els).involutions(), expected as u64, "G({},4,2)", 2 * m);
    }
}

#[test]
fn g212_and_g442_share_fingerprints() {
    let (_, a) = group(GroupKind::Imprimitive { m: 2, p: 1 });
    let (_, b) = group(GroupKind::Imprimitive { m: 4, p: 4 });
    assert_eq!(fingerprint(&a), fingerprint(&b));
}

#[test]
fn seed_identities() {
    for (name, ok) in covariant_identities() {
        assert!(ok, "{name}");
    }
}

#[test]
fn seeds_are_invariant() {
    for (name, number) in [("a4", 4), ("b6", 12), ("c8", 8), ("d12", 8), ("e12", 20), ("f20", 16), ("g30", 16)] {
        let (_, els) = group(exc(number));
        assert!(is_invariant(&els, &seed_invariant(name, 1)), "{name} under G{number}");
    }
    let (_, g4) = group(exc(4));
    assert!(!is_invariant(&g4, &xy(1).var(0)));
    // G5 only fixes a4 up to a cube root of unity
    let (_, g5) = group(exc(5));
    assert!(!is_invariant(&g5, &seed_invariant("a4", 1)));
    assert!(is_invariant(&g5, &seed_invariant("a4", 1).pow(3)));
}

#[test]
fn reynolds_operator() {
    let (_, g4) = group(exc(4));
    let x = xy(1).var(0);
    assert!(reynolds(&g4, &x).is_zero());
    let avg = reynolds(&g4, &x.pow(4));
    assert!(proportional(&avg, &seed_invariant("a4", 1)));
    assert!(is_invariant(&g4, &avg));
    let a4 = seed_invariant("a4", 1);
    assert_eq!(reynolds(&g4, &a4), a4.embed_conductor(24).unwrap());
    let (_, g12) = group(exc(12));
    let avg = reynolds(&g12, &(&x.pow(5) * &xy(1).var(1)));
    assert!(proportional(&avg, &seed_invariant("b6", 1)));
}

#[test]
fn basic_sets_for_every_row() {
    for row in table4_rows(6, 4) {
        let g = build_group(row.group).unwrap();
        let (a, b) = basic_invariants(&g).unwrap();
        let deg = a.total_degree().unwrap() as u64 * b.total_degree().unwrap() as u64;
        assert_eq!(deg, g.expected_order, "{}", row.id);
    }
    let (a, b) = basic_invariants(&build_group(exc(22)).unwrap()).unwrap();
    assert_eq!((a.total_degree(), b.total_degree()), (Some(12), Some(20)));
    let f = quotient_map(&build_group(GroupKind::Cyclic { m: 5 }).unwrap()).unwrap();
    assert_eq!(f, PolyMap::new(xy(1).var(0), xy(1).var(1).pow(5)).unwrap());
}

#[test]
fn quotient_degrees_equal_group_orders() {
    for kind in [
        GroupKind::Cyclic { m: 4 },
        GroupKind::Product { m: 2, n: 3 },
        GroupKind::Imprimitive { m: 4, p: 2 },
        GroupKind::Imprimitive { m: 3, p: 1 },
        exc(4),
    ] {
        let g = build_group(kind).unwrap();
        let f = quotient_map(&g).unwrap();
        assert_eq!(topological_degree(&f, 11, Budget::default()).unwrap(), g.expected_order, "{kind}");
    }
}

#[test]
fn transitions_between_basic_sets() {
    let r = xy(1);
    let p = |t: &str| parse_poly(t, &r).unwrap();
    let a4 = seed_invariant("a4", 1);
    let b6 = seed_invariant("b6", 1);
    let phi = (a4.scale_int(3), b6.scale_int(5));
    let t = basic_set_transition((&phi.0, &phi.1), (&a4, &b6)).unwrap();
    let r6 = xy(6);
    assert_eq!(t.map, PolyMap::new(r6.var(0).scale_int(3), r6.var(1).scale_int(5)).unwrap());

    let psi = (p("x^2+y^2"), p("x^2*y^2"));
    let phi = (p("x^2+y^2"), p("(x^2+y^2)^2-4*x^2*y^2"));
    let t = basic_set_transition((&phi.0, &phi.1), (&psi.0, &psi.1)).unwrap();
    assert_eq!(t.map, PolyMap::new(p("x"), p("x^2-4*y")).unwrap());
    let back = t.map.after(&PolyMap::new(psi.0.clone(), psi.1.clone()).unwrap()).unwrap();
    assert_eq!(back, PolyMap::new(phi.0.clone(), phi.1.clone()).unwrap());

    let same = basic_set_transition((&psi.0, &psi.1), (&psi.0, &psi.1)).unwrap();
    assert!(same.map.is_identity());

    // equal degrees: a genuine linear change
    let (c, d) = (p("x^4+y^4"), p("x^2*y^2"));
    let phi = (&c + &d, &c - &d.scale_int(2));
    let t = basic_set_transition((&phi.0, &phi.1), (&c, &d)).unwrap();
    assert_eq!(t.map, PolyMap::new(p("x+y"), p("x-2*y")).unwrap());

    assert!(basic_set_transition((&p("x^4"), &b6), (&a4, &b6)).is_err());
}

#[test]
fn classes_by_degree() {
    assert_eq!(classes_of_degree(2), vec![GroupKind::Cyclic { m: 2 }]);
    assert_eq!(classes_of_degree(7), vec![GroupKind::Cyclic { m: 7 }]);
    let c24 = classes_of_degree(24);
    for kind in [
        GroupKind::Cyclic { m: 24 },
        GroupKind::Product { m: 2, n: 12 },
        GroupKind::Product { m: 3, n: 8 },
        GroupKind::Product { m: 4, n: 6 },
        GroupKind::Imprimitive { m: 6, p: 3 },
        GroupKind::Imprimitive { m: 12, p: 12 },
        exc(4),
    ] {
        assert!(c24.contains(&kind), "{kind}");
    }
    for d in 2..=100 {
        for kind in classes_of_degree(d) {
            assert_eq!(kind.order(), d);
        }
    }
    // oracle: brute-force scan of the imprimitive parameters
    for d in 2..=100u64 {
        let mut expected: Vec<(u32, u32)> = Vec::new();
        for m in 1..=100u32 {
            for p in 1..=m {
                if m % p == 0 && 2 * (m as u64).pow(2) / p as u64 == d && 2 * (m as u64).pow(2) % p as u64 == 0 && (m, p) != (2, 2) && m >= 2 {
                    expected.push((m, p));
                }
            }
        }
        let got: Vec<(u32, u32)> = classes_of_degree(d)
            .into_iter()
            .filter_map(|k| match k {
                GroupKind::Imprimitive { m, p } => Some((m, p)),
                _ => None,
            })
            .collect();
        assert_eq!(got, expected, "d = {d}");
    }
}
