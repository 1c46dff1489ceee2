use polymap_core::groebner::Budget;
use polymap_core::maps::*;
use polymap_core::numberfield::Rational;
use polymap_core::parser::{parse_map, parse_poly};
use polymap_core::polyring::*;
use proptest::prelude::*;

fn xy() -> Ring {
    Ring::of(&["x", "y"], 1)
}

fn p(text: &str) -> MultiPoly {
    parse_poly(text, &xy()).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

#[test]
fn families_match_their_formulas() {
    assert_eq!(make_family(&Family::Whitney).unwrap(), parse_map("(x, y^3+x*y)").unwrap());
    assert_eq!(make_family(&Family::Fd { d: 3 }).unwrap(), parse_map("(x+y+x*y, x^2*y)").unwrap());
    assert_eq!(make_family(&Family::Fdn { d: 3, n: 2 }).unwrap(), parse_map("(x, y^3-3*x^2*y)").unwrap());
    assert!(matches!(make_family(&Family::Fd { d: 1 }), Err(MapError::Domain(_))));
    assert!(matches!(make_family(&Family::Fdn { d: 3, n: 1 }), Err(MapError::Domain(_))));
    let bad = Family::SemiSeparate { q: p("x*y^2+y") };
    assert!(matches!(make_family(&bad), Err(MapError::Domain(_))));
}

#[test]
fn properness() {
    assert!(!is_proper(&parse_map("(x+x^2*y, y)").unwrap()).unwrap());
    assert!(is_proper(&parse_map("(x, y^2)").unwrap()).unwrap());
    assert!(is_proper(&make_family(&Family::Fd { d: 4 }).unwrap()).unwrap());
    assert!(is_proper(&make_family(&Family::Whitney).unwrap()).unwrap());
    // (x, xy) contracts the y axis
    assert!(!is_proper(&parse_map("(x, x*y)").unwrap()).unwrap());
}

#[test]
fn degrees() {
    for d in 2..=4u32 {
        let f = PolyMap::new(xy().var(0), xy().var(1).pow(d)).unwrap();
        assert_eq!(topological_degree(&f, 7, Budget::default()).unwrap(), d as u64);
    }
    for d in 3..=5 {
        let f = make_family(&Family::Fd { d }).unwrap();
        assert_eq!(topological_degree(&f, 1, Budget::default()).unwrap(), d as u64);
    }
    let improper = parse_map("(x+x^2*y, y)").unwrap();
    assert!(matches!(topological_degree(&improper, 1, Budget::default()), Err(MapError::NotProper)));
}

#[test]
fn critical_loci() {
    assert_eq!(critical_ideal(&make_family(&Family::Whitney).unwrap()), p("3*y^2+x"));
    assert_eq!(critical_ideal(&parse_map("(x, y^2)").unwrap()), p("2*y"));
    let j = critical_ideal(&make_family(&Family::Fdn { d: 4, n: 3 }).unwrap());
    assert_eq!(j, p("4*y^3-4*x^3"));
    assert!(squarefree_part(&j).unwrap().is_associate(&p("y^3-x^3")));
}

#[test]
fn whitney_branch() {
    let f = make_family(&Family::Whitney).unwrap();
    let b = branch_ideal(&f, Budget::default()).unwrap();
    assert_eq!(b, vec![p("4*x^3+27*y^2")]);
    let rep = verify_branch(&f, &p("4*x^3+27*y^2"), true, Budget::default()).unwrap();
    assert!(rep.divisibility.passed() && rep.squarefree.passed() && rep.elimination.passed());
    let rep = verify_branch(&f, &p("x^3"), false, Budget::default()).unwrap();
    assert!(rep.divisibility.failed());
    assert!(rep.squarefree.failed());
    assert_eq!(rep.elimination, TierStatus::NotRun);
}

/// Oracle: the discriminant of Y^3 + pY + (q − t) in Y, scaled.
#[test]
fn semi_separate_cubic_branch() {
    for (pp, qq) in [("x", "0"), ("x^2-1", "x"), ("2*x+3", "x^2-x+1"), ("-x^2", "5")] {
        let q_x = p(qq);
        let p_x = p(pp);
        let map_q = &(&xy().var(1).pow(3) + &(&p_x * &xy().var(1))) + &q_x;
        let f = make_family(&Family::SemiSeparate { q: map_q }).unwrap();
        let b = branch_ideal(&f, Budget::default()).unwrap();
        assert_eq!(b.len(), 1);
        let y = xy().var(1);
        let delta = &q_x.pow(2).scale_int(27) + &p_x.pow(3).scale_int(4);
        let expected = &(&y.pow(2).scale_int(27) - &(&q_x * &y).scale_int(54)) + &delta;
        assert!(b[0].is_associate(&expected), "{} vs {}", b[0], expected);
        assert_eq!(b[0].degree_in(1), 2);
        assert!(b[0].coeffs_in(1)[2].is_constant());
    }
}

#[test]
fn fd_jacobian_and_integral_relations() {
    for d in 3..=5u32 {
        let f = make_family(&Family::Fd { d }).unwrap();
        let h2 = p(&format!("{}*x*y+x-{}*y", 2 - d as i64, d - 1));
        let expected = &xy().var(0).pow(d - 2) * &h2;
        assert_eq!(critical_ideal(&f), expected);
        let (h1, got_h2) = jacobian_power_factorization(&f, d).unwrap().unwrap();
        assert_eq!(h1, xy().var(0));
        assert_eq!(got_h2, h2);

        let rel_ring = Ring::of(&["X", "s", "t"], 1);
        let rel_x = parse_poly(&format!("X^{d}-s*X^{}+t*X+t", d - 1), &rel_ring).unwrap();
        assert!(integral_relation_check(&f, &xy().var(0), &rel_x).unwrap());
        let rel_y = parse_poly(&format!("X*(s-X)^{}-t*(1+X)^{}", d - 1, d - 1), &rel_ring).unwrap();
        assert!(integral_relation_check(&f, &xy().var(1), &rel_y).unwrap());
        // a wrong relation is rejected
        let wrong = parse_poly(&format!("X^{d}-s*X^{}+t", d - 1), &rel_ring).unwrap();
        assert!(!integral_relation_check(&f, &xy().var(0), &wrong).unwrap());
    }
    let rel_ring = Ring::of(&["Y", "s", "t"], 1);
    let sq = parse_map("(x, y^2)").unwrap();
    assert!(integral_relation_check(&sq, &xy().var(1), &parse_poly("Y^2-t", &rel_ring).unwrap()).unwrap());
    let non_monic = parse_poly("s*Y^2-t", &rel_ring).unwrap();
    assert!(matches!(
        integral_relation_check(&sq, &xy().var(1), &non_monic),
        Err(MapError::NonMonicRelation)
    ));
    assert_eq!(jacobian_power_factorization(&sq, 3).unwrap(), None);
}

#[test]
fn square_map_is_equivalent_to_f2() {
    let r = xy();
    let half = Rational::new(1, 2);
    let phi1 = PlaneAutomorphism::affine(&r, [half.clone(), half.clone(), half.clone(), -half, q(0), q(0)]).unwrap();
    let phi2 = PlaneAutomorphism::with_inverse(
        parse_map("(x^2+2*x-y, x^2-y)").unwrap(),
        parse_map("(1/2*x-1/2*y, 1/4*(x-y)^2-y)").unwrap(),
    )
    .unwrap();
    let f_tilde = parse_map("(x, y^2)").unwrap();
    assert_eq!(compose(&f_tilde, &phi1, &phi2).unwrap(), parse_map("(x+y+x*y, x*y)").unwrap());
}

#[test]
fn compose_basics() {
    let r = xy();
    let f = parse_map("(x, y^2)").unwrap();
    let id = PlaneAutomorphism::identity(&r);
    assert_eq!(compose(&f, &id, &id).unwrap(), f);
    let shear = PlaneAutomorphism::triangular(&r, q(1), &p("0"), q(1), q(0)).unwrap();
    assert_eq!(shear.map, PolyMap::identity(&r));
    let shift = PlaneAutomorphism::with_inverse(parse_map("(x, y+x)").unwrap(), parse_map("(x, y-x)").unwrap()).unwrap();
    assert_eq!(compose(&f, &shift, &id).unwrap(), parse_map("(x, (y+x)^2)").unwrap());
    assert!(matches!(
        PlaneAutomorphism::with_inverse(parse_map("(x, y+x)").unwrap(), parse_map("(x, y)").unwrap()),
        Err(MapError::NotInverse)
    ));
    assert!(matches!(
        PlaneAutomorphism::affine(&r, [q(1), q(2), q(2), q(4), q(0), q(0)]),
        Err(MapError::NotInvertible)
    ));
}

fn small_q() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| Rational::new(n, d))
}

fn automorphism() -> impl Strategy<Value = PlaneAutomorphism> {
    let affine = prop::array::uniform6(small_q()).prop_filter_map("singular", |c| PlaneAutomorphism::affine(&xy(), c).ok());
    let tri = (1i64..=3, -2i64..=2, -2i64..=2, prop_oneof![Just(-1i64), Just(1), Just(2)], -2i64..=2).prop_map(
        |(a, c1, c2, b, e)| {
            let py = &p("y").scale_int(c1) + &p("y^2").scale_int(c2);
            PlaneAutomorphism::triangular(&xy(), q(a), &py, q(b), q(e)).unwrap()
        },
    );
    prop_oneof![affine, tri]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn equivalence_invariance(phi1 in automorphism(), phi2 in automorphism(), which in 0usize..3) {
        let fam = [Family::Whitney, Family::Fd { d: 3 }, Family::Fdn { d: 3, n: 2 }];
        let f = make_family(&fam[which]).unwrap();
        let g = compose(&f, &phi1, &phi2).unwrap();
        prop_assert_eq!(is_proper(&g).unwrap(), is_proper(&f).unwrap());
        prop_assert_eq!(
            topological_degree(&g, 3, Budget::default()).unwrap(),
            topological_degree(&f, 3, Budget::default()).unwrap()
        );
        // chain rule for the critical loci
        let jf = critical_ideal(&f).substitute(&[phi1.map.f1.clone(), phi1.map.f2.clone()]).unwrap();
        let j1 = phi1.map.jacobian();
        let j2 = phi2.map.jacobian().substitute(&[f.f1.clone(), f.f2.clone()]).unwrap()
            .substitute(&[phi1.map.f1.clone(), phi1.map.f2.clone()]).unwrap();
        prop_assert_eq!(critical_ideal(&g), &(&j2 * &jf) * &j1);
        let bf = branch_ideal(&f, Budget::default()).unwrap();
        let bg = branch_ideal(&g, Budget::default()).unwrap();
        prop_assert_eq!(bf.len(), 1);
        prop_assert_eq!(bg.len(), 1);
        let moved = phi2.inverse.pull_back(&bf[0]).unwrap();
        prop_assert!(bg[0].is_associate(&moved));
    }

    #[test]
    fn power_factorization_identity(d in 3u32..7, a in -3i64..=3, n in 2u32..5) {
        let f = PolyMap::new(p("x"), &p(&format!("y^{d}")) + &p(&format!("x^{n}*y")).scale_int(a)).unwrap();
        if let Some((h1, h2)) = jacobian_power_factorization(&f, d).unwrap() {
            prop_assert_eq!(&h1.pow(d - 2) * &h2, f.jacobian());
            prop_assert!(!h1.is_constant() && !h2.is_constant());
        }
    }
}
