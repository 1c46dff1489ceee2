//! End-to-end acceptance suite. Every criterion runs even when an earlier one
//! fails; one PASS/FAIL line is printed per criterion and the test fails if
//! any line says FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polymap_core::curves::*;
use polymap_core::groebner::*;
use polymap_core::maps::Family;
use polymap_core::maps::*;
use polymap_core::numberfield::Rational;
use polymap_core::parser::*;
use polymap_core::polyring::*;
use polymap_core::refgroups::*;

// pinned tolerances
const PROPERNESS_LIMIT: Duration = Duration::from_secs(5);
const F4_DEGREE_LIMIT: Duration = Duration::from_secs(60);
const CATALOG_LIMIT: Duration = Duration::from_secs(180);
const RESULTANT_PAIRS: usize = 50;
const AUTOMORPHISM_PAIRS: usize = 20;
const TABLE_MAX_M: u32 = 6;
const TABLE_MAX_MN: u32 = 4;

type Outcome = Result<String, String>;

fn xy() -> Ring {
    Ring::of(&["x", "y"], 1)
}

fn p(text: &str) -> MultiPoly {
    parse_poly_auto(text, &["x", "y"]).unwrap()
}

fn map(text: &str) -> PolyMap {
    parse_map(text).unwrap()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn run(n: u32, title: &str, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match &out {
        Ok(d) => println!("criterion {n:>2} PASS  {title} ({secs:.1}s): {d}"),
        Err(d) => println!("criterion {n:>2} FAIL  {title} ({secs:.1}s): {d}"),
    }
    out.is_ok()
}

fn c1_properness() -> Outcome {
    let start = Instant::now();
    ensure(!is_proper(&map("(x+x^2*y, y)")).unwrap(), "(x+x^2*y, y) reported proper")?;
    let mut proper = vec![map("(x, y^2)"), make_family(&Family::Whitney).unwrap()];
    for d in 3..=5 {
        for n in 2..=4 {
            proper.push(make_family(&Family::Fdn { d, n }).unwrap());
        }
    }
    for d in 2..=5 {
        proper.push(make_family(&Family::Fd { d }).unwrap());
    }
    for f in &proper {
        ensure(is_proper(f).unwrap(), format!("{f} reported not proper"))?;
    }
    let t = start.elapsed();
    ensure(t < PROPERNESS_LIMIT, format!("took {t:?}"))?;
    Ok(format!("{} proper maps and 1 non-proper map in {:.2}s", proper.len(), t.as_secs_f64()))
}

fn c2_degree() -> Outcome {
    let b = Budget::default();
    ensure(topological_degree(&map("(x, y^2)"), 1, b).unwrap() == 2, "(x, y^2)")?;
    for d in 3..=5u64 {
        let f = make_family(&Family::Fd { d: d as u32 }).unwrap();
        let got = topological_degree(&f, 1, b).unwrap();
        ensure(got == d, format!("f_{d} has degree {got}"))?;
    }
    let f4 = quotient_map(&build_group(GroupKind::Exceptional { number: 4 }).unwrap()).unwrap();
    let start = Instant::now();
    match topological_degree(&f4, 1, b) {
        Ok(deg) => {
            let t = start.elapsed();
            ensure(deg == 24, format!("f~4 has degree {deg}"))?;
            ensure(t < F4_DEGREE_LIMIT, format!("f~4 degree took {t:?}"))?;
            Ok(format!("2, 3, 4, 5 and f~4 -> 24 in {:.2}s", t.as_secs_f64()))
        }
        Err(MapError::Groebner(GroebnerError::ResourceExceeded(_))) => {
            let rep = verify_branch(&f4, &p("x^3+(-24*zeta(6)+12)*y^2"), false, b).unwrap();
            ensure(rep.divisibility.passed(), "f~4 skipped and divisibility failed")?;
            Ok("2, 3, 4, 5; f~4 skipped-budget with divisibility passing".into())
        }
        Err(e) => Err(format!("f~4: {e}")),
    }
}

fn small_poly_x(rng: &mut ChaCha8Rng, r: &Ring) -> MultiPoly {
    let x = r.var(0);
    let mut out = r.zero();
    for k in 0..=2 {
        out = &out + &x.pow(k).scale_int(rng.gen_range(-4..=4));
    }
    out
}

fn c3_branch() -> Outcome {
    let b = Budget::default();
    let w = branch_ideal(&make_family(&Family::Whitney).unwrap(), b).unwrap();
    ensure(w.len() == 1 && w[0].is_associate(&p("4*x^3+27*y^2")), format!("Whitney gives {w:?}"))?;

    let r = xy();
    let y = r.var(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..3 {
        let pp = small_poly_x(&mut rng, &r);
        let qq = small_poly_x(&mut rng, &r);
        let q_map = &(&y.pow(3) + &(&pp * &y)) + &qq;
        let f = make_family(&Family::SemiSeparate { q: q_map }).unwrap();
        let got = branch_ideal(&f, b).unwrap();
        // oracle: 27·disc_Y(Y³ + pY + q − t) up to sign, written out by hand
        let delta = &qq.pow(2).scale_int(27) + &pp.pow(3).scale_int(4);
        let expected = &(&y.pow(2).scale_int(27) - &(&qq * &y).scale_int(54)) + &delta;
        ensure(
            got.len() == 1 && got[0].is_associate(&expected),
            format!("p = {pp}, q = {qq}: got {got:?}, expected {expected}"),
        )?;
    }
    let f4 = quotient_map(&build_group(GroupKind::Exceptional { number: 4 }).unwrap()).unwrap();
    let g = branch_ideal(&f4, b).unwrap();
    let printed = p("x^3+(-24*zeta(6)+12)*y^2");
    ensure(g.len() == 1 && g[0].is_associate(&printed), format!("f~4 gives {g:?}"))?;
    ensure(format_poly(&g[0]) == "x^3 + (-24*zeta(6)+12)*y^2", format_poly(&g[0]))?;
    Ok("Whitney, three random semi-separate cubics, f~4".into())
}

fn c4_milnor() -> Outcome {
    let mut count = 0;
    for d in 2..=5u64 {
        for n in 2..=5u64 {
            let m = milnor_at_origin(&p(&format!("y^{d}-x^{n}"))).unwrap();
            ensure(m.value == Some((d - 1) * (n - 1)), format!("y^{d}-x^{n}: {:?}", m.value))?;
            count += 1;
        }
    }
    let mut certs = 0;
    for d in 3..=5u32 {
        for n in 2..4u32 {
            for m in n + 1..=4 {
                let f = make_family(&Family::Fdn { d, n }).unwrap();
                let g = make_family(&Family::Fdn { d, n: m }).unwrap();
                let c = distinguish_by_milnor(&f, &g).unwrap().ok_or(format!("f_{d},{n} vs f_{d},{m}: no certificate"))?;
                ensure(
                    c.milnor_f == ((d - 2) * (n - 1)) as u64 && c.milnor_g == ((d - 2) * (m - 1)) as u64,
                    format!("f_{d},{n} vs f_{d},{m}: {} vs {}", c.milnor_f, c.milnor_g),
                )?;
                certs += 1;
            }
        }
    }
    Ok(format!("{count} Milnor numbers, {certs} certificates"))
}

fn c5_theorem_a() -> Outcome {
    let r = xy();
    let rel_ring = Ring::of(&["X", "s", "t"], 1);
    for d in 3..=5u32 {
        let f = make_family(&Family::Fd { d }).unwrap();
        let h2 = p(&format!("{}*x*y+x-{}*y", 2 - d as i64, d - 1));
        ensure(critical_ideal(&f) == &r.var(0).pow(d - 2) * &h2, format!("J of f_{d}"))?;
        let rx = parse_poly(&format!("X^{d}-s*X^{}+t*X+t", d - 1), &rel_ring).unwrap();
        let ry = parse_poly(&format!("X*(s-X)^{}-t*(1+X)^{}", d - 1, d - 1), &rel_ring).unwrap();
        ensure(integral_relation_check(&f, &r.var(0), &rx).unwrap(), format!("x-relation for f_{d}"))?;
        ensure(integral_relation_check(&f, &r.var(1), &ry).unwrap(), format!("y-relation for f_{d}"))?;
        let c = classify_low_degree_curve(&h2).unwrap();
        ensure(c == CurveClass::ConicTwoPointsAtInfinity, format!("H2 of f_{d} is {c}"))?;
    }
    ensure(classify_low_degree_curve(&r.var(0)).unwrap() == CurveClass::Line, "x is not a line")?;
    let phi1 = PlaneAutomorphism::with_inverse(map("(1/2*x+1/2*y, 1/2*x-1/2*y)"), map("(x+y, x-y)")).unwrap();
    let phi2 = PlaneAutomorphism::with_inverse(map("(x^2+2*x-y, x^2-y)"), map("(1/2*x-1/2*y, 1/4*(x-y)^2-y)")).unwrap();
    let lhs = compose(&map("(x, y^2)"), &phi1, &phi2).unwrap();
    ensure(lhs == map("(x+y+x*y, x*y)"), format!("f_2 identity gives {lhs}"))?;
    Ok("d = 3, 4, 5 and the f_2 identity".into())
}

fn c6_catalog() -> Outcome {
    let start = Instant::now();
    let orders = [24u64, 72, 48, 144, 96, 192, 288, 576, 48, 96, 144, 288, 600, 1200, 1800, 3600, 360, 720, 240];
    for (number, &order) in (4..=22).zip(orders.iter()) {
        let g = build_group(GroupKind::Exceptional { number }).unwrap();
        let els = enumerate(&g).unwrap();
        ensure(els.len() as u64 == order, format!("G{number}: {} elements", els.len()))?;
        ensure(verify_presentation(&g), format!("G{number}: presentation"))?;
        let k = g.exceptional.unwrap().k as u64;
        let fp = fingerprint(&els);
        ensure(fp.center_order == k && 2 * k < order, format!("G{number}: center {}", fp.center_order))?;
    }
    let t = start.elapsed();
    ensure(t < CATALOG_LIMIT, format!("catalog took {t:?}"))?;
    Ok(format!("19 groups in {:.1}s", t.as_secs_f64()))
}

fn c7_involutions() -> Outcome {
    let count = |m, p| fingerprint(&enumerate(&build_group(GroupKind::Imprimitive { m, p }).unwrap()).unwrap()).involutions();
    for m in [2u32, 4, 6, 8] {
        for p in [1u32, 3, 5, 7].into_iter().filter(|p| m % p == 0) {
            ensure(count(m, p) == (m + 3) as u64, format!("G({m},{p},2)"))?;
        }
        let expected = if m % 4 == 0 { 2 * m + 3 } else { 2 * m + 1 };
        ensure(count(2 * m, 4) == expected as u64, format!("G({},4,2)", 2 * m))?;
    }
    Ok("m = 2, 4, 6, 8".into())
}

fn c8_invariants() -> Outcome {
    for (name, ok) in covariant_identities() {
        ensure(ok, format!("identity {name}"))?;
    }
    for (name, number) in [("a4", 4), ("b6", 12), ("c8", 8), ("d12", 8), ("e12", 20), ("f20", 16), ("g30", 16)] {
        let els = enumerate(&build_group(GroupKind::Exceptional { number }).unwrap()).unwrap();
        ensure(is_invariant(&els, &seed_invariant(name, 1)), format!("{name} under G{number}"))?;
    }
    let rows = table4_rows(TABLE_MAX_M, TABLE_MAX_MN);
    for row in &rows {
        let g = build_group(row.group).unwrap();
        let (a, b) = basic_invariants(&g).unwrap();
        let prod = a.total_degree().unwrap() as u64 * b.total_degree().unwrap() as u64;
        ensure(prod == g.expected_order, format!("{}: {prod} vs {}", row.id, g.expected_order))?;
    }
    Ok(format!("5 identities, 7 seeds, {} rows", rows.len()))
}

fn c9_table4() -> Outcome {
    let budget = Budget::default();
    let mut failures = Vec::new();
    let (mut full, mut skipped) = (0, 0);
    let rows = table4_rows(TABLE_MAX_M, TABLE_MAX_MN);
    for row in &rows {
        let mandatory = elimination_mandatory(row);
        let v = verify_table4_row(row, true, budget).unwrap();
        if !v.report.divisibility.passed() {
            failures.push(format!("{} divisibility", row.id));
        }
        match &v.report.elimination {
            TierStatus::Pass => full += 1,
            TierStatus::SkippedBudget if !mandatory => skipped += 1,
            TierStatus::SkippedBudget => failures.push(format!("{} elimination over budget", row.id)),
            TierStatus::Fail(why) if mandatory => failures.push(format!("{} elimination: {why}", row.id)),
            // non-mandatory rows may not fail; report it as a defect all the same
            TierStatus::Fail(why) => failures.push(format!("{} optional elimination: {why}", row.id)),
            TierStatus::NotRun => failures.push(format!("{} elimination not run", row.id)),
        }
    }
    if failures.is_empty() {
        Ok(format!("{} rows, {full} reproduced by elimination, {skipped} skipped-budget", rows.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn c10_classes() -> Outcome {
    ensure(classes_of_degree(2) == vec![GroupKind::Cyclic { m: 2 }], "degree 2")?;
    let mut total = 0;
    for d in 2..=100 {
        let cs = classes_of_degree(d);
        ensure(!cs.is_empty() && cs.iter().all(|k| k.order() == d), format!("degree {d}"))?;
        total += cs.len();
    }
    Ok(format!("{total} classes for d <= 100"))
}

fn random_pair(rng: &mut ChaCha8Rng, r: &Ring) -> (MultiPoly, MultiPoly) {
    // monic in y (variable 0), so the projection of the common zeros is closed
    let (y, x) = (r.var(0), r.var(1));
    let one = |rng: &mut ChaCha8Rng| {
        let deg_y = rng.gen_range(1..=2);
        let mut f = y.pow(deg_y);
        for i in 0..deg_y {
            for j in 0..=(2 - i.min(2)) {
                f = &f + &(&y.pow(i) * &x.pow(j)).scale_int(rng.gen_range(-3..=3));
            }
        }
        f
    };
    let a = one(rng);
    let b = one(rng);
    (a, b)
}

fn c11_properties() -> Outcome {
    let r = Ring::of(&["y", "x"], 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..RESULTANT_PAIRS {
        let (a, b) = random_pair(&mut rng, &r);
        let res = resultant(&a, &b, 0).unwrap();
        let elim = elimination_ideal(&r, &[a.clone(), b.clone()], &[0]).unwrap();
        if res.is_zero() {
            ensure(elim.is_empty(), format!("pair {i}: zero resultant, nonzero elimination"))?;
            continue;
        }
        ensure(elim.len() == 1, format!("pair {i}: elimination not principal"))?;
        let g = &elim[0];
        // the generator divides the resultant and they share their roots
        ensure(divides(g, &res).unwrap(), format!("pair {i}: {g} does not divide {res}"))?;
        ensure(
            squarefree_part(g).unwrap().is_associate(&squarefree_part(&res).unwrap()),
            format!("pair {i}: radicals differ for ({a}, {b})"),
        )?;
    }

    let xy = xy();
    let fams = [Family::Whitney, Family::Fd { d: 3 }, Family::Fdn { d: 3, n: 2 }];
    let q = |n: i64| Rational::from(n);
    for i in 0..AUTOMORPHISM_PAIRS {
        let f = make_family(&fams[i % 3]).unwrap();
        let mut coeffs = || rng.gen_range(-3i64..=3);
        let phi1 = loop {
            let c = [q(coeffs()), q(coeffs()), q(coeffs()), q(coeffs()), q(coeffs()), q(coeffs())];
            if let Ok(a) = PlaneAutomorphism::affine(&xy, c) {
                break a;
            }
        };
        let py = &xy.var(1).scale_int(coeffs()) + &xy.var(1).pow(2).scale_int(coeffs());
        let phi2 = PlaneAutomorphism::triangular(&xy, q(1 + coeffs().abs()), &py, q(if coeffs() >= 0 { 1 } else { -2 }), q(coeffs()))
            .unwrap();
        let g = compose(&f, &phi1, &phi2).unwrap();
        ensure(is_proper(&g).unwrap() == is_proper(&f).unwrap(), format!("pair {i}: properness"))?;
        let (df, dg) = (
            topological_degree(&f, 5, Budget::default()).unwrap(),
            topological_degree(&g, 5, Budget::default()).unwrap(),
        );
        ensure(df == dg, format!("pair {i}: degree {df} vs {dg}"))?;
        let bf = branch_ideal(&f, Budget::default()).unwrap();
        let bg = branch_ideal(&g, Budget::default()).unwrap();
        let moved = phi2.inverse.pull_back(&bf[0]).unwrap();
        ensure(bg.len() == 1 && bg[0].is_associate(&moved), format!("pair {i}: branch curves"))?;
    }

    let mut suite: Vec<MultiPoly> = SEED_INVARIANTS.iter().map(|(_, t)| p(t)).collect();
    for row in table4_rows(TABLE_MAX_M, TABLE_MAX_MN) {
        suite.push(row.branch_poly());
        let f = quotient_map(&build_group(row.group).unwrap()).unwrap();
        suite.push(f.f1);
        suite.push(f.f2);
    }
    for fam in [Family::Whitney, Family::Fd { d: 4 }, Family::Fdn { d: 5, n: 3 }] {
        let f = make_family(&fam).unwrap();
        suite.push(critical_ideal(&f));
        suite.extend([f.f1, f.f2]);
    }
    suite.push(p("0"));
    for s in &suite {
        let back = parse_poly(&format_poly(s), s.ring()).unwrap();
        ensure(&back == s, format!("round trip of {s}"))?;
    }
    Ok(format!(
        "{RESULTANT_PAIRS} resultant pairs, {AUTOMORPHISM_PAIRS} automorphism pairs, {} round trips",
        suite.len()
    ))
}

#[test]
fn acceptance() {
    let results = [
        run(1, "properness", c1_properness),
        run(2, "topological degree", c2_degree),
        run(3, "branch loci", c3_branch),
        run(4, "Milnor numbers and certificates", c4_milnor),
        run(5, "f_d package", c5_theorem_a),
        run(6, "exceptional catalog", c6_catalog),
        run(7, "involution counts", c7_involutions),
        run(8, "invariant theory", c8_invariants),
        run(9, "table branch curves", c9_table4),
        run(10, "classes by degree", c10_classes),
        run(11, "property suites", c11_properties),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
