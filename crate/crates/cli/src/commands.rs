use rayon::prelude::*;
use serde_json::json;

use polymap_core::curves::{classify_low_degree_curve, distinguish_by_milnor, milnor_at, milnor_at_origin, CurveClass};
use polymap_core::groebner::{Budget, GroebnerError};
use polymap_core::maps::{
    branch_ideal, compose, critical_ideal, integral_relation_check, is_proper_with, jacobian_power_factorization,
    make_family, topological_degree, verify_branch, xy_ring, BranchReport, Family, MapError, PlaneAutomorphism,
    PolyMap, TierStatus,
};
use polymap_core::numberfield::Rational;
use polymap_core::parser::{parse_map, parse_poly, parse_poly_auto};
use polymap_core::polyring::Ring;
use polymap_core::refgroups::{
    basic_invariants, build_group, classes_of_degree, elimination_mandatory, enumerate, fingerprint, is_invariant,
    quotient_map, table4_rows, verify_presentation, verify_table4_row, GroupKind,
};

use crate::report::{RunReport, Status};
use crate::{Command, Global, Tier};

/// Largest m for f_m and f_{m,p,2} rows, and largest m, n for f_{m,n}.
pub const TABLE_MAX_M: u32 = 6;
pub const TABLE_MAX_MN: u32 = 4;

type Res<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn map_arg(text: &str) -> Res<PolyMap> {
    parse_map(text).map_err(|e| format!("cannot parse map `{text}`: {e}"))
}

fn over_budget(e: &MapError) -> bool {
    matches!(e, MapError::Groebner(GroebnerError::ResourceExceeded(_)))
}

pub fn run(cmd: &Command, g: &Global, argv: Vec<String>) -> Res<RunReport> {
    let budget = g.budget()?;
    let mut rep = RunReport::new(argv);
    match cmd {
        Command::Proper { map } => proper(&mut rep, &map_arg(map)?, budget)?,
        Command::Degree { map } => degree(&mut rep, &map_arg(map)?, g.seed, budget)?,
        Command::Branch { map, claimed, tier } => branch(&mut rep, &map_arg(map)?, claimed.as_deref(), *tier, budget)?,
        Command::Milnor { poly, at } => milnor(&mut rep, poly, at.as_deref())?,
        Command::Distinguish { map1, map2 } => distinguish(&mut rep, &map_arg(map1)?, &map_arg(map2)?)?,
        Command::Family { name, params } => family(&mut rep, name, params, g.seed, budget)?,
        Command::Group {
            spec,
            fingerprint,
            invariants,
            quotient,
            verify,
        } => group(&mut rep, spec, *fingerprint, *invariants, *quotient, *verify)?,
        Command::Classes { degree } => classes(&mut rep, *degree)?,
        Command::VerifyTable4 { tier } => verify_table4(&mut rep, *tier, budget)?,
        Command::VerifyTheoremA { d_max } => theorem_a(&mut rep, *d_max)?,
        Command::VerifyTheoremB { d, n_max } => theorem_b(&mut rep, *d, *n_max)?,
    }
    Ok(rep)
}

fn proper(rep: &mut RunReport, f: &PolyMap, budget: Budget) -> Res<()> {
    match is_proper_with(f, budget) {
        Ok(p) => {
            rep.pass("proper", if p { "proper" } else { "not proper" });
            rep.result = json!({ "map": f.to_string(), "proper": p });
        }
        Err(e) if over_budget(&e) => rep.check("proper", Status::SkippedBudget, e.to_string()),
        Err(e) => return Err(err(e)),
    }
    Ok(())
}

fn degree(rep: &mut RunReport, f: &PolyMap, seed: u64, budget: Budget) -> Res<()> {
    match topological_degree(f, seed, budget) {
        Ok(d) => {
            rep.pass("degree", format!("degree {d}"));
            rep.result = json!({ "map": f.to_string(), "degree": d, "seed": seed });
        }
        Err(e) if over_budget(&e) => rep.check("degree", Status::SkippedBudget, e.to_string()),
        Err(e) => return Err(err(e)),
    }
    Ok(())
}

fn tier_check(rep: &mut RunReport, name: &str, t: &TierStatus) {
    match t {
        TierStatus::Pass => rep.pass(name, ""),
        TierStatus::Fail(why) => rep.check(name, Status::Fail, why.clone()),
        TierStatus::SkippedBudget => rep.check(name, Status::SkippedBudget, "budget exhausted"),
        TierStatus::NotRun => {}
    }
}

fn report_tiers(rep: &mut RunReport, prefix: &str, r: &BranchReport) {
    tier_check(rep, &format!("{prefix}divisibility"), &r.divisibility);
    tier_check(rep, &format!("{prefix}squarefree"), &r.squarefree);
    tier_check(rep, &format!("{prefix}elimination"), &r.elimination);
}

fn branch(rep: &mut RunReport, f: &PolyMap, claimed: Option<&str>, tier: Tier, budget: Budget) -> Res<()> {
    rep.tier = Some(tier_name(tier).into());
    match claimed {
        Some(text) => {
            let c = parse_poly_auto(text, &["x", "y"]).map_err(|e| format!("cannot parse `{text}`: {e}"))?;
            let r = verify_branch(f, &c, tier == Tier::Full, budget).map_err(err)?;
            report_tiers(rep, "", &r);
            rep.result = json!({ "map": f.to_string(), "claimed": c.to_string(), "report": r });
        }
        None => match branch_ideal(f, budget) {
            Ok(gens) => {
                let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                rep.pass("branch", gens.join(", "));
                rep.result = json!({ "map": f.to_string(), "branch": gens });
            }
            Err(e) if over_budget(&e) => rep.check("branch", Status::SkippedBudget, e.to_string()),
            Err(e) => return Err(err(e)),
        },
    }
    Ok(())
}

fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Full => "full",
        Tier::Divisibility => "divisibility",
    }
}

fn milnor(rep: &mut RunReport, text: &str, at: Option<&str>) -> Res<()> {
    let f = parse_poly_auto(text, &["x", "y"]).map_err(|e| format!("cannot parse `{text}`: {e}"))?;
    let m = match at {
        None => milnor_at_origin(&f),
        Some(pt) => {
            let coords = pt
                .split(',')
                .map(|c| c.trim().parse::<Rational>().map_err(|_| format!("bad coordinate `{c}`")))
                .collect::<Res<Vec<_>>>()?;
            if coords.len() != 2 {
                return Err(format!("--at needs two coordinates, got {}", coords.len()));
            }
            milnor_at(&f, &coords)
        }
    }
    .map_err(err)?;
    let shown = m.value.map_or("infinite (non-isolated)".to_string(), |v| v.to_string());
    rep.pass("milnor", format!("mu = {shown}"));
    rep.result = json!({ "poly": f.to_string(), "at": at.unwrap_or("0,0"), "milnor": m });
    Ok(())
}

fn distinguish(rep: &mut RunReport, f: &PolyMap, g: &PolyMap) -> Res<()> {
    let cert = distinguish_by_milnor(f, g).map_err(err)?;
    match &cert {
        Some(c) => rep.pass("distinguish", format!("not equivalent: mu {} vs {}", c.milnor_f, c.milnor_g)),
        None => rep.pass("distinguish", "inconclusive: Milnor numbers agree"),
    }
    rep.result = json!({ "certificate": cert });
    Ok(())
}

fn param<'a>(params: &'a [String], key: &str) -> Res<&'a str> {
    params
        .iter()
        .filter_map(|p| p.split_once('='))
        .find(|(k, _)| k.trim() == key)
        .map(|(_, v)| v.trim())
        .ok_or_else(|| format!("missing parameter {key}=..."))
}

fn int_param(params: &[String], key: &str) -> Res<u32> {
    let v = param(params, key)?;
    v.parse().map_err(|_| format!("{key} must be a positive integer, got `{v}`"))
}

fn family(rep: &mut RunReport, name: &str, params: &[String], seed: u64, budget: Budget) -> Res<()> {
    let poly = |key: &str| -> Res<_> {
        let text = param(params, key)?;
        parse_poly_auto(text, &["x", "y"]).map_err(|e| format!("cannot parse `{text}`: {e}"))
    };
    let fam = match name {
        "whitney" => Family::Whitney,
        "fd" => Family::Fd { d: int_param(params, "d")? },
        "fdn" => Family::Fdn {
            d: int_param(params, "d")?,
            n: int_param(params, "n")?,
        },
        "semi_separate" => Family::SemiSeparate { q: poly("q")? },
        "separate" => Family::Separate { p: poly("p")? },
        other => return Err(format!("unknown family `{other}`; expected whitney, fd, fdn, semi_separate or separate")),
    };
    let f = make_family(&fam).map_err(err)?;
    rep.pass("map", f.to_string());
    rep.pass("jacobian", critical_ideal(&f).to_string());
    let mut result = json!({ "family": name, "map": f.to_string(), "jacobian": critical_ideal(&f).to_string() });
    let proper = match is_proper_with(&f, budget) {
        Ok(p) => p,
        Err(e) if over_budget(&e) => {
            rep.check("proper", Status::SkippedBudget, e.to_string());
            rep.result = result;
            return Ok(());
        }
        Err(e) => return Err(err(e)),
    };
    rep.pass("proper", if proper { "proper" } else { "not proper" });
    result["proper"] = json!(proper);
    if proper {
        match topological_degree(&f, seed, budget) {
            Ok(d) => {
                rep.pass("degree", format!("degree {d}"));
                result["degree"] = json!(d);
            }
            Err(e) if over_budget(&e) => rep.check("degree", Status::SkippedBudget, e.to_string()),
            Err(e) => return Err(err(e)),
        }
    }
    match branch_ideal(&f, budget) {
        Ok(gens) => {
            let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            rep.pass("branch", gens.join(", "));
            result["branch"] = json!(gens);
        }
        Err(e) if over_budget(&e) => rep.check("branch", Status::SkippedBudget, e.to_string()),
        Err(e) => return Err(err(e)),
    }
    rep.result = result;
    Ok(())
}

fn group(rep: &mut RunReport, spec: &str, fp: bool, inv: bool, quo: bool, verify: bool) -> Res<()> {
    let kind: GroupKind = spec.parse().map_err(err)?;
    let g = build_group(kind).map_err(err)?;
    let fp = fp || !(inv || quo || verify);
    let mut result = json!({ "group": g.label(), "expected_order": g.expected_order, "degrees": [g.degrees.0, g.degrees.1] });
    if fp || verify {
        let els = enumerate(&g).map_err(err)?;
        let print = fingerprint(&els);
        if fp {
            rep.pass(
                "fingerprint",
                format!("order {}, center {}, involutions {}", print.order, print.center_order, print.involutions()),
            );
        }
        if verify {
            rep.expect(
                "order",
                print.order == g.expected_order,
                format!("{} elements, expected {}", print.order, g.expected_order),
            );
            if let Some(row) = g.exceptional {
                rep.expect("presentation", verify_presentation(&g), format!("k = {}", row.k));
                rep.expect(
                    "center",
                    print.center_order == row.k as u64 && 2 * print.center_order < print.order,
                    format!("center order {}, k = {}", print.center_order, row.k),
                );
            }
            let (a, b) = basic_invariants(&g).map_err(err)?;
            let ok = is_invariant(&els, &a) && is_invariant(&els, &b);
            rep.expect("invariants", ok, format!("degrees {:?} and {:?}", a.total_degree(), b.total_degree()));
        }
        result["fingerprint"] = json!(print);
    }
    if inv {
        let (a, b) = basic_invariants(&g).map_err(err)?;
        rep.pass("invariants", format!("{a}, {b}"));
        result["invariants"] = json!([a.to_string(), b.to_string()]);
    }
    if quo {
        let f = quotient_map(&g).map_err(err)?;
        rep.pass("quotient", f.to_string());
        result["quotient"] = json!(f.to_string());
    }
    rep.result = result;
    Ok(())
}

fn classes(rep: &mut RunReport, d: u64) -> Res<()> {
    if d < 2 {
        return Err(format!("--degree must be at least 2, got {d}"));
    }
    let kinds: Vec<String> = classes_of_degree(d).iter().map(|k| k.to_string()).collect();
    rep.pass("classes", format!("{} classes: {}", kinds.len(), kinds.join(" ")));
    rep.result = json!({ "degree": d, "classes": kinds });
    Ok(())
}

fn verify_table4(rep: &mut RunReport, tier: Tier, budget: Budget) -> Res<()> {
    rep.tier = Some(tier_name(tier).into());
    let rows = table4_rows(TABLE_MAX_M, TABLE_MAX_MN);
    // rows run in parallel; collect keeps table order
    let results: Vec<_> = rows
        .par_iter()
        .map(|row| verify_table4_row(row, tier == Tier::Full, budget))
        .collect();
    let mut out = Vec::new();
    for (row, res) in rows.iter().zip(results) {
        let v = res.map_err(|e| format!("{}: {e}", row.id))?;
        rep.expect(
            format!("{} degrees", v.id),
            v.degree_product == v.order,
            format!("{} vs |{}| = {}", v.degree_product, v.group, v.order),
        );
        let mut r = v.report.clone();
        // optional rows never fail on elimination, they only skip
        if !elimination_mandatory(row) && r.elimination.failed() {
            r.elimination = TierStatus::SkippedBudget;
        }
        report_tiers(rep, &format!("{} ", v.id), &r);
        out.push(json!({
            "id": v.id,
            "group": v.group,
            "order": v.order,
            "map": v.map,
            "claimed_branch": v.claimed_branch,
            "mandatory": elimination_mandatory(row),
            "report": r,
        }));
    }
    rep.result = json!({ "rows": out });
    Ok(())
}

fn theorem_a(rep: &mut RunReport, d_max: u32) -> Res<()> {
    if d_max < 3 {
        return Err(format!("--d-max must be at least 3, got {d_max}"));
    }
    let r = xy_ring(1);
    let rel_ring = Ring::of(&["X", "s", "t"], 1);
    let rel = |t: String| parse_poly(&t, &rel_ring).map_err(err);
    let mut rows = Vec::new();
    for d in 3..=d_max {
        let f = make_family(&Family::Fd { d }).map_err(err)?;
        let h2 = parse_poly(&format!("{}*x*y+x-{}*y", 2 - d as i64, d - 1), &r).map_err(err)?;
        let j = critical_ideal(&f);
        rep.expect(format!("f_{d} jacobian"), j == &r.var(0).pow(d - 2) * &h2, j.to_string());
        let split = jacobian_power_factorization(&f, d).map_err(err)?;
        let split_ok = split.as_ref().is_some_and(|(a, b)| *a == r.var(0) && *b == h2);
        rep.expect(format!("f_{d} factorization"), split_ok, format!("H1 = x, H2 = {h2}"));
        let rx = rel(format!("X^{d}-s*X^{}+t*X+t", d - 1))?;
        let ry = rel(format!("X*(s-X)^{}-t*(1+X)^{}", d - 1, d - 1))?;
        let ok_x = integral_relation_check(&f, &r.var(0), &rx).map_err(err)?;
        let ok_y = integral_relation_check(&f, &r.var(1), &ry).map_err(err)?;
        rep.expect(format!("f_{d} relation for x"), ok_x, rx.to_string());
        rep.expect(format!("f_{d} relation for y"), ok_y, ry.to_string());
        let c1 = classify_low_degree_curve(&r.var(0)).map_err(err)?;
        let c2 = classify_low_degree_curve(&h2).map_err(err)?;
        rep.expect(format!("f_{d} H1 type"), c1 == CurveClass::Line, c1.name());
        rep.expect(format!("f_{d} H2 type"), c2 == CurveClass::ConicTwoPointsAtInfinity, c2.name());
        let proper = is_proper_with(&f, Budget::default()).map_err(err)?;
        rep.expect(format!("f_{d} proper"), proper, "");
        let deg = topological_degree(&f, 1, Budget::default()).map_err(err)?;
        rep.expect(format!("f_{d} degree"), deg == d as u64, format!("degree {deg}"));
        rows.push(json!({ "d": d, "jacobian": j.to_string(), "h2": h2.to_string(), "degree": deg }));
    }
    // f_2 = Φ2 ∘ (x, y²) ∘ Φ1
    let phi1 = PlaneAutomorphism::with_inverse(map_arg("(1/2*x+1/2*y, 1/2*x-1/2*y)")?, map_arg("(x+y, x-y)")?).map_err(err)?;
    let phi2 = PlaneAutomorphism::with_inverse(map_arg("(x^2+2*x-y, x^2-y)")?, map_arg("(1/2*x-1/2*y, 1/4*(x-y)^2-y)")?)
        .map_err(err)?;
    let lhs = compose(&map_arg("(x, y^2)")?, &phi1, &phi2).map_err(err)?;
    rep.expect("f_2 equivalent to (x, y^2)", lhs == map_arg("(x+y+x*y, x*y)")?, lhs.to_string());
    rep.result = json!({ "rows": rows });
    Ok(())
}

fn theorem_b(rep: &mut RunReport, d: u32, n_max: u32) -> Res<()> {
    if d < 3 || n_max < 3 {
        return Err(format!("need d >= 3 and n-max >= 3, got d = {d}, n-max = {n_max}"));
    }
    let mut certs = Vec::new();
    for n in 2..n_max {
        for m in n + 1..=n_max {
            let f = make_family(&Family::Fdn { d, n }).map_err(err)?;
            let g = make_family(&Family::Fdn { d, n: m }).map_err(err)?;
            let name = format!("f_{d},{n} vs f_{d},{m}");
            let expect = ((d - 2) * (n - 1)) as u64;
            let expect_g = ((d - 2) * (m - 1)) as u64;
            match distinguish_by_milnor(&f, &g).map_err(err)? {
                Some(c) => {
                    let ok = c.milnor_f == expect && c.milnor_g == expect_g;
                    rep.expect(&name, ok, format!("mu {} vs {}", c.milnor_f, c.milnor_g));
                    certs.push(json!({ "d": d, "n": n, "m": m, "certificate": c }));
                }
                None => rep.check(&name, Status::Fail, "Milnor numbers agree"),
            }
        }
    }
    rep.result = json!({ "certificates": certs });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_looked_up_by_key() {
        let ps = vec!["d=3".to_string(), "q = y^3+x*y".to_string()];
        assert_eq!(param(&ps, "q").unwrap(), "y^3+x*y");
        assert_eq!(int_param(&ps, "d").unwrap(), 3);
        assert!(param(&ps, "n").is_err());
    }
}
