//! Invariant polynomials, quotient maps and the table of Galois coverings.

use serde::Serialize;

use super::catalog::{build_group, GroupKind, GroupRecord};
use super::enumerate::GroupElements;
use super::matrix::Matrix2;
use super::RefGroupError;
use crate::groebner::Budget;
use crate::maps::{verify_branch, BranchReport, PlaneAutomorphism, PolyMap};
use crate::numberfield::{lcm_u32, CycloNumber, Rational};
use crate::parser::{parse_poly, parse_poly_auto};
use crate::polyring::{hessian_det, jacobian_det, Monomial, MultiPoly, Ring};

/// The seven polyhedral invariants, in parser syntax.
pub const SEED_INVARIANTS: [(&str, &str); 7] = [
    ("a4", "x^4+(4*zeta(6)-2)*x^2*y^2+y^4"),
    ("b6", "x^5*y-x*y^5"),
    ("c8", "x^8+14*x^4*y^4+y^8"),
    ("d12", "x^12-33*x^8*y^4-33*x^4*y^8+y^12"),
    ("e12", "x^11*y+11*x^6*y^6-x*y^11"),
    ("f20", "x^20-228*x^15*y^5+494*x^10*y^10+228*x^5*y^15+y^20"),
    ("g30", "x^30+522*x^25*y^5-10005*x^20*y^10-10005*x^10*y^20-522*x^5*y^25+y^30"),
];

/// The seed invariant `name` in the plane ring with the given conductor.
pub fn seed_invariant(name: &str, conductor: u32) -> MultiPoly {
    let text = SEED_INVARIANTS
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("unknown invariant {name}"))
        .1;
    let ring = Ring::of(&["x", "y"], lcm_u32(conductor, if name == "a4" { 6 } else { 1 }));
    parse_poly(text, &ring).expect("seed invariants parse")
}

/// The linear substitution v ↦ g·v applied to `p`.
pub fn act(g: &Matrix2, p: &MultiPoly) -> MultiPoly {
    let n = lcm_u32(g.conductor(), p.conductor());
    let p = p.embed_conductor(n).expect("conductor divides lcm");
    let g = g.embed(n).expect("conductor divides lcm");
    let r = p.ring().clone();
    let e = |i, j| r.constant(g.entry(i, j).clone());
    let x = &(&e(0, 0) * &r.var(0)) + &(&e(0, 1) * &r.var(1));
    let y = &(&e(1, 0) * &r.var(0)) + &(&e(1, 1) * &r.var(1));
    p.substitute(&[x, y]).expect("plane polynomial")
}

/// Invariance under every generator, hence under the whole group.
pub fn is_invariant(els: &GroupElements, p: &MultiPoly) -> bool {
    is_invariant_under(&els.generators, p)
}

pub fn is_invariant_under(generators: &[Matrix2], p: &MultiPoly) -> bool {
    generators.iter().all(|g| {
        let q = act(g, p);
        q == p.embed_conductor(q.conductor()).expect("conductor divides lcm")
    })
}

/// Average of `p` over the group.
pub fn reynolds(els: &GroupElements, p: &MultiPoly) -> MultiPoly {
    let n = lcm_u32(els.elements()[0].conductor(), p.conductor());
    let p = p.embed_conductor(n).expect("conductor divides lcm");
    let mut sum = p.ring().zero();
    for g in els.elements() {
        sum = &sum + &act(g, &p);
    }
    sum.scale_rational(&Rational::new(1, els.len() as i64))
}

/// Scales `p` so that its lex-first monomial has coefficient 1.
pub fn lex_normalize(p: &MultiPoly) -> MultiPoly {
    let Some((_, c)) = p.terms().iter().max_by(|a, b| a.0.exps().cmp(b.0.exps())) else {
        return p.clone();
    };
    p.scale(&c.inv().expect("nonzero coefficient"))
}

/// Equality up to a nonzero scalar.
pub fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    let n = lcm_u32(a.conductor(), b.conductor());
    let a = a.embed_conductor(n).expect("conductor divides lcm");
    let b = b.embed_conductor(n).expect("conductor divides lcm");
    !a.is_zero() && lex_normalize(&a) == lex_normalize(&b)
}

/// The five classical identities linking the seeds, each up to a scalar.
pub fn covariant_identities() -> Vec<(&'static str, bool)> {
    let s = |name| seed_invariant(name, 1);
    let a4 = seed_invariant("a4", 6);
    let hess = |p: &MultiPoly| hessian_det(p).expect("plane polynomial");
    let jac = |p: &MultiPoly, q: &MultiPoly| jacobian_det(p, q).expect("plane polynomial");
    vec![
        ("Hessian(b6) ~ c8", proportional(&hess(&s("b6")), &s("c8"))),
        ("Jacobian(b6, c8) ~ d12", proportional(&jac(&s("b6"), &s("c8")), &s("d12"))),
        ("Jacobian(a4, Hessian(a4)) ~ b6", proportional(&jac(&a4, &hess(&a4)), &s("b6"))),
        ("Hessian(e12) ~ f20", proportional(&hess(&s("e12")), &s("f20"))),
        ("Jacobian(e12, f20) ~ g30", proportional(&jac(&s("e12"), &s("f20")), &s("g30"))),
    ]
}

/// (seed, power) pairs for φ₁ and φ₂ of an exceptional group.
pub fn exceptional_basic_set(number: u32) -> [(&'static str, u32); 2] {
    match number {
        4 => [("a4", 1), ("b6", 1)],
        5 => [("b6", 1), ("a4", 3)],
        6 => [("a4", 1), ("b6", 2)],
        7 => [("b6", 2), ("a4", 3)],
        8 => [("c8", 1), ("d12", 1)],
        9 => [("c8", 1), ("d12", 2)],
        10 => [("d12", 1), ("c8", 3)],
        11 => [("d12", 2), ("c8", 3)],
        12 => [("b6", 1), ("c8", 1)],
        13 => [("c8", 1), ("b6", 2)],
        14 => [("b6", 1), ("d12", 2)],
        15 => [("b6", 2), ("d12", 2)],
        16 => [("f20", 1), ("g30", 1)],
        17 => [("f20", 1), ("g30", 2)],
        18 => [("g30", 1), ("f20", 3)],
        19 => [("g30", 2), ("f20", 3)],
        20 => [("e12", 1), ("g30", 1)],
        21 => [("e12", 1), ("g30", 2)],
        22 => [("e12", 1), ("f20", 1)],
        _ => panic!("no exceptional group G{number}"),
    }
}

/// The basic set of invariants listed for the group, checked for
/// invariance, independence and the degree condition.
///
/// The result lives over the field of its own coefficients, which is
/// usually much smaller than the field of the group.
pub fn basic_invariants(group: &GroupRecord) -> Result<(MultiPoly, MultiPoly), RefGroupError> {
    let r = Ring::of(&["x", "y"], 1);
    let (x, y) = (r.var(0), r.var(1));
    let (phi1, phi2) = match group.kind {
        GroupKind::Cyclic { m } => (x, y.pow(m)),
        GroupKind::Product { m, n } => (x.pow(m), y.pow(n)),
        GroupKind::Imprimitive { m, p } => ((&x * &y).pow(m / p), &x.pow(m) + &y.pow(m)),
        GroupKind::Exceptional { number } => {
            let [(a, i), (b, j)] = exceptional_basic_set(number);
            (seed_invariant(a, 1).pow(i), seed_invariant(b, 1).pow(j))
        }
    };
    let fail = |what: &str| RefGroupError::Inconsistent(format!("{}: {what}", group.kind));
    if !is_invariant_under(&group.generators, &phi1) || !is_invariant_under(&group.generators, &phi2) {
        return Err(fail("basic set is not invariant"));
    }
    let m = lcm_u32(phi1.conductor(), phi2.conductor());
    let phi1 = phi1.embed_conductor(m).expect("conductor divides lcm");
    let phi2 = phi2.embed_conductor(m).expect("conductor divides lcm");
    if jacobian_det(&phi1, &phi2).expect("plane polynomials").is_zero() {
        return Err(fail("basic set is algebraically dependent"));
    }
    let degs = phi1.total_degree().unwrap_or(0) as u64 * phi2.total_degree().unwrap_or(0) as u64;
    if degs != group.expected_order {
        return Err(fail(&format!("degree product {degs} differs from the order")));
    }
    Ok((phi1, phi2))
}

pub fn quotient_map(group: &GroupRecord) -> Result<PolyMap, RefGroupError> {
    let (a, b) = basic_invariants(group)?;
    Ok(PolyMap::new(a, b).expect("same plane ring"))
}

/// Finds Φ with φ = Φ∘ψ for two basic sets of the same group.
///
/// Both pairs must be homogeneous with deg φᵢ = deg ψᵢ and deg ψ₁ ≤ deg ψ₂.
/// Φ is diagonal when deg ψ₁ ∤ deg ψ₂, triangular (a x, c x^s + d y) when
/// deg ψ₂ = s·deg ψ₁ with s > 1, and linear when the degrees agree.
pub fn basic_set_transition(
    phi: (&MultiPoly, &MultiPoly),
    psi: (&MultiPoly, &MultiPoly),
) -> Result<PlaneAutomorphism, RefGroupError> {
    let n = [phi.0, phi.1, psi.0, psi.1].iter().fold(1, |acc, p| lcm_u32(acc, p.conductor()));
    let emb = |p: &MultiPoly| p.embed_conductor(n).expect("conductor divides lcm");
    let (f1, f2, g1, g2) = (emb(phi.0), emb(phi.1), emb(psi.0), emb(psi.1));
    let bad = |m: &str| RefGroupError::Inconsistent(format!("basic sets are not related: {m}"));
    let deg = |p: &MultiPoly| p.total_degree().unwrap_or(0);
    let (d1, d2) = (deg(&g1), deg(&g2));
    if deg(&f1) != d1 || deg(&f2) != d2 || d1 == 0 || d1 > d2 {
        return Err(bad("degree mismatch"));
    }
    let target = Ring::of(&["x", "y"], n);
    let (x, y) = (target.var(0), target.var(1));
    // φᵢ is a combination of the candidate monomials in ψ of matching degree.
    let candidates = |d: u32| -> Vec<(MultiPoly, MultiPoly)> {
        let mut out = vec![];
        if d == d1 {
            out.push((g1.clone(), x.clone()));
        } else if d % d1 == 0 {
            out.push((g1.pow(d / d1), x.pow(d / d1)));
        }
        if d == d2 {
            out.push((g2.clone(), y.clone()));
        }
        out
    };
    let mut images = Vec::new();
    for f in [&f1, &f2] {
        let cands = candidates(deg(f));
        let coeffs = solve_combination(f, &cands.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
            .ok_or_else(|| bad("no linear relation"))?;
        let mut img = target.zero();
        for (c, (_, mono)) in coeffs.iter().zip(&cands) {
            img = &img + &mono.scale(c);
        }
        images.push(img);
    }
    let map = PolyMap::new(images[0].clone(), images[1].clone()).expect("plane ring");
    let inverse = invert_transition(&map, d1, d2).ok_or_else(|| bad("transition is not invertible"))?;
    PlaneAutomorphism::with_inverse(map, inverse).map_err(|e| bad(&e.to_string()))
}

/// Solves f = Σ cᵢ·basisᵢ exactly; None when no solution exists.
fn solve_combination(f: &MultiPoly, basis: &[MultiPoly]) -> Option<Vec<CycloNumber>> {
    let n = f.conductor();
    let mut monos: Vec<Monomial> = f.terms().iter().map(|t| t.0).collect();
    for b in basis {
        monos.extend(b.terms().iter().map(|t| t.0));
    }
    monos.sort_by(|a, b| b.exps().cmp(a.exps()));
    monos.dedup();
    // augmented rows: one per monomial
    let k = basis.len();
    let mut rows: Vec<Vec<CycloNumber>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<CycloNumber> = basis.iter().map(|b| b.coefficient(m)).collect();
            row.push(f.coefficient(m));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().ok()?;
        for v in rows[r].iter_mut() {
            *v = v.try_mul(&inv).ok()?;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..=k {
                    let t = rows[r][j].try_mul(&factor).ok()?;
                    rows[i][j] = rows[i][j].try_sub(&t).ok()?;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![CycloNumber::zero(n); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][k].clone();
    }
    Some(sol)
}

/// Inverse of a diagonal, triangular or linear transition.
fn invert_transition(map: &PolyMap, d1: u32, d2: u32) -> Option<PolyMap> {
    let r = map.ring();
    let (x, y) = (r.var(0), r.var(1));
    let coeff = |p: &MultiPoly, e: [u32; 2]| p.coefficient(&Monomial::from_exps(&e));
    if d1 == d2 {
        let (a, b) = (coeff(&map.f1, [1, 0]), coeff(&map.f1, [0, 1]));
        let (c, d) = (coeff(&map.f2, [1, 0]), coeff(&map.f2, [0, 1]));
        let det = a.try_mul(&d).ok()?.try_sub(&b.try_mul(&c).ok()?).ok()?;
        let inv = det.inv().ok()?;
        let lin = |p: &CycloNumber, q: &CycloNumber| &x.scale(&p.try_mul(&inv).unwrap()) + &y.scale(&q.try_mul(&inv).unwrap());
        return PolyMap::new(lin(&d, &b.neg()), lin(&c.neg(), &a)).ok();
    }
    // (a x, c x^s + d y) with c = 0 unless s = d2/d1 is an integer
    let a = coeff(&map.f1, [1, 0]);
    let d = coeff(&map.f2, [0, 1]);
    let ia = a.inv().ok()?;
    let id = d.inv().ok()?;
    let x_inv = x.scale(&ia);
    let rest = &map.f2 - &y.scale(&d);
    let rest_inv = rest.substitute(&[x_inv.clone(), y.clone()]).ok()?;
    PolyMap::new(x_inv, (&y - &rest_inv).scale(&id)).ok()
}

/// The families of Galois coverings with their branch curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFamily {
    Cyclic,
    Product,
    Imprimitive,
    Exceptional,
}

/// One row of the table of Galois coverings: the group, its quotient map
/// and the printed branch curve.
#[derive(Debug, Clone, Serialize)]
pub struct Table4Row {
    pub id: String,
    pub family: RowFamily,
    pub group: GroupKind,
    pub branch: String,
}

impl Table4Row {
    /// Branch curve over the field of its coefficients.
    pub fn branch_poly(&self) -> MultiPoly {
        parse_poly_auto(&self.branch, &["x", "y"]).expect("printed branch curves parse")
    }
}

fn exceptional_branch(number: u32) -> &'static str {
    match number {
        4 => "x^3+(-24*zeta(6)+12)*y^2",
        5 => "y*(x^2+(1/(18*zeta(6))-1/36)*y)",
        6 => "y*(x^3+(-24*zeta(6)+12)*y^2)",
        7 => "x*y*(x+(1/(18*zeta(6))-1/36)*y)",
        8 | 16 => "y^2-x^3",
        9 | 17 => "y*(y-x^3)",
        10 | 18 => "y*(y-x^2)",
        11 | 19 => "x*y*(x-y)",
        12 => "y^3-108*x^4",
        13 => "y*(x^3-108*y^2)",
        14 => "y*(y+108*x^4)",
        15 => "x*y*(y+108*x^2)",
        20 => "y^2-1728*x^5",
        21 => "y*(y-1728*x^5)",
        22 => "y^3+1728*x^5",
        _ => panic!("no exceptional group G{number}"),
    }
}

/// The table rows: f_m for 2 ≤ m ≤ max_m, f_{m,n} for 2 ≤ m, n ≤ max_mn,
/// f_{m,p,2} for m ≤ max_m, then the nineteen exceptional maps.
pub fn table4_rows(max_m: u32, max_mn: u32) -> Vec<Table4Row> {
    let mut rows = Vec::new();
    for m in 2..=max_m {
        rows.push(Table4Row {
            id: format!("f_{m}"),
            family: RowFamily::Cyclic,
            group: GroupKind::Cyclic { m },
            branch: "y".into(),
        });
    }
    for m in 2..=max_mn {
        for n in 2..=max_mn {
            rows.push(Table4Row {
                id: format!("f_{m},{n}"),
                family: RowFamily::Product,
                group: GroupKind::Product { m, n },
                branch: "x*y".into(),
            });
        }
    }
    for m in 2..=max_m {
        for p in (1..=m).filter(|p| m % p == 0 && !(m == 2 && *p == 2)) {
            let branch = if p == m {
                format!("y^2-4*x^{p}")
            } else {
                format!("x*(y^2-4*x^{p})")
            };
            rows.push(Table4Row {
                id: format!("f_{m},{p},2"),
                family: RowFamily::Imprimitive,
                group: GroupKind::Imprimitive { m, p },
                branch,
            });
        }
    }
    for number in 4..=22 {
        rows.push(Table4Row {
            id: format!("f~{number}"),
            family: RowFamily::Exceptional,
            group: GroupKind::Exceptional { number },
            branch: exceptional_branch(number).into(),
        });
    }
    rows
}

/// Whether the full elimination tier is required for a row.
pub fn elimination_mandatory(row: &Table4Row) -> bool {
    match row.group {
        GroupKind::Cyclic { m } | GroupKind::Imprimitive { m, .. } => m <= 6,
        GroupKind::Product { m, n } => m <= 4 && n <= 4,
        GroupKind::Exceptional { number } => (4..=7).contains(&number) || number == 12,
    }
}

/// Outcome of checking one table row.
#[derive(Debug, Clone, Serialize)]
pub struct RowVerification {
    pub id: String,
    pub group: String,
    pub order: u64,
    pub degree_product: u64,
    pub map: String,
    pub claimed_branch: String,
    pub report: BranchReport,
}

impl RowVerification {
    pub fn failed(&self) -> bool {
        self.degree_product != self.order || self.report.failed()
    }
}

/// Checks one row: the quotient map has the right degrees and the printed
/// branch curve passes the requested tiers.
pub fn verify_table4_row(row: &Table4Row, full: bool, budget: Budget) -> Result<RowVerification, RefGroupError> {
    let group = build_group(row.group)?;
    let f = quotient_map(&group)?;
    let degree_product = f.f1.total_degree().unwrap_or(0) as u64 * f.f2.total_degree().unwrap_or(0) as u64;
    let claimed = row.branch_poly();
    let report = verify_branch(&f, &claimed, full, budget).map_err(|e| RefGroupError::Inconsistent(e.to_string()))?;
    Ok(RowVerification {
        id: row.id.clone(),
        group: row.group.to_string(),
        order: group.expected_order,
        degree_product,
        map: f.to_string(),
        claimed_branch: claimed.to_string(),
        report,
    })
}
