use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{MapError, PlaneAutomorphism, PolyMap};
use crate::groebner::{
    buchberger_with, elimination_ideal_with, finite_extension_test, quotient_dimension, Budget, Dimension,
    GroebnerError, Selection,
};
use crate::numberfield::{lcm_u32, Rational};
use crate::polyring::{
    content_in, divides, exact_div, squarefree_decomposition, squarefree_part, MonomialOrder, MultiPoly, Ring,
};

/// The named families of plane maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// (x, y³ + xy).
    Whitney,
    /// (x + y + xy, x^{d−1} y), d ≥ 2.
    Fd { d: u32 },
    /// (x, y^d − d xⁿ y), d ≥ 3, n ≥ 2.
    Fdn { d: u32, n: u32 },
    /// (x, Q(x, y)) with Q monic in y.
    SemiSeparate { q: MultiPoly },
    /// (x, P(y)).
    Separate { p: MultiPoly },
}

pub fn xy_ring(conductor: u32) -> Ring {
    Ring::of(&["x", "y"], conductor)
}

pub fn make_family(family: &Family) -> Result<PolyMap, MapError> {
    let r = xy_ring(1);
    let (x, y) = (r.var(0), r.var(1));
    let map = match family {
        Family::Whitney => PolyMap::new(x.clone(), &y.pow(3) + &(&x * &y))?,
        Family::Fd { d } => {
            if *d < 2 {
                return Err(MapError::Domain(format!("f_d needs d >= 2, got {d}")));
            }
            PolyMap::new(&(&x + &y) + &(&x * &y), &x.pow(d - 1) * &y)?
        }
        Family::Fdn { d, n } => {
            if *d < 3 || *n < 2 {
                return Err(MapError::Domain(format!("f_(d,n) needs d >= 3 and n >= 2, got ({d},{n})")));
            }
            PolyMap::new(x.clone(), &y.pow(*d) - &(&x.pow(*n) * &y).scale_int(*d as i64))?
        }
        Family::SemiSeparate { q } => {
            let q = to_xy(q)?;
            let d = q.degree_in(1);
            let lead = &q.coeffs_in(1)[d as usize];
            if d == 0 || !lead.is_constant() {
                return Err(MapError::Domain("Q must be monic in y".into()));
            }
            let q = q.scale(&lead.constant_coeff().inv()?);
            PolyMap::new(q.ring().var(0), q)?
        }
        Family::Separate { p } => {
            let p = to_xy(p)?;
            if p.involves(0) || p.degree_in(1) == 0 {
                return Err(MapError::Domain("P must be a nonconstant polynomial in y".into()));
            }
            PolyMap::new(p.ring().var(0), p)?
        }
    };
    Ok(map)
}

fn to_xy(p: &MultiPoly) -> Result<MultiPoly, MapError> {
    Ok(p.to_ring(&xy_ring(p.conductor()))?)
}

pub fn is_proper(f: &PolyMap) -> Result<bool, MapError> {
    is_proper_with(f, Budget::default())
}

pub fn is_proper_with(f: &PolyMap, budget: Budget) -> Result<bool, MapError> {
    Ok(finite_extension_test(f, budget)?)
}

/// Retry policy for the generic-point draws.
pub const DEGREE_RETRIES: usize = 5;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-60i64..=60);
    let d = rng.gen_range(1i64..=12);
    Rational::new(n, d)
}

/// Dimension of C[x, y]/⟨f1 − a, f2 − b⟩.
pub fn fiber_dimension(f: &PolyMap, a: &Rational, b: &Rational, budget: Budget) -> Result<Dimension, MapError> {
    let r = f.ring();
    let gens = [
        &f.f1 - &r.constant_rational(a.clone()),
        &f.f2 - &r.constant_rational(b.clone()),
    ];
    let ib = buchberger_with(r, &gens, MonomialOrder::DegRevLex, budget, Selection::Normal)?;
    Ok(quotient_dimension(&ib)?)
}

/// Number of preimages of a general point, from two random fibers that must agree.
pub fn topological_degree(f: &PolyMap, seed: u64, budget: Budget) -> Result<u64, MapError> {
    if !f.is_dominant() {
        return Err(MapError::Groebner(GroebnerError::ZeroJacobian));
    }
    if !is_proper_with(f, budget)? {
        return Err(MapError::NotProper);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEGREE_RETRIES {
        let p = (random_rational(&mut rng), random_rational(&mut rng));
        let q = (random_rational(&mut rng), random_rational(&mut rng));
        let d1 = fiber_dimension(f, &p.0, &p.1, budget)?;
        let d2 = fiber_dimension(f, &q.0, &q.1, budget)?;
        if let (Dimension::Finite(a), Dimension::Finite(b)) = (d1, d2) {
            if a == b {
                return Ok(a);
            }
        }
    }
    Err(MapError::DegreeDisagreement)
}

/// Principal generator J_f of the critical locus.
pub fn critical_ideal(f: &PolyMap) -> MultiPoly {
    f.jacobian()
}

/// Generators of the ideal of f(Crit f), in target coordinates named x, y.
pub fn branch_ideal(f: &PolyMap, budget: Budget) -> Result<Vec<MultiPoly>, MapError> {
    if !f.is_dominant() {
        return Err(MapError::Groebner(GroebnerError::ZeroJacobian));
    }
    let big = Ring::new(&["s", "t", "x", "y"], f.conductor())?;
    // source coordinates become s, t
    let rename = [big.var(0), big.var(1)];
    let j = f.jacobian().substitute(&rename)?;
    let f1 = f.f1.substitute(&rename)?;
    let f2 = f.f2.substitute(&rename)?;
    let gens = [j, &big.var(2) - &f1, &big.var(3) - &f2];
    let elim = elimination_ideal_with(&big, &gens, &[0, 1], budget, Selection::Normal)?;
    let target = xy_ring(f.conductor());
    elim.iter()
        .map(|g| Ok(g.to_ring(&target)?.normalize()))
        .collect()
}

/// Outcome of one verification tier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "details", rename_all = "kebab-case")]
pub enum TierStatus {
    Pass,
    Fail(String),
    SkippedBudget,
    NotRun,
}

impl TierStatus {
    pub fn passed(&self) -> bool {
        matches!(self, TierStatus::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, TierStatus::Fail(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    /// claimed(f1, f2) is divisible by the squarefree part of J_f.
    pub divisibility: TierStatus,
    /// claimed is squarefree.
    pub squarefree: TierStatus,
    /// Elimination reproduces ⟨claimed⟩ up to a unit.
    pub elimination: TierStatus,
}

impl BranchReport {
    pub fn failed(&self) -> bool {
        self.divisibility.failed() || self.squarefree.failed() || self.elimination.failed()
    }
}

/// Checks a claimed branch curve `claimed(x, y) = 0` for `f`.
///
/// The elimination tier runs only when `full` is set, and reports
/// skipped-budget when the budget runs out.
pub fn verify_branch(f: &PolyMap, claimed: &MultiPoly, full: bool, budget: Budget) -> Result<BranchReport, MapError> {
    let m = lcm_u32(f.conductor(), claimed.conductor());
    let f = f.embed(m)?;
    let claimed = to_xy(&claimed.embed_conductor(m)?)?;
    let j = f.jacobian();
    let sq_j = squarefree_part(&j)?;
    let pulled = f.pull_back(&claimed)?;
    let divisibility = if divides(&sq_j, &pulled)? {
        TierStatus::Pass
    } else {
        TierStatus::Fail(format!("{} does not vanish on the critical locus", claimed))
    };
    let squarefree = if squarefree_part(&claimed)? == claimed.monic() {
        TierStatus::Pass
    } else {
        TierStatus::Fail("claimed curve has a repeated factor".into())
    };
    let elimination = if !full {
        TierStatus::NotRun
    } else {
        match branch_ideal(&f, budget) {
            Ok(gens) if gens.len() == 1 && gens[0].is_associate(&claimed) => TierStatus::Pass,
            Ok(gens) => TierStatus::Fail(format!(
                "elimination gives [{}]",
                gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
            )),
            Err(MapError::Groebner(GroebnerError::ResourceExceeded(_))) => TierStatus::SkippedBudget,
            Err(e) => return Err(e),
        }
    };
    Ok(BranchReport {
        divisibility,
        squarefree,
        elimination,
    })
}

/// post ∘ f ∘ pre.
pub fn compose(f: &PolyMap, pre: &PlaneAutomorphism, post: &PlaneAutomorphism) -> Result<PolyMap, MapError> {
    Ok(post.map.after(&f.after(&pre.map)?)?)
}

/// Splits J_f = H1^{d−2}·H2 with H1, H2 nonconstant, when possible.
pub fn jacobian_power_factorization(f: &PolyMap, d: u32) -> Result<Option<(MultiPoly, MultiPoly)>, MapError> {
    if d < 3 {
        return Err(MapError::Domain(format!("need d >= 3, got {d}")));
    }
    let k = d - 2;
    let j = f.jacobian();
    if j.is_zero() {
        return Ok(None);
    }
    let r = j.ring().clone();
    let accept = |h1: MultiPoly| -> Option<(MultiPoly, MultiPoly)> {
        if h1.is_constant() {
            return None;
        }
        let h1 = h1.monic();
        let h2 = exact_div(&j, &h1.pow(k)).ok()?;
        (!h2.is_constant()).then_some((h1, h2))
    };
    let dec = squarefree_decomposition(&j)?;
    if k >= 2 {
        // largest H1 with H1^k | J
        let mut h1 = r.one();
        for (g, e) in &dec {
            h1 = &h1 * &g.pow(e / k);
        }
        return Ok(accept(h1));
    }
    // k = 1: any proper split works; prefer multiplicity classes, then contents
    if dec.len() >= 2 {
        if let Some(s) = accept(dec[0].0.pow(dec[0].1)) {
            return Ok(Some(s));
        }
    }
    for v in (0..r.nvars()).rev() {
        if let Some(s) = accept(content_in(&j, v)) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Checks that `relation(element, f1, f2) = 0`, the relation living in a
/// ring (X, s, t) whose first variable is the main one.
pub fn integral_relation_check(f: &PolyMap, element: &MultiPoly, relation: &MultiPoly) -> Result<bool, MapError> {
    if relation.ring().nvars() != 3 {
        return Err(MapError::Domain("relation must live in (X, s, t)".into()));
    }
    let deg = relation.degree_in(0);
    let lead = &relation.coeffs_in(0)[deg as usize];
    if deg == 0 || !lead.is_constant() {
        return Err(MapError::NonMonicRelation);
    }
    let m = lcm_u32(lcm_u32(f.conductor(), element.conductor()), relation.conductor());
    let f = f.embed(m)?;
    let element = element.embed_conductor(m)?.to_ring(f.ring())?;
    let rel = relation.embed_conductor(m)?;
    Ok(rel.substitute(&[element, f.f1, f.f2])?.is_zero())
}
