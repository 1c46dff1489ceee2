//! Singularities of affine plane curves.

use serde::Serialize;

use crate::groebner::{
    buchberger_with, local_quotient_dimension, mora_standard_basis, quotient_dimension, Budget, Dimension,
    GroebnerError, Selection,
};
use crate::maps::{is_proper_with, MapError, PolyMap};
use crate::numberfield::Rational;
use crate::polyring::{bareiss_det, squarefree_part, Monomial, MonomialOrder, MultiPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("curve equation is not squarefree")]
    NotSquarefree,
    #[error("curve has total degree {0}, expected 1 or 2")]
    DegreeOutOfRange(u32),
    #[error("{which} map is not proper")]
    NotProper { which: &'static str },
    #[error("critical curve of the {which} map is singular away from the origin")]
    SingularElsewhere { which: &'static str },
    #[error("critical curve of the {which} map misses the origin")]
    CriticalMissesOrigin { which: &'static str },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorResult {
    /// `None` when the singularity is not isolated.
    pub value: Option<u64>,
    /// Size of the local standard basis.
    pub basis_size: usize,
    pub isolated: bool,
    pub mora_steps: u64,
}

/// Milnor number of `F = 0` at the origin.
pub fn milnor_at_origin(f: &MultiPoly) -> Result<MilnorResult, CurveError> {
    if !f.constant_coeff().is_zero() {
        return Err(CurveError::NotThroughOrigin);
    }
    let grads: Vec<MultiPoly> = (0..f.ring().nvars()).map(|v| f.derivative(v)).collect();
    let (sb, steps) = mora_standard_basis(f.ring(), &grads)?;
    let dim = local_quotient_dimension(&sb)?;
    Ok(MilnorResult {
        value: dim.finite(),
        basis_size: sb.basis()?.len(),
        isolated: dim.finite().is_some(),
        mora_steps: steps,
    })
}

/// Milnor number at the point `(a, b)`, by translating it to the origin.
pub fn milnor_at(f: &MultiPoly, point: &[Rational]) -> Result<MilnorResult, CurveError> {
    let r = f.ring();
    if point.len() != r.nvars() {
        return Err(PolyError::NotBivariate.into());
    }
    let images: Vec<MultiPoly> = point
        .iter()
        .enumerate()
        .map(|(i, c)| &r.var(i) + &r.constant_rational(c.clone()))
        .collect();
    milnor_at_origin(&f.substitute(&images)?)
}

/// Whether `F = 0` has a singular point other than the origin.
///
/// Compares the global length of ⟨F, F_x, F_y⟩ with its length at the origin.
pub fn singular_points_exist_outside_origin(f: &MultiPoly) -> Result<bool, CurveError> {
    if squarefree_part(f)? != f.monic() {
        return Err(CurveError::NotSquarefree);
    }
    let r = f.ring();
    let mut gens = vec![f.clone()];
    gens.extend((0..r.nvars()).map(|v| f.derivative(v)));
    let global = buchberger_with(r, &gens, MonomialOrder::DegRevLex, Budget::default(), Selection::Normal)?;
    let global = quotient_dimension(&global)?;
    let (sb, _) = mora_standard_basis(r, &gens)?;
    let local = local_quotient_dimension(&sb)?;
    Ok(match (global, local) {
        (Dimension::Finite(g), Dimension::Finite(l)) => g > l,
        // a one-dimensional singular locus cannot sit inside a point
        (Dimension::Infinite, _) => true,
        (Dimension::Finite(_), Dimension::Infinite) => false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveClass {
    Line,
    ConicOnePointAtInfinity,
    ConicTwoPointsAtInfinity,
    DegenerateConic,
    NotApplicable,
}

impl CurveClass {
    pub fn name(self) -> &'static str {
        match self {
            CurveClass::Line => "line",
            CurveClass::ConicOnePointAtInfinity => "conic-one-point-at-infinity",
            CurveClass::ConicTwoPointsAtInfinity => "conic-two-points-at-infinity",
            CurveClass::DegenerateConic => "degenerate-conic",
            CurveClass::NotApplicable => "not-applicable",
        }
    }
}

impl std::fmt::Display for CurveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies a plane curve of degree 1 or 2 by its projective closure.
pub fn classify_low_degree_curve(f: &MultiPoly) -> Result<CurveClass, CurveError> {
    let r = f.ring();
    if r.nvars() != 2 {
        return Ok(CurveClass::NotApplicable);
    }
    match f.total_degree() {
        Some(1) => return Ok(CurveClass::Line),
        Some(2) => {}
        d => return Err(CurveError::DegreeOutOfRange(d.unwrap_or(0))),
    }
    let c = |i: u32, j: u32| r.constant(f.coefficient(&Monomial::from_exps(&[i, j])));
    let (a, b, cc) = (c(2, 0), c(1, 1), c(0, 2));
    let (d, e, k) = (c(1, 0), c(0, 1), c(0, 0));
    // twice the symmetric matrix of the closure
    let m = vec![
        vec![a.scale_int(2), b.clone(), d.clone()],
        vec![b.clone(), cc.scale_int(2), e.clone()],
        vec![d, e, k.scale_int(2)],
    ];
    if bareiss_det(r, m).is_zero() {
        return Ok(CurveClass::DegenerateConic);
    }
    let disc = &b.pow(2) - &(&a * &cc).scale_int(4);
    Ok(if disc.is_zero() {
        CurveClass::ConicOnePointAtInfinity
    } else {
        CurveClass::ConicTwoPointsAtInfinity
    })
}

/// One-sided proof that two maps are not equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonEquivalenceCertificate {
    pub critical_f: String,
    pub critical_g: String,
    pub milnor_f: u64,
    pub milnor_g: u64,
    pub reason: String,
}

fn critical_curve_milnor(f: &PolyMap, which: &'static str) -> Result<(MultiPoly, Option<u64>), CurveError> {
    if !is_proper_with(f, Budget::default())? {
        return Err(CurveError::NotProper { which });
    }
    let c = squarefree_part(&f.jacobian())?.normalize();
    if !c.constant_coeff().is_zero() {
        return Err(CurveError::CriticalMissesOrigin { which });
    }
    if singular_points_exist_outside_origin(&c)? {
        return Err(CurveError::SingularElsewhere { which });
    }
    Ok((c.clone(), milnor_at_origin(&c)?.value))
}

/// Compares the Milnor numbers of the reduced critical curves at their
/// unique singular point.
///
/// Equivalent maps have critical curves related by a plane automorphism,
/// so different values rule out equivalence. Equal values prove nothing.
pub fn distinguish_by_milnor(f: &PolyMap, g: &PolyMap) -> Result<Option<NonEquivalenceCertificate>, CurveError> {
    let (cf, mf) = critical_curve_milnor(f, "first")?;
    let (cg, mg) = critical_curve_milnor(g, "second")?;
    Ok(match (mf, mg) {
        (Some(a), Some(b)) if a != b => Some(NonEquivalenceCertificate {
            critical_f: cf.to_string(),
            critical_g: cg.to_string(),
            milnor_f: a,
            milnor_g: b,
            reason: "Milnor numbers of the critical curves differ; an equivalence would carry one critical curve onto the other".into(),
        }),
        _ => None,
    })
}
