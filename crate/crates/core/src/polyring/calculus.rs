use super::monomial::Monomial;
use super::poly::{MultiPoly, Ring};
use super::PolyError;
use crate::numberfield::Rational;

impl MultiPoly {
    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> MultiPoly {
        let terms = self
            .terms()
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let e = m.exp(v);
                let mut n = *m;
                n.set_exp(v, e - 1);
                (n, c.scale(&Rational::from_int(e as i64)))
            })
            .collect();
        // lowering one exponent can reorder terms under degrevlex
        MultiPoly::from_terms(self.ring(), terms)
    }

    pub fn derivative_named(&self, v: &str) -> Result<MultiPoly, PolyError> {
        Ok(self.derivative(self.ring().index(v)?))
    }

    /// Composition: replaces variable `i` with `images[i]`.
    ///
    /// All images share one ring; our coefficients are embedded into its
    /// field when needed.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.ring().nvars() {
            return Err(PolyError::MissingVariable(format!(
                "{} images for {} variables",
                images.len(),
                self.ring().nvars()
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.ring().clone();
        if images.iter().any(|p| *p.ring() != target) {
            return Err(PolyError::RingMismatch);
        }
        let src = self.embed_conductor(target.conductor())?;
        // powers[i][k] = images[i]^k, filled on demand
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in src.terms() {
            let mut t = target.constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitution by name; variables without an assignment must not occur.
    pub fn substitute_named(
        &self,
        target: &Ring,
        assignment: &[(&str, MultiPoly)],
    ) -> Result<MultiPoly, PolyError> {
        let mut images = Vec::with_capacity(self.ring().nvars());
        for (i, v) in self.ring().vars().iter().enumerate() {
            match assignment.iter().find(|(n, _)| n == v) {
                Some((_, p)) => images.push(p.to_ring(target)?),
                None if !self.involves(i) => images.push(target.zero()),
                None => return Err(PolyError::MissingVariable(v.clone())),
            }
        }
        self.substitute(&images)
    }

    /// Replaces variable `v` by `image`, leaving the others alone.
    pub fn substitute_var(&self, v: usize, image: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let images: Vec<MultiPoly> = (0..self.ring().nvars())
            .map(|i| if i == v { image.clone() } else { image.ring().var(i) })
            .collect();
        if image.ring().vars() != self.ring().vars() {
            return Err(PolyError::RingMismatch);
        }
        self.substitute(&images)
    }
}

/// ∂f₁/∂x·∂f₂/∂y − ∂f₁/∂y·∂f₂/∂x in the first two ring variables.
pub fn jacobian_det(f1: &MultiPoly, f2: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if f1.ring() != f2.ring() {
        return Err(PolyError::RingMismatch);
    }
    if f1.ring().nvars() < 2 {
        return Err(PolyError::NotBivariate);
    }
    Ok(&(&f1.derivative(0) * &f2.derivative(1)) - &(&f1.derivative(1) * &f2.derivative(0)))
}

/// Determinant of the matrix of second partials in the first two variables.
pub fn hessian_det(p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if p.ring().nvars() < 2 {
        return Err(PolyError::NotBivariate);
    }
    let px = p.derivative(0);
    let py = p.derivative(1);
    let pxx = px.derivative(0);
    let pxy = px.derivative(1);
    let pyy = py.derivative(1);
    Ok(&(&pxx * &pyy) - &(&pxy * &pxy))
}

/// `x^a y^b …` as a polynomial.
pub fn monomial_poly(ring: &Ring, exps: &[u32]) -> MultiPoly {
    ring.term(Monomial::from_exps(exps), ring.coeff_int(1))
}
