use std::fmt;

use super::MapError;
use crate::numberfield::{lcm_u32, Rational};
use crate::polyring::{jacobian_det, MultiPoly, PolyError, Ring};

/// A map (x, y) ↦ (f1, f2) of the plane. Source and target coordinates are
/// both called x, y in text form.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub f1: MultiPoly,
    pub f2: MultiPoly,
}

impl PolyMap {
    pub fn new(f1: MultiPoly, f2: MultiPoly) -> Result<PolyMap, PolyError> {
        if f1.ring() != f2.ring() {
            return Err(PolyError::RingMismatch);
        }
        if f1.ring().nvars() != 2 {
            return Err(PolyError::NotBivariate);
        }
        Ok(PolyMap { f1, f2 })
    }

    pub fn identity(ring: &Ring) -> PolyMap {
        PolyMap {
            f1: ring.var(0),
            f2: ring.var(1),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.f1.ring()
    }

    pub fn conductor(&self) -> u32 {
        self.ring().conductor()
    }

    pub fn components(&self) -> [&MultiPoly; 2] {
        [&self.f1, &self.f2]
    }

    pub fn embed(&self, m: u32) -> Result<PolyMap, PolyError> {
        Ok(PolyMap {
            f1: self.f1.embed_conductor(m)?,
            f2: self.f2.embed_conductor(m)?,
        })
    }

    pub fn jacobian(&self) -> MultiPoly {
        jacobian_det(&self.f1, &self.f2).expect("bivariate map")
    }

    pub fn is_dominant(&self) -> bool {
        !self.jacobian().is_zero()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &PolyMap) -> Result<PolyMap, PolyError> {
        let m = lcm_u32(self.conductor(), inner.conductor());
        let outer = self.embed(m)?;
        let inner = inner.embed(m)?;
        let images = [inner.f1.clone(), inner.f2.clone()];
        Ok(PolyMap {
            f1: outer.f1.substitute(&images)?,
            f2: outer.f2.substitute(&images)?,
        })
    }

    /// Applies the map to a polynomial: `p(f1, f2)`.
    pub fn pull_back(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let m = lcm_u32(self.conductor(), p.conductor());
        let f = self.embed(m)?;
        p.embed_conductor(m)?.substitute(&[f.f1, f.f2])
    }

    pub fn is_identity(&self) -> bool {
        let r = self.ring();
        self.f1 == r.var(0) && self.f2 == r.var(1)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An invertible polynomial map stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneAutomorphism {
    pub map: PolyMap,
    pub inverse: PolyMap,
}

impl PlaneAutomorphism {
    /// Checks both compositions symbolically.
    pub fn with_inverse(map: PolyMap, inverse: PolyMap) -> Result<PlaneAutomorphism, MapError> {
        if !map.after(&inverse)?.is_identity() || !inverse.after(&map)?.is_identity() {
            return Err(MapError::NotInverse);
        }
        let m = lcm_u32(map.conductor(), inverse.conductor());
        Ok(PlaneAutomorphism {
            map: map.embed(m)?,
            inverse: inverse.embed(m)?,
        })
    }

    pub fn identity(ring: &Ring) -> PlaneAutomorphism {
        PlaneAutomorphism {
            map: PolyMap::identity(ring),
            inverse: PolyMap::identity(ring),
        }
    }

    /// (x, y) ↦ (a x + b y + e, c x + d y + f) with rational coefficients.
    pub fn affine(ring: &Ring, coeffs: [Rational; 6]) -> Result<PlaneAutomorphism, MapError> {
        let [a, b, c, d, e, f] = coeffs;
        let det = &(&a * &d) - &(&b * &c);
        let inv_det = det.inv().ok_or(MapError::NotInvertible)?;
        let lin = |p: &Rational, q: &Rational, k: &Rational| {
            &(&ring.var(0).scale_rational(p) + &ring.var(1).scale_rational(q)) + &ring.constant_rational(k.clone())
        };
        let map = PolyMap::new(lin(&a, &b, &e), lin(&c, &d, &f))?;
        // inverse: A^{-1} (X − (e, f))
        let ia = &d * &inv_det;
        let ib = -(&b * &inv_det);
        let ic = -(&c * &inv_det);
        let id = &a * &inv_det;
        let ie = -(&(&ia * &e) + &(&ib * &f));
        let if_ = -(&(&ic * &e) + &(&id * &f));
        let inverse = PolyMap::new(lin(&ia, &ib, &ie), lin(&ic, &id, &if_))?;
        PlaneAutomorphism::with_inverse(map, inverse)
    }

    /// (x, y) ↦ (a x + p(y), b y + e) for a polynomial `p` in y alone.
    pub fn triangular(ring: &Ring, a: Rational, p: &MultiPoly, b: Rational, e: Rational) -> Result<PlaneAutomorphism, MapError> {
        if p.involves(0) {
            return Err(MapError::Domain("triangular part must not involve x".into()));
        }
        let ia = a.inv().ok_or(MapError::NotInvertible)?;
        let ib = b.inv().ok_or(MapError::NotInvertible)?;
        let p = p.to_ring(ring)?;
        let y_img = &ring.var(1).scale_rational(&b) + &ring.constant_rational(e.clone());
        let map = PolyMap::new(&ring.var(0).scale_rational(&a) + &p, y_img)?;
        // y = (Y − e)/b, x = (X − p(y))/a
        let y_inv = (&ring.var(1) - &ring.constant_rational(e)).scale_rational(&ib);
        let p_of = p.substitute(&[ring.var(0), y_inv.clone()])?;
        let x_inv = (&ring.var(0) - &p_of).scale_rational(&ia);
        let inverse = PolyMap::new(x_inv, y_inv)?;
        PlaneAutomorphism::with_inverse(map, inverse)
    }

    /// (x, y) ↦ (y, x).
    pub fn swap(ring: &Ring) -> PlaneAutomorphism {
        let s = PolyMap {
            f1: ring.var(1),
            f2: ring.var(0),
        };
        PlaneAutomorphism {
            map: s.clone(),
            inverse: s,
        }
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &PlaneAutomorphism) -> Result<PlaneAutomorphism, MapError> {
        Ok(PlaneAutomorphism {
            map: self.map.after(&other.map)?,
            inverse: other.inverse.after(&self.inverse)?,
        })
    }
}
