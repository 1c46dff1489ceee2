use std::fmt;

use crate::numberfield::{CycloNumber, NumberFieldError, Rational};

/// A 2×2 matrix over Q(ζ_N), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    e: [CycloNumber; 4],
}

impl Matrix2 {
    pub fn new(
        a: CycloNumber,
        b: CycloNumber,
        c: CycloNumber,
        d: CycloNumber,
    ) -> Result<Self, NumberFieldError> {
        let n = a.conductor();
        for x in [&b, &c, &d] {
            if x.conductor() != n {
                return Err(NumberFieldError::ConductorMismatch(n, x.conductor()));
            }
        }
        Ok(Matrix2 { e: [a, b, c, d] })
    }

    pub fn identity(conductor: u32) -> Self {
        Self::scalar(CycloNumber::one(conductor))
    }

    pub fn scalar(c: CycloNumber) -> Self {
        let z = CycloNumber::zero(c.conductor());
        Matrix2 {
            e: [c.clone(), z.clone(), z, c],
        }
    }

    pub fn diag(a: CycloNumber, d: CycloNumber) -> Self {
        let z = CycloNumber::zero(a.conductor());
        Matrix2 {
            e: [a, z.clone(), z, d],
        }
    }

    pub fn conductor(&self) -> u32 {
        self.e[0].conductor()
    }

    pub fn entries(&self) -> &[CycloNumber; 4] {
        &self.e
    }

    pub fn entry(&self, row: usize, col: usize) -> &CycloNumber {
        &self.e[2 * row + col]
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        let dot = |x: &CycloNumber, y: &CycloNumber, u: &CycloNumber, v: &CycloNumber| {
            let mut t = x.mul_unchecked(y);
            t.add_assign_unchecked(&u.mul_unchecked(v));
            t
        };
        Matrix2 {
            e: [dot(a, p, b, r), dot(a, q, b, s), dot(c, p, d, r), dot(c, q, d, s)],
        }
    }

    pub fn scale(&self, c: &CycloNumber) -> Matrix2 {
        Matrix2 {
            e: self.e.clone().map(|x| x.mul_unchecked(c)),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Matrix2 {
        Matrix2 {
            e: self.e.clone().map(|x| x.scale(r)),
        }
    }

    pub fn det(&self) -> CycloNumber {
        let [a, b, c, d] = &self.e;
        a.mul_unchecked(d).sub_unchecked(&b.mul_unchecked(c))
    }

    pub fn pow(&self, mut k: u32) -> Matrix2 {
        let mut acc = Matrix2::identity(self.conductor());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    pub fn transpose(&self) -> Matrix2 {
        let [a, b, c, d] = self.e.clone();
        Matrix2 { e: [a, c, b, d] }
    }

    pub fn embed(&self, m: u32) -> Result<Matrix2, NumberFieldError> {
        let [a, b, c, d] = &self.e;
        Ok(Matrix2 {
            e: [a.embed(m)?, b.embed(m)?, c.embed(m)?, d.embed(m)?],
        })
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_squares_to_identity() {
        let z = CycloNumber::zero(4);
        let o = CycloNumber::one(4);
        let s = Matrix2::new(z.clone(), o.clone(), o, z).unwrap();
        assert!(s.mul(&s).is_identity());
        assert_eq!(s.det(), CycloNumber::from_int(4, -1));
    }

    #[test]
    fn mixed_conductors_rejected() {
        let a = CycloNumber::one(4);
        let b = CycloNumber::one(3);
        assert!(Matrix2::new(a.clone(), b, a.clone(), a).is_err());
    }
}
