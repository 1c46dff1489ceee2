//! Exact rationals with an inline machine-word fast path.
//!
//! Values that fit in an `i64` numerator and denominator are kept unboxed;
//! everything else spills into a boxed [`BigRational`]. The representation is
//! canonical: a value is stored `Small` whenever it fits, so derived `Eq` and
//! `Hash` agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    /// `den > 0`, `gcd(num, den) = 1`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

/// An element of Q in lowest terms.
#[derive(Clone)]
pub struct Rational(Repr);

#[inline]
fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

#[inline]
fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`; panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Self::zero();
        }
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
            Rational(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            ))))
        }
    }

    /// Canonicalizes a (reduced) big rational.
    pub fn from_big(r: BigRational) -> Self {
        let num = r.numer();
        let den = r.denom();
        if let (Some(n), Some(d)) = (num.to_i64(), den.to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small { num: n, den: d });
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small { num: 0, .. } => None,
            Repr::Small { num, den } => {
                if *num < 0 {
                    Some(Rational(Repr::Small {
                        num: -den,
                        den: -num,
                    }))
                } else {
                    Some(Rational(Repr::Small {
                        num: *den,
                        den: *num,
                    }))
                }
            }
            Repr::Big(b) => Some(Self::from_big(b.recip())),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Bit size of numerator plus denominator; used by computation budgets.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small { num, den } => {
                (64 - num.unsigned_abs().leading_zeros() as u64)
                    + (64 - (*den as u64).leading_zeros() as u64)
            }
            Repr::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Multiplies by an integer; fast path for reduction tables.
    pub fn mul_int(&self, k: i64) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*num as i128 * k as i128, *den as i128),
            Repr::Big(b) => Self::from_big(&**b * BigRational::from_integer(BigInt::from(k))),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    #[inline]
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: 0, .. }, _) => rhs.clone(),
            (_, Repr::Small { num: 0, .. }) => self.clone(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rational::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    #[inline]
    fn sub(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (_, Repr::Small { num: 0, .. }) => self.clone(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    Rational::from_i128(*a as i128 - *c as i128, *b as i128)
                } else {
                    Rational::from_i128(
                        *a as i128 * *d as i128 - *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Rational::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    #[inline]
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: 0, .. }, _) | (_, Repr::Small { num: 0, .. }) => Rational::zero(),
            (Repr::Small { num: 1, den: 1 }, _) => rhs.clone(),
            (_, Repr::Small { num: 1, den: 1 }) => self.clone(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let g1 = gcd_u64(a.unsigned_abs(), *d as u64) as i64;
                let g2 = gcd_u64(c.unsigned_abs(), *b as u64) as i64;
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let m = (*b / g2) as i128 * (*d / g1) as i128;
                if n > i64::MIN as i128 && n <= i64::MAX as i128 && m <= i64::MAX as i128 {
                    Rational(Repr::Small {
                        num: n as i64,
                        den: m as i64,
                    })
                } else {
                    Rational(Repr::Big(Box::new(BigRational::new_raw(
                        BigInt::from(n),
                        BigInt::from(m),
                    ))))
                }
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        let inv = rhs.inv().expect("division by zero rational");
        self * &inv
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small {
                num: -num,
                den: *den,
            }),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| err())?;
        let den: BigInt = d.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_bigints(num, den))
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators of `values`.
pub fn lcm_denominators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()))
}

/// Greatest common divisor of the numerators of `values` (which should be integers).
pub fn gcd_numerators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(&r.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small_after_big_roundtrip() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
    }

    #[test]
    fn reduces_and_signs() {
        assert_eq!(Rational::new(6, -4), Rational::new(-3, 2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
        assert_eq!(Rational::new(-3, 2).to_string(), "-3/2");
        assert_eq!("12/-8".parse::<Rational>().unwrap(), Rational::new(-3, 2));
    }

    #[test]
    fn min_int_goes_big() {
        let m = Rational::from_int(i64::MIN);
        assert_eq!(-&(-&m), m);
        assert_eq!((&m + &Rational::one()).to_string(), (i64::MIN + 1).to_string());
    }

    #[test]
    fn overflowing_sum() {
        let a = Rational::new(1, i64::MAX);
        let b = Rational::new(1, i64::MAX - 1);
        let s = &a + &b;
        let d = &s - &b;
        assert_eq!(d, a);
    }
}
