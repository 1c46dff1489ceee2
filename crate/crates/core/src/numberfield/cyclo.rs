//! Cyclotomic fields Q(ζ_N) in the power basis modulo Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};

use super::rational::Rational;
use super::NumberFieldError;

/// Largest conductor accepted. Power-basis reduction tables are kept in `i64`.
pub const MAX_CONDUCTOR: u32 = 2048;

/// Φ_n with integer coefficients, lowest degree first, by
/// Φ_n = (xⁿ − 1) / ∏_{d | n, d < n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let qlen = rem.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Euler's totient.
pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Precomputed reduction data for one conductor.
#[derive(Debug)]
pub(crate) struct FieldData {
    /// Φ_N coefficients below the leading 1.
    pub modulus: Vec<i64>,
    /// ζ^k in the power basis for 0 ≤ k < N.
    pub powers: Vec<Vec<i64>>,
}

fn build_field(n: u32) -> FieldData {
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let modulus: Vec<i64> = phi[..degree]
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
        .collect();
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1]
                .checked_sub(top.checked_mul(modulus[i]).expect("overflow"))
                .expect("overflow");
        }
        cur[0] = -top * modulus[0];
    }
    FieldData {
        modulus,
        powers,
    }
}

pub(crate) fn field_data(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let data = Arc::new(build_field(n));
    cache.write().unwrap().entry(n).or_insert(data).clone()
}

type Coeffs = SmallVec<[Rational; 2]>;

/// An element of Q(ζ_N), stored as coordinates in the basis 1, ζ, …, ζ^{φ(N)−1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Coeffs,
}

impl CycloNumber {
    pub fn check_conductor(n: u32) -> Result<(), NumberFieldError> {
        if n == 0 || n > MAX_CONDUCTOR {
            Err(NumberFieldError::BadConductor(n))
        } else {
            Ok(())
        }
    }

    pub fn zero(conductor: u32) -> Self {
        let d = euler_phi(conductor) as usize;
        CycloNumber {
            conductor,
            coeffs: smallvec![Rational::zero(); d],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, Rational::from_int(n))
    }

    /// Builds a value from power-basis coordinates.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Result<Self, NumberFieldError> {
        Self::check_conductor(conductor)?;
        let d = euler_phi(conductor) as usize;
        if coeffs.len() != d {
            return Err(NumberFieldError::BadLength {
                conductor,
                expected: d,
                got: coeffs.len(),
            });
        }
        Ok(CycloNumber {
            conductor,
            coeffs: coeffs.into(),
        })
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let n = conductor as i64;
        let k = k.rem_euclid(n) as usize;
        if conductor <= 2 {
            // ζ_1 = 1, ζ_2 = −1
            let v = if conductor == 2 && k == 1 { -1 } else { 1 };
            return Self::from_int(conductor, v);
        }
        let fd = field_data(conductor);
        CycloNumber {
            conductor,
            coeffs: fd.powers[k].iter().map(|&c| Rational::from_int(c)).collect(),
        }
    }

    pub fn zeta(conductor: u32) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), NumberFieldError> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(NumberFieldError::ConductorMismatch(
                self.conductor,
                other.conductor,
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumberFieldError> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumberFieldError> {
        self.same_field(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumberFieldError> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        CycloNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        CycloNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        let d = self.coeffs.len();
        if d == 1 {
            return CycloNumber {
                conductor: self.conductor,
                coeffs: smallvec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        let mut prod: Vec<Rational> = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        let fd = field_data(self.conductor);
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, &m) in fd.modulus.iter().enumerate() {
                if m != 0 {
                    prod[k - d + i] -= &c.mul_int(m);
                }
            }
        }
        prod.truncate(d);
        CycloNumber {
            conductor: self.conductor,
            coeffs: prod.into(),
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self, NumberFieldError> {
        if self.is_zero() {
            return Err(NumberFieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(
                self.conductor,
                self.coeffs[0].inv().unwrap(),
            ));
        }
        let fd = field_data(self.conductor);
        let mut modulus: Vec<Rational> = fd.modulus.iter().map(|&m| Rational::from_int(m)).collect();
        modulus.push(Rational::one());
        let a: Vec<Rational> = self.coeffs.to_vec();
        // s·a + t·Φ = g, track only s.
        let (g, s) = qpoly::ext_gcd_first(&a, &modulus);
        debug_assert_eq!(g.len(), 1, "Φ_N is irreducible so the gcd is a unit");
        let ginv = g[0].inv().expect("nonzero gcd");
        let mut coeffs: Vec<Rational> = s.iter().map(|c| c * &ginv).collect();
        coeffs.resize(self.coeffs.len(), Rational::zero());
        Ok(CycloNumber {
            conductor: self.conductor,
            coeffs: coeffs.into(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, NumberFieldError> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Image under ζ_n ↦ ζ_m^{m/n}; requires `n | m`.
    pub fn embed(&self, m: u32) -> Result<Self, NumberFieldError> {
        Self::check_conductor(m)?;
        if m % self.conductor != 0 {
            return Err(NumberFieldError::NotDivisible {
                from: self.conductor,
                to: m,
            });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as i64;
        let mut out = Self::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = Self::zeta_pow(m, k as i64 * step);
            out.add_assign_unchecked(&z.scale(c));
        }
        Ok(out)
    }

    /// Numerical value at ζ_N = exp(2πi/N). Diagnostic only.
    pub fn approx(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI / self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| {
                acc + Complex64::from_polar(1.0, theta * k as f64) * c.to_f64()
            })
    }

    /// Largest bit size among the coordinates.
    pub fn bits(&self) -> u64 {
        self.coeffs.iter().map(Rational::bits).max().unwrap_or(0)
    }

    /// Least common multiple of coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()))
    }

    /// Sign of the first nonzero coordinate (0 for zero).
    pub fn leading_sign(&self) -> i32 {
        for c in self.coeffs.iter() {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }

    /// Complex conjugate (ζ ↦ ζ^{-1}).
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.conductor);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_assign_unchecked(&Self::zeta_pow(self.conductor, -(k as i64)).scale(c));
            }
        }
        out
    }
}

impl fmt::Display for CycloNumber {
    /// Parser syntax, e.g. `-24*zeta(6)+12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.conductor),
                _ => format!("zeta({})^{}", self.conductor, k),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[Q(zeta{})] {}", self.conductor, self)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CycloJson {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl serde::Serialize for CycloNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloJson {
            conductor: self.conductor,
            coeffs: self.coeffs.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CycloNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        CycloNumber::from_coeffs(j.conductor, j.coeffs).map_err(serde::de::Error::custom)
    }
}

/// Dense univariate helpers over Q, lowest degree first, no trailing zeros.
pub(crate) mod qpoly {
    use super::Rational;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Rational::is_zero) {
            p.pop();
        }
    }

    /// Returns (quotient, remainder).
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = b[db].inv().expect("nonzero divisor");
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = &r[r.len() - 1] * &lead_inv;
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &(&c * bj);
            }
            q[k] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                match b.get(i) {
                    Some(y) => &x - y,
                    None => x,
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    /// (g, s) with s·a ≡ g (mod b), g = gcd(a, b).
    pub fn ext_gcd_first(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r0 = b.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(24), ints(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
    }

    #[test]
    fn i_squared() {
        let i = CycloNumber::zeta(4);
        assert_eq!(i.mul_unchecked(&i), CycloNumber::from_int(4, -1));
        assert_eq!(i.inv().unwrap(), i.neg());
    }

    #[test]
    fn sqrt_two_in_q_zeta8() {
        let e = CycloNumber::zeta(8);
        let r2 = e.sub_unchecked(&e.pow(3));
        assert_eq!(r2.mul_unchecked(&r2), CycloNumber::from_int(8, 2));
        let inv = r2.inv().unwrap();
        assert_eq!(inv.mul_unchecked(&inv), CycloNumber::from_rational(8, Rational::new(1, 2)));
        assert!((r2.approx().re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(r2.approx().im.abs() < 1e-12);
    }

    #[test]
    fn embeddings_match_script_constants() {
        let w = CycloNumber::zeta(3).embed(24).unwrap();
        assert_eq!(w, CycloNumber::zeta_pow(24, 8));
        let e = CycloNumber::zeta(8).embed(24).unwrap();
        assert_eq!(e, CycloNumber::zeta_pow(24, 3));
        assert!(CycloNumber::zeta(8).embed(12).is_err());
    }

    #[test]
    fn display_uses_parser_syntax() {
        let xi = CycloNumber::zeta(6);
        let v = xi.scale(&Rational::from_int(-24)).add_unchecked(&CycloNumber::from_int(6, 12));
        assert_eq!(v.to_string(), "-24*zeta(6)+12");
        assert_eq!(CycloNumber::from_rational(6, Rational::new(-1, 3)).to_string(), "-1/3");
    }
}
