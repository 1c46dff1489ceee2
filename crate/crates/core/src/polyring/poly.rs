use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::PolyError;
use crate::numberfield::{CycloNumber, Rational};

/// Variable names plus the coefficient field Q(ζ_N) (N = 1 for Q).
#[derive(Clone, Debug)]
pub struct Ring {
    vars: Arc<[String]>,
    conductor: u32,
}

impl PartialEq for Ring {
    fn eq(&self, o: &Ring) -> bool {
        self.conductor == o.conductor && (Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars)
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], conductor: u32) -> Result<Ring, PolyError> {
        if vars.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(vars.len()));
        }
        CycloNumber::check_conductor(conductor)?;
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in names.iter().enumerate() {
            if names[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Ring {
            vars: names.into(),
            conductor,
        })
    }

    /// Shorthand for rings known to be valid; panics otherwise.
    pub fn of(vars: &[&str], conductor: u32) -> Ring {
        Ring::new(vars, conductor).expect("valid ring")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn index(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Same variables over Q(ζ_m).
    pub fn with_conductor(&self, m: u32) -> Ring {
        Ring {
            vars: self.vars.clone(),
            conductor: m,
        }
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant_int(1)
    }

    pub fn constant(&self, c: CycloNumber) -> MultiPoly {
        assert_eq!(c.conductor(), self.conductor, "constant from another field");
        self.term(Monomial::one(), c)
    }

    pub fn constant_int(&self, n: i64) -> MultiPoly {
        self.constant(CycloNumber::from_int(self.conductor, n))
    }

    pub fn constant_rational(&self, r: Rational) -> MultiPoly {
        self.constant(CycloNumber::from_rational(self.conductor, r))
    }

    pub fn term(&self, m: Monomial, c: CycloNumber) -> MultiPoly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MultiPoly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars());
        self.term(Monomial::var(i, 1), CycloNumber::one(self.conductor))
    }

    pub fn var_named(&self, name: &str) -> Result<MultiPoly, PolyError> {
        Ok(self.var(self.index(name)?))
    }

    pub fn coeff_int(&self, n: i64) -> CycloNumber {
        CycloNumber::from_int(self.conductor, n)
    }
}

/// The order used for stored terms and for display.
pub const CANONICAL: MonomialOrder = MonomialOrder::DegRevLex;

/// Sparse polynomial; terms are sorted in decreasing canonical order and
/// never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<(Monomial, CycloNumber)>,
}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.conductor.hash(state);
        self.terms.hash(state);
    }
}

impl MultiPoly {
    /// Builds a polynomial from arbitrary terms (duplicates are combined).
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, CycloNumber)>) -> MultiPoly {
        let mut acc: FxHashMap<Monomial, CycloNumber> = FxHashMap::default();
        for (m, c) in terms {
            assert_eq!(c.conductor(), ring.conductor, "coefficient from another field");
            match acc.get_mut(&m) {
                Some(e) => e.add_assign_unchecked(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: FxHashMap<Monomial, CycloNumber>) -> MultiPoly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` is sorted and zero-free.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, CycloNumber)>) -> MultiPoly {
        debug_assert!(terms.windows(2).all(|w| CANONICAL.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn conductor(&self) -> u32 {
        self.ring.conductor
    }

    pub fn terms(&self) -> &[(Monomial, CycloNumber)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, CycloNumber)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant term.
    pub fn constant_coeff(&self) -> CycloNumber {
        self.coefficient(&Monomial::one())
    }

    pub fn coefficient(&self, m: &Monomial) -> CycloNumber {
        self.terms
            .binary_search_by(|(t, _)| CANONICAL.cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| CycloNumber::zero(self.conductor()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Bitmask of variables that occur.
    pub fn support_mask(&self) -> u16 {
        let mut mask = 0u16;
        for (m, _) in &self.terms {
            for i in 0..self.ring.nvars() {
                if m.exp(i) > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    /// Leading term in canonical order.
    pub fn leading(&self) -> Option<&(Monomial, CycloNumber)> {
        self.terms.first()
    }

    /// Leading term under an arbitrary order.
    pub fn leading_under(&self, order: MonomialOrder) -> Option<&(Monomial, CycloNumber)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    fn check_ring(&self, o: &MultiPoly) -> Result<(), PolyError> {
        if self.ring == o.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(o)?;
        Ok(self.add_impl(o, false))
    }

    pub fn try_sub(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(o)?;
        Ok(self.add_impl(o, true))
    }

    pub fn try_mul(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(o)?;
        Ok(self.mul_impl(o))
    }

    fn add_impl(&self, o: &MultiPoly, negate: bool) -> MultiPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match CANONICAL.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub_unchecked(&b[j].1)
                    } else {
                        a[i].1.add_unchecked(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Self::from_sorted(&self.ring, out)
    }

    fn mul_impl(&self, o: &MultiPoly) -> MultiPoly {
        if self.is_zero() || o.is_zero() {
            return self.ring.zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, CycloNumber> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * o.terms.len() / 2, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul_unchecked(cb);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign_unchecked(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    /// Multiplication by one term; order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &CycloNumber) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| (t.mul(m), d.mul_unchecked(c)))
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &CycloNumber) -> MultiPoly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiPoly {
        if r.is_zero() {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect();
        Self::from_sorted(&self.ring, terms)
    }

    pub fn scale_int(&self, n: i64) -> MultiPoly {
        self.scale_rational(&Rational::from_int(n))
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
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

    /// Evaluates at a point with coordinates in the same field.
    pub fn eval(&self, point: &[CycloNumber]) -> CycloNumber {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = CycloNumber::zero(self.conductor());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate() {
                if m.exp(i) > 0 {
                    t = t.mul_unchecked(&p.pow(m.exp(i)));
                }
            }
            acc.add_assign_unchecked(&t);
        }
        acc
    }

    /// Moves the coefficients into Q(ζ_m), `conductor | m`.
    pub fn embed_conductor(&self, m: u32) -> Result<MultiPoly, PolyError> {
        if m == self.conductor() {
            return Ok(self.clone());
        }
        let ring = self.ring.with_conductor(m);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mon, c) in &self.terms {
            terms.push((*mon, c.embed(m)?));
        }
        Ok(Self::from_sorted(&ring, terms))
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Variables that occur here must exist in `target`; the target conductor
    /// must be a multiple of ours.
    pub fn to_ring(&self, target: &Ring) -> Result<MultiPoly, PolyError> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let p = self.embed_conductor(target.conductor())?;
        let mut map = [usize::MAX; MAX_VARS];
        for (i, v) in self.ring.vars().iter().enumerate() {
            if let Some(j) = target.index_of(v) {
                map[i] = j;
            } else if self.involves(i) {
                return Err(PolyError::MissingVariable(v.clone()));
            }
        }
        let terms = p
            .terms
            .into_iter()
            .map(|(m, c)| {
                let mut e = [0u32; MAX_VARS];
                for i in 0..self.ring.nvars() {
                    if m.exp(i) > 0 {
                        e[map[i]] = m.exp(i);
                    }
                }
                (Monomial::from_exps(&e), c)
            })
            .collect();
        Ok(Self::from_terms(target, terms))
    }

    /// Divides by the leading coefficient (canonical order).
    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Canonical associate: monic, then scaled to integral coordinates with
    /// content one. The leading coefficient ends up a positive integer.
    pub fn normalize(&self) -> MultiPoly {
        let p = self.monic();
        if p.is_zero() {
            return p;
        }
        let mut den = BigInt::one();
        for (_, c) in &p.terms {
            den = den.lcm(&c.denominator_lcm());
        }
        let mut g = BigInt::zero();
        for (_, c) in &p.terms {
            for r in c.coeffs() {
                if !r.is_zero() {
                    let n = (r.numer() * (&den / r.denom())).abs();
                    g = g.gcd(&n);
                }
            }
        }
        let factor = Rational::from_bigints(den, g);
        p.scale_rational(&factor)
    }

    /// True when `self = c·other` for a nonzero constant `c`.
    pub fn is_associate(&self, other: &MultiPoly) -> bool {
        self.ring == other.ring && self.monic() == other.monic()
    }

    /// Univariate view in `v`: entry `k` is the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, CycloNumber)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            let mut r = *m;
            r.set_exp(v, 0);
            buckets[k].push((r, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| {
                // dropping one variable from every term keeps degrevlex order
                // only within a degree slice, so re-sort
                let mut t = t;
                t.sort_unstable_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
                Self::from_sorted(&self.ring, t)
            })
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(ring: &Ring, v: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                let mut n = *m;
                n.set_exp(v, k as u32);
                terms.push((n, x.clone()));
            }
        }
        let mut terms = terms;
        terms.sort_unstable_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        Self::from_sorted(ring, terms)
    }

    /// JSON term list `[{"exps":[..],"coeff":..}]`.
    pub fn to_json_terms(&self) -> serde_json::Value {
        let n = self.ring.nvars();
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "exps": &m.exps()[..n],
                        "coeff": c,
                    })
                })
                .collect(),
        )
    }

    pub fn from_json_terms(ring: &Ring, v: &serde_json::Value) -> Result<MultiPoly, PolyError> {
        #[derive(serde::Deserialize)]
        struct Term {
            exps: Vec<u32>,
            coeff: CycloNumber,
        }
        let terms: Vec<Term> =
            serde_json::from_value(v.clone()).map_err(|e| PolyError::Json(e.to_string()))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exps.len() != ring.nvars() {
                return Err(PolyError::Json(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    t.exps.len(),
                    ring.nvars()
                )));
            }
            out.push((Monomial::from_exps(&t.exps), t.coeff.embed(ring.conductor())?));
        }
        Ok(Self::from_terms(ring, out))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                assert!(self.ring == o.ring, "ring mismatch");
                $body(self, o)
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                std::ops::$tr::$m(&self, &o)
            }
        }
        impl std::ops::$tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                std::ops::$tr::$m(&self, o)
            }
        }
    };
}

binop!(Add, add, |a: &MultiPoly, b: &MultiPoly| a.add_impl(b, false));
binop!(Sub, sub, |a: &MultiPoly, b: &MultiPoly| a.add_impl(b, true));
binop!(Mul, mul, |a: &MultiPoly, b: &MultiPoly| a.mul_impl(b));

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        MultiPoly::from_sorted(&self.ring, terms)
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}
