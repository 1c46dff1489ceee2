//! Gröbner bases (Buchberger) and local standard bases (Mora).

mod gpoly;

use serde::Serialize;

use crate::numberfield::CycloNumber;
use crate::polyring::{Monomial, MonomialOrder, MultiPoly, PolyError, Ring, MAX_VARS};
use gpoly::{spoly, sub_scaled, GPoly, Terms};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("resource budget exceeded ({0})")]
    ResourceExceeded(String),
    #[error("basis has not been computed")]
    NotComputed,
    #[error("a global monomial order is required")]
    NeedGlobalOrder,
    #[error("Mora reduction exceeded {0} steps")]
    StepLimit(u64),
    #[error("map has zero Jacobian")]
    ZeroJacobian,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Limits on a basis computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// S-pairs reduced before giving up.
    pub max_pairs: u64,
    /// Largest coefficient (bits of one rational coordinate) tolerated.
    pub max_bits: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_pairs: u64::MAX,
        max_bits: u64::MAX,
    };

    pub fn pairs(max_pairs: u64) -> Budget {
        Budget {
            max_pairs,
            ..Budget::default()
        }
    }
}

// Sized so every mandated table row eliminates, and the slowest optional
// rows (f~17, f~20, f~21) give up after seconds rather than hours.
impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 10_000,
            max_bits: 8192,
        }
    }
}

/// Pair selection rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Smallest lcm under the order, sugar breaks ties.
    #[default]
    Normal,
    /// Smallest sugar, lcm order breaks ties.
    Sugar,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BasisStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub max_bits: u64,
}

/// An ideal together with its Gröbner or standard basis.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    pub ring: Ring,
    pub order: MonomialOrder,
    pub generators: Vec<MultiPoly>,
    /// Each element is monic w.r.t. `order`; sorted by increasing leading monomial.
    basis: Option<Vec<MultiPoly>>,
    leading: Vec<Monomial>,
    pub stats: BasisStats,
}

impl IdealBasis {
    pub fn new(ring: &Ring, generators: Vec<MultiPoly>, order: MonomialOrder) -> IdealBasis {
        IdealBasis {
            ring: ring.clone(),
            order,
            generators,
            basis: None,
            leading: Vec::new(),
            stats: BasisStats::default(),
        }
    }

    pub fn is_local(&self) -> bool {
        !self.order.is_global()
    }

    pub fn basis(&self) -> Result<&[MultiPoly], GroebnerError> {
        self.basis.as_deref().ok_or(GroebnerError::NotComputed)
    }

    /// Leading monomials of the computed basis.
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    fn set_basis(&mut self, polys: Vec<GPoly>) {
        let mut polys = polys;
        let order = self.order;
        polys.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        self.leading = polys.iter().map(|g| *g.lm()).collect();
        self.basis = Some(polys.iter().map(|g| g.to_multi(&self.ring)).collect());
    }
}

fn check_rings(ring: &Ring, gens: &[MultiPoly]) -> Result<(), GroebnerError> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(PolyError::RingMismatch.into());
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduces `h` completely by the active reducers (global orders only).
fn reduce_full(mut h: Terms, reducers: &[&GPoly], order: MonomialOrder) -> Terms {
    let mut k = 0;
    while k < h.len() {
        let m = h[k].0;
        let found = reducers
            .iter()
            .filter(|g| g.lm().divides(&m))
            .min_by_key(|g| g.terms.len());
        match found {
            Some(g) => {
                let q = g.lm().div(&m).expect("divides");
                let c = h[k].1.clone();
                let tail = sub_scaled(&h[k + 1..], &g.terms[1..], &q, &c, order);
                h.truncate(k);
                h.extend(tail);
            }
            None => k += 1,
        }
    }
    h
}

/// Buchberger's algorithm with the Gebauer–Möller criteria.
pub fn buchberger(
    ring: &Ring,
    gens: &[MultiPoly],
    order: MonomialOrder,
) -> Result<IdealBasis, GroebnerError> {
    buchberger_with(ring, gens, order, Budget::UNLIMITED, Selection::Normal)
}

pub fn buchberger_with(
    ring: &Ring,
    gens: &[MultiPoly],
    order: MonomialOrder,
    budget: Budget,
    selection: Selection,
) -> Result<IdealBasis, GroebnerError> {
    if !order.is_global() {
        return Err(GroebnerError::NeedGlobalOrder);
    }
    check_rings(ring, gens)?;
    let mut ib = IdealBasis::new(ring, gens.to_vec(), order);
    let mut polys: Vec<GPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = BasisStats::default();

    let mut input: Vec<GPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| GPoly::from_multi(g, order))
        .collect();
    // small leading monomials first gives the criteria more to work with
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let mut queue = input.into_iter();
    loop {
        let h = if let Some(g) = queue.next() {
            let reducers: Vec<&GPoly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(g, _)| g).collect();
            GPoly {
                terms: reduce_full(g.terms, &reducers, order),
                sugar: g.sugar,
            }
        } else {
            let Some(pos) = select(&pairs, order, selection) else {
                break;
            };
            let pair = pairs.swap_remove(pos);
            stats.pairs_reduced += 1;
            if stats.pairs_reduced > budget.max_pairs {
                return Err(GroebnerError::ResourceExceeded(format!(
                    "more than {} S-pairs",
                    budget.max_pairs
                )));
            }
            let s = spoly(&polys[pair.i], &polys[pair.j], order);
            let reducers: Vec<&GPoly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(g, _)| g).collect();
            GPoly {
                terms: reduce_full(s.terms, &reducers, order),
                sugar: s.sugar,
            }
        };
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let mut h = h;
        h.make_monic();
        let bits = h.bits();
        stats.max_bits = stats.max_bits.max(bits);
        if bits > budget.max_bits {
            return Err(GroebnerError::ResourceExceeded(format!(
                "coefficients above {} bits",
                budget.max_bits
            )));
        }
        if h.lm().is_one() {
            polys = vec![h];
            active = vec![true];
            break;
        }
        update(&mut polys, &mut active, &mut pairs, h);
    }
    let kept: Vec<GPoly> = polys
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    ib.set_basis(interreduce(kept, order));
    ib.stats = stats;
    Ok(ib)
}

fn select(pairs: &[Pair], order: MonomialOrder, selection: Selection) -> Option<usize> {
    (0..pairs.len()).min_by(|&a, &b| {
        let (p, q) = (&pairs[a], &pairs[b]);
        let by_lcm = order.cmp(&p.lcm, &q.lcm);
        let by_sugar = p.sugar.cmp(&q.sugar);
        match selection {
            Selection::Normal => by_lcm.then(by_sugar),
            Selection::Sugar => by_sugar.then(by_lcm),
        }
        .then((p.i, p.j).cmp(&(q.i, q.j)))
    })
}

/// Gebauer–Möller installation of a new basis element.
fn update(polys: &mut Vec<GPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: GPoly) {
    let t = polys.len();
    let lh = *h.lm();
    let sugar_of = |g: &GPoly, l: &Monomial| -> u32 {
        let ug = g.lm().div(l).expect("lcm").degree();
        let uh = lh.div(l).expect("lcm").degree();
        (g.sugar + ug).max(h.sugar + uh)
    };
    // candidate pairs (g, h)
    let cand: Vec<Pair> = (0..t)
        .filter(|&i| active[i])
        .map(|i| {
            let l = polys[i].lm().lcm(&lh);
            Pair {
                i,
                j: t,
                lcm: l,
                sugar: sugar_of(&polys[i], &l),
            }
        })
        .collect();
    // M: drop pairs whose lcm is a proper multiple of another new lcm
    let kept: Vec<&Pair> = cand
        .iter()
        .filter(|p| !cand.iter().any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm)))
        .collect();
    // F and B: one pair per lcm, none at all if some pair with that lcm is coprime
    let mut new_pairs: Vec<Pair> = Vec::new();
    for p in &kept {
        if new_pairs.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        let group_coprime = kept
            .iter()
            .any(|q| q.lcm == p.lcm && polys[q.i].lm().coprime(&lh));
        if !group_coprime {
            new_pairs.push((*p).clone());
        }
    }
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && polys[p.i].lm().lcm(&lh) != p.lcm
            && polys[p.j].lm().lcm(&lh) != p.lcm)
    });
    pairs.extend(new_pairs);
    for i in 0..t {
        if active[i] && lh.divides(polys[i].lm()) {
            active[i] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Minimal, fully reduced basis from a Gröbner basis.
fn interreduce(mut polys: Vec<GPoly>, order: MonomialOrder) -> Vec<GPoly> {
    polys.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<GPoly> = Vec::new();
    for g in polys {
        if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
            minimal.retain(|m| !g.lm().divides(m.lm()));
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    minimal
        .into_iter()
        .enumerate()
        .map(|(k, g)| {
            let others: Vec<&GPoly> = snapshot.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
            let head = g.terms[0].clone();
            let tail = reduce_full(g.terms[1..].to_vec(), &others, order);
            let mut terms = vec![head];
            terms.extend(tail);
            GPoly { terms, sugar: g.sugar }
        })
        .collect()
}

/// Remainder of `p` modulo a computed global basis.
pub fn normal_form(p: &MultiPoly, b: &IdealBasis) -> Result<MultiPoly, GroebnerError> {
    if b.is_local() {
        return Err(GroebnerError::NeedGlobalOrder);
    }
    let basis = b.basis()?;
    if p.ring() != &b.ring {
        return Err(PolyError::RingMismatch.into());
    }
    let gs: Vec<GPoly> = basis.iter().map(|g| GPoly::from_multi(g, b.order)).collect();
    let refs: Vec<&GPoly> = gs.iter().collect();
    let h = GPoly::from_multi(p, b.order);
    let r = reduce_full(h.terms, &refs, b.order);
    Ok(MultiPoly::from_terms(&b.ring, r))
}

pub fn ideal_contains(b: &IdealBasis, p: &MultiPoly) -> Result<bool, GroebnerError> {
    Ok(normal_form(p, b)?.is_zero())
}

fn mask_of(vars: &[usize]) -> u16 {
    vars.iter().fold(0u16, |m, &v| m | (1 << v))
}

/// Generators of the ideal intersected with the subring without `eliminate`.
pub fn elimination_ideal(
    ring: &Ring,
    gens: &[MultiPoly],
    eliminate: &[usize],
) -> Result<Vec<MultiPoly>, GroebnerError> {
    elimination_ideal_with(ring, gens, eliminate, Budget::UNLIMITED, Selection::Normal)
}

pub fn elimination_ideal_with(
    ring: &Ring,
    gens: &[MultiPoly],
    eliminate: &[usize],
    budget: Budget,
    selection: Selection,
) -> Result<Vec<MultiPoly>, GroebnerError> {
    let front = mask_of(eliminate);
    let ib = buchberger_with(ring, gens, MonomialOrder::Block { front }, budget, selection)?;
    Ok(ib
        .basis()?
        .iter()
        .filter(|g| g.support_mask() & front == 0)
        .cloned()
        .collect())
}

/// A vector-space dimension that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("infinite"),
        }
    }
}

/// Number of monomials in `nvars` variables outside the monomial ideal `leads`.
pub fn staircase_count(leads: &[Monomial], nvars: usize) -> Dimension {
    if leads.iter().any(Monomial::is_one) {
        return Dimension::Finite(0);
    }
    let mut bound = [0u32; MAX_VARS];
    for (v, b) in bound.iter_mut().enumerate().take(nvars) {
        match leads
            .iter()
            .filter(|m| m.pure_power_var() == Some(v))
            .map(|m| m.exp(v))
            .min()
        {
            Some(e) => *b = e,
            None => return Dimension::Infinite,
        }
    }
    // odometer over the box below the pure powers
    let mut count = 0u64;
    let mut e = [0u32; MAX_VARS];
    loop {
        let m = Monomial::from_exps(&e[..nvars]);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == nvars {
                return Dimension::Finite(count);
            }
            e[v] += 1;
            if e[v] < bound[v] {
                break;
            }
            e[v] = 0;
            v += 1;
        }
    }
}

/// Count of standard monomials of a computed global basis.
pub fn quotient_dimension(b: &IdealBasis) -> Result<Dimension, GroebnerError> {
    if b.is_local() {
        return Err(GroebnerError::NeedGlobalOrder);
    }
    b.basis()?;
    Ok(staircase_count(&b.leading, b.ring.nvars()))
}

/// Hard ceiling on Mora reduction steps.
pub const MORA_STEP_LIMIT: u64 = 2_000_000;

/// Standard basis for the local anti-graded order, with the number of
/// reduction steps spent.
pub fn mora_standard_basis(ring: &Ring, gens: &[MultiPoly]) -> Result<(IdealBasis, u64), GroebnerError> {
    check_rings(ring, gens)?;
    let order = MonomialOrder::LocalDegRevLex;
    let mut ib = IdealBasis::new(ring, gens.to_vec(), order);
    let mut steps = 0u64;
    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut stats = BasisStats::default();
    let mut pending: Vec<GPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| GPoly::from_multi(g, order))
        .collect();
    pending.reverse();
    loop {
        let h = if let Some(g) = pending.pop() {
            g
        } else if let Some((i, j)) = pairs.pop() {
            stats.pairs_reduced += 1;
            spoly(&basis[i], &basis[j], order)
        } else {
            break;
        };
        let r = mora_normal_form(h, &basis, order, &mut steps)?;
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let mut r = r;
        r.make_monic();
        if r.lm().is_one() {
            basis = vec![r];
            break;
        }
        let t = basis.len();
        for i in 0..t {
            if !basis[i].lm().coprime(r.lm()) {
                pairs.push((i, t));
            }
        }
        basis.push(r);
    }
    // keep a minimal set of leading monomials
    let mut minimal: Vec<GPoly> = Vec::new();
    basis.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    for g in basis {
        if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
            minimal.retain(|m| !g.lm().divides(m.lm()));
            minimal.push(g);
        }
    }
    ib.set_basis(minimal);
    ib.stats = stats;
    Ok((ib, steps))
}

/// Mora's weak normal form: écart-guided reduction that admits intermediate
/// results as reducers.
fn mora_normal_form(
    h: GPoly,
    basis: &[GPoly],
    order: MonomialOrder,
    steps: &mut u64,
) -> Result<GPoly, GroebnerError> {
    let mut t: Vec<GPoly> = basis.to_vec();
    let mut h = h;
    while !h.is_zero() {
        let lm = *h.lm();
        let Some(g) = t
            .iter()
            .filter(|g| g.lm().divides(&lm))
            .min_by_key(|g| (g.ecart(), g.terms.len()))
            .cloned()
        else {
            break;
        };
        *steps += 1;
        if *steps > MORA_STEP_LIMIT {
            return Err(GroebnerError::StepLimit(MORA_STEP_LIMIT));
        }
        if g.ecart() > h.ecart() {
            t.push(h.clone());
        }
        let q = g.lm().div(&lm).expect("divides");
        let c = h.terms[0].1.mul_unchecked(&g.terms[0].1.inv().expect("nonzero"));
        let terms = sub_scaled(&h.terms[1..], &g.terms[1..], &q, &c, order);
        h = GPoly {
            terms,
            sugar: h.sugar.max(g.sugar + q.degree()),
        };
    }
    Ok(h)
}

/// Count of standard monomials for a local standard basis.
pub fn local_quotient_dimension(b: &IdealBasis) -> Result<Dimension, GroebnerError> {
    b.basis()?;
    Ok(staircase_count(&b.leading, b.ring.nvars()))
}

/// Leading coefficient helper used by callers that need `lc` under an order.
pub fn leading_under(p: &MultiPoly, order: MonomialOrder) -> Option<(Monomial, CycloNumber)> {
    p.leading_under(order).cloned()
}

/// Whether C[x, y] is a finite extension of C[f1, f2].
///
/// Computes a basis of ⟨s − f1, t − f2⟩ in (x, y, s, t) with {x, y} in front
/// and looks for leading monomials that are pure powers of x and of y.
pub fn finite_extension_test(f: &crate::maps::PolyMap, budget: Budget) -> Result<bool, GroebnerError> {
    if !f.is_dominant() {
        return Err(GroebnerError::ZeroJacobian);
    }
    let ring = Ring::new(&["x", "y", "s", "t"], f.conductor())?;
    let f1 = f.f1.to_ring(&ring)?;
    let f2 = f.f2.to_ring(&ring)?;
    let gens = [&ring.var(2) - &f1, &ring.var(3) - &f2];
    let ib = buchberger_with(&ring, &gens, MonomialOrder::Block { front: 0b0011 }, budget, Selection::Normal)?;
    let pure = |v: usize| {
        ib.leading_monomials()
            .iter()
            .any(|m| m.pure_power_var() == Some(v))
    };
    Ok(pure(0) && pure(1))
}
