//! Exact division, gcd, squarefree parts and resultants.

use super::poly::{MultiPoly, Ring};
use super::PolyError;

/// `a / b` when `b | a`; [`PolyError::NotDivisible`] otherwise.
pub fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if a.ring() != b.ring() {
        return Err(PolyError::RingMismatch);
    }
    let Some((lm, lc)) = b.leading() else {
        return Err(PolyError::ZeroPolynomial);
    };
    if b.num_terms() == 1 && lc.is_one() {
        // division by a monomial
        let mut terms = Vec::with_capacity(a.num_terms());
        for (m, c) in a.terms() {
            terms.push((lm.div(m).ok_or(PolyError::NotDivisible)?, c.clone()));
        }
        return Ok(MultiPoly::from_sorted(a.ring(), terms));
    }
    let inv = lc.inv()?;
    let mut q = Vec::new();
    let mut r = a.clone();
    while let Some((m, c)) = r.leading() {
        let qm = lm.div(m).ok_or(PolyError::NotDivisible)?;
        let qc = c.mul_unchecked(&inv);
        r = &r - &b.mul_term(&qm, &qc);
        q.push((qm, qc));
    }
    Ok(MultiPoly::from_sorted(a.ring(), q))
}

pub fn divides(b: &MultiPoly, a: &MultiPoly) -> Result<bool, PolyError> {
    match exact_div(a, b) {
        Ok(_) => Ok(true),
        Err(PolyError::NotDivisible) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Greatest common divisor, made monic in canonical order (zero if both are zero).
pub fn gcd_poly(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if a.ring() != b.ring() {
        return Err(PolyError::RingMismatch);
    }
    Ok(gcd_rec(a, b))
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return a.ring().one();
    }
    if a.num_terms() == 1 && b.num_terms() == 1 {
        let m = a.terms()[0].0.gcd(&b.terms()[0].0);
        return a.ring().term(m, a.ring().coeff_int(1));
    }
    let mask = a.support_mask() | b.support_mask();
    // main variable: the one of smallest combined degree keeps the PRS short
    let v = (0..a.ring().nvars())
        .filter(|&i| mask & (1 << i) != 0)
        .min_by_key(|&i| a.degree_in(i) + b.degree_in(i))
        .expect("nonconstant input");
    if !a.involves(v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = exact_div(a, &ca).expect("content divides");
    let pb = exact_div(b, &cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = primitive_prs_gcd(&pa, &pb, v);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    // small coefficients first: the running gcd shrinks quickly
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = p.ring().zero();
    for c in &coeffs {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return p.ring().one();
        }
    }
    g
}

/// Gcd of two polynomials primitive in `v`, via the subresultant PRS.
fn primitive_prs_gcd(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let ring = a.ring();
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a.coeffs_in(v), b.coeffs_in(v))
    } else {
        (b.coeffs_in(v), a.coeffs_in(v))
    };
    if let Ok(q) = exact_div(&MultiPoly::from_coeffs_in(ring, v, &f), &MultiPoly::from_coeffs_in(ring, v, &g)) {
        let _ = q;
        return MultiPoly::from_coeffs_in(ring, v, &g).monic();
    }
    let mut gg = ring.one();
    let mut h = ring.one();
    loop {
        let delta = (f.len() - g.len()) as u32;
        let r = prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return ring.one();
        }
        let divisor = &gg * &h.pow(delta);
        f = std::mem::replace(
            &mut g,
            r.iter()
                .map(|c| exact_div(c, &divisor).expect("subresultant division is exact"))
                .collect(),
        );
        gg = f.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            exact_div(&gg.pow(delta), &h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    let gp = MultiPoly::from_coeffs_in(ring, v, &g);
    let c = content_in(&gp, v);
    exact_div(&gp, &c).expect("content divides").monic()
}

fn trim(p: &mut Vec<MultiPoly>) {
    while p.last().is_some_and(MultiPoly::is_zero) {
        p.pop();
    }
}

/// Pseudo-remainder lc(g)^(deg f − deg g + 1)·f mod g, coefficient lists low→high.
fn prem(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut r: Vec<MultiPoly> = f.to_vec();
    let mut e = (f.len() - g.len() + 1) as u32;
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * lg;
        }
        for (k, gk) in g.iter().enumerate() {
            if !gk.is_zero() {
                r[k + shift] = &r[k + shift] - &(&lr * gk);
            }
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let s = lg.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &s;
        }
    }
    r
}

/// Product of the distinct irreducible factors of `p`, made monic.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(p.ring().one());
    }
    let mask = p.support_mask();
    let v = (0..p.ring().nvars())
        .filter(|&i| mask & (1 << i) != 0)
        .min_by_key(|&i| p.degree_in(i))
        .expect("nonconstant");
    let c = content_in(p, v);
    let q = exact_div(p, &c)?;
    let g = gcd_rec(&q, &q.derivative(v));
    let s = exact_div(&q, &g)?;
    Ok((&s * &squarefree_part(&c)?).monic())
}

/// Square-free decomposition: pairs (factor, multiplicity) with pairwise
/// coprime squarefree factors whose product with multiplicities is `p` up to
/// a constant.
pub fn squarefree_decomposition(p: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out: Vec<(MultiPoly, u32)> = Vec::new();
    let mut rest = p.monic();
    let mut k = 1u32;
    // peel off the squarefree part repeatedly: p = s1·s2·…, s_{i+1} | s_i
    let mut layers = Vec::new();
    while !rest.is_constant() {
        let s = squarefree_part(&rest)?;
        rest = exact_div(&rest, &s)?;
        layers.push(s);
    }
    // factors of multiplicity exactly k are layers[k-1] / layers[k]
    for i in 0..layers.len() {
        let f = if i + 1 < layers.len() {
            exact_div(&layers[i], &layers[i + 1])?
        } else {
            layers[i].clone()
        };
        if !f.is_constant() {
            out.push((f.monic(), k));
        }
        k += 1;
    }
    Ok(out)
}

/// Resultant with respect to variable `v`: the Sylvester determinant with the
/// rows of `a` above those of `b`, computed by fraction-free elimination.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: usize) -> Result<MultiPoly, PolyError> {
    if a.ring() != b.ring() {
        return Err(PolyError::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let ring = a.ring();
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let m = ca.len() - 1;
    let n = cb.len() - 1;
    if m == 0 {
        return Ok(a.pow(n as u32));
    }
    if n == 0 {
        return Ok(b.pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![ring.zero(); size]; size];
    for i in 0..n {
        for (k, c) in ca.iter().enumerate() {
            mat[i][i + m - k] = c.clone();
        }
    }
    for j in 0..m {
        for (k, c) in cb.iter().enumerate() {
            mat[n + j][j + n - k] = c.clone();
        }
    }
    Ok(bareiss_det(ring, mat))
}

/// Determinant of a square matrix of polynomials (Bareiss).
pub fn bareiss_det(ring: &Ring, mut mat: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = mat.len();
    if n == 0 {
        return ring.one();
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return ring.zero();
            };
            mat.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
            mat[i][k] = ring.zero();
        }
        prev = mat[k][k].clone();
    }
    let d = mat[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
