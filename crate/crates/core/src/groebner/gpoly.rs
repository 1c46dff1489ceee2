//! Term lists sorted by an arbitrary monomial order, used inside basis computations.

use std::cmp::Ordering;

use crate::numberfield::CycloNumber;
use crate::polyring::{Monomial, MonomialOrder, MultiPoly, Ring};

pub(crate) type Terms = Vec<(Monomial, CycloNumber)>;

#[derive(Clone, Debug)]
pub(crate) struct GPoly {
    /// Decreasing under the active order; no zero coefficients.
    pub terms: Terms,
    pub sugar: u32,
}

impl GPoly {
    pub fn from_multi(p: &MultiPoly, order: MonomialOrder) -> GPoly {
        let mut terms = p.terms().to_vec();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        GPoly {
            sugar: p.total_degree().unwrap_or(0),
            terms,
        }
    }

    pub fn to_multi(&self, ring: &Ring) -> MultiPoly {
        MultiPoly::from_terms(ring, self.terms.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Total degree of the whole polynomial minus that of its leading monomial.
    pub fn ecart(&self) -> u32 {
        self.max_degree() - self.lm().degree()
    }

    pub fn bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    pub fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero");
                for t in self.terms.iter_mut() {
                    t.1 = t.1.mul_unchecked(&inv);
                }
            }
        }
    }
}

/// `a − c·m·b` restricted to sorted term lists.
pub(crate) fn sub_scaled(
    a: &[(Monomial, CycloNumber)],
    b: &[(Monomial, CycloNumber)],
    m: &Monomial,
    c: &CycloNumber,
    order: MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| -> (Monomial, CycloNumber) { (b[j].0.mul(m), b[j].1.mul_unchecked(c)) };
    let mut pending = if j < b.len() { Some(next_b(j)) } else { None };
    while i < a.len() {
        let Some((bm, bc)) = pending.as_ref() else {
            break;
        };
        match order.cmp(&a[i].0, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((*bm, bc.neg()));
                j += 1;
                pending = if j < b.len() { Some(next_b(j)) } else { None };
            }
            Ordering::Equal => {
                let v = a[i].1.sub_unchecked(bc);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
                pending = if j < b.len() { Some(next_b(j)) } else { None };
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some((bm, bc)) = pending {
        out.push((bm, bc.neg()));
        for t in &b[j + 1..] {
            out.push((t.0.mul(m), t.1.mul_unchecked(c).neg()));
        }
    }
    out
}

/// S-polynomial of two monic polynomials, with its sugar.
pub(crate) fn spoly(f: &GPoly, g: &GPoly, order: MonomialOrder) -> GPoly {
    let l = f.lm().lcm(g.lm());
    let uf = f.lm().div(&l).expect("lcm");
    let ug = g.lm().div(&l).expect("lcm");
    let one = CycloNumber::one(f.terms[0].1.conductor());
    let a: Terms = f.terms[1..].iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect();
    GPoly {
        terms: sub_scaled(&a, &g.terms[1..], &ug, &one, order),
        sugar: (f.sugar + uf.degree()).max(g.sugar + ug.degree()),
    }
}
