use std::cmp::Ordering;

use serde::Serialize;

/// Maximum number of variables in one ring.
pub const MAX_VARS: usize = 8;

/// Exponent vector with its total degree cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    deg: u32,
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().sum();
        m
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = e;
        m.deg = e;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        self.deg = self.deg - self.exps[i] + e;
        self.exps[i] = e;
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += o.exps[i];
        }
        m.deg += o.deg;
        m
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self` when `self | o`.
    #[inline]
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
        }
        m.deg = m.exps.iter().sum();
        m
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(o.exps[i]);
        }
        m.deg = m.exps.iter().sum();
        m
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || o.exps[i] == 0)
    }

    /// Degree counted only over the variables in `mask`.
    #[inline]
    pub fn masked_degree(&self, mask: u16) -> u32 {
        (0..MAX_VARS)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.exps[i])
            .sum()
    }

    /// Index of the only variable present, if the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0).unwrap_or(0);
        write!(f, "{:?}", &self.exps[..=last])
    }
}

/// Total orders on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonomialOrder {
    /// Lexicographic with variable 0 largest.
    Lex,
    /// Graded reverse lexicographic.
    DegRevLex,
    /// Degrevlex on the `front` variables, then degrevlex on the rest.
    /// Eliminates the `front` variables.
    Block { front: u16 },
    /// Anti-graded reverse lexicographic (a local order: 1 > x > x² …).
    LocalDegRevLex,
}

impl MonomialOrder {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::LocalDegRevLex)
    }

    /// `Greater` when `a` ranks above `b`.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b, u16::MAX)),
            MonomialOrder::Block { front } => {
                let fa = a.masked_degree(*front);
                let fb = b.masked_degree(*front);
                fa.cmp(&fb)
                    .then_with(|| revlex(a, b, *front))
                    .then_with(|| (a.deg - fa).cmp(&(b.deg - fb)))
                    .then_with(|| revlex(a, b, !*front))
            }
            MonomialOrder::LocalDegRevLex => {
                b.deg.cmp(&a.deg).then_with(|| revlex(a, b, u16::MAX))
            }
        }
    }
}

/// Reverse lexicographic tie-break on the masked variables: the monomial with
/// the smaller exponent in the last differing variable is larger.
#[inline]
fn revlex(a: &Monomial, b: &Monomial, mask: u16) -> Ordering {
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn local_order_ranks_one_on_top() {
        let o = MonomialOrder::LocalDegRevLex;
        for e in [[1, 0], [0, 1], [3, 2]] {
            assert_eq!(o.cmp(&Monomial::one(), &m(&e)), Ordering::Greater);
        }
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front() {
        let o = MonomialOrder::Block { front: 0b0011 };
        // any monomial containing x or y beats any monomial in s, t only
        assert_eq!(o.cmp(&m(&[0, 1, 0, 0]), &m(&[0, 0, 9, 9])), Ordering::Greater);
        // ties in front fall back to degrevlex on the rest, where s > t
        assert_eq!(o.cmp(&m(&[1, 0, 0, 1]), &m(&[1, 0, 1, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 0, 2, 0]), &m(&[1, 0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.div(&m(&[3, 1])), Some(m(&[1, 0])));
        assert_eq!(a.div(&b), None);
        assert!(m(&[2, 0]).coprime(&m(&[0, 5])));
    }
}
