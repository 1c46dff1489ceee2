//! Generator data for the rank-2 complex reflection groups.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::matrix::Matrix2;
use super::RefGroupError;
use crate::numberfield::{CycloNumber, Rational};

/// Which member of the catalog a record describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    /// Z_m acting on the second coordinate.
    Cyclic { m: u32 },
    /// Z_m × Z_n acting diagonally.
    Product { m: u32, n: u32 },
    /// G(m, p, 2).
    Imprimitive { m: u32, p: u32 },
    /// Shephard–Todd number 4..=22.
    Exceptional { number: u32 },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic { m } => write!(f, "cyclic({m})"),
            GroupKind::Product { m, n } => write!(f, "product({m},{n})"),
            GroupKind::Imprimitive { m, p } => write!(f, "G({m},{p},2)"),
            GroupKind::Exceptional { number } => write!(f, "G{number}"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = RefGroupError;

    /// Accepts `cyclic(m)`, `product(m,n)`, `imprimitive(m,p)`, `G(m,p,2)`,
    /// `exceptional(n)` and `Gn`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RefGroupError::BadSpec(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let args = |name: &str| -> Option<Vec<u32>> {
            let rest = compact.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
            rest.split(',').map(|a| a.parse().ok()).collect()
        };
        let kind = if let Some(a) = args("cyclic") {
            match a[..] {
                [m] => GroupKind::Cyclic { m },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("product") {
            match a[..] {
                [m, n] => GroupKind::Product { m, n },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("imprimitive") {
            match a[..] {
                [m, p] => GroupKind::Imprimitive { m, p },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("G") {
            match a[..] {
                [m, p, 2] => GroupKind::Imprimitive { m, p },
                _ => return Err(bad()),
            }
        } else if let Some(a) = args("exceptional") {
            match a[..] {
                [number] => GroupKind::Exceptional { number },
                _ => return Err(bad()),
            }
        } else if let Some(n) = compact.strip_prefix('G') {
            GroupKind::Exceptional {
                number: n.parse().map_err(|_| bad())?,
            }
        } else {
            return Err(bad());
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl GroupKind {
    pub fn validate(&self) -> Result<(), RefGroupError> {
        let bad = |why: &str| Err(RefGroupError::InvalidParameters(format!("{self}: {why}")));
        match *self {
            GroupKind::Cyclic { m } if m < 2 => bad("m must be at least 2"),
            GroupKind::Product { m, n } if m < 2 || n < 2 => bad("m and n must be at least 2"),
            GroupKind::Imprimitive { m, p } if m < 2 || p == 0 || m % p != 0 => {
                bad("need m >= 2 and p | m")
            }
            GroupKind::Imprimitive { m: 2, p: 2 } => bad("G(2,2,2) is reducible"),
            GroupKind::Exceptional { number } if !(4..=22).contains(&number) => {
                bad("exceptional numbers run from 4 to 22")
            }
            _ => {
                if self.conductor() > crate::numberfield::MAX_CONDUCTOR {
                    return bad("conductor too large");
                }
                Ok(())
            }
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            GroupKind::Cyclic { m } => m as u64,
            GroupKind::Product { m, n } => m as u64 * n as u64,
            GroupKind::Imprimitive { m, p } => 2 * (m as u64) * (m as u64) / p as u64,
            GroupKind::Exceptional { number } => exceptional_row(number).order,
        }
    }

    pub fn degrees(&self) -> (u32, u32) {
        match *self {
            GroupKind::Cyclic { m } => (1, m),
            GroupKind::Product { m, n } => (m, n),
            GroupKind::Imprimitive { m, p } => (2 * m / p, m),
            GroupKind::Exceptional { number } => exceptional_row(number).degrees,
        }
    }

    /// Conductor of the field holding every generator entry.
    pub fn conductor(&self) -> u32 {
        match *self {
            GroupKind::Cyclic { m } => m,
            GroupKind::Product { m, n } => num_integer::lcm(m, n),
            GroupKind::Imprimitive { m, .. } => m,
            GroupKind::Exceptional { number } => exceptional_row(number).family.conductor(),
        }
    }
}

/// The polyhedral group an exceptional group is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl Family {
    /// The exponent p in (ST)^p = Z^{k₃}.
    pub fn st_exponent(self) -> u32 {
        match self {
            Family::Tetrahedral => 3,
            Family::Octahedral => 4,
            Family::Icosahedral => 5,
        }
    }

    pub fn conductor(self) -> u32 {
        match self {
            Family::Tetrahedral | Family::Octahedral => 24,
            Family::Icosahedral => 60,
        }
    }
}

/// A root of unity written as a product of exp(2πi·a/b) factors.
#[derive(Debug, Clone, Copy)]
pub struct RootOfUnity {
    pub label: &'static str,
    pub turns: &'static [(u32, u32)],
}

impl RootOfUnity {
    pub fn value(&self, conductor: u32) -> CycloNumber {
        let mut k: u64 = 0;
        for &(a, b) in self.turns {
            assert!(conductor % b == 0, "root order {b} outside Q(zeta_{conductor})");
            k += a as u64 * (conductor / b) as u64;
        }
        CycloNumber::zeta_pow(conductor, k as i64)
    }
}

/// One row of the exceptional-group tables.
#[derive(Debug, Clone, Copy)]
pub struct ExceptionalRow {
    pub number: u32,
    pub gap_label: &'static str,
    pub family: Family,
    pub lambda: RootOfUnity,
    pub mu: RootOfUnity,
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    pub k: u32,
    pub degrees: (u32, u32),
    pub order: u64,
}

macro_rules! root {
    ($label:expr $(, $t:expr)*) => {
        RootOfUnity { label: $label, turns: &[$($t),*] }
    };
}

const MINUS: (u32, u32) = (1, 2);
const OMEGA: (u32, u32) = (1, 3);
const OMEGA2: (u32, u32) = (2, 3);
const I: (u32, u32) = (1, 4);
const EPS: (u32, u32) = (1, 8);
const EPS3: (u32, u32) = (3, 8);
const EPS7: (u32, u32) = (7, 8);
const ETA3: (u32, u32) = (3, 5);

const fn row(
    number: u32,
    gap_label: &'static str,
    family: Family,
    lambda: RootOfUnity,
    mu: RootOfUnity,
    ks: [u32; 4],
    degrees: (u32, u32),
    order: u64,
) -> ExceptionalRow {
    ExceptionalRow {
        number,
        gap_label,
        family,
        lambda,
        mu,
        k1: ks[0],
        k2: ks[1],
        k3: ks[2],
        k: ks[3],
        degrees,
        order,
    }
}

use Family::{Icosahedral as A5, Octahedral as S4, Tetrahedral as A4};

/// The nineteen exceptional groups: λ, μ, k₁, k₂, k₃, k, degrees and order.
pub const EXCEPTIONAL_ROWS: [ExceptionalRow; 19] = [
    row(4, "[24,3]", A4, root!("-1", MINUS), root!("-omega", MINUS, OMEGA), [1, 2, 2, 2], (4, 6), 24),
    row(5, "[72,25]", A4, root!("-omega", MINUS, OMEGA), root!("-omega", MINUS, OMEGA), [1, 6, 6, 6], (6, 12), 72),
    row(6, "[48,33]", A4, root!("i", I), root!("-omega", MINUS, OMEGA), [4, 4, 1, 4], (4, 12), 48),
    row(7, "[144,157]", A4, root!("i*omega", I, OMEGA), root!("-omega", MINUS, OMEGA), [8, 12, 3, 12], (12, 12), 144),
    row(8, "[96,67]", S4, root!("eps^3", EPS3), root!("1"), [1, 2, 4, 4], (8, 12), 96),
    row(9, "[192,963]", S4, root!("i", I), root!("eps", EPS), [8, 7, 8, 8], (8, 24), 192),
    row(10, "[288,400]", S4, root!("eps^7*omega^2", EPS7, OMEGA2), root!("-omega", MINUS, OMEGA), [7, 12, 12, 12], (12, 24), 288),
    row(11, "[576,5472]", S4, root!("i", I), root!("eps*omega", EPS, OMEGA), [24, 21, 8, 24], (24, 24), 576),
    row(12, "[48,29]", S4, root!("i", I), root!("1"), [2, 1, 1, 2], (6, 8), 48),
    row(13, "[96,192]", S4, root!("i", I), root!("i", I), [4, 1, 2, 4], (8, 12), 96),
    row(14, "[144,122]", S4, root!("i", I), root!("-omega", MINUS, OMEGA), [6, 6, 5, 6], (6, 24), 144),
    row(15, "[288,903]", S4, root!("i", I), root!("i*omega", I, OMEGA), [12, 3, 10, 12], (12, 24), 288),
    row(16, "[600,54]", A5, root!("-eta^3", MINUS, ETA3), root!("1"), [7, 10, 10, 10], (20, 30), 600),
    row(17, "[1200,483]", A5, root!("i", I), root!("i*eta^3", I, ETA3), [20, 11, 20, 20], (20, 60), 1200),
    row(18, "[1800,328]", A5, root!("-omega*eta^3", MINUS, OMEGA, ETA3), root!("omega^2", OMEGA2), [11, 30, 30, 30], (30, 60), 1800),
    row(19, "[3600, ]", A5, root!("i*omega", I, OMEGA), root!("i*eta^3", I, ETA3), [40, 33, 40, 60], (60, 60), 3600),
    row(20, "[360,51]", A5, root!("1"), root!("omega^2", OMEGA2), [3, 6, 5, 6], (12, 30), 360),
    row(21, "[720,420]", A5, root!("i", I), root!("omega^2", OMEGA2), [12, 12, 1, 12], (12, 60), 720),
    row(22, "[240,93]", A5, root!("i", I), root!("1"), [4, 4, 3, 4], (12, 20), 240),
];

pub fn exceptional_row(number: u32) -> &'static ExceptionalRow {
    EXCEPTIONAL_ROWS
        .iter()
        .find(|r| r.number == number)
        .unwrap_or_else(|| panic!("no exceptional group G{number}"))
}

/// Klein's matrices S₁, T₁ for the three polyhedral families.
pub fn klein_generators(family: Family) -> (Matrix2, Matrix2) {
    let n = family.conductor();
    let z = |k: i64| CycloNumber::zeta_pow(n, k);
    let c = |k: i64| CycloNumber::from_int(n, k);
    let m = |a, b, c, d| Matrix2::new(a, b, c, d).expect("same conductor");
    match family {
        Family::Tetrahedral | Family::Octahedral => {
            let eps = |k: i64| z(3 * k);
            let i = z(6);
            let r2 = eps(1).sub_unchecked(&eps(3));
            let inv_r2 = r2.inv().expect("sqrt 2 is nonzero");
            if family == Family::Tetrahedral {
                let s1 = Matrix2::diag(i.clone(), i.neg());
                let t1 = m(eps(1), eps(3), eps(1), eps(7)).scale(&inv_r2);
                (s1, t1)
            } else {
                let s1 = m(i.clone(), c(1), c(-1), i.neg()).scale(&inv_r2);
                let t1 = m(eps(1), eps(1), eps(3), eps(7)).scale(&inv_r2);
                (s1, t1)
            }
        }
        Family::Icosahedral => {
            let eta = |k: i64| z(12 * k);
            // √5 = 1 + 2(η + η⁴)
            let r5 = c(1).add_unchecked(&eta(1).add_unchecked(&eta(4)).scale(&Rational::from_int(2)));
            let inv_r5 = r5.inv().expect("sqrt 5 is nonzero");
            let s1 = m(
                eta(4).sub_unchecked(&eta(1)),
                eta(2).sub_unchecked(&eta(3)),
                eta(2).sub_unchecked(&eta(3)),
                eta(1).sub_unchecked(&eta(4)),
            )
            .scale(&inv_r5);
            let t1 = m(
                eta(2).sub_unchecked(&eta(4)),
                eta(4).sub_unchecked(&c(1)),
                c(1).sub_unchecked(&eta(1)),
                eta(3).sub_unchecked(&eta(1)),
            )
            .scale(&inv_r5);
            (s1, t1)
        }
    }
}

/// A catalog entry with its generating matrices.
#[derive(Debug, Clone)]
pub struct GroupRecord {
    pub kind: GroupKind,
    pub conductor: u32,
    pub generators: Vec<Matrix2>,
    pub generator_names: Vec<&'static str>,
    pub expected_order: u64,
    pub degrees: (u32, u32),
    /// Present for exceptional groups only.
    pub exceptional: Option<&'static ExceptionalRow>,
}

impl GroupRecord {
    pub fn label(&self) -> String {
        self.kind.to_string()
    }
}

/// Constructs the generators of a catalog group.
pub fn build_group(kind: GroupKind) -> Result<GroupRecord, RefGroupError> {
    kind.validate()?;
    let n = kind.conductor();
    let one = CycloNumber::one(n);
    let (generators, names, exceptional) = match kind {
        GroupKind::Cyclic { m } => (
            vec![Matrix2::diag(one, CycloNumber::zeta_pow(n, (n / m) as i64))],
            vec!["g"],
            None,
        ),
        GroupKind::Product { m, n: k } => (
            vec![
                Matrix2::diag(CycloNumber::zeta_pow(n, (n / m) as i64), one.clone()),
                Matrix2::diag(one, CycloNumber::zeta_pow(n, (n / k) as i64)),
            ],
            vec!["g1", "g2"],
            None,
        ),
        GroupKind::Imprimitive { m, p } => {
            let theta = |k: i64| CycloNumber::zeta_pow(m, k);
            let zero = CycloNumber::zero(m);
            let swap = Matrix2::new(zero.clone(), one.clone(), one.clone(), zero).unwrap();
            let mut gens = vec![swap, Matrix2::diag(theta(1), theta(-1))];
            let mut names = vec!["swap", "diag(theta,theta^-1)"];
            if p < m {
                gens.push(Matrix2::diag(theta(p as i64), one));
                names.push("diag(theta^p,1)");
            }
            (gens, names, None)
        }
        GroupKind::Exceptional { number } => {
            let row = exceptional_row(number);
            let (s1, t1) = klein_generators(row.family);
            let s = s1.scale(&row.lambda.value(n));
            let t = t1.scale(&row.mu.value(n));
            let z = Matrix2::scalar(CycloNumber::zeta_pow(n, (n / row.k) as i64));
            (vec![s, t, z], vec!["S", "T", "Z"], Some(row))
        }
    };
    Ok(GroupRecord {
        kind,
        conductor: n,
        generators,
        generator_names: names,
        expected_order: kind.order(),
        degrees: kind.degrees(),
        exceptional,
    })
}

/// Exponents of the presentation S² = Z^{k₁}, T³ = Z^{k₂}, (ST)^p = Z^{k₃}, Z^k = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    pub k: u32,
    pub p: u32,
}

impl ExceptionalRow {
    pub fn presentation(&self) -> Presentation {
        Presentation {
            k1: self.k1,
            k2: self.k2,
            k3: self.k3,
            k: self.k,
            p: self.family.st_exponent(),
        }
    }
}

/// Checks the six defining relations on the generators S, T, Z.
pub fn relations_hold(s: &Matrix2, t: &Matrix2, z: &Matrix2, pres: &Presentation) -> bool {
    s.mul(s) == z.pow(pres.k1)
        && t.pow(3) == z.pow(pres.k2)
        && s.mul(t).pow(pres.p) == z.pow(pres.k3)
        && s.mul(z) == z.mul(s)
        && t.mul(z) == z.mul(t)
        && z.pow(pres.k).is_identity()
}

/// The presentation of an exceptional group holds for its generators.
/// Other kinds have no such presentation and report false.
pub fn verify_presentation(group: &GroupRecord) -> bool {
    match (group.exceptional, group.generators.as_slice()) {
        (Some(row), [s, t, z]) => relations_hold(s, t, z, &row.presentation()),
        _ => false,
    }
}

/// Every catalog group of order `d`: cyclic, products, G(m,p,2) and exceptional.
pub fn classes_of_degree(d: u64) -> Vec<GroupKind> {
    let mut out = Vec::new();
    if d < 2 {
        return out;
    }
    if d <= u32::MAX as u64 {
        out.push(GroupKind::Cyclic { m: d as u32 });
    }
    let mut m = 2u64;
    while m * m <= d {
        if d % m == 0 {
            out.push(GroupKind::Product {
                m: m as u32,
                n: (d / m) as u32,
            });
        }
        m += 1;
    }
    // 2m²/p = d with p | m forces m ≤ d/2.
    for m in 2..=(d / 2) {
        let num = 2 * m * m;
        if num % d != 0 {
            continue;
        }
        let p = num / d;
        if p >= 1 && m % p == 0 && !(m == 2 && p == 2) {
            out.push(GroupKind::Imprimitive {
                m: m as u32,
                p: p as u32,
            });
        }
    }
    for row in EXCEPTIONAL_ROWS.iter() {
        if row.order == d {
            out.push(GroupKind::Exceptional { number: row.number });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("G(4,1,2)".parse::<GroupKind>().unwrap(), GroupKind::Imprimitive { m: 4, p: 1 });
        assert_eq!("G4".parse::<GroupKind>().unwrap(), GroupKind::Exceptional { number: 4 });
        assert_eq!("cyclic(5)".parse::<GroupKind>().unwrap(), GroupKind::Cyclic { m: 5 });
        assert!("G(2,2,2)".parse::<GroupKind>().is_err());
        assert!("G(4,3,2)".parse::<GroupKind>().is_err());
        assert!("G23".parse::<GroupKind>().is_err());
        assert!("dihedral(4)".parse::<GroupKind>().is_err());
    }

    #[test]
    fn degree_products_match_orders() {
        for row in EXCEPTIONAL_ROWS.iter() {
            assert_eq!(row.degrees.0 as u64 * row.degrees.1 as u64, row.order, "G{}", row.number);
        }
    }

    #[test]
    fn cyclic_generator_is_diagonal() {
        let g = build_group(GroupKind::Cyclic { m: 5 }).unwrap();
        assert_eq!(g.generators.len(), 1);
        let m = &g.generators[0];
        assert!(m.entry(0, 0).is_one());
        assert_eq!(m.entry(1, 1), &CycloNumber::zeta(5));
    }

    #[test]
    fn klein_generators_have_unit_determinant() {
        for fam in [Family::Tetrahedral, Family::Octahedral, Family::Icosahedral] {
            let (s, t) = klein_generators(fam);
            assert!(s.det().is_one(), "{fam:?}");
            assert!(t.det().is_one(), "{fam:?}");
        }
    }
}
