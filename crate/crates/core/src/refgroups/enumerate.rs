//! Breadth-first closure of a finite matrix group and structural fingerprints.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::catalog::GroupRecord;
use super::matrix::Matrix2;
use super::RefGroupError;

/// A finite matrix group closed under multiplication.
///
/// Elements are stored in discovery order (identity first). `right[i][j]` is
/// the index of `elements[i] · generators[j]`, which lets products with an
/// arbitrary element be evaluated by walking its generator word.
#[derive(Debug, Clone)]
pub struct GroupElements {
    pub generators: Vec<Matrix2>,
    elements: Vec<Matrix2>,
    index: FxHashMap<Matrix2, usize>,
    right: Vec<Vec<usize>>,
    /// (parent, generator) with `elements[i] = elements[parent] · generators[generator]`.
    parent: Vec<Option<(usize, usize)>>,
}

impl GroupElements {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Matrix2] {
        &self.elements
    }

    pub fn index_of(&self, m: &Matrix2) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Matrix2) -> bool {
        self.index.contains_key(m)
    }

    /// Generator word of element `i`, left to right.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[i] {
            w.push(g);
            i = p;
        }
        w.reverse();
        w
    }

    /// Index of `elements[a] · elements[b]`, by table lookups only.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.word(b)
            .into_iter()
            .fold(a, |acc, g| self.right[acc][g])
    }

    /// Multiplicative order of element `i`.
    pub fn element_order(&self, i: usize) -> u64 {
        let word = self.word(i);
        let mut cur = i;
        let mut k = 1;
        while cur != 0 {
            cur = word.iter().fold(cur, |acc, &g| self.right[acc][g]);
            k += 1;
        }
        k
    }
}

/// Enumerates all elements generated by the record's matrices.
///
/// Fails when the closure grows beyond twice the expected order, which can
/// only mean wrong generator data.
pub fn enumerate(group: &GroupRecord) -> Result<GroupElements, RefGroupError> {
    let limit = (2 * group.expected_order) as usize;
    enumerate_with_limit(&group.generators, limit)
}

pub fn enumerate_with_limit(
    generators: &[Matrix2],
    limit: usize,
) -> Result<GroupElements, RefGroupError> {
    let n = generators
        .first()
        .map(Matrix2::conductor)
        .ok_or(RefGroupError::NoGenerators)?;
    let id = Matrix2::identity(n);
    let mut elements = vec![id.clone()];
    let mut index = FxHashMap::default();
    index.insert(id, 0usize);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut parent = vec![None];
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (j, g) in generators.iter().enumerate() {
            let prod = elements[head].mul(g);
            let idx = match index.get(&prod) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= limit {
                        return Err(RefGroupError::ClosureOverflow { limit });
                    }
                    index.insert(prod.clone(), i);
                    elements.push(prod);
                    parent.push(Some((head, j)));
                    i
                }
            };
            row.push(idx);
        }
        right.push(row);
        head += 1;
    }
    Ok(GroupElements {
        generators: generators.to_vec(),
        elements,
        index,
        right,
        parent,
    })
}

/// Order, center order and element-order histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    pub center_order: u64,
    pub order_histogram: BTreeMap<u64, u64>,
}

impl Fingerprint {
    pub fn involutions(&self) -> u64 {
        self.order_histogram.get(&2).copied().unwrap_or(0)
    }
}

pub fn fingerprint(els: &GroupElements) -> Fingerprint {
    let center_order = els
        .elements
        .iter()
        .filter(|m| els.generators.iter().all(|g| m.mul(g) == g.mul(m)))
        .count() as u64;
    let mut order_histogram = BTreeMap::new();
    for i in 0..els.len() {
        *order_histogram.entry(els.element_order(i)).or_insert(0) += 1;
    }
    Fingerprint {
        order: els.len() as u64,
        center_order,
        order_histogram,
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::{build_group, GroupKind};
    use super::*;

    #[test]
    fn dihedral_of_order_eight() {
        let g = build_group(GroupKind::Imprimitive { m: 4, p: 4 }).unwrap();
        let els = enumerate(&g).unwrap();
        assert_eq!(els.len(), 8);
        let fp = fingerprint(&els);
        // D4: identity, 5 involutions, 2 of order 4
        assert_eq!(fp.involutions(), 5);
        assert_eq!(fp.center_order, 2);
    }

    #[test]
    fn table_products_agree_with_exact_products() {
        let g = build_group(GroupKind::Exceptional { number: 4 }).unwrap();
        let els = enumerate(&g).unwrap();
        for a in [1usize, 5, 11] {
            for b in [2usize, 7, 23] {
                let exact = els.elements()[a].mul(&els.elements()[b]);
                assert_eq!(els.index_of(&exact), Some(els.mul_index(a, b)));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let g = build_group(GroupKind::Cyclic { m: 7 }).unwrap();
        assert!(matches!(
            enumerate_with_limit(&g.generators, 5),
            Err(RefGroupError::ClosureOverflow { .. })
        ));
    }
}
