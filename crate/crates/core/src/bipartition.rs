//! Canonical indexing of the 2^(n-1) - 1 bipartitions of n parties.
//!
//! Each bipartition is represented by one side: the smaller side, with ties
//! broken towards the side containing party 0. The canonical order lists
//! representatives by size, then lexicographically by party index, which for
//! four parties gives A, B, C, D, AB, AC, AD.

use crate::error::{Error, Result};
use std::collections::HashMap;

pub const MAX_PARTIES: usize = 16;

#[derive(Clone, Debug)]
pub struct BipartitionIndex {
    n: usize,
    masks: Vec<u32>,
    pos_by_mask: HashMap<u32, usize>,
}

pub fn canonical_bipartitions(n: usize) -> Result<BipartitionIndex> {
    if n < 2 {
        return Err(Error::Contract(format!("need at least 2 parties, got {n}")));
    }
    if n > MAX_PARTIES {
        return Err(Error::Unsupported(format!("more than {MAX_PARTIES} parties")));
    }
    let full = (1u32 << n) - 1;
    let mut masks: Vec<u32> = (1..full)
        .filter(|&m| canonical_mask(m, n) == m)
        .collect();
    masks.sort_by(|&a, &b| {
        let (sa, sb) = (a.count_ones(), b.count_ones());
        sa.cmp(&sb).then_with(|| mask_to_parties(a).cmp(&mask_to_parties(b)))
    });
    let pos_by_mask = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(BipartitionIndex { n, masks, pos_by_mask })
}

/// The canonical representative of the bipartition {mask, complement}.
pub fn canonical_mask(mask: u32, n: usize) -> u32 {
    let full = (1u32 << n) - 1;
    let comp = full & !mask;
    let (s, c) = (mask.count_ones(), comp.count_ones());
    if s < c {
        mask
    } else if c < s {
        comp
    } else if mask & 1 != 0 {
        mask
    } else {
        comp
    }
}

pub fn mask_to_parties(mask: u32) -> Vec<usize> {
    (0..32).filter(|&b| mask >> b & 1 == 1).collect()
}

pub fn parties_to_mask(parties: &[usize]) -> u32 {
    parties.iter().fold(0u32, |m, &p| m | 1 << p)
}

/// Image of a subset under a party permutation: party k maps to perm[k].
pub fn apply_perm_to_mask(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for (k, &target) in perm.iter().enumerate() {
        if mask >> k & 1 == 1 {
            out |= 1 << target;
        }
    }
    out
}

pub fn validate_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Contract(format!("permutation length {} for {n} parties", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Contract("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

impl BipartitionIndex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn subset(&self, i: usize) -> Vec<usize> {
        mask_to_parties(self.masks[i])
    }

    /// Party letters of the representative subset, e.g. "AB".
    pub fn label(&self, i: usize) -> String {
        self.subset(i)
            .into_iter()
            .map(|p| (b'A' + p as u8) as char)
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn position_of_mask(&self, mask: u32) -> Result<usize> {
        let full = (1u32 << self.n) - 1;
        if mask == 0 || mask >= full {
            return Err(Error::Contract(format!("mask {mask:#b} is not a proper nonempty subset")));
        }
        let canon = canonical_mask(mask, self.n);
        self.pos_by_mask
            .get(&canon)
            .copied()
            .ok_or_else(|| Error::Internal("canonical mask missing from index".into()))
    }

    pub fn position_of(&self, parties: &[usize]) -> Result<usize> {
        if parties.iter().any(|&p| p >= self.n) {
            return Err(Error::Contract("party index out of range".into()));
        }
        self.position_of_mask(parties_to_mask(parties))
    }

    /// For each position i, the position of the permuted bipartition.
    pub fn permuted_positions(&self, perm: &[usize]) -> Result<Vec<usize>> {
        validate_permutation(perm, self.n)?;
        self.masks
            .iter()
            .map(|&m| self.position_of_mask(apply_perm_to_mask(m, perm)))
            .collect()
    }
}

/// All permutations of 0..n in a deterministic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                cur.push(p);
                go(n, cur, used, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_for_two_three_four_parties() {
        let b2 = canonical_bipartitions(2).unwrap();
        assert_eq!(b2.labels(), vec!["A"]);
        let b3 = canonical_bipartitions(3).unwrap();
        assert_eq!(b3.labels(), vec!["A", "B", "C"]);
        let b4 = canonical_bipartitions(4).unwrap();
        assert_eq!(b4.labels(), vec!["A", "B", "C", "D", "AB", "AC", "AD"]);
    }

    #[test]
    fn count_matches_formula() {
        for n in 2..=8 {
            let b = canonical_bipartitions(n).unwrap();
            assert_eq!(b.len(), (1 << (n - 1)) - 1);
        }
    }

    #[test]
    fn complement_resolves_to_same_position() {
        let b = canonical_bipartitions(4).unwrap();
        // {B,C} and {A,D} are the same bipartition
        assert_eq!(
            b.position_of(&[1, 2]).unwrap(),
            b.position_of(&[0, 3]).unwrap()
        );
        assert_eq!(b.label(b.position_of(&[1, 2]).unwrap()), "AD");
        // {B,C,D} is the A bipartition
        assert_eq!(b.position_of(&[1, 2, 3]).unwrap(), 0);
    }

    #[test]
    fn rejects_trivial_subsets() {
        let b = canonical_bipartitions(3).unwrap();
        assert!(b.position_of(&[]).is_err());
        assert!(b.position_of(&[0, 1, 2]).is_err());
    }

    #[test]
    fn too_few_parties() {
        assert!(canonical_bipartitions(1).is_err());
    }

    #[test]
    fn permutation_positions_are_a_bijection() {
        let b = canonical_bipartitions(4).unwrap();
        for perm in permutations(4) {
            let pos = b.permuted_positions(&perm).unwrap();
            let mut seen = vec![false; b.len()];
            for p in pos {
                assert!(!seen[p]);
                seen[p] = true;
            }
        }
    }
}
