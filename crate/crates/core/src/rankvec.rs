//! Rank vectors over the canonical bipartition order, and floating Renyi
//! entropies used only as cross-checks.
//!
//! Inequality decisions never go through the floating path: the inequality
//! module compares exact big-integer products instead. The entropies here
//! exist to sanity-check the exact machinery against von Neumann entropy
//! within a documented tolerance.

use crate::bipartition::canonical_bipartitions;
use crate::error::{Error, Result};
use crate::state::PureState;
use serde::Serialize;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RankVector {
    n: usize,
    ranks: Vec<usize>,
}

impl RankVector {
    pub fn new(n: usize, ranks: Vec<usize>) -> Result<Self> {
        let index = canonical_bipartitions(n)?;
        if ranks.len() != index.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks for {} bipartitions",
                ranks.len(),
                index.len()
            )));
        }
        if ranks.iter().any(|&r| r == 0) {
            return Err(Error::Contract("ranks must all be at least 1".into()));
        }
        Ok(RankVector { n, ranks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ranks
    }

    pub fn get(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Rank at an arbitrary proper nonempty subset of parties.
    pub fn rank_of(&self, parties: &[usize]) -> Result<usize> {
        let index = canonical_bipartitions(self.n)?;
        Ok(self.ranks[index.position_of(parties)?])
    }

    pub fn componentwise_product(&self, other: &RankVector) -> Result<RankVector> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch("party counts differ".into()));
        }
        RankVector::new(
            self.n,
            self.ranks.iter().zip(&other.ranks).map(|(&a, &b)| a * b).collect(),
        )
    }

    pub fn componentwise_sum(&self, other: &RankVector) -> Result<RankVector> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch("party counts differ".into()));
        }
        RankVector::new(
            self.n,
            self.ranks.iter().zip(&other.ranks).map(|(&a, &b)| a + b).collect(),
        )
    }

    /// The 0-entropy vector: log2 of each rank.
    pub fn zero_entropy_vector(&self) -> Vec<f64> {
        self.ranks.iter().map(|&r| (r as f64).log2()).collect()
    }

    /// Tab-separated table with subset labels as header.
    pub fn to_tsv(&self) -> String {
        let index = canonical_bipartitions(self.n).expect("validated at construction");
        let mut out = index.labels().join("\t");
        out.push('\n');
        out.push_str(
            &self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\t"),
        );
        out.push('\n');
        out
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Schmidt ranks across every canonical bipartition.
pub fn rank_vector(psi: &PureState) -> Result<RankVector> {
    let n = psi.n_parties();
    let index = canonical_bipartitions(n)?;
    let mut ranks = Vec::with_capacity(index.len());
    for i in 0..index.len() {
        ranks.push(psi.schmidt_rank(&index.subset(i))?);
    }
    RankVector::new(n, ranks)
}

/// The coordinate permutation induced on rank vectors by relabeling parties:
/// the result of `permute_rank_vector(rank_vector(psi), perm)` equals
/// `rank_vector(psi.permute_parties(perm))`.
pub fn permute_rank_vector(rv: &RankVector, perm: &[usize]) -> Result<RankVector> {
    let index = canonical_bipartitions(rv.n)?;
    let target = index.permuted_positions(perm)?;
    let mut ranks = vec![0usize; rv.len()];
    for (i, &t) in target.iter().enumerate() {
        ranks[t] = rv.ranks[i];
    }
    RankVector::new(rv.n, ranks)
}

/// Renyi entropy of the reduced state on `parties`, in bits.
///
/// `alpha = 0` returns log2 of the exact Schmidt rank; `alpha = 1` is the von
/// Neumann entropy; other positive `alpha` use the usual formula. Everything
/// except the `alpha = 0` rank goes through floating-point eigenvalues and is
/// only reliable to about 1e-9.
pub fn renyi_entropy(psi: &PureState, parties: &[usize], alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Contract(format!("invalid Renyi order {alpha}")));
    }
    if alpha == 0.0 {
        return Ok((psi.schmidt_rank(parties)? as f64).log2());
    }
    let gram = psi.support_gram(parties)?;
    let n = gram.rows();
    // Embed the Hermitian Gram matrix into a real symmetric matrix of twice
    // the size; its spectrum is the Gram spectrum with doubled multiplicity.
    let mut embedded = vec![vec![0f64; 2 * n]; 2 * n];
    let mut trace = 0f64;
    for r in 0..n {
        trace += gram.get(r, r).re_f64();
        for c in 0..n {
            let re = gram.get(r, c).re_f64();
            let im = gram.get(r, c).im_f64();
            embedded[r][c] = re;
            embedded[n + r][n + c] = re;
            embedded[r][n + c] = -im;
            embedded[n + r][c] = im;
        }
    }
    if trace <= 0.0 {
        return Err(Error::Internal("Gram matrix has nonpositive trace".into()));
    }
    let eigs = symmetric_eigenvalues(embedded);
    let lambdas: Vec<f64> = eigs
        .iter()
        .map(|&e| e / trace)
        .filter(|&l| l > 1e-13)
        .collect();
    // each eigenvalue appears twice in the embedding
    let value = if (alpha - 1.0).abs() < 1e-12 {
        -0.5 * lambdas.iter().map(|&l| l * l.log2()).sum::<f64>()
    } else {
        let power: f64 = lambdas.iter().map(|&l| l.powf(alpha)).sum::<f64>() / 2.0;
        power.log2() / (1.0 - alpha)
    };
    Ok(value)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        .max(1.0);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-14 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartition::permutations;
    use crate::named::{named_state, phi_plus};

    #[test]
    fn product_state_is_all_ones() {
        let s = PureState::basis(vec![2, 2, 2, 2], vec![0, 0, 0, 0]).unwrap();
        assert_eq!(rank_vector(&s).unwrap().as_slice(), &[1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn psi2_vector() {
        let s = named_state("psi2", None).unwrap();
        let rv = rank_vector(&s).unwrap();
        assert_eq!(rv.as_slice(), &[3, 3, 3, 3, 9, 9, 9]);
        assert_eq!(rv.to_string(), "(3,3,3,3,9,9,9)");
    }

    #[test]
    fn single_party_state_rejected() {
        let s = PureState::basis(vec![3], vec![1]).unwrap();
        assert!(rank_vector(&s).is_err());
    }

    #[test]
    fn permutation_is_a_group_action() {
        let s = PureState::random(&[2, 3, 2, 2], 2, 11).unwrap();
        let rv = rank_vector(&s).unwrap();
        let perms = permutations(4);
        for p in &perms {
            // action matches relabeling the state
            let direct = rank_vector(&s.permute_parties(p).unwrap()).unwrap();
            assert_eq!(permute_rank_vector(&rv, p).unwrap(), direct);
        }
        // composition: sigma after tau
        let sigma = &perms[7];
        let tau = &perms[13];
        let composed: Vec<usize> = (0..4).map(|k| sigma[tau[k]]).collect();
        assert_eq!(
            permute_rank_vector(&permute_rank_vector(&rv, tau).unwrap(), sigma).unwrap(),
            permute_rank_vector(&rv, &composed).unwrap()
        );
        let identity: Vec<usize> = (0..4).collect();
        assert_eq!(permute_rank_vector(&rv, &identity).unwrap(), rv);
    }

    #[test]
    fn psi1_swaps() {
        let s = named_state("psi1", None).unwrap();
        let rv = rank_vector(&s).unwrap();
        assert_eq!(rv.as_slice(), &[2, 2, 1, 1, 1, 2, 2]);
        // symmetric under swapping the two trivial parties
        let cd_swap = vec![0, 1, 3, 2];
        assert_eq!(permute_rank_vector(&rv, &cd_swap).unwrap(), rv);
        // swapping the first and third party, recomputed from the state
        let ac_swap = vec![2, 1, 0, 3];
        let direct = rank_vector(&s.permute_parties(&ac_swap).unwrap()).unwrap();
        assert_eq!(permute_rank_vector(&rv, &ac_swap).unwrap(), direct);
        assert_eq!(direct.as_slice(), &[1, 2, 2, 1, 2, 2, 1]);
    }

    #[test]
    fn maximally_entangled_pair_has_one_bit() {
        let s = phi_plus(2).unwrap();
        let s1 = renyi_entropy(&s, &[0], 1.0).unwrap();
        assert!((s1 - 1.0).abs() < 1e-9);
        let s0 = renyi_entropy(&s, &[0], 0.0).unwrap();
        assert!((s0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn von_neumann_bounded_by_zero_entropy() {
        for seed in 0..20u64 {
            let s = PureState::random(&[2, 2, 3], 2, seed).unwrap();
            for subset in [vec![0], vec![1], vec![2]] {
                let s1 = renyi_entropy(&s, &subset, 1.0).unwrap();
                let s0 = renyi_entropy(&s, &subset, 0.0).unwrap();
                assert!(s1 <= s0 + 1e-9, "seed {seed} subset {subset:?}: {s1} > {s0}");
            }
        }
    }

    #[test]
    fn rejects_bad_alpha() {
        let s = phi_plus(2).unwrap();
        assert!(renyi_entropy(&s, &[0], -1.0).is_err());
        assert!(renyi_entropy(&s, &[0], f64::NAN).is_err());
    }

    #[test]
    fn tsv_has_labels() {
        let s = named_state("psi1", None).unwrap();
        let tsv = rank_vector(&s).unwrap().to_tsv();
        assert!(tsv.starts_with("A\tB\tC\tD\tAB\tAC\tAD\n"));
    }
}
