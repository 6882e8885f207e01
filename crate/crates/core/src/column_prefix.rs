//! Greedy construction of a short column prefix on which a family of
//! pairwise-orthogonal matrices stays linearly independent.
//!
//! Given nonzero matrices `S_1..S_N` of equal shape that are pairwise
//! orthogonal under the Hilbert-Schmidt inner product, there is a set of
//! `K <= N` columns such that the matrices restricted to those columns are
//! still independent as vectors. The construction extends the column set by
//! the first witnessing column whenever the current restrictions become
//! dependent; the returned `K` is not claimed to be minimal.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

/// Returns `(K, column_permutation)`: the first `K` entries of the permutation
/// are the chosen columns, the rest follow in ascending order. The result is
/// certified by an independent rank computation on the stacked restrictions.
pub fn independent_column_prefix(mats: &[ExactMatrix]) -> Result<(usize, Vec<usize>)> {
    if mats.is_empty() {
        return Err(Error::Contract("empty matrix list".into()));
    }
    let rows = mats[0].rows();
    let cols = mats[0].cols();
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::ShapeMismatch(format!("matrix {i} differs in shape")));
        }
        if m.is_zero() {
            return Err(Error::Contract(format!("matrix {i} is zero")));
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].hs_inner(&mats[j])?.is_zero() {
                return Err(Error::Contract(format!(
                    "matrices {i} and {j} are not orthogonal under the Hilbert-Schmidt inner product"
                )));
            }
        }
    }

    // Seed with the first column where the first matrix is nonzero.
    let first = (0..cols)
        .find(|&c| mats[0].column(c).iter().any(|e| !e.is_zero()))
        .expect("nonzero matrix has a nonzero column");
    let mut chosen = vec![first];

    for m in 1..mats.len() {
        let restricted: Vec<Vec<GaussianRational>> =
            mats[..=m].iter().map(|s| restrict(s, &chosen)).collect();
        let (earlier, target) = restricted.split_at(m);
        if let Some(mu) = combination(earlier, &target[0])? {
            // Dependent: extend by the first column where the combination fails.
            let witness = (0..cols)
                .filter(|c| !chosen.contains(c))
                .find(|&c| {
                    let got: Vec<GaussianRational> = (0..rows)
                        .map(|r| {
                            let mut acc = GaussianRational::zero();
                            for (k, coeff) in mu.iter().enumerate() {
                                acc = &acc + &(coeff * mats[k].get(r, c));
                            }
                            acc
                        })
                        .collect();
                    (0..rows).any(|r| &got[r] != mats[m].get(r, c))
                })
                .ok_or_else(|| {
                    Error::Internal("orthogonal matrices admitted a full linear combination".into())
                })?;
            chosen.push(witness);
        }
    }

    // Certificate: the N restrictions stacked as rows must have full rank.
    let k = chosen.len();
    let stacked = ExactMatrix::from_rows(mats.iter().map(|s| restrict(s, &chosen)).collect())?;
    if stacked.rank() != mats.len() {
        return Err(Error::Internal("column prefix failed its independence certificate".into()));
    }

    let mut perm = chosen.clone();
    perm.extend((0..cols).filter(|c| !chosen.contains(c)));
    Ok((k, perm))
}

/// The matrix restricted to the given columns, flattened column-by-column.
fn restrict(m: &ExactMatrix, cols: &[usize]) -> Vec<GaussianRational> {
    let mut v = Vec::with_capacity(cols.len() * m.rows());
    for &c in cols {
        v.extend(m.column(c));
    }
    v
}

/// Coefficients expressing `target` in the span of `vs`, if any.
fn combination(
    vs: &[Vec<GaussianRational>],
    target: &[GaussianRational],
) -> Result<Option<Vec<GaussianRational>>> {
    // columns of the system are the vs
    let len = target.len();
    let a = ExactMatrix::from_fn(len, vs.len(), |r, c| vs[c][r].clone());
    a.solve(target)
}
