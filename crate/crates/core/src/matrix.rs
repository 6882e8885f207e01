//! Dense matrices over the Gaussian rationals.
//!
//! Rank is computed by fraction-free (Bareiss) elimination, so it is exact for
//! any input; for Gaussian-integer matrices the intermediate entries stay
//! integral with bounded growth. Pivoting always takes the first nonzero entry
//! in the current column, which keeps every computation deterministic.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged row lengths".into()));
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer matrices, mainly used in tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = GaussianRational::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(r, k) * other.get(k, c));
            }
            acc
        }))
    }

    /// Hilbert-Schmidt inner product `trace(self^dagger other)`.
    pub fn hs_inner(&self, other: &Self) -> Result<GaussianRational> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("hs_inner on different shapes".into()));
        }
        let mut acc = GaussianRational::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = &acc + &(&a.conj() * b);
        }
        Ok(acc)
    }

    /// Kronecker product with the left factor indexing the major blocks:
    /// entry at row `a*other.rows + c`, column `b*other.cols + d` is
    /// `self[a,b] * other[c,d]`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ExactMatrix::zeros(rows, cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let f = self.get(a, b);
                if f.is_zero() {
                    continue;
                }
                for c in 0..other.rows {
                    for d in 0..other.cols {
                        let v = f * other.get(c, d);
                        out.set(a * other.rows + c, b * other.cols + d, v);
                    }
                }
            }
        }
        out
    }

    /// Transposes each `block_rows x block_cols` block in place, viewing the
    /// matrix as a grid of such blocks. Maps `kron(R, S)` to `kron(R, S^T)`.
    pub fn block_partial_transpose(&self, block_rows: usize, block_cols: usize) -> Result<Self> {
        if block_rows == 0 || block_cols == 0 || self.rows % block_rows != 0 || self.cols % block_cols != 0 {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix cannot be tiled by {}x{} blocks",
                self.rows, self.cols, block_rows, block_cols
            )));
        }
        let grid_rows = self.rows / block_rows;
        let grid_cols = self.cols / block_cols;
        let mut out = ExactMatrix::zeros(grid_rows * block_cols, grid_cols * block_rows);
        for gi in 0..grid_rows {
            for gj in 0..grid_cols {
                for r in 0..block_rows {
                    for c in 0..block_cols {
                        let v = self.get(gi * block_rows + r, gj * block_cols + c).clone();
                        out.set(gi * block_cols + c, gj * block_rows + r, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact rank over the complex field, by fraction-free Bareiss elimination
    /// with first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        if m == 0 || n == 0 {
            return 0;
        }
        let mut a = self.entries.clone();
        let mut prev = GaussianRational::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i * n + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..n {
                    a.swap(p * n + j, r * n + j);
                }
            }
            let pivot = a[r * n + c].clone();
            for i in r + 1..m {
                let below = a[i * n + c].clone();
                for j in c + 1..n {
                    let num = &(&pivot * &a[i * n + j]) - &(&below * &a[r * n + j]);
                    a[i * n + j] = &num / &prev;
                }
                a[i * n + c] = GaussianRational::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// A basis of the right null space, by Gauss-Jordan elimination.
    pub fn nullspace(&self) -> Vec<Vec<GaussianRational>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i * n + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..n {
                    a.swap(p * n + j, r * n + j);
                }
            }
            let inv = &GaussianRational::one() / &a[r * n + c];
            for j in c..n {
                a[r * n + j] = &a[r * n + j] * &inv;
            }
            for i in 0..m {
                if i != r && !a[i * n + c].is_zero() {
                    let f = a[i * n + c].clone();
                    for j in c..n {
                        a[i * n + j] = &a[i * n + j] - &(&f * &a[r * n + j]);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); n];
            v[free] = GaussianRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&a[row * n + free];
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `self * x = rhs`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Result<Option<Vec<GaussianRational>>> {
        if rhs.len() != self.rows {
            return Err(Error::ShapeMismatch("solve rhs length".into()));
        }
        let (m, n) = (self.rows, self.cols);
        let width = n + 1;
        let mut a: Vec<GaussianRational> = Vec::with_capacity(m * width);
        for r in 0..m {
            for c in 0..n {
                a.push(self.get(r, c).clone());
            }
            a.push(rhs[r].clone());
        }
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i * width + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..width {
                    a.swap(p * width + j, r * width + j);
                }
            }
            let inv = &GaussianRational::one() / &a[r * width + c];
            for j in c..width {
                a[r * width + j] = &a[r * width + j] * &inv;
            }
            for i in 0..m {
                if i != r && !a[i * width + c].is_zero() {
                    let f = a[i * width + c].clone();
                    for j in c..width {
                        a[i * width + j] = &a[i * width + j] - &(&f * &a[r * width + j]);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        // Any leftover nonzero in the augmented column marks inconsistency.
        for i in r..m {
            if !a[i * width + n].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![GaussianRational::zero(); n];
        for (row, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = a[row * width + n].clone();
        }
        Ok(Some(x))
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries flattened row-major; used when matrices are treated as vectors.
    pub fn flatten(&self) -> &[GaussianRational] {
        &self.entries
    }

    /// Real part of every entry as `BigRational`; errors if any entry has a
    /// nonzero imaginary part.
    pub fn to_real_rows(&self) -> Result<Vec<Vec<BigRational>>> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                let e = self.get(r, c);
                if !e.im().is_zero() {
                    return Err(Error::Contract("matrix has nonreal entries".into()));
                }
                row.push(e.re().clone());
            }
            out.push(row);
        }
        Ok(out)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent rank oracle: plain Gauss-Jordan with rational division,
    /// no fraction-free scheme, different pivot bookkeeping.
    fn rank_oracle(m: &ExactMatrix) -> usize {
        let mut rows: Vec<Vec<GaussianRational>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = &GaussianRational::one() / &rows[rank][c];
            for j in 0..m.cols() {
                rows[rank][j] = &rows[rank][j] * &inv;
            }
            for i in 0..rows.len() {
                if i != rank && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in 0..m.cols() {
                        rows[i][j] = &rows[i][j] - &(&f * &rows[rank][j]);
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> ExactMatrix {
        ExactMatrix::from_fn(rows, cols, |_, _| {
            GaussianRational::from_int(rng.gen_range(-bound..=bound))
        })
    }

    #[test]
    fn rank_identity() {
        assert_eq!(ExactMatrix::identity(2).rank(), 2);
    }

    #[test]
    fn rank_proportional_complex_rows() {
        // second row = i * first row
        let i = GaussianRational::i();
        let m = ExactMatrix::from_rows(vec![
            vec![GaussianRational::one(), i.clone()],
            vec![i.clone(), GaussianRational::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_empty() {
        assert_eq!(ExactMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(ExactMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn rank_matches_independent_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let m = random_int_matrix(&mut rng, 5, 7, 3);
            assert_eq!(m.rank(), rank_oracle(&m));
        }
    }

    #[test]
    fn rank_invariant_under_permutation_and_invertible_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_int_matrix(&mut rng, 4, 6, 2);
            let r = m.rank();

            // row/column permutation
            let mut perm_rows: Vec<Vec<GaussianRational>> =
                (0..4).map(|i| (0..6).map(|j| m.get(i, j).clone()).collect()).collect();
            perm_rows.reverse();
            let permuted = ExactMatrix::from_rows(perm_rows).unwrap();
            assert_eq!(permuted.rank(), r);
            assert_eq!(m.transpose().rank(), r);

            // multiply by a random invertible square matrix on the left
            let inv = loop {
                let cand = random_int_matrix(&mut rng, 4, 4, 2);
                if cand.rank() == 4 {
                    break cand;
                }
            };
            assert_eq!(inv.mul(&m).unwrap().rank(), r);
        }
    }

    #[test]
    fn kron_identity_and_rank_multiplicativity() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ExactMatrix::identity(4));

        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let a = random_int_matrix(&mut rng, 3, 2, 2);
            let b = random_int_matrix(&mut rng, 2, 3, 2);
            assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
        }
    }

    #[test]
    fn kron_index_convention() {
        // kron([[1,0],[0,0]], [[0,1],[0,0]]) has its single 1 at row 0, col 1
        let a = ExactMatrix::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap();
        let b = ExactMatrix::from_int_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let k = a.kron(&b);
        for r in 0..4 {
            for c in 0..4 {
                let expect = if (r, c) == (0, 1) { 1 } else { 0 };
                assert_eq!(k.get(r, c), &GaussianRational::from_int(expect));
            }
        }
    }

    #[test]
    fn partial_transpose_maps_kron_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let r = random_int_matrix(&mut rng, 2, 3, 2);
            let s = random_int_matrix(&mut rng, 3, 2, 2);
            let m = r.kron(&s);
            let pt = m.block_partial_transpose(s.rows(), s.cols()).unwrap();
            assert_eq!(pt, r.kron(&s.transpose()));
            // involution
            let back = pt.block_partial_transpose(s.cols(), s.rows()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn partial_transpose_rank_bound_for_two_terms() {
        // rank(M^Gamma) <= 2 rank(M) when M is a sum of two Kronecker products
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let r1 = random_int_matrix(&mut rng, 2, 2, 2);
            let r2 = random_int_matrix(&mut rng, 2, 2, 2);
            let s1 = random_int_matrix(&mut rng, 2, 2, 2);
            let s2 = random_int_matrix(&mut rng, 2, 2, 2);
            let m = r1.kron(&s1).add(&r2.kron(&s2)).unwrap();
            let pt = m.block_partial_transpose(2, 2).unwrap();
            assert!(pt.rank() <= 2 * m.rank());
        }
    }

    #[test]
    fn partial_transpose_shape_error() {
        let m = ExactMatrix::zeros(4, 4);
        assert!(m.block_partial_transpose(3, 2).is_err());
    }

    #[test]
    fn solve_and_nullspace() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in 0..2 {
                let mut acc = GaussianRational::zero();
                for c in 0..3 {
                    acc = &acc + &(m.get(r, c) * &v[c]);
                }
                assert!(acc.is_zero());
            }
        }
        let rhs = vec![GaussianRational::from_int(2), GaussianRational::from_int(4)];
        let x = m.solve(&rhs).unwrap().expect("consistent");
        for r in 0..2 {
            let mut acc = GaussianRational::zero();
            for c in 0..3 {
                acc = &acc + &(m.get(r, c) * &x[c]);
            }
            assert_eq!(acc, rhs[r]);
        }
        let bad = vec![GaussianRational::from_int(1), GaussianRational::from_int(0)];
        assert!(m.solve(&bad).unwrap().is_none());
    }
}
