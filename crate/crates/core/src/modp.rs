//! Matrices over a prime field F_p with p < 2^31.
//!
//! Used as a fast prescreen for rank computations: the rank of an integer
//! matrix can only drop under reduction mod p, never grow, so a candidate
//! flagged here still needs exact confirmation but a cheap bound comes free.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

pub const DEFAULT_PRESCREEN_PRIME: u64 = 65_521;

const MODULUS_LIMIT: u64 = 1 << 31;

/// Deterministic Miller-Rabin, valid for every n < 2^31.
pub fn is_prime_u31(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 7, 61] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    // operands stay below 2^31, so the product fits in u64
    (a * b) % m
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeFieldMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn new(rows: usize, cols: usize, modulus: u64, entries: Vec<u64>) -> Result<Self> {
        if modulus >= MODULUS_LIMIT || !is_prime_u31(modulus) {
            return Err(Error::Contract(format!("modulus {modulus} is not a prime below 2^31")));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch("entry count".into()));
        }
        if entries.iter().any(|&e| e >= modulus) {
            return Err(Error::Contract("residue out of range".into()));
        }
        Ok(PrimeFieldMatrix { rows, cols, modulus, entries })
    }

    /// Reduces signed integer entries into canonical residues.
    pub fn from_int_entries(rows: usize, cols: usize, modulus: u64, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch("entry count".into()));
        }
        let m = modulus as i64;
        if m <= 0 {
            return Err(Error::Contract("modulus does not fit i64".into()));
        }
        let reduced = entries.iter().map(|&e| e.rem_euclid(m) as u64).collect();
        PrimeFieldMatrix::new(rows, cols, modulus, reduced)
    }

    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Result<Self> {
        PrimeFieldMatrix::new(rows, cols, modulus, vec![0; rows * cols])
    }

    pub fn identity(n: usize, modulus: u64) -> Result<Self> {
        let mut m = PrimeFieldMatrix::zeros(n, n, modulus)?;
        for i in 0..n {
            m.entries[i * n + i] = 1 % modulus;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols || self.modulus != other.modulus {
            return Err(Error::ShapeMismatch("add over F_p".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.modulus)
            .collect();
        Ok(PrimeFieldMatrix { rows: self.rows, cols: self.cols, modulus: self.modulus, entries })
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![0; self.entries.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.get(r, c);
            }
        }
        PrimeFieldMatrix { rows: self.cols, cols: self.rows, modulus: self.modulus, entries }
    }

    /// Same index convention as `ExactMatrix::kron`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ShapeMismatch("kron over different moduli".into()));
        }
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![0; rows * cols];
        for a in 0..self.rows {
            for b in 0..self.cols {
                let f = self.get(a, b);
                if f == 0 {
                    continue;
                }
                for c in 0..other.rows {
                    for d in 0..other.cols {
                        entries[(a * other.rows + c) * cols + (b * other.cols + d)] =
                            mul_mod(f, other.get(c, d), self.modulus);
                    }
                }
            }
        }
        Ok(PrimeFieldMatrix { rows, cols, modulus: self.modulus, entries })
    }

    pub fn block_partial_transpose(&self, block_rows: usize, block_cols: usize) -> Result<Self> {
        if block_rows == 0 || block_cols == 0 || self.rows % block_rows != 0 || self.cols % block_cols != 0 {
            return Err(Error::ShapeMismatch("block tiling over F_p".into()));
        }
        let grid_rows = self.rows / block_rows;
        let grid_cols = self.cols / block_cols;
        let rows = grid_rows * block_cols;
        let cols = grid_cols * block_rows;
        let mut entries = vec![0; rows * cols];
        for gi in 0..grid_rows {
            for gj in 0..grid_cols {
                for r in 0..block_rows {
                    for c in 0..block_cols {
                        entries[(gi * block_cols + c) * cols + (gj * block_rows + r)] =
                            self.get(gi * block_rows + r, gj * block_cols + c);
                    }
                }
            }
        }
        Ok(PrimeFieldMatrix { rows, cols, modulus: self.modulus, entries })
    }

    /// Rank over F_p by Gaussian elimination with modular inverses.
    pub fn rank(&self) -> usize {
        let (m, n, p) = (self.rows, self.cols, self.modulus);
        if m == 0 || n == 0 {
            return 0;
        }
        let mut a = self.entries.clone();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| a[i * n + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..n {
                    a.swap(piv * n + j, r * n + j);
                }
            }
            let inv = pow_mod(a[r * n + c], p - 2, p);
            for i in r + 1..m {
                if a[i * n + c] == 0 {
                    continue;
                }
                let f = mul_mod(a[i * n + c], inv, p);
                for j in c..n {
                    let sub = mul_mod(f, a[r * n + j], p);
                    a[i * n + j] = (a[i * n + j] + p - sub) % p;
                }
            }
            r += 1;
        }
        r
    }

    /// Lifts each residue to the integer in [0, p) as an exact matrix.
    pub fn lift(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| {
            GaussianRational::from_int(self.get(r, c) as i64)
        })
    }
}

impl From<&PrimeFieldMatrix> for ExactMatrix {
    fn from(m: &PrimeFieldMatrix) -> ExactMatrix {
        m.lift()
    }
}
