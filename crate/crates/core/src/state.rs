//! Multipartite pure states with sparse exact amplitudes.
//!
//! States are deliberately unnormalized: every rank in this crate is invariant
//! under nonzero scaling, and staying inside the Gaussian rationals keeps all
//! arithmetic exact. Multi-indices are packed row-major in party order
//! everywhere.

use crate::bipartition::validate_permutation;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PureState {
    dims: Vec<usize>,
    amps: BTreeMap<Vec<usize>, GaussianRational>,
}

/// An ordered partition of the parties into blocks, used to merge sub-parties
/// into composite parties.
#[derive(Clone, Debug)]
pub struct PartyGrouping {
    groups: Vec<Vec<usize>>,
}

impl PartyGrouping {
    pub fn new(groups: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        if groups.iter().any(|g| g.is_empty()) {
            return Err(Error::Contract("empty block in party grouping".into()));
        }
        let mut seen = vec![false; n];
        for &p in groups.iter().flatten() {
            if p >= n || seen[p] {
                return Err(Error::Contract("party grouping is not a partition".into()));
            }
            seen[p] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Contract("party grouping does not cover all parties".into()));
        }
        Ok(PartyGrouping { groups })
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }
}

impl PureState {
    /// Builds a state from explicit amplitudes. Zero amplitudes are dropped;
    /// the all-zero state and duplicate multi-indices are rejected.
    pub fn new(
        dims: Vec<usize>,
        amplitudes: impl IntoIterator<Item = (Vec<usize>, GaussianRational)>,
    ) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Contract("party dimensions must all be at least 1".into()));
        }
        let mut amps = BTreeMap::new();
        for (idx, amp) in amplitudes {
            if idx.len() != dims.len() {
                return Err(Error::Contract("multi-index length differs from party count".into()));
            }
            if idx.iter().zip(&dims).any(|(&i, &d)| i >= d) {
                return Err(Error::Contract(format!("index {idx:?} out of range for dims {dims:?}")));
            }
            if amp.is_zero() {
                continue;
            }
            if amps.insert(idx.clone(), amp).is_some() {
                return Err(Error::Contract(format!("duplicate multi-index {idx:?}")));
            }
        }
        if amps.is_empty() {
            return Err(Error::Contract("the zero state is not a valid pure state".into()));
        }
        Ok(PureState { dims, amps })
    }

    /// Basis product state |idx>.
    pub fn basis(dims: Vec<usize>, idx: Vec<usize>) -> Result<Self> {
        PureState::new(dims, [(idx, GaussianRational::one())])
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&Vec<usize>, &GaussianRational)> {
        self.amps.iter()
    }

    pub fn term_count(&self) -> usize {
        self.amps.len()
    }

    fn check_proper_subset(&self, parties: &[usize]) -> Result<Vec<usize>> {
        let n = self.n_parties();
        let mut sorted: Vec<usize> = parties.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != parties.len() {
            return Err(Error::Contract("duplicate party in subset".into()));
        }
        if sorted.iter().any(|&p| p >= n) {
            return Err(Error::Contract("party index out of range".into()));
        }
        if sorted.is_empty() || sorted.len() == n {
            return Err(Error::Contract("subset must be nonempty and proper".into()));
        }
        Ok(sorted)
    }

    /// The coefficient matrix of the bipartition `parties : complement`,
    /// rows indexed row-major by the parties of the subset in party order.
    /// This is the full dense matrix; for ranks prefer [`schmidt_rank`],
    /// which works on the support only.
    ///
    /// [`schmidt_rank`]: PureState::schmidt_rank
    pub fn matricize(&self, parties: &[usize]) -> Result<ExactMatrix> {
        let subset = self.check_proper_subset(parties)?;
        let comp: Vec<usize> = (0..self.n_parties()).filter(|p| !subset.contains(p)).collect();
        let rows: usize = subset.iter().map(|&p| self.dims[p]).product();
        let cols: usize = comp.iter().map(|&p| self.dims[p]).product();
        let mut m = ExactMatrix::zeros(rows, cols);
        for (idx, amp) in &self.amps {
            m.set(pack(idx, &subset, &self.dims), pack(idx, &comp, &self.dims), amp.clone());
        }
        Ok(m)
    }

    /// The matricization restricted to rows and columns that actually occur in
    /// the support. Same rank, but never larger than term_count in either
    /// direction.
    fn support_matricize(&self, subset: &[usize], comp: &[usize]) -> ExactMatrix {
        let mut row_keys = BTreeSet::new();
        let mut col_keys = BTreeSet::new();
        for idx in self.amps.keys() {
            row_keys.insert(pack(idx, subset, &self.dims));
            col_keys.insert(pack(idx, comp, &self.dims));
        }
        let row_pos: BTreeMap<usize, usize> =
            row_keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let col_pos: BTreeMap<usize, usize> =
            col_keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut m = ExactMatrix::zeros(row_pos.len(), col_pos.len());
        for (idx, amp) in &self.amps {
            let r = row_pos[&pack(idx, subset, &self.dims)];
            let c = col_pos[&pack(idx, comp, &self.dims)];
            m.set(r, c, amp.clone());
        }
        m
    }

    /// Schmidt rank across `parties : complement`.
    pub fn schmidt_rank(&self, parties: &[usize]) -> Result<usize> {
        let subset = self.check_proper_subset(parties)?;
        let comp: Vec<usize> = (0..self.n_parties()).filter(|p| !subset.contains(p)).collect();
        Ok(self.support_matricize(&subset, &comp).rank())
    }

    /// Gram matrix of the reduced state on `parties` (M M^dagger of the
    /// matricization), restricted to the support rows. Exact entries.
    pub fn support_gram(&self, parties: &[usize]) -> Result<ExactMatrix> {
        let subset = self.check_proper_subset(parties)?;
        let comp: Vec<usize> = (0..self.n_parties()).filter(|p| !subset.contains(p)).collect();
        let m = self.support_matricize(&subset, &comp);
        // Work on the smaller side; the nonzero spectrum agrees.
        if m.rows() <= m.cols() {
            m.mul(&m.conj_transpose())
        } else {
            m.conj_transpose().mul(&m)
        }
    }

    /// Positional tensor product: party k of the result combines party k of
    /// both operands. Rank vectors multiply componentwise.
    pub fn tensor_product(&self, other: &PureState) -> Result<PureState> {
        if self.n_parties() != other.n_parties() {
            return Err(Error::Contract("tensor product needs equal party counts".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(&a, &b)| a * b).collect();
        let mut amps = BTreeMap::new();
        for (ia, va) in &self.amps {
            for (ib, vb) in &other.amps {
                let idx: Vec<usize> = ia
                    .iter()
                    .zip(ib)
                    .zip(&other.dims)
                    .map(|((&a, &b), &db)| a * db + b)
                    .collect();
                amps.insert(idx, va * vb);
            }
        }
        PureState::new(dims, amps)
    }

    /// Superposition with the operands embedded in disjoint index ranges of
    /// every local space: self keeps its indices, other is shifted up by
    /// self's dimension on each party. Rank vectors add componentwise.
    pub fn orthogonal_sum(&self, other: &PureState) -> Result<PureState> {
        if self.n_parties() != other.n_parties() {
            return Err(Error::Contract("orthogonal sum needs equal party counts".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(&a, &b)| a + b).collect();
        let mut amps: BTreeMap<Vec<usize>, GaussianRational> = self.amps.clone();
        for (idx, amp) in &other.amps {
            let shifted: Vec<usize> = idx.iter().zip(&self.dims).map(|(&i, &d)| i + d).collect();
            amps.insert(shifted, amp.clone());
        }
        PureState::new(dims, amps)
    }

    /// Merges sub-parties into composite parties, flattening each block
    /// row-major in the block's listed order. At least two blocks must remain.
    pub fn merge_parties(&self, grouping: &PartyGrouping) -> Result<PureState> {
        let groups = grouping.groups();
        if groups.iter().flatten().count() != self.n_parties()
            || groups.iter().flatten().any(|&p| p >= self.n_parties())
        {
            return Err(Error::Contract("grouping does not match this state's parties".into()));
        }
        if groups.len() < 2 {
            return Err(Error::Contract("merging all parties into one leaves no bipartitions".into()));
        }
        let dims: Vec<usize> = groups
            .iter()
            .map(|g| g.iter().map(|&p| self.dims[p]).product())
            .collect();
        let mut amps = BTreeMap::new();
        for (idx, amp) in &self.amps {
            let packed: Vec<usize> = groups.iter().map(|g| pack(idx, g, &self.dims)).collect();
            amps.insert(packed, amp.clone());
        }
        PureState::new(dims, amps)
    }

    /// Relabels parties: party k of self becomes party perm[k] of the result.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<PureState> {
        validate_permutation(perm, self.n_parties())?;
        let mut dims = vec![0usize; self.n_parties()];
        for (k, &target) in perm.iter().enumerate() {
            dims[target] = self.dims[k];
        }
        let mut amps = BTreeMap::new();
        for (idx, amp) in &self.amps {
            let mut new_idx = vec![0usize; idx.len()];
            for (k, &target) in perm.iter().enumerate() {
                new_idx[target] = idx[k];
            }
            amps.insert(new_idx, amp.clone());
        }
        PureState::new(dims, amps)
    }

    /// Deterministic state with integer amplitudes drawn uniformly from
    /// [-bound, bound]; redrawn until at least one amplitude is nonzero.
    pub fn random(dims: &[usize], bound: i64, seed: u64) -> Result<PureState> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Contract("party dimensions must all be at least 1".into()));
        }
        if bound < 1 {
            return Err(Error::Contract("amplitude bound must be at least 1".into()));
        }
        let total: usize = dims.iter().product();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut amps = Vec::new();
            for flat in 0..total {
                let v = rng.gen_range(-bound..=bound);
                if v != 0 {
                    amps.push((unpack(flat, dims), GaussianRational::from_int(v)));
                }
            }
            if !amps.is_empty() {
                return PureState::new(dims.to_vec(), amps);
            }
        }
    }

    /// The four-party state built from operator lists:
    /// sum_k sum_i sum_j |i>_A (R_k |i>)_B |j>_C (S_k |j>)_D,
    /// so d_A = cols(R), d_B = rows(R), d_C = cols(S), d_D = rows(S).
    pub fn from_operator_pairs(rs: &[ExactMatrix], ss: &[ExactMatrix]) -> Result<PureState> {
        if rs.is_empty() || rs.len() != ss.len() {
            return Err(Error::ShapeMismatch("operator lists must be nonempty and equal length".into()));
        }
        let (rb, ra) = (rs[0].rows(), rs[0].cols());
        let (sd, sc) = (ss[0].rows(), ss[0].cols());
        if rs.iter().any(|m| m.rows() != rb || m.cols() != ra)
            || ss.iter().any(|m| m.rows() != sd || m.cols() != sc)
        {
            return Err(Error::ShapeMismatch("operator lists must have uniform shapes".into()));
        }
        let dims = vec![ra, rb, sc, sd];
        let mut amps = Vec::new();
        for i in 0..ra {
            for b in 0..rb {
                for j in 0..sc {
                    for d in 0..sd {
                        let mut acc = GaussianRational::zero();
                        for (r, s) in rs.iter().zip(ss) {
                            acc = &acc + &(r.get(b, i) * s.get(d, j));
                        }
                        if !acc.is_zero() {
                            amps.push((vec![i, b, j, d], acc));
                        }
                    }
                }
            }
        }
        if amps.is_empty() {
            return Err(Error::Contract("operator pairs produce the zero state".into()));
        }
        PureState::new(dims, amps)
    }

    /// Decomposes a four-party state along the AB:CD basis grouping: one term
    /// per occupied AB basis pair (a, b), with R_k the unit matrix E_{b,a} and
    /// S_k the CD coefficient block. The R_k are orthogonal by construction;
    /// orthogonality of the S_k depends on the state.
    pub fn ab_cd_operator_pairs(&self) -> Result<(Vec<ExactMatrix>, Vec<ExactMatrix>)> {
        if self.n_parties() != 4 {
            return Err(Error::Contract("operator-pair decomposition needs four parties".into()));
        }
        let (da, db, dc, dd) = (self.dims[0], self.dims[1], self.dims[2], self.dims[3]);
        let mut groups: BTreeMap<(usize, usize), ExactMatrix> = BTreeMap::new();
        for (idx, amp) in &self.amps {
            let key = (idx[0], idx[1]);
            let s = groups.entry(key).or_insert_with(|| ExactMatrix::zeros(dd, dc));
            s.set(idx[3], idx[2], amp.clone());
        }
        let mut rs = Vec::new();
        let mut ss = Vec::new();
        for ((a, b), s) in groups {
            let mut r = ExactMatrix::zeros(db, da);
            r.set(b, a, GaussianRational::one());
            rs.push(r);
            ss.push(s);
        }
        Ok((rs, ss))
    }

    /// Serializes to the state file format: party dimensions, then one line
    /// per amplitude as `i1 .. in re_num/re_den im_num/im_den`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(
            &self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
        );
        out.push('\n');
        for (idx, amp) in &self.amps {
            let idx_str = idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            out.push_str(&format!(
                "{} {}/{} {}/{}\n",
                idx_str,
                amp.re().numer(),
                amp.re().denom(),
                amp.im().numer(),
                amp.im().denom()
            ));
        }
        out
    }

    /// Parses the state file format. Rejects out-of-range indices, zero
    /// amplitudes, and duplicate multi-indices. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn from_text(text: &str) -> Result<PureState> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (dims_line_no, dims_line) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "empty state file".into() })?;
        let dims: Vec<usize> = dims_line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: dims_line_no,
                    msg: format!("bad dimension token {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Parse { line: dims_line_no, msg: "dimensions must be positive".into() });
        }
        let n = dims.len();
        let mut amps: Vec<(Vec<usize>, GaussianRational)> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (line_no, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n + 2 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {} indices and 2 rationals, got {} tokens", n, tokens.len()),
                });
            }
            let idx: Vec<usize> = tokens[..n]
                .iter()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad index token {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if idx.iter().zip(&dims).any(|(&i, &d)| i >= d) {
                return Err(Error::Parse { line: line_no, msg: format!("index {idx:?} out of range") });
            }
            let re = parse_rational(tokens[n], line_no)?;
            let im = parse_rational(tokens[n + 1], line_no)?;
            let amp = GaussianRational::new(re, im);
            if amp.is_zero() {
                return Err(Error::Parse { line: line_no, msg: "zero amplitude".into() });
            }
            if !seen.insert(idx.clone()) {
                return Err(Error::Parse { line: line_no, msg: format!("duplicate multi-index {idx:?}") });
            }
            amps.push((idx, amp));
        }
        if amps.is_empty() {
            return Err(Error::Parse { line: dims_line_no, msg: "state file has no amplitudes".into() });
        }
        PureState::new(dims, amps)
    }
}

fn parse_rational(token: &str, line: usize) -> Result<BigRational> {
    let mk_err = |msg: String| Error::Parse { line, msg };
    let (num_s, den_s) = match token.split_once('/') {
        Some((a, b)) => (a, b),
        None => (token, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| mk_err(format!("bad rational numerator {num_s:?}")))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| mk_err(format!("bad rational denominator {den_s:?}")))?;
    if den.is_zero() {
        return Err(mk_err("zero denominator".into()));
    }
    let r = BigRational::new(num, den);
    debug_assert!(r.denom().is_positive() || r.is_zero() || r.denom().is_one());
    Ok(r)
}

/// Row-major packing of the sub-index on `parties` (ascending party order).
fn pack(idx: &[usize], parties: &[usize], dims: &[usize]) -> usize {
    parties.iter().fold(0usize, |acc, &p| acc * dims[p] + idx[p])
}

fn unpack(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0usize; dims.len()];
    for p in (0..dims.len()).rev() {
        idx[p] = flat % dims[p];
        flat /= dims[p];
    }
    idx
}
