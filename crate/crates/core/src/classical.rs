//! Support sizes of discrete joint distributions, the classical analogue of
//! Schmidt ranks. Only the support matters here, so a distribution is stored
//! as a set of outcome tuples. The purification bridge turns any support into
//! an (n+1)-party pure state whose ranks equal the projection sizes.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::state::PureState;
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportSet {
    alphabet: Vec<usize>,
    points: BTreeSet<Vec<usize>>,
}

impl SupportSet {
    pub fn new(alphabet: Vec<usize>, points: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if alphabet.is_empty() || alphabet.iter().any(|&a| a == 0) {
            return Err(Error::Contract("alphabet sizes must all be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != alphabet.len() {
                return Err(Error::Contract("tuple length differs from variable count".into()));
            }
            if p.iter().zip(&alphabet).any(|(&x, &a)| x >= a) {
                return Err(Error::Contract(format!("tuple {p:?} out of alphabet range")));
            }
            set.insert(p);
        }
        if set.is_empty() {
            return Err(Error::Contract("support must be nonempty".into()));
        }
        Ok(SupportSet { alphabet, points: set })
    }

    pub fn n(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[usize] {
        &self.alphabet
    }

    pub fn points(&self) -> &BTreeSet<Vec<usize>> {
        &self.points
    }

    /// Deterministic random support with up to 4 variables, alphabets up to 4
    /// and at most 12 points.
    pub fn random(seed: u64) -> SupportSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4usize);
        let alphabet: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=4usize)).collect();
        let total: usize = alphabet.iter().product();
        let want = rng.gen_range(1..=total.min(12));
        let mut points = BTreeSet::new();
        while points.len() < want {
            let p: Vec<usize> = alphabet.iter().map(|&a| rng.gen_range(0..a)).collect();
            points.insert(p);
        }
        SupportSet { alphabet, points }
    }

    /// Support file format: alphabet sizes, then one tuple per line.
    pub fn to_text(&self) -> String {
        let mut out = self
            .alphabet
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push('\n');
        for p in &self.points {
            out.push_str(&p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SupportSet> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (aline, alpha) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "empty support file".into() })?;
        let alphabet: Vec<usize> = alpha
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: aline,
                    msg: format!("bad alphabet size {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        let mut points = Vec::new();
        for (line_no, line) in lines {
            let p: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad tuple entry {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            points.push(p);
        }
        SupportSet::new(alphabet, points).map_err(|e| Error::Parse { line: aline, msg: e.to_string() })
    }
}

/// Projection sizes s_I for every nonempty subset of variables, keyed by the
/// subset bitmask over variables 0..n.
pub fn support_sizes(s: &SupportSet) -> BTreeMap<u32, usize> {
    let n = s.n();
    let mut out = BTreeMap::new();
    for mask in 1u32..1 << n {
        let vars: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let projected: BTreeSet<Vec<usize>> = s
            .points
            .iter()
            .map(|p| vars.iter().map(|&v| p[v]).collect())
            .collect();
        out.insert(mask, projected.len());
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CheckKind {
    /// s_I <= s_J for I inside J.
    Monotonicity { sub: u32, sup: u32 },
    /// s_{I union J} <= s_I s_J for disjoint I, J.
    Submultiplicativity { left: u32, right: u32 },
    /// s_J^binom(|J|-1, k-1) <= product of s_I over k-subsets I of J.
    Shearer { set: u32, k: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalCheck {
    pub kind: CheckKind,
    #[serde(serialize_with = "ser_biguint")]
    pub lhs: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub rhs: BigUint,
    pub holds: bool,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub sizes: BTreeMap<u32, usize>,
    pub checks: Vec<ClassicalCheck>,
}

impl ClassicalReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_tsv(&self, n: usize) -> String {
        let label = |mask: u32| -> String {
            (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::from("check\tinstance\tverdict\tlhs\trhs\n");
        for c in &self.checks {
            let (name, inst) = match c.kind {
                CheckKind::Monotonicity { sub, sup } => {
                    ("monotonicity", format!("{{{}}} <= {{{}}}", label(sub), label(sup)))
                }
                CheckKind::Submultiplicativity { left, right } => (
                    "submultiplicativity",
                    format!("{{{}}} x {{{}}}", label(left), label(right)),
                ),
                CheckKind::Shearer { set, k } => ("shearer", format!("J={{{}}} k={}", label(set), k)),
            };
            out.push_str(&format!(
                "{name}\t{inst}\t{}\t{}\t{}\n",
                if c.holds { "HOLDS" } else { "VIOLATED" },
                c.lhs,
                c.rhs
            ));
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Checks monotonicity, submultiplicativity, and the projection-product
/// inequality on every applicable instance, with exact certificates. Every
/// instance holds for any support; a failure means an implementation bug.
pub fn audit_classical(s: &SupportSet) -> ClassicalReport {
    let n = s.n();
    let sizes = support_sizes(s);
    let mut checks = Vec::new();

    for sup in 1u32..1 << n {
        let mut sub = (sup - 1) & sup;
        while sub > 0 {
            let lhs = BigUint::from(sizes[&sub]);
            let rhs = BigUint::from(sizes[&sup]);
            checks.push(ClassicalCheck {
                kind: CheckKind::Monotonicity { sub, sup },
                holds: lhs <= rhs,
                lhs,
                rhs,
            });
            sub = (sub - 1) & sup;
        }
    }

    for left in 1u32..1 << n {
        for right in left + 1..1 << n {
            if left & right != 0 {
                continue;
            }
            let lhs = BigUint::from(sizes[&(left | right)]);
            let rhs = BigUint::from(sizes[&left]) * BigUint::from(sizes[&right]);
            checks.push(ClassicalCheck {
                kind: CheckKind::Submultiplicativity { left, right },
                holds: lhs <= rhs,
                lhs,
                rhs,
            });
        }
    }

    for set in 1u32..1 << n {
        let j = set.count_ones() as usize;
        for k in 1..=j {
            let exponent = binomial(j - 1, k - 1) as u32;
            let lhs = BigUint::from(sizes[&set]).pow(exponent);
            let mut rhs = BigUint::one();
            // product over k-subsets of the chosen variable set
            let vars: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
            for_each_subset(&vars, k, &mut |subset_mask| {
                rhs *= BigUint::from(sizes[&subset_mask]);
            });
            checks.push(ClassicalCheck {
                kind: CheckKind::Shearer { set, k },
                holds: lhs <= rhs,
                lhs,
                rhs,
            });
        }
    }

    ClassicalReport { sizes, checks }
}

fn for_each_subset(vars: &[usize], k: usize, f: &mut impl FnMut(u32)) {
    fn go(vars: &[usize], k: usize, start: usize, acc: u32, f: &mut impl FnMut(u32)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in start..vars.len() {
            go(vars, k - 1, i + 1, acc | 1 << vars[i], f);
        }
    }
    go(vars, k, 0, 0, f);
}

/// The (n+1)-party purification: party 0 enumerates the support points
/// (compressed to dimension = point count), parties 1..=n copy the variables.
/// Unit amplitudes; the ranks r_I for I avoiding party 0 equal the s_I.
pub fn purification(s: &SupportSet) -> Result<PureState> {
    let mut dims = vec![s.points.len()];
    dims.extend_from_slice(&s.alphabet);
    let amps = s.points.iter().enumerate().map(|(t, p)| {
        let mut idx = vec![t];
        idx.extend_from_slice(p);
        (idx, GaussianRational::one())
    });
    PureState::new(dims, amps)
}
