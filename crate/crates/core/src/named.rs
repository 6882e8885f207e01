//! The gallery of named states used throughout the test tables, plus the
//! constructive realization of tripartite rank triples.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::state::{PartyGrouping, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NAMED_STATES: &[&str] = &[
    "phi_plus", "psi1", "psi2", "psi3", "psi4", "psi5", "psi6", "ssa_cx",
];

/// Unnormalized maximally entangled pair of dimension d.
pub fn phi_plus(d: usize) -> Result<PureState> {
    if d == 0 {
        return Err(Error::Contract("phi_plus needs d >= 1".into()));
    }
    PureState::new(
        vec![d, d],
        (0..d).map(|i| (vec![i, i], GaussianRational::one())),
    )
}

/// Looks up a named state. `psi3`..`psi6` and `phi_plus` require a dimension
/// parameter; the fixed states reject one.
pub fn named_state(name: &str, d: Option<usize>) -> Result<PureState> {
    let need_d = || -> Result<usize> {
        match d {
            Some(d) if d >= 1 => Ok(d),
            Some(_) => Err(Error::Contract(format!("state {name} needs d >= 1"))),
            None => Err(Error::Contract(format!("state {name} needs a dimension parameter"))),
        }
    };
    let no_d = || -> Result<()> {
        match d {
            None => Ok(()),
            Some(_) => Err(Error::Contract(format!("state {name} takes no dimension parameter"))),
        }
    };
    match name {
        "phi_plus" => phi_plus(need_d()?),
        "psi1" => {
            no_d()?;
            PureState::new(
                vec![2, 2, 1, 1],
                [
                    (vec![0, 0, 0, 0], GaussianRational::one()),
                    (vec![1, 1, 0, 0], GaussianRational::one()),
                ],
            )
        }
        "psi2" => {
            no_d()?;
            let mut amps = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    amps.push((vec![i, j, (i + j) % 3, (i + 2 * j) % 3], GaussianRational::one()));
                }
            }
            PureState::new(vec![3, 3, 3, 3], amps)
        }
        "psi3" => psi3(need_d()?),
        "psi4" => psi4(need_d()?),
        "psi5" => psi5(need_d()?),
        "psi6" => psi6(need_d()?),
        "ssa_cx" => {
            no_d()?;
            // Purification of the five-term mixture; amplitudes left at 1
            // since ranks ignore the weights.
            let terms = [[0, 0, 0], [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]];
            PureState::new(
                vec![2, 2, 2, 5],
                terms.iter().enumerate().map(|(t, abc)| {
                    (vec![abc[0], abc[1], abc[2], t], GaussianRational::one())
                }),
            )
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}

/// Entangled pairs between selected parties, all other parties trivial.
/// `pairs` lists (left, right) party indices; each listed party carries one
/// leg of an unnormalized maximally entangled pair of dimension d.
fn paired_state(n: usize, d: usize, pairs: &[(usize, usize)]) -> Result<PureState> {
    let mut dims = vec![1usize; n];
    for &(a, b) in pairs {
        dims[a] = d;
        dims[b] = d;
    }
    let mut amps = Vec::new();
    let mut counters = vec![0usize; pairs.len()];
    loop {
        let mut idx = vec![0usize; n];
        for (p, &(a, b)) in pairs.iter().enumerate() {
            idx[a] = counters[p];
            idx[b] = counters[p];
        }
        amps.push((idx, GaussianRational::one()));
        let mut carry = pairs.len();
        while carry > 0 {
            counters[carry - 1] += 1;
            if counters[carry - 1] < d {
                break;
            }
            counters[carry - 1] = 0;
            carry -= 1;
        }
        if carry == 0 {
            break;
        }
    }
    PureState::new(dims, amps)
}

fn psi3(d: usize) -> Result<PureState> {
    let ab = paired_state(4, d, &[(0, 1)])?;
    let cd = paired_state(4, d, &[(2, 3)])?;
    ab.orthogonal_sum(&cd)
}

fn psi4(d: usize) -> Result<PureState> {
    // raw parties: A1 A2 B1 B2 C D
    let op1 = paired_state(6, d, &[(0, 4), (1, 5)])?;
    let op2 = paired_state(6, d, &[(2, 4), (3, 5)])?;
    let raw = op1.orthogonal_sum(&op2)?;
    let grouping = PartyGrouping::new(vec![vec![0, 1], vec![2, 3], vec![4], vec![5]], 6)?;
    raw.merge_parties(&grouping)
}

fn psi5(d: usize) -> Result<PureState> {
    // raw parties: A1 A2 B1 B2 C1 C2 D
    let op1 = paired_state(7, d, &[(0, 4), (1, 6)])?;
    let op2 = paired_state(7, d, &[(2, 4), (3, 6)])?;
    let op3 = paired_state(7, d, &[(0, 4), (2, 5)])?;
    let raw = op1.orthogonal_sum(&op2)?.orthogonal_sum(&op3)?;
    let grouping = PartyGrouping::new(vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6]], 7)?;
    raw.merge_parties(&grouping)
}

fn psi6(d: usize) -> Result<PureState> {
    // raw parties: A1 A2 A3 B1 B2 B3 C1 C2 C3 D
    let op1 = paired_state(10, d, &[(0, 3), (1, 6), (2, 9)])?;
    let op2 = paired_state(10, d, &[(0, 3), (4, 6), (5, 9)])?;
    let op3 = paired_state(10, d, &[(0, 6), (3, 7), (8, 9)])?;
    let raw = op1.orthogonal_sum(&op2)?.orthogonal_sum(&op3)?;
    let grouping = PartyGrouping::new(
        vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9]],
        10,
    )?;
    raw.merge_parties(&grouping)
}

const TRIPLE_RETRY_BUDGET: u64 = 64;

/// A tripartite state with Schmidt ranks exactly (a, b, c), when the triple is
/// realizable (a <= b*c and cyclic). Every returned state is re-verified by
/// exact rank computation before it leaves this function.
pub fn tripartite_with_ranks(a: usize, b: usize, c: usize) -> Result<PureState> {
    if a == 0 || b == 0 || c == 0 || a > b * c || b > a * c || c > a * b {
        return Err(Error::UnrealizableTriple(a, b, c));
    }
    let state = if c >= a && c >= b {
        classical_triple(a, b, c)?
    } else {
        generic_triple(a, b, c)?
    };
    verify_triple(&state, a, b, c)?;
    Ok(state)
}

/// Classical-support construction for c >= max(a, b): choose c cells of the
/// a x b grid covering every row and column, and give each its own C level.
fn classical_triple(a: usize, b: usize, c: usize) -> Result<PureState> {
    let mut cells: Vec<(usize, usize)> = if a <= b {
        (0..b).map(|j| (j % a, j)).collect()
    } else {
        (0..a).map(|i| (i, i % b)).collect()
    };
    'fill: for i in 0..a {
        for j in 0..b {
            if cells.len() == c {
                break 'fill;
            }
            if !cells.contains(&(i, j)) {
                cells.push((i, j));
            }
        }
    }
    debug_assert_eq!(cells.len(), c);
    PureState::new(
        vec![a, b, c],
        cells
            .into_iter()
            .enumerate()
            .map(|(k, (i, j))| (vec![i, j, k], GaussianRational::one())),
    )
}

/// Generic construction for c < max(a, b): c orthogonal C levels, each
/// carrying an a x b block with small random integer amplitudes; resampled
/// until the exact rank check passes.
fn generic_triple(a: usize, b: usize, c: usize) -> Result<PureState> {
    let base_seed = triple_seed(a, b, c);
    for attempt in 0..TRIPLE_RETRY_BUDGET {
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(attempt));
        let mut amps = Vec::new();
        for k in 0..c {
            for i in 0..a {
                for j in 0..b {
                    let v = rng.gen_range(-3i64..=3);
                    if v != 0 {
                        amps.push((vec![i, j, k], GaussianRational::from_int(v)));
                    }
                }
            }
        }
        let Ok(state) = PureState::new(vec![a, b, c], amps) else {
            continue;
        };
        if verify_triple(&state, a, b, c).is_ok() {
            return Ok(state);
        }
    }
    Err(Error::Internal(format!(
        "no amplitude sample achieved ranks ({a}, {b}, {c}) within {TRIPLE_RETRY_BUDGET} retries"
    )))
}

fn triple_seed(a: usize, b: usize, c: usize) -> u64 {
    // splitmix-style mixing of the triple into a reproducible seed
    let mut x = (a as u64) << 42 ^ (b as u64) << 21 ^ c as u64 ^ 0x9e37_79b9_7f4a_7c15;
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x
}

fn verify_triple(state: &PureState, a: usize, b: usize, c: usize) -> Result<()> {
    let got = (
        state.schmidt_rank(&[0])?,
        state.schmidt_rank(&[1])?,
        state.schmidt_rank(&[2])?,
    );
    if got == (a, b, c) {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "constructed triple has ranks {got:?}, wanted ({a}, {b}, {c})"
        )))
    }
}
