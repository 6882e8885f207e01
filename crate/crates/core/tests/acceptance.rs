//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured evidence. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line.

use num_bigint::{BigInt, BigUint};
use rankcone::bipartition::canonical_bipartitions;
use rankcone::classical::{audit_classical, purification, support_sizes, SupportSet};
use rankcone::cone::{extreme_rays, facet_gap, orbit_families, orbit_of, HRep, VRep};
use rankcone::hypothesis::{exhaustive_search, random_search, ExhaustiveParams, RandomParams};
use rankcone::inequality::{
    conjectured_product_inequality, instantiate_family, known_set, ssa_zero_entropy_instance,
    FamilyTemplate, RankInequality,
};
use rankcone::named::{named_state, tripartite_with_ranks};
use rankcone::parallel::map_indexed;
use rankcone::rankvec::{rank_vector, renyi_entropy};
use rankcone::state::PureState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn known_hrep() -> HRep {
    let rows: Vec<Vec<BigInt>> = known_set(4)
        .unwrap()
        .iter()
        .map(|i| i.coeffs().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    HRep::new(7, rows).unwrap()
}

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn criterion_01_named_state_rank_vectors() {
    let fixed: [(&str, [usize; 7]); 2] = [
        ("psi1", [2, 2, 1, 1, 1, 2, 2]),
        ("psi2", [3, 3, 3, 3, 9, 9, 9]),
    ];
    for (name, expect) in fixed {
        let rv = rank_vector(&named_state(name, None).unwrap()).unwrap();
        assert_eq!(rv.as_slice(), expect, "{name}");
    }
    type Formula = fn(usize) -> [usize; 7];
    let families: [(&str, Formula); 4] = [
        ("psi3", |d| [d + 1, d + 1, d + 1, d + 1, 2, 2 * d, 2 * d]),
        ("psi4", |d| {
            [d * d + 1, d * d + 1, 2 * d, 2 * d, 2 * d * d, 2 * d, 2 * d]
        }),
        ("psi5", |d| {
            [
                d * d + d + 1,
                d * d + d + 1,
                d * d + 2 * d,
                2 * d + 1,
                3 * d * d,
                3 * d,
                3 * d,
            ]
        }),
        ("psi6", |d| {
            [
                d * d * d + 2 * d,
                d * d * d + 2 * d,
                d * d * d + 2 * d,
                3 * d,
                3 * d * d,
                3 * d * d,
                3 * d * d,
            ]
        }),
    ];
    for (name, formula) in families {
        for d in 1..=3usize {
            let rv = rank_vector(&named_state(name, Some(d)).unwrap()).unwrap();
            assert_eq!(rv.as_slice(), formula(d), "{name} at d={d}");
        }
    }
    println!("criterion 01 PASS: all published rank vectors reproduced exactly at d in {{1,2,3}}");
}

#[test]
fn criterion_02_ssa_counterexample() {
    let s = named_state("ssa_cx", None).unwrap();
    let rv = rank_vector(&s).unwrap();
    assert_eq!(rv.rank_of(&[0]).unwrap(), 2);
    assert_eq!(rv.rank_of(&[3]).unwrap(), 5);
    assert_eq!(rv.rank_of(&[0, 1]).unwrap(), 3);
    assert_eq!(rv.rank_of(&[0, 2]).unwrap(), 3);
    let (holds, cert) = ssa_zero_entropy_instance().holds(&rv).unwrap();
    assert!(!holds);
    assert_eq!(cert.lhs, BigUint::from(9u32));
    assert_eq!(cert.rhs, BigUint::from(10u32));
    println!("criterion 02 PASS: purified state violates zero-entropy strong subadditivity, certificate 9 < 10");
}

#[test]
fn criterion_03_ray_table() {
    let rays = extreme_rays(&known_hrep()).unwrap();
    let families = orbit_families(&rays, 4).unwrap();
    let got: Vec<(Vec<BigInt>, usize)> = families
        .iter()
        .map(|f| (f.representative.clone(), f.size()))
        .collect();
    // the eight families, in ascending order of their canonical representative
    let expect: Vec<(Vec<BigInt>, usize)> = vec![
        (bi(&[1, 1, 0, 0, 0, 1, 1]), 6),
        (bi(&[1, 1, 1, 1, 1, 1, 0]), 3),
        (bi(&[1, 1, 1, 1, 2, 1, 0]), 6),
        (bi(&[1, 1, 1, 1, 2, 2, 2]), 1),
        (bi(&[2, 2, 1, 1, 2, 1, 1]), 6),
        (bi(&[2, 2, 2, 1, 2, 1, 1]), 12),
        (bi(&[2, 2, 2, 1, 3, 1, 1]), 12),
        (bi(&[3, 3, 3, 1, 2, 2, 2]), 4),
    ];
    assert_eq!(got, expect);
    assert_eq!(rays.rays().len(), 50);
    println!("criterion 03 PASS: extreme rays form exactly the 8 expected families (50 rays)");
}

/// Representatives of the six ray families attained (exactly or in the large-d
/// limit) by the state gallery.
fn attained_family_reps() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 0, 0, 0, 1, 1],
        vec![1, 1, 1, 1, 2, 2, 2],
        vec![1, 1, 1, 1, 1, 1, 0],
        vec![2, 2, 1, 1, 2, 1, 1],
        vec![2, 2, 2, 1, 2, 1, 1],
        vec![3, 3, 3, 1, 2, 2, 2],
    ]
}

#[test]
fn criterion_04_hypothesis_recovery() {
    let mut attained: Vec<Vec<BigInt>> = Vec::new();
    for rep in attained_family_reps() {
        attained.extend(orbit_of(&bi(&rep), 4).unwrap());
    }
    attained.sort();
    attained.dedup();
    assert_eq!(attained.len(), 32);
    let gap = facet_gap(&known_hrep(), &VRep::new(7, attained).unwrap()).unwrap();
    let expect = orbit_of(&bi(&[0, 0, 0, 0, 1, 1, -1]), 4).unwrap();
    assert_eq!(gap, expect);
    assert_eq!(gap.len(), 3);
    println!(
        "criterion 04 PASS: facet gap of the six attained families is exactly the hypothesis orbit ({} facets)",
        gap.len()
    );
}

#[test]
fn criterion_05_theorem_property_suite() {
    const STATES: usize = 10_000;
    const PAIRS: usize = 500;
    let index = canonical_bipartitions(4).unwrap();
    let mut ineqs: Vec<RankInequality> = Vec::new();
    for t in [FamilyTemplate::Subadd, FamilyTemplate::Thm1, FamilyTemplate::Thm2] {
        ineqs.extend(instantiate_family(t, 4).unwrap());
    }

    let violations: usize = map_indexed(STATES, |seed| {
        let mut dim_rng = ChaCha8Rng::seed_from_u64(0xd1b5 ^ seed as u64);
        let dims: Vec<usize> = (0..4).map(|_| dim_rng.gen_range(1..=3usize)).collect();
        let s = PureState::random(&dims, 2, seed as u64).unwrap();
        let rv = rank_vector(&s).unwrap();
        let mut bad = 0usize;
        for i in 0..index.len() {
            let subset = index.subset(i);
            let comp: Vec<usize> = (0..4).filter(|p| !subset.contains(p)).collect();
            if s.schmidt_rank(&comp).unwrap() != rv.get(i) {
                bad += 1;
            }
        }
        for q in &ineqs {
            if !q.holds(&rv).unwrap().0 {
                bad += 1;
            }
        }
        bad
    })
    .into_iter()
    .sum();
    assert_eq!(violations, 0, "every theorem instance must hold on every state");

    let additivity_violations: usize = map_indexed(PAIRS, |i| {
        let seed = 0x5eed_0000 + i as u64;
        let tensor_a = PureState::random(&[2, 2, 2, 2], 2, seed).unwrap();
        let tensor_b = PureState::random(&[2, 2, 2, 2], 2, seed ^ 0xffff).unwrap();
        let product = rank_vector(&tensor_a.tensor_product(&tensor_b).unwrap()).unwrap();
        let expect_product = rank_vector(&tensor_a)
            .unwrap()
            .componentwise_product(&rank_vector(&tensor_b).unwrap())
            .unwrap();

        let mut dim_rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let dims_a: Vec<usize> = (0..4).map(|_| dim_rng.gen_range(1..=3usize)).collect();
        let dims_b: Vec<usize> = (0..4).map(|_| dim_rng.gen_range(1..=3usize)).collect();
        let sum_a = PureState::random(&dims_a, 2, seed ^ 0x1111).unwrap();
        let sum_b = PureState::random(&dims_b, 2, seed ^ 0x2222).unwrap();
        let sum = rank_vector(&sum_a.orthogonal_sum(&sum_b).unwrap()).unwrap();
        let expect_sum = rank_vector(&sum_a)
            .unwrap()
            .componentwise_sum(&rank_vector(&sum_b).unwrap())
            .unwrap();
        usize::from(product != expect_product) + usize::from(sum != expect_sum)
    })
    .into_iter()
    .sum();
    assert_eq!(additivity_violations, 0);

    println!(
        "criterion 05 PASS: {STATES} states satisfy every subadditivity/theorem instance and complement symmetry; tensor and orthogonal-sum additivity hold on {PAIRS} pairs"
    );
}

#[test]
fn criterion_06_two_pair_theorem_searches() {
    let exhaustive = exhaustive_search(&ExhaustiveParams {
        k: 2,
        r_shape: (2, 2),
        s_shape: (2, 2),
        q: 2,
        budget: None,
    })
    .unwrap();
    assert!(exhaustive.counterexamples.is_empty());
    assert_eq!(exhaustive.requested, 1 << 16);

    let random = random_search(&RandomParams::new(2, (3, 3), (3, 3), 3, 100_000, 0xc0ffee)).unwrap();
    assert!(random.counterexamples.is_empty());
    assert_eq!(random.examined, 100_000);

    println!(
        "criterion 06 PASS: no counterexample among {} field instances and {} random integer instances at two pairs",
        exhaustive.examined, random.examined
    );
}

#[test]
fn criterion_07_refuted_conjecture_crossovers() {
    let conj = conjectured_product_inequality();
    // first violating dimension per family, frozen from the exact evaluation
    let expect = [("psi3", 5usize), ("psi4", 4), ("psi5", 3), ("psi6", 3)];
    for (name, crossover) in expect {
        for d in 1..crossover {
            let rv = rank_vector(&named_state(name, Some(d)).unwrap()).unwrap();
            assert!(conj.holds(&rv).unwrap().0, "{name} must still satisfy it at d={d}");
        }
        let rv = rank_vector(&named_state(name, Some(crossover)).unwrap()).unwrap();
        let (holds, cert) = conj.holds(&rv).unwrap();
        assert!(!holds, "{name} must violate at d={crossover}");
        assert!(cert.lhs < cert.rhs);
    }
    println!(
        "criterion 07 PASS: product conjecture first violated at d = 5, 4, 3, 3 for the four sum families"
    );
}

#[test]
fn criterion_08_classical_bridge() {
    let failures: usize = map_indexed(100, |seed| {
        let sup = SupportSet::random(seed as u64);
        let psi = purification(&sup).unwrap();
        let sizes = support_sizes(&sup);
        let mut bad = 0usize;
        for (&mask, &size) in &sizes {
            let parties: Vec<usize> = (0..sup.n())
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| v + 1)
                .collect();
            if psi.schmidt_rank(&parties).unwrap() != size {
                bad += 1;
            }
        }
        if !audit_classical(&sup).all_hold() {
            bad += 1;
        }
        bad
    })
    .into_iter()
    .sum();
    assert_eq!(failures, 0);
    println!(
        "criterion 08 PASS: purification ranks equal projection sizes and all support inequalities hold on 100 seeded supports"
    );
}

#[test]
fn criterion_09_triple_realizability() {
    let mut realized = 0usize;
    let mut refused = 0usize;
    for a in 1..=6usize {
        for b in 1..=6usize {
            for c in 1..=6usize {
                let realizable = a <= b * c && b <= a * c && c <= a * b;
                match tripartite_with_ranks(a, b, c) {
                    Ok(state) => {
                        assert!(realizable, "({a},{b},{c}) should have been refused");
                        let rv = rank_vector(&state).unwrap();
                        assert_eq!(rv.as_slice(), [a, b, c]);
                        realized += 1;
                    }
                    Err(rankcone::Error::UnrealizableTriple(..)) => {
                        assert!(!realizable, "({a},{b},{c}) should have been realized");
                        refused += 1;
                    }
                    Err(e) => panic!("unexpected error on ({a},{b},{c}): {e}"),
                }
            }
        }
    }
    println!(
        "criterion 09 PASS: {realized} realizable triples constructed and verified, {refused} unrealizable triples refused"
    );
}

#[test]
fn criterion_10_von_neumann_cross_checks() {
    const STATES: usize = 500;
    const TOL: f64 = 1e-9;
    let index = canonical_bipartitions(4).unwrap();
    let failures: usize = map_indexed(STATES, |i| {
        let seed = 0xace_0000 + i as u64;
        let mut dim_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
        let dims: Vec<usize> = (0..4).map(|_| dim_rng.gen_range(1..=3usize)).collect();
        let s = PureState::random(&dims, 2, seed).unwrap();
        let mut bad = 0usize;

        for i in 0..index.len() {
            let subset = index.subset(i);
            let s1 = renyi_entropy(&s, &subset, 1.0).unwrap();
            let s0 = renyi_entropy(&s, &subset, 0.0).unwrap();
            if s1 > s0 + TOL {
                bad += 1;
            }
        }

        let entropy = |parties: &[usize]| renyi_entropy(&s, parties, 1.0).unwrap();
        for a in 0..4usize {
            for b in 0..4usize {
                for c in b + 1..4usize {
                    if a == b || a == c {
                        continue;
                    }
                    // strong subadditivity: S(A) + S(ABC) <= S(AB) + S(AC)
                    let mut abc = vec![a, b, c];
                    abc.sort_unstable();
                    let ssa = entropy(&[a]) + entropy(&abc)
                        - entropy(&sorted2(a, b))
                        - entropy(&sorted2(a, c));
                    if ssa > TOL {
                        bad += 1;
                    }
                }
            }
        }
        for a in 0..4usize {
            for b in a + 1..4usize {
                for c in 0..4usize {
                    if c == a || c == b {
                        continue;
                    }
                    // weak monotonicity: S(A) + S(B) <= S(AC) + S(BC)
                    let wm = entropy(&[a]) + entropy(&[b])
                        - entropy(&sorted2(a, c))
                        - entropy(&sorted2(b, c));
                    if wm > TOL {
                        bad += 1;
                    }
                }
            }
        }
        bad
    })
    .into_iter()
    .sum();
    assert_eq!(failures, 0);
    println!(
        "criterion 10 PASS: von Neumann entropy obeys its rank bound and both entropy inequalities on {STATES} states within 1e-9"
    );
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}
