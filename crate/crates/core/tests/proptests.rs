use proptest::prelude::*;
use rankcone::matrix::ExactMatrix;
use rankcone::rankvec::rank_vector;
use rankcone::scalar::GaussianRational;
use rankcone::state::PureState;

fn arb_dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 2..=4)
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |entries| {
        ExactMatrix::from_fn(rows, cols, |r, c| {
            GaussianRational::from_int(entries[r * cols + c])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schmidt_rank_is_complement_symmetric(dims in arb_dims(), seed in 0u64..1000) {
        let s = PureState::random(&dims, 2, seed).unwrap();
        let n = dims.len();
        for mask in 1u32..(1 << n) - 1 {
            let subset: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
            let comp: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 0).collect();
            prop_assert_eq!(s.schmidt_rank(&subset).unwrap(), s.schmidt_rank(&comp).unwrap());
        }
    }

    #[test]
    fn schmidt_rank_respects_dimension_bounds(dims in arb_dims(), seed in 0u64..1000) {
        let s = PureState::random(&dims, 2, seed).unwrap();
        let n = dims.len();
        for mask in 1u32..(1 << n) - 1 {
            let subset: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
            let inside: usize = subset.iter().map(|&p| dims[p]).product();
            let outside: usize = (0..n).filter(|p| !subset.contains(p)).map(|p| dims[p]).product();
            let r = s.schmidt_rank(&subset).unwrap();
            prop_assert!(r >= 1 && r <= inside.min(outside));
        }
    }

    #[test]
    fn disjoint_subsets_are_submultiplicative(seed in 0u64..2000) {
        let s = PureState::random(&[2, 2, 2, 2], 2, seed).unwrap();
        // r_{I u J} <= r_I * r_J over all disjoint nonempty pairs
        for i_mask in 1u32..15 {
            for j_mask in 1u32..15 {
                if i_mask & j_mask != 0 || i_mask | j_mask == 15 {
                    continue;
                }
                let to_set = |m: u32| (0..4).filter(|&p| m >> p & 1 == 1).collect::<Vec<_>>();
                let r_union = s.schmidt_rank(&to_set(i_mask | j_mask)).unwrap();
                let r_i = s.schmidt_rank(&to_set(i_mask)).unwrap();
                let r_j = s.schmidt_rank(&to_set(j_mask)).unwrap();
                prop_assert!(r_union <= r_i * r_j);
            }
        }
    }

    #[test]
    fn tensor_product_multiplies_rank_vectors(seed_a in 0u64..500, seed_b in 0u64..500) {
        let a = PureState::random(&[2, 2, 2], 2, seed_a).unwrap();
        let b = PureState::random(&[2, 2, 2], 2, seed_b).unwrap();
        let combined = rank_vector(&a.tensor_product(&b).unwrap()).unwrap();
        let expect = rank_vector(&a).unwrap().componentwise_product(&rank_vector(&b).unwrap()).unwrap();
        prop_assert_eq!(combined, expect);
    }

    #[test]
    fn state_text_roundtrips(dims in arb_dims(), seed in 0u64..1000) {
        let s = PureState::random(&dims, 3, seed).unwrap();
        let parsed = PureState::from_text(&s.to_text()).unwrap();
        prop_assert_eq!(parsed, s);
    }

    #[test]
    fn kron_rank_is_multiplicative(a in arb_matrix(3, 2), b in arb_matrix(2, 3)) {
        prop_assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn partial_transpose_is_an_involution(a in arb_matrix(2, 2), b in arb_matrix(3, 2), c in arb_matrix(2, 2), d in arb_matrix(3, 2)) {
        let m = a.kron(&b).add(&c.kron(&d)).unwrap();
        let pt = m.block_partial_transpose(3, 2).unwrap();
        prop_assert_eq!(pt.block_partial_transpose(2, 3).unwrap(), m);
    }
}
