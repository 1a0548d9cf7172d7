mod common;

use common::{pattern, pattern_of, sparse_pattern, wide_pattern};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssprop_core::oracle::{pencil_oracle, rank_oracle};
use ssprop_core::rank::{eliminate_rows_with, refute_by_descent, refute_by_grid, GridOutcome};
use ssprop_core::{
    exact_rank, full_column_rank, full_row_rank, hstack, identity_pattern, refute_full_rank,
    strongly_nonsingular_square, verify_certificate, PatternMatrix, RefutationBudget,
};

#[test]
fn exhaustive_2x3_refuter_agreement() {
    let budget = RefutationBudget::default();
    let mut failing = 0;
    for code in 0..729 {
        let p = PatternMatrix::from_index(2, 3, code);
        let v = full_row_rank(&p);
        let grid = refute_by_grid(&p, &budget);
        if v.full_rank {
            assert_eq!(grid, GridOutcome::Exhausted, "{p:?}");
        } else {
            failing += 1;
            assert!(matches!(grid, GridOutcome::Found(_)), "{p:?}");
            assert!(refute_full_rank(&p, &budget).is_some());
        }
        assert!(verify_certificate(&p, &v).is_ok());
    }
    assert!(failing > 0 && failing < 729);
}

#[test]
fn exhaustive_3x3_square_cross_check() {
    for code in 0..19683 {
        let p = PatternMatrix::from_index(3, 3, code);
        let row = full_row_rank(&p).full_rank;
        assert_eq!(row, strongly_nonsingular_square(&p).unwrap(), "{p:?}");
        assert_eq!(row, full_column_rank(&p).full_rank, "{p:?}");
    }
}

#[test]
fn identity_block_always_full_row_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..6 {
        for _ in 0..20 {
            let b = PatternMatrix::random(n, rng.gen_range(0..5), &mut rng);
            let v = full_row_rank(&hstack(&[&identity_pattern(n), &b]).unwrap());
            assert!(v.full_rank);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pivot_choice_is_confluent(p in sparse_pattern(5, 8), seed in any::<u64>()) {
        let base = full_row_rank(&p).full_rank;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let e = eliminate_rows_with(&p, |eligible| rng.gen_range(0..eligible.len()));
            prop_assert_eq!(e.succeeded() && p.rows() <= p.cols(), base);
        }
    }

    #[test]
    fn permutation_invariant(p in sparse_pattern(5, 6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rp: Vec<usize> = (0..p.rows()).collect();
        let mut cp: Vec<usize> = (0..p.cols()).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let q = p.permute(&rp, &cp);
        prop_assert_eq!(full_row_rank(&p).full_rank, full_row_rank(&q).full_rank);
        prop_assert_eq!(full_column_rank(&p).full_rank, full_column_rank(&q).full_rank);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn appending_columns_keeps_full_rank(p in wide_pattern(4, 6), extra in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = PatternMatrix::random(p.rows(), extra, &mut rng);
        if full_row_rank(&p).full_rank {
            prop_assert!(full_row_rank(&hstack(&[&p, &q]).unwrap()).full_rank);
        }
    }

    #[test]
    fn certificates_and_witnesses_verify(p in pattern(5, 7)) {
        let v = full_row_rank(&p);
        prop_assert!(verify_certificate(&p, &v).is_ok());
        if let Some(w) = &v.witness {
            prop_assert!(p.contains(w, 0.0).unwrap());
            prop_assert!(exact_rank(w) < p.rows());
        }
        let c = full_column_rank(&p);
        prop_assert!(verify_certificate(&p, &c).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_rank_members_sample_full_rank(p in wide_pattern(4, 7), seed in any::<u64>()) {
        let r = rank_oracle(&p, 200, seed).unwrap();
        prop_assert!(r.all_passed(), "{:?}", r.counterexample);
    }

    #[test]
    fn pencil_sampling_agrees(a in pattern_of(3, 4), b in pattern_of(3, 4), seed in any::<u64>()) {
        let r = pencil_oracle(&a, &b, 20, 20, seed, 1e-9).unwrap();
        prop_assert!(r.all_passed(), "{:?}", r.counterexample);
    }
}

#[test]
fn descent_refutes_beyond_the_grid() {
    // 12 free entries: too many for the grid; no rows can be made equal
    let p = PatternMatrix::from_strs(&["**0*0", "*0*0*", "0**?0", "?0***"]);
    let budget = RefutationBudget::default();
    assert!(!full_row_rank(&p).full_rank);
    assert_eq!(refute_by_grid(&p, &budget), GridOutcome::TooLarge);
    let w = refute_by_descent(&p, &budget).expect("descent witness");
    assert!(p.contains(&w, 0.0).unwrap());
    assert!(exact_rank(&w) < 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn refuter_agrees_with_elimination(p in sparse_pattern(6, 8)) {
        let v = full_row_rank(&p);
        let mut budget = RefutationBudget::default();
        budget.max_random_restarts = 2;
        let found = refute_full_rank(&p, &budget);
        prop_assert_eq!(found.is_some(), !v.full_rank);
        if let Some(w) = found {
            prop_assert!(p.contains(&w, 0.0).unwrap());
            prop_assert!(exact_rank(&w) < p.rows());
        }
    }
}
