mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{hcv_naive, mapping_count, min_cover_naive, partition_naive, random_family, random_matrix, ryser};
use polyoracle::expalgos::{
    f_count_traces, f_expand, g_count_dp, hcv_branch, permanent_fsets, permanent_via_formulation,
    permanent_via_formulation_logged, setcover_min, setpartition_via_traces, BinaryMatrix, CoverMethod, ExpError,
};

fn matrix(rng: &mut ChaCha8Rng, n: usize) -> BinaryMatrix {
    let p = rng.gen_range(0.3..0.9);
    random_matrix(rng, n, p)
}

const ALPHAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> u32 {
    let mut s = 0u32;
    while (s.count_ones() as usize) < size {
        s |= 1 << rng.gen_range(0..n);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn coverage_expansion_is_exact(seed in any::<u64>(), n in 1usize..=5, ai in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = matrix(&mut rng, n);
        let alpha = ALPHAS[ai];
        let eq1 = random_subset(&mut rng, n, (alpha * n as f64).ceil() as usize);
        let terms = f_expand(&a, eq1, alpha).unwrap();
        prop_assert!(terms.iter().all(|(_, s)| s.ge1 == 0 && s.eq1 == eq1));
        let signed: i128 = terms.iter().map(|(sign, s)| *sign as i128 * mapping_count(&a, s.eq1, s.eq0, 0) as i128).sum();
        prop_assert_eq!(signed, ryser(&a));
        prop_assert_eq!(mapping_count(&a, eq1, 0, a.full() & !eq1) as i128, ryser(&a));
    }

    #[test]
    fn exactly_once_counts_agree(seed in any::<u64>(), n in 1usize..=5, theta in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = matrix(&mut rng, n);
        let (s1, s0) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let eq1 = random_subset(&mut rng, n, s1);
        let eq0 = random_subset(&mut rng, n, s0) & !eq1;
        let want = mapping_count(&a, eq1, eq0, 0);
        prop_assert_eq!(g_count_dp(&a, a.full(), eq1, eq0, false).unwrap(), want);
        match f_count_traces(&a, eq1, eq0, theta) {
            Ok(got) => prop_assert_eq!(got, want),
            Err(e) => prop_assert!(matches!(e, ExpError::PreconditionViolated(_)), "{e}"),
        }
    }

    #[test]
    fn permanent_routes_agree(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = matrix(&mut rng, n);
        let want = ryser(&a);
        prop_assert!(want >= 0);
        prop_assert_eq!(permanent_fsets(&a, 0.5).unwrap() as i128, want);
        prop_assert_eq!(permanent_via_formulation(&a, 0.5, 2).unwrap() as i128, want);
        prop_assert_eq!(permanent_via_formulation(&a, 1.0, 1).unwrap() as i128, want);
    }

    #[test]
    fn formulation_logs_one_call_per_term(seed in any::<u64>(), n in 1usize..=5, theta in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = matrix(&mut rng, n);
        let eq1 = (1u32 << n.div_ceil(2)) - 1;
        let terms = f_expand(&a, eq1, 0.5).unwrap();
        match permanent_via_formulation_logged(&a, 0.5, theta) {
            Ok((value, log)) => {
                prop_assert_eq!(value as i128, ryser(&a));
                prop_assert_eq!(log.len(), terms.len());
                for (call, (_, s)) in log.calls.iter().zip(&terms) {
                    prop_assert_eq!(call.charged_cost, call.size);
                    prop_assert!(call.size >= 1);
                    if theta == 1 {
                        prop_assert_eq!(call.size, 1);
                    }
                    let count = f_count_traces(&a, s.eq1, s.eq0, theta).unwrap();
                    prop_assert_eq!(call.result_nonzero, count != 0);
                }
            }
            Err(e) => prop_assert!(matches!(e, ExpError::PreconditionViolated(_))),
        }
    }

    #[test]
    fn hybrid_branching_preserves_counts(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(1..=9);
        let f = random_family(&mut rng, n, 3, count, true);
        let m = rng.gen_range(0..=n);
        let terms = hcv_branch(&f, n, m).unwrap();
        for k in 0..=f.len() {
            let signed: i128 = terms
                .iter()
                .map(|(sign, g)| *sign as i128 * hcv_naive(g, g.n(), g.n(), k) as i128)
                .sum();
            prop_assert_eq!(signed, hcv_naive(&f, n, m, k) as i128, "k = {}", k);
        }
    }

    #[test]
    fn partition_traces_count_partitions(seed in any::<u64>(), n in 2usize..=8, theta in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max = n / (2 * theta);
        prop_assume!(max >= 1);
        let count = rng.gen_range(1..=10);
        let f = random_family(&mut rng, n, max, count, false);
        let k = rng.gen_range(1..=f.len());
        prop_assert_eq!(setpartition_via_traces(&f, k, theta).unwrap(), partition_naive(&f, k));
    }

    #[test]
    fn cover_reduction_finds_minimum(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(1..=10);
        let f = random_family(&mut rng, n, 3, count, false);
        let want = min_cover_naive(&f);
        prop_assert_eq!(setcover_min(&f, CoverMethod::Reduction).unwrap(), want);
        prop_assert_eq!(setcover_min(&f, CoverMethod::Brute).unwrap(), want);
    }
}
