use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use polyoracle::harness::report::{instance_digest, RunReport};
use polyoracle::harness::solve_logged;
use polyoracle::harness::suite::random_input;
use polyoracle::ls::{brute_solve, variable_count};
use polyoracle::oracle::{OracleCallLog, OracleCallRecord};
use polyoracle::problems::ProblemKind;

fn record() -> impl Strategy<Value = OracleCallRecord> {
    (0u64..1 << 40, any::<u64>(), any::<bool>(), any::<bool>()).prop_map(|(size, mag, nz, fl)| OracleCallRecord {
        size,
        charged_cost: size,
        max_arg_magnitude: BigUint::from(mag) * BigUint::from(mag),
        result_nonzero: nz,
        magnitude_flagged: fl,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn report_totals_reconcile_and_round_trip(
        calls in proptest::collection::vec(record(), 0..6),
        wall in 0.0f64..1e4,
        answer in prop_oneof![Just(Value::from("yes")), Just(Value::from("no")), any::<u64>().prop_map(Value::from)],
        body in ".{0,40}",
    ) {
        let sum: u64 = calls.iter().map(|c| c.size).sum();
        let r = RunReport::new("p", instance_digest(body.as_bytes()), answer, OracleCallLog { calls }, wall);
        prop_assert_eq!(r.total_oracle_cost, sum);
        prop_assert!(r.reconciles());
        prop_assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r.clone());
        prop_assert_eq!(r.instance_digest.len(), 64);
    }

    #[test]
    fn every_solve_makes_one_call(kind in proptest::sample::select(ProblemKind::ALL.to_vec()), seed in any::<u64>(), theta in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let json = random_input(kind, &mut rng);
        let enc = kind.encode_json(&json).unwrap();
        let (answer, log) = solve_logged(&enc.spec, &enc.instance, theta).unwrap();
        prop_assert_eq!(answer, brute_solve(&enc.spec, &enc.instance).unwrap());
        prop_assert_eq!(log.len(), 1);
        let want = variable_count(enc.instance.size(), enc.spec.r(), theta);
        prop_assert_eq!(log.calls[0].size as u128, want);
        prop_assert_eq!(log.calls[0].result_nonzero, answer);
        prop_assert_eq!(log.total_cost(), log.calls[0].size);
    }
}
