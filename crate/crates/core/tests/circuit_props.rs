mod common;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{naive_prime, random_circuit, random_point, random_poly, semantic_mutation};
use polyoracle::circuit::{ArithmeticCircuit, DEFAULT_MONOMIAL_CAP};
use polyoracle::prime::{centered_residue, find_prime, is_prime};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn homogenized_circuit_agrees(seed in any::<u64>(), delta in 1u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, 3, 12, delta);
        let h = c.homogenize(delta);
        for _ in 0..5 {
            let x = random_point(&mut rng, 3, 50);
            prop_assert_eq!(h.evaluate(&x, None).unwrap(), c.evaluate(&x, None).unwrap());
        }
    }

    #[test]
    fn faithful_circuits_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, 4, 8, 4, 9);
        let c = ArithmeticCircuit::from_polynomial(&p);
        let delta = p.total_degree() as u32;
        prop_assert!(c.verify(&p, delta, DEFAULT_MONOMIAL_CAP).is_accepted());
        let c = random_circuit(&mut rng, 3, 10, 4);
        let q = c.expand(DEFAULT_MONOMIAL_CAP).unwrap();
        prop_assert!(c.verify(&q, 4, DEFAULT_MONOMIAL_CAP).is_accepted());
    }

    #[test]
    fn mutated_circuits_are_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, 3, 10, 4);
        let q = c.expand(DEFAULT_MONOMIAL_CAP).unwrap();
        if let Some(m) = semantic_mutation(&mut rng, &c, 4) {
            prop_assert!(!m.verify(&q, 4, DEFAULT_MONOMIAL_CAP).is_accepted());
        }
    }

    #[test]
    fn prime_lies_in_window(m in 1u64..1_000_000) {
        let pm = find_prime(&BigUint::from(m)).unwrap();
        let p: u64 = pm.p().try_into().unwrap();
        prop_assert!(2 * m <= p && p <= 4 * m);
        prop_assert!(naive_prime(p));
        prop_assert!((2 * m..p).all(|q| !naive_prime(q)));
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..200_000) {
        prop_assert_eq!(is_prime(&BigUint::from(n)).unwrap(), naive_prime(n));
    }

    #[test]
    fn centered_residue_reconstructs(v in -1_000_000i64..1_000_000) {
        let m = BigUint::from(v.unsigned_abs() + 1);
        let pm = find_prime(&m).unwrap();
        let p = BigInt::from(pm.p().clone());
        let residue = BigInt::from(v).mod_floor(&p).to_biguint().unwrap();
        prop_assert_eq!(pm.centered(&residue), BigInt::from(v));
        prop_assert_eq!(centered_residue(&residue, pm.p()), BigInt::from(v));
    }
}
