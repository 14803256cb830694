//! Deterministic primality testing and prime selection in `[2M, 4M]`.
//!
//! Values below [`TRIAL_DIVISION_LIMIT`] are decided by trial division.
//! Larger values use Miller-Rabin with the first thirteen primes as
//! witnesses, which is a proof of primality below
//! [`MILLER_RABIN_DETERMINISTIC_BOUND`]. Anything above that bound is
//! rejected rather than answered probabilistically.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// psi_13: every composite below this value fails Miller-Rabin for at
/// least one of the bases 2, 3, ..., 41.
pub const MILLER_RABIN_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("{0} exceeds the deterministic primality range")]
    OutOfRange(BigUint),
    #[error("prime search needs M >= 1")]
    ZeroBound,
}

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &WITNESSES {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test.
pub fn is_prime(n: &BigUint) -> Result<bool, PrimeError> {
    if let Some(small) = n.to_u64() {
        if small < TRIAL_DIVISION_LIMIT {
            return Ok(trial_division(small));
        }
    }
    if n >= &BigUint::from(MILLER_RABIN_DETERMINISTIC_BOUND) {
        return Err(PrimeError::OutOfRange(n.clone()));
    }
    if n.is_even() {
        return Ok(false);
    }
    Ok(miller_rabin(n))
}

/// A prime `p` together with the search window `[lower, upper]` it was
/// chosen from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeModulus {
    p: BigUint,
    lower: BigUint,
    upper: BigUint,
}

impl PrimeModulus {
    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn lower(&self) -> &BigUint {
        &self.lower
    }

    pub fn upper(&self) -> &BigUint {
        &self.upper
    }

    /// Maps a residue into the centered range `(-p/2, p/2]`.
    pub fn centered(&self, residue: &BigUint) -> BigInt {
        centered_residue(residue, &self.p)
    }
}

/// Returns the smallest prime in `[2M, 4M]`, which exists by Bertrand's
/// postulate.
pub fn find_prime(m: &BigUint) -> Result<PrimeModulus, PrimeError> {
    if m.is_zero() {
        return Err(PrimeError::ZeroBound);
    }
    let lower = m << 1u32;
    let upper = m << 2u32;
    if upper >= BigUint::from(MILLER_RABIN_DETERMINISTIC_BOUND) {
        return Err(PrimeError::OutOfRange(upper));
    }
    let mut candidate = lower.clone();
    while candidate <= upper {
        if is_prime(&candidate)? {
            return Ok(PrimeModulus { p: candidate, lower, upper });
        }
        candidate += 1u32;
    }
    unreachable!("Bertrand's postulate guarantees a prime in [2M, 4M]")
}

/// Maps `r mod p` into `(-p/2, p/2]`.
pub fn centered_residue(residue: &BigUint, p: &BigUint) -> BigInt {
    let r = residue % p;
    if (&r << 1u32) > *p {
        BigInt::from(r) - BigInt::from(p.clone())
    } else {
        BigInt::from(r)
    }
}
