//! Exact counting algorithms: the binary permanent through coverage
//! classes and traces, and set cover through hybrid cover counting and
//! set partition traces.

pub mod hcv;
pub mod matrix;
pub mod permanent;
pub mod setfamily;
pub mod setpartition;
pub mod traces;

use thiserror::Error;

pub use hcv::{hcv_branch, hcv_brute, hcv_expand_setcover, setcover_min, CoverMethod};
pub use matrix::BinaryMatrix;
pub use permanent::{f_count_brute, f_expand, g_count_dp, permanent_brute, permanent_fsets, FSpec};
pub use setfamily::SetFamily;
pub use setpartition::{setpartition_brute, setpartition_via_traces, z_var_dp};
pub use traces::{
    f_count_traces, permanent_via_formulation, permanent_via_formulation_logged, touched_variables, Trace,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpError {
    #[error("{what} is {size}, limit {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub(crate) fn ensure(what: &'static str, size: usize, cap: usize) -> Result<(), ExpError> {
    if size > cap {
        Err(ExpError::TooLarge { what, size, cap })
    } else {
        Ok(())
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Members of a bitmask, lowest first.
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn bit_iteration() {
        assert_eq!(bits(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(bits(0).count(), 0);
    }
}
