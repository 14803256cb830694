//! Local-subset problems: specs, instances, the block-comparison
//! formulation and its witness-counting evaluation.

pub mod blocks;
pub mod formulation;
pub mod spec;

use thiserror::Error;

use crate::poly::PolyError;

pub use blocks::{
    comparison_tuple_sets, compute_assignment, variable_count, BlockVariableAssignment, Comparison, ComparisonSets,
};
pub use formulation::{
    brute_solve, count_witnesses, evaluate_formulation, formulation_polynomial, witnesses, FormulationStream,
};
pub use spec::{FnVerifier, LSInstance, LSProblemSpec, Verifier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LsError {
    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("universe of {size} codes exceeds the enumeration cap {cap}")]
    UniverseTooLarge { size: u64, cap: u64 },
    #[error("monomial stream of at least {size} terms exceeds the cap {cap}")]
    StreamTooLarge { size: u128, cap: u128 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
