//! Oracle cost accounting, run reports, scaling benchmarks and the
//! command line front end.

pub mod bench;
pub mod cli;
pub mod report;
pub mod suite;

use crate::ls::{LSInstance, LSProblemSpec};
use crate::oracle::{solve_via_oracle, FormulationOracle, LoggingOracle, OracleCallLog, OracleError};

pub use bench::{bench_vars, parse_sizes, BenchTable};
pub use report::{instance_digest, RunReport};

/// Solves through one logged formulation oracle query.
pub fn solve_logged(spec: &LSProblemSpec, inst: &LSInstance, theta: u32) -> Result<(bool, OracleCallLog), OracleError> {
    let mut oracle = LoggingOracle::new(FormulationOracle::new(spec.clone(), theta));
    let answer = solve_via_oracle(spec, inst, theta, &mut oracle)?;
    Ok((answer, oracle.into_log()))
}
