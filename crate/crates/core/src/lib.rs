//! Polynomial formulations for local-subset problems, single-query oracle
//! solving with cost accounting, exact counting reductions for the binary
//! permanent and set cover, and an arithmetic-circuit verification pipeline.

pub mod circuit;
pub mod expalgos;
pub mod harness;
pub mod ls;
pub mod oracle;
pub mod poly;
pub mod prime;
pub mod problems;
