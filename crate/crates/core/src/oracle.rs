//! Polynomial oracles and single-call solving.
//!
//! A query is a point `(a_1, ..., a_s)`; answering it is charged `s`.
//! Values are read through [`OracleQuery`] so that large 0/1 tables can be
//! passed without materializing every entry.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ls::blocks::{block_len, variable_count, BlockVariableAssignment, Comparison};
use crate::ls::formulation::{count_witnesses, stream_cap, FormulationStream};
use crate::ls::{compute_assignment, LSInstance, LSProblemSpec, LsError};

/// Largest raw query that is scanned entry by entry.
pub const RAW_QUERY_CAP: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no formulation of this family has {0} variables")]
    UnsupportedSize(u128),
    #[error("query of {size} variables exceeds the scan cap {cap}")]
    QueryTooLarge { size: u128, cap: u128 },
    #[error(transparent)]
    Ls(#[from] LsError),
    #[error("oracle failure: {0}")]
    Failed(String),
}

pub trait OracleQuery {
    fn size(&self) -> u128;

    fn value(&self, idx: usize) -> BigInt;

    fn max_magnitude(&self) -> BigUint {
        let len = usize::try_from(self.size()).expect("query length fits in usize");
        (0..len).map(|i| self.value(i).magnitude().clone()).max().unwrap_or_default()
    }

    /// The structured table behind this query, if it is one.
    fn as_assignment(&self) -> Option<&BlockVariableAssignment> {
        None
    }
}

impl OracleQuery for Vec<BigInt> {
    fn size(&self) -> u128 {
        self.len() as u128
    }

    fn value(&self, idx: usize) -> BigInt {
        self[idx].clone()
    }

    fn max_magnitude(&self) -> BigUint {
        self.iter().map(|v| v.magnitude().clone()).max().unwrap_or_default()
    }
}

impl OracleQuery for BlockVariableAssignment {
    fn size(&self) -> u128 {
        self.num_variables()
    }

    fn value(&self, idx: usize) -> BigInt {
        BigInt::from(BlockVariableAssignment::value(self, idx) as u8)
    }

    fn max_magnitude(&self) -> BigUint {
        BlockVariableAssignment::max_magnitude(self)
    }

    fn as_assignment(&self) -> Option<&BlockVariableAssignment> {
        Some(self)
    }
}

pub trait PolynomialOracle {
    fn evaluate(&mut self, query: &dyn OracleQuery) -> Result<BigInt, OracleError>;
}

/// Always answers the same value.
#[derive(Clone, Debug)]
pub struct ConstantOracle(pub BigInt);

impl PolynomialOracle for ConstantOracle {
    fn evaluate(&mut self, _query: &dyn OracleQuery) -> Result<BigInt, OracleError> {
        Ok(self.0.clone())
    }
}

/// Evaluates the block formulation of a fixed spec and block count.
///
/// Queries that are the table of some instance are answered by counting
/// that instance's witnesses; any other point is evaluated monomial by
/// monomial.
#[derive(Clone, Debug)]
pub struct FormulationOracle {
    spec: LSProblemSpec,
    theta: u32,
}

impl FormulationOracle {
    pub fn new(spec: LSProblemSpec, theta: u32) -> Self {
        FormulationOracle { spec, theta }
    }

    fn size_for(&self, size: u128) -> Result<u64, OracleError> {
        let r = self.spec.r();
        let mut s = 1u64;
        loop {
            let count = variable_count(s, r, self.theta);
            if count == size {
                return Ok(s);
            }
            if count > size {
                return Err(OracleError::UnsupportedSize(size));
            }
            s += 1;
        }
    }

    /// Recovers the instance whose table equals `query`, if any.
    fn decode(&self, query: &dyn OracleQuery, s: u64) -> Option<LSInstance> {
        let (r, theta) = (self.spec.r(), self.theta);
        let l = block_len(s, r, theta);
        let width = 1u64 << l;
        let len = usize::try_from(query.size()).ok()?;
        let values: Vec<BigInt> = (0..len).map(|i| query.value(i)).collect();
        if values.iter().any(|v| !v.is_zero() && *v != BigInt::from(1)) {
            return None;
        }
        let idx = |c: Comparison, i: usize, q: u32, a: u64| crate::ls::blocks::variable_index(theta, l, c, i, q, a);
        let mut elements = Vec::new();
        'rows: for i in 1..=s as usize {
            let mut code: u128 = 0;
            for q in 1..=theta {
                let hits: Vec<u64> =
                    (0..width).filter(|&a| !values[idx(Comparison::Equal, i, q, a)].is_zero()).collect();
                if hits.len() != 1 {
                    break 'rows;
                }
                code = (code << l) | hits[0] as u128;
            }
            elements.push(u64::try_from(code + 1).ok()?);
        }
        let n = s.checked_sub(elements.len() as u64)?;
        let inst = LSInstance::new(n, r, elements).ok()?;
        let table = compute_assignment(&self.spec, &inst, theta);
        let same = values.iter().enumerate().all(|(i, v)| v.is_zero() != BlockVariableAssignment::value(&table, i));
        same.then_some(inst)
    }
}

impl PolynomialOracle for FormulationOracle {
    fn evaluate(&mut self, query: &dyn OracleQuery) -> Result<BigInt, OracleError> {
        if let Some(table) = query.as_assignment() {
            if table.r() == self.spec.r() && table.theta() == self.theta {
                return Ok(count_witnesses(&self.spec, table.instance())?.into());
            }
        }
        let size = query.size();
        if size > RAW_QUERY_CAP {
            return Err(OracleError::QueryTooLarge { size, cap: RAW_QUERY_CAP });
        }
        let s = self.size_for(size)?;
        if let Some(inst) = self.decode(query, s) {
            return Ok(count_witnesses(&self.spec, &inst)?.into());
        }
        let stream = FormulationStream::new(&self.spec, s, self.theta, stream_cap())?;
        Ok(stream.evaluate(|v| query.value(v)))
    }
}

/// One oracle call as charged by the cost model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCallRecord {
    pub size: u64,
    pub charged_cost: u64,
    #[serde(with = "decimal_biguint")]
    pub max_arg_magnitude: BigUint,
    pub result_nonzero: bool,
    pub magnitude_flagged: bool,
}

mod decimal_biguint {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| de::Error::custom(format!("invalid decimal {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCallLog {
    pub calls: Vec<OracleCallRecord>,
}

impl OracleCallLog {
    pub fn total_cost(&self) -> u64 {
        self.calls.iter().map(|c| c.charged_cost).sum()
    }

    pub fn len(&self) -> usize {
        self.calls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.calls.is_empty()
    }
}

/// Default magnitude exponent `ceil(s^0.9)`: arguments of absolute value at
/// least `2^ceil(s^0.9)` are flagged.
pub fn default_magnitude_exponent(size: u64) -> u64 {
    (size as f64).powf(0.9).ceil() as u64
}

/// Forwards every query to `inner` and records its cost.
pub struct LoggingOracle<O> {
    inner: O,
    log: OracleCallLog,
    exponent: fn(u64) -> u64,
}

impl<O: PolynomialOracle> LoggingOracle<O> {
    pub fn new(inner: O) -> Self {
        Self::with_bound(inner, default_magnitude_exponent)
    }

    pub fn with_bound(inner: O, exponent: fn(u64) -> u64) -> Self {
        LoggingOracle { inner, log: OracleCallLog::default(), exponent }
    }

    pub fn log(&self) -> &OracleCallLog {
        &self.log
    }

    pub fn into_log(self) -> OracleCallLog {
        self.log
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: PolynomialOracle> PolynomialOracle for LoggingOracle<O> {
    fn evaluate(&mut self, query: &dyn OracleQuery) -> Result<BigInt, OracleError> {
        let size = u64::try_from(query.size())
            .map_err(|_| OracleError::QueryTooLarge { size: query.size(), cap: u64::MAX as u128 })?;
        let max = query.max_magnitude();
        let result = self.inner.evaluate(query)?;
        let flagged = max.bits() > (self.exponent)(size);
        self.log.calls.push(OracleCallRecord {
            size,
            charged_cost: size,
            max_arg_magnitude: max,
            result_nonzero: !result.is_zero(),
            magnitude_flagged: flagged,
        });
        Ok(result)
    }
}

/// Builds the instance's table, asks the oracle once, and reports whether
/// the answer is nonzero.
pub fn solve_via_oracle(
    spec: &LSProblemSpec,
    inst: &LSInstance,
    theta: u32,
    oracle: &mut dyn PolynomialOracle,
) -> Result<bool, OracleError> {
    if theta == 0 {
        return Err(LsError::InvalidSpec("theta must be positive".into()).into());
    }
    if spec.r() != inst.r() {
        return Err(LsError::InvalidInstance(format!(
            "instance built for r = {} but {} uses r = {}",
            inst.r(),
            spec.name(),
            spec.r()
        ))
        .into());
    }
    let table = compute_assignment(spec, inst, theta);
    let answer = oracle.evaluate(&table)?;
    Ok(!answer.is_zero())
}
