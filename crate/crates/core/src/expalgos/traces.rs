use std::collections::HashSet;

use num_bigint::BigUint;

use super::matrix::BinaryMatrix;
use super::permanent::{eq1_size, f_expand, g_count_dp};
use super::{bits, ensure, ExpError};
use crate::oracle::{default_magnitude_exponent, OracleCallLog, OracleCallRecord};

pub const FORMULATION_DIM_CAP: usize = 10;
pub const BLOCK_QUOTA_CAP: usize = 12;

/// Where a map's left side is cut into `theta` consecutive blocks, and
/// which block holds the preimage of each exactly-once target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trace {
    /// `p_1 <= ... <= p_{theta-1}`: block `k` is left vertices
    /// `p_{k-1}..p_k` with `p_0 = 0`, the last block runs to `n`.
    pub breakpoints: Vec<usize>,
    /// Block (1-based) of each target, in increasing target order.
    pub block_of: Vec<usize>,
}

impl Trace {
    fn bounds(&self, n: usize, k: usize) -> (usize, usize) {
        let start = if k == 0 { 0 } else { self.breakpoints[k - 1] };
        let end = self.breakpoints.get(k).copied().unwrap_or(n);
        (start, end)
    }

    /// Targets whose preimage lies in block `k` (0-based).
    pub fn block_targets(&self, eq1: u32, k: usize) -> u32 {
        bits(eq1).zip(&self.block_of).filter(|&(_, &b)| b == k + 1).fold(0, |m, (v, _)| m | 1 << v)
    }
}

/// Preimage quota of each of the first `theta - 1` blocks; the last block
/// takes the remainder.
pub fn block_quota(targets: usize, theta: usize) -> Result<usize, ExpError> {
    if theta == 0 {
        return Err(ExpError::InvalidInput("theta must be positive".into()));
    }
    let quota = targets.div_ceil(theta);
    if (theta - 1) * quota > targets {
        return Err(ExpError::PreconditionViolated(format!(
            "{targets} targets cannot fill {} blocks of {quota}",
            theta - 1
        )));
    }
    ensure("block quota", quota, BLOCK_QUOTA_CAP)?;
    Ok(quota)
}

fn range_mask(start: usize, end: usize) -> u32 {
    (start..end).fold(0, |m, u| m | 1 << u)
}

/// Trace of the map `phi` (right vertex per left vertex), or `None` when
/// some target is not covered exactly once.
pub fn mapping_trace(phi: &[usize], eq1: u32, theta: usize) -> Result<Option<Trace>, ExpError> {
    let targets: Vec<usize> = bits(eq1).collect();
    let quota = block_quota(targets.len(), theta)?;
    let mut preimage = Vec::with_capacity(targets.len());
    for &v in &targets {
        let pre: Vec<usize> = (0..phi.len()).filter(|&u| phi[u] == v).collect();
        if pre.len() != 1 {
            return Ok(None);
        }
        preimage.push(pre[0]);
    }
    let mut bases: Vec<usize> = preimage.clone();
    bases.sort_unstable();
    let breakpoints = (1..theta).map(|k| if quota == 0 { 0 } else { bases[k * quota - 1] + 1 }).collect::<Vec<_>>();
    let block_of = preimage.iter().map(|&u| breakpoints.iter().filter(|&&p| p <= u).count() + 1).collect();
    Ok(Some(Trace { breakpoints, block_of }))
}

/// Every trace with its `theta` counting factors: one restricted count per
/// non-final block (last vertex mapped to a target) and one for the last.
pub fn trace_terms(a: &BinaryMatrix, eq1: u32, eq0: u32, theta: usize) -> Result<Vec<(Trace, Vec<u128>)>, ExpError> {
    if eq1 & eq0 != 0 {
        return Err(ExpError::InvalidInput("coverage classes overlap".into()));
    }
    let n = a.n();
    let t = eq1.count_ones() as usize;
    let quota = block_quota(t, theta)?;
    let mut out = Vec::new();
    let mut breakpoints = Vec::with_capacity(theta.saturating_sub(1));
    let mut block_of = vec![0usize; t];
    enumerate_breakpoints(n, theta, quota, &mut breakpoints, &mut |bp| {
        assign_blocks(t, theta, quota, 0, &mut vec![0; theta], &mut block_of, &mut |assign| {
            let trace = Trace { breakpoints: bp.to_vec(), block_of: assign.to_vec() };
            let mut factors = Vec::with_capacity(theta);
            for k in 0..theta {
                let w = trace.block_targets(eq1, k);
                let (start, end) = trace.bounds(n, k);
                let last = k + 1 == theta;
                let g = if !last && quota == 0 {
                    1
                } else {
                    g_count_dp(a, range_mask(start, end), w, eq0 | (eq1 & !w), !last)?
                };
                factors.push(g);
            }
            out.push((trace, factors));
            Ok(())
        })
    })?;
    Ok(out)
}

type Visit<'a> = dyn FnMut(&[usize]) -> Result<(), ExpError> + 'a;

fn enumerate_breakpoints(
    n: usize,
    theta: usize,
    quota: usize,
    cur: &mut Vec<usize>,
    visit: &mut Visit<'_>,
) -> Result<(), ExpError> {
    if cur.len() + 1 >= theta {
        return visit(cur);
    }
    if quota == 0 {
        cur.push(0);
        enumerate_breakpoints(n, theta, quota, cur, visit)?;
        cur.pop();
        return Ok(());
    }
    let prev = cur.last().copied().unwrap_or(0);
    for p in prev + quota..=n {
        cur.push(p);
        enumerate_breakpoints(n, theta, quota, cur, visit)?;
        cur.pop();
    }
    Ok(())
}

fn assign_blocks(
    t: usize,
    theta: usize,
    quota: usize,
    i: usize,
    load: &mut Vec<usize>,
    block_of: &mut Vec<usize>,
    visit: &mut Visit<'_>,
) -> Result<(), ExpError> {
    if i == t {
        return visit(block_of);
    }
    for k in 0..theta {
        let cap = if k + 1 == theta { t - (theta - 1) * quota } else { quota };
        if load[k] < cap {
            load[k] += 1;
            block_of[i] = k + 1;
            assign_blocks(t, theta, quota, i + 1, load, block_of, visit)?;
            load[k] -= 1;
        }
    }
    Ok(())
}

/// Maps covering `eq1` exactly once and avoiding `eq0`, summed over traces.
pub fn f_count_traces(a: &BinaryMatrix, eq1: u32, eq0: u32, theta: usize) -> Result<u128, ExpError> {
    Ok(trace_terms(a, eq1, eq0, theta)?.iter().map(|(_, f)| f.iter().product::<u128>()).sum())
}

/// Distinct trace variables a term touches: one per block range, target
/// set and closing flag that needs a restricted count.
pub fn touched_variables(a: &BinaryMatrix, eq1: u32, theta: usize) -> Result<usize, ExpError> {
    let n = a.n();
    let t = eq1.count_ones() as usize;
    let quota = block_quota(t, theta)?;
    let mut seen = HashSet::new();
    let mut breakpoints = Vec::with_capacity(theta.saturating_sub(1));
    let mut block_of = vec![0usize; t];
    enumerate_breakpoints(n, theta, quota, &mut breakpoints, &mut |bp| {
        assign_blocks(t, theta, quota, 0, &mut vec![0; theta], &mut block_of, &mut |assign| {
            let trace = Trace { breakpoints: bp.to_vec(), block_of: assign.to_vec() };
            for k in 0..theta {
                let last = k + 1 == theta;
                if last || quota > 0 {
                    seen.insert((trace.bounds(n, k), trace.block_targets(eq1, k), last));
                }
            }
            Ok(())
        })
    })?;
    Ok(seen.len())
}

/// Permanent through the signed expansion, with each term counted over
/// traces. The exactly-once set is the first `⌈alpha n⌉` columns.
pub fn permanent_via_formulation(a: &BinaryMatrix, alpha: f64, theta: usize) -> Result<u128, ExpError> {
    permanent_via_formulation_logged(a, alpha, theta).map(|(value, _)| value)
}

/// As [`permanent_via_formulation`], logging one call per signed term
/// sized by the trace variables it touches.
pub fn permanent_via_formulation_logged(
    a: &BinaryMatrix,
    alpha: f64,
    theta: usize,
) -> Result<(u128, OracleCallLog), ExpError> {
    ensure("matrix dimension", a.n(), FORMULATION_DIM_CAP)?;
    let eq1 = (1u32 << eq1_size(a.n(), alpha)?) - 1;
    let mut total: i128 = 0;
    let mut log = OracleCallLog::default();
    for (sign, s) in f_expand(a, eq1, alpha)? {
        let terms = trace_terms(a, s.eq1, s.eq0, theta)?;
        let count: u128 = terms.iter().map(|(_, f)| f.iter().product::<u128>()).sum();
        let max = terms.iter().flat_map(|(_, f)| f.iter().copied()).max().unwrap_or(0);
        let size = touched_variables(a, s.eq1, theta)?.max(1) as u64;
        let max = BigUint::from(max);
        log.calls.push(OracleCallRecord {
            size,
            charged_cost: size,
            magnitude_flagged: max.bits() > default_magnitude_exponent(size),
            max_arg_magnitude: max,
            result_nonzero: count != 0,
        });
        total += sign as i128 * count as i128;
    }
    let value = u128::try_from(total).map_err(|_| ExpError::PreconditionViolated("negative signed sum".into()))?;
    Ok((value, log))
}
