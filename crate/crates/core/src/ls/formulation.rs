//! Brute-force solving, witness counting and the literal monomial stream of
//! the block formulation
//!
//! `P_s = sum_{(a, b) accepted} prod_l (sum_{i in [1, s]} P^=_{i, a_l})
//!        prod_l (sum_{j in [0, s-1]} P^<_{j, b_l} P^>_{j+1, b_l})`
//!
//! expanded into monomials, where each `P^c_{i,a}` is a sum over the block
//! outcome tuples implying `c`.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::blocks::{
    block_len, comparison_tuple_sets, variable_count, variable_index, BlockVariableAssignment, Comparison,
};
use super::spec::{universe_size, LSInstance, LSProblemSpec};
use super::LsError;
use crate::poly::SparsePolynomial;

/// Largest `n^r` for which the complement of `S` is enumerated.
pub const UNIVERSE_CAP: u64 = 1_000_000;

/// Default limit on the number of streamed monomials.
pub const DEFAULT_STREAM_CAP: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_STREAM_CAP`].
pub const STREAM_CAP_ENV: &str = "POLYORACLE_CAP";

pub fn stream_cap() -> u128 {
    std::env::var(STREAM_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_STREAM_CAP)
}

/// Visits every `(a_1..a_alpha, b_1..b_beta)` with `a` drawn from `S`,
/// `b` from `[1, n^r] \ S`, and accepted by the verifier.
fn for_each_witness(
    spec: &LSProblemSpec,
    inst: &LSInstance,
    mut visit: impl FnMut(&[u64]) -> ControlFlow<()>,
) -> Result<(), LsError> {
    check_r(spec, inst)?;
    let universe = inst.universe();
    if spec.beta() > 0 && universe > UNIVERSE_CAP {
        return Err(LsError::UniverseTooLarge { size: universe, cap: UNIVERSE_CAP });
    }
    let complement: Vec<u64> =
        if spec.beta() > 0 { (1..=universe).filter(|&c| !inst.contains(c)).collect() } else { Vec::new() };
    let mut prefix = Vec::with_capacity(spec.arity());
    let _ = descend(spec, inst.elements(), &complement, &mut prefix, &mut visit);
    Ok(())
}

fn check_r(spec: &LSProblemSpec, inst: &LSInstance) -> Result<(), LsError> {
    if spec.r() != inst.r() {
        return Err(LsError::InvalidInstance(format!(
            "instance built for r = {} but {} uses r = {}",
            inst.r(),
            spec.name(),
            spec.r()
        )));
    }
    Ok(())
}

fn descend(
    spec: &LSProblemSpec,
    inside: &[u64],
    outside: &[u64],
    prefix: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let depth = prefix.len();
    if depth == spec.arity() {
        return if spec.verifier().accepts(prefix) { visit(prefix) } else { ControlFlow::Continue(()) };
    }
    let pool = if depth < spec.alpha() { inside } else { outside };
    for &code in pool {
        prefix.push(code);
        let flow = if spec.verifier().admits_prefix(prefix) {
            descend(spec, inside, outside, prefix, visit)
        } else {
            ControlFlow::Continue(())
        };
        prefix.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Decides the instance by direct enumeration, stopping at the first witness.
pub fn brute_solve(spec: &LSProblemSpec, inst: &LSInstance) -> Result<bool, LsError> {
    let mut found = false;
    for_each_witness(spec, inst, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Number of accepted witness tuples.
pub fn count_witnesses(spec: &LSProblemSpec, inst: &LSInstance) -> Result<u128, LsError> {
    let mut count = 0u128;
    for_each_witness(spec, inst, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// All accepted witness tuples, in enumeration order.
pub fn witnesses(spec: &LSProblemSpec, inst: &LSInstance) -> Result<Vec<Vec<u64>>, LsError> {
    let mut out = Vec::new();
    for_each_witness(spec, inst, |w| {
        out.push(w.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Value of the formulation at the instance's table, computed by counting
/// witnesses: each accepted tuple contributes exactly one monomial whose
/// variables are all `1`.
pub fn evaluate_formulation(spec: &LSProblemSpec, inst: &LSInstance, theta: u32) -> Result<BigInt, LsError> {
    if theta == 0 {
        return Err(LsError::InvalidSpec("theta must be positive".into()));
    }
    count_witnesses(spec, inst).map(BigInt::from)
}

/// The monomial stream of the size-`s` formulation for `spec` at block
/// count `theta`.
pub struct FormulationStream<'a> {
    spec: &'a LSProblemSpec,
    s: u64,
    theta: u32,
    block_len: u32,
    accepted: Vec<Vec<u64>>,
}

impl<'a> FormulationStream<'a> {
    /// Enumerates the accepted candidate tuples over `[1, s^r]` and checks
    /// the resulting stream length against `cap`.
    pub fn new(spec: &'a LSProblemSpec, s: u64, theta: u32, cap: u128) -> Result<Self, LsError> {
        if s == 0 || theta == 0 {
            return Err(LsError::InvalidSpec("size and theta must be positive".into()));
        }
        let per_tuple = monomials_per_tuple(spec, s, theta);
        let range = universe_size(s, spec.r()).ok_or(LsError::StreamTooLarge { size: u128::MAX, cap })?;
        let max_tuples = cap / per_tuple.max(1);
        let mut accepted = Vec::new();
        let mut overflow = false;
        let mut prefix = Vec::with_capacity(spec.arity());
        let slots: Vec<Option<Vec<u64>>> = (0..spec.arity()).map(|t| spec.verifier().slot_codes(t, s)).collect();
        let _ = candidates(spec, range, &slots, &mut prefix, &mut |t| {
            if accepted.len() as u128 >= max_tuples {
                overflow = true;
                return ControlFlow::Break(());
            }
            accepted.push(t.to_vec());
            ControlFlow::Continue(())
        });
        if overflow {
            return Err(LsError::StreamTooLarge { size: (max_tuples + 1) * per_tuple, cap });
        }
        Ok(FormulationStream { spec, s, theta, block_len: block_len(s, spec.r(), theta), accepted })
    }

    pub fn num_vars(&self) -> u128 {
        variable_count(self.s, self.spec.r(), self.theta)
    }

    pub fn accepted_tuples(&self) -> &[Vec<u64>] {
        &self.accepted
    }

    /// Total number of monomials the stream emits.
    pub fn len(&self) -> u128 {
        self.accepted.len() as u128 * monomials_per_tuple(self.spec, self.s, self.theta)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> u64 {
        self.spec.formulation_degree(self.theta)
    }

    /// Calls `visit` with the variable indices of every monomial, in
    /// stream order. Every monomial has coefficient one.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
        let sets = comparison_tuple_sets(self.theta);
        let (theta, l) = (self.theta, self.block_len);
        let s = self.s as usize;
        let mut vars = Vec::with_capacity(self.degree() as usize);
        for tuple in &self.accepted {
            let mut groups: Vec<Vec<Vec<usize>>> = Vec::with_capacity(tuple.len());
            for (slot, &code) in tuple.iter().enumerate() {
                let blocks = split(code - 1, theta, l);
                let mut opts = Vec::new();
                if slot < self.spec.alpha() {
                    for i in 1..=s {
                        for t in &sets.equal {
                            opts.push(factor(theta, l, i, t, &blocks));
                        }
                    }
                } else {
                    for j in 0..s {
                        for lt in &sets.less {
                            for gt in &sets.greater {
                                let mut f = factor(theta, l, j, lt, &blocks);
                                f.extend(factor(theta, l, j + 1, gt, &blocks));
                                opts.push(f);
                            }
                        }
                    }
                }
                groups.push(opts);
            }
            let mut pick = vec![0usize; groups.len()];
            loop {
                vars.clear();
                for (g, &p) in groups.iter().zip(&pick) {
                    vars.extend_from_slice(&g[p]);
                }
                if visit(&vars).is_break() {
                    return;
                }
                let mut k = groups.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] < groups[k].len() {
                        break;
                    }
                    pick[k] = 0;
                }
                if pick.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
    }

    /// Sums the streamed monomials at the point given by `value`.
    pub fn evaluate(&self, value: impl Fn(usize) -> BigInt) -> BigInt {
        let mut total = BigInt::zero();
        self.for_each(|vars| {
            let mut prod = BigInt::one();
            for &v in vars {
                let x = value(v);
                if x.is_zero() {
                    return ControlFlow::Continue(());
                }
                prod *= x;
            }
            total += prod;
            ControlFlow::Continue(())
        });
        total
    }

    /// Sums the streamed monomials at a 0/1 table.
    pub fn evaluate_assignment(&self, table: &BlockVariableAssignment) -> u128 {
        let len = usize::try_from(table.num_variables()).expect("table fits in memory");
        let values: Vec<bool> = (0..len).map(|idx| table.value(idx)).collect();
        let mut total = 0u128;
        self.for_each(|vars| {
            if vars.iter().all(|&v| values[v]) {
                total += 1;
            }
            ControlFlow::Continue(())
        });
        total
    }

    /// Merges the stream into a canonical polynomial.
    pub fn to_polynomial(&self) -> Result<SparsePolynomial, LsError> {
        let num_vars = usize::try_from(self.num_vars())
            .map_err(|_| LsError::InvalidSpec("variable count exceeds usize".into()))?;
        let mut terms = Vec::new();
        self.for_each(|vars| {
            let mut powers: Vec<(usize, u32)> = Vec::with_capacity(vars.len());
            let mut sorted = vars.to_vec();
            sorted.sort_unstable();
            for v in sorted {
                match powers.last_mut() {
                    Some((last, e)) if *last == v => *e += 1,
                    _ => powers.push((v, 1)),
                }
            }
            terms.push((BigInt::one(), powers));
            ControlFlow::Continue(())
        });
        Ok(SparsePolynomial::from_terms(num_vars, terms)?)
    }
}

/// `s^alpha (s ((3^theta - 1) / 2)^2)^beta`.
pub fn monomials_per_tuple(spec: &LSProblemSpec, s: u64, theta: u32) -> u128 {
    let half = (3u128.pow(theta) - 1) / 2;
    let s = s as u128;
    s.saturating_pow(spec.alpha() as u32).saturating_mul((s * half * half).saturating_pow(spec.beta() as u32))
}

fn candidates(
    spec: &LSProblemSpec,
    range: u64,
    slots: &[Option<Vec<u64>>],
    prefix: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if prefix.len() == spec.arity() {
        return if spec.verifier().accepts(prefix) { visit(prefix) } else { ControlFlow::Continue(()) };
    }
    let codes: Box<dyn Iterator<Item = u64> + '_> = match &slots[prefix.len()] {
        Some(list) => Box::new(list.iter().copied()),
        None => Box::new(1..=range),
    };
    for code in codes {
        prefix.push(code);
        let flow = if spec.verifier().admits_prefix(prefix) {
            candidates(spec, range, slots, prefix, visit)
        } else {
            ControlFlow::Continue(())
        };
        prefix.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn split(v: u64, theta: u32, l: u32) -> Vec<u64> {
    let mask = (1u128 << l) - 1;
    (1..=theta).map(|q| ((v as u128 >> ((theta - q) * l)) & mask) as u64).collect()
}

fn factor(theta: u32, l: u32, row: usize, tuple: &[Comparison], blocks: &[u64]) -> Vec<usize> {
    tuple
        .iter()
        .zip(blocks)
        .enumerate()
        .map(|(q, (&c, &a))| variable_index(theta, l, c, row, q as u32 + 1, a))
        .collect()
}

/// Literal formulation polynomial of size `s`.
pub fn formulation_polynomial(
    spec: &LSProblemSpec,
    s: u64,
    theta: u32,
    cap: u128,
) -> Result<SparsePolynomial, LsError> {
    FormulationStream::new(spec, s, theta, cap)?.to_polynomial()
}
