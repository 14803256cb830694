//! Arithmetic circuits over the integers: evaluation (optionally modulo a
//! prime), Strassen-style homogenization, symbolic expansion and exact
//! monomial-by-monomial verification against a target polynomial.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{PolyError, SparsePolynomial};

pub type GateId = usize;

/// Default limit on the number of monomials any single gate may expand to.
pub const DEFAULT_MONOMIAL_CAP: usize = 1_000_000;

/// `homogenize(C, d)` has size at most `HOMOGENIZATION_SIZE_FACTOR * d^2 * size(C)`.
///
/// An Add gate becomes `d + 1` Add gates, a Mul gate at most `(d + 1)^2`
/// binary gates, and the output sum adds `d` more: `(d + 1)^2 <= 4 d^2`, and
/// the output sum is paid for by `d^2` whenever the circuit has a binary gate.
pub const HOMOGENIZATION_SIZE_FACTOR: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate {gate} references gate {operand}, which does not precede it")]
    ForwardReference { gate: GateId, operand: GateId },
    #[error("gate {gate} reads input {index} but the circuit has {num_inputs} inputs")]
    InputOutOfRange { gate: GateId, index: usize, num_inputs: usize },
    #[error("output gate {output} does not exist ({len} gates)")]
    BadOutput { output: GateId, len: usize },
    #[error("arity mismatch: expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("gate {gate} expanded to {monomials} monomials, above the cap of {cap}")]
    CapExceeded { gate: GateId, monomials: usize, cap: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Gate {
    Input {
        i: usize,
    },
    Const {
        #[serde(with = "decimal")]
        v: BigInt,
    },
    Add {
        l: GateId,
        r: GateId,
    },
    Mul {
        l: GateId,
        r: GateId,
    },
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(|_| de::Error::custom(format!("invalid decimal {s:?}")))
    }
}

/// A single-output arithmetic circuit whose gates are stored in topological
/// order: every operand id is smaller than the id of the gate using it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit", into = "RawCircuit")]
pub struct ArithmeticCircuit {
    num_inputs: usize,
    gates: Vec<Gate>,
    output: GateId,
}

#[derive(Serialize, Deserialize)]
struct RawCircuit {
    num_inputs: usize,
    gates: Vec<Gate>,
    output: GateId,
}

impl TryFrom<RawCircuit> for ArithmeticCircuit {
    type Error = CircuitError;

    fn try_from(raw: RawCircuit) -> Result<Self, CircuitError> {
        ArithmeticCircuit::new(raw.num_inputs, raw.gates, raw.output)
    }
}

impl From<ArithmeticCircuit> for RawCircuit {
    fn from(c: ArithmeticCircuit) -> Self {
        RawCircuit { num_inputs: c.num_inputs, gates: c.gates, output: c.output }
    }
}

/// Outcome of [`ArithmeticCircuit::verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// The expansion succeeded but differs from the target.
    Mismatch,
    /// Circuit and target disagree on the number of variables.
    ArityMismatch,
    /// Some gate of the homogenized circuit exceeded the monomial cap.
    CapExceeded,
}

impl Verdict {
    pub fn is_accepted(self) -> bool {
        self == Verdict::Accepted
    }

    pub fn reason(self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Mismatch => "mismatch",
            Verdict::ArityMismatch => "arity-mismatch",
            Verdict::CapExceeded => "cap-exceeded",
        }
    }
}

impl ArithmeticCircuit {
    pub fn new(num_inputs: usize, gates: Vec<Gate>, output: GateId) -> Result<Self, CircuitError> {
        for (id, g) in gates.iter().enumerate() {
            match *g {
                Gate::Input { i } if i >= num_inputs => {
                    return Err(CircuitError::InputOutOfRange { gate: id, index: i, num_inputs });
                }
                Gate::Add { l, r } | Gate::Mul { l, r } => {
                    for operand in [l, r] {
                        if operand >= id {
                            return Err(CircuitError::ForwardReference { gate: id, operand });
                        }
                    }
                }
                _ => {}
            }
        }
        if output >= gates.len() {
            return Err(CircuitError::BadOutput { output, len: gates.len() });
        }
        Ok(ArithmeticCircuit { num_inputs, gates, output })
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Number of edges, two per binary gate.
    pub fn size(&self) -> usize {
        2 * self.gates.iter().filter(|g| matches!(g, Gate::Add { .. } | Gate::Mul { .. })).count()
    }

    /// Gate-by-gate evaluation. With a modulus every gate value is reduced
    /// into `[0, p)`.
    pub fn evaluate(&self, x: &[BigInt], modulus: Option<&BigUint>) -> Result<BigInt, CircuitError> {
        if x.len() != self.num_inputs {
            return Err(CircuitError::ArityMismatch { expected: self.num_inputs, got: x.len() });
        }
        let p = match modulus {
            Some(p) if p.is_zero() => return Err(CircuitError::ZeroModulus),
            Some(p) => Some(BigInt::from(p.clone())),
            None => None,
        };
        let reduce = |v: BigInt| match &p {
            Some(p) => v.mod_floor(p),
            None => v,
        };
        let mut values: Vec<BigInt> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Input { i } => reduce(x[*i].clone()),
                Gate::Const { v } => reduce(v.clone()),
                Gate::Add { l, r } => reduce(&values[*l] + &values[*r]),
                Gate::Mul { l, r } => reduce(&values[*l] * &values[*r]),
            };
            values.push(v);
        }
        Ok(values.swap_remove(self.output))
    }

    /// Splits every gate into its homogeneous components of degree
    /// `0..=delta`, truncating products above `delta`, and sums the output
    /// components. Components that are structurally zero get no gate.
    ///
    /// The result computes the same polynomial as `self` whenever that
    /// polynomial has degree at most `delta`.
    pub fn homogenize(&self, delta: u32) -> ArithmeticCircuit {
        let d = delta as usize;
        let mut b = CircuitBuilder::new(self.num_inputs);
        let mut comps: Vec<Vec<Option<GateId>>> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let mut c = vec![None; d + 1];
            match g {
                Gate::Input { i } => {
                    if d >= 1 {
                        c[1] = Some(b.input(*i));
                    }
                }
                Gate::Const { v } => {
                    if !v.is_zero() {
                        c[0] = Some(b.constant(v.clone()));
                    }
                }
                Gate::Add { l, r } => {
                    for k in 0..=d {
                        c[k] = b.add_opt(comps[*l][k], comps[*r][k]);
                    }
                }
                Gate::Mul { l, r } => {
                    for k in 0..=d {
                        let mut acc = None;
                        for i in 0..=k {
                            if let (Some(a), Some(bb)) = (comps[*l][i], comps[*r][k - i]) {
                                let prod = b.mul(a, bb);
                                acc = b.add_opt(acc, Some(prod));
                            }
                        }
                        c[k] = acc;
                    }
                }
            }
            comps.push(c);
        }
        let out = comps[self.output].iter().fold(None, |acc, &c| b.add_opt(acc, c));
        let out = out.unwrap_or_else(|| b.constant(BigInt::zero()));
        b.build(out).expect("homogenized gates reference earlier gates only")
    }

    /// Expands every gate reachable from the output into a canonical
    /// polynomial, in topological order.
    pub fn expand(&self, monomial_cap: usize) -> Result<SparsePolynomial, CircuitError> {
        let n = self.num_inputs;
        let needed = self.reachable();
        let mut polys: Vec<Option<SparsePolynomial>> = vec![None; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            if !needed[id] {
                continue;
            }
            let p = match g {
                Gate::Input { i } => SparsePolynomial::variable(n, *i)?,
                Gate::Const { v } => SparsePolynomial::constant(n, v.clone()),
                Gate::Add { l, r } => operand(&polys, *l).add(operand(&polys, *r))?,
                Gate::Mul { l, r } => operand(&polys, *l).multiply(operand(&polys, *r))?,
            };
            if p.num_terms() > monomial_cap {
                return Err(CircuitError::CapExceeded { gate: id, monomials: p.num_terms(), cap: monomial_cap });
            }
            polys[id] = Some(p);
        }
        Ok(polys.swap_remove(self.output).expect("output gate is reachable"))
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.gates.len()];
        seen[self.output] = true;
        for id in (0..self.gates.len()).rev() {
            if !seen[id] {
                continue;
            }
            if let Gate::Add { l, r } | Gate::Mul { l, r } = self.gates[id] {
                seen[l] = true;
                seen[r] = true;
            }
        }
        seen
    }

    /// Homogenizes to degree `delta`, expands, and compares the result with
    /// `target` as polynomials.
    pub fn verify(&self, target: &SparsePolynomial, delta: u32, monomial_cap: usize) -> Verdict {
        self.verify_with(target, delta, monomial_cap, |p| p.clone(), target.clone())
    }

    /// Like [`verify`](Self::verify) but compares coefficients modulo `p`.
    pub fn verify_mod(&self, target: &SparsePolynomial, delta: u32, monomial_cap: usize, p: &BigUint) -> Verdict {
        self.verify_with(target, delta, monomial_cap, |q| q.reduce_mod(p), target.reduce_mod(p))
    }

    fn verify_with(
        &self,
        target: &SparsePolynomial,
        delta: u32,
        monomial_cap: usize,
        normalize: impl Fn(&SparsePolynomial) -> SparsePolynomial,
        want: SparsePolynomial,
    ) -> Verdict {
        if target.num_vars() != self.num_inputs {
            return Verdict::ArityMismatch;
        }
        match self.homogenize(delta).expand(monomial_cap) {
            Ok(got) if normalize(&got) == want => Verdict::Accepted,
            Ok(_) => Verdict::Mismatch,
            Err(CircuitError::CapExceeded { .. }) => Verdict::CapExceeded,
            Err(_) => Verdict::Mismatch,
        }
    }

    /// Builds a circuit computing `p` by nested Horner evaluation: the
    /// polynomial is split on its lowest variable, `p = sum_e x^e * p_e`,
    /// and each `p_e` is built recursively on the remaining variables.
    pub fn from_polynomial(p: &SparsePolynomial) -> ArithmeticCircuit {
        let mut b = CircuitBuilder::new(p.num_vars());
        let terms: Vec<Term> = p.terms().iter().map(|t| (t.coeff().clone(), t.powers().to_vec())).collect();
        let out = horner(&mut b, &terms).unwrap_or_else(|| b.constant(BigInt::zero()));
        b.build(out).expect("builder emits topologically ordered gates")
    }
}

fn operand(polys: &[Option<SparsePolynomial>], id: GateId) -> &SparsePolynomial {
    polys[id].as_ref().expect("operands of a reachable gate are reachable")
}

/// A coefficient with its variable powers.
type Term = (BigInt, Vec<(usize, u32)>);

fn horner(b: &mut CircuitBuilder, terms: &[Term]) -> Option<GateId> {
    if terms.is_empty() {
        return None;
    }
    let Some(var) = terms.iter().filter_map(|(_, p)| p.first().map(|&(v, _)| v)).min() else {
        let c: BigInt = terms.iter().map(|(c, _)| c).sum();
        return (!c.is_zero()).then(|| b.constant(c));
    };
    let mut groups: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
    for (c, powers) in terms {
        let (e, rest) = match powers.first() {
            Some(&(v, e)) if v == var => (e, powers[1..].to_vec()),
            _ => (0, powers.clone()),
        };
        groups.entry(e).or_default().push((c.clone(), rest));
    }
    let top = *groups.keys().next_back().expect("nonempty");
    let x = b.input(var);
    let mut acc = horner(b, &groups[&top]);
    for e in (0..top).rev() {
        acc = acc.map(|a| b.mul(a, x));
        if let Some(g) = groups.get(&e) {
            let part = horner(b, g);
            acc = b.add_opt(acc, part);
        }
    }
    acc
}

/// Incremental circuit construction; gates are appended in order, so any
/// id returned by the builder can be used as an operand later.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    num_inputs: usize,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(num_inputs: usize) -> Self {
        CircuitBuilder { num_inputs, gates: Vec::new() }
    }

    fn push(&mut self, g: Gate) -> GateId {
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn input(&mut self, i: usize) -> GateId {
        self.push(Gate::Input { i })
    }

    pub fn constant(&mut self, v: impl Into<BigInt>) -> GateId {
        self.push(Gate::Const { v: v.into() })
    }

    pub fn add(&mut self, l: GateId, r: GateId) -> GateId {
        self.push(Gate::Add { l, r })
    }

    pub fn mul(&mut self, l: GateId, r: GateId) -> GateId {
        self.push(Gate::Mul { l, r })
    }

    /// `a - b`, as `a + (-1) * b`.
    pub fn sub(&mut self, l: GateId, r: GateId) -> GateId {
        let minus_one = self.constant(-BigInt::one());
        let neg = self.mul(minus_one, r);
        self.add(l, neg)
    }

    fn add_opt(&mut self, l: Option<GateId>, r: Option<GateId>) -> Option<GateId> {
        match (l, r) {
            (Some(l), Some(r)) => Some(self.add(l, r)),
            (l, None) => l,
            (None, r) => r,
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn build(self, output: GateId) -> Result<ArithmeticCircuit, CircuitError> {
        ArithmeticCircuit::new(self.num_inputs, self.gates, output)
    }
}
