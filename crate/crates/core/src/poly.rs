//! Canonical sparse multivariate polynomials over the integers, with
//! evaluation over `Z` and `Z_p`, ring arithmetic and the explicit-family
//! value bound.
//!
//! A [`SparsePolynomial`] keeps its monomials sorted in graded
//! lexicographic order with no repeated power products and no zero
//! coefficients, so two polynomials are equal exactly when their term lists
//! are equal. The zero polynomial is the empty term list.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prime;

/// Errors raised by polynomial construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("modulus {0} is not prime")]
    NotPrime(BigUint),
    #[error("modulus {0} is outside the range of the deterministic primality test")]
    ModulusTooLarge(BigUint),
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("invalid coefficient literal {0:?}")]
    InvalidCoefficient(String),
}

/// A product of variable powers, `(variable, exponent)` pairs with strictly
/// increasing variables and positive exponents.
///
/// Ordered graded-lexicographically: first by total degree, then by the dense
/// exponent vector read from variable 0 upwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PowerProduct(Vec<(usize, u32)>);

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct(Vec::new())
    }

    /// Normalizes an arbitrary list of powers: sorts by variable, merges
    /// repeated variables and drops zero exponents.
    pub fn from_powers(mut powers: Vec<(usize, u32)>) -> Self {
        powers.sort_unstable_by_key(|&(v, _)| v);
        let mut out: Vec<(usize, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        PowerProduct(out)
    }

    pub fn powers(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &PowerProduct) -> PowerProduct {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PowerProduct(out)
    }
}

impl Ord for PowerProduct {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.0.iter().zip(other.0.iter()) {
                if va != vb {
                    // the side with the smaller variable has a positive
                    // exponent where the other has zero
                    return if va < vb { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for PowerProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single nonzero term `coeff * prod x_i^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: BigInt,
    powers: PowerProduct,
}

impl Monomial {
    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    pub fn powers(&self) -> &[(usize, u32)] {
        self.powers.powers()
    }

    pub fn power_product(&self) -> &PowerProduct {
        &self.powers
    }

    pub fn degree(&self) -> u64 {
        self.powers.degree()
    }
}

/// Degree and coefficient-growth parameters of an explicit polynomial family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitFamilyParams {
    pub delta: u32,
    pub coeff_scale: u64,
}

impl ExplicitFamilyParams {
    pub fn new(delta: u32, coeff_scale: u64) -> Option<Self> {
        (delta >= 1 && coeff_scale >= 1).then_some(ExplicitFamilyParams { delta, coeff_scale })
    }
}

/// Canonical sparse multivariate polynomial with arbitrary-precision
/// integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct SparsePolynomial {
    num_vars: usize,
    terms: Vec<Monomial>,
}

impl SparsePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        SparsePolynomial { num_vars, terms: Vec::new() }
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.push(Monomial { coeff: c, powers: PowerProduct::one() });
        }
        p
    }

    /// The polynomial `x_var`.
    pub fn variable(num_vars: usize, var: usize) -> Result<Self, PolyError> {
        Self::from_terms(num_vars, [(BigInt::one(), vec![(var, 1)])])
    }

    /// Builds a canonical polynomial from arbitrary `(coefficient, powers)`
    /// terms, merging like terms and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (BigInt, Vec<(usize, u32)>)>,
    {
        let mut acc: BTreeMap<PowerProduct, BigInt> = BTreeMap::new();
        for (c, powers) in terms {
            let pp = PowerProduct::from_powers(powers);
            if let Some(v) = pp.max_var() {
                if v >= num_vars {
                    return Err(PolyError::VariableOutOfRange { index: v, num_vars });
                }
            }
            *acc.entry(pp).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_map(num_vars, acc))
    }

    fn from_map(num_vars: usize, acc: BTreeMap<PowerProduct, BigInt>) -> Self {
        let terms =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(powers, coeff)| Monomial { coeff, powers }).collect();
        SparsePolynomial { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0 by convention.
    pub fn total_degree(&self) -> u64 {
        // graded order puts the highest degree last
        self.terms.last().map_or(0, Monomial::degree)
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars {
            return Err(PolyError::ArityMismatch { expected: self.num_vars, got: other.num_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        // both term lists are sorted, so a merge keeps the result canonical
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].powers.cmp(&b[j].powers) {
                Ordering::Less => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &a[i].coeff + &b[j].coeff;
                    if !coeff.is_zero() {
                        terms.push(Monomial { coeff, powers: a[i].powers.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        terms.extend_from_slice(&b[j..]);
        Ok(SparsePolynomial { num_vars: self.num_vars, terms })
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|t| Monomial { coeff: -&t.coeff, powers: t.powers.clone() }).collect();
        SparsePolynomial { num_vars: self.num_vars, terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut acc: BTreeMap<PowerProduct, BigInt> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                *acc.entry(a.powers.mul(&b.powers)).or_insert_with(BigInt::zero) += &a.coeff * &b.coeff;
            }
        }
        Ok(Self::from_map(self.num_vars, acc))
    }

    /// Keeps only the terms of the given total degree.
    pub fn homogeneous_part(&self, degree: u64) -> Self {
        let terms = self.terms.iter().filter(|t| t.degree() == degree).cloned().collect();
        SparsePolynomial { num_vars: self.num_vars, terms }
    }

    /// Reduces every coefficient into `[0, p)`, dropping terms that vanish.
    pub fn reduce_mod(&self, p: &BigUint) -> Self {
        let p = BigInt::from(p.clone());
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let c = t.coeff.mod_floor(&p);
                (!c.is_zero()).then(|| Monomial { coeff: c, powers: t.powers.clone() })
            })
            .collect();
        SparsePolynomial { num_vars: self.num_vars, terms }
    }

    fn check_point<T>(&self, x: &[T]) -> Result<(), PolyError> {
        if x.len() != self.num_vars {
            return Err(PolyError::ArityMismatch { expected: self.num_vars, got: x.len() });
        }
        Ok(())
    }

    /// Exact evaluation over the integers.
    pub fn eval(&self, x: &[BigInt]) -> Result<BigInt, PolyError> {
        self.check_point(x)?;
        let mut total = BigInt::zero();
        for t in &self.terms {
            let mut prod = t.coeff.clone();
            for &(v, e) in t.powers() {
                if x[v].is_zero() {
                    prod.set_zero();
                    break;
                }
                prod *= Pow::pow(&x[v], e);
            }
            total += prod;
        }
        Ok(total)
    }

    /// Evaluation modulo a prime `p`; the result lies in `[0, p)`.
    pub fn eval_mod(&self, x: &[BigInt], p: &BigUint) -> Result<BigUint, PolyError> {
        self.check_point(x)?;
        match prime::is_prime(p) {
            Ok(true) => {}
            Ok(false) => return Err(PolyError::NotPrime(p.clone())),
            Err(_) => return Err(PolyError::ModulusTooLarge(p.clone())),
        }
        let pi = BigInt::from(p.clone());
        let xs: Vec<BigUint> = x.iter().map(|v| to_residue(v, &pi)).collect();
        let mut total = BigUint::zero();
        for t in &self.terms {
            let mut prod = to_residue(&t.coeff, &pi);
            for &(v, e) in t.powers() {
                prod = prod * xs[v].modpow(&BigUint::from(e), p) % p;
            }
            total = (total + prod) % p;
        }
        Ok(total)
    }

    /// Returns `M = 1 + sum |c| * rho^deg` over all terms, so that
    /// `|P(x)| < M` whenever every `|x_i| <= rho`.
    pub fn value_bound(&self, rho: &BigUint) -> BigUint {
        let mut m = BigUint::one();
        for t in &self.terms {
            m += t.coeff.magnitude() * Pow::pow(rho, t.degree());
        }
        m
    }

    /// True iff the degree is at most `delta` and every coefficient is
    /// bounded by `coeff_scale * n^delta`.
    pub fn check_explicit(&self, params: &ExplicitFamilyParams, n: u64) -> bool {
        if self.total_degree() > u64::from(params.delta) {
            return false;
        }
        let limit = BigUint::from(params.coeff_scale) * Pow::pow(BigUint::from(n), params.delta);
        self.terms.iter().all(|t| t.coeff.magnitude() <= &limit)
    }

    pub fn max_coeff_magnitude(&self) -> BigUint {
        self.terms.iter().map(|t| t.coeff.magnitude().clone()).max().unwrap_or_default()
    }
}

fn to_residue(v: &BigInt, p: &BigInt) -> BigUint {
    v.mod_floor(p).to_biguint().expect("mod_floor of a positive modulus is nonnegative")
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.sign() == Sign::Minus;
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag = t.coeff.abs();
            let show_coeff = !mag.is_one() || t.powers.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            for (j, &(v, e)) in t.powers().iter().enumerate() {
                if show_coeff || j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "x{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    coeff: String,
    powers: Vec<(usize, u32)>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    num_vars: usize,
    monomials: Vec<MonomialJson>,
}

impl TryFrom<PolyJson> for SparsePolynomial {
    type Error = PolyError;

    fn try_from(raw: PolyJson) -> Result<Self, PolyError> {
        let mut terms = Vec::with_capacity(raw.monomials.len());
        for m in raw.monomials {
            let c: BigInt = m.coeff.trim().parse().map_err(|_| PolyError::InvalidCoefficient(m.coeff.clone()))?;
            terms.push((c, m.powers));
        }
        SparsePolynomial::from_terms(raw.num_vars, terms)
    }
}

impl From<SparsePolynomial> for PolyJson {
    fn from(p: SparsePolynomial) -> Self {
        PolyJson {
            num_vars: p.num_vars,
            monomials: p
                .terms
                .into_iter()
                .map(|t| MonomialJson { coeff: t.coeff.to_string(), powers: t.powers.0 })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn poly(num_vars: usize, terms: &[(i64, &[(usize, u32)])]) -> SparsePolynomial {
        SparsePolynomial::from_terms(num_vars, terms.iter().map(|(c, p)| (big(*c), p.to_vec()))).unwrap()
    }

    #[test]
    fn constant_evaluates_to_itself() {
        let p = SparsePolynomial::constant(2, 3);
        assert_eq!(p.eval(&[big(0), big(0)]).unwrap(), big(3));
    }

    #[test]
    fn identity_evaluation() {
        let p = poly(3, &[(1, &[(0, 1), (1, 1)]), (1, &[(2, 1)])]);
        assert_eq!(p.eval(&[big(1), big(1), big(0)]).unwrap(), big(1));
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let p = poly(2, &[(1, &[(0, 1)])]);
        assert_eq!(p.eval(&[big(1)]), Err(PolyError::ArityMismatch { expected: 2, got: 1 }));
        let q = poly(3, &[(1, &[(0, 1)])]);
        assert!(p.add(&q).is_err());
    }

    #[test]
    fn eval_mod_examples() {
        let p = poly(2, &[(1, &[(0, 1)]), (1, &[(1, 1)])]);
        assert_eq!(p.eval_mod(&[big(2), big(3)], &BigUint::from(5u32)).unwrap(), BigUint::zero());
        let sq = poly(1, &[(1, &[(0, 2)])]);
        assert_eq!(sq.eval_mod(&[big(-3)], &BigUint::from(7u32)).unwrap(), BigUint::from(2u32));
        assert_eq!(sq.eval_mod(&[big(1)], &BigUint::from(9u32)), Err(PolyError::NotPrime(BigUint::from(9u32))));
    }

    #[test]
    fn value_bound_examples() {
        assert_eq!(SparsePolynomial::zero(1).value_bound(&BigUint::from(10u32)), BigUint::one());
        let p = poly(2, &[(2, &[(0, 1), (1, 1)])]);
        assert_eq!(p.value_bound(&BigUint::from(3u32)), BigUint::from(19u32));
    }

    #[test]
    fn cancellation_and_difference_of_squares() {
        let x = poly(1, &[(1, &[(0, 1)])]);
        assert!(x.add(&x.neg()).unwrap().is_zero());
        let a = poly(1, &[(1, &[(0, 1)]), (1, &[])]);
        let b = poly(1, &[(1, &[(0, 1)]), (-1, &[])]);
        assert_eq!(a.multiply(&b).unwrap(), poly(1, &[(1, &[(0, 2)]), (-1, &[])]));
    }

    #[test]
    fn zero_polynomial_degree_is_zero() {
        assert_eq!(SparsePolynomial::zero(4).total_degree(), 0);
    }

    #[test]
    fn check_explicit_examples() {
        let params = ExplicitFamilyParams::new(2, 1).unwrap();
        assert!(poly(2, &[(1, &[(0, 1), (1, 1)])]).check_explicit(&params, 2));
        assert!(!poly(2, &[(1, &[(0, 3)])]).check_explicit(&params, 2));
        // coefficient 5 > 1 * 2^2
        assert!(!poly(2, &[(5, &[(0, 1)])]).check_explicit(&params, 2));
        assert!(ExplicitFamilyParams::new(0, 1).is_none());
    }

    #[test]
    fn graded_lex_order_is_canonical() {
        let p = poly(2, &[(1, &[(1, 2)]), (1, &[(0, 1)]), (1, &[(0, 2)]), (4, &[]), (1, &[(0, 1), (1, 1)])]);
        let degrees: Vec<u64> = p.terms().iter().map(Monomial::degree).collect();
        assert_eq!(degrees, vec![0, 1, 2, 2, 2]);
        // within degree 2: x1^2 < x0*x1 < x0^2
        let pows: Vec<&[(usize, u32)]> = p.terms()[2..].iter().map(Monomial::powers).collect();
        assert_eq!(pows, vec![&[(1, 2)][..], &[(0, 1), (1, 1)][..], &[(0, 2)][..]]);
    }

    #[test]
    fn out_of_range_variable_rejected() {
        let err = SparsePolynomial::from_terms(2, [(big(1), vec![(2, 1)])]).unwrap_err();
        assert_eq!(err, PolyError::VariableOutOfRange { index: 2, num_vars: 2 });
    }

    #[test]
    fn json_format_uses_decimal_strings() {
        let p = poly(2, &[(-7, &[(0, 1), (1, 2)]), (3, &[])]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"num_vars":2,"monomials":[{"coeff":"3","powers":[]},{"coeff":"-7","powers":[[0,1],[1,2]]}]}"#
        );
        let back: SparsePolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let huge = r#"{"num_vars":1,"monomials":[{"coeff":"123456789012345678901234567890","powers":[[0,1]]}]}"#;
        let q: SparsePolynomial = serde_json::from_str(huge).unwrap();
        assert_eq!(q.terms()[0].coeff().to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<SparsePolynomial>(
            r#"{"num_vars":1,"monomials":[{"coeff":"abc","powers":[]}]}"#
        )
        .is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = poly(2, &[(-1, &[]), (1, &[(0, 2)]), (2, &[(0, 1), (1, 1)])]);
        assert_eq!(p.to_string(), "-1 + 2*x0*x1 + x0^2");
    }
}
