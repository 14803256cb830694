use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LsError;

/// Local predicate over `alpha + beta` universe codes. The first `alpha`
/// codes are drawn from the instance set, the remaining `beta` from its
/// complement.
pub trait Verifier: Send + Sync {
    fn accepts(&self, codes: &[u64]) -> bool;

    /// Returns `false` only if no extension of `prefix` can be accepted.
    fn admits_prefix(&self, _prefix: &[u64]) -> bool {
        true
    }

    /// Sorted codes with every component at most `side` that slot `slot`
    /// can hold in an accepted tuple, or `None` to try every code.
    fn slot_codes(&self, _slot: usize, _side: u64) -> Option<Vec<u64>> {
        None
    }
}

/// Adapts a closure into a [`Verifier`] without prefix pruning.
pub struct FnVerifier<F>(pub F);

impl<F> Verifier for FnVerifier<F>
where
    F: Fn(&[u64]) -> bool + Send + Sync,
{
    fn accepts(&self, codes: &[u64]) -> bool {
        (self.0)(codes)
    }
}

#[derive(Clone)]
pub struct LSProblemSpec {
    name: String,
    alpha: usize,
    beta: usize,
    r: u32,
    verifier: Arc<dyn Verifier>,
}

impl fmt::Debug for LSProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LSProblemSpec")
            .field("name", &self.name)
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .field("r", &self.r)
            .finish_non_exhaustive()
    }
}

impl LSProblemSpec {
    pub fn new(
        name: impl Into<String>,
        alpha: usize,
        beta: usize,
        r: u32,
        verifier: Arc<dyn Verifier>,
    ) -> Result<Self, LsError> {
        if alpha == 0 {
            return Err(LsError::InvalidSpec("alpha must be positive".into()));
        }
        if r == 0 {
            return Err(LsError::InvalidSpec("r must be positive".into()));
        }
        Ok(LSProblemSpec { name: name.into(), alpha, beta, r, verifier })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn arity(&self) -> usize {
        self.alpha + self.beta
    }

    pub fn verifier(&self) -> &dyn Verifier {
        self.verifier.as_ref()
    }

    pub fn accepts(&self, codes: &[u64]) -> bool {
        codes.len() == self.arity() && self.verifier.accepts(codes)
    }

    /// Degree of every monomial of the block formulation.
    pub fn formulation_degree(&self, theta: u32) -> u64 {
        theta as u64 * (self.alpha + 2 * self.beta) as u64
    }
}

/// `n^r`, or `None` on overflow.
pub fn universe_size(n: u64, r: u32) -> Option<u64> {
    n.checked_pow(r)
}

/// An instance `(n, m, S)`: `S` is a strictly increasing list of `m`
/// codes from the universe `[1, n^r]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSInstance {
    n: u64,
    r: u32,
    elements: Vec<u64>,
}

impl LSInstance {
    pub fn new(n: u64, r: u32, elements: Vec<u64>) -> Result<Self, LsError> {
        if n == 0 {
            return Err(LsError::InvalidInstance("n must be positive".into()));
        }
        let universe =
            universe_size(n, r).ok_or_else(|| LsError::InvalidInstance(format!("universe {n}^{r} overflows")))?;
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(LsError::InvalidInstance(format!("elements not strictly increasing at {} >= {}", w[0], w[1])));
        }
        if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > universe) {
            return Err(LsError::InvalidInstance(format!("element {e} outside [1, {universe}]")));
        }
        Ok(LSInstance { n, r, elements })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> usize {
        self.elements.len()
    }

    /// Instance size `n + m`.
    pub fn size(&self) -> u64 {
        self.n + self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn universe(&self) -> u64 {
        universe_size(self.n, self.r).expect("checked at construction")
    }

    pub fn contains(&self, code: u64) -> bool {
        self.elements.binary_search(&code).is_ok()
    }
}
