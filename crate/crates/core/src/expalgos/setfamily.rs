use serde::{Deserialize, Serialize};

use super::matrix::full_mask;
use super::ExpError;

/// Largest supported universe.
pub const MAX_UNIVERSE: usize = 30;

/// Sequence of subsets of `[n]`; positions are identities, so repeated
/// sets count separately. Element `i` is bit `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    sets: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(n: usize, sets: Vec<u32>) -> Result<Self, ExpError> {
        if n > MAX_UNIVERSE {
            return Err(ExpError::TooLarge { what: "universe", size: n, cap: MAX_UNIVERSE });
        }
        if let Some(s) = sets.iter().find(|&&s| s & !full_mask(n) != 0) {
            return Err(ExpError::InvalidInput(format!("set {s:#b} is not inside [{n}]")));
        }
        Ok(SetFamily { n, sets })
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self, ExpError> {
        let mut sets = Vec::with_capacity(lists.len());
        for list in lists {
            let mut mask = 0u32;
            for &x in list {
                if x == 0 || x > n || x > MAX_UNIVERSE {
                    return Err(ExpError::InvalidInput(format!("element {x} outside [1, {n}]")));
                }
                mask |= 1 << (x - 1);
            }
            sets.push(mask);
        }
        SetFamily::new(n, sets)
    }

    pub fn from_json(json: &str) -> Result<Self, ExpError> {
        let raw: RawFamily = serde_json::from_str(json).map_err(|e| ExpError::InvalidInput(e.to_string()))?;
        SetFamily::from_lists(raw.n, &raw.sets)
    }

    pub fn to_json(&self) -> String {
        let sets = self.sets.iter().map(|&s| super::bits(s).map(|b| b + 1).collect()).collect();
        serde_json::to_string(&RawFamily { n: self.n, sets }).expect("plain data serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[u32] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn universe(&self) -> u32 {
        full_mask(self.n)
    }

    pub fn num_empty(&self) -> usize {
        self.sets.iter().filter(|&&s| s == 0).count()
    }
}
