use std::str::FromStr;

use super::matrix::full_mask;
use super::setfamily::SetFamily;
use super::setpartition::setpartition_counts;
use super::{ensure, ExpError};

pub const EXPAND_BITS_CAP: usize = 20;
pub const BRANCH_DEPTH_CAP: usize = 20;
pub const HCV_BRUTE_CAP: usize = 18;
pub const COVER_BRUTE_CAP: usize = 24;
pub const EXPANDED_FAMILY_CAP: usize = 1 << 16;

/// Replaces each set `S` by every `S \ T` with `T ⊆ S ∩ [m]`, in order of
/// the original sets.
pub fn hcv_expand_setcover(f: &SetFamily, m: usize) -> Result<SetFamily, ExpError> {
    if m > f.n() {
        return Err(ExpError::InvalidInput(format!("m = {m} exceeds n = {}", f.n())));
    }
    let head = full_mask(m);
    let mut out = Vec::new();
    for &s in f.sets() {
        let part = s & head;
        ensure("set overlap with [m]", part.count_ones() as usize, EXPAND_BITS_CAP)?;
        let mut t = 0u32;
        loop {
            out.push(s & !t);
            ensure("expanded family", out.len(), EXPANDED_FAMILY_CAP)?;
            if t == part {
                break;
            }
            t = (t.wrapping_sub(part)) & part;
        }
    }
    SetFamily::new(f.n(), out)
}

/// Number of `k`-element index subsets whose union is `[n]` and which
/// cover every element of `[m]` exactly once.
pub fn hcv_brute(f: &SetFamily, n: usize, m: usize, k: usize) -> Result<u128, ExpError> {
    ensure("family size", f.len(), HCV_BRUTE_CAP)?;
    if m > n || n > f.n() {
        return Err(ExpError::InvalidInput(format!("need m <= n <= {}", f.n())));
    }
    let (full, head) = (full_mask(n), full_mask(m));
    let mut count = 0;
    for pick in 0u32..1 << f.len() {
        if pick.count_ones() as usize != k {
            continue;
        }
        let mut union = 0u32;
        let mut twice = 0u32;
        for i in super::bits(pick) {
            let s = f.sets()[i];
            twice |= union & s;
            union |= s;
        }
        count += (union & full == full && twice & head == 0) as u128;
    }
    Ok(count)
}

/// Eliminates elements `n, n-1, ..., m+1`: the family with the element
/// removed from every set keeps its sign, the subfamily avoiding it
/// flips sign. Every term is a family over `[m]`.
pub fn hcv_branch(f: &SetFamily, n: usize, m: usize) -> Result<Vec<(i8, SetFamily)>, ExpError> {
    if m > n || n > f.n() {
        return Err(ExpError::InvalidInput(format!("need m <= n <= {}", f.n())));
    }
    ensure("branching depth", n - m, BRANCH_DEPTH_CAP)?;
    let mut terms = vec![(1i8, f.sets().to_vec())];
    for x in (m..n).rev() {
        let bit = 1u32 << x;
        terms = terms
            .into_iter()
            .flat_map(|(sign, sets)| {
                let dropped = sets.iter().map(|s| s & !bit).collect();
                let avoiding = sets.iter().copied().filter(|s| s & bit == 0).collect();
                [(sign, dropped), (-sign, avoiding)]
            })
            .collect();
    }
    terms
        .into_iter()
        .map(|(sign, sets)| {
            let sets = sets.into_iter().map(|s| s & full_mask(m)).collect();
            Ok((sign, SetFamily::new(m, sets)?))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMethod {
    Brute,
    Reduction,
}

impl FromStr for CoverMethod {
    type Err = ExpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(CoverMethod::Brute),
            "reduction" => Ok(CoverMethod::Reduction),
            _ => Err(ExpError::InvalidInput(format!("unknown method {s:?}"))),
        }
    }
}

/// Largest `m` such that every set meets `[m]` in at most `m / (2 theta)`
/// elements.
pub fn reduction_split(f: &SetFamily, theta: usize) -> usize {
    (0..=f.n())
        .rev()
        .find(|&m| f.sets().iter().all(|s| (s & full_mask(m)).count_ones() as usize <= m / (2 * theta)))
        .unwrap_or(0)
}

fn cover_brute(f: &SetFamily) -> Result<Option<usize>, ExpError> {
    ensure("family size", f.len(), COVER_BRUTE_CAP)?;
    let full = f.universe();
    let mut best: Option<usize> = None;
    for pick in 0u32..1 << f.len() {
        let size = pick.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let union = super::bits(pick).fold(0, |u, i| u | f.sets()[i]);
        if union == full {
            best = Some(size);
        }
    }
    Ok(best)
}

fn cover_reduction(f: &SetFamily, theta: usize) -> Result<Option<usize>, ExpError> {
    let (n, m) = (f.n(), reduction_split(f, theta));
    let expanded = hcv_expand_setcover(f, m)?;
    let mut signed = vec![0i128; f.len() + 1];
    for (sign, term) in hcv_branch(&expanded, n, m)? {
        let counts = setpartition_counts(&term, theta)?;
        for (k, slot) in signed.iter_mut().enumerate() {
            *slot += sign as i128 * counts.get(k).copied().unwrap_or(0) as i128;
        }
    }
    if signed.iter().any(|&c| c < 0) {
        return Err(ExpError::PreconditionViolated("negative signed count".into()));
    }
    Ok(signed.iter().position(|&c| c > 0))
}

/// Fewest sets covering `[n]`, or `None` when the family does not cover.
pub fn setcover_min(f: &SetFamily, method: CoverMethod) -> Result<Option<usize>, ExpError> {
    match method {
        CoverMethod::Brute => cover_brute(f),
        CoverMethod::Reduction => cover_reduction(f, 1),
    }
}

/// As [`setcover_min`] through the reduction, with an explicit block
/// parameter for the partition counts.
pub fn setcover_min_reduction(f: &SetFamily, theta: usize) -> Result<Option<usize>, ExpError> {
    cover_reduction(f, theta)
}
