use super::matrix::BinaryMatrix;
use super::{bits, ensure, ExpError};

pub const BRUTE_PERMANENT_CAP: usize = 10;
pub const BRUTE_MAPPING_CAP: usize = 6;
pub const DP_TARGET_CAP: usize = 20;

/// Coverage constraints on the right side: `eq1` covered exactly once,
/// `eq0` uncovered, `ge1` covered at least once.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FSpec {
    pub eq1: u32,
    pub eq0: u32,
    pub ge1: u32,
}

impl FSpec {
    pub fn new(eq1: u32, eq0: u32, ge1: u32) -> Result<Self, ExpError> {
        if eq1 & eq0 != 0 || eq1 & ge1 != 0 || eq0 & ge1 != 0 {
            return Err(ExpError::InvalidInput("coverage classes overlap".into()));
        }
        Ok(FSpec { eq1, eq0, ge1 })
    }

    fn admits(&self, cover: &[u8]) -> bool {
        cover.iter().enumerate().all(|(v, &c)| {
            let bit = 1u32 << v;
            (self.eq1 & bit == 0 || c == 1) && (self.eq0 & bit == 0 || c == 0) && (self.ge1 & bit == 0 || c >= 1)
        })
    }
}

/// Number of perfect matchings, by permutation enumeration.
pub fn permanent_brute(a: &BinaryMatrix) -> Result<u128, ExpError> {
    ensure("matrix dimension", a.n(), BRUTE_PERMANENT_CAP)?;
    fn go(a: &BinaryMatrix, u: usize, used: u32) -> u128 {
        if u == a.n() {
            return 1;
        }
        bits(a.row(u) & !used).map(|v| go(a, u + 1, used | 1 << v)).sum()
    }
    Ok(go(a, 0, 0))
}

/// Counts edge-respecting maps from left to right meeting `spec`, by
/// enumerating every map.
pub fn f_count_brute(a: &BinaryMatrix, spec: &FSpec) -> Result<u128, ExpError> {
    ensure("matrix dimension", a.n(), BRUTE_MAPPING_CAP)?;
    fn go(a: &BinaryMatrix, spec: &FSpec, u: usize, cover: &mut Vec<u8>) -> u128 {
        if u == a.n() {
            return spec.admits(cover) as u128;
        }
        let mut total = 0;
        for v in bits(a.row(u)) {
            cover[v] += 1;
            total += go(a, spec, u + 1, cover);
            cover[v] -= 1;
        }
        total
    }
    Ok(go(a, spec, 0, &mut vec![0; a.n()]))
}

/// Number of right vertices `⌈alpha n⌉` kept in the exactly-once class.
pub fn eq1_size(n: usize, alpha: f64) -> Result<usize, ExpError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(ExpError::InvalidInput(format!("alpha = {alpha} outside (0, 1]")));
    }
    Ok(((alpha * n as f64) - 1e-9).ceil().max(0.0) as usize)
}

/// Rewrites the perfect matching count `F(S1, {}, R \ S1)` as a signed
/// sum of `F(S1, S0, {})` terms, peeling the smallest at-least-once
/// vertex each step.
pub fn f_expand(a: &BinaryMatrix, eq1: u32, alpha: f64) -> Result<Vec<(i8, FSpec)>, ExpError> {
    let want = eq1_size(a.n(), alpha)?;
    if eq1 & !a.full() != 0 || eq1.count_ones() as usize != want {
        return Err(ExpError::PreconditionViolated(format!("exactly-once set must be {want} right vertices")));
    }
    let mut terms = vec![(1i8, FSpec { eq1, eq0: 0, ge1: a.full() & !eq1 })];
    while terms[0].1.ge1 != 0 {
        let v = 1u32 << terms[0].1.ge1.trailing_zeros();
        terms = terms
            .into_iter()
            .flat_map(|(sign, s)| {
                let ge1 = s.ge1 & !v;
                [(sign, FSpec { ge1, ..s }), (-sign, FSpec { eq0: s.eq0 | v, ge1, ..s })]
            })
            .collect();
    }
    Ok(terms)
}

/// Counts edge-respecting maps from the left vertices `k` (a bitmask) to
/// the right that cover `eq1` exactly once and avoid `eq0`; with `f` the
/// largest vertex of `k` must land in `eq1`.
pub fn g_count_dp(a: &BinaryMatrix, k: u32, eq1: u32, eq0: u32, f: bool) -> Result<u128, ExpError> {
    let targets: Vec<usize> = bits(eq1).collect();
    ensure("exactly-once set", targets.len(), DP_TARGET_CAP)?;
    if k == 0 {
        return Ok((!f && eq1 == 0) as u128);
    }
    let free_mask = a.full() & !eq1 & !eq0;
    let size = 1usize << targets.len();
    let local = |row: u32| -> u32 {
        targets.iter().enumerate().filter(|&(_, &v)| row >> v & 1 == 1).fold(0, |m, (i, _)| m | 1 << i)
    };
    let step = |dp: &[u128], row: u32, free: bool| -> Vec<u128> {
        let hits = local(row);
        let spare = if free { (row & free_mask).count_ones() as u128 } else { 0 };
        (0..size).map(|t| bits(t as u32 & hits).map(|i| dp[t & !(1 << i)]).sum::<u128>() + spare * dp[t]).collect()
    };
    let mut dp = vec![0u128; size];
    dp[0] = 1;
    let last = 31 - k.leading_zeros() as usize;
    for u in bits(k) {
        dp = step(&dp, a.row(u), !(f && u == last));
    }
    Ok(dp[size - 1])
}

/// Permanent as the signed sum of exactly-once counts, each computed by
/// the subset dynamic program over all left vertices.
pub fn permanent_fsets(a: &BinaryMatrix, alpha: f64) -> Result<u128, ExpError> {
    let eq1 = (1u32 << eq1_size(a.n(), alpha)?) - 1;
    let mut total: i128 = 0;
    for (sign, s) in f_expand(a, eq1, alpha)? {
        total += sign as i128 * g_count_dp(a, a.full(), s.eq1, s.eq0, false)? as i128;
    }
    u128::try_from(total).map_err(|_| ExpError::PreconditionViolated("negative signed sum".into()))
}
