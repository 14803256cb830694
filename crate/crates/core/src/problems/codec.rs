//! Shell enumeration of `d`-tuples of positive integers.
//!
//! Tuples are ordered by their maximum component, then lexicographically.
//! The code of a tuple does not depend on any size parameter, and a tuple
//! has code at most `N^d` exactly when all its components are at most `N`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniverseCodec {
    r: u32,
}

impl UniverseCodec {
    pub fn new(r: u32) -> Self {
        assert!(r >= 1, "tuple length must be positive");
        UniverseCodec { r }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Code of `tuple`, or `None` if its length is wrong, a component is
    /// zero, or the code overflows.
    pub fn encode(&self, tuple: &[u64]) -> Option<u64> {
        if tuple.len() != self.r as usize || tuple.contains(&0) {
            return None;
        }
        let d = self.r;
        let n = *tuple.iter().max()? as u128;
        let mut rank: u128 = 0;
        let mut seen_max = false;
        for (p, &t) in tuple.iter().enumerate() {
            let rem = d - p as u32 - 1;
            for v in 1..t as u128 {
                rank += completions(n, rem, seen_max || v == n);
            }
            seen_max |= t as u128 == n;
        }
        u64::try_from((n - 1).checked_pow(d)? + rank + 1).ok()
    }

    /// Sorted, deduplicated codes of `tuples`, skipping invalid ones.
    pub fn encode_all(&self, tuples: impl IntoIterator<Item = Vec<u64>>) -> Vec<u64> {
        let mut out: Vec<u64> = tuples.into_iter().filter_map(|t| self.encode(&t)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn decode(&self, code: u64) -> Option<Vec<u64>> {
        if code == 0 {
            return None;
        }
        let d = self.r;
        let code = code as u128;
        let mut n = (code as f64).powf(1.0 / d as f64).ceil().max(1.0) as u128;
        while n.pow(d) < code {
            n += 1;
        }
        while n > 1 && (n - 1).pow(d) >= code {
            n -= 1;
        }
        let mut rank = code - 1 - (n - 1).pow(d);
        let mut out = Vec::with_capacity(d as usize);
        let mut seen_max = false;
        for p in 0..d {
            let rem = d - p - 1;
            let mut v = 1u128;
            loop {
                let c = completions(n, rem, seen_max || v == n);
                if rank < c {
                    break;
                }
                rank -= c;
                v += 1;
            }
            seen_max |= v == n;
            out.push(v as u64);
        }
        Some(out)
    }
}

/// Number of ways to fill `rem` positions from `[1, n]` so that the whole
/// tuple has maximum `n`, given whether `n` already occurred.
fn completions(n: u128, rem: u32, has_max: bool) -> u128 {
    if has_max {
        n.pow(rem)
    } else {
        n.pow(rem) - (n - 1).pow(rem)
    }
}
