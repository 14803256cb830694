use std::sync::Arc;

use super::codec::UniverseCodec;
use super::input::{magnitude_bound, KSumInput};
use super::{shifted, Encoded, ProblemError};
use crate::ls::{LSInstance, LSProblemSpec, Verifier};

/// Codes are `(set index, value + W + 1)`. A witness takes one element
/// from each set, in set order, with zero sum.
struct KSumVerifier {
    k: usize,
    shift: i64,
    codec: UniverseCodec,
}

impl KSumVerifier {
    fn entry(&self, code: u64) -> Option<(u64, i64)> {
        let t = self.codec.decode(code)?;
        Some((t[0], t[1] as i64 - self.shift - 1))
    }
}

impl Verifier for KSumVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        if codes.len() != self.k {
            return false;
        }
        let mut sum = 0i64;
        for (slot, &c) in codes.iter().enumerate() {
            match self.entry(c) {
                Some((set, v)) if set == slot as u64 + 1 => sum += v,
                _ => return false,
            }
        }
        sum == 0
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        let slot = prefix.len() as u64;
        matches!(self.entry(prefix[prefix.len() - 1]), Some((set, _)) if set == slot)
    }
}

pub fn ksum_spec(k: usize, w: i64) -> Result<LSProblemSpec, ProblemError> {
    let v = KSumVerifier { k, shift: w, codec: UniverseCodec::new(2) };
    Ok(LSProblemSpec::new("ksum", k, 0, 2, Arc::new(v))?)
}

pub fn encode_ksum(input: &KSumInput) -> Result<Encoded, ProblemError> {
    let k = input.k;
    if k == 0 || input.sets.len() != k {
        return Err(ProblemError::InvalidInput(format!("expected {k} sets, got {}", input.sets.len())));
    }
    let w = magnitude_bound(input.sets.iter().flatten().copied(), input.w)?;
    let codec = UniverseCodec::new(2);
    let mut elements = Vec::new();
    for (j, set) in input.sets.iter().enumerate() {
        for &v in set {
            elements.push(codec.encode(&[j as u64 + 1, shifted(v, w)]).ok_or(ProblemError::Overflow)?);
        }
    }
    elements.sort_unstable();
    elements.dedup();
    let n = (k as u64).max(2 * w as u64 + 1);
    Ok(Encoded { spec: ksum_spec(k, w)?, instance: LSInstance::new(n, 2, elements)? })
}

/// Whether one value per set sums to zero.
pub fn ksum_direct(input: &KSumInput) -> bool {
    fn go(sets: &[Vec<i64>], sum: i64) -> bool {
        match sets.split_first() {
            None => sum == 0,
            Some((first, rest)) => first.iter().any(|&v| go(rest, sum + v)),
        }
    }
    input.k > 0 && input.sets.len() == input.k && go(&input.sets, 0)
}
