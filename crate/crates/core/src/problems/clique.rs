use std::sync::Arc;

use super::codec::UniverseCodec;
use super::graph::{any_subset, vertex_span, Graph};
use super::input::{magnitude_bound, GraphInput};
use super::{shifted, Encoded, ProblemError};
use crate::ls::{LSInstance, LSProblemSpec, Verifier};

/// `C(k, 2)` records `(1, u, v, w')` with increasing codes spanning `k`
/// vertices, then the threshold record `(2, 1, 1, W')`.
struct CliqueVerifier {
    k: usize,
    edges: usize,
    shift: i64,
    codec: UniverseCodec,
}

impl CliqueVerifier {
    /// Largest shifted value.
    fn top(&self) -> u64 {
        2 * self.shift as u64 + 1
    }

    fn check(&self, codes: &[u64], complete: bool) -> bool {
        let mut pairs = Vec::with_capacity(self.edges);
        let mut weight = 0i64;
        for (t, &c) in codes.iter().enumerate() {
            let Some(r) = self.codec.decode(c) else { return false };
            if r[3] > self.top() {
                return false;
            }
            if t < self.edges {
                if r[0] != 1 || r[1] >= r[2] || (t > 0 && codes[t - 1] >= c) {
                    return false;
                }
                pairs.push((r[1], r[2]));
                weight += r[3] as i64 - self.shift - 1;
            } else if r[..3] != [2, 1, 1] || (complete && weight > r[3] as i64 - self.shift - 1) {
                return false;
            }
        }
        let span = vertex_span(pairs.iter().copied());
        if !complete {
            return span <= self.k;
        }
        pairs.sort_unstable();
        pairs.dedup();
        span == self.k && pairs.len() == self.edges
    }
}

impl Verifier for CliqueVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        codes.len() == self.edges + 1 && self.check(codes, true)
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        self.check(prefix, false)
    }

    fn slot_codes(&self, slot: usize, side: u64) -> Option<Vec<u64>> {
        let values = 1..=self.top().min(side);
        Some(if slot < self.edges {
            let pairs = (1..=side).flat_map(|u| (u + 1..=side).map(move |v| (u, v)));
            self.codec.encode_all(pairs.flat_map(|(u, v)| values.clone().map(move |w| vec![1, u, v, w])))
        } else if side >= 2 {
            self.codec.encode_all(values.map(|w| vec![2, 1, 1, w]))
        } else {
            Vec::new()
        })
    }
}

pub fn clique_spec(k: usize, shift: i64) -> Result<LSProblemSpec, ProblemError> {
    if k < 2 {
        return Err(ProblemError::InvalidInput(format!("clique size k = {k} must be at least 2")));
    }
    let edges = k * (k - 1) / 2;
    let v = CliqueVerifier { k, edges, shift, codec: UniverseCodec::new(4) };
    Ok(LSProblemSpec::new("min-weight-clique", edges + 1, 0, 4, Arc::new(v))?)
}

pub fn encode_min_weight_kclique(g: &Graph, k: usize, w: i64, threshold: i64) -> Result<Encoded, ProblemError> {
    let w = magnitude_bound([g.max_abs_weight()], Some(w))?;
    let shift = w.max(threshold.abs());
    let codec = UniverseCodec::new(4);
    let enc = |t: [u64; 4]| codec.encode(&t).ok_or(ProblemError::Overflow);
    let mut elements = Vec::with_capacity(g.num_edges() + 1);
    for (u, v) in g.edges() {
        let wt = g.weight(u, v).expect("edge has a weight");
        elements.push(enc([1, u as u64, v as u64, shifted(wt, shift)])?);
    }
    elements.push(enc([2, 1, 1, shifted(threshold, shift)])?);
    elements.sort_unstable();
    let n = (g.n() as u64).max(2 * shift as u64 + 1).max(2);
    Ok(Encoded { spec: clique_spec(k, shift)?, instance: LSInstance::new(n, 4, elements)? })
}

pub fn encode_clique_input(input: &GraphInput) -> Result<Encoded, ProblemError> {
    let g = input.to_graph()?;
    let k = input.k.ok_or(ProblemError::MissingField("k"))?;
    let w = input.weight_bound(&g)?;
    encode_min_weight_kclique(&g, k, w, input.threshold()?)
}

/// Whether some `k`-clique has total edge weight at most `threshold`.
pub fn clique_direct(g: &Graph, k: usize, threshold: i64) -> bool {
    any_subset(g.n(), k, |sub| {
        let mut total = 0;
        for (i, &u) in sub.iter().enumerate() {
            for &v in &sub[i + 1..] {
                match g.weight(u, v) {
                    Some(w) => total += w,
                    None => return false,
                }
            }
        }
        total <= threshold
    })
}
