//! MAX H-SUBGRAPH with edge or vertex weights: is there an induced copy of
//! `H` of total weight at least the threshold?

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::codec::UniverseCodec;
use super::graph::{has_induced_copy, vertex_span, Graph, Pattern};
use super::input::{magnitude_bound, GraphInput};
use super::{shifted, Encoded, ProblemError};
use crate::ls::{LSInstance, LSProblemSpec, Verifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Edge,
    Vertex,
}

fn increasing_at(codes: &[u64], t: usize, group_start: usize) -> bool {
    t == group_start || codes[t - 1] < codes[t]
}

fn pairs(side: u64) -> impl Iterator<Item = (u64, u64)> + Clone {
    (1..=side).flat_map(move |u| (u + 1..=side).map(move |v| (u, v)))
}

/// Records `(1, u, v, w')` weighted edges, `(2, u, v, 1)` adjacency and
/// `(3, 1, 1, W')` threshold. A witness lists the copy's weighted edges,
/// the threshold, then non-edges `(2, s, t, 1)` outside the set.
struct EdgeModeVerifier {
    pattern: Pattern,
    shift: i64,
    codec: UniverseCodec,
}

impl EdgeModeVerifier {
    fn check(&self, codes: &[u64], complete: bool) -> bool {
        let e = self.pattern.num_edges();
        let mut edges = Vec::new();
        let mut nonedges = Vec::new();
        let mut weight = 0i64;
        let mut threshold = None;
        for (t, &c) in codes.iter().enumerate() {
            let Some(r) = self.codec.decode(c) else { return false };
            if t <= e && r[3] > top(self.shift) {
                return false;
            }
            if t < e {
                if r[0] != 1 || r[1] >= r[2] || !increasing_at(codes, t, 0) {
                    return false;
                }
                edges.push((r[1], r[2]));
                weight += r[3] as i64 - self.shift - 1;
            } else if t == e {
                if r[..3] != [3, 1, 1] {
                    return false;
                }
                threshold = Some(r[3] as i64 - self.shift - 1);
            } else {
                if r[0] != 2 || r[3] != 1 || r[1] >= r[2] || !increasing_at(codes, t, e + 1) {
                    return false;
                }
                nonedges.push((r[1], r[2]));
            }
        }
        if !complete {
            return vertex_span(edges.iter().chain(&nonedges).copied()) <= self.pattern.vertices();
        }
        self.pattern.realized_by(&edges, &nonedges) && threshold.is_some_and(|thr| weight >= thr)
    }
}

impl Verifier for EdgeModeVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        codes.len() == self.pattern.num_edges() + 1 + self.pattern.num_nonedges() && self.check(codes, true)
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        self.check(prefix, false)
    }

    fn slot_codes(&self, slot: usize, side: u64) -> Option<Vec<u64>> {
        let e = self.pattern.num_edges();
        let values = 1..=top(self.shift).min(side);
        let tuples: Vec<Vec<u64>> = if slot < e {
            pairs(side).flat_map(|(u, v)| values.clone().map(move |w| vec![1, u, v, w])).collect()
        } else if slot == e {
            values.filter(|_| side >= 3).map(|w| vec![3, 1, 1, w]).collect()
        } else {
            pairs(side).filter(|_| side >= 2).map(|(u, v)| vec![2, u, v, 1]).collect()
        };
        Some(self.codec.encode_all(tuples))
    }
}

/// Records `(1, u, v)` edges, `(2, v, w')` weighted vertices and
/// `(3, 1, W')` threshold. A witness lists the copy's vertices, its edges,
/// the threshold, then non-edges `(1, s, t)` outside the set.
struct VertexModeVerifier {
    pattern: Pattern,
    shift: i64,
    codec: UniverseCodec,
}

impl VertexModeVerifier {
    fn check(&self, codes: &[u64], complete: bool) -> bool {
        let h = self.pattern.vertices();
        let e = self.pattern.num_edges();
        let mut verts = Vec::with_capacity(h);
        let mut edges = Vec::new();
        let mut nonedges = Vec::new();
        let mut weight = 0i64;
        let mut threshold = None;
        for (t, &c) in codes.iter().enumerate() {
            let Some(r) = self.codec.decode(c) else { return false };
            if t < h {
                if r[0] != 2 || r[2] > top(self.shift) || !increasing_at(codes, t, 0) {
                    return false;
                }
                verts.push(r[1]);
                weight += r[2] as i64 - self.shift - 1;
                continue;
            }
            if t == h + e {
                if r[..2] != [3, 1] || r[2] > top(self.shift) {
                    return false;
                }
                threshold = Some(r[2] as i64 - self.shift - 1);
                continue;
            }
            let group = if t < h + e { h } else { h + e + 1 };
            if r[0] != 1 || r[1] >= r[2] || !increasing_at(codes, t, group) {
                return false;
            }
            if !verts.contains(&r[1]) || !verts.contains(&r[2]) {
                return false;
            }
            if t < h + e {
                edges.push((r[1], r[2]));
            } else {
                nonedges.push((r[1], r[2]));
            }
        }
        let mut distinct = verts.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != verts.len() {
            return false;
        }
        if !complete {
            return true;
        }
        self.pattern.realized_by(&edges, &nonedges) && threshold.is_some_and(|thr| weight >= thr)
    }
}

impl Verifier for VertexModeVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        let p = &self.pattern;
        codes.len() == p.vertices() + p.num_edges() + 1 + p.num_nonedges() && self.check(codes, true)
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        self.check(prefix, false)
    }

    fn slot_codes(&self, slot: usize, side: u64) -> Option<Vec<u64>> {
        let (h, e) = (self.pattern.vertices(), self.pattern.num_edges());
        let values = 1..=top(self.shift).min(side);
        let tuples: Vec<Vec<u64>> = if slot < h {
            (1..=side).filter(|_| side >= 2).flat_map(|v| values.clone().map(move |w| vec![2, v, w])).collect()
        } else if slot == h + e {
            values.filter(|_| side >= 3).map(|w| vec![3, 1, w]).collect()
        } else {
            pairs(side).map(|(u, v)| vec![1, u, v]).collect()
        };
        Some(self.codec.encode_all(tuples))
    }
}

/// Largest shifted value.
fn top(shift: i64) -> u64 {
    2 * shift as u64 + 1
}

pub fn max_h_spec(pattern: &Pattern, shift: i64, mode: WeightMode) -> Result<LSProblemSpec, ProblemError> {
    let (e, f, h) = (pattern.num_edges(), pattern.num_nonedges(), pattern.vertices());
    let spec = match mode {
        WeightMode::Edge => {
            let v = EdgeModeVerifier { pattern: pattern.clone(), shift, codec: UniverseCodec::new(4) };
            LSProblemSpec::new("max-h-edge", e + 1, f, 4, Arc::new(v))?
        }
        WeightMode::Vertex => {
            let v = VertexModeVerifier { pattern: pattern.clone(), shift, codec: UniverseCodec::new(3) };
            LSProblemSpec::new("max-h-vertex", h + e + 1, f, 3, Arc::new(v))?
        }
    };
    Ok(spec)
}

pub fn encode_max_h_subgraph(
    g: &Graph,
    pattern: &Pattern,
    w: i64,
    threshold: i64,
    mode: WeightMode,
) -> Result<Encoded, ProblemError> {
    let w = magnitude_bound([g.max_abs_weight()], Some(w))?;
    let shift = w.max(threshold.abs());
    let mut elements = Vec::new();
    let r = match mode {
        WeightMode::Edge => {
            let codec = UniverseCodec::new(4);
            let enc = |t: [u64; 4]| codec.encode(&t).ok_or(ProblemError::Overflow);
            for (u, v) in g.edges() {
                let wt = g.weight(u, v).expect("edge has a weight");
                elements.push(enc([1, u as u64, v as u64, shifted(wt, shift)])?);
                elements.push(enc([2, u as u64, v as u64, 1])?);
            }
            elements.push(enc([3, 1, 1, shifted(threshold, shift)])?);
            4
        }
        WeightMode::Vertex => {
            let codec = UniverseCodec::new(3);
            let enc = |t: [u64; 3]| codec.encode(&t).ok_or(ProblemError::Overflow);
            for (u, v) in g.edges() {
                elements.push(enc([1, u as u64, v as u64])?);
            }
            for v in 1..=g.n() {
                elements.push(enc([2, v as u64, shifted(g.vertex_weight(v), shift)])?);
            }
            elements.push(enc([3, 1, shifted(threshold, shift)])?);
            3
        }
    };
    elements.sort_unstable();
    let n = (g.n() as u64).max(2 * shift as u64 + 1).max(3);
    Ok(Encoded { spec: max_h_spec(pattern, shift, mode)?, instance: LSInstance::new(n, r, elements)? })
}

pub fn encode_max_h_input(input: &GraphInput, mode: WeightMode) -> Result<Encoded, ProblemError> {
    let g = input.to_graph()?;
    let w = input.weight_bound(&g)?;
    encode_max_h_subgraph(&g, &input.pattern()?, w, input.threshold()?, mode)
}

/// Whether some induced copy of `pattern` has weight at least `threshold`.
pub fn max_h_direct(g: &Graph, pattern: &Pattern, threshold: i64, mode: WeightMode) -> bool {
    has_induced_copy(g, pattern, |sub| {
        let total: i64 = match mode {
            WeightMode::Vertex => sub.iter().map(|&v| g.vertex_weight(v)).sum(),
            WeightMode::Edge => {
                let mut t = 0;
                for (i, &u) in sub.iter().enumerate() {
                    for &v in &sub[i + 1..] {
                        t += g.weight(u, v).unwrap_or(0);
                    }
                }
                t
            }
        };
        total >= threshold
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ls::{brute_solve, count_witnesses};

    #[test]
    fn single_edge_examples() {
        let mut g = Graph::new(2);
        g.add_edge(1, 2, 5).unwrap();
        let edge = Pattern::preset("edge").unwrap();
        let yes = encode_max_h_subgraph(&g, &edge, 5, 5, WeightMode::Edge).unwrap();
        assert!(brute_solve(&yes.spec, &yes.instance).unwrap());
        let no = encode_max_h_subgraph(&g, &edge, 5, 6, WeightMode::Edge).unwrap();
        assert!(!brute_solve(&no.spec, &no.instance).unwrap());
    }

    #[test]
    fn vertex_mode() {
        let mut g = Graph::new(3);
        g.add_edge(1, 2, 0).unwrap();
        g.add_edge(2, 3, 0).unwrap();
        for (v, w) in [(1, 4), (2, -1), (3, 2)] {
            g.set_vertex_weight(v, w);
        }
        let path = Pattern::preset("path3").unwrap();
        for thr in 3..=7 {
            let enc = encode_max_h_subgraph(&g, &path, 4, thr, WeightMode::Vertex).unwrap();
            let want = thr <= 5;
            assert_eq!(brute_solve(&enc.spec, &enc.instance).unwrap(), want, "thr = {thr}");
            assert_eq!(max_h_direct(&g, &path, thr, WeightMode::Vertex), want);
        }
        let edge = Pattern::preset("edge").unwrap();
        let enc = encode_max_h_subgraph(&g, &edge, 4, 0, WeightMode::Vertex).unwrap();
        // edges {1,2} weight 3 and {2,3} weight 1
        assert_eq!(count_witnesses(&enc.spec, &enc.instance).unwrap(), 2);
    }

    #[test]
    fn edge_mode_with_nonedges() {
        let mut g = Graph::new(4);
        for (u, v, w) in [(1, 2, 3), (2, 3, 3), (1, 3, 1), (3, 4, -2)] {
            g.add_edge(u, v, w).unwrap();
        }
        let path = Pattern::preset("path3").unwrap();
        for thr in -3..=3 {
            let enc = encode_max_h_subgraph(&g, &path, 3, thr, WeightMode::Edge).unwrap();
            assert_eq!(
                brute_solve(&enc.spec, &enc.instance).unwrap(),
                max_h_direct(&g, &path, thr, WeightMode::Edge),
                "thr = {thr}"
            );
        }
    }
}
