use std::collections::BTreeMap;

use super::ProblemError;

/// Simple undirected graph on vertices `1..=n` with optional edge and
/// vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
    weights: BTreeMap<(usize, usize), i64>,
    vertex_weights: Vec<i64>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![vec![false; n + 1]; n + 1], weights: BTreeMap::new(), vertex_weights: vec![0; n + 1] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: i64) -> Result<(), ProblemError> {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(ProblemError::InvalidInput(format!("edge ({u}, {v}) outside [1, {}]", self.n)));
        }
        if u == v {
            return Err(ProblemError::InvalidInput(format!("self-loop at {u}")));
        }
        let (a, b) = (u.min(v), u.max(v));
        if self.adj[a][b] {
            return Err(ProblemError::InvalidInput(format!("duplicate edge ({a}, {b})")));
        }
        self.adj[a][b] = true;
        self.adj[b][a] = true;
        self.weights.insert((a, b), w);
        Ok(())
    }

    pub fn set_vertex_weight(&mut self, v: usize, w: i64) {
        self.vertex_weights[v] = w;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && v <= self.n && self.adj[u][v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.weights.keys().copied().collect()
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        self.weights.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.vertex_weights[v]
    }

    pub fn max_abs_weight(&self) -> i64 {
        let e = self.weights.values().map(|w| w.abs());
        let v = self.vertex_weights.iter().map(|w| w.abs());
        e.chain(v).max().unwrap_or(0)
    }
}

/// Small pattern graph on vertices `0..h`, with its vertex permutations
/// precomputed for isomorphism tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    h: usize,
    adj: Vec<Vec<bool>>,
    perms: Vec<Vec<usize>>,
}

pub const PATTERN_PRESETS: [&str; 5] = ["edge", "path3", "triangle", "c4", "k4"];

/// Largest supported pattern.
pub const MAX_PATTERN_VERTICES: usize = 6;

impl Pattern {
    pub fn new(name: impl Into<String>, h: usize, edges: &[(usize, usize)]) -> Result<Self, ProblemError> {
        if !(2..=MAX_PATTERN_VERTICES).contains(&h) {
            return Err(ProblemError::InvalidInput(format!(
                "pattern needs 2 to {MAX_PATTERN_VERTICES} vertices, got {h}"
            )));
        }
        let mut adj = vec![vec![false; h]; h];
        for &(u, v) in edges {
            if u >= h || v >= h || u == v || adj[u][v] {
                return Err(ProblemError::InvalidInput(format!("bad pattern edge ({u}, {v})")));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(Pattern { name: name.into(), h, adj, perms: permutations(h) })
    }

    pub fn preset(name: &str) -> Result<Self, ProblemError> {
        let edges: &[(usize, usize)] = match name {
            "edge" => &[(0, 1)],
            "path3" => &[(0, 1), (1, 2)],
            "triangle" => &[(0, 1), (1, 2), (0, 2)],
            "c4" => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            "k4" => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            _ => return Err(ProblemError::UnknownPattern(name.to_string())),
        };
        let h = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
        Pattern::new(name, h, edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> usize {
        self.h
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn num_nonedges(&self) -> usize {
        self.h * (self.h - 1) / 2 - self.num_edges()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.h {
            for v in u + 1..self.h {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Whether the graph on `0..h` given by `adjacent` is isomorphic to the
    /// pattern.
    pub fn isomorphic(&self, adjacent: impl Fn(usize, usize) -> bool) -> bool {
        self.perms.iter().any(|p| (0..self.h).all(|x| (x + 1..self.h).all(|y| self.adj[x][y] == adjacent(p[x], p[y]))))
    }

    /// Whether the given edges and non-edges (pairs of arbitrary vertex
    /// ids) cover every pair of exactly `h` vertices once and form a copy
    /// of the pattern.
    pub fn realized_by(&self, edges: &[(u64, u64)], nonedges: &[(u64, u64)]) -> bool {
        if edges.len() != self.num_edges() || nonedges.len() != self.num_nonedges() {
            return false;
        }
        let mut verts: Vec<u64> = edges.iter().chain(nonedges).flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != self.h {
            return false;
        }
        let local = |x: u64| verts.binary_search(&x).expect("vertex collected above");
        let mut seen = vec![vec![None; self.h]; self.h];
        for (pairs, is_edge) in [(edges, true), (nonedges, false)] {
            for &(u, v) in pairs {
                let (a, b) = (local(u), local(v));
                if a == b || seen[a][b].is_some() {
                    return false;
                }
                seen[a][b] = Some(is_edge);
                seen[b][a] = Some(is_edge);
            }
        }
        self.isomorphic(|x, y| seen[x][y] == Some(true))
    }
}

fn permutations(h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..h).collect();
    heap_permute(h, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

/// Number of distinct vertices among the endpoints of `pairs`.
pub fn vertex_span(pairs: impl IntoIterator<Item = (u64, u64)>) -> usize {
    let mut verts: Vec<u64> = pairs.into_iter().flat_map(|(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    verts.len()
}

/// Calls `visit` on every `k`-subset of `1..=n` in lexicographic order
/// until it returns `true`; reports whether it did.
pub fn any_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for v in start..=n {
            cur.push(v);
            let hit = go(v + 1, n, k, cur, visit);
            cur.pop();
            if hit {
                return true;
            }
        }
        false
    }
    go(1, n, k, &mut Vec::with_capacity(k), &mut visit)
}

/// Whether some vertex subset induces a copy of `pattern` and satisfies
/// `extra`.
pub fn has_induced_copy(graph: &Graph, pattern: &Pattern, extra: impl Fn(&[usize]) -> bool) -> bool {
    any_subset(graph.n(), pattern.vertices(), |sub| {
        pattern.isomorphic(|x, y| graph.has_edge(sub[x], sub[y])) && extra(sub)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 0).unwrap();
        }
        g
    }

    #[test]
    fn presets() {
        let counts: Vec<(usize, usize, usize)> = PATTERN_PRESETS
            .iter()
            .map(|n| {
                let p = Pattern::preset(n).unwrap();
                (p.vertices(), p.num_edges(), p.num_nonedges())
            })
            .collect();
        assert_eq!(counts, vec![(2, 1, 0), (3, 2, 1), (3, 3, 0), (4, 4, 2), (4, 6, 0)]);
        assert!(Pattern::preset("k5").is_err());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        let mut p = permutations(4);
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 24);
    }

    #[test]
    fn induced_detection() {
        let c4 = Pattern::preset("c4").unwrap();
        let k4 = graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(!has_induced_copy(&k4, &c4, |_| true));
        let cycle = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert!(has_induced_copy(&cycle, &c4, |_| true));
        let path = graph(3, &[(1, 2), (2, 3)]);
        assert!(!has_induced_copy(&path, &Pattern::preset("triangle").unwrap(), |_| true));
    }

    #[test]
    fn realization() {
        let p3 = Pattern::preset("path3").unwrap();
        assert!(p3.realized_by(&[(1, 5), (5, 9)], &[(1, 9)]));
        assert!(!p3.realized_by(&[(1, 5), (5, 9)], &[(1, 7)]));
        assert!(!p3.realized_by(&[(1, 5), (1, 5)], &[(1, 9)]));
    }

    #[test]
    fn graph_validation() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(1, 1, 0).is_err());
        assert!(g.add_edge(1, 4, 0).is_err());
        g.add_edge(2, 1, 7).unwrap();
        assert!(g.add_edge(1, 2, 0).is_err());
        assert_eq!(g.weight(1, 2), Some(7));
        assert_eq!(g.edges(), vec![(1, 2)]);
    }
}
