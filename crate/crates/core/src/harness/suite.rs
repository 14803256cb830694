//! Seeded random natural inputs for cross-checking encoders.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::problems::{GraphInput, KSumInput, PatternSpec, PointSetInput, ProblemKind};

/// Random simple graph on up to `max_n` vertices with at most `max_edges`
/// edges and weights in `[-w, w]`.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize, max_edges: usize, w: i64) -> GraphInput {
    let n = rng.gen_range(2..=max_n);
    let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let density = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if edges.len() < max_edges && rng.gen_bool(density) {
            edges.push(vec![u as i64, v as i64, rng.gen_range(-w..=w)]);
        }
    }
    GraphInput {
        n,
        edges,
        vertex_weights: Some((0..n).map(|_| rng.gen_range(-w..=w)).collect()),
        w: Some(w),
        ..GraphInput::default()
    }
}

fn preset(name: &str) -> PatternSpec {
    PatternSpec::Name(name.to_string())
}

/// Random natural input for `kind`, as JSON.
pub fn random_input<R: Rng>(kind: ProblemKind, rng: &mut R) -> String {
    let json = match kind {
        ProblemKind::KSum => {
            let w = rng.gen_range(1..=20);
            let size = rng.gen_range(1..=6);
            let sets = (0..3).map(|_| (0..size).map(|_| rng.gen_range(-w..=w)).collect()).collect();
            serde_json::to_value(KSumInput { k: 3, sets, w: Some(w) })
        }
        ProblemKind::Collinearity => {
            let w = rng.gen_range(1..=4);
            let points = (0..rng.gen_range(0..=8)).map(|_| (rng.gen_range(-w..=w), rng.gen_range(-w..=w))).collect();
            serde_json::to_value(PointSetInput { points, w: Some(w) })
        }
        ProblemKind::Triangle | ProblemKind::InducedC4 => serde_json::to_value(random_graph(rng, 8, 20, 0)),
        ProblemKind::HInduced => {
            let mut g = random_graph(rng, 8, 20, 0);
            g.pattern = Some(preset(["path3", "c4", "triangle"].choose(rng).expect("nonempty")));
            serde_json::to_value(g)
        }
        ProblemKind::FamilyInduced => {
            let mut g = random_graph(rng, 8, 19, 0);
            let mut fam = vec!["triangle", "path3", "c4"];
            fam.shuffle(rng);
            fam.truncate(rng.gen_range(1..=2));
            g.family = Some(fam.into_iter().map(preset).collect());
            serde_json::to_value(g)
        }
        ProblemKind::MinWeightClique => {
            let w = rng.gen_range(1..=3);
            let mut g = random_graph(rng, 7, 19, w);
            g.k = Some(3);
            g.threshold = Some(rng.gen_range(-3 * w..=3 * w));
            serde_json::to_value(g)
        }
        ProblemKind::MaxHEdge | ProblemKind::MaxHVertex => {
            let w = rng.gen_range(1..=3);
            let cap = if kind == ProblemKind::MaxHEdge { 9 } else { 12 };
            let mut g = random_graph(rng, 7, cap, w);
            let h = *["edge", "triangle"].choose(rng).expect("nonempty");
            g.pattern = Some(preset(h));
            let span = if h == "edge" { 2 } else { 3 };
            g.threshold = Some(rng.gen_range(-span * w..=span * w));
            serde_json::to_value(g)
        }
    };
    json.expect("inputs serialize").to_string()
}
