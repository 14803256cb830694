//! Natural-input JSON formats.

use serde::{Deserialize, Serialize};

use super::graph::{Graph, Pattern};
use super::ProblemError;

/// A pattern graph, either a preset name or explicit edges over
/// vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternSpec {
    Name(String),
    Graph { n: usize, edges: Vec<(usize, usize)> },
}

impl PatternSpec {
    pub fn to_pattern(&self) -> Result<Pattern, ProblemError> {
        match self {
            PatternSpec::Name(name) => Pattern::preset(name),
            PatternSpec::Graph { n, edges } => {
                let mut zero_based = Vec::with_capacity(edges.len());
                for &(u, v) in edges {
                    if u == 0 || v == 0 {
                        return Err(ProblemError::InvalidInput("pattern vertices are 1-based".into()));
                    }
                    zero_based.push((u - 1, v - 1));
                }
                Pattern::new("custom", *n, &zero_based)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInput {
    pub n: usize,
    /// `[u, v]` or `[u, v, w]`, vertices 1-based.
    pub edges: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<i64>,
    #[serde(default, rename = "H", skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<PatternSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, rename = "W", skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
}

impl GraphInput {
    pub fn to_graph(&self) -> Result<Graph, ProblemError> {
        let mut g = Graph::new(self.n);
        for e in &self.edges {
            let (u, v, w) = match e.as_slice() {
                [u, v] => (*u, *v, 0),
                [u, v, w] => (*u, *v, *w),
                _ => return Err(ProblemError::InvalidInput(format!("edge {e:?} needs 2 or 3 entries"))),
            };
            let vertex =
                |x: i64| usize::try_from(x).map_err(|_| ProblemError::InvalidInput(format!("vertex {x} is negative")));
            g.add_edge(vertex(u)?, vertex(v)?, w)?;
        }
        if let Some(ws) = &self.vertex_weights {
            if ws.len() != self.n {
                return Err(ProblemError::InvalidInput(format!("{} vertex weights for {} vertices", ws.len(), self.n)));
            }
            for (i, &w) in ws.iter().enumerate() {
                g.set_vertex_weight(i + 1, w);
            }
        }
        Ok(g)
    }

    pub fn pattern(&self) -> Result<Pattern, ProblemError> {
        self.pattern.as_ref().ok_or(ProblemError::MissingField("H"))?.to_pattern()
    }

    pub fn threshold(&self) -> Result<i64, ProblemError> {
        self.threshold.ok_or(ProblemError::MissingField("threshold"))
    }

    /// Declared weight bound, or the largest weight magnitude present.
    pub fn weight_bound(&self, g: &Graph) -> Result<i64, ProblemError> {
        magnitude_bound([g.max_abs_weight()], self.w)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetInput {
    pub points: Vec<(i64, i64)>,
    #[serde(default, rename = "W", skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSumInput {
    pub k: usize,
    pub sets: Vec<Vec<i64>>,
    #[serde(default, rename = "W", skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
}

/// Declared bound `w`, or the largest magnitude in `values`; errors if a
/// value exceeds the declared bound.
pub fn magnitude_bound(values: impl IntoIterator<Item = i64>, w: Option<i64>) -> Result<i64, ProblemError> {
    let actual = values.into_iter().map(i64::abs).max().unwrap_or(0);
    match w {
        Some(w) if w < 0 => Err(ProblemError::InvalidInput(format!("negative bound W = {w}"))),
        Some(w) if actual > w => Err(ProblemError::ValueOutOfRange { value: actual, bound: w }),
        Some(w) => Ok(w),
        None => Ok(actual),
    }
}
