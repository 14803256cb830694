//! Encoders from natural problem inputs to local subset instances, with
//! direct solvers for cross-checking.

pub mod clique;
pub mod codec;
pub mod collinearity;
pub mod graph;
pub mod induced;
pub mod input;
pub mod ksum;
pub mod maxh;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ls::{LSInstance, LSProblemSpec, LsError};

pub use clique::{clique_direct, encode_min_weight_kclique};
pub use codec::UniverseCodec;
pub use collinearity::{collinearity_direct, encode_collinearity};
pub use graph::{Graph, Pattern};
pub use induced::{encode_family_induced, encode_h_induced, family_direct, h_induced_direct};
pub use input::{GraphInput, KSumInput, PatternSpec, PointSetInput};
pub use ksum::{encode_ksum, ksum_direct};
pub use maxh::{encode_max_h_subgraph, max_h_direct, WeightMode};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown pattern {0:?}")]
    UnknownPattern(String),
    #[error("missing field {0:?}")]
    MissingField(&'static str),
    #[error("value {value} outside [-{bound}, {bound}]")]
    ValueOutOfRange { value: i64, bound: i64 },
    #[error("universe code overflows 64 bits")]
    Overflow,
    #[error("unknown problem {0:?}")]
    UnknownProblem(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ls(#[from] LsError),
}

/// An encoded instance together with the spec whose verifier reads it.
#[derive(Clone, Debug)]
pub struct Encoded {
    pub spec: LSProblemSpec,
    pub instance: LSInstance,
}

/// Maps `v` in `[-shift, shift]` to `[1, 2 shift + 1]`.
pub fn shifted(v: i64, shift: i64) -> u64 {
    (v + shift + 1) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    KSum,
    Collinearity,
    Triangle,
    InducedC4,
    HInduced,
    FamilyInduced,
    MinWeightClique,
    MaxHEdge,
    MaxHVertex,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 9] = [
        ProblemKind::KSum,
        ProblemKind::Collinearity,
        ProblemKind::Triangle,
        ProblemKind::InducedC4,
        ProblemKind::HInduced,
        ProblemKind::FamilyInduced,
        ProblemKind::MinWeightClique,
        ProblemKind::MaxHEdge,
        ProblemKind::MaxHVertex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::KSum => "ksum",
            ProblemKind::Collinearity => "collinearity",
            ProblemKind::Triangle => "triangle",
            ProblemKind::InducedC4 => "induced-c4",
            ProblemKind::HInduced => "h-induced",
            ProblemKind::FamilyInduced => "family-induced",
            ProblemKind::MinWeightClique => "min-weight-clique",
            ProblemKind::MaxHEdge => "max-h-edge",
            ProblemKind::MaxHVertex => "max-h-vertex",
        }
    }

    fn fixed_pattern(self) -> Option<&'static str> {
        match self {
            ProblemKind::Triangle => Some("triangle"),
            ProblemKind::InducedC4 => Some("c4"),
            _ => None,
        }
    }

    fn graph_input(self, json: &str) -> Result<(GraphInput, Graph), ProblemError> {
        let mut input: GraphInput = serde_json::from_str(json)?;
        if let Some(p) = self.fixed_pattern() {
            input.pattern = Some(PatternSpec::Name(p.into()));
        }
        let g = input.to_graph()?;
        Ok((input, g))
    }

    /// Parses a natural-form JSON input and encodes it.
    pub fn encode_json(self, json: &str) -> Result<Encoded, ProblemError> {
        match self {
            ProblemKind::KSum => encode_ksum(&serde_json::from_str(json)?),
            ProblemKind::Collinearity => encode_collinearity(&serde_json::from_str(json)?),
            ProblemKind::Triangle | ProblemKind::InducedC4 | ProblemKind::HInduced => {
                let (input, g) = self.graph_input(json)?;
                encode_h_induced(&g, &input.pattern()?)
            }
            ProblemKind::FamilyInduced => induced::encode_family_input(&serde_json::from_str(json)?),
            ProblemKind::MinWeightClique => clique::encode_clique_input(&serde_json::from_str(json)?),
            ProblemKind::MaxHEdge => maxh::encode_max_h_input(&serde_json::from_str(json)?, WeightMode::Edge),
            ProblemKind::MaxHVertex => maxh::encode_max_h_input(&serde_json::from_str(json)?, WeightMode::Vertex),
        }
    }

    /// Solves a natural-form JSON input without any encoding.
    pub fn direct_solve_json(self, json: &str) -> Result<bool, ProblemError> {
        Ok(match self {
            ProblemKind::KSum => ksum_direct(&serde_json::from_str(json)?),
            ProblemKind::Collinearity => collinearity_direct(&serde_json::from_str(json)?),
            ProblemKind::Triangle | ProblemKind::InducedC4 | ProblemKind::HInduced => {
                let (input, g) = self.graph_input(json)?;
                h_induced_direct(&g, &input.pattern()?)
            }
            ProblemKind::FamilyInduced => {
                let (input, g) = self.graph_input(json)?;
                family_direct(&g, &induced::family_members(&input)?)
            }
            ProblemKind::MinWeightClique => {
                let (input, g) = self.graph_input(json)?;
                let k = input.k.ok_or(ProblemError::MissingField("k"))?;
                clique_direct(&g, k, input.threshold()?)
            }
            ProblemKind::MaxHEdge | ProblemKind::MaxHVertex => {
                let (input, g) = self.graph_input(json)?;
                let mode = if self == ProblemKind::MaxHEdge { WeightMode::Edge } else { WeightMode::Vertex };
                max_h_direct(&g, &input.pattern()?, input.threshold()?, mode)
            }
        })
    }

    /// Spec for this problem with default parameters: `k = 3`, weight
    /// bound 1, pattern edge, family `{triangle, path3}`, graphs on
    /// `graph_n` vertices.
    pub fn default_spec(self, graph_n: usize) -> Result<LSProblemSpec, ProblemError> {
        match self {
            ProblemKind::KSum => ksum::ksum_spec(3, 1),
            ProblemKind::Collinearity => Ok(collinearity::collinearity_spec()),
            ProblemKind::Triangle | ProblemKind::InducedC4 => {
                induced::h_induced_spec(&Pattern::preset(self.fixed_pattern().expect("fixed"))?)
            }
            ProblemKind::HInduced => induced::h_induced_spec(&Pattern::preset("edge")?),
            ProblemKind::FamilyInduced => {
                let fam = [Pattern::preset("triangle")?, Pattern::preset("path3")?];
                induced::family_spec(&fam, graph_n)
            }
            ProblemKind::MinWeightClique => clique::clique_spec(3, 1),
            ProblemKind::MaxHEdge => maxh::max_h_spec(&Pattern::preset("edge")?, 1, WeightMode::Edge),
            ProblemKind::MaxHVertex => maxh::max_h_spec(&Pattern::preset("edge")?, 1, WeightMode::Vertex),
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProblemKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| ProblemError::UnknownProblem(s.to_string()))
    }
}
