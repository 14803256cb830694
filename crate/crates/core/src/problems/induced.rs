use std::sync::Arc;

use super::codec::UniverseCodec;
use super::graph::{has_induced_copy, vertex_span, Graph, Pattern};
use super::input::GraphInput;
use super::{Encoded, ProblemError};
use crate::ls::{LSInstance, LSProblemSpec, Verifier};

fn pair(codec: &UniverseCodec, code: u64) -> Option<(u64, u64)> {
    let t = codec.decode(code)?;
    (t[0] < t[1]).then_some((t[0], t[1]))
}

/// Edges of the pattern copy come first, then its non-edges; both groups
/// are listed with increasing codes.
struct InducedVerifier {
    pattern: Pattern,
    codec: UniverseCodec,
}

impl InducedVerifier {
    fn alpha(&self) -> usize {
        self.pattern.num_edges()
    }

    fn pairs(&self, codes: &[u64]) -> Option<Vec<(u64, u64)>> {
        codes.iter().map(|&c| pair(&self.codec, c)).collect()
    }

    fn ordered(&self, codes: &[u64]) -> bool {
        let a = self.alpha().min(codes.len());
        codes[..a].windows(2).all(|w| w[0] < w[1]) && codes[a..].windows(2).all(|w| w[0] < w[1])
    }
}

impl Verifier for InducedVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        let alpha = self.alpha();
        if codes.len() != alpha + self.pattern.num_nonedges() || !self.ordered(codes) {
            return false;
        }
        match self.pairs(codes) {
            Some(p) => self.pattern.realized_by(&p[..alpha], &p[alpha..]),
            None => false,
        }
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        self.ordered(prefix)
            && matches!(self.pairs(prefix), Some(p) if vertex_span(p.iter().copied()) <= self.pattern.vertices())
    }
}

pub fn h_induced_spec(pattern: &Pattern) -> Result<LSProblemSpec, ProblemError> {
    let name = format!("{}-induced", pattern.name());
    let v = InducedVerifier { pattern: pattern.clone(), codec: UniverseCodec::new(2) };
    Ok(LSProblemSpec::new(name, pattern.num_edges(), pattern.num_nonedges(), 2, Arc::new(v))?)
}

fn edge_codes(g: &Graph, codec: &UniverseCodec) -> Result<Vec<u64>, ProblemError> {
    g.edges().into_iter().map(|(u, v)| codec.encode(&[u as u64, v as u64]).ok_or(ProblemError::Overflow)).collect()
}

pub fn encode_h_induced(g: &Graph, pattern: &Pattern) -> Result<Encoded, ProblemError> {
    let codec = UniverseCodec::new(2);
    let mut elements = edge_codes(g, &codec)?;
    elements.sort_unstable();
    let n = g.n().max(1) as u64;
    Ok(Encoded { spec: h_induced_spec(pattern)?, instance: LSInstance::new(n, 2, elements)? })
}

pub fn encode_h_induced_input(input: &GraphInput) -> Result<Encoded, ProblemError> {
    encode_h_induced(&input.to_graph()?, &input.pattern()?)
}

pub fn h_induced_direct(g: &Graph, pattern: &Pattern) -> bool {
    has_induced_copy(g, pattern, |_| true)
}

/// A member realized by the leading slots of each role. Unused edge slots
/// hold the reserved loop, unused non-edge slots a fixed pair through the
/// reserved vertex; real vertices are smaller than the reserved one.
struct FamilyVerifier {
    members: Vec<Pattern>,
    alpha: usize,
    beta: usize,
    reserved: u64,
    loop_code: u64,
    pad_code: u64,
    codec: UniverseCodec,
}

impl FamilyVerifier {
    fn member_admits(&self, p: &Pattern, codes: &[u64], complete: bool) -> bool {
        let (e, f) = (p.num_edges(), p.num_nonedges());
        let mut edges = Vec::new();
        let mut nonedges = Vec::new();
        for (t, &c) in codes.iter().enumerate() {
            let (used, pad, offset, out) = if t < self.alpha {
                (e, self.loop_code, 0, &mut edges)
            } else {
                (f, self.pad_code, self.alpha, &mut nonedges)
            };
            let local = t - offset;
            if local >= used {
                if c != pad {
                    return false;
                }
                continue;
            }
            match pair(&self.codec, c) {
                Some((u, v)) if v < self.reserved => out.push((u, v)),
                _ => return false,
            }
            if local > 0 && codes[t - 1] >= c {
                return false;
            }
        }
        if complete {
            p.realized_by(&edges, &nonedges)
        } else {
            vertex_span(edges.iter().chain(&nonedges).copied()) <= p.vertices()
        }
    }
}

impl Verifier for FamilyVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        codes.len() == self.alpha + self.beta && self.members.iter().any(|p| self.member_admits(p, codes, true))
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        self.members.iter().any(|p| self.member_admits(p, prefix, false))
    }
}

pub fn family_spec(members: &[Pattern], n: usize) -> Result<LSProblemSpec, ProblemError> {
    if members.is_empty() {
        return Err(ProblemError::InvalidInput("pattern family is empty".into()));
    }
    let codec = UniverseCodec::new(2);
    let reserved = n as u64 + 1;
    let alpha = members.iter().map(Pattern::num_edges).max().unwrap_or(0).max(1);
    let beta = members.iter().map(Pattern::num_nonedges).max().unwrap_or(0);
    let v = FamilyVerifier {
        members: members.to_vec(),
        alpha,
        beta,
        reserved,
        loop_code: codec.encode(&[reserved, reserved]).ok_or(ProblemError::Overflow)?,
        pad_code: codec.encode(&[reserved, 1]).ok_or(ProblemError::Overflow)?,
        codec,
    };
    Ok(LSProblemSpec::new("family-induced", alpha, beta, 2, Arc::new(v))?)
}

pub fn encode_family_induced(g: &Graph, members: &[Pattern]) -> Result<Encoded, ProblemError> {
    let codec = UniverseCodec::new(2);
    let reserved = g.n() as u64 + 1;
    let mut elements = edge_codes(g, &codec)?;
    elements.push(codec.encode(&[reserved, reserved]).ok_or(ProblemError::Overflow)?);
    elements.sort_unstable();
    Ok(Encoded { spec: family_spec(members, g.n())?, instance: LSInstance::new(reserved, 2, elements)? })
}

pub fn encode_family_input(input: &GraphInput) -> Result<Encoded, ProblemError> {
    let members = family_members(input)?;
    encode_family_induced(&input.to_graph()?, &members)
}

pub fn family_members(input: &GraphInput) -> Result<Vec<Pattern>, ProblemError> {
    input.family.as_ref().ok_or(ProblemError::MissingField("family"))?.iter().map(|p| p.to_pattern()).collect()
}

pub fn family_direct(g: &Graph, members: &[Pattern]) -> bool {
    members.iter().any(|p| h_induced_direct(g, p))
}
