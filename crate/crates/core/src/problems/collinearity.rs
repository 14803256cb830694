use std::sync::Arc;

use super::codec::UniverseCodec;
use super::input::{magnitude_bound, PointSetInput};
use super::{shifted, Encoded, ProblemError};
use crate::ls::{LSInstance, LSProblemSpec, Verifier};

/// Three points with increasing codes and zero cross product.
struct CollinearVerifier {
    codec: UniverseCodec,
}

impl Verifier for CollinearVerifier {
    fn accepts(&self, codes: &[u64]) -> bool {
        if codes.len() != 3 || !codes.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        let p: Vec<(i128, i128)> =
            codes.iter().filter_map(|&c| self.codec.decode(c)).map(|t| (t[0] as i128, t[1] as i128)).collect();
        p.len() == 3 && collinear(p[0], p[1], p[2])
    }

    fn admits_prefix(&self, prefix: &[u64]) -> bool {
        prefix.windows(2).last().is_none_or(|w| w[0] < w[1])
    }
}

fn collinear(a: (i128, i128), b: (i128, i128), c: (i128, i128)) -> bool {
    (b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1) == 0
}

pub fn collinearity_spec() -> LSProblemSpec {
    let v = CollinearVerifier { codec: UniverseCodec::new(2) };
    LSProblemSpec::new("collinearity", 3, 0, 2, Arc::new(v)).expect("valid spec")
}

pub fn encode_collinearity(input: &PointSetInput) -> Result<Encoded, ProblemError> {
    let w = magnitude_bound(input.points.iter().flat_map(|&(x, y)| [x, y]), input.w)?;
    let codec = UniverseCodec::new(2);
    let mut elements = input
        .points
        .iter()
        .map(|&(x, y)| codec.encode(&[shifted(x, w), shifted(y, w)]).ok_or(ProblemError::Overflow))
        .collect::<Result<Vec<u64>, _>>()?;
    elements.sort_unstable();
    elements.dedup();
    let n = 2 * w as u64 + 1;
    Ok(Encoded { spec: collinearity_spec(), instance: LSInstance::new(n, 2, elements)? })
}

/// Whether three distinct points lie on a line.
pub fn collinearity_direct(input: &PointSetInput) -> bool {
    let mut pts: Vec<(i128, i128)> = input.points.iter().map(|&(x, y)| (x as i128, y as i128)).collect();
    pts.sort_unstable();
    pts.dedup();
    let n = pts.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| collinear(pts[i], pts[j], pts[k]))))
}
