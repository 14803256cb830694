use std::fmt;
use std::str::FromStr;

use super::ExpError;

/// Largest supported dimension; rows are stored as `u32` bitmasks.
pub const MAX_DIM: usize = 30;

/// Square 0/1 matrix, read as a bipartite graph with left vertex `u`
/// adjacent to right vertex `v` when entry `(u, v)` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self, ExpError> {
        let n = rows.len();
        if n > MAX_DIM {
            return Err(ExpError::TooLarge { what: "matrix dimension", size: n, cap: MAX_DIM });
        }
        let mut masks = Vec::with_capacity(n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ExpError::InvalidInput(format!("row {u} has {} entries, expected {n}", row.len())));
            }
            let mut mask = 0u32;
            for (v, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => mask |= 1 << v,
                    _ => return Err(ExpError::InvalidInput(format!("entry ({u}, {v}) = {x} is not binary"))),
                }
            }
            masks.push(mask);
        }
        Ok(BinaryMatrix { n, rows: masks })
    }

    pub fn from_masks(n: usize, rows: Vec<u32>) -> Result<Self, ExpError> {
        if n > MAX_DIM {
            return Err(ExpError::TooLarge { what: "matrix dimension", size: n, cap: MAX_DIM });
        }
        let full = full_mask(n);
        if rows.len() != n || rows.iter().any(|r| r & !full != 0) {
            return Err(ExpError::InvalidInput("row masks do not fit an n x n matrix".into()));
        }
        Ok(BinaryMatrix { n, rows })
    }

    pub fn identity(n: usize) -> Self {
        BinaryMatrix { n, rows: (0..n).map(|i| 1 << i).collect() }
    }

    pub fn ones(n: usize) -> Self {
        BinaryMatrix { n, rows: vec![full_mask(n); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Right neighbours of left vertex `u`.
    pub fn row(&self, u: usize) -> u32 {
        self.rows[u]
    }

    pub fn full(&self) -> u32 {
        full_mask(self.n)
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl FromStr for BinaryMatrix {
    type Err = ExpError;

    /// One line of `0`/`1` characters per row; blank lines are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(ExpError::InvalidInput(format!("unexpected character {c:?}"))),
                    })
                    .collect::<Result<Vec<u8>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        BinaryMatrix::from_rows(rows)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in 0..self.n {
            let line: String = (0..self.n).map(|v| if self.get(u, v) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m: BinaryMatrix = "110\n011\n101\n".parse().unwrap();
        assert!(m.get(0, 1) && !m.get(0, 2));
        assert_eq!(m.to_string().parse::<BinaryMatrix>().unwrap(), m);
    }

    #[test]
    fn rejects_bad_text() {
        assert!("12\n01".parse::<BinaryMatrix>().is_err());
        assert!("10\n0".parse::<BinaryMatrix>().is_err());
    }
}
