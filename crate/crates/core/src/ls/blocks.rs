//! Block-wise comparison variables `x^c_{i,q,a}`.
//!
//! Every code `v` is stored as `v - 1` in `theta * L` bits and split into
//! `theta` blocks of `L` bits, most significant first. Row `i` of the table
//! describes the `i`-th sorted element; rows `0` and `m + 1` are sentinels.
//! The lower sentinel sits below every code. The upper one sits strictly
//! between `n^r` and `n^r + 1`, so it is never equal to a candidate and is
//! greater than exactly the codes in `[1, n^r]`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::spec::{LSInstance, LSProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl Comparison {
    pub const ALL: [Comparison; 3] = [Comparison::Less, Comparison::Equal, Comparison::Greater];

    /// Position of this comparison in the variable layout.
    pub fn index(self) -> usize {
        match self {
            Comparison::Less => 0,
            Comparison::Equal => 1,
            Comparison::Greater => 2,
        }
    }

    pub fn of<T: Ord>(left: T, right: T) -> Comparison {
        match left.cmp(&right) {
            std::cmp::Ordering::Less => Comparison::Less,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Greater,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Comparison::Less => '<',
            Comparison::Equal => '=',
            Comparison::Greater => '>',
        }
    }
}

/// Overall comparison implied by block-wise outcomes: the first non-equal
/// block decides.
pub fn combine(tuple: &[Comparison]) -> Comparison {
    tuple.iter().copied().find(|&c| c != Comparison::Equal).unwrap_or(Comparison::Equal)
}

/// The three sets of block-outcome tuples that imply `=`, `<` and `>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonSets {
    pub equal: Vec<Vec<Comparison>>,
    pub less: Vec<Vec<Comparison>>,
    pub greater: Vec<Vec<Comparison>>,
}

impl ComparisonSets {
    pub fn get(&self, c: Comparison) -> &[Vec<Comparison>] {
        match c {
            Comparison::Less => &self.less,
            Comparison::Equal => &self.equal,
            Comparison::Greater => &self.greater,
        }
    }
}

pub fn comparison_tuple_sets(theta: u32) -> ComparisonSets {
    let theta = theta as usize;
    let equal = vec![vec![Comparison::Equal; theta]];
    let mut less = Vec::new();
    for q in 0..theta {
        for tail in all_tuples(theta - q - 1) {
            let mut t = vec![Comparison::Equal; q];
            t.push(Comparison::Less);
            t.extend(tail);
            less.push(t);
        }
    }
    let greater = all_tuples(theta).into_iter().filter(|t| !equal.contains(t) && !less.contains(t)).collect();
    ComparisonSets { equal, less, greater }
}

fn all_tuples(len: usize) -> Vec<Vec<Comparison>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                Comparison::ALL.iter().map(move |&c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// `ceil(log2 s)` for `s >= 1`.
pub fn ceil_log2(s: u64) -> u32 {
    if s <= 1 {
        0
    } else {
        64 - (s - 1).leading_zeros()
    }
}

/// Block length `L = ceil(r * ceil(log2 s) / theta)`.
pub fn block_len(s: u64, r: u32, theta: u32) -> u32 {
    (r * ceil_log2(s)).div_ceil(theta)
}

/// Number of table variables `3 (s + 1) theta 2^L`.
pub fn variable_count(s: u64, r: u32, theta: u32) -> u128 {
    3 * (s as u128 + 1) * theta as u128 * (1u128 << block_len(s, r, theta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Row {
    Below,
    Value(Vec<u64>),
    Above(Vec<u64>),
}

/// The 0/1 table of a single instance. Entries are computed on demand from
/// the block decomposition of each sorted element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockVariableAssignment {
    theta: u32,
    block_len: u32,
    s: u64,
    r: u32,
    instance: LSInstance,
    rows: Vec<Row>,
}

pub fn compute_assignment(spec: &LSProblemSpec, inst: &LSInstance, theta: u32) -> BlockVariableAssignment {
    BlockVariableAssignment::new(inst.clone(), spec.r(), theta)
}

fn split_blocks(v: u64, theta: u32, block_len: u32) -> Vec<u64> {
    let mask = (1u128 << block_len) - 1;
    (1..=theta).map(|q| ((v as u128 >> ((theta - q) * block_len)) & mask) as u64).collect()
}

impl BlockVariableAssignment {
    pub fn new(instance: LSInstance, r: u32, theta: u32) -> Self {
        assert!(theta >= 1, "theta must be positive");
        let s = instance.size();
        let block_len = block_len(s, r, theta);
        let mut rows = Vec::with_capacity(instance.m() + 2);
        rows.push(Row::Below);
        for &e in instance.elements() {
            rows.push(Row::Value(split_blocks(e - 1, theta, block_len)));
        }
        rows.push(Row::Above(split_blocks(instance.universe() - 1, theta, block_len)));
        BlockVariableAssignment { theta, block_len, s, r, instance, rows }
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    pub fn block_len(&self) -> u32 {
        self.block_len
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn instance(&self) -> &LSInstance {
        &self.instance
    }

    pub fn num_variables(&self) -> u128 {
        variable_count(self.s, self.r, self.theta)
    }

    /// Number of candidate values per block, `2^L`.
    pub fn block_range(&self) -> u64 {
        1u64 << self.block_len
    }

    /// Outcome of comparing block `q` (1-based) of row `i` against `a`, or
    /// `None` if the row is inactive (`i > m + 1`).
    pub fn comparison(&self, i: usize, q: u32, a: u64) -> Option<Comparison> {
        assert!((1..=self.theta).contains(&q), "block index {q} outside [1, {}]", self.theta);
        match self.rows.get(i)? {
            Row::Below => Some(if q == 1 { Comparison::Less } else { Comparison::Equal }),
            Row::Value(blocks) => Some(Comparison::of(blocks[q as usize - 1], a)),
            Row::Above(blocks) => {
                let b = blocks[q as usize - 1];
                Some(if q < self.theta {
                    Comparison::of(b, a)
                } else if a <= b {
                    Comparison::Greater
                } else {
                    Comparison::Less
                })
            }
        }
    }

    pub fn get(&self, c: Comparison, i: usize, q: u32, a: u64) -> bool {
        self.comparison(i, q, a) == Some(c)
    }

    /// Flat variable index of `x^c_{i,q,a}`.
    pub fn index(&self, c: Comparison, i: usize, q: u32, a: u64) -> usize {
        variable_index(self.theta, self.block_len, c, i, q, a)
    }

    /// Value of the variable with flat index `idx`.
    pub fn value(&self, idx: usize) -> bool {
        let c = Comparison::ALL[idx % 3];
        let rest = idx / 3;
        let a = (rest % (1usize << self.block_len)) as u64;
        let rest = rest >> self.block_len;
        let q = (rest % self.theta as usize) as u32 + 1;
        let i = rest / self.theta as usize;
        self.get(c, i, q, a)
    }

    /// Materializes the whole table in flat index order.
    pub fn to_values(&self) -> Vec<BigInt> {
        let len = usize::try_from(self.num_variables()).expect("table fits in memory");
        (0..len).map(|idx| BigInt::from(self.value(idx) as u8)).collect()
    }

    pub fn max_magnitude(&self) -> BigUint {
        BigUint::one()
    }
}

/// `((i * theta + (q - 1)) * 2^L + a) * 3 + c`.
pub fn variable_index(theta: u32, block_len: u32, c: Comparison, i: usize, q: u32, a: u64) -> usize {
    (((i * theta as usize + (q as usize - 1)) << block_len) + a as usize) * 3 + c.index()
}
