use std::collections::HashMap;

use super::setfamily::SetFamily;
use super::{binomial, ensure, ExpError};

pub const BRUTE_FAMILY_CAP: usize = 20;
pub const Z_UNIVERSE_CAP: usize = 20;
pub const TRACE_UNIVERSE_CAP: usize = 12;

/// Number of `k`-element index subsets that partition `[n]`.
pub fn setpartition_brute(f: &SetFamily, k: usize) -> Result<u128, ExpError> {
    ensure("family size", f.len(), BRUTE_FAMILY_CAP)?;
    fn go(sets: &[u32], full: u32, k: usize, used: u32) -> u128 {
        if k == 0 {
            return (used == full) as u128;
        }
        let mut total = 0;
        for (i, &s) in sets.iter().enumerate() {
            if s & used == 0 {
                total += go(&sets[i + 1..], full, k - 1, used | s);
            }
        }
        total
    }
    Ok(go(f.sets(), f.universe(), k, 0))
}

/// Partition counts of subsets of a fixed set into nonempty family
/// members whose minimum is below a bound, indexed by number of parts.
struct ZTable<'a> {
    sets: &'a [u32],
    memo: HashMap<(u32, u32), Vec<u128>>,
}

impl<'a> ZTable<'a> {
    fn new(sets: &'a [u32]) -> Self {
        ZTable { sets, memo: HashMap::new() }
    }

    /// Entry `t` counts partitions of `x` into `t` sets, each with minimum
    /// bit below `bound`.
    fn counts(&mut self, x: u32, bound: u32) -> Vec<u128> {
        if x == 0 {
            return vec![1];
        }
        if let Some(v) = self.memo.get(&(x, bound)) {
            return v.clone();
        }
        let low = x.trailing_zeros();
        let mut out = vec![0u128];
        if low < bound {
            let pivot = 1u32 << low;
            for i in 0..self.sets.len() {
                let s = self.sets[i];
                if s & pivot != 0 && s & !x == 0 {
                    let rest = self.counts(x & !s, bound);
                    if out.len() < rest.len() + 1 {
                        out.resize(rest.len() + 1, 0);
                    }
                    for (t, c) in rest.iter().enumerate() {
                        out[t + 1] += c;
                    }
                }
            }
        }
        self.memo.insert((x, bound), out.clone());
        out
    }
}

/// Number of `parts`-element index subsets of `f` partitioning `a`, each
/// used set having its minimum below `min(b)`.
pub fn z_var_dp(f: &SetFamily, a: u32, b: u32, parts: usize) -> Result<u128, ExpError> {
    ensure("partitioned set", a.count_ones() as usize, Z_UNIVERSE_CAP)?;
    if b == 0 {
        return Err(ExpError::InvalidInput("bounding set must be nonempty".into()));
    }
    let mut table = ZTable::new(f.sets());
    Ok(table.counts(a, b.trailing_zeros()).get(parts).copied().unwrap_or(0))
}

/// Block decomposition of a partition: sets are sorted by minimum and
/// split greedily into runs `A_j` closed by the first set `B_j` that
/// pushes the run above `n / theta` elements; the rest is the remainder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    /// `(A_j, B_j)` in order.
    pub blocks: Vec<(u32, u32)>,
    pub remainder: u32,
}

fn fits(size: usize, n: usize, theta: usize) -> bool {
    size * theta <= n
}

/// Decomposition of the partition given by family indices `chosen`.
pub fn partition_decomposition(f: &SetFamily, chosen: &[usize], theta: usize) -> Decomposition {
    let n = f.n();
    let mut sets: Vec<u32> = chosen.iter().map(|&i| f.sets()[i]).filter(|&s| s != 0).collect();
    sets.sort_by_key(|s| s.trailing_zeros());
    let mut blocks = Vec::new();
    let mut run = 0u32;
    for s in sets {
        if fits((run | s).count_ones() as usize, n, theta) {
            run |= s;
        } else {
            blocks.push((run, s));
            run = 0;
        }
    }
    Decomposition { blocks, remainder: run }
}

fn check_partition_input(f: &SetFamily, theta: usize) -> Result<(), ExpError> {
    ensure("universe", f.n(), TRACE_UNIVERSE_CAP)?;
    if theta == 0 {
        return Err(ExpError::InvalidInput("theta must be positive".into()));
    }
    let limit = f.n() / (2 * theta);
    if let Some(s) = f.sets().iter().find(|s| s.count_ones() as usize > limit) {
        return Err(ExpError::PreconditionViolated(format!(
            "set of size {} exceeds n/(2 theta) = {limit}",
            s.count_ones()
        )));
    }
    Ok(())
}

fn convolve(a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(acc: &mut Vec<u128>, v: &[u128]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), 0);
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a += x;
    }
}

type Visitor<'v> = &'v mut dyn FnMut(&Decomposition, &[u128]);

struct Enumerator<'a, 'v> {
    n: usize,
    theta: usize,
    full: u32,
    /// Distinct nonempty sets with their multiplicity.
    distinct: Vec<(u32, u128)>,
    z: ZTable<'a>,
    total: Vec<u128>,
    visit: Option<Visitor<'v>>,
}

impl Enumerator<'_, '_> {
    /// Extends a decomposition covering `used`, whose last closing set has
    /// minimum bit `prev` (or none yet); `acc[t]` counts choices of `t`
    /// nonempty sets so far.
    fn go(&mut self, used: u32, prev: Option<u32>, acc: Vec<u128>, path: &mut Vec<(u32, u32)>) {
        let floor = prev.map_or(0, |p| p + 1);
        let below = (1u32 << floor) - 1;
        if self.full & below & !used != 0 {
            return;
        }
        let free = self.full & !used;
        // Close with a remainder of at most n / theta elements.
        if fits(free.count_ones() as usize, self.n, self.theta) {
            let r = self.z.counts(free, u32::MAX);
            let v = convolve(&acc, &r);
            if let Some(visit) = self.visit.as_mut() {
                visit(&Decomposition { blocks: path.clone(), remainder: free }, &v);
            }
            add_into(&mut self.total, &v);
        }
        for idx in 0..self.distinct.len() {
            let (b, mult) = self.distinct[idx];
            let bmin = b.trailing_zeros();
            if b & used != 0 || bmin < floor {
                continue;
            }
            let rest = free & !b;
            let bsize = b.count_ones() as usize;
            // A ranges over subsets of rest with elements above the floor.
            let candidates = rest & !below;
            let mut a = candidates;
            loop {
                let asize = a.count_ones() as usize;
                if fits(asize, self.n, self.theta) && !fits(asize + bsize, self.n, self.theta) {
                    let za = self.z.counts(a, bmin);
                    if za.iter().any(|&c| c > 0) {
                        let mut block = vec![0u128];
                        block.extend(za.iter().map(|&c| c * mult));
                        let next = convolve(&acc, &block);
                        path.push((a, b));
                        self.go(used | a | b, Some(bmin), next, path);
                        path.pop();
                    }
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & candidates;
            }
        }
    }
}

fn run(f: &SetFamily, theta: usize, visit: Option<Visitor<'_>>) -> Result<Vec<u128>, ExpError> {
    check_partition_input(f, theta)?;
    let mut distinct: Vec<(u32, u128)> = Vec::new();
    for &s in f.sets().iter().filter(|&&s| s != 0) {
        match distinct.iter_mut().find(|(t, _)| *t == s) {
            Some(entry) => entry.1 += 1,
            None => distinct.push((s, 1)),
        }
    }
    distinct.sort_unstable();
    let mut e =
        Enumerator { n: f.n(), theta, full: f.universe(), distinct, z: ZTable::new(f.sets()), total: vec![0], visit };
    e.go(0, None, vec![1], &mut Vec::new());
    Ok(e.total)
}

/// Partition counts for every `k` at once: entry `k` is the number of
/// `k`-element index subsets of `f` partitioning `[n]`, for `k` up to the
/// family size.
pub fn setpartition_counts(f: &SetFamily, theta: usize) -> Result<Vec<u128>, ExpError> {
    let nonempty = run(f, theta, None)?;
    let e = f.num_empty() as u64;
    Ok((0..=f.len())
        .map(|k| {
            nonempty.iter().enumerate().filter(|&(t, _)| t <= k).map(|(t, &c)| c * binomial(e, (k - t) as u64)).sum()
        })
        .collect())
}

/// Number of `k`-element index subsets of `f` partitioning `[n]`, summed
/// over block decompositions.
pub fn setpartition_via_traces(f: &SetFamily, k: usize, theta: usize) -> Result<u128, ExpError> {
    Ok(setpartition_counts(f, theta)?.get(k).copied().unwrap_or(0))
}

/// Calls `visit` with every decomposition and its count vector over the
/// number of nonempty sets.
pub fn for_each_decomposition(
    f: &SetFamily,
    theta: usize,
    visit: &mut dyn FnMut(&Decomposition, &[u128]),
) -> Result<(), ExpError> {
    run(f, theta, Some(visit)).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expalgos::bits;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, &lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    pub(crate) fn random_family(rng: &mut ChaCha8Rng, n: usize, max_size: usize, count: usize) -> SetFamily {
        let sets = (0..count)
            .map(|_| {
                let size = rng.gen_range(0..=max_size.min(n));
                if n == 0 {
                    return 0;
                }
                let mut s = 0u32;
                while (s.count_ones() as usize) < size {
                    s |= 1 << rng.gen_range(0..n);
                }
                s
            })
            .collect();
        SetFamily::new(n, sets).unwrap()
    }

    #[test]
    fn brute_examples() {
        assert_eq!(setpartition_brute(&family(2, &[&[1], &[2]]), 2).unwrap(), 1);
        assert_eq!(setpartition_brute(&family(2, &[&[1, 2]]), 1).unwrap(), 1);
        assert_eq!(setpartition_brute(&family(2, &[&[1], &[1], &[2]]), 2).unwrap(), 2);
    }

    #[test]
    fn z_examples() {
        let f = family(4, &[&[1], &[2], &[1, 2], &[3]]);
        assert_eq!(z_var_dp(&f, 0, 0b1000, 0).unwrap(), 1);
        assert_eq!(z_var_dp(&f, 0, 0b1000, 1).unwrap(), 0);
        assert_eq!(z_var_dp(&f, 0b011, 0b1000, 1).unwrap(), 1);
        assert_eq!(z_var_dp(&f, 0b011, 0b1000, 2).unwrap(), 1);
        // {2} has minimum 2, not below min{2}
        assert_eq!(z_var_dp(&f, 0b011, 0b0010, 2).unwrap(), 0);
    }

    #[test]
    fn z_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let count = rng.gen_range(1..=8);
            let f = random_family(&mut rng, 6, 3, count);
            let a = rng.gen::<u32>() & f.universe();
            let b = (rng.gen::<u32>() & f.universe()).max(1);
            let parts = rng.gen_range(0..=4);
            let bmin = b.trailing_zeros();
            let mut want = 0;
            for pick in 0u32..1 << f.len() {
                if pick.count_ones() as usize != parts {
                    continue;
                }
                let chosen: Vec<u32> = bits(pick).map(|i| f.sets()[i]).collect();
                let union = chosen.iter().fold(0, |m, s| m | s);
                let disjoint = chosen.iter().map(|s| s.count_ones()).sum::<u32>() == union.count_ones();
                let ok = union == a && disjoint && chosen.iter().all(|&s| s != 0 && s.trailing_zeros() < bmin);
                want += ok as u128;
            }
            assert_eq!(z_var_dp(&f, a, b, parts).unwrap(), want);
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(setpartition_via_traces(&family(2, &[&[1], &[2]]), 2, 1).unwrap(), 1);
        let empties = family(0, &[&[], &[], &[]]);
        for k in 0..=3 {
            assert_eq!(setpartition_via_traces(&empties, k, 1).unwrap(), binomial(3, k as u64));
        }
        let big = family(4, &[&[1, 2, 3]]);
        assert!(matches!(setpartition_via_traces(&big, 1, 1), Err(ExpError::PreconditionViolated(_))));
    }

    #[test]
    fn traces_match_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..80 {
            let theta = rng.gen_range(1..=2);
            let n = rng.gen_range(0..=8);
            let count = rng.gen_range(0..=12);
            let f = random_family(&mut rng, n, n / (2 * theta), count);
            let counts = setpartition_counts(&f, theta).unwrap();
            for (k, &c) in counts.iter().enumerate() {
                assert_eq!(c, setpartition_brute(&f, k).unwrap(), "k = {k}, {f:?}");
            }
        }
    }

    #[test]
    fn decomposition_is_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let theta = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=6);
            let count = rng.gen_range(1..=9);
            let f = random_family(&mut rng, n, n / (2 * theta), count);
            let mut listed: HashMap<(Decomposition, usize), u128> = HashMap::new();
            for_each_decomposition(&f, theta, &mut |d, counts| {
                for (t, &c) in counts.iter().enumerate().filter(|&(_, &c)| c > 0) {
                    let slot = listed.entry((d.clone(), t)).or_default();
                    assert_eq!(*slot, 0, "decomposition listed twice");
                    *slot = c;
                }
            })
            .unwrap();
            let mut found: HashMap<(Decomposition, usize), u128> = HashMap::new();
            for pick in 0u32..1 << f.len() {
                let chosen: Vec<usize> = bits(pick).filter(|&i| f.sets()[i] != 0).collect();
                if chosen.len() != pick.count_ones() as usize {
                    continue;
                }
                let union = chosen.iter().fold(0, |m, &i| m | f.sets()[i]);
                let size: u32 = chosen.iter().map(|&i| f.sets()[i].count_ones()).sum();
                if union != f.universe() || size != union.count_ones() {
                    continue;
                }
                let d = partition_decomposition(&f, &chosen, theta);
                *found.entry((d, chosen.len())).or_default() += 1;
            }
            assert_eq!(listed, found);
        }
    }
}
