#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use polyoracle::circuit::{ArithmeticCircuit, CircuitBuilder, Gate};
use polyoracle::expalgos::{BinaryMatrix, SetFamily};
use polyoracle::poly::SparsePolynomial;

pub fn random_poly(rng: &mut ChaCha8Rng, nv: usize, max_terms: usize, max_deg: u32, coeff: i64) -> SparsePolynomial {
    let terms = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let deg = rng.gen_range(0..=max_deg);
            let powers = (0..deg).map(|_| (rng.gen_range(0..nv), 1)).collect::<Vec<_>>();
            (BigInt::from(rng.gen_range(-coeff..=coeff)), powers)
        })
        .collect::<Vec<_>>();
    SparsePolynomial::from_terms(nv, terms).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, nv: usize, rho: i64) -> Vec<BigInt> {
    (0..nv).map(|_| BigInt::from(rng.gen_range(-rho..=rho))).collect()
}

/// Random circuit whose polynomial has degree at most `max_deg`.
pub fn random_circuit(rng: &mut ChaCha8Rng, nv: usize, ops: usize, max_deg: u32) -> ArithmeticCircuit {
    let mut b = CircuitBuilder::new(nv);
    let mut deg: Vec<u32> = vec![1; nv];
    for i in 0..nv {
        b.input(i);
    }
    for _ in 0..2 {
        b.constant(rng.gen_range(-3..=3));
    }
    deg.extend([0, 0]);
    for _ in 0..ops {
        let l = rng.gen_range(0..deg.len());
        let r = rng.gen_range(0..deg.len());
        if rng.gen_bool(0.5) && deg[l] + deg[r] <= max_deg {
            b.mul(l, r);
            deg.push(deg[l] + deg[r]);
        } else {
            b.add(l, r);
            deg.push(deg[l].max(deg[r]));
        }
    }
    let out = deg.len() - 1;
    b.build(out).unwrap()
}

/// Terms of `p` of total degree at most `delta`.
pub fn truncate(p: &SparsePolynomial, delta: u32) -> SparsePolynomial {
    let terms = p
        .terms()
        .iter()
        .filter(|t| t.powers().iter().map(|&(_, e)| e).sum::<u32>() <= delta)
        .map(|t| (t.coeff().clone(), t.powers().to_vec()))
        .collect::<Vec<_>>();
    SparsePolynomial::from_terms(p.num_vars(), terms).unwrap()
}

/// A single-gate change of `c` whose polynomial differs from that of `c`
/// in some term of degree at most `delta`, confirmed by expanding both.
pub fn semantic_mutation(rng: &mut ChaCha8Rng, c: &ArithmeticCircuit, delta: u32) -> Option<ArithmeticCircuit> {
    let want = truncate(&c.expand(1 << 20).ok()?, delta);
    for _ in 0..50 {
        let mut gates = c.gates().to_vec();
        let g = rng.gen_range(0..gates.len());
        gates[g] = match &gates[g] {
            Gate::Input { i } => Gate::Input { i: (i + 1) % c.num_inputs() },
            Gate::Const { v } => Gate::Const { v: v + BigInt::from(rng.gen_range(1..=3)) },
            Gate::Add { l, r } => Gate::Mul { l: *l, r: *r },
            Gate::Mul { l, r } => Gate::Add { l: *l, r: *r },
        };
        let m = ArithmeticCircuit::new(c.num_inputs(), gates, c.output()).ok()?;
        if truncate(&m.expand(1 << 20).ok()?, delta) != want {
            return Some(m);
        }
    }
    None
}

/// Trial division.
pub fn naive_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, p: f64) -> BinaryMatrix {
    BinaryMatrix::from_rows((0..n).map(|_| (0..n).map(|_| rng.gen_bool(p) as u8).collect()).collect()).unwrap()
}

/// Ryser's inclusion-exclusion formula.
pub fn ryser(a: &BinaryMatrix) -> i128 {
    let n = a.n();
    let mut total = 0i128;
    for cols in 1u32..1 << n {
        let mut prod = 1i128;
        for u in 0..n {
            prod *= (0..n).filter(|&v| cols >> v & 1 == 1 && a.get(u, v)).count() as i128;
        }
        let sign = if (n - cols.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * prod;
    }
    if n == 0 {
        1
    } else {
        total
    }
}

pub fn random_family(rng: &mut ChaCha8Rng, n: usize, max_size: usize, count: usize, allow_empty: bool) -> SetFamily {
    let sets = (0..count)
        .map(|_| {
            let lo = if allow_empty || n == 0 { 0 } else { 1 };
            let size = rng.gen_range(lo..=max_size.min(n).max(lo));
            let mut s = 0u32;
            while (s.count_ones() as usize) < size {
                s |= 1 << rng.gen_range(0..n);
            }
            s
        })
        .collect();
    SetFamily::new(n, sets).unwrap()
}

/// Index subsets of size `k` with union `[n]` covering `[m]` exactly once.
pub fn hcv_naive(f: &SetFamily, n: usize, m: usize, k: usize) -> u128 {
    let mut count = 0;
    for pick in 0u64..1 << f.len() {
        if pick.count_ones() as usize != k {
            continue;
        }
        let chosen: Vec<u32> = (0..f.len()).filter(|i| pick >> i & 1 == 1).map(|i| f.sets()[i]).collect();
        let covers = (1..=n).all(|x| chosen.iter().any(|s| s >> (x - 1) & 1 == 1));
        let once = (1..=m).all(|x| chosen.iter().filter(|s| *s >> (x - 1) & 1 == 1).count() == 1);
        count += (covers && once) as u128;
    }
    count
}

pub fn partition_naive(f: &SetFamily, k: usize) -> u128 {
    hcv_naive(f, f.n(), f.n(), k)
}

pub fn min_cover_naive(f: &SetFamily) -> Option<usize> {
    (0..=f.len()).find(|&k| {
        (0u64..1 << f.len()).any(|pick| {
            pick.count_ones() as usize == k
                && (1..=f.n()).all(|x| (0..f.len()).any(|i| pick >> i & 1 == 1 && f.sets()[i] >> (x - 1) & 1 == 1))
        })
    })
}

fn preset_edges(name: &str) -> (usize, Vec<(usize, usize)>) {
    match name {
        "edge" => (2, vec![(0, 1)]),
        "path3" => (3, vec![(0, 1), (1, 2)]),
        "triangle" => (3, vec![(0, 1), (1, 2), (0, 2)]),
        "c4" => (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
        "k4" => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        other => panic!("unknown preset {other}"),
    }
}

struct NaturalGraph {
    n: usize,
    w: Vec<Vec<Option<i64>>>,
    vw: Vec<i64>,
}

fn natural_graph(v: &serde_json::Value) -> NaturalGraph {
    let n = v["n"].as_u64().unwrap() as usize;
    let mut w = vec![vec![None; n + 1]; n + 1];
    for e in v["edges"].as_array().unwrap() {
        let e: Vec<i64> = e.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        let (a, b) = (e[0] as usize, e[1] as usize);
        let wt = e.get(2).copied().unwrap_or(0);
        w[a][b] = Some(wt);
        w[b][a] = Some(wt);
    }
    let mut vw = vec![0; n + 1];
    if let Some(ws) = v.get("vertex_weights").and_then(|x| x.as_array()) {
        for (i, x) in ws.iter().enumerate() {
            vw[i + 1] = x.as_i64().unwrap();
        }
    }
    NaturalGraph { n, w, vw }
}

/// Injective maps from pattern vertices into the graph that preserve
/// adjacency and non-adjacency; calls `hit` with each image.
fn induced_maps(g: &NaturalGraph, h: usize, edges: &[(usize, usize)], hit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let adj = |x: usize, y: usize| edges.iter().any(|&(a, b)| (a, b) == (x, y) || (a, b) == (y, x));
    fn go(
        g: &NaturalGraph,
        h: usize,
        adj: &dyn Fn(usize, usize) -> bool,
        img: &mut Vec<usize>,
        hit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if img.len() == h {
            return hit(img);
        }
        for v in 1..=g.n {
            if img.contains(&v) {
                continue;
            }
            let x = img.len();
            if (0..x).all(|y| adj(x, y) == g.w[v][img[y]].is_some()) {
                img.push(v);
                if go(g, h, adj, img, hit) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    go(g, h, &adj, &mut Vec::new(), hit)
}

fn pattern_of(v: &serde_json::Value) -> (usize, Vec<(usize, usize)>) {
    match v {
        serde_json::Value::String(s) => preset_edges(s),
        other => {
            let n = other["n"].as_u64().unwrap() as usize;
            let edges = other["edges"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| (e[0].as_u64().unwrap() as usize - 1, e[1].as_u64().unwrap() as usize - 1))
                .collect();
            (n, edges)
        }
    }
}

/// Independent answer for a natural input of the named problem.
pub fn natural_answer(problem: &str, json: &str) -> bool {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    match problem {
        "ksum" => {
            let sets: Vec<Vec<i64>> = serde_json::from_value(v["sets"].clone()).unwrap();
            sets[0].iter().any(|a| sets[1].iter().any(|b| sets[2].iter().any(|c| a + b + c == 0)))
        }
        "collinearity" => {
            let mut pts: Vec<(i64, i64)> = serde_json::from_value(v["points"].clone()).unwrap();
            pts.sort();
            pts.dedup();
            let n = pts.len();
            (0..n).any(|i| {
                (i + 1..n).any(|j| {
                    (j + 1..n).any(|k| {
                        let (a, b, c) = (pts[i], pts[j], pts[k]);
                        (b.0 - a.0) * (c.1 - a.1) == (c.0 - a.0) * (b.1 - a.1)
                    })
                })
            })
        }
        "triangle" | "induced-c4" | "h-induced" => {
            let g = natural_graph(&v);
            let (h, e) = match problem {
                "triangle" => preset_edges("triangle"),
                "induced-c4" => preset_edges("c4"),
                _ => pattern_of(&v["H"]),
            };
            induced_maps(&g, h, &e, &mut |_| true)
        }
        "family-induced" => {
            let g = natural_graph(&v);
            v["family"].as_array().unwrap().iter().any(|p| {
                let (h, e) = pattern_of(p);
                induced_maps(&g, h, &e, &mut |_| true)
            })
        }
        "min-weight-clique" => {
            let g = natural_graph(&v);
            let k = v["k"].as_u64().unwrap() as usize;
            let thr = v["threshold"].as_i64().unwrap();
            let full: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
            induced_maps(&g, k, &full, &mut |img| {
                full.iter().map(|&(a, b)| g.w[img[a]][img[b]].unwrap()).sum::<i64>() <= thr
            })
        }
        "max-h-edge" | "max-h-vertex" => {
            let g = natural_graph(&v);
            let (h, e) = pattern_of(&v["H"]);
            let thr = v["threshold"].as_i64().unwrap();
            let edge_mode = problem == "max-h-edge";
            induced_maps(&g, h, &e, &mut |img| {
                let total: i64 = if edge_mode {
                    e.iter().map(|&(a, b)| g.w[img[a]][img[b]].unwrap()).sum()
                } else {
                    img.iter().map(|&x| g.vw[x]).sum()
                };
                total >= thr
            })
        }
        other => panic!("unknown problem {other}"),
    }
}

/// Edge-respecting maps from rows to columns, every one enumerated, with
/// column `v` hit exactly once if in `eq1`, never if in `eq0`, and at
/// least once if in `ge1`.
pub fn mapping_count(a: &BinaryMatrix, eq1: u32, eq0: u32, ge1: u32) -> u128 {
    let n = a.n();
    let mut count = 0;
    for mut idx in 0..n.pow(n as u32) {
        let mut hits = vec![0usize; n];
        let mut ok = true;
        for u in 0..n {
            let v = idx % n;
            idx /= n;
            ok &= a.get(u, v);
            hits[v] += 1;
        }
        ok &= (0..n).all(|v| {
            let bit = 1u32 << v;
            (eq1 & bit == 0 || hits[v] == 1) && (eq0 & bit == 0 || hits[v] == 0) && (ge1 & bit == 0 || hits[v] >= 1)
        });
        count += ok as u128;
    }
    if n == 0 {
        1
    } else {
        count
    }
}
