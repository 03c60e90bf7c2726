//! Instance suites and brute-force helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabilkit_core::generators::named;
use stabilkit_core::{gen_factor_critical, gen_random, Graph};

/// Number of connected graphs on `n` unlabelled vertices, `n = 0..=8`.
pub const CONNECTED_COUNTS: [usize; 9] = [0, 1, 1, 2, 6, 21, 112, 853, 11117];

fn bit(i: usize, j: usize) -> u64 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    1u64 << (a * 8 + b)
}

/// Canonical code: colour refinement, then the smallest adjacency code over
/// all orderings that respect the refined colour classes.
fn canonical_code(n: usize, adj: &[u16]) -> u64 {
    let mut colour: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let ranks: Vec<&(usize, Vec<usize>)> = sigs.iter().sorted().dedup().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranks.binary_search(&s).unwrap()).collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if ranks.len() == before {
            break;
        }
    }
    let classes = colour.iter().copied().collect::<BTreeSet<_>>();
    let cells: Vec<Vec<usize>> =
        classes.iter().map(|&c| (0..n).filter(|&v| colour[v] == c).collect()).collect();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u] >> v & 1 == 1).collect();
    let mut best = u64::MAX;
    let mut pos = vec![0usize; n];
    for choice in cells.iter().map(|c| c.iter().copied().permutations(c.len())).multi_cartesian_product() {
        let mut p = 0;
        for cell in &choice {
            for &v in cell {
                pos[v] = p;
                p += 1;
            }
        }
        let code = edges.iter().fold(0u64, |acc, &(u, v)| acc | bit(pos[u], pos[v]));
        best = best.min(code);
    }
    if cells.is_empty() {
        0
    } else {
        best
    }
}

fn decode(n: usize, code: u64) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| code & bit(u, v) != 0);
    Graph::from_edges_dedup(n, edges)
}

/// All connected graphs on `n ≤ 8` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for size in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let mut adj = vec![0u16; size];
            for u in 0..size - 1 {
                for v in u + 1..size - 1 {
                    if code & bit(u, v) != 0 {
                        adj[u] |= 1 << v;
                        adj[v] |= 1 << u;
                    }
                }
            }
            for mask in 1u16..1 << (size - 1) {
                let mut a = adj.clone();
                a[size - 1] = mask;
                for (u, row) in a.iter_mut().enumerate().take(size - 1) {
                    if mask >> u & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                next.insert(canonical_code(size, &a));
            }
        }
        level = next;
    }
    level.into_iter().map(|code| decode(n, code)).collect()
}

pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// `count` seeded random graphs with `1 ≤ n ≤ max_n` and edge probability
/// drawn from {1/4, 1/3, 1/2, 2/3}.
pub fn random_suite(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probs = [(1, 4), (1, 3), (1, 2), (2, 3)];
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let (num, den) = probs[rng.gen_range(0..probs.len())];
            gen_random(n, num, den, rng.gen()).unwrap()
        })
        .collect()
}

/// `count` factor-critical graphs with at most `max_n` vertices.
pub fn factor_critical_suite(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let first = 2 * rng.gen_range(1..=3) + 1;
        let mut ears = vec![first];
        let mut n = first;
        while rng.gen_range(0..3) != 0 {
            let len = 2 * rng.gen_range(0..=3) + 1;
            if n + len - 1 > max_n {
                break;
            }
            ears.push(len);
            n += len - 1;
        }
        if let Ok(g) = gen_factor_critical(&ears, rng.gen()) {
            out.push(g);
        }
    }
    out
}

pub fn named_suite() -> Vec<(&'static str, Graph)> {
    named::all()
}

/// ν by exhaustive branching, independent of the blossom code.
pub fn brute_nu(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
        let Some(v) = (from..g.n()).find(|&v| !used[v]) else { return 0 };
        used[v] = true;
        let mut best = go(g, used, v + 1);
        for &u in g.neighbors(v) {
            if !used[u] {
                used[u] = true;
                best = best.max(1 + go(g, used, v + 1));
                used[u] = false;
            }
        }
        used[v] = false;
        best
    }
    go(g, &mut vec![false; g.n()], 0)
}
