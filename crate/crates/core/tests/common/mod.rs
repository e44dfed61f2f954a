//! Independent reference implementations used as test oracles, plus random
//! instance helpers. Nothing here calls into the algorithms under test.
#![allow(dead_code)]

use hamlets::{Graph, Partition};
use rand::seq::SliceRandom;
use rand::Rng;

/// Rank over GF(2) by textbook elimination on boolean rows.
pub fn naive_rank(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c]) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && m[r][c] {
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Maximum matching size by deciding each left vertex in turn, tracking the
/// used right vertices as a bitmask. Right indices must be below 64.
pub fn exhaustive_matching(edges: &[(usize, usize)]) -> usize {
    fn go(lefts: &[Vec<usize>], used: u64) -> usize {
        let Some((first, rest)) = lefts.split_first() else {
            return 0;
        };
        let mut best = go(rest, used);
        for &j in first {
            if used >> j & 1 == 0 {
                best = best.max(1 + go(rest, used | 1 << j));
            }
        }
        best
    }
    let left_n = edges.iter().map(|e| e.0 + 1).max().unwrap_or(0);
    let mut lefts = vec![Vec::new(); left_n];
    for &(i, j) in edges {
        assert!(j < 64);
        lefts[i].push(j);
    }
    go(&lefts, 0)
}

/// Adjacency-matrix local complementation.
pub fn lc_matrix(adj: &mut [Vec<bool>], a: usize) {
    let nb: Vec<usize> = (0..adj.len()).filter(|&u| adj[a][u]).collect();
    for (i, &u) in nb.iter().enumerate() {
        for &w in &nb[i + 1..] {
            adj[u][w] = !adj[u][w];
            adj[w][u] = !adj[w][u];
        }
    }
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Uniform partition with balanced part sizes.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize, k: usize) -> Partition {
    let caps = hamlets::balanced_capacities(n, k);
    let mut colors: Vec<usize> = caps
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    colors.shuffle(rng);
    Partition::with_capacities(colors, caps).unwrap()
}

/// Edges between distinct parts, counted directly.
pub fn naive_cut(g: &Graph, colors: &[usize]) -> usize {
    g.edges().filter(|&(u, v)| colors[u] != colors[v]).count()
}

/// Simple path on n vertices.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}
