//! Deterministic generators for the benchmark graph families.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Attempts before `random_regular` gives up on a parameter set.
const REGULAR_MAX_ATTEMPTS: usize = 10_000;

/// `rows x cols` square lattice. Vertex `(r, c)` has index `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut b = GraphBuilder::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                b.add_edge(v, v + 1).expect("lattice edge");
            }
            if r + 1 < rows {
                b.add_edge(v, v + cols).expect("lattice edge");
            }
        }
    }
    b.build()
}

/// Factor pair `(rows, cols)` of `n` with `rows <= cols` and the smallest difference.
pub fn near_square_dims(n: usize) -> (usize, usize) {
    let mut rows = 1;
    let mut r = 1;
    while r * r <= n {
        if n.is_multiple_of(r) {
            rows = r;
        }
        r += 1;
    }
    (rows, n / rows)
}

/// Grid on `n` vertices with sides as close to equal as `n` allows.
pub fn near_square_grid(n: usize) -> Graph {
    let (rows, cols) = near_square_dims(n);
    grid(rows, cols)
}

/// Random simple `d`-regular graph on `n` vertices.
///
/// Stubs are paired at random; pairs that would form a loop or a parallel edge
/// are set aside and re-paired in the next round. When the leftover stubs admit
/// no valid pair the whole attempt restarts.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n && !(n == 0 && d == 0) {
        return Err(Error::param(format!(
            "degree {d} must be smaller than vertex count {n}"
        )));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::param(format!("n * d = {} must be even", n * d)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REGULAR_MAX_ATTEMPTS {
        if let Some(edges) = try_regular(n, d, &mut rng) {
            let mut edges: Vec<_> = edges.into_iter().collect();
            edges.sort_unstable();
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::param(format!(
        "no simple {d}-regular graph on {n} vertices after {REGULAR_MAX_ATTEMPTS} attempts"
    )))
}

fn try_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<HashSet<(usize, usize)>> {
    let mut edges = HashSet::with_capacity(n * d / 2);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v && edges.insert((u, v)) {
                continue;
            }
            *leftover.entry(u).or_insert(0) += 1;
            *leftover.entry(v).or_insert(0) += 1;
        }
        let open: Vec<usize> = leftover.keys().copied().collect();
        let open_pair_exists = open
            .iter()
            .enumerate()
            .any(|(i, &u)| open[i + 1..].iter().any(|&v| !edges.contains(&(u, v))));
        if !leftover.is_empty() && !open_pair_exists {
            return None;
        }
        stubs = leftover
            .iter()
            .flat_map(|(&w, &count)| std::iter::repeat_n(w, count))
            .collect();
    }
    Some(edges)
}

/// Erdős–Rényi G(n, p).
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v)?;
            }
        }
    }
    Ok(b.build())
}
