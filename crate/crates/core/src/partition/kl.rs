//! Kernighan–Lin edge-cut refinement. More than two parts are handled by
//! recursive bisection with capacity-aware splits.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

pub fn kernighan_lin(
    g: &Graph,
    capacities: &[usize],
    seed: u64,
    max_passes: usize,
) -> Result<Partition> {
    let total: usize = capacities.iter().sum();
    if capacities.is_empty() || total != g.n() {
        return Err(Error::param(format!(
            "capacities {capacities:?} do not cover {} vertices",
            g.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors = vec![0; g.n()];
    let all: Vec<usize> = (0..g.n()).collect();
    split(g, &all, capacities, 0, &mut colors, &mut rng, max_passes);
    Partition::with_capacities(colors, capacities.to_vec())
}

fn split(
    g: &Graph,
    vertices: &[usize],
    capacities: &[usize],
    first_color: usize,
    colors: &mut [usize],
    rng: &mut ChaCha8Rng,
    max_passes: usize,
) {
    if capacities.len() == 1 {
        for &v in vertices {
            colors[v] = first_color;
        }
        return;
    }
    let mid = capacities.len() / 2;
    let left_size: usize = capacities[..mid].iter().sum();
    let (sub, map) = g.induced_subgraph(vertices);
    let side = bisect(&sub, left_size, rng, max_passes);
    let left: Vec<usize> = (0..sub.n()).filter(|&i| !side[i]).map(|i| map[i]).collect();
    let right: Vec<usize> = (0..sub.n()).filter(|&i| side[i]).map(|i| map[i]).collect();
    split(
        g,
        &left,
        &capacities[..mid],
        first_color,
        colors,
        rng,
        max_passes,
    );
    split(
        g,
        &right,
        &capacities[mid..],
        first_color + mid,
        colors,
        rng,
        max_passes,
    );
}

/// Random split with `left_size` vertices on side `false`, then KL passes
/// until a pass yields no positive gain or `max_passes` is reached.
pub fn bisect(g: &Graph, left_size: usize, rng: &mut ChaCha8Rng, max_passes: usize) -> Vec<bool> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut side = vec![true; n];
    for &v in &order[..left_size] {
        side[v] = false;
    }
    for _ in 0..max_passes {
        if !improve(g, &mut side) {
            break;
        }
    }
    side
}

/// One KL pass. Returns whether the cut improved.
fn improve(g: &Graph, side: &mut [bool]) -> bool {
    let n = g.n();
    // external minus internal degree
    let mut d: Vec<i64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| if side[u] != side[v] { 1 } else { -1 })
                .sum()
        })
        .collect();
    let mut locked = vec![false; n];
    let steps = side
        .iter()
        .filter(|&&s| !s)
        .count()
        .min(side.iter().filter(|&&s| s).count());
    let mut swaps = Vec::with_capacity(steps);
    let mut cumulative = 0i64;
    let (mut best_gain, mut best_len) = (0i64, 0usize);

    for _ in 0..steps {
        let by_gain = |s: bool| {
            let mut vs: Vec<usize> = (0..n).filter(|&v| !locked[v] && side[v] == s).collect();
            vs.sort_by_key(|&v| (std::cmp::Reverse(d[v]), v));
            vs
        };
        let (a_side, b_side) = (by_gain(false), by_gain(true));
        let mut best: Option<(i64, usize, usize)> = None;
        'outer: for &a in &a_side {
            for &b in &b_side {
                let bound = d[a] + d[b];
                if best.is_some_and(|(g0, _, _)| bound <= g0) {
                    if b == b_side[0] {
                        break 'outer;
                    }
                    break;
                }
                let gain = bound - if g.has_edge(a, b) { 2 } else { 0 };
                if best.is_none_or(|(g0, _, _)| gain > g0) {
                    best = Some((gain, a, b));
                }
            }
        }
        let Some((gain, a, b)) = best else { break };
        locked[a] = true;
        locked[b] = true;
        for &x in g.neighbors(a) {
            if !locked[x] {
                d[x] += if side[x] == side[a] { 2 } else { -2 };
            }
        }
        for &x in g.neighbors(b) {
            if !locked[x] {
                d[x] += if side[x] == side[b] { 2 } else { -2 };
            }
        }
        swaps.push((a, b));
        cumulative += gain;
        if cumulative > best_gain {
            best_gain = cumulative;
            best_len = swaps.len();
        }
    }

    for &(a, b) in &swaps[..best_len] {
        side[a] = !side[a];
        side[b] = !side[b];
    }
    best_len > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid;
    use crate::graph::balanced_capacities;
    use crate::metrics::cut_edges;

    #[test]
    fn single_edge_is_cut() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let p = kernighan_lin(&g, &[1, 1], 0, 10).unwrap();
        assert_eq!(cut_edges(&g, &p).unwrap(), 1);
    }

    #[test]
    fn grid_bisection_is_near_optimal() {
        let g = grid(4, 4);
        for seed in 0..20 {
            let p = kernighan_lin(&g, &[8, 8], seed, 1).unwrap();
            assert!(p.is_balanced());
            assert!(cut_edges(&g, &p).unwrap() <= 6, "seed {seed}");
        }
    }

    #[test]
    fn recursive_split_respects_capacities() {
        let g = grid(6, 6);
        for k in [3, 4, 5] {
            let caps = balanced_capacities(36, k);
            let p = kernighan_lin(&g, &caps, 11, 10).unwrap();
            assert!(p.is_balanced(), "k = {k}");
        }
        assert!(kernighan_lin(&g, &[10, 10], 0, 1).is_err());
    }

    #[test]
    fn pass_never_worsens_cut() {
        let g = grid(5, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut side: Vec<bool> = (0..30).map(|v| v % 2 == 0).collect();
        let before = cut(&g, &side);
        improve(&g, &mut side);
        assert!(cut(&g, &side) <= before);
        assert_eq!(side.iter().filter(|&&s| s).count(), 15);
        let _ = bisect(&g, 15, &mut rng, 5);
    }

    fn cut(g: &Graph, side: &[bool]) -> usize {
        g.edges().filter(|&(u, v)| side[u] != side[v]).count()
    }
}
