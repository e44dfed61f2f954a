//! The bury heuristic.
//!
//! Burying a vertex gives it and its whole neighborhood the same color, so it
//! can never be an endpoint of a cross edge. The cost of burying `v` is the
//! number of still-uncolored vertices in its closed neighborhood. With a budget
//! of `r` vertices to color, the heuristic repeatedly buries the cheapest
//! affordable vertex; once nothing is affordable it colors single vertices,
//! preferring ones adjacent to the colored region, until the budget is spent.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

const BURIED: usize = usize::MAX;

/// How ties between equal-weight candidates are broken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    /// Lowest vertex index wins.
    #[default]
    LowestIndex,
    /// A seeded random permutation of the vertices decides.
    Seeded(u64),
}

impl TieBreak {
    fn ranks(self, n: usize) -> Vec<usize> {
        match self {
            TieBreak::LowestIndex => (0..n).collect(),
            TieBreak::Seeded(seed) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                let mut rank = vec![0; n];
                for (r, v) in order.into_iter().enumerate() {
                    rank[v] = r;
                }
                rank
            }
        }
    }
}

type Key = (usize, usize, usize);

/// Working state of one bury pass over a graph.
///
/// For every unburied vertex `v`, `weight(v)` is the number of uncolored
/// vertices in the closed neighborhood of `v`; buried vertices have no
/// weight. The weights are maintained incrementally as vertices get colored.
#[derive(Clone, Debug)]
pub struct BuryState<'g> {
    graph: &'g Graph,
    weights: Vec<usize>,
    colored: Vec<bool>,
    colored_neighbors: Vec<usize>,
    remaining: usize,
    rank: Vec<usize>,
    // (weight, rank, vertex) of every unburied vertex.
    unburied: BTreeSet<Key>,
    // Unburied vertices that are colored or touch a colored vertex.
    reach: BTreeSet<Key>,
    // Uncolored vertices adjacent to a colored vertex.
    frontier: BTreeSet<Key>,
    uncolored: BTreeSet<Key>,
}

impl<'g> BuryState<'g> {
    /// Fresh state with budget `r0`. Vertices in `precolored` start colored
    /// and do not consume budget.
    pub fn new(
        graph: &'g Graph,
        r0: usize,
        precolored: &[usize],
        tie_break: TieBreak,
    ) -> Result<Self> {
        let n = graph.n();
        let mut colored = vec![false; n];
        for &v in precolored {
            if v >= n {
                return Err(Error::param(format!("precolored vertex {v} out of range")));
            }
            colored[v] = true;
        }
        let uncolored_count = colored.iter().filter(|&&c| !c).count();
        if r0 > uncolored_count {
            return Err(Error::param(format!(
                "budget {r0} exceeds the {uncolored_count} uncolored vertices"
            )));
        }
        let mut weights = vec![0; n];
        let mut colored_neighbors = vec![0; n];
        for v in 0..n {
            let nbrs = graph.neighbors(v);
            colored_neighbors[v] = nbrs.iter().filter(|&&u| colored[u]).count();
            weights[v] = usize::from(!colored[v]) + nbrs.len() - colored_neighbors[v];
        }
        let mut state = BuryState {
            graph,
            weights,
            colored,
            colored_neighbors,
            remaining: r0,
            rank: tie_break.ranks(n),
            unburied: BTreeSet::new(),
            reach: BTreeSet::new(),
            frontier: BTreeSet::new(),
            uncolored: BTreeSet::new(),
        };
        for v in 0..n {
            state.attach(v);
        }
        Ok(state)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Bury cost of `v`, or `None` once `v` is buried.
    pub fn weight(&self, v: usize) -> Option<usize> {
        (self.weights[v] != BURIED).then_some(self.weights[v])
    }

    pub fn is_buried(&self, v: usize) -> bool {
        self.weights[v] == BURIED
    }

    pub fn is_colored(&self, v: usize) -> bool {
        self.colored[v]
    }

    /// Budget left to spend.
    pub fn remaining(&self) -> usize {
        self.remaining
    }

    pub fn colored_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.colored[v]).collect()
    }

    pub fn buried_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.is_buried(v)).collect()
    }

    /// Weights recomputed from scratch from the coloring, for checking the
    /// incremental bookkeeping.
    pub fn recount_weights(&self) -> Vec<Option<usize>> {
        (0..self.graph.n())
            .map(|v| {
                (!self.is_buried(v)).then(|| {
                    usize::from(!self.colored[v])
                        + self
                            .graph
                            .neighbors(v)
                            .iter()
                            .filter(|&&u| !self.colored[u])
                            .count()
                })
            })
            .collect()
    }

    fn key(&self, v: usize) -> Key {
        (self.weights[v], self.rank[v], v)
    }

    fn detach(&mut self, v: usize) {
        let key = self.key(v);
        self.unburied.remove(&key);
        self.reach.remove(&key);
        self.frontier.remove(&key);
        self.uncolored.remove(&key);
    }

    fn attach(&mut self, v: usize) {
        if self.is_buried(v) {
            return;
        }
        let key = self.key(v);
        let touches = self.colored_neighbors[v] > 0;
        self.unburied.insert(key);
        if self.colored[v] || touches {
            self.reach.insert(key);
        }
        if !self.colored[v] {
            self.uncolored.insert(key);
            if touches {
                self.frontier.insert(key);
            }
        }
    }

    fn color(&mut self, u: usize) {
        debug_assert!(!self.colored[u]);
        let graph = self.graph;
        self.detach(u);
        for &x in graph.neighbors(u) {
            self.detach(x);
        }
        self.colored[u] = true;
        self.weights[u] -= 1;
        for &x in graph.neighbors(u) {
            self.colored_neighbors[x] += 1;
            // An uncolored vertex never neighbors a buried one.
            self.weights[x] -= 1;
        }
        self.attach(u);
        for &x in graph.neighbors(u) {
            self.attach(x);
        }
    }

    /// Buries `v`: colors every uncolored vertex of its closed neighborhood
    /// and charges that many units of budget.
    pub fn bury_vertex(&mut self, v: usize) -> Result<()> {
        let cost = self
            .weight(v)
            .ok_or_else(|| Error::param(format!("vertex {v} is already buried")))?;
        if cost > self.remaining {
            return Err(Error::param(format!(
                "burying {v} costs {cost}, only {} left",
                self.remaining
            )));
        }
        if !self.colored[v] {
            self.color(v);
        }
        for &u in self.graph.neighbors(v) {
            if !self.colored[u] {
                self.color(u);
            }
        }
        self.remaining -= cost;
        self.detach(v);
        self.weights[v] = BURIED;
        Ok(())
    }

    /// Colors a single uncolored vertex for one unit of budget.
    pub fn color_single(&mut self, u: usize) -> Result<()> {
        if self.colored[u] {
            return Err(Error::param(format!("vertex {u} is already colored")));
        }
        if self.remaining == 0 {
            return Err(Error::param("no budget left"));
        }
        self.color(u);
        self.remaining -= 1;
        Ok(())
    }

    /// Buries every vertex whose closed neighborhood is already colored.
    /// These burials are free and leave the colored set unchanged.
    fn bury_free(&mut self) {
        while let Some(&(0, _, v)) = self.unburied.first() {
            self.bury_vertex(v).expect("zero-cost burial");
        }
    }

    /// Spends the whole budget. With `seeded_growth`, burial candidates are
    /// limited to the colored region and its boundary.
    pub fn run(&mut self, seeded_growth: bool) {
        loop {
            self.bury_free();
            if self.remaining == 0 {
                break;
            }
            let candidates = if seeded_growth {
                &self.reach
            } else {
                &self.unburied
            };
            if let Some(&(w, _, v)) = candidates.first() {
                if w <= self.remaining {
                    self.bury_vertex(v).expect("affordable burial");
                    continue;
                }
            }
            let &(_, _, u) = self
                .frontier
                .first()
                .or_else(|| self.uncolored.first())
                .expect("budget never exceeds the uncolored count");
            self.color_single(u).expect("uncolored vertex with budget");
        }
    }
}

/// Colors exactly `r0` vertices beyond `precolored` and returns the whole
/// colored set, ascending.
pub fn bury_bipartition(
    g: &Graph,
    r0: usize,
    tie_break: TieBreak,
    precolored: &[usize],
) -> Result<Vec<usize>> {
    let mut state = BuryState::new(g, r0, precolored, tie_break)?;
    state.run(false);
    Ok(state.colored_vertices())
}

/// Seeded variant: `seed_vertex` starts colored and is part of the `r0`
/// budget; growth only considers the colored region and its boundary.
pub fn bury_seeding(
    g: &Graph,
    r0: usize,
    seed_vertex: usize,
    tie_break: TieBreak,
) -> Result<Vec<usize>> {
    if seed_vertex >= g.n() {
        return Err(Error::param(format!(
            "seed vertex {seed_vertex} out of range"
        )));
    }
    if r0 == 0 {
        return Err(Error::param("seeded bury needs a budget of at least 1"));
    }
    let mut state = BuryState::new(g, r0 - 1, &[seed_vertex], tie_break)?;
    state.run(true);
    Ok(state.colored_vertices())
}

/// How each color's pass picks its vertices in [`bury_kpartition_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PassMode {
    Global,
    /// First pass grows from the given vertex; later passes from the
    /// cheapest vertex left.
    Seeded(usize),
}

/// k-way partition by successive bury passes on the shrinking uncolored
/// subgraph. Color `i < k - 1` gets `capacities[i]` vertices; the residue
/// becomes color `k - 1`.
pub fn bury_kpartition(g: &Graph, capacities: &[usize], tie_break: TieBreak) -> Result<Partition> {
    let fixed = vec![None; g.n()];
    bury_kpartition_with(g, capacities, &fixed, tie_break, PassMode::Global)
}

pub fn bury_seeding_kpartition(
    g: &Graph,
    capacities: &[usize],
    seed_vertex: usize,
    tie_break: TieBreak,
) -> Result<Partition> {
    let fixed = vec![None; g.n()];
    bury_kpartition_with(
        g,
        capacities,
        &fixed,
        tie_break,
        PassMode::Seeded(seed_vertex),
    )
}

/// General k-way bury with vertices already pinned to hamlets (`fixed[v] =
/// Some(c)`), as when part of the state already lives on a hamlet.
///
/// Hamlets are filled in order of most vacancies first (ties by index), each
/// pass starting with its pinned vertices precolored and a budget equal to the
/// hamlet's remaining capacity. The hamlet filled last takes the residue. With
/// nothing pinned the order is simply `0..k`.
pub fn bury_kpartition_with(
    g: &Graph,
    capacities: &[usize],
    fixed: &[Option<usize>],
    tie_break: TieBreak,
    mode: PassMode,
) -> Result<Partition> {
    let n = g.n();
    let k = capacities.len();
    if k == 0 {
        return Err(Error::param("need at least one part"));
    }
    let total: usize = capacities.iter().sum();
    if total != n {
        return Err(Error::param(format!(
            "capacities sum to {total}, graph has {n} vertices"
        )));
    }
    if fixed.len() != n {
        return Err(Error::param("pinned-vertex table does not match the graph"));
    }
    let mut pinned = vec![0usize; k];
    for (v, f) in fixed.iter().enumerate() {
        if let Some(c) = *f {
            if c >= k {
                return Err(Error::param(format!("vertex {v} pinned to part {c} >= k")));
            }
            pinned[c] += 1;
        }
    }
    if let Some(c) = (0..k).find(|&c| pinned[c] > capacities[c]) {
        return Err(Error::param(format!(
            "part {c} has more pinned vertices than capacity"
        )));
    }
    if let PassMode::Seeded(s) = mode {
        if s >= n {
            return Err(Error::param(format!("seed vertex {s} out of range")));
        }
        if fixed[s].is_some_and(|c| c != 0) {
            return Err(Error::param(format!(
                "seed vertex {s} is pinned to another part"
            )));
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(capacities[c] - pinned[c]), c));
    let residue = *order.last().expect("k >= 1");

    let mut colors: Vec<Option<usize>> = fixed.to_vec();
    let mut pass_tie = tie_break;
    for (pass, &c) in order[..k - 1].iter().enumerate() {
        let members: Vec<usize> = (0..n)
            .filter(|&v| colors[v].is_none() || colors[v] == Some(c))
            .collect();
        let (sub, map) = g.induced_subgraph(&members);
        let pre: Vec<usize> = (0..members.len())
            .filter(|&i| colors[map[i]] == Some(c))
            .collect();
        let budget = capacities[c] - pinned[c];
        let chosen = match mode {
            PassMode::Seeded(seed) if pre.is_empty() && budget > 0 => {
                let start = if pass == 0 {
                    members.binary_search(&seed).expect("seed is free")
                } else {
                    cheapest_vertex(&sub, pass_tie)
                };
                bury_seeding(&sub, budget, start, pass_tie)?
            }
            _ => bury_bipartition(&sub, budget, pass_tie, &pre)?,
        };
        for i in chosen {
            colors[map[i]] = Some(c);
        }
        if let TieBreak::Seeded(s) = pass_tie {
            pass_tie = TieBreak::Seeded(s.wrapping_add(0x9E37_79B9_7F4A_7C15));
        }
    }
    let colors = colors.into_iter().map(|c| c.unwrap_or(residue)).collect();
    Partition::with_capacities(colors, capacities.to_vec())
}

fn cheapest_vertex(g: &Graph, tie_break: TieBreak) -> usize {
    let rank = tie_break.ranks(g.n());
    (0..g.n())
        .min_by_key(|&v| (g.degree(v), rank[v]))
        .expect("non-empty subgraph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid;
    use crate::graph::balanced_capacities;
    use crate::metrics;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn initial_weights_are_degree_plus_one() {
        let g = grid(4, 4);
        let s = BuryState::new(&g, 8, &[], TieBreak::LowestIndex).unwrap();
        for v in 0..16 {
            assert_eq!(s.weight(v), Some(g.degree(v) + 1));
        }
    }

    #[test]
    fn bury_grid_corner() {
        let g = grid(4, 4);
        let mut s = BuryState::new(&g, 8, &[], TieBreak::LowestIndex).unwrap();
        s.bury_vertex(0).unwrap();
        assert_eq!(s.colored_vertices(), vec![0, 1, 4]);
        assert_eq!(s.remaining(), 5);
        assert!(s.is_buried(0));
        // Vertex 1 had N[1] = {0,1,2,5}; 0 and 1 are now colored.
        assert_eq!(s.weight(1), Some(2));
        assert_eq!(s.weight(5), Some(3));
        assert_eq!(s.weight(2), Some(3));
        assert_eq!(
            s.recount_weights(),
            (0..16).map(|v| s.weight(v)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn first_choice_on_grid_is_a_corner() {
        let g = grid(4, 4);
        let s = BuryState::new(&g, 8, &[], TieBreak::LowestIndex).unwrap();
        let &(w, _, v) = s.unburied.first().unwrap();
        assert_eq!(w, 3);
        assert!([0, 3, 12, 15].contains(&v));
        let colored = bury_bipartition(&g, 8, TieBreak::LowestIndex, &[]).unwrap();
        assert!(colored.contains(&0) && colored.contains(&1) && colored.contains(&4));
    }

    #[test]
    fn isolated_and_zero_cost_burials() {
        let g = Graph::empty(2);
        let mut s = BuryState::new(&g, 1, &[], TieBreak::LowestIndex).unwrap();
        s.bury_vertex(0).unwrap();
        assert_eq!((s.colored_vertices(), s.remaining()), (vec![0], 0));

        let g = path(2);
        let mut s = BuryState::new(&g, 0, &[0, 1], TieBreak::LowestIndex).unwrap();
        assert_eq!(s.weight(1), Some(0));
        s.bury_vertex(1).unwrap();
        assert_eq!((s.colored_vertices(), s.remaining()), (vec![0, 1], 0));
    }

    #[test]
    fn bury_precondition_errors() {
        let g = path(4);
        let mut s = BuryState::new(&g, 1, &[], TieBreak::LowestIndex).unwrap();
        assert!(s.bury_vertex(1).is_err());
        s.bury_vertex(0).unwrap_err();
        assert!(BuryState::new(&g, 5, &[], TieBreak::LowestIndex).is_err());
        assert!(BuryState::new(&g, 3, &[0, 1], TieBreak::LowestIndex).is_err());
    }

    #[test]
    fn path_bipartition() {
        let g = path(4);
        assert_eq!(
            bury_bipartition(&g, 2, TieBreak::LowestIndex, &[]).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            bury_bipartition(&g, 4, TieBreak::LowestIndex, &[]).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            bury_bipartition(&g, 0, TieBreak::LowestIndex, &[]).unwrap(),
            Vec::<usize>::new()
        );
        let with_pre = bury_bipartition(&g, 1, TieBreak::LowestIndex, &[3]).unwrap();
        assert_eq!(with_pre, vec![2, 3]);
    }

    #[test]
    fn seeding_examples() {
        let g = path(4);
        assert_eq!(
            bury_seeding(&g, 2, 0, TieBreak::LowestIndex).unwrap(),
            vec![0, 1]
        );

        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            bury_seeding(&g, 1, 3, TieBreak::LowestIndex).unwrap(),
            vec![3]
        );
        assert!(bury_seeding(&g, 0, 3, TieBreak::LowestIndex).is_err());
        assert!(bury_seeding(&g, 1, 9, TieBreak::LowestIndex).is_err());
    }

    #[test]
    fn kpartition_basics() {
        let g = grid(6, 6);
        let p = bury_kpartition(&g, &[36], TieBreak::LowestIndex).unwrap();
        assert_eq!(p, Partition::monochrome(36));
        assert_eq!(metrics::evaluate(&g, &p).unwrap().matching_sum, 0);

        let g = path(12);
        let p = bury_kpartition(&g, &balanced_capacities(12, 3), TieBreak::LowestIndex).unwrap();
        assert!(p.is_balanced());
        assert_eq!(metrics::matching_sum(&g, &p).unwrap(), 2);

        assert!(bury_kpartition(&g, &[5, 5], TieBreak::LowestIndex).is_err());
    }

    #[test]
    fn heterogeneous_capacities_with_pinned_vertices() {
        let g = grid(4, 6);
        let mut fixed = vec![None; 24];
        fixed[0] = Some(1);
        fixed[23] = Some(2);
        let caps = [4, 12, 8];
        let p = bury_kpartition_with(&g, &caps, &fixed, TieBreak::LowestIndex, PassMode::Global)
            .unwrap();
        assert!(p.is_balanced());
        assert_eq!(p.color(0), 1);
        assert_eq!(p.color(23), 2);
        assert!(bury_kpartition_with(
            &g,
            &[1, 12, 11],
            &{
                let mut f = vec![None; 24];
                f[0] = Some(0);
                f[1] = Some(0);
                f
            },
            TieBreak::LowestIndex,
            PassMode::Global
        )
        .is_err());
    }

    #[test]
    fn seeded_kpartition_is_balanced() {
        let g = grid(6, 6);
        let p = bury_seeding_kpartition(&g, &balanced_capacities(36, 3), 0, TieBreak::LowestIndex)
            .unwrap();
        assert!(p.is_balanced());
        assert_eq!(p.color(0), 0);
    }

    #[test]
    fn seeded_ties_are_deterministic() {
        let g = grid(5, 5);
        let caps = balanced_capacities(25, 2);
        let a = bury_kpartition(&g, &caps, TieBreak::Seeded(3)).unwrap();
        let b = bury_kpartition(&g, &caps, TieBreak::Seeded(3)).unwrap();
        assert_eq!(a, b);
    }
}
