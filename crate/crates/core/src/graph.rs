//! Undirected simple graphs and k-way vertex partitions.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Undirected simple graph over vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric; there are no self-loops or
/// parallel edges. Graphs are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate edges
    /// (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (u, v) in edges {
            builder.add_edge(u, v)?;
        }
        Ok(builder.build())
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`. Vertex `i` of the result is
    /// `vertices[i]` of `self`; the returned vector is that mapping.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_count = 0;
        let adjacency: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                let mut nbrs: Vec<usize> = self.adjacency[v]
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect();
                nbrs.sort_unstable();
                edge_count += nbrs.len();
                nbrs
            })
            .collect();
        (
            Graph {
                adjacency,
                edge_count: edge_count / 2,
            },
            vertices.to_vec(),
        )
    }
}

/// Incremental graph construction with the same validation as [`Graph::from_edges`].
#[derive(Debug)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<usize>>,
    seen: HashSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adjacency: vec![Vec::new(); n],
            seen: HashSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Grows the vertex set to at least `n` vertices.
    pub fn ensure_vertices(&mut self, n: usize) {
        if n > self.adjacency.len() {
            self.adjacency.resize(n, Vec::new());
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.seen.contains(&(u.min(v), u.max(v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::param(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::param(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::param(format!("duplicate edge ({u}, {v})")));
        }
        self.seen.insert((u.min(v), u.max(v)));
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        Ok(())
    }

    pub fn build(mut self) -> Graph {
        for nbrs in &mut self.adjacency {
            nbrs.sort_unstable();
        }
        Graph {
            adjacency: self.adjacency,
            edge_count: self.seen.len(),
        }
    }
}

/// Assignment of every vertex to one of `k` parts (colors), together with
/// the target size of each part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    colors: Vec<usize>,
    capacities: Vec<usize>,
}

impl Partition {
    /// Partition whose capacities are the observed part sizes.
    pub fn from_colors(colors: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("k must be positive"));
        }
        let mut capacities = vec![0; k];
        for (v, &c) in colors.iter().enumerate() {
            if c >= k {
                return Err(Error::param(format!("vertex {v} has color {c} >= k = {k}")));
            }
            capacities[c] += 1;
        }
        Ok(Partition { colors, capacities })
    }

    /// Partition with explicit target sizes. Part sizes may differ from the
    /// targets (see [`Partition::is_balanced`]) but the targets must sum to n.
    pub fn with_capacities(colors: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        let k = capacities.len();
        if k == 0 {
            return Err(Error::param("k must be positive"));
        }
        let total: usize = capacities.iter().sum();
        if total != colors.len() {
            return Err(Error::param(format!(
                "capacities sum to {total}, expected {}",
                colors.len()
            )));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::param(format!("vertex {v} has color {c} >= k = {k}")));
        }
        Ok(Partition { colors, capacities })
    }

    /// Every vertex in part 0.
    pub fn monochrome(n: usize) -> Self {
        Partition {
            colors: vec![0; n],
            capacities: vec![n],
        }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn k(&self) -> usize {
        self.capacities.len()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k()];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn is_balanced(&self) -> bool {
        self.part_sizes() == self.capacities
    }

    /// Vertices of part `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.colors[v] == c).collect()
    }

    pub(crate) fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::param(format!(
                "partition has {} vertices, graph has {}",
                self.n(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Part sizes as equal as possible: the first `n mod k` parts get one extra vertex.
pub fn balanced_capacities(n: usize, k: usize) -> Vec<usize> {
    assert!(k > 0, "k must be positive");
    let (base, extra) = (n / k, n % k);
    (0..k).map(|i| base + usize::from(i < extra)).collect()
}
