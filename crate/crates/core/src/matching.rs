//! Maximum matchings and minimum vertex covers on the bipartite graph of cross
//! edges between two parts.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

/// Largest instance `brute_force_matching` accepts.
pub const BRUTE_FORCE_MAX_EDGES: usize = 20;

/// Bipartite graph between two sides of arbitrary vertex ids.
///
/// Edges are `(left index, right index)` pairs, sorted and unique. When built
/// by [`cross_graph`] both sides hold only vertices incident to at least one
/// cross edge; isolated vertices change neither matchings nor ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCrossGraph {
    left: Vec<usize>,
    right: Vec<usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteCrossGraph {
    pub fn new(
        left: Vec<usize>,
        right: Vec<usize>,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("duplicate bipartite edge"));
        }
        if let Some(&(i, j)) = edges
            .iter()
            .find(|&&(i, j)| i >= left.len() || j >= right.len())
        {
            return Err(Error::param(format!(
                "bipartite edge ({i}, {j}) out of range for sides {} x {}",
                left.len(),
                right.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); left.len()];
        for &(i, j) in &edges {
            adjacency[i].push(j);
        }
        Ok(BipartiteCrossGraph {
            left,
            right,
            edges,
            adjacency,
        })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Right indices adjacent to left index `i`, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Cross edges between parts `a` (left side) and `b` (right side).
pub fn cross_graph(g: &Graph, p: &Partition, a: usize, b: usize) -> Result<BipartiteCrossGraph> {
    p.check_covers(g)?;
    if a == b || a >= p.k() || b >= p.k() {
        return Err(Error::param(format!(
            "parts {a} and {b} must be distinct and below k = {}",
            p.k()
        )));
    }
    let pairs: Vec<(usize, usize)> = g
        .edges()
        .filter_map(|(u, v)| match (p.color(u), p.color(v)) {
            (cu, cv) if cu == a && cv == b => Some((u, v)),
            (cu, cv) if cu == b && cv == a => Some((v, u)),
            _ => None,
        })
        .collect();
    Ok(from_vertex_pairs(pairs))
}

/// Cross graphs for every part pair `a < b`, in lexicographic pair order,
/// built in one sweep over the edges.
pub fn all_cross_graphs(
    g: &Graph,
    p: &Partition,
) -> Result<Vec<((usize, usize), BipartiteCrossGraph)>> {
    p.check_covers(g)?;
    let k = p.k();
    let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k * k];
    for (u, v) in g.edges() {
        let (cu, cv) = (p.color(u), p.color(v));
        if cu < cv {
            buckets[cu * k + cv].push((u, v));
        } else if cv < cu {
            buckets[cv * k + cu].push((v, u));
        }
    }
    let mut out = Vec::with_capacity(k * (k.saturating_sub(1)) / 2);
    for a in 0..k {
        for b in a + 1..k {
            let pairs = std::mem::take(&mut buckets[a * k + b]);
            out.push(((a, b), from_vertex_pairs(pairs)));
        }
    }
    Ok(out)
}

fn from_vertex_pairs(pairs: Vec<(usize, usize)>) -> BipartiteCrossGraph {
    let mut left: Vec<usize> = pairs.iter().map(|&(u, _)| u).collect();
    let mut right: Vec<usize> = pairs.iter().map(|&(_, v)| v).collect();
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    let edges = pairs
        .iter()
        .map(|&(u, v)| {
            (
                left.binary_search(&u).expect("left endpoint"),
                right.binary_search(&v).expect("right endpoint"),
            )
        })
        .collect();
    BipartiteCrossGraph::new(left, right, edges).expect("cross edges are unique")
}

/// Maximum matching with its Kőnig minimum vertex cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    /// Matched `(left vertex id, right vertex id)` pairs, ascending by left id.
    pub matching: Vec<(usize, usize)>,
    /// Cover vertex ids, ascending.
    pub cover: Vec<usize>,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.matching.len()
    }
}

const UNREACHED: usize = usize::MAX;

/// Hopcroft–Karp maximum matching, O(E √V).
///
/// The cover is built from the set Z of vertices reachable by alternating
/// paths from unmatched left vertices: `(left \ Z) ∪ (right ∩ Z)`.
pub fn hopcroft_karp(bg: &BipartiteCrossGraph) -> MatchingResult {
    let (nl, nr) = (bg.left.len(), bg.right.len());
    let mut pair_left: Vec<Option<usize>> = vec![None; nl];
    let mut pair_right: Vec<Option<usize>> = vec![None; nr];
    let mut dist = vec![UNREACHED; nl];
    let mut next_edge = vec![0usize; nl];

    while layer(bg, &pair_left, &pair_right, &mut dist) {
        next_edge.iter_mut().for_each(|e| *e = 0);
        for root in 0..nl {
            if pair_left[root].is_none() {
                augment(
                    bg,
                    root,
                    &mut pair_left,
                    &mut pair_right,
                    &mut dist,
                    &mut next_edge,
                );
            }
        }
    }

    // Alternating reachability from free left vertices.
    let mut z_left = vec![false; nl];
    let mut z_right = vec![false; nr];
    let mut queue: VecDeque<usize> = (0..nl).filter(|&u| pair_left[u].is_none()).collect();
    for &u in &queue {
        z_left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in bg.neighbors(u) {
            if z_right[v] {
                continue;
            }
            z_right[v] = true;
            let w = pair_right[v].expect("maximum matching leaves no augmenting path");
            if !z_left[w] {
                z_left[w] = true;
                queue.push_back(w);
            }
        }
    }

    let matching = pair_left
        .iter()
        .enumerate()
        .filter_map(|(u, m)| m.map(|v| (bg.left[u], bg.right[v])))
        .collect();
    let mut cover: Vec<usize> = (0..nl)
        .filter(|&u| !z_left[u])
        .map(|u| bg.left[u])
        .chain((0..nr).filter(|&v| z_right[v]).map(|v| bg.right[v]))
        .collect();
    cover.sort_unstable();
    MatchingResult { matching, cover }
}

/// BFS layering from the free left vertices. Returns whether some free right
/// vertex is reachable, i.e. whether an augmenting path exists.
fn layer(
    bg: &BipartiteCrossGraph,
    pair_left: &[Option<usize>],
    pair_right: &[Option<usize>],
    dist: &mut [usize],
) -> bool {
    let mut queue = VecDeque::new();
    for (u, d) in dist.iter_mut().enumerate() {
        if pair_left[u].is_none() {
            *d = 0;
            queue.push_back(u);
        } else {
            *d = UNREACHED;
        }
    }
    let mut found = false;
    while let Some(u) = queue.pop_front() {
        for &v in bg.neighbors(u) {
            match pair_right[v] {
                None => found = true,
                Some(w) if dist[w] == UNREACHED => {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    found
}

/// Iterative layered DFS from `root`; flips one shortest augmenting path if found.
fn augment(
    bg: &BipartiteCrossGraph,
    root: usize,
    pair_left: &mut [Option<usize>],
    pair_right: &mut [Option<usize>],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    // via[i] is the right vertex leading from stack[i] to stack[i + 1].
    let mut via: Vec<usize> = Vec::new();
    while let Some(&u) = stack.last() {
        let nbrs = bg.neighbors(u);
        if next_edge[u] == nbrs.len() {
            dist[u] = UNREACHED;
            stack.pop();
            via.pop();
            continue;
        }
        let v = nbrs[next_edge[u]];
        next_edge[u] += 1;
        match pair_right[v] {
            None => {
                via.push(v);
                for (&l, &r) in stack.iter().zip(&via) {
                    pair_left[l] = Some(r);
                    pair_right[r] = Some(l);
                }
                return true;
            }
            Some(w) if dist[w] == dist[u] + 1 => {
                via.push(v);
                stack.push(w);
            }
            Some(_) => {}
        }
    }
    false
}

/// Exact maximum matching size by exhaustive search over matchings.
pub fn brute_force_matching(bg: &BipartiteCrossGraph) -> Result<usize> {
    if bg.edges.len() > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::OracleSize(format!(
            "{} edges exceeds the brute-force limit of {BRUTE_FORCE_MAX_EDGES}",
            bg.edges.len()
        )));
    }
    fn search(edges: &[(usize, usize)], used_l: &mut [bool], used_r: &mut [bool]) -> usize {
        let Some((&(i, j), rest)) = edges.split_first() else {
            return 0;
        };
        let mut best = search(rest, used_l, used_r);
        if !used_l[i] && !used_r[j] {
            used_l[i] = true;
            used_r[j] = true;
            best = best.max(1 + search(rest, used_l, used_r));
            used_l[i] = false;
            used_r[j] = false;
        }
        best
    }
    let mut used_l = vec![false; bg.left.len()];
    let mut used_r = vec![false; bg.right.len()];
    Ok(search(&bg.edges, &mut used_l, &mut used_r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> BipartiteCrossGraph {
        BipartiteCrossGraph::new(
            vec![0],
            (1..=leaves).collect(),
            (0..leaves).map(|j| (0, j)).collect(),
        )
        .unwrap()
    }

    fn assert_konig(bg: &BipartiteCrossGraph, r: &MatchingResult) {
        assert_eq!(r.cover.len(), r.size());
        for &(i, j) in bg.edges() {
            assert!(
                r.cover.binary_search(&bg.left()[i]).is_ok()
                    || r.cover.binary_search(&bg.right()[j]).is_ok()
            );
        }
        let mut ls: Vec<_> = r.matching.iter().map(|m| m.0).collect();
        let mut rs: Vec<_> = r.matching.iter().map(|m| m.1).collect();
        ls.dedup();
        rs.sort_unstable();
        rs.dedup();
        assert_eq!(ls.len(), r.size());
        assert_eq!(rs.len(), r.size());
    }

    #[test]
    fn cross_graph_examples() {
        let p2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let part = Partition::from_colors(vec![0, 1], 2).unwrap();
        let bg = cross_graph(&p2, &part, 0, 1).unwrap();
        assert_eq!(
            (bg.left(), bg.right(), bg.edges().len()),
            (&[0][..], &[1][..], 1)
        );

        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let part = Partition::from_colors(vec![0, 0, 1, 1], 2).unwrap();
        assert_eq!(cross_graph(&k4, &part, 0, 1).unwrap().edges().len(), 4);
        assert_eq!(cross_graph(&k4, &part, 1, 0).unwrap().left(), &[2, 3]);
        assert!(cross_graph(&k4, &part, 1, 1).is_err());
        assert!(cross_graph(&k4, &part, 0, 2).is_err());

        let mono = Partition::with_capacities(vec![0, 0, 0, 0], vec![4, 0]).unwrap();
        assert!(cross_graph(&k4, &mono, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn star_cover_is_center() {
        let bg = star(3);
        let r = hopcroft_karp(&bg);
        assert_eq!(r.size(), 1);
        assert_eq!(r.cover, vec![0]);
        assert_konig(&bg, &r);
    }

    #[test]
    fn perfect_and_empty() {
        let bg = BipartiteCrossGraph::new(vec![0, 1], vec![2, 3], vec![(0, 0), (1, 1)]).unwrap();
        let r = hopcroft_karp(&bg);
        assert_eq!(r.size(), 2);
        assert_eq!(brute_force_matching(&bg).unwrap(), 2);
        assert_konig(&bg, &r);

        let empty = BipartiteCrossGraph::new(vec![], vec![], vec![]).unwrap();
        let r = hopcroft_karp(&empty);
        assert_eq!(r.size(), 0);
        assert!(r.cover.is_empty());
    }

    #[test]
    fn brute_force_examples() {
        let k22 =
            BipartiteCrossGraph::new(vec![0, 1], vec![2, 3], vec![(0, 0), (0, 1), (1, 0), (1, 1)])
                .unwrap();
        assert_eq!(brute_force_matching(&k22).unwrap(), 2);
        // P4 colored 0,1,0,1: cross path l0-r0-l1-r1.
        let p4 =
            BipartiteCrossGraph::new(vec![0, 2], vec![1, 3], vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(brute_force_matching(&p4).unwrap(), 2);
        assert_eq!(brute_force_matching(&star(1)).unwrap(), 1);
        assert!(matches!(
            brute_force_matching(&star(21)),
            Err(Error::OracleSize(_))
        ));
    }

    #[test]
    fn augmenting_path_needs_rerouting() {
        // Greedy in index order matches l0-r0 first; the optimum reroutes it.
        let bg = BipartiteCrossGraph::new(
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![(0, 0), (0, 1), (1, 0), (2, 1), (2, 2)],
        )
        .unwrap();
        let r = hopcroft_karp(&bg);
        assert_eq!(r.size(), 3);
        assert_konig(&bg, &r);
    }

    #[test]
    fn new_rejects_bad_edges() {
        assert!(BipartiteCrossGraph::new(vec![0], vec![1], vec![(0, 0), (0, 0)]).is_err());
        assert!(BipartiteCrossGraph::new(vec![0], vec![1], vec![(0, 1)]).is_err());
    }
}
