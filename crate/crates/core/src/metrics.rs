//! Partition quality: cut edges, pairwise maximum matchings and cut ranks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::gf2::cut_rank;
use crate::graph::{Graph, Partition};
use crate::matching::{all_cross_graphs, hopcroft_karp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairMetrics {
    pub a: usize,
    pub b: usize,
    pub cut_edges: usize,
    pub matching: usize,
    pub cut_rank: usize,
}

/// Every part pair `a < b` appears in `pairs`, including pairs with no cross edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricsReport {
    pub cut_edges: usize,
    pub matching_sum: usize,
    pub cutrank_sum: usize,
    pub pairs: Vec<PairMetrics>,
}

impl MetricsReport {
    pub fn pair_matchings(&self) -> BTreeMap<(usize, usize), usize> {
        self.pairs
            .iter()
            .map(|p| ((p.a, p.b), p.matching))
            .collect()
    }

    pub fn pair_cutranks(&self) -> BTreeMap<(usize, usize), usize> {
        self.pairs
            .iter()
            .map(|p| ((p.a, p.b), p.cut_rank))
            .collect()
    }

    pub fn value(&self, objective: Objective) -> usize {
        match objective {
            Objective::CutEdges => self.cut_edges,
            Objective::MatchingSum => self.matching_sum,
            Objective::CutRankSum => self.cutrank_sum,
        }
    }

    /// Human-readable dump, one line per pair followed by the totals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.pairs {
            writeln!(
                out,
                "pair {} {}: cut_edges={} matching={} cut_rank={}",
                p.a, p.b, p.cut_edges, p.matching, p.cut_rank
            )
            .unwrap();
        }
        writeln!(out, "cut_edges {}", self.cut_edges).unwrap();
        writeln!(out, "matching_sum {}", self.matching_sum).unwrap();
        writeln!(out, "cutrank_sum {}", self.cutrank_sum).unwrap();
        out
    }
}

/// Quantity a partitioner or oracle minimizes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Objective {
    CutEdges,
    #[default]
    MatchingSum,
    CutRankSum,
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "edges" | "cut_edges" => Ok(Objective::CutEdges),
            "matching" | "matching_sum" => Ok(Objective::MatchingSum),
            "cutrank" | "cutrank_sum" => Ok(Objective::CutRankSum),
            other => Err(format!("unknown objective {other:?}")),
        }
    }
}

pub fn cut_edges(g: &Graph, p: &Partition) -> Result<usize> {
    p.check_covers(g)?;
    Ok(g.edges().filter(|&(u, v)| p.color(u) != p.color(v)).count())
}

/// Sum over part pairs of the maximum cross matching; this is the number of
/// Bell pairs vertex-cover grafting spends.
pub fn matching_sum(g: &Graph, p: &Partition) -> Result<usize> {
    Ok(all_cross_graphs(g, p)?
        .iter()
        .map(|(_, bg)| hopcroft_karp(bg).size())
        .sum())
}

pub fn evaluate(g: &Graph, p: &Partition) -> Result<MetricsReport> {
    evaluate_with(g, p, true)
}

/// Like [`evaluate`]; with `with_rank == false` the cut ranks are reported as 0.
pub fn evaluate_with(g: &Graph, p: &Partition, with_rank: bool) -> Result<MetricsReport> {
    let pairs: Vec<PairMetrics> = all_cross_graphs(g, p)?
        .into_iter()
        .map(|((a, b), bg)| PairMetrics {
            a,
            b,
            cut_edges: bg.edges().len(),
            matching: hopcroft_karp(&bg).size(),
            cut_rank: if with_rank { cut_rank(&bg) } else { 0 },
        })
        .collect();
    Ok(MetricsReport {
        cut_edges: pairs.iter().map(|p| p.cut_edges).sum(),
        matching_sum: pairs.iter().map(|p| p.matching).sum(),
        cutrank_sum: pairs.iter().map(|p| p.cut_rank).sum(),
        pairs,
    })
}

/// Value of a single objective, skipping work the objective does not need.
pub fn objective_value(g: &Graph, p: &Partition, objective: Objective) -> Result<usize> {
    match objective {
        Objective::CutEdges => cut_edges(g, p),
        Objective::MatchingSum => matching_sum(g, p),
        Objective::CutRankSum => Ok(evaluate(g, p)?.cutrank_sum),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid;

    #[test]
    fn cut_edge_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            cut_edges(&p3, &Partition::from_colors(vec![0, 0, 1], 2).unwrap()).unwrap(),
            1
        );
        assert_eq!(cut_edges(&p3, &Partition::monochrome(3)).unwrap(), 0);
        assert!(cut_edges(&p3, &Partition::monochrome(2)).is_err());

        let g = grid(6, 6);
        let bands = Partition::from_colors((0..36).map(|v| (v % 6) / 2).collect(), 3).unwrap();
        assert!(bands.is_balanced());
        assert_eq!(cut_edges(&g, &bands).unwrap(), 12);
    }

    #[test]
    fn single_edge_report() {
        let p2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let r = evaluate(&p2, &Partition::from_colors(vec![0, 1], 2).unwrap()).unwrap();
        assert_eq!((r.cut_edges, r.matching_sum, r.cutrank_sum), (1, 1, 1));
    }

    #[test]
    fn empty_pairs_are_reported() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let p = Partition::from_colors(vec![0, 1, 2], 3).unwrap();
        let r = evaluate(&g, &p).unwrap();
        assert_eq!(r.pairs.len(), 3);
        assert_eq!(r.pair_matchings()[&(1, 2)], 0);
        assert_eq!(r.pair_cutranks()[&(0, 1)], 1);
    }

    #[test]
    fn straight_cut_of_even_path() {
        for t in 1..20 {
            let n = 2 * t;
            let g = Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap();
            let p =
                Partition::from_colors((0..n).map(|v| usize::from(v >= t)).collect(), 2).unwrap();
            let r = evaluate(&g, &p).unwrap();
            assert_eq!((r.cut_edges, r.matching_sum, r.cutrank_sum), (1, 1, 1));
        }
    }

    #[test]
    fn t_shaped_three_way_grid_split() {
        // Top two rows | bottom-left block | bottom-right block.
        let g = grid(6, 6);
        let colors = (0..36)
            .map(|v| match (v / 6, v % 6) {
                (r, _) if r < 2 => 0,
                (_, c) if c < 3 => 1,
                _ => 2,
            })
            .collect();
        let p = Partition::from_colors(colors, 3).unwrap();
        let r = evaluate(&g, &p).unwrap();
        let mut sizes: Vec<usize> = r.pairs.iter().map(|p| p.matching).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 4]);
        assert_eq!(r.matching_sum, 10);
        assert_eq!(r.to_text().lines().last(), Some("cutrank_sum 10"));
    }
}
