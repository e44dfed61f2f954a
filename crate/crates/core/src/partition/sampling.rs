//! Baselines and oracles that work by enumerating partitions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::metrics::{objective_value, Objective};

/// Largest number of colorings `exhaustive_optimum` will enumerate.
pub const EXHAUSTIVE_LIMIT: f64 = 1e7;

/// Uniformly random partition with part sizes exactly `capacities`.
pub fn random_balanced(n: usize, capacities: &[usize], rng: &mut ChaCha8Rng) -> Result<Partition> {
    let mut colors: Vec<usize> = capacities
        .iter()
        .enumerate()
        .flat_map(|(c, &size)| std::iter::repeat_n(c, size))
        .collect();
    if colors.len() != n {
        return Err(Error::param(format!(
            "capacities sum to {}, expected {n}",
            colors.len()
        )));
    }
    colors.shuffle(rng);
    Partition::with_capacities(colors, capacities.to_vec())
}

/// Best of `trials` random balanced partitions under `objective`; the first
/// partition reaching the minimum is kept.
pub fn random_sampling(
    g: &Graph,
    capacities: &[usize],
    trials: usize,
    seed: u64,
    objective: Objective,
) -> Result<(Partition, usize)> {
    if trials == 0 {
        return Err(Error::param("random sampling needs at least one trial"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Partition, usize)> = None;
    for _ in 0..trials {
        let p = random_balanced(g.n(), capacities, &mut rng)?;
        let value = objective_value(g, &p, objective)?;
        if best.as_ref().is_none_or(|(_, b)| value < *b) {
            best = Some((p, value));
        }
    }
    Ok(best.expect("trials >= 1"))
}

/// Number of distinct colorings with the given part sizes, counting colorings
/// that differ only by swapping equal-size parts once.
pub fn coloring_count(capacities: &[usize]) -> f64 {
    let ln_fact = |m: usize| (1..=m).map(|i| (i as f64).ln()).sum::<f64>();
    let n: usize = capacities.iter().sum();
    let mut ln = ln_fact(n) - capacities.iter().map(|&c| ln_fact(c)).sum::<f64>();
    let mut sizes = capacities.to_vec();
    sizes.sort_unstable();
    for group in sizes.chunk_by(|a, b| a == b) {
        ln -= ln_fact(group.len());
    }
    ln.exp()
}

/// True optimum of `objective` over all partitions with part sizes exactly
/// `capacities`, enumerated up to permutations of equal-size parts.
pub fn exhaustive_optimum(
    g: &Graph,
    capacities: &[usize],
    objective: Objective,
) -> Result<(Partition, usize)> {
    let n = g.n();
    let total: usize = capacities.iter().sum();
    if capacities.is_empty() || total != n {
        return Err(Error::param(format!(
            "capacities {capacities:?} do not cover {n} vertices"
        )));
    }
    let count = coloring_count(capacities);
    if count > EXHAUSTIVE_LIMIT {
        return Err(Error::OracleSize(format!(
            "{count:.3e} colorings exceeds the limit of {EXHAUSTIVE_LIMIT:.0e}"
        )));
    }

    struct Search<'a> {
        g: &'a Graph,
        capacities: &'a [usize],
        objective: Objective,
        colors: Vec<usize>,
        counts: Vec<usize>,
        best: Option<(Vec<usize>, usize)>,
    }

    impl Search<'_> {
        fn visit(&mut self, v: usize) -> Result<()> {
            let k = self.capacities.len();
            if v == self.colors.len() {
                let p = Partition::with_capacities(self.colors.clone(), self.capacities.to_vec())?;
                let value = objective_value(self.g, &p, self.objective)?;
                if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
                    self.best = Some((self.colors.clone(), value));
                }
                return Ok(());
            }
            for c in 0..k {
                if self.counts[c] == self.capacities[c] {
                    continue;
                }
                // Among empty parts of equal size only the lowest may be opened.
                if self.counts[c] == 0
                    && (0..c)
                        .any(|e| self.counts[e] == 0 && self.capacities[e] == self.capacities[c])
                {
                    continue;
                }
                self.colors[v] = c;
                self.counts[c] += 1;
                self.visit(v + 1)?;
                self.counts[c] -= 1;
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        capacities,
        objective,
        colors: vec![0; n],
        counts: vec![0; capacities.len()],
        best: None,
    };
    search.visit(0)?;
    let (colors, value) = search.best.expect("at least one coloring");
    Ok((
        Partition::with_capacities(colors, capacities.to_vec())?,
        value,
    ))
}
