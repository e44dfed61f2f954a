//! Partitioners: the bury heuristic and the baselines it is compared against.

mod bury;
mod kl;
mod sampling;

use std::fmt;
use std::str::FromStr;

pub use bury::{
    bury_bipartition, bury_kpartition, bury_kpartition_with, bury_seeding, bury_seeding_kpartition,
    BuryState, PassMode, TieBreak,
};
pub use kl::{bisect, kernighan_lin};
pub use sampling::{
    coloring_count, exhaustive_optimum, random_balanced, random_sampling, EXHAUSTIVE_LIMIT,
};

use crate::error::Result;
use crate::graph::{Graph, Partition};
use crate::metrics::Objective;

/// Default KL pass limit.
pub const KL_MAX_PASSES: usize = 50;

/// A partitioner selectable by name: `bury`, `bury-seed:<v>`, `kl`,
/// `kl:<passes>` or `random:<trials>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bury,
    BurySeed(usize),
    KernighanLin { max_passes: usize },
    Random { trials: usize },
}

impl Algorithm {
    /// Partition `g` into parts of the given sizes. `seed` drives every random
    /// choice, so equal inputs give equal outputs.
    pub fn run(&self, g: &Graph, capacities: &[usize], seed: u64) -> Result<Partition> {
        match *self {
            Algorithm::Bury => bury_kpartition(g, capacities, TieBreak::LowestIndex),
            Algorithm::BurySeed(v) => {
                bury_seeding_kpartition(g, capacities, v, TieBreak::LowestIndex)
            }
            Algorithm::KernighanLin { max_passes } => {
                kernighan_lin(g, capacities, seed, max_passes)
            }
            Algorithm::Random { trials } => {
                random_sampling(g, capacities, trials, seed, Objective::MatchingSum).map(|(p, _)| p)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Algorithm::Bury => write!(f, "bury"),
            Algorithm::BurySeed(v) => write!(f, "bury-seed:{v}"),
            Algorithm::KernighanLin { max_passes } if max_passes == KL_MAX_PASSES => {
                write!(f, "kl")
            }
            Algorithm::KernighanLin { max_passes } => write!(f, "kl:{max_passes}"),
            Algorithm::Random { trials } => write!(f, "random:{trials}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let number = |what: &str| -> std::result::Result<usize, String> {
            let arg = arg.ok_or_else(|| format!("{name} needs {what}, as in {name}:<{what}>"))?;
            arg.parse()
                .map_err(|_| format!("{name}: {what} must be a non-negative integer, got {arg:?}"))
        };
        match name {
            "bury" if arg.is_none() => Ok(Algorithm::Bury),
            "bury-seed" => Ok(Algorithm::BurySeed(number("vertex")?)),
            "kl" if arg.is_none() => Ok(Algorithm::KernighanLin {
                max_passes: KL_MAX_PASSES,
            }),
            "kl" => Ok(Algorithm::KernighanLin {
                max_passes: number("passes")?,
            }),
            "random" => match number("trials")? {
                0 => Err("random: trials must be at least 1".into()),
                trials => Ok(Algorithm::Random { trials }),
            },
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for name in ["bury", "bury-seed:3", "kl", "kl:7", "random:1000"] {
            let algo: Algorithm = name.parse().unwrap();
            assert_eq!(algo.to_string(), name);
        }
        for bad in [
            "",
            "metis",
            "random",
            "random:0",
            "random:x",
            "bury:2",
            "bury-seed",
        ] {
            assert!(bad.parse::<Algorithm>().is_err(), "{bad}");
        }
    }
}
