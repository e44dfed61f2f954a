//! Partitioning graph states across k quantum processors ("hamlets").
//!
//! Generating a graph state whose vertices are spread over several QPUs costs
//! one inter-QPU Bell pair per vertex of a minimum vertex cover of the cross
//! edges between each pair of QPUs (vertex cover grafting, see [`vcg`]). This
//! crate provides:
//!
//! * graphs, partitions, generators and file formats ([`graph`], [`generate`], [`io`]);
//! * Hopcroft–Karp matching with Kőnig covers ([`matching`]) and GF(2) rank ([`gf2`]);
//! * partition metrics: cut edges, sum of pairwise matchings, sum of cut ranks ([`metrics`]);
//! * an edge-level graph-state simulator ([`graphstate`]) and the grafting protocol ([`vcg`]);
//! * the bury heuristic, Kernighan–Lin, random sampling and an exhaustive oracle ([`partition`]);
//! * reproducible benchmark sweeps ([`bench`]).

pub mod bench;
pub mod error;
pub mod generate;
pub mod gf2;
pub mod graph;
pub mod graphstate;
pub mod io;
pub mod matching;
pub mod metrics;
pub mod partition;
pub mod vcg;

pub use error::{Error, Result};
pub use graph::{balanced_capacities, Graph, Partition};
pub use metrics::{evaluate, MetricsReport, Objective};
pub use partition::Algorithm;
