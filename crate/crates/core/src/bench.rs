//! Benchmark sweeps over graph family × size × k × algorithm × sample.
//!
//! Every run gets a seed derived from the master seed and the run's
//! coordinates, never from a shared RNG stream, so rows are reproducible one
//! by one and adding an algorithm or a k value leaves the graph samples alone.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{balanced_capacities, Graph};
use crate::metrics;
use crate::partition::Algorithm;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Grid,
    Regular {
        degree: usize,
    },
    ErdosRenyi {
        p: f64,
    },
    /// Fixed graphs read from edge-list files; `samples` then only varies the
    /// partitioner seed.
    File {
        paths: Vec<PathBuf>,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Regular { .. } => "regular",
            Family::ErdosRenyi { .. } => "erdos-renyi",
            Family::File { .. } => "file",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub family: Family,
    /// Total vertex counts; ignored for [`Family::File`].
    pub sizes: Vec<usize>,
    pub ks: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub samples: usize,
    pub seed: u64,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::param("no algorithms given"));
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return Err(Error::param("k values must be given and positive"));
        }
        if self.samples == 0 {
            return Err(Error::param("samples must be at least 1"));
        }
        match &self.family {
            Family::File { paths } if paths.is_empty() => {
                Err(Error::param("file family needs input files"))
            }
            Family::File { .. } => Ok(()),
            _ if self.sizes.is_empty() => Err(Error::param("no sizes given")),
            Family::Regular { degree } => match self
                .sizes
                .iter()
                .find(|&&n| (n * degree) % 2 == 1 || *degree >= n)
            {
                Some(n) => Err(Error::param(format!(
                    "no {degree}-regular graph on {n} vertices"
                ))),
                None => Ok(()),
            },
            Family::ErdosRenyi { p } if !(0.0..=1.0).contains(p) => {
                Err(Error::param(format!("edge probability {p} outside [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

/// One CSV row. Failed runs keep their coordinates, leave the metric
/// columns empty and carry the message in `error`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub algorithm: String,
    pub rng_seed: u64,
    pub cut_edges: Option<usize>,
    pub matching_sum: Option<usize>,
    pub cutrank_sum: Option<usize>,
    pub wall_time_ms: f64,
    pub error: String,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the run at `coords` under `master`.
pub fn derive_seed(master: u64, coords: &[u64]) -> u64 {
    coords.iter().fold(mix(master), |acc, &c| mix(acc ^ mix(c)))
}

fn name_tag(name: &str) -> u64 {
    // FNV-1a, stable across platforms and releases.
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

struct Sample {
    n: usize,
    seed: u64,
    graph: std::result::Result<Graph, String>,
}

fn build_samples(spec: &BenchSpec) -> Result<Vec<Sample>> {
    let family_tag = name_tag(spec.family.name());
    if let Family::File { paths } = &spec.family {
        let mut out = Vec::new();
        for (i, path) in paths.iter().enumerate() {
            let text = std::fs::read_to_string(path)?;
            let graph =
                crate::io::read_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()));
            for sample in 0..spec.samples {
                out.push(Sample {
                    n: graph.as_ref().map_or(0, Graph::n),
                    seed: derive_seed(spec.seed, &[family_tag, i as u64, sample as u64]),
                    graph: graph.clone(),
                });
            }
        }
        return Ok(out);
    }
    let coords: Vec<(usize, usize)> = spec
        .sizes
        .iter()
        .flat_map(|&n| (0..spec.samples).map(move |s| (n, s)))
        .collect();
    Ok(coords
        .into_par_iter()
        .map(|(n, sample)| {
            let seed = derive_seed(spec.seed, &[family_tag, n as u64, sample as u64]);
            let graph = match spec.family {
                Family::Grid => Ok(generate::near_square_grid(n)),
                Family::Regular { degree } => generate::random_regular(n, degree, seed),
                Family::ErdosRenyi { p } => generate::erdos_renyi(n, p, seed),
                Family::File { .. } => unreachable!(),
            }
            .map_err(|e| e.to_string());
            Sample { n, seed, graph }
        })
        .collect())
}

/// Runs the sweep. Individual failures become error rows; only an invalid `BenchSpec` or an
/// unreadable input file fails the whole call.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    spec.validate()?;
    let samples = build_samples(spec)?;
    let tasks: Vec<(&Sample, usize, Algorithm)> = samples
        .iter()
        .flat_map(|s| {
            spec.ks
                .iter()
                .flat_map(move |&k| spec.algorithms.iter().map(move |&a| (s, k, a)))
        })
        .collect();

    Ok(tasks
        .into_par_iter()
        .map(|(sample, k, algo)| {
            let name = algo.to_string();
            let mut row = BenchRow {
                family: spec.family.name().to_string(),
                n: sample.n,
                k,
                algorithm: name.clone(),
                rng_seed: sample.seed,
                cut_edges: None,
                matching_sum: None,
                cutrank_sum: None,
                wall_time_ms: 0.0,
                error: String::new(),
            };
            let g = match &sample.graph {
                Ok(g) => g,
                Err(e) => {
                    row.error = e.clone();
                    return row;
                }
            };
            let run_seed = derive_seed(sample.seed, &[k as u64, name_tag(&name)]);
            let capacities = balanced_capacities(g.n(), k);
            let start = Instant::now();
            let result = algo.run(g, &capacities, run_seed);
            row.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            match result.and_then(|p| metrics::evaluate(g, &p)) {
                Ok(report) => {
                    row.cut_edges = Some(report.cut_edges);
                    row.matching_sum = Some(report.matching_sum);
                    row.cutrank_sum = Some(report.cutrank_sum);
                }
                Err(e) => row.error = e.to_string(),
            }
            row
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Per-point averages over the successful samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub algorithm: String,
    pub runs: usize,
    pub errors: usize,
    pub mean_cut_edges: f64,
    pub mean_matching_sum: f64,
    pub mean_cutrank_sum: f64,
}

pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, usize, usize, String), Vec<&BenchRow>> = BTreeMap::new();
    for r in rows {
        groups
            .entry((r.family.clone(), r.n, r.k, r.algorithm.clone()))
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(|((family, n, k, algorithm), rs)| {
            let ok: Vec<&&BenchRow> = rs.iter().filter(|r| r.error.is_empty()).collect();
            let mean = |f: fn(&BenchRow) -> Option<usize>| {
                if ok.is_empty() {
                    f64::NAN
                } else {
                    ok.iter().filter_map(|r| f(r)).sum::<usize>() as f64 / ok.len() as f64
                }
            };
            SummaryRow {
                family,
                n,
                k,
                algorithm,
                runs: ok.len(),
                errors: rs.len() - ok.len(),
                mean_cut_edges: mean(|r| r.cut_edges),
                mean_matching_sum: mean(|r| r.matching_sum),
                mean_cutrank_sum: mean(|r| r.cutrank_sum),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> BenchSpec {
        BenchSpec {
            family: Family::Regular { degree: 3 },
            sizes: vec![20, 30],
            ks: vec![2, 3],
            algorithms: vec![Algorithm::Bury, Algorithm::Random { trials: 5 }],
            samples: 3,
            seed: 17,
        }
    }

    #[test]
    fn rows_cover_the_grid_in_order() {
        let rows = run_bench(&spec()).unwrap();
        assert_eq!(rows.len(), 2 * 3 * 2 * 2);
        assert_eq!(rows[0].n, 20);
        assert_eq!(rows[0].algorithm, "bury");
        assert_eq!(rows[1].algorithm, "random:5");
        assert!(rows.iter().all(|r| r.error.is_empty()));
        for r in &rows {
            let (c, m, q) = (
                r.cut_edges.unwrap(),
                r.matching_sum.unwrap(),
                r.cutrank_sum.unwrap(),
            );
            assert!(q <= m && m <= c);
        }
    }

    #[test]
    fn adding_algorithms_keeps_graph_seeds() {
        let a = run_bench(&spec()).unwrap();
        let mut wider = spec();
        wider
            .algorithms
            .insert(0, Algorithm::KernighanLin { max_passes: 3 });
        let b = run_bench(&wider).unwrap();
        let seeds = |rows: &[BenchRow]| {
            let mut s: Vec<u64> = rows.iter().map(|r| r.rng_seed).collect();
            s.dedup();
            s
        };
        assert_eq!(seeds(&a), seeds(&b));
        let bury = |rows: &[BenchRow]| {
            rows.iter()
                .filter(|r| r.algorithm == "bury")
                .map(|r| r.matching_sum)
                .collect::<Vec<_>>()
        };
        assert_eq!(bury(&a), bury(&b));
    }

    #[test]
    fn failures_become_rows() {
        let s = BenchSpec {
            algorithms: vec![Algorithm::BurySeed(25)],
            ..spec()
        };
        let rows = run_bench(&s).unwrap();
        assert!(rows
            .iter()
            .filter(|r| r.n == 20)
            .all(|r| !r.error.is_empty() && r.matching_sum.is_none()));
        assert!(rows
            .iter()
            .filter(|r| r.n == 30)
            .all(|r| r.error.is_empty()));
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(run_bench(&BenchSpec {
            algorithms: vec![],
            ..spec()
        })
        .is_err());
        assert!(run_bench(&BenchSpec {
            sizes: vec![21],
            ..spec()
        })
        .is_err());
        assert!(run_bench(&BenchSpec {
            samples: 0,
            ..spec()
        })
        .is_err());
        assert!(run_bench(&BenchSpec {
            ks: vec![0],
            ..spec()
        })
        .is_err());
    }

    #[test]
    fn csv_has_expected_header() {
        let rows = run_bench(&BenchSpec {
            sizes: vec![10],
            ks: vec![2],
            samples: 1,
            ..spec()
        })
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "family,n,k,algorithm,rng_seed,cut_edges,matching_sum,cutrank_sum,wall_time_ms,error"
        );
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn summary_means() {
        let rows = run_bench(&spec()).unwrap();
        let summary = summarize(&rows);
        assert_eq!(summary.len(), 2 * 2 * 2);
        assert!(summary.iter().all(|s| s.runs == 3 && s.errors == 0));
    }

    #[test]
    fn derived_seeds_differ_by_coordinate() {
        assert_ne!(derive_seed(1, &[2, 3]), derive_seed(1, &[3, 2]));
        assert_ne!(derive_seed(1, &[2]), derive_seed(2, &[2]));
        assert_eq!(derive_seed(5, &[1, 2]), derive_seed(5, &[1, 2]));
    }
}
