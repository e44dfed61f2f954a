//! Vertex cover grafting: builds a partitioned graph state hamlet pair by
//! hamlet pair, spending one Bell pair per vertex of a minimum vertex cover of
//! each pair's cross edges. Intra-hamlet edges are added by local CZs at the end.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::graphstate::{GraphState, QubitId};
use crate::matching::{all_cross_graphs, hopcroft_karp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcgEvent {
    /// Start of work on hamlet pair `(a, b)`.
    PairOpen {
        a: usize,
        b: usize,
    },
    /// Mayors of hamlets `a` and `b` receive fresh qubits `qa`, `qb` sharing a Bell pair.
    Bell {
        a: usize,
        b: usize,
        qa: QubitId,
        qb: QubitId,
    },
    Cz {
        u: QubitId,
        v: QubitId,
    },
    Y {
        q: QubitId,
    },
}

impl fmt::Display for VcgEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VcgEvent::PairOpen { a, b } => write!(f, "PAIR {a} {b}"),
            VcgEvent::Bell { a, b, qa, qb } => write!(f, "BELL {a} {b} {qa} {qb}"),
            VcgEvent::Cz { u, v } => write!(f, "CZ {u} {v}"),
            VcgEvent::Y { q } => write!(f, "Y {q}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VcgTrace {
    /// Qubits present before the first event (the graph's vertices).
    pub initial_qubits: usize,
    pub ops: Vec<VcgEvent>,
    pub per_pair_bells: BTreeMap<(usize, usize), usize>,
}

impl VcgTrace {
    pub fn new(initial_qubits: usize) -> Self {
        VcgTrace {
            initial_qubits,
            ..Default::default()
        }
    }

    pub fn bell_pairs_used(&self) -> usize {
        self.per_pair_bells.values().sum()
    }

    /// Replayable log: an `INIT n` line followed by one line per event.
    pub fn to_text(&self) -> String {
        let mut out = format!("INIT {}\n", self.initial_qubits);
        for op in &self.ops {
            writeln!(out, "{op}").unwrap();
        }
        out
    }
}

/// Re-executes a trace written by [`VcgTrace::to_text`] on a fresh state.
pub fn replay_trace(text: &str) -> Result<GraphState> {
    let mut state: Option<GraphState> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, args)) = fields.split_first() else {
            continue;
        };
        let nums: Vec<usize> = args
            .iter()
            .map(|a| {
                a.parse()
                    .map_err(|_| Error::parse(line_no, format!("bad number {a:?}")))
            })
            .collect::<Result<_>>()?;
        let arity = |want: usize| {
            if nums.len() == want {
                Ok(())
            } else {
                Err(Error::parse(
                    line_no,
                    format!("{tag} takes {want} argument(s)"),
                ))
            }
        };
        if tag == "INIT" {
            arity(1)?;
            if state.is_some() {
                return Err(Error::parse(line_no, "repeated INIT"));
            }
            state = Some(GraphState::with_qubits(nums[0]));
            continue;
        }
        let s = state
            .as_mut()
            .ok_or_else(|| Error::parse(line_no, "event before INIT"))?;
        let at_line = |e: Error| Error::parse(line_no, e.to_string());
        match tag {
            "PAIR" => arity(2)?,
            "BELL" => {
                arity(4)?;
                let (qa, qb) = s.bell_pair();
                if (qa, qb) != (nums[2], nums[3]) {
                    return Err(Error::parse(
                        line_no,
                        format!(
                            "bell pair allocated ({qa}, {qb}), trace says ({}, {})",
                            nums[2], nums[3]
                        ),
                    ));
                }
            }
            "CZ" => {
                arity(2)?;
                s.apply_cz(nums[0], nums[1]).map_err(at_line)?;
            }
            "Y" => {
                arity(1)?;
                s.measure_y(nums[0]).map_err(at_line)?;
            }
            "Z" => {
                arity(1)?;
                s.measure_z(nums[0]).map_err(at_line)?;
            }
            other => return Err(Error::parse(line_no, format!("unknown event {other:?}"))),
        }
    }
    state.ok_or_else(|| Error::parse(1, "missing INIT line"))
}

/// Adds the edges `v - n` for every `n` in `remote` using one Bell pair:
/// entangle mayors `Mv`, `Mn`; CZ `v` to `Mv` and each `n` to `Mn`; then Y-measure
/// `Mn` and `Mv`. No other edge of the state changes.
pub fn graft_star(
    state: &mut GraphState,
    trace: &mut VcgTrace,
    v: QubitId,
    remote: &[QubitId],
    pair: (usize, usize),
) -> Result<()> {
    state
        .neighbors(v)
        .map_err(|e| Error::Protocol(e.to_string()))?;
    if remote.is_empty() {
        return Err(Error::Protocol(format!(
            "graft at {v} has no remote neighbors"
        )));
    }
    for (i, &n) in remote.iter().enumerate() {
        if n == v || !state.is_live(n) || remote[..i].contains(&n) {
            return Err(Error::Protocol(format!(
                "invalid remote neighbor {n} for graft at {v}"
            )));
        }
        if state.has_edge(v, n) {
            return Err(Error::Protocol(format!("edge {v}-{n} already exists")));
        }
    }

    let (mayor_v, mayor_n) = state.bell_pair();
    trace.ops.push(VcgEvent::Bell {
        a: pair.0,
        b: pair.1,
        qa: mayor_v,
        qb: mayor_n,
    });
    *trace.per_pair_bells.entry(pair).or_insert(0) += 1;

    state.apply_cz(v, mayor_v)?;
    trace.ops.push(VcgEvent::Cz { u: v, v: mayor_v });
    for &n in remote {
        state.apply_cz(n, mayor_n)?;
        trace.ops.push(VcgEvent::Cz { u: n, v: mayor_n });
    }
    // Mn's neighborhood is {Mv} ∪ remote: the remote set becomes a clique with Mv.
    state.measure_y(mayor_n)?;
    trace.ops.push(VcgEvent::Y { q: mayor_n });
    // Mv's neighborhood is {v} ∪ remote: adds v-n and undoes the remote clique.
    state.measure_y(mayor_v)?;
    trace.ops.push(VcgEvent::Y { q: mayor_v });
    Ok(())
}

/// Runs the protocol without checking the outcome.
pub fn execute_vcg(g: &Graph, p: &Partition) -> Result<(GraphState, VcgTrace)> {
    let (state, trace, _) = execute(g, p)?;
    Ok((state, trace))
}

fn execute(g: &Graph, p: &Partition) -> Result<(GraphState, VcgTrace, usize)> {
    let mut state = GraphState::with_qubits(g.n());
    let mut trace = VcgTrace::new(g.n());
    let mut matching_total = 0;

    for ((a, b), bg) in all_cross_graphs(g, p)? {
        if bg.is_empty() {
            continue;
        }
        trace.ops.push(VcgEvent::PairOpen { a, b });
        let cover = hopcroft_karp(&bg);
        matching_total += cover.size();
        for &root in &cover.cover {
            let other = if p.color(root) == a { b } else { a };
            let remote: Vec<QubitId> = g
                .neighbors(root)
                .iter()
                .copied()
                .filter(|&u| p.color(u) == other && !state.has_edge(root, u))
                .collect();
            // Every edge at this root was already grafted from the far side.
            if remote.is_empty() {
                continue;
            }
            graft_star(&mut state, &mut trace, root, &remote, (a, b))?;
        }
    }

    for (u, v) in g.edges() {
        if p.color(u) == p.color(v) {
            state.apply_cz(u, v)?;
            trace.ops.push(VcgEvent::Cz { u, v });
        }
    }
    Ok((state, trace, matching_total))
}

/// Runs the protocol and checks that the final state is exactly `g` on the
/// original qubits, that every mayor qubit was measured out, and that the
/// Bell pairs spent equal the sum of pairwise maximum matchings.
pub fn run_vcg(g: &Graph, p: &Partition) -> Result<(GraphState, VcgTrace)> {
    let (state, trace, matching_total) = execute(g, p)?;
    verify(g, &state, trace.bell_pairs_used(), matching_total)?;
    Ok((state, trace))
}

/// Compares a final protocol state against the target graph.
pub fn verify(g: &Graph, state: &GraphState, bell_pairs: usize, matching_sum: usize) -> Result<()> {
    let n = g.n();
    let leftover: Vec<QubitId> = state.live_qubits().filter(|&q| q >= n).collect();
    let dead: Vec<QubitId> = (0..n).filter(|&q| !state.is_live(q)).collect();
    if !dead.is_empty() {
        return Err(Error::State(format!(
            "target qubits measured out: {dead:?}"
        )));
    }
    let got = state.edges();
    let missing: Vec<_> = g.edges().filter(|&(u, v)| !state.has_edge(u, v)).collect();
    let extra: Vec<_> = got
        .into_iter()
        .filter(|&(u, v)| u >= n || v >= n || !g.has_edge(u, v))
        .collect();
    if missing.is_empty() && extra.is_empty() && leftover.is_empty() && bell_pairs == matching_sum {
        Ok(())
    } else {
        Err(Error::Verification {
            missing,
            extra,
            leftover,
            bell_pairs,
            matching_sum,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid;
    use crate::metrics;

    #[test]
    fn graft_builds_star() {
        let mut s = GraphState::with_qubits(4);
        let mut t = VcgTrace::new(4);
        graft_star(&mut s, &mut t, 0, &[1, 2, 3], (0, 1)).unwrap();
        assert_eq!(s.edges(), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(t.bell_pairs_used(), 1);
        assert_eq!(s.live_count(), 4);
    }

    #[test]
    fn graft_keeps_remote_edges() {
        let mut s = GraphState::with_qubits(4);
        s.apply_cz(1, 2).unwrap();
        let mut t = VcgTrace::new(4);
        graft_star(&mut s, &mut t, 0, &[1, 2, 3], (0, 1)).unwrap();
        assert_eq!(s.edges(), vec![(0, 1), (0, 2), (0, 3), (1, 2)]);
    }

    #[test]
    fn graft_single_neighbor() {
        let mut s = GraphState::with_qubits(2);
        let mut t = VcgTrace::new(2);
        graft_star(&mut s, &mut t, 1, &[0], (0, 1)).unwrap();
        assert_eq!(s.edges(), vec![(0, 1)]);
        assert_eq!(t.per_pair_bells[&(0, 1)], 1);
    }

    #[test]
    fn graft_preconditions() {
        let mut s = GraphState::with_qubits(3);
        s.apply_cz(0, 1).unwrap();
        let mut t = VcgTrace::new(3);
        assert!(matches!(
            graft_star(&mut s, &mut t, 0, &[1], (0, 1)),
            Err(Error::Protocol(_))
        ));
        assert!(matches!(
            graft_star(&mut s, &mut t, 0, &[], (0, 1)),
            Err(Error::Protocol(_))
        ));
        assert!(matches!(
            graft_star(&mut s, &mut t, 0, &[0], (0, 1)),
            Err(Error::Protocol(_))
        ));
        assert!(matches!(
            graft_star(&mut s, &mut t, 9, &[2], (0, 1)),
            Err(Error::Protocol(_))
        ));
        assert!(matches!(
            graft_star(&mut s, &mut t, 0, &[2, 2], (0, 1)),
            Err(Error::Protocol(_))
        ));
        assert_eq!(t.bell_pairs_used(), 0);
    }

    #[test]
    fn monochrome_uses_local_gates_only() {
        let g = grid(3, 3);
        let (s, t) = run_vcg(&g, &Partition::monochrome(9)).unwrap();
        assert_eq!(t.bell_pairs_used(), 0);
        assert_eq!(s.to_graph(9).unwrap(), g);
        assert!(t.ops.iter().all(|op| matches!(op, VcgEvent::Cz { .. })));
    }

    #[test]
    fn grid_three_way_matches_metrics() {
        let g = grid(6, 6);
        let p = Partition::from_colors((0..36).map(|v| (v % 6) / 2).collect(), 3).unwrap();
        let (s, t) = run_vcg(&g, &p).unwrap();
        assert_eq!(s.to_graph(36).unwrap(), g);
        assert_eq!(t.bell_pairs_used(), metrics::matching_sum(&g, &p).unwrap());
        assert_eq!(t.bell_pairs_used(), 12);
    }

    #[test]
    fn trace_replays_to_same_state() {
        let g = grid(4, 4);
        let p = Partition::from_colors(
            (0..16)
                .map(|v| usize::from(v % 4 >= 2) + 2 * usize::from(v >= 8))
                .collect(),
            4,
        )
        .unwrap();
        let (s, t) = run_vcg(&g, &p).unwrap();
        let replayed = replay_trace(&t.to_text()).unwrap();
        assert_eq!(replayed, s);
    }

    #[test]
    fn replay_rejects_garbage() {
        assert!(replay_trace("CZ 0 1").is_err());
        assert!(replay_trace("INIT 2\nCZ 0 0").is_err());
        assert!(replay_trace("INIT 2\nBELL 0 1 5 6").is_err());
        assert!(replay_trace("INIT 2\nFOO 1").is_err());
        assert!(replay_trace("").is_err());
    }

    #[test]
    fn verify_reports_differences() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let mut s = GraphState::with_qubits(3);
        s.apply_cz(1, 2).unwrap();
        let err = verify(&g, &s, 0, 0).unwrap_err();
        match err {
            Error::Verification { missing, extra, .. } => {
                assert_eq!(missing, vec![(0, 1)]);
                assert_eq!(extra, vec![(1, 2)]);
            }
            other => panic!("unexpected {other}"),
        }
        let s = GraphState::from_graph(&g);
        assert!(verify(&g, &s, 1, 2).is_err());
        assert!(verify(&g, &s, 2, 2).is_ok());
    }
}
