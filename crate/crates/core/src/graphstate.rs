//! Edge-level simulator for graph states.
//!
//! Only the graph is tracked. Local Clifford byproducts of measurements are
//! treated as free corrections, so two states are considered equal when
//! their graphs are.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type QubitId = usize;

/// Graph state over qubits with stable ids. Measured qubits are removed and
/// their ids are never handed out again.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphState {
    adjacency: Vec<Option<BTreeSet<QubitId>>>,
}

impl GraphState {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` unentangled |+> qubits with ids `0..n`.
    pub fn with_qubits(n: usize) -> Self {
        GraphState {
            adjacency: vec![Some(BTreeSet::new()); n],
        }
    }

    /// The graph state of `g`, qubit ids equal to vertex indices.
    pub fn from_graph(g: &Graph) -> Self {
        GraphState {
            adjacency: (0..g.n())
                .map(|v| Some(g.neighbors(v).iter().copied().collect()))
                .collect(),
        }
    }

    pub fn is_live(&self, q: QubitId) -> bool {
        matches!(self.adjacency.get(q), Some(Some(_)))
    }

    pub fn live_qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .filter_map(|(q, a)| a.as_ref().map(|_| q))
    }

    pub fn live_count(&self) -> usize {
        self.adjacency.iter().filter(|a| a.is_some()).count()
    }

    /// Id the next allocated qubit will receive.
    pub fn next_id(&self) -> QubitId {
        self.adjacency.len()
    }

    pub fn neighbors(&self, q: QubitId) -> Result<&BTreeSet<QubitId>> {
        self.adjacency
            .get(q)
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::State(format!("qubit {q} is not live")))
    }

    pub fn has_edge(&self, a: QubitId, b: QubitId) -> bool {
        self.neighbors(a).is_ok_and(|n| n.contains(&b))
    }

    /// Live edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(QubitId, QubitId)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adjacency.iter().enumerate() {
            if let Some(nbrs) = nbrs {
                out.extend(nbrs.range(a + 1..).map(|&b| (a, b)));
            }
        }
        out
    }

    pub fn add_plus_qubit(&mut self) -> QubitId {
        self.adjacency.push(Some(BTreeSet::new()));
        self.adjacency.len() - 1
    }

    fn toggle(&mut self, a: QubitId, b: QubitId) {
        let set_a = self.adjacency[a].as_mut().expect("live");
        if !set_a.remove(&b) {
            set_a.insert(b);
            self.adjacency[b].as_mut().expect("live").insert(a);
        } else {
            self.adjacency[b].as_mut().expect("live").remove(&a);
        }
    }

    /// CZ between two live qubits: toggles the edge `ab`.
    pub fn apply_cz(&mut self, a: QubitId, b: QubitId) -> Result<()> {
        if a == b {
            return Err(Error::param(format!(
                "CZ needs two distinct qubits, got {a} twice"
            )));
        }
        self.neighbors(a)?;
        self.neighbors(b)?;
        self.toggle(a, b);
        Ok(())
    }

    /// Two fresh qubits joined by an edge.
    pub fn bell_pair(&mut self) -> (QubitId, QubitId) {
        let a = self.add_plus_qubit();
        let b = self.add_plus_qubit();
        self.toggle(a, b);
        (a, b)
    }

    /// Local complementation at `a`: toggles every edge inside the open
    /// neighborhood of `a`.
    pub fn local_complement(&mut self, a: QubitId) -> Result<()> {
        let nbrs: Vec<QubitId> = self.neighbors(a)?.iter().copied().collect();
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                self.toggle(u, v);
            }
        }
        Ok(())
    }

    /// Z measurement: deletes `a` and its edges.
    pub fn measure_z(&mut self, a: QubitId) -> Result<()> {
        let nbrs = self.neighbors(a)?.clone();
        for u in nbrs {
            self.adjacency[u].as_mut().expect("live").remove(&a);
        }
        self.adjacency[a] = None;
        Ok(())
    }

    /// Y measurement: local complementation at `a`, then deletion of `a`.
    pub fn measure_y(&mut self, a: QubitId) -> Result<()> {
        self.local_complement(a)?;
        self.measure_z(a)
    }

    /// Graph induced on qubits `0..n`; fails if any of them is dead.
    pub fn to_graph(&self, n: usize) -> Result<Graph> {
        let mut edges = Vec::new();
        for a in 0..n {
            edges.extend(self.neighbors(a)?.range(a + 1..n).map(|&b| (a, b)));
        }
        Graph::from_edges(n, edges)
    }
}
