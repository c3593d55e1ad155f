//! Exclusivity graphs of scenarios and support graphs of empirical models.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{dimacs, Graph};
use crate::rational::Rational;
use crate::scenario::{EmpiricalModel, MeasurementScenario, ObservableEvent};

/// Observable events as vertices, joined when they assign different outcomes
/// to a shared measurement.
#[derive(Clone, Debug)]
pub struct ExclusivityGraph {
    scenario: MeasurementScenario,
    events: Vec<ObservableEvent>,
    /// Index of each vertex in the full exclusivity graph of the scenario.
    parent_index: Vec<usize>,
    context_of: Vec<usize>,
    graph: Graph,
    weights: Vec<Rational>,
}

/// Builds `G(M, C)` with vertices in canonical event order.
pub fn exclusivity_graph(s: &MeasurementScenario) -> ExclusivityGraph {
    let events: Vec<ObservableEvent> = s.events().collect();
    let n = events.len();
    let mut graph = Graph::new(n);
    let k = s.num_contexts();
    for c1 in 0..k {
        for c2 in c1..k {
            // Positions of shared measurements within each context.
            let shared: Vec<(usize, usize)> = s
                .context(c1)
                .iter()
                .enumerate()
                .filter_map(|(i, m)| s.context(c2).iter().position(|x| x == m).map(|j| (i, j)))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let (o1, o2) = (s.event_offset(c1), s.event_offset(c2));
            for a in 0..s.context_size(c1) {
                let start = if c1 == c2 { a + 1 } else { 0 };
                for b in start..s.context_size(c2) {
                    let (e1, e2) = (&events[o1 + a], &events[o2 + b]);
                    if shared.iter().any(|&(i, j)| e1.outcomes[i] != e2.outcomes[j]) {
                        graph.add_edge(o1 + a, o2 + b);
                    }
                }
            }
        }
    }
    ExclusivityGraph {
        scenario: s.clone(),
        context_of: events.iter().map(|e| e.context).collect(),
        parent_index: (0..n).collect(),
        weights: vec![Rational::one(); n],
        events,
        graph,
    }
}

/// Induced subgraph of the exclusivity graph on the events of nonzero probability.
pub fn support_graph(model: &EmpiricalModel) -> ExclusivityGraph {
    let full = exclusivity_graph(model.scenario());
    let keep: Vec<usize> = (0..full.num_vertices())
        .filter(|&i| !model.prob(&full.events[i]).is_zero())
        .collect();
    full.induced(&keep)
}

impl ExclusivityGraph {
    pub fn scenario(&self) -> &MeasurementScenario {
        &self.scenario
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.events.len()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn event(&self, v: usize) -> &ObservableEvent {
        &self.events[v]
    }

    pub fn events(&self) -> &[ObservableEvent] {
        &self.events
    }

    pub fn parent_index(&self, v: usize) -> usize {
        self.parent_index[v]
    }

    /// Context label of each vertex; a partition of the vertices into cliques.
    pub fn context_labels(&self) -> &[usize] {
        &self.context_of
    }

    /// Vertices grouped by context index, one (possibly empty) group per context.
    pub fn context_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.scenario.num_contexts()];
        for (v, &c) in self.context_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Vertex whose parent index is `parent`, if retained.
    pub fn vertex_of_parent(&self, parent: usize) -> Option<usize> {
        self.parent_index.binary_search(&parent).ok()
    }

    pub fn vertex_of_event(&self, e: &ObservableEvent) -> Option<usize> {
        self.vertex_of_parent(self.scenario.event_index(e))
    }

    pub fn with_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.num_vertices() {
            return Err(Error::domain(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.num_vertices()
            )));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::domain("negative vertex weight"));
        }
        self.weights = weights;
        Ok(self)
    }

    /// Induced subgraph on `keep` (ascending vertex indices), retaining parent indices.
    pub fn induced(&self, keep: &[usize]) -> ExclusivityGraph {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        ExclusivityGraph {
            scenario: self.scenario.clone(),
            events: keep.iter().map(|&v| self.events[v].clone()).collect(),
            parent_index: keep.iter().map(|&v| self.parent_index[v]).collect(),
            context_of: keep.iter().map(|&v| self.context_of[v]).collect(),
            graph: self.graph.induced(keep),
            weights: keep.iter().map(|&v| self.weights[v].clone()).collect(),
        }
    }

    pub fn to_dimacs(&self) -> String {
        let header = format!(
            "exclusivity graph: {} measurements, {} contexts, outcome arity {}",
            self.scenario.num_measurements(),
            self.scenario.num_contexts(),
            self.scenario.outcome_arity()
        );
        dimacs::write(&self.graph, &[&header])
    }

    /// Sidecar mapping DIMACS vertex numbers to events.
    pub fn vertex_map(&self) -> Vec<VertexRecord> {
        self.events
            .iter()
            .enumerate()
            .map(|(v, e)| VertexRecord {
                vertex: v + 1,
                parent: self.parent_index[v],
                context: e.context,
                outcomes: self.scenario.tuple_key(&e.outcomes),
                event: self.scenario.describe_event(e),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    /// 1-based DIMACS vertex number.
    pub vertex: usize,
    /// 0-based index in the full exclusivity graph.
    pub parent: usize,
    pub context: usize,
    pub outcomes: String,
    pub event: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{bell_scenario, CanonicalHiddenVariable};

    #[test]
    fn bell_counts() {
        let g = exclusivity_graph(&bell_scenario());
        assert_eq!(g.num_vertices(), 16);
        assert_eq!(g.num_edges(), 56);
        for v in 0..16 {
            assert_eq!(g.graph().degree(v), 7);
        }
    }

    #[test]
    fn single_context_is_complete() {
        let s = MeasurementScenario::new(&["A", "B"], &[vec!["A", "B"]], 2).unwrap();
        let g = exclusivity_graph(&s);
        assert_eq!(g.graph(), &Graph::complete(4));
    }

    #[test]
    fn deterministic_support_is_independent() {
        let s = bell_scenario();
        let lambda = CanonicalHiddenVariable::new(vec![0, 1, 1, 0]);
        let m = EmpiricalModel::from_hidden_variable(&lambda, &s).unwrap();
        let g = support_graph(&m);
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 0);
        let parents: Vec<usize> = (0..4).map(|v| g.parent_index(v)).collect();
        let expected: Vec<usize> = (0..4).map(|c| s.event_index(&lambda.restrict(&s, c))).collect();
        assert_eq!(parents, expected);
    }

    #[test]
    fn dimacs_export_header() {
        let g = exclusivity_graph(&bell_scenario());
        let text = g.to_dimacs();
        assert!(text.lines().any(|l| l == "p edge 16 56"));
        let map = g.vertex_map();
        assert_eq!(map[5].event, "A0=0,B1=1");
        assert_eq!(map[5].vertex, 6);
    }
}
