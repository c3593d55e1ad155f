//! Measurement protocols, the contextuality hypergraph they generate, and
//! the comparison of its non-orthogonality graph with the exclusivity graph.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exclusivity::exclusivity_graph;
use crate::graphs::{BitSet, Graph};
use crate::scenario::{FormalEvent, MeasurementScenario, ObservableEvent, Outcome};

pub const DEFAULT_PROTOCOL_CAP: u128 = 1_000_000;

/// Contexts after measuring `a`: `C ∖ {a}` for every `C ∋ a`, empty sets dropped.
fn induced_contexts(contexts: &[Vec<usize>], a: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = contexts
        .iter()
        .filter(|c| c.contains(&a))
        .map(|c| c.iter().copied().filter(|&m| m != a).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn measurements_of(contexts: &[Vec<usize>]) -> Vec<usize> {
    let set: BTreeSet<usize> = contexts.iter().flatten().copied().collect();
    set.into_iter().collect()
}

/// The scenario `M{A}` of measurements compatible with `A`, with contexts
/// `C ∖ {A}` for `C ∋ A`. Measurement names are kept.
pub fn induced_scenario(s: &MeasurementScenario, a: &str) -> Result<MeasurementScenario> {
    let ai = s
        .measurement_index(a)
        .ok_or_else(|| Error::domain(format!("unknown measurement {a:?}")))?;
    let contexts = induced_contexts(s.contexts(), ai);
    if contexts.is_empty() {
        return Ok(MeasurementScenario::empty(s.outcome_arity()));
    }
    let keep = measurements_of(&contexts);
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    MeasurementScenario::from_indices(
        keep.iter().map(|&m| s.measurements()[m].clone()).collect(),
        contexts.iter().map(|c| c.iter().map(|m| pos[m]).collect()).collect(),
        s.outcome_arity(),
    )
}

/// Either nothing, or a first measurement with one continuation per outcome.
/// Measurements are indices of the root scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasurementProtocol {
    Empty,
    Step {
        measurement: usize,
        continuations: Vec<Arc<MeasurementProtocol>>,
    },
}

/// A branch through a protocol: the measurements performed and the
/// outcomes observed, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolOutcome {
    pub path: Vec<(usize, Outcome)>,
}

impl ProtocolOutcome {
    /// `s(α)`: the formal event recorded along the branch.
    pub fn event(&self) -> FormalEvent {
        FormalEvent::new(self.path.iter().copied())
    }

    /// The branch as an observable event of `s`; `None` for the empty branch.
    pub fn observable(&self, s: &MeasurementScenario) -> Option<ObservableEvent> {
        let f = self.event();
        s.contexts().iter().enumerate().find_map(|(c, ctx)| {
            (ctx.len() == f.len() && ctx.iter().all(|&m| f.get(m).is_some())).then(|| ObservableEvent {
                context: c,
                outcomes: ctx.iter().map(|&m| f.get(m).expect("checked")).collect(),
            })
        })
    }
}

impl MeasurementProtocol {
    pub fn outcomes(&self) -> Vec<ProtocolOutcome> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        collect_outcomes(self, &mut path, &mut out);
        out
    }

    pub fn first_measurement(&self) -> Option<usize> {
        match self {
            MeasurementProtocol::Empty => None,
            MeasurementProtocol::Step { measurement, .. } => Some(*measurement),
        }
    }
}

fn collect_outcomes(p: &MeasurementProtocol, path: &mut Vec<(usize, Outcome)>, out: &mut Vec<ProtocolOutcome>) {
    match p {
        MeasurementProtocol::Empty => out.push(ProtocolOutcome { path: path.clone() }),
        MeasurementProtocol::Step {
            measurement,
            continuations,
        } => {
            for (o, next) in continuations.iter().enumerate() {
                path.push((*measurement, o as Outcome));
                collect_outcomes(next, path, out);
                path.pop();
            }
        }
    }
}

/// `protocol_outcomes(T)`: every branch with its recorded event.
pub fn protocol_outcomes(p: &MeasurementProtocol) -> Vec<ProtocolOutcome> {
    p.outcomes()
}

struct Enumerator {
    d: usize,
    counts: HashMap<Vec<Vec<usize>>, u128>,
    lists: HashMap<Vec<Vec<usize>>, Arc<Vec<Arc<MeasurementProtocol>>>>,
}

impl Enumerator {
    /// `N(∅) = 1`, `N(S) = Σ_A N(S_A)^d`, saturating.
    fn count(&mut self, contexts: &[Vec<usize>]) -> u128 {
        if contexts.is_empty() {
            return 1;
        }
        if let Some(&n) = self.counts.get(contexts) {
            return n;
        }
        let mut total: u128 = 0;
        for a in measurements_of(contexts) {
            let sub = self.count(&induced_contexts(contexts, a));
            let pow = sub.checked_pow(self.d as u32).unwrap_or(u128::MAX);
            total = total.saturating_add(pow);
        }
        self.counts.insert(contexts.to_vec(), total);
        total
    }

    fn list(&mut self, contexts: &[Vec<usize>]) -> Arc<Vec<Arc<MeasurementProtocol>>> {
        if let Some(l) = self.lists.get(contexts) {
            return l.clone();
        }
        let mut out = Vec::new();
        if contexts.is_empty() {
            out.push(Arc::new(MeasurementProtocol::Empty));
        } else {
            for a in measurements_of(contexts) {
                let subs = self.list(&induced_contexts(contexts, a));
                // Every d-tuple of continuations, first outcome most significant.
                let mut idx = vec![0usize; self.d];
                loop {
                    out.push(Arc::new(MeasurementProtocol::Step {
                        measurement: a,
                        continuations: idx.iter().map(|&i| subs[i].clone()).collect(),
                    }));
                    let mut k = self.d;
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        idx[k] += 1;
                        if idx[k] < subs.len() {
                            break;
                        }
                        idx[k] = 0;
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.lists.insert(contexts.to_vec(), out.clone());
        out
    }
}

fn normalized_contexts(s: &MeasurementScenario) -> Vec<Vec<usize>> {
    let mut cs: Vec<Vec<usize>> = s
        .contexts()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    cs.sort();
    cs
}

/// Number of protocols on `s`, computed without enumerating them.
pub fn count_protocols(s: &MeasurementScenario) -> u128 {
    let mut e = Enumerator {
        d: s.outcome_arity(),
        counts: HashMap::new(),
        lists: HashMap::new(),
    };
    e.count(&normalized_contexts(s))
}

/// Every measurement protocol on `s`, refusing when there are more than `cap`.
pub fn enumerate_protocols(s: &MeasurementScenario, cap: u128) -> Result<Vec<Arc<MeasurementProtocol>>> {
    let mut e = Enumerator {
        d: s.outcome_arity(),
        counts: HashMap::new(),
        lists: HashMap::new(),
    };
    let contexts = normalized_contexts(s);
    let n = e.count(&contexts);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "measurement protocol count",
            size: n,
            cap,
        });
    }
    let list = e.list(&contexts);
    Ok(list.as_ref().clone())
}

/// Per protocol, the set of observable events its outcomes record.
pub fn contextuality_hypergraph(s: &MeasurementScenario, protocols: &[Arc<MeasurementProtocol>]) -> Result<Vec<Vec<usize>>> {
    protocols
        .iter()
        .map(|p| {
            let mut edge: Vec<usize> = p
                .outcomes()
                .iter()
                .map(|o| {
                    o.observable(s)
                        .map(|e| s.event_index(&e))
                        .ok_or_else(|| Error::domain("protocol branch does not end on a context"))
                })
                .collect::<Result<_>>()?;
            edge.sort_unstable();
            edge.dedup();
            Ok(edge)
        })
        .collect()
}

/// Events joined when no hyperedge contains both.
pub fn non_orthogonality_graph(num_events: usize, hyperedges: &[Vec<usize>]) -> Graph {
    let mut together = vec![BitSet::new(num_events); num_events];
    for e in hyperedges {
        let set = BitSet::from_indices(num_events, e.iter().copied());
        for &v in e {
            together[v].union_with(&set);
        }
    }
    let mut g = Graph::new(num_events);
    for (u, with_u) in together.iter().enumerate() {
        for v in u + 1..num_events {
            if !with_u.contains(v) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem4Report {
    pub protocols: usize,
    pub hyperedges: usize,
    pub isomorphic: bool,
    /// First vertex pair on which the two graphs disagree.
    pub counterexample: Option<(String, String)>,
    /// Every event is reached by a protocol starting with each of its measurements.
    pub every_event_reachable: bool,
    /// Events within a hyperedge are pairwise exclusive.
    pub hyperedges_exclusive: bool,
}

impl Theorem4Report {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.every_event_reachable && self.hyperedges_exclusive
    }
}

/// Compares the exclusivity graph with the complement of the
/// non-orthogonality graph, vertex for vertex.
pub fn verify_theorem4(s: &MeasurementScenario, cap: u128) -> Result<Theorem4Report> {
    let protocols = enumerate_protocols(s, cap)?;
    let edges = contextuality_hypergraph(s, &protocols)?;
    let n = s.num_events();
    let excl = exclusivity_graph(s);
    let comp = non_orthogonality_graph(n, &edges).complement();
    let mut counterexample = None;
    'outer: for u in 0..n {
        for v in u + 1..n {
            if excl.graph().has_edge(u, v) != comp.has_edge(u, v) {
                counterexample = Some((s.describe_event(&s.event_at(u)), s.describe_event(&s.event_at(v))));
                break 'outer;
            }
        }
    }
    let hyperedges_exclusive = edges.iter().all(|e| excl.graph().is_clique(e));
    let mut reached: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (p, e) in protocols.iter().zip(&edges) {
        if let Some(a) = p.first_measurement() {
            for &v in e {
                reached.insert((a, v));
            }
        }
    }
    let every_event_reachable = (0..n).all(|v| {
        let ev = s.event_at(v);
        s.context(ev.context).iter().all(|&a| reached.contains(&(a, v)))
    });
    Ok(Theorem4Report {
        protocols: protocols.len(),
        hyperedges: edges.len(),
        isomorphic: counterexample.is_none(),
        counterexample,
        every_event_reachable,
        hyperedges_exclusive,
    })
}
