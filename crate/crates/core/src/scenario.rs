//! Measurement scenarios, events, empirical models and the marginal calculus
//! relating them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type Outcome = u32;

/// Measurements with the family of maximal comeasurable subsets.
///
/// Contexts keep the measurement order they were declared with; outcome
/// tuples of a context are read in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementScenario {
    measurements: Vec<String>,
    contexts: Vec<Vec<usize>>,
    outcome_arity: usize,
    offsets: Vec<usize>,
}

impl MeasurementScenario {
    pub fn new<S: AsRef<str>>(
        measurements: &[S],
        contexts: &[Vec<S>],
        outcome_arity: usize,
    ) -> Result<Self> {
        let names: Vec<String> = measurements.iter().map(|m| m.as_ref().to_string()).collect();
        let mut lookup = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidScenario(format!(
                    "measurement {name:?} declared twice"
                )));
            }
        }
        let mut ctx = Vec::with_capacity(contexts.len());
        for (ci, c) in contexts.iter().enumerate() {
            let mut idx = Vec::with_capacity(c.len());
            for m in c {
                let m = m.as_ref();
                let i = *lookup.get(m).ok_or_else(|| {
                    Error::InvalidScenario(format!("context {ci} names unknown measurement {m:?}"))
                })?;
                idx.push(i);
            }
            ctx.push(idx);
        }
        Self::from_indices(names, ctx, outcome_arity)
    }

    /// Builds a scenario from measurement names and contexts given as indices.
    pub fn from_indices(
        measurements: Vec<String>,
        contexts: Vec<Vec<usize>>,
        outcome_arity: usize,
    ) -> Result<Self> {
        if outcome_arity < 2 {
            return Err(Error::InvalidScenario(format!(
                "outcome arity must be at least 2, got {outcome_arity}"
            )));
        }
        if contexts.is_empty() {
            return Err(Error::InvalidScenario("no contexts".into()));
        }
        let sets: Vec<BTreeSet<usize>> = contexts
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                if c.is_empty() {
                    return Err(Error::InvalidScenario(format!("context {ci} is empty")));
                }
                let set: BTreeSet<usize> = c.iter().copied().collect();
                if set.len() != c.len() {
                    return Err(Error::InvalidScenario(format!(
                        "context {ci} repeats a measurement"
                    )));
                }
                if let Some(&bad) = set.iter().find(|&&m| m >= measurements.len()) {
                    return Err(Error::InvalidScenario(format!(
                        "context {ci} references measurement index {bad}"
                    )));
                }
                Ok(set)
            })
            .collect::<Result<_>>()?;
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j && sets[i].is_subset(&sets[j]) {
                    let show = |k: usize| {
                        contexts[k]
                            .iter()
                            .map(|&m| measurements[m].as_str())
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    let what = if sets[i] == sets[j] {
                        "duplicates"
                    } else {
                        "is a proper subset of"
                    };
                    return Err(Error::InvalidScenario(format!(
                        "context {i} {{{}}} {what} context {j} {{{}}}",
                        show(i),
                        show(j)
                    )));
                }
            }
        }
        let covered: BTreeSet<usize> = sets.iter().flatten().copied().collect();
        if let Some(m) = (0..measurements.len()).find(|m| !covered.contains(m)) {
            return Err(Error::InvalidScenario(format!(
                "measurement {:?} lies in no context",
                measurements[m]
            )));
        }
        Ok(Self::assemble(measurements, contexts, outcome_arity))
    }

    /// The scenario with no measurements and no contexts.
    pub fn empty(outcome_arity: usize) -> Self {
        Self::assemble(Vec::new(), Vec::new(), outcome_arity.max(2))
    }

    fn assemble(measurements: Vec<String>, contexts: Vec<Vec<usize>>, d: usize) -> Self {
        let mut offsets = Vec::with_capacity(contexts.len() + 1);
        let mut acc = 0usize;
        for c in &contexts {
            offsets.push(acc);
            acc += d.pow(c.len() as u32);
        }
        offsets.push(acc);
        MeasurementScenario {
            measurements,
            contexts,
            outcome_arity: d,
            offsets,
        }
    }

    pub fn outcome_arity(&self) -> usize {
        self.outcome_arity
    }

    pub fn measurements(&self) -> &[String] {
        &self.measurements
    }

    pub fn num_measurements(&self) -> usize {
        self.measurements.len()
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn context(&self, c: usize) -> &[usize] {
        &self.contexts[c]
    }

    pub fn num_contexts(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measurements.is_empty()
    }

    pub fn measurement_index(&self, name: &str) -> Option<usize> {
        self.measurements.iter().position(|m| m == name)
    }

    /// Number of observable events of context `c`, `d^|c|`.
    pub fn context_size(&self, c: usize) -> usize {
        self.offsets[c + 1] - self.offsets[c]
    }

    /// Total number of observable events over all contexts.
    pub fn num_events(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Global index of the first event of context `c`.
    pub fn event_offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    /// Global index of an observable event (context block, then lexicographic).
    pub fn event_index(&self, e: &ObservableEvent) -> usize {
        self.offsets[e.context] + tuple_rank(&e.outcomes, self.outcome_arity)
    }

    /// Inverse of [`event_index`](Self::event_index).
    pub fn event_at(&self, index: usize) -> ObservableEvent {
        let c = match self.offsets.binary_search(&index) {
            Ok(mut c) => {
                // Skip past zero-sized blocks; they do not occur for valid scenarios.
                while self.offsets[c + 1] == index {
                    c += 1;
                }
                c
            }
            Err(c) => c - 1,
        };
        let r = index - self.offsets[c];
        ObservableEvent {
            context: c,
            outcomes: tuple_unrank(r, self.contexts[c].len(), self.outcome_arity),
        }
    }

    /// Observable events of context `c` in canonical order.
    pub fn context_events(&self, c: usize) -> impl Iterator<Item = ObservableEvent> + '_ {
        let k = self.contexts[c].len();
        let d = self.outcome_arity;
        (0..self.context_size(c)).map(move |r| ObservableEvent {
            context: c,
            outcomes: tuple_unrank(r, k, d),
        })
    }

    pub fn events(&self) -> impl Iterator<Item = ObservableEvent> + '_ {
        (0..self.num_contexts()).flat_map(move |c| self.context_events(c))
    }

    /// Number of canonical hidden variables `d^|M|`, saturating.
    pub fn num_hidden_variables(&self) -> u128 {
        (self.outcome_arity as u128)
            .checked_pow(self.measurements.len() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Formats an outcome tuple as a table key: digits when `d <= 10`,
    /// comma-separated otherwise.
    pub fn tuple_key(&self, outcomes: &[Outcome]) -> String {
        tuple_key(outcomes, self.outcome_arity)
    }

    pub fn parse_tuple_key(&self, c: usize, key: &str) -> Result<Vec<Outcome>> {
        let k = self.contexts[c].len();
        let parts: Vec<&str> = if key.contains(',') {
            key.split(',').map(str::trim).collect()
        } else if self.outcome_arity <= 10 {
            key.trim()
                .char_indices()
                .map(|(i, ch)| &key.trim()[i..i + ch.len_utf8()])
                .collect()
        } else {
            vec![key.trim()]
        };
        if parts.len() != k {
            return Err(Error::parse(format!(
                "outcome key {key:?} has {} entries, context {c} has {k} measurements",
                parts.len()
            )));
        }
        parts
            .into_iter()
            .map(|p| {
                let o: Outcome = p
                    .parse()
                    .map_err(|_| Error::parse(format!("bad outcome {p:?} in key {key:?}")))?;
                if o as usize >= self.outcome_arity {
                    return Err(Error::parse(format!(
                        "outcome {o} out of range in key {key:?}"
                    )));
                }
                Ok(o)
            })
            .collect()
    }

    pub fn describe_event(&self, e: &ObservableEvent) -> String {
        let parts: Vec<String> = self.contexts[e.context]
            .iter()
            .zip(&e.outcomes)
            .map(|(&m, o)| format!("{}={}", self.measurements[m], o))
            .collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> ScenarioJson {
        ScenarioJson {
            outcome_arity: self.outcome_arity,
            measurements: self.measurements.clone(),
            contexts: self
                .contexts
                .iter()
                .map(|c| c.iter().map(|&m| self.measurements[m].clone()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &ScenarioJson) -> Result<Self> {
        Self::new(&j.measurements, &j.contexts, j.outcome_arity)
    }
}

pub(crate) fn tuple_rank(outcomes: &[Outcome], d: usize) -> usize {
    outcomes.iter().fold(0, |acc, &o| acc * d + o as usize)
}

pub(crate) fn tuple_unrank(mut r: usize, k: usize, d: usize) -> Vec<Outcome> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = (r % d) as Outcome;
        r /= d;
    }
    out
}

pub(crate) fn tuple_key(outcomes: &[Outcome], d: usize) -> String {
    if d <= 10 {
        outcomes.iter().map(|o| o.to_string()).collect()
    } else {
        outcomes
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A total assignment of outcomes to a set of measurements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalEvent {
    assignment: BTreeMap<usize, Outcome>,
}

impl FormalEvent {
    pub fn new(assignment: impl IntoIterator<Item = (usize, Outcome)>) -> Self {
        FormalEvent {
            assignment: assignment.into_iter().collect(),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.keys().copied()
    }

    pub fn get(&self, m: usize) -> Option<Outcome> {
        self.assignment.get(&m).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Restriction `e|_{S'}` to a subset of the domain.
    pub fn coarse_grain(&self, subset: &[usize]) -> Result<FormalEvent> {
        let mut out = BTreeMap::new();
        for &m in subset {
            let o = self.get(m).ok_or_else(|| {
                Error::domain(format!("measurement {m} is not in the event's domain"))
            })?;
            out.insert(m, o);
        }
        Ok(FormalEvent { assignment: out })
    }

    /// True when the two events agree wherever both are defined.
    pub fn is_consistent_with(&self, other: &FormalEvent) -> bool {
        self.assignment
            .iter()
            .all(|(m, o)| other.get(*m).is_none_or(|p| p == *o))
    }
}

/// An outcome tuple for one context, aligned with the context's measurement order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObservableEvent {
    pub context: usize,
    pub outcomes: Vec<Outcome>,
}

impl ObservableEvent {
    pub fn to_formal(&self, s: &MeasurementScenario) -> FormalEvent {
        FormalEvent::new(s.context(self.context).iter().copied().zip(self.outcomes.iter().copied()))
    }

    /// Outcome assigned to measurement `m`, if `m` belongs to this event's context.
    pub fn outcome_of(&self, s: &MeasurementScenario, m: usize) -> Option<Outcome> {
        s.context(self.context)
            .iter()
            .position(|&x| x == m)
            .map(|i| self.outcomes[i])
    }
}

/// A probability distribution over the formal events of an ordered set of
/// measurements, indexed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub domain: Vec<usize>,
    pub probs: Vec<Rational>,
    pub outcome_arity: usize,
}

impl Distribution {
    pub fn new(domain: Vec<usize>, probs: Vec<Rational>, outcome_arity: usize) -> Result<Self> {
        let expected = outcome_arity.pow(domain.len() as u32);
        if probs.len() != expected {
            return Err(Error::InvalidModel(format!(
                "distribution over {} measurements needs {expected} entries, got {}",
                domain.len(),
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !rational::is_probability(p)) {
            return Err(Error::InvalidModel(format!(
                "entry {} is not a probability",
                rational::to_string(p)
            )));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidModel(format!(
                "distribution sums to {}",
                rational::to_string(&total)
            )));
        }
        Ok(Distribution {
            domain,
            probs,
            outcome_arity,
        })
    }

    pub fn prob(&self, outcomes: &[Outcome]) -> &Rational {
        &self.probs[tuple_rank(outcomes, self.outcome_arity)]
    }

    /// Marginal onto `subset`, summing over every extension of each sub-event.
    pub fn marginalize(&self, subset: &[usize]) -> Result<Distribution> {
        let pos: Vec<usize> = subset
            .iter()
            .map(|m| {
                self.domain.iter().position(|x| x == m).ok_or_else(|| {
                    Error::domain(format!("measurement {m} is not in the distribution's domain"))
                })
            })
            .collect::<Result<_>>()?;
        let d = self.outcome_arity;
        let mut out = vec![Rational::zero(); d.pow(subset.len() as u32)];
        for (r, p) in self.probs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let t = tuple_unrank(r, self.domain.len(), d);
            let sub: Vec<Outcome> = pos.iter().map(|&i| t[i]).collect();
            out[tuple_rank(&sub, d)] += p;
        }
        Ok(Distribution {
            domain: subset.to_vec(),
            probs: out,
            outcome_arity: d,
        })
    }
}

/// A deterministic global outcome assignment `λ: M → O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalHiddenVariable {
    pub outcomes: Vec<Outcome>,
}

impl CanonicalHiddenVariable {
    pub fn new(outcomes: Vec<Outcome>) -> Self {
        CanonicalHiddenVariable { outcomes }
    }

    /// The `r`-th hidden variable in lexicographic order over measurement indices.
    pub fn from_rank(r: usize, s: &MeasurementScenario) -> Self {
        Self::new(tuple_unrank(r, s.num_measurements(), s.outcome_arity()))
    }

    pub fn to_formal(&self) -> FormalEvent {
        FormalEvent::new(self.outcomes.iter().copied().enumerate())
    }

    /// The observable event `λ|_C` for context `c`.
    pub fn restrict(&self, s: &MeasurementScenario, c: usize) -> ObservableEvent {
        ObservableEvent {
            context: c,
            outcomes: s.context(c).iter().map(|&m| self.outcomes[m]).collect(),
        }
    }
}

/// Per-context probability tables over observable events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalModel {
    scenario: MeasurementScenario,
    tables: Vec<Vec<Rational>>,
}

impl EmpiricalModel {
    /// Validates table shapes and normalization. Nonsignalling is checked
    /// separately by [`is_nonsignalling`](Self::is_nonsignalling).
    pub fn new(scenario: MeasurementScenario, tables: Vec<Vec<Rational>>) -> Result<Self> {
        if tables.len() != scenario.num_contexts() {
            return Err(Error::InvalidModel(format!(
                "{} tables for {} contexts",
                tables.len(),
                scenario.num_contexts()
            )));
        }
        for (c, t) in tables.iter().enumerate() {
            Distribution::new(scenario.context(c).to_vec(), t.clone(), scenario.outcome_arity())
                .map_err(|e| Error::InvalidModel(format!("context {c}: {e}")))?;
        }
        Ok(EmpiricalModel { scenario, tables })
    }

    pub fn scenario(&self) -> &MeasurementScenario {
        &self.scenario
    }

    pub fn tables(&self) -> &[Vec<Rational>] {
        &self.tables
    }

    pub fn table(&self, c: usize) -> Distribution {
        Distribution {
            domain: self.scenario.context(c).to_vec(),
            probs: self.tables[c].clone(),
            outcome_arity: self.scenario.outcome_arity(),
        }
    }

    pub fn prob(&self, e: &ObservableEvent) -> &Rational {
        &self.tables[e.context][tuple_rank(&e.outcomes, self.scenario.outcome_arity())]
    }

    /// Probability of the event with global index `i`.
    pub fn prob_at(&self, i: usize) -> &Rational {
        let e = self.scenario.event_at(i);
        &self.tables[e.context][i - self.scenario.event_offset(e.context)]
    }

    pub fn is_possible(&self, e: &ObservableEvent) -> bool {
        !self.prob(e).is_zero()
    }

    /// First pair of contexts whose marginals on their overlap differ.
    pub fn signalling_pair(&self) -> Option<(usize, usize)> {
        let n = self.scenario.num_contexts();
        for i in 0..n {
            for j in i + 1..n {
                let ci: BTreeSet<usize> = self.scenario.context(i).iter().copied().collect();
                let overlap: Vec<usize> = self
                    .scenario
                    .context(j)
                    .iter()
                    .copied()
                    .filter(|m| ci.contains(m))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                if overlap.is_empty() {
                    continue;
                }
                let a = self.table(i).marginalize(&overlap).expect("overlap ⊆ context");
                let b = self.table(j).marginalize(&overlap).expect("overlap ⊆ context");
                if a.probs != b.probs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_nonsignalling(&self) -> bool {
        self.signalling_pair().is_none()
    }

    pub fn require_nonsignalling(&self) -> Result<()> {
        match self.signalling_pair() {
            None => Ok(()),
            Some((first, second)) => Err(Error::Signalling { first, second }),
        }
    }

    /// The deterministic model whose every context is the point mass on `λ|_C`.
    pub fn from_hidden_variable(
        lambda: &CanonicalHiddenVariable,
        s: &MeasurementScenario,
    ) -> Result<Self> {
        if lambda.outcomes.len() != s.num_measurements() {
            return Err(Error::domain(format!(
                "hidden variable assigns {} measurements, scenario has {}",
                lambda.outcomes.len(),
                s.num_measurements()
            )));
        }
        if let Some(o) = lambda.outcomes.iter().find(|&&o| o as usize >= s.outcome_arity()) {
            return Err(Error::domain(format!("outcome {o} out of range")));
        }
        let tables = (0..s.num_contexts())
            .map(|c| {
                let mut t = vec![Rational::zero(); s.context_size(c)];
                let e = lambda.restrict(s, c);
                t[tuple_rank(&e.outcomes, s.outcome_arity())] = Rational::one();
                t
            })
            .collect();
        Ok(EmpiricalModel {
            scenario: s.clone(),
            tables,
        })
    }

    /// Convex combination `t·self + (1-t)·other` over the same scenario.
    pub fn mix(&self, other: &EmpiricalModel, t: &Rational) -> Result<EmpiricalModel> {
        if self.scenario != other.scenario {
            return Err(Error::domain("cannot mix models over different scenarios"));
        }
        if !rational::is_probability(t) {
            return Err(Error::domain("mixing weight must lie in [0,1]"));
        }
        let s = Rational::one() - t;
        let tables = self
            .tables
            .iter()
            .zip(&other.tables)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| t * x + &s * y).collect())
            .collect();
        Ok(EmpiricalModel {
            scenario: self.scenario.clone(),
            tables,
        })
    }

    pub fn to_json(&self) -> ModelJson {
        let d = self.scenario.outcome_arity();
        ModelJson {
            scenario: self.scenario.to_json(),
            tables: self
                .tables
                .iter()
                .enumerate()
                .map(|(c, t)| TableJson {
                    context: c,
                    probs: t
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(r, p)| {
                            let k = self.scenario.context(c).len();
                            (tuple_key(&tuple_unrank(r, k, d), d), rational::to_string(p))
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ModelJson) -> Result<Self> {
        let s = MeasurementScenario::from_json(&j.scenario)?;
        let mut tables: Vec<Option<Vec<Rational>>> = vec![None; s.num_contexts()];
        for t in &j.tables {
            if t.context >= s.num_contexts() {
                return Err(Error::InvalidModel(format!("unknown context {}", t.context)));
            }
            if tables[t.context].is_some() {
                return Err(Error::InvalidModel(format!(
                    "context {} has two tables",
                    t.context
                )));
            }
            let mut row = vec![Rational::zero(); s.context_size(t.context)];
            for (key, p) in &t.probs {
                let o = s.parse_tuple_key(t.context, key)?;
                row[tuple_rank(&o, s.outcome_arity())] = rational::parse(p)?;
            }
            tables[t.context] = Some(row);
        }
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(c, t)| t.ok_or_else(|| Error::InvalidModel(format!("context {c} has no table"))))
            .collect::<Result<_>>()?;
        Self::new(s, tables)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioJson {
    pub outcome_arity: usize,
    pub measurements: Vec<String>,
    pub contexts: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub context: usize,
    pub probs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub scenario: ScenarioJson,
    pub tables: Vec<TableJson>,
}

/// The bipartite two-setting two-outcome scenario: measurements
/// `A0, A1, B0, B1`, contexts `(A0,B0), (A0,B1), (A1,B0), (A1,B1)`.
pub fn bell_scenario() -> MeasurementScenario {
    MeasurementScenario::new(
        &["A0", "A1", "B0", "B1"],
        &[
            vec!["A0", "B0"],
            vec!["A0", "B1"],
            vec!["A1", "B0"],
            vec!["A1", "B1"],
        ],
        2,
    )
    .expect("Bell scenario is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn row(v: [i64; 4], den: i64) -> Vec<Rational> {
        v.iter().map(|&x| frac(x, den)).collect()
    }

    #[test]
    fn rejects_nested_contexts_naming_both() {
        let err = MeasurementScenario::new(&["A", "B"], &[vec!["A"], vec!["A", "B"]], 2)
            .unwrap_err()
            .to_string();
        assert!(err.contains("{A}") && err.contains("{A,B}"), "{err}");
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(MeasurementScenario::new(&["A"], &[vec!["A"]], 1).is_err());
        assert!(MeasurementScenario::new::<&str>(&["A"], &[], 2).is_err());
        assert!(MeasurementScenario::new(&["A"], &[vec![]], 2).is_err());
        assert!(MeasurementScenario::new(&["A", "B"], &[vec!["A"]], 2).is_err());
        assert!(MeasurementScenario::new(&["A", "A"], &[vec!["A"]], 2).is_err());
        assert!(MeasurementScenario::new(&["A"], &[vec!["A", "A"]], 2).is_err());
        assert!(MeasurementScenario::new(&["A", "B"], &[vec!["A", "B"], vec!["B", "A"]], 2).is_err());
    }

    #[test]
    fn event_numbering_round_trips() {
        let s = bell_scenario();
        assert_eq!(s.num_events(), 16);
        for (i, e) in s.events().enumerate() {
            assert_eq!(s.event_index(&e), i);
            assert_eq!(s.event_at(i), e);
        }
        assert_eq!(s.event_at(5).outcomes, vec![0, 1]);
        assert_eq!(s.event_at(5).context, 1);
    }

    #[test]
    fn coarse_grain_projects() {
        let e = FormalEvent::new([(0, 1), (2, 0)]);
        assert_eq!(e.coarse_grain(&[0]).unwrap(), FormalEvent::new([(0, 1)]));
        assert_eq!(e.coarse_grain(&[0, 2]).unwrap(), e);
        assert!(e.coarse_grain(&[1]).is_err());
        let lambda = FormalEvent::new([(0, 0), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(
            lambda.coarse_grain(&[1, 3]).unwrap(),
            FormalEvent::new([(1, 0), (3, 0)])
        );
    }

    #[test]
    fn marginal_examples() {
        let p = Distribution::new(vec![0, 2], row([1, 0, 0, 1], 2), 2).unwrap();
        assert_eq!(p.marginalize(&[0]).unwrap().probs, vec![frac(1, 2), frac(1, 2)]);
        let u = Distribution::new(vec![0, 1], row([1, 1, 1, 1], 4), 2).unwrap();
        assert_eq!(u.marginalize(&[0]).unwrap().probs, vec![frac(1, 2), frac(1, 2)]);
        let pr = Distribution::new(vec![1, 3], row([0, 1, 1, 0], 2), 2).unwrap();
        assert_eq!(pr.marginalize(&[3]).unwrap().probs, vec![frac(1, 2), frac(1, 2)]);
        assert!(pr.marginalize(&[0]).is_err());
    }

    #[test]
    fn marginal_reorders_domain() {
        let p = Distribution::new(vec![0, 1], row([1, 2, 0, 1], 4), 2).unwrap();
        let swapped = p.marginalize(&[1, 0]).unwrap();
        assert_eq!(swapped.probs, row([1, 0, 2, 1], 4));
    }

    #[test]
    fn detects_signalling_pair() {
        let s = bell_scenario();
        let m = EmpiricalModel::new(
            s,
            vec![
                row([1, 0, 0, 0], 1),
                row([0, 0, 1, 1], 2),
                row([1, 1, 1, 1], 4),
                row([1, 1, 1, 1], 4),
            ],
        )
        .unwrap();
        assert_eq!(m.signalling_pair(), Some((0, 1)));
        assert!(matches!(
            m.require_nonsignalling(),
            Err(Error::Signalling { first: 0, second: 1 })
        ));
    }

    #[test]
    fn unnormalized_tables_rejected() {
        let s = bell_scenario();
        let t = vec![row([1, 0, 0, 0], 2); 4];
        assert!(EmpiricalModel::new(s, t).is_err());
    }

    #[test]
    fn hidden_variable_models() {
        let s = bell_scenario();
        let zero = CanonicalHiddenVariable::new(vec![0; 4]);
        let m = EmpiricalModel::from_hidden_variable(&zero, &s).unwrap();
        for t in m.tables() {
            assert_eq!(t, &row([1, 0, 0, 0], 1));
        }
        let lambda = CanonicalHiddenVariable::new(vec![1, 0, 1, 0]);
        let m = EmpiricalModel::from_hidden_variable(&lambda, &s).unwrap();
        assert_eq!(m.tables()[0], row([0, 0, 0, 1], 1));
        assert!(m.is_nonsignalling());
    }

    #[test]
    fn json_round_trip() {
        let s = bell_scenario();
        let lambda = CanonicalHiddenVariable::new(vec![1, 0, 1, 0]);
        let m = EmpiricalModel::from_hidden_variable(&lambda, &s).unwrap();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back = EmpiricalModel::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn wide_arity_keys_use_commas() {
        let s = MeasurementScenario::new(&["A", "B"], &[vec!["A", "B"]], 12).unwrap();
        assert_eq!(s.tuple_key(&[11, 3]), "11,3");
        assert_eq!(s.parse_tuple_key(0, "11,3").unwrap(), vec![11, 3]);
        assert!(s.parse_tuple_key(0, "12,3").is_err());
    }
}
