//! Logical Bell inequalities, CSW evaluation and the contextuality classifier.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exclusivity::{exclusivity_graph, support_graph, ExclusivityGraph};
use crate::graphs::mis::{independence_number, minimal_independence_number, MisOptions};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::{self, Rational};
use crate::scenario::{CanonicalHiddenVariable, EmpiricalModel, MeasurementScenario, ObservableEvent};

/// Default cap on `d^|M|` for the hidden-variable linear programs.
pub const DEFAULT_HV_CAP: u128 = 1 << 20;

/// The hidden-variable cap, overridden by `CTXKIT_CAP_HV` when set.
pub fn hv_cap_from_env() -> Result<u128> {
    match std::env::var("CTXKIT_CAP_HV") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::parse(format!("CTXKIT_CAP_HV must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_HV_CAP),
    }
}

/// Parses `"A0=0,B1=1"` into the event of the context with exactly those measurements.
pub fn parse_event(s: &MeasurementScenario, text: &str) -> Result<ObservableEvent> {
    let mut assignment = BTreeMap::new();
    for part in text.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("event {text:?}: expected NAME=OUTCOME pairs")))?;
        let m = s
            .measurement_index(name.trim())
            .ok_or_else(|| Error::domain(format!("event {text:?}: unknown measurement {name:?}")))?;
        let o: u32 = value
            .trim()
            .parse()
            .ok()
            .filter(|&o| (o as usize) < s.outcome_arity())
            .ok_or_else(|| Error::domain(format!("event {text:?}: bad outcome {value:?}")))?;
        if assignment.insert(m, o).is_some() {
            return Err(Error::domain(format!("event {text:?}: measurement {name:?} repeated")));
        }
    }
    for (c, ctx) in s.contexts().iter().enumerate() {
        if ctx.len() == assignment.len() && ctx.iter().all(|m| assignment.contains_key(m)) {
            return Ok(ObservableEvent {
                context: c,
                outcomes: ctx.iter().map(|m| assignment[m]).collect(),
            });
        }
    }
    Err(Error::domain(format!("event {text:?} does not cover exactly one context")))
}

/// Event weights for a CSW inequality, indexed by scenario event index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CswWeights {
    pub weights: Vec<Rational>,
}

impl CswWeights {
    pub fn zeros(s: &MeasurementScenario) -> Self {
        CswWeights {
            weights: vec![Rational::zero(); s.num_events()],
        }
    }

    /// From `{"A0=0,B0=0": "1", ...}`; omitted events weigh zero.
    pub fn from_json(s: &MeasurementScenario, text: &str) -> Result<Self> {
        let map: BTreeMap<String, String> = serde_json::from_str(text)?;
        let mut w = Self::zeros(s);
        for (event, value) in map {
            let e = parse_event(s, &event)?;
            let q = rational::parse(&value)?;
            if q.is_negative() {
                return Err(Error::domain(format!("negative weight on {event}")));
            }
            w.weights[s.event_index(&e)] = q;
        }
        Ok(w)
    }

    pub fn to_json(&self, s: &MeasurementScenario) -> BTreeMap<String, String> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| (s.describe_event(&s.event_at(i)), rational::to_string(w)))
            .collect()
    }
}

/// CHSH as a logical Bell inequality on the Bell scenario: outcomes `00`, `11`
/// in the first three contexts and `01`, `10` in the last.
pub fn chsh_weights(s: &MeasurementScenario) -> Result<CswWeights> {
    if s.num_contexts() != 4 || s.outcome_arity() != 2 || s.contexts().iter().any(|c| c.len() != 2) {
        return Err(Error::domain("CHSH weights need a 2-outcome scenario with four contexts of two measurements"));
    }
    let mut w = CswWeights::zeros(s);
    for c in 0..4 {
        let picks: [[u32; 2]; 2] = if c < 3 { [[0, 0], [1, 1]] } else { [[0, 1], [1, 0]] };
        for o in picks {
            let e = ObservableEvent {
                context: c,
                outcomes: o.to_vec(),
            };
            w.weights[s.event_index(&e)] = Rational::one();
        }
    }
    Ok(w)
}

/// Named weightings understood by the CLI.
pub fn named_weights(name: &str, s: &MeasurementScenario) -> Result<CswWeights> {
    match name {
        "chsh" => chsh_weights(s),
        _ => Err(Error::domain(format!("unknown inequality {name:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CswEvaluation {
    #[serde(with = "rational")]
    pub value: Rational,
    #[serde(with = "rational")]
    pub classical_bound: Rational,
    pub violated: bool,
    /// Events of a maximum-weight independent set attaining the bound.
    pub bound_witness: Vec<String>,
}

/// `Σ w_i p_i` against `α(G, w)` on the full exclusivity graph.
pub fn evaluate_csw(model: &EmpiricalModel, w: &CswWeights, opts: &MisOptions<'_>) -> Result<CswEvaluation> {
    let s = model.scenario();
    if w.weights.len() != s.num_events() {
        return Err(Error::domain(format!(
            "{} weights for {} events",
            w.weights.len(),
            s.num_events()
        )));
    }
    let value: Rational = w
        .weights
        .iter()
        .zip(model.tables().iter().flatten())
        .map(|(a, b)| a * b)
        .sum();
    let g = exclusivity_graph(s);
    let labels = g.context_labels().to_vec();
    let r = independence_number(g.graph(), Some(&w.weights), &opts.with_partition(&labels))?;
    Ok(CswEvaluation {
        violated: value > r.value,
        bound_witness: r.witness.iter().map(|&v| s.describe_event(g.event(v))).collect(),
        value,
        classical_bound: r.value,
    })
}

/// `Σ_i k_i Σ_{e ∈ E_i} p(e) ≤ bound`, with the bound equal to the weighted
/// independence number of the exclusivity graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBellInequality {
    /// Per context, selected event positions within the context table.
    pub selected_events: Vec<Vec<usize>>,
    pub coefficients: Vec<u64>,
    pub classical_bound: Rational,
}

impl LogicalBellInequality {
    pub fn new(
        s: &MeasurementScenario,
        selected_events: Vec<Vec<usize>>,
        coefficients: Vec<u64>,
        opts: &MisOptions<'_>,
    ) -> Result<Self> {
        if selected_events.len() != s.num_contexts() || coefficients.len() != s.num_contexts() {
            return Err(Error::domain("one event selection and coefficient per context required"));
        }
        for (c, sel) in selected_events.iter().enumerate() {
            if let Some(&e) = sel.iter().find(|&&e| e >= s.context_size(c)) {
                return Err(Error::domain(format!("context {c} has no event {e}")));
            }
        }
        let mut ineq = LogicalBellInequality {
            selected_events,
            coefficients,
            classical_bound: Rational::zero(),
        };
        let w = ineq.weights(s);
        let g = exclusivity_graph(s);
        let labels = g.context_labels().to_vec();
        ineq.classical_bound = independence_number(g.graph(), Some(&w.weights), &opts.with_partition(&labels))?.value;
        Ok(ineq)
    }

    pub fn weights(&self, s: &MeasurementScenario) -> CswWeights {
        let mut w = CswWeights::zeros(s);
        for (c, sel) in self.selected_events.iter().enumerate() {
            for &e in sel {
                w.weights[s.event_offset(c) + e] = Rational::from_integer(self.coefficients[c].into());
            }
        }
        w
    }

    pub fn value(&self, model: &EmpiricalModel) -> Rational {
        self.selected_events
            .iter()
            .enumerate()
            .flat_map(|(c, sel)| sel.iter().map(move |&e| (c, e)))
            .map(|(c, e)| model.tables()[c][e].clone() * Rational::from_integer(self.coefficients[c].into()))
            .sum()
    }
}

/// The inequality selecting every possible event, with unit coefficients.
/// The model attains `|C|`; the bound is `α` of the support graph.
pub fn strong_contextuality_inequality(model: &EmpiricalModel, opts: &MisOptions<'_>) -> Result<LogicalBellInequality> {
    model.require_nonsignalling()?;
    let s = model.scenario();
    let selected = model
        .tables()
        .iter()
        .map(|t| (0..t.len()).filter(|&e| !t[e].is_zero()).collect())
        .collect();
    LogicalBellInequality::new(s, selected, vec![1; s.num_contexts()], opts)
}

/// Forward bijection: the events `λ|_C` as vertices of the full exclusivity graph.
pub fn hidden_variable_to_independent_set(s: &MeasurementScenario, lambda: &CanonicalHiddenVariable) -> Result<Vec<usize>> {
    if lambda.outcomes.len() != s.num_measurements()
        || lambda.outcomes.iter().any(|&o| o as usize >= s.outcome_arity())
    {
        return Err(Error::domain("hidden variable does not match the scenario"));
    }
    Ok((0..s.num_contexts())
        .map(|c| s.event_index(&lambda.restrict(s, c)))
        .collect())
}

/// Backward bijection: an independent set of size `|C|` of the full
/// exclusivity graph determines a unique canonical hidden variable.
pub fn independent_set_to_hidden_variable(s: &MeasurementScenario, set: &[usize]) -> Result<CanonicalHiddenVariable> {
    if let Some(&v) = set.iter().find(|&&v| v >= s.num_events()) {
        return Err(Error::domain(format!("vertex {v} out of range")));
    }
    let mut outcomes: Vec<Option<u32>> = vec![None; s.num_measurements()];
    for &v in set {
        let e = s.event_at(v);
        for (&m, &o) in s.context(e.context).iter().zip(&e.outcomes) {
            match outcomes[m] {
                Some(prev) if prev != o => {
                    return Err(Error::domain("vertex set is not independent"));
                }
                _ => outcomes[m] = Some(o),
            }
        }
    }
    let mut contexts: Vec<usize> = set.iter().map(|&v| s.event_at(v).context).collect();
    contexts.sort_unstable();
    contexts.dedup();
    if contexts.len() != set.len() {
        return Err(Error::domain("vertex set is not independent"));
    }
    if set.len() != s.num_contexts() {
        return Err(Error::domain(format!(
            "independent set has {} events, need one per context ({})",
            set.len(),
            s.num_contexts()
        )));
    }
    Ok(CanonicalHiddenVariable::new(
        outcomes.into_iter().map(|o| o.expect("every measurement lies in a context")).collect(),
    ))
}

fn check_hv_cap(s: &MeasurementScenario, cap: u128) -> Result<()> {
    let n = s.num_hidden_variables();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "hidden-variable count d^|M|",
            size: n,
            cap,
        });
    }
    Ok(())
}

/// Canonical hidden variables whose every restriction is possible, with
/// the event indices they hit; the rest cannot carry weight in either LP.
fn admissible_hidden_variables(model: &EmpiricalModel, cap: u128) -> Result<Vec<(CanonicalHiddenVariable, Vec<usize>)>> {
    let s = model.scenario();
    check_hv_cap(s, cap)?;
    let total = s.num_hidden_variables() as usize;
    let mut out = Vec::new();
    for r in 0..total {
        let lambda = CanonicalHiddenVariable::from_rank(r, s);
        let hits: Vec<usize> = (0..s.num_contexts())
            .map(|c| s.event_index(&lambda.restrict(s, c)))
            .collect();
        if hits.iter().all(|&i| !model.prob_at(i).is_zero()) {
            out.push((lambda, hits));
        }
    }
    Ok(out)
}

fn hv_program(
    model: &EmpiricalModel,
    hvs: &[(CanonicalHiddenVariable, Vec<usize>)],
    relation: Relation,
    objective: Rational,
) -> LinearProgram {
    let s = model.scenario();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); s.num_events()];
    for (j, (_, hits)) in hvs.iter().enumerate() {
        for &i in hits {
            rows[i].push((j, Rational::one()));
        }
    }
    let constraints = rows
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !model.prob_at(*i).is_zero())
        .map(|(i, coeffs)| Constraint {
            coeffs,
            relation,
            rhs: model.prob_at(i).clone(),
        })
        .collect();
    LinearProgram {
        num_vars: hvs.len(),
        objective: vec![objective; hvs.len()],
        constraints,
    }
}

/// A global distribution over hidden variables (nonzero entries only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HiddenVariableWeights {
    pub entries: Vec<(Vec<u32>, String)>,
}

fn hv_weights(hvs: &[(CanonicalHiddenVariable, Vec<usize>)], x: &[Rational]) -> HiddenVariableWeights {
    HiddenVariableWeights {
        entries: hvs
            .iter()
            .zip(x)
            .filter(|(_, w)| !w.is_zero())
            .map(|((l, _), w)| (l.outcomes.clone(), rational::to_string(w)))
            .collect(),
    }
}

/// Exact LP for a joint distribution over hidden variables marginalizing to
/// every table; `None` when none exists.
pub fn global_joint_distribution(model: &EmpiricalModel, cap: u128) -> Result<Option<HiddenVariableWeights>> {
    model.require_nonsignalling()?;
    let hvs = admissible_hidden_variables(model, cap)?;
    if hvs.is_empty() {
        return Ok(None);
    }
    let lp = hv_program(model, &hvs, Relation::Eq, Rational::zero());
    Ok(match lp.maximize() {
        LpOutcome::Optimal { x, .. } => Some(hv_weights(&hvs, &x)),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncontextualFraction {
    #[serde(with = "rational")]
    pub tau: Rational,
    /// The noncontextual part `τ·A` as weights on hidden variables.
    pub weights: HiddenVariableWeights,
}

/// Largest `τ` with `E = τA + (1−τ)Z`, `A` noncontextual, `Z` nonsignalling.
pub fn noncontextual_fraction(model: &EmpiricalModel, cap: u128) -> Result<NoncontextualFraction> {
    model.require_nonsignalling()?;
    let hvs = admissible_hidden_variables(model, cap)?;
    if hvs.is_empty() {
        return Ok(NoncontextualFraction {
            tau: Rational::zero(),
            weights: HiddenVariableWeights { entries: Vec::new() },
        });
    }
    let lp = hv_program(model, &hvs, Relation::Le, Rational::one());
    match lp.maximize() {
        LpOutcome::Optimal { value, x } => Ok(NoncontextualFraction {
            tau: value,
            weights: hv_weights(&hvs, &x),
        }),
        other => Err(Error::domain(format!("noncontextual-fraction LP ended as {other:?}"))),
    }
}

#[derive(Clone, Copy)]
pub struct ClassifyOptions<'a> {
    pub mis: MisOptions<'a>,
    pub hv_cap: u128,
}

impl Default for ClassifyOptions<'_> {
    fn default() -> Self {
        ClassifyOptions {
            mis: MisOptions::default(),
            hv_cap: DEFAULT_HV_CAP,
        }
    }
}

/// Result of the joint-distribution and τ programs, or why they did not run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpReport {
    Computed {
        joint_feasible: bool,
        #[serde(with = "rational")]
        noncontextual_fraction: Rational,
    },
    /// Strong contextuality forces `τ = 0` and infeasibility.
    DecidedByGraph,
    NotComputed {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub nonsignalling: bool,
    pub num_contexts: usize,
    pub support_size: usize,
    pub alpha_support: usize,
    /// Maximum independent set of the support graph.
    pub alpha_witness: Vec<String>,
    pub strongly_contextual: bool,
    pub minimal_independence_number: usize,
    /// Possible event of minimal independence degree.
    pub minimal_independence_vertex: String,
    pub logically_contextual: bool,
    /// `None` when the hidden-variable programs were not run.
    pub noncontextual: Option<bool>,
    #[serde(with = "rational::opt")]
    pub noncontextual_fraction: Option<Rational>,
    pub lp: LpReport,
    /// Hidden variable of a size-`|C|` independent set in the support (non-strong case).
    pub hidden_variable_witness: Option<Vec<u32>>,
    pub joint_distribution: Option<HiddenVariableWeights>,
}

impl ClassificationReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct GraphVerdicts {
    k: usize,
    support_size: usize,
    alpha_size: usize,
    alpha_witness: Vec<String>,
    strongly: bool,
    minimal: usize,
    minimal_vertex: String,
    logically: bool,
    hidden_variable_witness: Option<Vec<u32>>,
}

fn graph_verdicts(s: &MeasurementScenario, sg: &ExclusivityGraph, mis: &MisOptions<'_>) -> Result<GraphVerdicts> {
    let k = s.num_contexts();
    let labels = sg.context_labels().to_vec();
    let mis = mis.with_partition(&labels);
    let describe = |v: usize| s.describe_event(sg.event(v));
    let alpha = independence_number(sg.graph(), None, &mis)?;
    let strongly = alpha.size() < k;
    let minimal = minimal_independence_number(sg.graph(), &mis)?;
    let logically = minimal.value < k;
    debug_assert!(!strongly || logically);
    let hidden_variable_witness = if strongly {
        None
    } else {
        let parents: Vec<usize> = alpha.witness.iter().map(|&v| sg.parent_index(v)).collect();
        Some(independent_set_to_hidden_variable(s, &parents)?.outcomes)
    };
    Ok(GraphVerdicts {
        k,
        support_size: sg.num_vertices(),
        alpha_size: alpha.size(),
        alpha_witness: alpha.witness.iter().map(|&v| describe(v)).collect(),
        strongly,
        minimal: minimal.value,
        minimal_vertex: describe(minimal.vertex),
        logically,
        hidden_variable_witness,
    })
}

fn report(
    g: GraphVerdicts,
    noncontextual: Option<bool>,
    fraction: Option<Rational>,
    lp: LpReport,
    joint: Option<HiddenVariableWeights>,
) -> ClassificationReport {
    ClassificationReport {
        nonsignalling: true,
        num_contexts: g.k,
        support_size: g.support_size,
        alpha_support: g.alpha_size,
        alpha_witness: g.alpha_witness,
        strongly_contextual: g.strongly,
        minimal_independence_number: g.minimal,
        minimal_independence_vertex: g.minimal_vertex,
        logically_contextual: g.logically,
        noncontextual,
        noncontextual_fraction: fraction,
        lp,
        hidden_variable_witness: g.hidden_variable_witness,
        joint_distribution: joint,
    }
}

/// Graph criteria first (strong via `α`, logical via the minimal
/// independence number), then the hidden-variable programs within the cap.
pub fn classify(model: &EmpiricalModel, opts: &ClassifyOptions<'_>) -> Result<ClassificationReport> {
    model.require_nonsignalling()?;
    let g = graph_verdicts(model.scenario(), &support_graph(model), &opts.mis)?;
    if g.strongly {
        return Ok(report(g, Some(false), Some(Rational::zero()), LpReport::DecidedByGraph, None));
    }
    match global_joint_distribution(model, opts.hv_cap) {
        Ok(joint) => {
            let tau = noncontextual_fraction(model, opts.hv_cap)?.tau;
            let feasible = joint.is_some();
            let lp = LpReport::Computed {
                joint_feasible: feasible,
                noncontextual_fraction: tau.clone(),
            };
            Ok(report(g, Some(feasible), Some(tau), lp, joint))
        }
        Err(e) if e.is_cap_exceeded() => {
            let nc = if g.logically { Some(false) } else { None };
            Ok(report(g, nc, None, LpReport::NotComputed { reason: e.to_string() }, None))
        }
        Err(e) => Err(e),
    }
}

/// Graph verdicts from the possible events alone (indexed by scenario event),
/// for nonsignalling data whose probabilities are not available exactly.
pub fn classify_support(s: &MeasurementScenario, possible: &[bool], opts: &ClassifyOptions<'_>) -> Result<ClassificationReport> {
    if possible.len() != s.num_events() {
        return Err(Error::domain(format!("{} support flags for {} events", possible.len(), s.num_events())));
    }
    for c in 0..s.num_contexts() {
        let off = s.event_offset(c);
        if !possible[off..off + s.context_size(c)].iter().any(|&p| p) {
            return Err(Error::InvalidModel(format!("context {c} has no possible event")));
        }
    }
    let keep: Vec<usize> = (0..s.num_events()).filter(|&i| possible[i]).collect();
    let sg = exclusivity_graph(s).induced(&keep);
    let g = graph_verdicts(s, &sg, &opts.mis)?;
    if g.strongly {
        return Ok(report(g, Some(false), Some(Rational::zero()), LpReport::DecidedByGraph, None));
    }
    let nc = if g.logically { Some(false) } else { None };
    let reason = "only the support is known exactly".to_string();
    Ok(report(g, nc, None, LpReport::NotComputed { reason }, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::scenario::bell_scenario;

    fn table(rows: [[i64; 4]; 4], den: i64) -> EmpiricalModel {
        let t = rows.iter().map(|r| r.iter().map(|&x| frac(x, den)).collect()).collect();
        EmpiricalModel::new(bell_scenario(), t).unwrap()
    }

    fn bell() -> EmpiricalModel {
        table([[4, 0, 0, 4], [3, 1, 1, 3], [3, 1, 1, 3], [1, 3, 3, 1]], 8)
    }

    fn pr() -> EmpiricalModel {
        table([[1, 0, 0, 1], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]], 2)
    }

    #[test]
    fn chsh_values() {
        let opts = MisOptions::default();
        let w = chsh_weights(&bell_scenario()).unwrap();
        let b = evaluate_csw(&bell(), &w, &opts).unwrap();
        assert_eq!((b.value.clone(), b.classical_bound.clone(), b.violated), (frac(13, 4), int(3), true));
        let p = evaluate_csw(&pr(), &w, &opts).unwrap();
        assert_eq!(p.value, int(4));
        let det = EmpiricalModel::from_hidden_variable(&CanonicalHiddenVariable::new(vec![0, 1, 1, 0]), &bell_scenario()).unwrap();
        assert!(!evaluate_csw(&det, &w, &opts).unwrap().violated);
    }

    #[test]
    fn weights_json_round_trip() {
        let s = bell_scenario();
        let w = chsh_weights(&s).unwrap();
        let text = serde_json::to_string(&w.to_json(&s)).unwrap();
        assert_eq!(CswWeights::from_json(&s, &text).unwrap(), w);
        assert!(CswWeights::from_json(&s, r#"{"A0=0,A1=0": "1"}"#).is_err());
        assert!(CswWeights::from_json(&s, r#"{"Q=0,B0=0": "1"}"#).is_err());
    }

    #[test]
    fn strong_inequality() {
        let opts = MisOptions::default();
        let i = strong_contextuality_inequality(&pr(), &opts).unwrap();
        assert_eq!((i.classical_bound.clone(), i.value(&pr())), (int(3), int(4)));
        let i = strong_contextuality_inequality(&bell(), &opts).unwrap();
        assert_eq!(i.classical_bound, int(4));
    }

    #[test]
    fn bijection_examples() {
        let s = bell_scenario();
        let zero = CanonicalHiddenVariable::new(vec![0; 4]);
        let set = hidden_variable_to_independent_set(&s, &zero).unwrap();
        assert_eq!(set, vec![0, 4, 8, 12]);
        assert_eq!(independent_set_to_hidden_variable(&s, &set).unwrap(), zero);
        assert!(independent_set_to_hidden_variable(&s, &[0, 4, 8]).is_err());
        assert!(independent_set_to_hidden_variable(&s, &[0, 1, 8, 12]).is_err());
    }

    #[test]
    fn verdicts() {
        let opts = ClassifyOptions::default();
        let r = classify(&pr(), &opts).unwrap();
        assert!(r.strongly_contextual && r.logically_contextual);
        assert_eq!(r.alpha_support, 3);
        assert_eq!(noncontextual_fraction(&pr(), DEFAULT_HV_CAP).unwrap().tau, int(0));

        let r = classify(&bell(), &opts).unwrap();
        assert!(!r.logically_contextual && r.noncontextual == Some(false));
        assert_eq!(r.minimal_independence_number, 4);
        let tau = r.noncontextual_fraction.unwrap();
        assert!(tau > int(0) && tau < int(1));
        // CHSH exceeds 3 by 1/4 and a nonsignalling model exceeds it by at most 1.
        assert!(int(1) - tau >= frac(1, 4));

        let det = EmpiricalModel::from_hidden_variable(&CanonicalHiddenVariable::new(vec![1, 0, 1, 1]), &bell_scenario()).unwrap();
        let r = classify(&det, &opts).unwrap();
        assert_eq!(r.noncontextual, Some(true));
        assert_eq!(r.noncontextual_fraction, Some(int(1)));
        assert_eq!(r.hidden_variable_witness, Some(vec![1, 0, 1, 1]));
    }

    #[test]
    fn cap_reported() {
        let opts = ClassifyOptions {
            hv_cap: 8,
            ..Default::default()
        };
        let r = classify(&bell(), &opts).unwrap();
        assert_eq!(r.noncontextual, None);
        assert!(matches!(r.lp, LpReport::NotComputed { .. }));
        assert!(noncontextual_fraction(&bell(), 8).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn support_only_matches_full() {
        let opts = ClassifyOptions::default();
        for m in [bell(), pr()] {
            let possible: Vec<bool> = m.tables().iter().flatten().map(|p| !p.is_zero()).collect();
            let a = classify_support(m.scenario(), &possible, &opts).unwrap();
            let b = classify(&m, &opts).unwrap();
            assert_eq!(
                (a.alpha_support, a.minimal_independence_number, a.strongly_contextual),
                (b.alpha_support, b.minimal_independence_number, b.strongly_contextual)
            );
        }
        assert!(classify_support(&bell_scenario(), &[false; 16], &opts).is_err());
    }

    #[test]
    fn signalling_rejected() {
        let m = table([[4, 0, 0, 4], [8, 0, 0, 0], [3, 1, 1, 3], [1, 3, 3, 1]], 8);
        assert!(matches!(classify(&m, &ClassifyOptions::default()), Err(Error::Signalling { .. })));
    }
}
