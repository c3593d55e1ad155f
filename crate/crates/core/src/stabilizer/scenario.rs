//! Stabilizer measurement scenarios and Born-rule empirical models.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::matrix::CMatrix;
use super::phase::{all_points, check_phase_space, enumerate_lagrangians, LagrangianSubspace, PhasePoint};
use super::state::{born_weight, BornWeight, QuantumState};
use super::weyl::WeylBasis;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::scenario::{EmpiricalModel, MeasurementScenario, ObservableEvent, Outcome};

/// `P_{M,v} = W(v) P_M W(v)†`, where `P_M` is the joint `+1`/`ω⁰` eigenprojector
/// of the Weyl operators of `M`.
pub fn stabilizer_projector(weyl: &WeylBasis, m: &LagrangianSubspace, v: &PhasePoint) -> CMatrix {
    let p0 = base_projector(weyl, m);
    conjugate_by(weyl, &p0, v)
}

fn base_projector(weyl: &WeylBasis, m: &LagrangianSubspace) -> CMatrix {
    let mut p = CMatrix::identity(weyl.field(), weyl.dim());
    for b in m.basis() {
        p = p.mul(&weyl.eigenprojector(b, 0));
    }
    p
}

fn conjugate_by(weyl: &WeylBasis, p: &CMatrix, v: &PhasePoint) -> CMatrix {
    if v.is_zero() {
        return p.clone();
    }
    let w = weyl.operator(v);
    w.mul(p).mul(&w.adjoint())
}

/// A measurement scenario whose measurements are Weyl operators.
#[derive(Clone, Debug)]
pub struct StabilizerScenario {
    weyl: WeylBasis,
    points: Vec<PhasePoint>,
    /// Per context, the Lagrangian subspace it was built from (Lagrangian scenarios only).
    lagrangians: Vec<Option<LagrangianSubspace>>,
    scenario: MeasurementScenario,
}

/// Born-rule data of one state on every formal event of a scenario.
#[derive(Clone, Debug)]
pub struct BornTables {
    /// Indexed by scenario event index.
    pub weights: Vec<BornWeight>,
}

impl BornTables {
    pub fn support(&self) -> Vec<bool> {
        self.weights.iter().map(|w| w.possible).collect()
    }

    /// All probabilities, if every one is rational.
    pub fn probabilities(&self) -> Option<Vec<Rational>> {
        self.weights.iter().map(|w| w.probability.clone()).collect()
    }
}

impl StabilizerScenario {
    /// Measurements: canonical nonzero phase points of `(Z_d)^{2n}`.
    /// Contexts: the Lagrangian subspaces, each listing its lines.
    pub fn lagrangian(n: usize, d: u32) -> Result<Self> {
        Self::lagrangian_with_field(n, d, WeylBasis::default_field_order(d))
    }

    pub fn lagrangian_with_field(n: usize, d: u32, field_order: usize) -> Result<Self> {
        check_phase_space(n, d)?;
        let weyl = WeylBasis::new(n, d, field_order)?;
        let points: Vec<PhasePoint> = all_points(n, d).filter(|p| p.is_canonical(d)).collect();
        let index: HashMap<&PhasePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let lags = enumerate_lagrangians(n, d)?;
        let contexts: Vec<Vec<usize>> = lags
            .iter()
            .map(|l| l.lines().iter().map(|p| index[p]).collect())
            .collect();
        let names = points.iter().map(|p| p.label(d)).collect();
        let scenario = MeasurementScenario::from_indices(names, contexts, d as usize)?;
        Ok(StabilizerScenario {
            weyl,
            points,
            lagrangians: lags.into_iter().map(Some).collect(),
            scenario,
        })
    }

    /// Arbitrary named Weyl measurements with contexts of pairwise commuting ones.
    pub fn custom(
        weyl: WeylBasis,
        measurements: Vec<(String, PhasePoint)>,
        contexts: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let d = weyl.d;
        for (name, p) in &measurements {
            if p.num_qudits() != weyl.n || p.is_zero() {
                return Err(Error::InvalidScenario(format!(
                    "measurement {name} is not a nonzero point on {} qudits",
                    weyl.n
                )));
            }
        }
        for (ci, c) in contexts.iter().enumerate() {
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    let (pa, pb) = (measurements.get(a), measurements.get(b));
                    if let (Some((na, pa)), Some((nb, pb))) = (pa, pb) {
                        if pa.symplectic(pb, d) != 0 {
                            return Err(Error::InvalidScenario(format!(
                                "context {ci}: {na} and {nb} do not commute"
                            )));
                        }
                    }
                }
            }
        }
        let (names, points): (Vec<String>, Vec<PhasePoint>) = measurements.into_iter().unzip();
        let k = contexts.len();
        let scenario = MeasurementScenario::from_indices(names, contexts, d as usize)?;
        Ok(StabilizerScenario {
            weyl,
            points,
            lagrangians: vec![None; k],
            scenario,
        })
    }

    pub fn scenario(&self) -> &MeasurementScenario {
        &self.scenario
    }

    pub fn weyl(&self) -> &WeylBasis {
        &self.weyl
    }

    pub fn point(&self, m: usize) -> &PhasePoint {
        &self.points[m]
    }

    pub fn lagrangian_of(&self, c: usize) -> Option<&LagrangianSubspace> {
        self.lagrangians[c].as_ref()
    }

    /// For a Lagrangian context: one phase point `v` per joint eigenspace,
    /// with the event it realizes, ordered by event.
    pub fn coset_representatives(&self, c: usize) -> Option<Vec<(ObservableEvent, PhasePoint)>> {
        let lag = self.lagrangian_of(c)?;
        let d = self.weyl.d;
        let p0 = base_projector(&self.weyl, lag);
        let ctx = self.scenario.context(c);
        let k0: Vec<u32> = ctx
            .iter()
            .map(|&m| {
                self.weyl
                    .outcome_on(&self.points[m], &p0)
                    .expect("lines of M stabilize P_M")
            })
            .collect();
        let target = self.weyl.dim();
        let mut reps: BTreeMap<Vec<Outcome>, PhasePoint> = BTreeMap::new();
        for v in all_points(self.weyl.n, d) {
            let outcomes: Vec<Outcome> = ctx
                .iter()
                .zip(&k0)
                .map(|(&m, &k)| (k + self.points[m].symplectic(&v, d)) % d)
                .collect();
            reps.entry(outcomes).or_insert(v);
            if reps.len() == target {
                break;
            }
        }
        Some(
            reps.into_iter()
                .map(|(outcomes, v)| (ObservableEvent { context: c, outcomes }, v))
                .collect(),
        )
    }

    /// Rank-one projectors of the quantum-possible events of context `c`.
    /// Formal events missing from the list are algebraically impossible.
    pub fn event_projectors(&self, c: usize) -> Vec<(ObservableEvent, CMatrix)> {
        match self.coset_representatives(c) {
            Some(reps) => {
                let p0 = base_projector(&self.weyl, self.lagrangian_of(c).unwrap());
                reps.into_iter()
                    .map(|(e, v)| (e, conjugate_by(&self.weyl, &p0, &v)))
                    .collect()
            }
            None => self
                .formal_projectors(c)
                .into_iter()
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// Product of eigenprojectors for every formal event of context `c`,
    /// including the zero products of impossible events.
    pub fn formal_projectors(&self, c: usize) -> Vec<(ObservableEvent, CMatrix)> {
        let ctx = self.scenario.context(c);
        let d = self.weyl.d;
        let eig: Vec<Vec<CMatrix>> = ctx
            .iter()
            .map(|&m| (0..d).map(|k| self.weyl.eigenprojector(&self.points[m], k)).collect())
            .collect();
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), CMatrix::identity(self.weyl.field(), self.weyl.dim()))];
        // Depth-first with shared prefixes, emitting in lexicographic outcome order.
        while let Some((outcomes, prod)) = stack.pop() {
            if outcomes.len() == ctx.len() {
                out.push((ObservableEvent { context: c, outcomes }, prod));
                continue;
            }
            let pos = outcomes.len();
            for k in (0..d).rev() {
                let mut next = outcomes.clone();
                next.push(k);
                let p = if prod.is_zero() { prod.clone() } else { prod.mul(&eig[pos][k as usize]) };
                stack.push((next, p));
            }
        }
        out
    }

    /// Born weights of every formal event.
    pub fn born_tables(&self, state: &QuantumState) -> Result<BornTables> {
        if state.dim() != self.weyl.dim() {
            return Err(Error::domain(format!(
                "state has dimension {}, scenario needs {}",
                state.dim(),
                self.weyl.dim()
            )));
        }
        let state = state.embed(self.weyl.field())?;
        let per_context: Vec<Vec<(usize, BornWeight)>> = (0..self.scenario.num_contexts())
            .into_par_iter()
            .map(|c| {
                self.event_projectors(c)
                    .into_iter()
                    .map(|(e, p)| (self.scenario.event_index(&e), born_weight(&state, &p)))
                    .collect()
            })
            .collect();
        let mut weights = vec![BornWeight::impossible(); self.scenario.num_events()];
        for (i, w) in per_context.into_iter().flatten() {
            weights[i] = w;
        }
        Ok(BornTables { weights })
    }

    /// Exact empirical model of `state`. Fails if some Born probability is
    /// irrational; use [`born_tables`](Self::born_tables) for the support alone.
    pub fn quantum_empirical_model(&self, state: &QuantumState) -> Result<EmpiricalModel> {
        let tables = self.born_tables(state)?;
        let probs = tables.probabilities().ok_or_else(|| {
            Error::domain("Born probabilities of this state are not rational; only the support is exact")
        })?;
        let mut rows = Vec::with_capacity(self.scenario.num_contexts());
        for c in 0..self.scenario.num_contexts() {
            let off = self.scenario.event_offset(c);
            rows.push(probs[off..off + self.scenario.context_size(c)].to_vec());
        }
        let model = EmpiricalModel::new(self.scenario.clone(), rows)?;
        model.require_nonsignalling()?;
        debug_assert!(model.tables().iter().flatten().all(rational::is_probability));
        Ok(model)
    }
}

/// Born-rule model of `state` on the `n`-qudit Lagrangian scenario.
pub fn quantum_empirical_model(state: &QuantumState, n: usize, d: u32) -> Result<EmpiricalModel> {
    let order = state
        .components()
        .first()
        .map(|(_, v)| v.field().order())
        .unwrap_or(1);
    let base = WeylBasis::default_field_order(d);
    let order = num_integer::lcm(order, base);
    StabilizerScenario::lagrangian_with_field(n, d, order)?.quantum_empirical_model(state)
}

/// Nonzero pattern of a model, indexed by event.
pub fn support_of(model: &EmpiricalModel) -> Vec<bool> {
    model.tables().iter().flatten().map(|p| !p.is_zero()).collect()
}
