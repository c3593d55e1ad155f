//! Name-keyed registries of interchangeable strategies: MIS solvers and
//! analysis checks, selected at runtime (e.g. from CLI flags).

use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphs::mis::{minimal_independence_number, independence_number, BranchAndBound, BruteForce, MisOptions, MisSolver};
use crate::exclusivity::support_graph;
use crate::logic::{self, CswWeights};
use crate::protocols;
use crate::rational;
use crate::scenario::EmpiricalModel;

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    items: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, items: Vec::new() }
    }

    /// Later registrations under an existing name replace it.
    pub fn register(&mut self, name: &'static str, item: Box<T>) {
        match self.items.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = item,
            None => self.items.push((name, item)),
        }
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.items
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.as_ref())
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown {} {name:?}; available: {}",
                    self.kind,
                    self.names().join(", ")
                ))
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.items.iter().map(|(n, _)| *n).collect()
    }
}

pub fn solvers() -> &'static Registry<dyn MisSolver> {
    static R: OnceLock<Registry<dyn MisSolver>> = OnceLock::new();
    R.get_or_init(|| {
        let mut r: Registry<dyn MisSolver> = Registry::new("MIS solver");
        r.register("branch-and-bound", Box::new(BranchAndBound));
        r.register("brute-force", Box::new(BruteForce));
        r
    })
}

/// Inputs shared by every analysis check.
#[derive(Clone, Copy)]
pub struct CheckContext<'a> {
    pub model: &'a EmpiricalModel,
    pub mis: MisOptions<'a>,
    pub hv_cap: u128,
    pub protocol_cap: u128,
    pub csw: Option<&'a CswWeights>,
}

pub trait AnalysisCheck: Send + Sync {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value>;
}

struct Nonsignalling;
struct StrongCriterion;
struct LogicalCriterion;
struct HiddenVariableLp;
struct Classify;
struct Csw;
struct Protocols;

impl AnalysisCheck for Nonsignalling {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        Ok(match ctx.model.signalling_pair() {
            None => json!({ "nonsignalling": true }),
            Some((a, b)) => json!({ "nonsignalling": false, "contexts": [a, b] }),
        })
    }
}

impl AnalysisCheck for StrongCriterion {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        ctx.model.require_nonsignalling()?;
        let s = ctx.model.scenario();
        let sg = support_graph(ctx.model);
        let labels = sg.context_labels().to_vec();
        let r = independence_number(sg.graph(), None, &ctx.mis.with_partition(&labels))?;
        Ok(json!({
            "alpha_support": r.size(),
            "num_contexts": s.num_contexts(),
            "strongly_contextual": r.size() < s.num_contexts(),
            "witness": r.witness.iter().map(|&v| s.describe_event(sg.event(v))).collect::<Vec<_>>(),
        }))
    }
}

impl AnalysisCheck for LogicalCriterion {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        ctx.model.require_nonsignalling()?;
        let s = ctx.model.scenario();
        let sg = support_graph(ctx.model);
        let labels = sg.context_labels().to_vec();
        let r = minimal_independence_number(sg.graph(), &ctx.mis.with_partition(&labels))?;
        Ok(json!({
            "minimal_independence_number": r.value,
            "num_contexts": s.num_contexts(),
            "logically_contextual": r.value < s.num_contexts(),
            "vertex": s.describe_event(sg.event(r.vertex)),
        }))
    }
}

impl AnalysisCheck for HiddenVariableLp {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        let joint = logic::global_joint_distribution(ctx.model, ctx.hv_cap)?;
        let tau = logic::noncontextual_fraction(ctx.model, ctx.hv_cap)?;
        Ok(json!({
            "joint_feasible": joint.is_some(),
            "noncontextual_fraction": rational::to_string(&tau.tau),
            "noncontextual_part": tau.weights,
        }))
    }
}

impl AnalysisCheck for Classify {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        let opts = logic::ClassifyOptions {
            mis: ctx.mis,
            hv_cap: ctx.hv_cap,
        };
        Ok(serde_json::to_value(logic::classify(ctx.model, &opts)?)?)
    }
}

impl AnalysisCheck for Csw {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        let w = ctx
            .csw
            .ok_or_else(|| Error::Domain("the csw check needs an inequality".into()))?;
        Ok(serde_json::to_value(logic::evaluate_csw(ctx.model, w, &ctx.mis)?)?)
    }
}

impl AnalysisCheck for Protocols {
    fn run(&self, ctx: &CheckContext<'_>) -> Result<Value> {
        Ok(serde_json::to_value(protocols::verify_theorem4(
            ctx.model.scenario(),
            ctx.protocol_cap,
        )?)?)
    }
}

pub fn checks() -> &'static Registry<dyn AnalysisCheck> {
    static R: OnceLock<Registry<dyn AnalysisCheck>> = OnceLock::new();
    R.get_or_init(|| {
        let mut r: Registry<dyn AnalysisCheck> = Registry::new("check");
        r.register("nonsignalling", Box::new(Nonsignalling));
        r.register("thm3", Box::new(StrongCriterion));
        r.register("thm2", Box::new(LogicalCriterion));
        r.register("lp", Box::new(HiddenVariableLp));
        r.register("classify", Box::new(Classify));
        r.register("csw", Box::new(Csw));
        r.register("protocols", Box::new(Protocols));
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(solvers().get("brute-force").unwrap().name(), "brute-force");
        assert!(solvers().get("nope").is_err());
        assert_eq!(
            checks().names(),
            ["nonsignalling", "thm3", "thm2", "lp", "classify", "csw", "protocols"]
        );
    }
}
