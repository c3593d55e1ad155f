use num_traits::{One, Signed, Zero};

use super::{maximal_cliques, Graph};
use crate::error::{Error, Result};
use crate::lp::{Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;

/// `α*(G, w)`: the maximum of `Σ p_i w_i` over `p ≥ 0` with `Σ_{i∈K} p_i ≤ 1`
/// for every clique `K`, solved exactly.
///
/// Zero-weight vertices are dropped first; the maximal cliques of the induced
/// subgraph on the remaining vertices generate the same constraint set.
pub fn fractional_packing_number(g: &Graph, weights: Option<&[Rational]>) -> Result<Rational> {
    let n = g.num_vertices();
    let w: Vec<Rational> = match weights {
        Some(w) if w.len() != n => {
            return Err(Error::domain(format!("{} weights for {n} vertices", w.len())))
        }
        Some(w) => {
            if w.iter().any(|x| x.is_negative()) {
                return Err(Error::domain("negative vertex weight"));
            }
            w.to_vec()
        }
        None => vec![Rational::one(); n],
    };
    let keep: Vec<usize> = (0..n).filter(|&v| !w[v].is_zero()).collect();
    if keep.is_empty() {
        return Ok(Rational::zero());
    }
    let sub = g.induced(&keep);
    let constraints = maximal_cliques(&sub)
        .into_iter()
        .map(|k| Constraint {
            coeffs: k.into_iter().map(|i| (i, Rational::one())).collect(),
            relation: Relation::Le,
            rhs: Rational::one(),
        })
        .collect();
    let lp = LinearProgram {
        num_vars: keep.len(),
        objective: keep.iter().map(|&v| w[v].clone()).collect(),
        constraints,
    };
    match lp.maximize() {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => unreachable!("clique packing LP is feasible and bounded, got {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn trivial_values() {
        assert_eq!(fractional_packing_number(&Graph::complete(4), None).unwrap(), int(1));
        assert_eq!(fractional_packing_number(&Graph::new(5), None).unwrap(), int(5));
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(fractional_packing_number(&c5, None).unwrap(), frac(5, 2));
    }
}
