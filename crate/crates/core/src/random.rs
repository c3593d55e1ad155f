//! Random instances for property sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graphs::Graph;
use crate::scenario::{CanonicalHiddenVariable, MeasurementScenario};

/// A scenario on `1..=max_measurements` measurements: random subsets reduced
/// to their maximal members, plus singletons for anything left uncovered.
pub fn random_scenario<R: Rng>(rng: &mut R, max_measurements: usize, d: usize) -> MeasurementScenario {
    let n = rng.gen_range(1..=max_measurements.max(1));
    let tries = rng.gen_range(1..=n + 2);
    let mut sets: Vec<Vec<usize>> = (0..tries)
        .map(|_| {
            let mut c: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if c.is_empty() {
                c.push(rng.gen_range(0..n));
            }
            c
        })
        .collect();
    sets.sort();
    sets.dedup();
    let is_sub = |a: &Vec<usize>, b: &Vec<usize>| a != b && a.iter().all(|x| b.contains(x));
    let mut contexts: Vec<Vec<usize>> = sets
        .iter()
        .filter(|a| !sets.iter().any(|b| is_sub(a, b)))
        .cloned()
        .collect();
    for m in 0..n {
        if !contexts.iter().any(|c| c.contains(&m)) {
            contexts.push(vec![m]);
        }
    }
    contexts.shuffle(rng);
    for c in &mut contexts {
        c.shuffle(rng);
    }
    let names = (0..n).map(|i| format!("M{i}")).collect();
    MeasurementScenario::from_indices(names, contexts, d).expect("antichain covering every measurement")
}

pub fn random_hidden_variable<R: Rng>(rng: &mut R, s: &MeasurementScenario) -> CanonicalHiddenVariable {
    CanonicalHiddenVariable::new(
        (0..s.num_measurements())
            .map(|_| rng.gen_range(0..s.outcome_arity() as u32))
            .collect(),
    )
}

/// `G(n, p)` with `n` drawn from `1..=max_vertices` and `p` from `[0.1, 0.9]`.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let p = rng.gen_range(0.1..0.9);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scenarios_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s = random_scenario(&mut rng, 5, 2);
            assert!(s.num_measurements() <= 5);
        }
    }
}
