use ctxkit::exclusivity::{exclusivity_graph, support_graph};
use ctxkit::random::{random_hidden_variable, random_scenario};
use ctxkit::rational::{frac, int};
use ctxkit::scenario::{bell_scenario, CanonicalHiddenVariable, EmpiricalModel, MeasurementScenario};
use ctxkit::stabilizer::catalog::{bell_table, pr_box};
use ctxkit::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_mixture(rng: &mut ChaCha8Rng, s: &MeasurementScenario, parts: usize) -> EmpiricalModel {
    let mut model = EmpiricalModel::from_hidden_variable(&random_hidden_variable(rng, s), s).unwrap();
    for k in 2..=parts {
        let other = EmpiricalModel::from_hidden_variable(&random_hidden_variable(rng, s), s).unwrap();
        model = model.mix(&other, &frac(k as i64 - 1, k as i64)).unwrap();
    }
    model
}

/// Edges by definition: different events sharing a measurement with different outcomes.
fn exclusive(s: &MeasurementScenario, a: usize, b: usize) -> bool {
    let (ea, eb) = (s.event_at(a), s.event_at(b));
    a != b
        && s.context(ea.context).iter().zip(&ea.outcomes).any(|(m, o)| {
            s.context(eb.context)
                .iter()
                .zip(&eb.outcomes)
                .any(|(m2, o2)| m == m2 && o != o2)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exclusivity_edges_match_definition(seed in any::<u64>(), d in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_scenario(&mut rng, 4, d);
        let g = exclusivity_graph(&s);
        prop_assert_eq!(g.num_vertices(), s.num_events());
        for a in 0..s.num_events() {
            for b in 0..s.num_events() {
                prop_assert_eq!(g.graph().has_edge(a, b), exclusive(&s, a, b));
            }
        }
        for clique in g.context_cliques() {
            prop_assert!(g.graph().is_clique(&clique));
        }
    }

    #[test]
    fn scenario_and_model_json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_scenario(&mut rng, 5, 2);
        prop_assert_eq!(&MeasurementScenario::from_json(&s.to_json()).unwrap(), &s);
        let parts = rng.gen_range(1..4);
        let model = random_mixture(&mut rng, &s, parts);
        let text = serde_json::to_string(&model.to_json()).unwrap();
        let back = EmpiricalModel::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.tables(), model.tables());
    }

    #[test]
    fn hidden_variable_mixtures_are_nonsignalling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_scenario(&mut rng, 5, 3);
        let model = random_mixture(&mut rng, &s, 4);
        prop_assert!(model.is_nonsignalling());
        for t in model.tables() {
            prop_assert_eq!(t.iter().cloned().sum::<Rational>(), int(1));
        }
        let sg = support_graph(&model);
        prop_assert!(sg.num_vertices() <= 4 * s.num_contexts());
    }

    #[test]
    fn hidden_variable_rank_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_scenario(&mut rng, 5, 2);
        let r = rng.gen_range(0..s.num_hidden_variables() as usize);
        let lambda = CanonicalHiddenVariable::from_rank(r, &s);
        let model = EmpiricalModel::from_hidden_variable(&lambda, &s).unwrap();
        for c in 0..s.num_contexts() {
            prop_assert_eq!(model.prob(&lambda.restrict(&s, c)), &int(1));
        }
    }
}

#[test]
fn bell_exclusivity_graph_counts() {
    let g = exclusivity_graph(&bell_scenario());
    assert_eq!((g.num_vertices(), g.num_edges()), (16, 56));
    assert!(g.to_dimacs().lines().any(|l| l == "p edge 16 56"));
}

#[test]
fn signalling_is_detected() {
    let s = bell_scenario();
    let mut tables = bell_table().tables().to_vec();
    tables[0] = vec![frac(1, 2), frac(1, 2), int(0), int(0)];
    let m = EmpiricalModel::new(s, tables).unwrap();
    assert!(!m.is_nonsignalling());
    assert!(m.require_nonsignalling().is_err());
    assert!(pr_box().is_nonsignalling());
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(MeasurementScenario::new(&["A", "B"], &[vec!["A", "B"], vec!["A"]], 2).is_err());
    assert!(MeasurementScenario::new(&["A", "B"], &[vec!["A"]], 2).is_err());
    assert!(MeasurementScenario::new(&["A"], &[vec!["A"]], 1).is_err());
    let s = bell_scenario();
    let bad = vec![vec![frac(1, 2), frac(1, 2), frac(1, 2), int(0)]; 4];
    assert!(EmpiricalModel::new(s.clone(), bad).is_err());
    let neg = vec![vec![frac(3, 2), frac(-1, 2), int(0), int(0)]; 4];
    assert!(EmpiricalModel::new(s, neg).is_err());
}
