use ctxkit::graphs::mis::{independence_degree, BruteForce};
use ctxkit::graphs::{dimacs, fractional_packing_number, independence_number, minimal_independence_number, Graph, MisOptions};
use ctxkit::random::random_graph;
use ctxkit::rational::{frac, int};
use ctxkit::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute() -> MisOptions<'static> {
    MisOptions { solver: &BruteForce, ..MisOptions::default() }
}

fn graph_strategy(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn branch_and_bound_matches_brute_force(g in graph_strategy(18)) {
        let fast = independence_number(&g, None, &MisOptions::default()).unwrap();
        let slow = independence_number(&g, None, &brute()).unwrap();
        prop_assert_eq!(&fast.value, &slow.value);
        prop_assert!(g.is_independent(&fast.witness));
        prop_assert_eq!(fast.witness.len(), fast.size());
    }

    #[test]
    fn weighted_matches_brute_force(g in graph_strategy(14), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<Rational> = (0..g.num_vertices()).map(|_| frac(rng.gen_range(0..7), rng.gen_range(1..4))).collect();
        let fast = independence_number(&g, Some(&w), &MisOptions::default()).unwrap();
        let slow = independence_number(&g, Some(&w), &brute()).unwrap();
        prop_assert_eq!(&fast.value, &slow.value);
        let total: Rational = fast.witness.iter().map(|&v| w[v].clone()).sum();
        prop_assert_eq!(total, fast.value);
    }

    #[test]
    fn alpha_at_most_fractional_packing(g in graph_strategy(12)) {
        let a = independence_number(&g, None, &MisOptions::default()).unwrap();
        let f = fractional_packing_number(&g, None).unwrap();
        prop_assert!(a.value <= f);
    }

    #[test]
    fn minimal_independence_bounds(g in graph_strategy(12)) {
        let a = independence_number(&g, None, &MisOptions::default()).unwrap();
        let m = minimal_independence_number(&g, &MisOptions::default()).unwrap();
        prop_assert!(m.value <= a.size());
        prop_assert!(m.witness.contains(&m.vertex));
        prop_assert!(g.is_independent(&m.witness));
        let d = independence_degree(&g, m.vertex, &brute()).unwrap();
        prop_assert_eq!(d.size(), m.value);
        for v in 0..g.num_vertices() {
            prop_assert!(independence_degree(&g, v, &brute()).unwrap().size() >= m.value);
        }
    }

    #[test]
    fn dimacs_round_trip(g in graph_strategy(15)) {
        let back = dimacs::parse(&dimacs::write(&g, &["round trip"])).unwrap();
        prop_assert_eq!(back.num_vertices(), g.num_vertices());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}

#[test]
fn random_graphs_agree_sequential_and_parallel() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 16);
        let seq = MisOptions { parallel: false, ..MisOptions::default() };
        let a = minimal_independence_number(&g, &seq).unwrap();
        let b = minimal_independence_number(&g, &MisOptions::default()).unwrap();
        assert_eq!((a.value, a.vertex), (b.value, b.vertex));
    }
}

#[test]
fn five_cycle_packing_is_five_halves() {
    let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
    assert_eq!(independence_number(&g, None, &MisOptions::default()).unwrap().value, int(2));
    assert_eq!(fractional_packing_number(&g, None).unwrap(), frac(5, 2));
}

#[test]
fn vertex_cap_applies() {
    let g = Graph::new(10);
    let opts = MisOptions { vertex_cap: 5, ..MisOptions::default() };
    assert!(independence_number(&g, None, &opts).unwrap_err().is_cap_exceeded());
}
