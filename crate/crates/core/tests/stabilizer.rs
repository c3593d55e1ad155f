use ctxkit::exclusivity::support_graph;
use ctxkit::graphs::{independence_number, MisOptions};
use ctxkit::logic::{classify, ClassifyOptions};
use ctxkit::rational::{frac, int};
use ctxkit::stabilizer::catalog::{cs_state, ghz};
use ctxkit::stabilizer::{CMatrix, QuantumState, StabilizerScenario, StateVector, WeylBasis};
use ctxkit::Rational;
use rayon::prelude::*;

fn maximally_mixed(st: &StabilizerScenario) -> QuantumState {
    QuantumState::maximally_mixed(st.weyl().field(), st.weyl().dim())
}

fn all_projectors(st: &StabilizerScenario) -> Vec<(usize, CMatrix)> {
    let s = st.scenario();
    (0..s.num_contexts())
        .flat_map(|c| st.event_projectors(c).into_iter().map(|(e, p)| (s.event_index(&e), p)))
        .collect()
}

#[test]
fn two_qutrit_overlaps() {
    let st = StabilizerScenario::lagrangian(2, 3).unwrap();
    assert_eq!(st.scenario().num_contexts(), 40);
    let projs = all_projectors(&st);
    assert_eq!(projs.len(), 360);
    let allowed = [int(0), frac(1, 9), frac(1, 3), int(1)];
    let bad: Vec<(usize, usize, Option<Rational>)> = (0..projs.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let projs = &projs;
            let allowed = &allowed;
            (i..projs.len()).filter_map(move |j| {
                let t = projs[i].1.trace_product(&projs[j].1).to_rational();
                let ok = match &t {
                    Some(q) => allowed.contains(q) && (q == &int(1)) == (i == j),
                    None => false,
                };
                (!ok).then_some((i, j, t))
            })
        })
        .collect();
    assert!(bad.is_empty(), "unexpected overlaps: {:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn adjacency_is_orthogonality() {
    for (n, d) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
        let st = StabilizerScenario::lagrangian(n, d).unwrap();
        let model = st.quantum_empirical_model(&maximally_mixed(&st)).unwrap();
        let sg = support_graph(&model);
        let projs = all_projectors(&st);
        assert_eq!(projs.len(), sg.num_vertices());
        let vertex: Vec<usize> = projs
            .iter()
            .map(|(i, _)| sg.vertex_of_parent(*i).expect("quantum-possible event is in the support"))
            .collect();
        let mismatches = (0..projs.len())
            .into_par_iter()
            .map(|a| {
                (a + 1..projs.len())
                    .filter(|&b| {
                        let orth = projs[a].1.trace_product(&projs[b].1).is_zero();
                        orth != sg.graph().has_edge(vertex[a], vertex[b])
                    })
                    .count()
            })
            .sum::<usize>();
        assert_eq!(mismatches, 0, "n={n} d={d}");
    }
}

#[test]
fn two_qubit_counts() {
    let st = StabilizerScenario::lagrangian(2, 2).unwrap();
    let s = st.scenario();
    assert_eq!((s.num_measurements(), s.num_contexts(), s.num_events()), (15, 15, 120));
    let model = st.quantum_empirical_model(&maximally_mixed(&st)).unwrap();
    let sg = support_graph(&model);
    assert_eq!(sg.num_vertices(), 60);
    let labels = sg.context_labels().to_vec();
    let alpha = independence_number(sg.graph(), None, &MisOptions::default().with_partition(&labels)).unwrap();
    assert_eq!(alpha.size(), 12);
}

#[test]
fn two_qutrit_counts_and_cs_tables() {
    let st = StabilizerScenario::lagrangian(2, 3).unwrap();
    let s = st.scenario();
    assert_eq!((s.num_measurements(), s.num_contexts(), s.num_events()), (40, 40, 40 * 81));
    let model = st.quantum_empirical_model(&QuantumState::Pure(cs_state())).unwrap();
    assert!(model.is_nonsignalling());
    for t in model.tables() {
        assert_eq!(t.iter().cloned().sum::<Rational>(), int(1));
    }
}

#[test]
fn ghz_is_strongly_contextual() {
    let model = ghz().unwrap();
    assert_eq!(model.scenario().num_contexts(), 8);
    let r = classify(&model, &ClassifyOptions::default()).unwrap();
    assert!(r.strongly_contextual);
    assert!(r.alpha_support < 8);
}

#[test]
fn amplitude_file_round_trip() {
    let v = cs_state();
    let text = v.to_amplitude_file();
    let back = StateVector::parse_amplitude_file(&text).unwrap();
    assert_eq!(back.amplitudes(), v.amplitudes());
    let shipped = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/cs.amp")).unwrap();
    let parsed = StateVector::parse_amplitude_file(&shipped).unwrap();
    let f = WeylBasis::new(2, 3, 3).unwrap().field().clone();
    assert_eq!(parsed.embed(&f).unwrap().amplitudes(), v.embed(&f).unwrap().amplitudes());
}

#[test]
fn malformed_amplitude_files_fail() {
    for text in ["", "cyclotomic m=3\n0: 1", "cyclotomic m=3 dim=2\n5: 1", "cyclotomic m=3 dim=2\n0: x"] {
        assert!(StateVector::parse_amplitude_file(text).is_err(), "{text:?}");
    }
}
