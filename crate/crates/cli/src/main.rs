//! `ctxkit`: build scenarios, export exclusivity graphs, classify empirical
//! models and run the verification suites.
//!
//! Exit codes: 0 completed, 1 verification failed, 2 invalid input,
//! 3 cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use ctxkit::exclusivity::{exclusivity_graph, support_graph, ExclusivityGraph};
use ctxkit::graphs::{self, dimacs, MisOptions};
use ctxkit::logic::{self, ClassifyOptions, CswWeights};
use ctxkit::protocols::{self, DEFAULT_PROTOCOL_CAP};
use ctxkit::registry::{self, CheckContext};
use ctxkit::scenario::{bell_scenario, EmpiricalModel, MeasurementScenario, ModelJson, ScenarioJson};
use ctxkit::stabilizer::catalog::qudits_of_dimension;
use ctxkit::stabilizer::{catalog_state, mermin_square_check, CatalogEntry, QuantumState, StabilizerScenario, StateVector, WeylBasis};
use ctxkit::{random, rational, Error, Result};

#[derive(Parser)]
#[command(name = "ctxkit", version, about = "Contextuality hierarchy via exclusivity-graph invariants")]
struct Cli {
    /// Worker threads for parallel solver scans (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build scenarios and export their exclusivity graphs.
    #[command(subcommand)]
    Scenario(ScenarioCommand),
    /// Classify an empirical model and run the requested checks.
    Analyze(AnalyzeArgs),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// Write the scenario (or, with --with-model, the model) as JSON.
    Build {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        with_model: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the exclusivity graph in DIMACS format.
    ExportGraph {
        #[command(flatten)]
        source: Source,
        /// Export the support graph of the model instead of the full graph.
        #[arg(long)]
        support: bool,
        /// JSON sidecar mapping DIMACS vertices to events.
        #[arg(long)]
        vertex_map: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct Source {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Model JSON file (scenario plus tables).
    #[arg(long)]
    model: Option<PathBuf>,
    /// Catalog entry: bell_table, pr_box, hardy, ghz, cs_state or file:PATH.
    #[arg(long)]
    catalog: Option<String>,
    /// Lagrangian stabilizer scenario, e.g. `--stabilizer n=2 d=3`.
    #[arg(long, num_args = 2, value_names = ["n=N", "d=D"])]
    stabilizer: Option<Vec<String>>,
    /// Amplitude file, or `mixed` (maximally mixed, the default) or `zero` (|0…0⟩).
    #[arg(long, requires = "stabilizer")]
    state: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Analyze a bare DIMACS graph: α, α* and the minimal independence number.
    #[arg(long)]
    dimacs: Option<PathBuf>,
    /// Named inequality (chsh) or a JSON file of event weights.
    #[arg(long)]
    csw: Option<String>,
    /// Comma-separated checks; default `classify` (plus `csw` with --csw).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// MIS solver.
    #[arg(long, default_value = "branch-and-bound")]
    solver: String,
    #[arg(long, default_value_t = graphs::DEFAULT_VERTEX_CAP)]
    cap_vertices: usize,
    /// Hidden-variable cap d^|M| for the LPs (also CTXKIT_CAP_HV).
    #[arg(long)]
    cap_hv: Option<u128>,
    #[arg(long, default_value_t = DEFAULT_PROTOCOL_CAP)]
    cap_protocols: u128,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Mermin square for n qubits.
    #[command(name = "appendixB")]
    AppendixB {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exclusivity graph versus the protocol non-orthogonality graph.
    #[command(name = "appendixC")]
    AppendixC {
        /// Scenario JSON (default: the Bell scenario).
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Also check this many random scenarios.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 3)]
        max_measurements: usize,
        #[arg(long, default_value_t = 2)]
        outcomes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PROTOCOL_CAP)]
        cap_protocols: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hidden variables versus size-|C| independent sets on random scenarios.
    #[command(name = "lemma1")]
    Lemma1 {
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 5)]
        max_measurements: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Input {
    Scenario(MeasurementScenario),
    Model(EmpiricalModel),
    /// Quantum data with irrational probabilities: exact support only.
    Support(MeasurementScenario, Vec<bool>),
}

impl Input {
    fn scenario(&self) -> &MeasurementScenario {
        match self {
            Input::Scenario(s) | Input::Support(s, _) => s,
            Input::Model(m) => m.scenario(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_stabilizer(spec: &[String]) -> Result<(usize, u32)> {
    let (mut n, mut d) = (None, None);
    for kv in spec {
        match kv.split_once('=') {
            Some(("n", v)) => n = v.parse().ok(),
            Some(("d", v)) => d = v.parse().ok(),
            _ => {}
        }
    }
    n.zip(d)
        .ok_or_else(|| Error::Parse(format!("expected `--stabilizer n=N d=D`, got {spec:?}")))
}

fn stabilizer_input(n: usize, d: u32, state: Option<QuantumState>) -> Result<Input> {
    let base = WeylBasis::default_field_order(d);
    let order = match &state {
        Some(st) => num_integer::lcm(base, st.components()[0].1.field().order()),
        None => base,
    };
    let s = StabilizerScenario::lagrangian_with_field(n, d, order)?;
    let state = match state {
        Some(st) => st,
        None => QuantumState::maximally_mixed(s.weyl().field(), s.weyl().dim()),
    };
    let tables = s.born_tables(&state)?;
    if tables.probabilities().is_some() {
        Ok(Input::Model(s.quantum_empirical_model(&state)?))
    } else {
        Ok(Input::Support(s.scenario().clone(), tables.support()))
    }
}

fn state_input(v: StateVector) -> Result<Input> {
    let (n, d) = qudits_of_dimension(v.dim())?;
    stabilizer_input(n, d, Some(QuantumState::Pure(v)))
}

fn resolve(src: &Source) -> Result<Input> {
    let given = [
        src.scenario.is_some(),
        src.model.is_some(),
        src.catalog.is_some(),
        src.stabilizer.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Parse(
            "give exactly one of --scenario, --model, --catalog, --stabilizer".into(),
        ));
    }
    if let Some(p) = &src.scenario {
        let j: ScenarioJson = serde_json::from_str(&read(p)?)?;
        return Ok(Input::Scenario(MeasurementScenario::from_json(&j)?));
    }
    if let Some(p) = &src.model {
        let j: ModelJson = serde_json::from_str(&read(p)?)?;
        return Ok(Input::Model(EmpiricalModel::from_json(&j)?));
    }
    if let Some(name) = &src.catalog {
        return match catalog_state(name)? {
            CatalogEntry::Model(m) => Ok(Input::Model(m)),
            CatalogEntry::State(v) => state_input(v),
        };
    }
    let (n, d) = parse_stabilizer(src.stabilizer.as_deref().unwrap_or_default())?;
    let state = match src.state.as_deref() {
        None | Some("mixed") => None,
        Some("zero") => {
            let w = WeylBasis::new(n, d, WeylBasis::default_field_order(d))?;
            Some(QuantumState::Pure(StateVector::basis(w.field(), w.dim(), 0)))
        }
        Some(path) => Some(QuantumState::Pure(StateVector::parse_amplitude_file(&read(Path::new(path))?)?)),
    };
    stabilizer_input(n, d, state)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_scenario(cmd: &ScenarioCommand) -> Result<()> {
    match cmd {
        ScenarioCommand::Build { source, with_model, out } => {
            let input = resolve(source)?;
            let text = if *with_model {
                match &input {
                    Input::Model(m) => pretty(&m.to_json()),
                    _ => return Err(Error::Parse("--with-model needs a source with exact tables".into())),
                }
            } else {
                pretty(&input.scenario().to_json())
            };
            emit(out.as_deref(), &text)
        }
        ScenarioCommand::ExportGraph {
            source,
            support,
            vertex_map,
            out,
        } => {
            let input = resolve(source)?;
            let g: ExclusivityGraph = if *support {
                match &input {
                    Input::Model(m) => support_graph(m),
                    Input::Support(s, possible) => {
                        let keep: Vec<usize> = (0..possible.len()).filter(|&i| possible[i]).collect();
                        exclusivity_graph(s).induced(&keep)
                    }
                    Input::Scenario(_) => return Err(Error::Parse("--support needs a model or state".into())),
                }
            } else {
                exclusivity_graph(input.scenario())
            };
            if let Some(p) = vertex_map {
                fs::write(p, pretty(&g.vertex_map()))?;
            }
            emit(out.as_deref(), &g.to_dimacs())
        }
    }
}

fn hv_cap(flag: Option<u128>) -> Result<u128> {
    match flag {
        Some(0) => Err(Error::Parse("--cap-hv must be positive".into())),
        Some(c) => Ok(c),
        None => logic::hv_cap_from_env(),
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<()> {
    if a.cap_vertices == 0 || a.cap_protocols == 0 {
        return Err(Error::Parse("caps must be positive".into()));
    }
    let mis = MisOptions {
        vertex_cap: a.cap_vertices,
        solver: registry::solvers().get(&a.solver)?,
        ..MisOptions::default()
    };
    let mut report = Map::new();

    if let Some(path) = &a.dimacs {
        let g = dimacs::parse(&read(path)?)?;
        let alpha = graphs::independence_number(&g, None, &mis)?;
        let packing = graphs::fractional_packing_number(&g, None)?;
        let minimal = if g.num_vertices() > 0 {
            json!(graphs::minimal_independence_number(&g, &mis)?.value)
        } else {
            Value::Null
        };
        report.insert("vertices".into(), json!(g.num_vertices()));
        report.insert("edges".into(), json!(g.num_edges()));
        report.insert("alpha".into(), json!(alpha.size()));
        report.insert("alpha_witness".into(), json!(alpha.witness.iter().map(|v| v + 1).collect::<Vec<_>>()));
        report.insert("fractional_packing_number".into(), json!(rational::to_string(&packing)));
        report.insert("minimal_independence_number".into(), minimal);
        return emit(a.out.as_deref(), &pretty(&report));
    }

    let input = resolve(&a.source)?;
    let hv = hv_cap(a.cap_hv)?;
    let mut checks = if a.checks.is_empty() { vec!["classify".to_string()] } else { a.checks.clone() };
    if a.csw.is_some() && !checks.iter().any(|c| c == "csw") {
        checks.push("csw".into());
    }
    for c in &checks {
        registry::checks().get(c)?;
    }
    let s = input.scenario().clone();
    report.insert(
        "scenario".into(),
        json!({
            "measurements": s.num_measurements(),
            "contexts": s.num_contexts(),
            "events": s.num_events(),
            "outcome_arity": s.outcome_arity(),
        }),
    );

    match &input {
        Input::Scenario(_) => {
            return Err(Error::Parse("analyze needs a model: use --model, --catalog or --stabilizer".into()));
        }
        Input::Support(s, possible) => {
            report.insert("exact_probabilities".into(), json!(false));
            for c in &checks {
                if c != "classify" {
                    return Err(Error::Domain(format!(
                        "check {c:?} needs exact probabilities; this state only has an exact support"
                    )));
                }
            }
            let opts = ClassifyOptions { mis, hv_cap: hv };
            let r = logic::classify_support(s, possible, &opts)?;
            report.insert("classify".into(), serde_json::to_value(r)?);
        }
        Input::Model(model) => {
            report.insert("exact_probabilities".into(), json!(true));
            let weights: Option<CswWeights> = match &a.csw {
                None => None,
                Some(spec) if Path::new(spec).is_file() => Some(CswWeights::from_json(&s, &read(Path::new(spec))?)?),
                Some(name) => Some(logic::named_weights(name, &s)?),
            };
            let ctx = CheckContext {
                model,
                mis,
                hv_cap: hv,
                protocol_cap: a.cap_protocols,
                csw: weights.as_ref(),
            };
            for c in &checks {
                let value = registry::checks().get(c)?.run(&ctx)?;
                report.insert(c.clone(), value);
            }
        }
    }
    emit(a.out.as_deref(), &pretty(&report))
}

/// Returns whether the suite passed.
fn cmd_verify(cmd: &VerifyCommand) -> Result<bool> {
    match cmd {
        VerifyCommand::AppendixB { n, out } => {
            let proof = mermin_square_check(*n)?;
            let passed = proof.holds();
            emit(out.as_deref(), &pretty(&json!({ "passed": passed, "proof": proof })))?;
            Ok(passed)
        }
        VerifyCommand::AppendixC {
            scenario,
            random: count,
            max_measurements,
            outcomes,
            seed,
            cap_protocols,
            out,
        } => {
            let mut scenarios = vec![match scenario {
                Some(p) => MeasurementScenario::from_json(&serde_json::from_str(&read(p)?)?)?,
                None => bell_scenario(),
            }];
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                scenarios.push(random::random_scenario(&mut rng, *max_measurements, *outcomes));
            }
            let mut results = Vec::new();
            let mut passed = true;
            for s in &scenarios {
                let r = protocols::verify_theorem4(s, *cap_protocols)?;
                passed &= r.passed();
                results.push(json!({ "scenario": s.to_json(), "report": r }));
            }
            emit(out.as_deref(), &pretty(&json!({ "passed": passed, "scenarios": results })))?;
            Ok(passed)
        }
        VerifyCommand::Lemma1 {
            random: count,
            max_measurements,
            seed,
            out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut failures = Vec::new();
            for i in 0..*count {
                let d = 2 + i % 2;
                let s = random::random_scenario(&mut rng, *max_measurements, d);
                if !lemma1_round_trip(&s, &mut rng)? {
                    failures.push(s.to_json());
                }
            }
            let passed = failures.is_empty();
            emit(
                out.as_deref(),
                &pretty(&json!({ "passed": passed, "scenarios": count, "failures": failures })),
            )?;
            Ok(passed)
        }
    }
}

/// λ → I → λ for a random λ, and I → λ → I for a maximum independent set.
fn lemma1_round_trip(s: &MeasurementScenario, rng: &mut ChaCha8Rng) -> Result<bool> {
    let lambda = random::random_hidden_variable(rng, s);
    let set = logic::hidden_variable_to_independent_set(s, &lambda)?;
    let g = exclusivity_graph(s);
    let forward = set.len() == s.num_contexts()
        && g.graph().is_independent(&set)
        && logic::independent_set_to_hidden_variable(s, &set)? == lambda;
    let labels = g.context_labels().to_vec();
    let mis = MisOptions::default().with_partition(&labels);
    let best = graphs::independence_number(g.graph(), None, &mis)?;
    let back = logic::independent_set_to_hidden_variable(s, &best.witness)?;
    let mut again = logic::hidden_variable_to_independent_set(s, &back)?;
    again.sort_unstable();
    Ok(forward && again == best.witness)
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::Parse("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Domain(e.to_string()))?;
    }
    match &cli.command {
        Command::Scenario(c) => cmd_scenario(c).map(|_| true),
        Command::Analyze(a) => cmd_analyze(a).map(|_| true),
        Command::Verify(v) => cmd_verify(v),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { 3 } else { 2 })
        }
    }
}
