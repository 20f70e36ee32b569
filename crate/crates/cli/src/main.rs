//! `tricss`: check codes, build code pairs and analyse switching protocols.
//!
//! Every subcommand prints one JSON report on stdout (a readable listing with
//! `--pretty`). Exit status: 0 on success or a true predicate, 1 on a false
//! predicate, 2 on input errors.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use tricss::circuits::{
    build_prep, build_protocol, parse_circuit, Circuit, CircuitError, Executor, Injection, InputState,
    LogicalAction, ProtocolKind, RunOptions, QSYM, QT,
};
use tricss::css::{
    build_triorthogonal_code, code_parameters, format_bundle, generate_symmetric_codes, is_triorthogonal,
    is_x_transversal, parse_bundle, CssCode, CssError, TriorthogonalCode,
};
use tricss::faultlab::{self, EnumerationMode, EnumerationOptions, ErrorModel, FaultError};
use tricss::fifteen;
use tricss::gf2::{BitMatrix, Gf2Error};
use tricss::stabsim::{encode_logical, parse_labels, LogicalLabel, PauliOperator, SimError};
use tricss::transversal::{pair_report, TransversalError};

use report::{render_pretty, JsonReport};

/// Environment variable capping the number of parallel enumeration workers.
const THREADS_ENV: &str = "TRICSS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "tricss", version, about = "Triorthogonal/symmetric CSS code switching toolkit")]
struct Cli {
    /// Print a human-readable listing instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Triorthogonal code bundle replacing the built-in 15-qubit code.
    #[arg(long, global = true, value_name = "BUNDLE")]
    qt: Option<PathBuf>,
    /// Companion code bundle; defaults to the canonical symmetric companion of --qt.
    #[arg(long, global = true, value_name = "BUNDLE")]
    qsym: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the even-overlap conditions of a generator matrix.
    CheckTriorthogonal {
        /// Matrix text file, one row of 0/1 characters per line.
        matrix: PathBuf,
    },
    /// Generate symmetric companions of a triorthogonal code.
    GenSymmetric {
        /// Bundle with a [G] section.
        bundle: PathBuf,
        /// Maximum number of codes to return.
        #[arg(long, default_value_t = 1)]
        limit: usize,
        /// Directory to write one bundle file per generated code.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Check transversal CNOT (both directions) and CZ between two codes.
    CheckTransversality {
        /// First code bundle (CNOT control for the forward check).
        #[arg(long)]
        a: PathBuf,
        /// Second code bundle.
        #[arg(long)]
        b: PathBuf,
        /// Use the exact CZ criterion instead of the sufficient one.
        #[arg(long)]
        exact_cz: bool,
    },
    /// Run one protocol circuit on the stabilizer simulator.
    Simulate {
        /// Protocol kind, e.g. hadamard-cz or teleport-t-to-sym-ec.
        #[arg(long)]
        protocol: Option<ProtocolKind>,
        /// Logical input labels (one of 0, 1, +, - per logical qubit), or `ref`
        /// to entangle the input with reference qubits and classify the run.
        #[arg(long, default_value = "0")]
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Pauli injection `pos:block:PAULIS`; repeat the flag or separate with commas.
        #[arg(long = "inject", value_name = "SPEC")]
        inject: Vec<String>,
        /// Circuit text file to run instead of a built-in protocol.
        #[arg(long, value_name = "FILE")]
        circuit: Option<PathBuf>,
    },
    /// Classify every fault pattern of a given weight.
    EnumerateErrors {
        #[arg(long)]
        protocol: ProtocolKind,
        #[arg(long)]
        weight: usize,
        /// Fault locations: input-block patterns or every instruction boundary.
        #[arg(long, value_enum, default_value_t = ModeArg::Input)]
        mode: ModeArg,
        /// Pauli types per faulty location.
        #[arg(long, value_enum, default_value_t = ModelArg::Xz)]
        model: ModelArg,
        /// List the patterns that cause a logical failure.
        #[arg(long)]
        keep_patterns: bool,
    },
    /// Largest weight of X or Z input errors a protocol always corrects.
    Capability {
        #[arg(long)]
        protocol: ProtocolKind,
        #[arg(long, default_value_t = 5)]
        max_weight: usize,
    },
    /// Monte Carlo estimate of the logical failure rate under independent X/Z noise.
    MonteCarlo {
        #[arg(long)]
        protocol: ProtocolKind,
        /// Physical error probability per qubit and Pauli type.
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// X-error sweep through the verified |+> preparation and the switch that follows.
    PrepSweep {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// Qubit and gate counts of a protocol.
    Resources {
        #[arg(long)]
        protocol: ProtocolKind,
        /// Include the preparation circuits of every ancilla block.
        #[arg(long)]
        with_prep: bool,
    },
    /// Code parameters [[n, k, d]] with separate X and Z distances.
    Distance {
        bundle: PathBuf,
    },
    /// Print a protocol circuit in the text format accepted by `simulate --circuit`.
    ShowCircuit {
        #[arg(long)]
        protocol: ProtocolKind,
        /// Target label for preparation circuits.
        #[arg(long, default_value = "+")]
        label: LogicalLabel,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Input,
    Locations,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Xz,
    X,
    Z,
    Depolarizing,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckTriorthogonal { .. } => "check-triorthogonal",
            Command::GenSymmetric { .. } => "gen-symmetric",
            Command::CheckTransversality { .. } => "check-transversality",
            Command::Simulate { .. } => "simulate",
            Command::EnumerateErrors { .. } => "enumerate-errors",
            Command::Capability { .. } => "capability",
            Command::MonteCarlo { .. } => "monte-carlo",
            Command::PrepSweep { .. } => "prep-sweep",
            Command::Resources { .. } => "resources",
            Command::Distance { .. } => "distance",
            Command::ShowCircuit { .. } => "show-circuit",
        }
    }

    fn input_files(&self) -> Vec<&Path> {
        match self {
            Command::CheckTriorthogonal { matrix } => vec![matrix],
            Command::GenSymmetric { bundle, .. } | Command::Distance { bundle } => vec![bundle],
            Command::CheckTransversality { a, b, .. } => vec![a, b],
            Command::Simulate { circuit: Some(c), .. } => vec![c],
            _ => vec![],
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: file not found")]
    MissingFile(PathBuf),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Css(#[from] CssError),
    #[error(transparent)]
    Transversal(#[from] TransversalError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Fault(#[from] FaultError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::MissingFile(_) | CliError::Io { .. } => "io-error",
            CliError::Usage(_) => "usage-error",
            CliError::Gf2(_) => "parse-error",
            CliError::Css(CssError::Gf2(_) | CssError::Bundle(_)) => "parse-error",
            CliError::Css(_) => "code-error",
            CliError::Transversal(_) => "transversality-error",
            CliError::Circuit(CircuitError::Parse { .. }) => "parse-error",
            CliError::Circuit(_) => "circuit-error",
            CliError::Fault(_) => "fault-analysis-error",
            CliError::Sim(_) => "simulation-error",
        }
    }
}

/// Payload plus whether the subcommand's predicate held.
struct Outcome {
    payload: Value,
    ok: bool,
}

fn success(payload: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { payload, ok: true })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Built-in code pair unless overridden by `--qt` / `--qsym`.
fn code_pair(cli: &Cli) -> Result<(TriorthogonalCode, CssCode), CliError> {
    let qt = match &cli.qt {
        None => fifteen::triorthogonal(),
        Some(p) => parse_bundle(&read(p)?)?
            .triorthogonal()
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("{}: --qt needs a [G] bundle", p.display())))?,
    };
    let qsym = match (&cli.qsym, &cli.qt) {
        (Some(p), _) => parse_bundle(&read(p)?)?.code().clone(),
        (None, None) => fifteen::symmetric(),
        (None, Some(_)) => generate_symmetric_codes(&qt, 1)?.remove(0),
    };
    Ok((qt, qsym))
}

fn protocol_circuit(cli: &Cli, kind: ProtocolKind) -> Result<Circuit, CliError> {
    let (qt, qsym) = code_pair(cli)?;
    Ok(build_protocol(kind, &qt, Some(&qsym))?)
}

fn parse_injections(specs: &[String]) -> Result<Vec<Injection>, CliError> {
    let mut out = Vec::new();
    for item in specs.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || CliError::Usage(format!("bad injection {item:?}; expected pos:block:PAULIS"));
        let mut parts = item.splitn(3, ':');
        let (Some(pos), Some(block), Some(pauli)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let position = pos.parse().map_err(|_| bad())?;
        let pauli: PauliOperator = pauli.parse()?;
        out.push(Injection { position, block: block.to_string(), pauli });
    }
    Ok(out)
}

fn check_triorthogonal(path: &Path) -> Result<Outcome, CliError> {
    let g = BitMatrix::parse_text(&read(path)?)?;
    let tri = is_triorthogonal(&g);
    let k = g.rows().iter().filter(|r| r.weight() % 2 == 1).count();
    let m = g.nrows() - k;
    let rank = g.rank();
    let x_transversal = if tri && rank == g.nrows() {
        Some(is_x_transversal(&build_triorthogonal_code(&g)?))
    } else {
        None
    };
    Ok(Outcome {
        payload: json!({
            "triorthogonal": tri,
            "n": g.ncols(),
            "k": k,
            "m": m,
            "rank": rank,
            "full_rank": rank == g.nrows(),
            "x_transversal": x_transversal,
        }),
        ok: tri,
    })
}

fn gen_symmetric(bundle: &Path, limit: usize, out: Option<&Path>) -> Result<Outcome, CliError> {
    let parsed = parse_bundle(&read(bundle)?)?;
    let qt = parsed
        .triorthogonal()
        .ok_or_else(|| CliError::Usage("gen-symmetric needs a [G] bundle".into()))?;
    let codes = generate_symmetric_codes(qt, limit)?;
    let mut list = Vec::new();
    for (i, c) in codes.iter().enumerate() {
        let file = match out {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
                let path = dir.join(format!("symmetric_{i:03}.bundle"));
                std::fs::write(&path, format_bundle(c)).map_err(|source| CliError::Io { path: path.clone(), source })?;
                Some(path.display().to_string())
            }
            None => None,
        };
        list.push(json!({
            "index": i,
            "parameters": code_parameters(c)?,
            "hx": c.hx,
            "hz": c.hz,
            "logical_x": c.logical_x,
            "logical_z": c.logical_z,
            "file": file,
        }));
    }
    success(json!({ "limit": limit, "count": codes.len(), "codes": list }))
}

fn check_transversality(a: &Path, b: &Path, exact: bool) -> Result<Outcome, CliError> {
    let ca = parse_bundle(&read(a)?)?.code().clone();
    let cb = parse_bundle(&read(b)?)?.code().clone();
    let r = pair_report(&ca, &cb, exact)?;
    let ok = r.cnot_forward && r.cz;
    let mut payload = serde_json::to_value(&r).expect("report serializes");
    payload["exact_cz"] = json!(exact);
    Ok(Outcome { payload, ok })
}

fn simulate(
    cli: &Cli,
    protocol: Option<ProtocolKind>,
    input: &str,
    seed: u64,
    inject: &[String],
    circuit_file: Option<&Path>,
) -> Result<Outcome, CliError> {
    let circuit = match (circuit_file, protocol) {
        (Some(path), _) => {
            let (qt, qsym) = code_pair(cli)?;
            let codes = vec![
                (QT.to_string(), std::sync::Arc::new(qt.base)),
                (QSYM.to_string(), std::sync::Arc::new(qsym)),
            ];
            parse_circuit(&read(path)?, &codes)?
        }
        (None, Some(kind)) => protocol_circuit(cli, kind)?,
        (None, None) => return Err(CliError::Usage("simulate needs --protocol or --circuit".into())),
    };
    let has_input = circuit.input_block().is_some();
    let reference = input.eq_ignore_ascii_case("ref");
    let state = match (has_input, reference) {
        (false, _) => InputState::Declared,
        (true, true) => InputState::Reference,
        (true, false) => InputState::Labels(parse_labels(input)?),
    };
    let labels = match &state {
        InputState::Labels(l) => Some(l.clone()),
        _ => None,
    };
    let exec = Executor::with_input(&circuit, state)?;
    let injections = parse_injections(inject)?;
    let opts = RunOptions { seed, injections: injections.clone(), ..Default::default() };
    let out = exec.run(&opts)?;

    let mut output = json!(null);
    if let Some(block) = circuit.metadata.output.as_deref() {
        let state = if reference { None } else { out.block_state(block) };
        let expected = match (&circuit.metadata.action, &labels) {
            (LogicalAction::Prepare(l), _) => Some(l.clone()),
            (action, Some(l)) => Some(l.iter().map(|x| action.apply(*x)).collect()),
            (_, None) => None,
        };
        let code = circuit.block_code(block)?.cloned();
        let matches = match (&state, &expected, &code) {
            (Some(s), Some(e), Some(c)) if out.accepted => {
                Some(s.canonical_stabilizers() == encode_logical(c, e)?.canonical_stabilizers())
            }
            _ => None,
        };
        output = json!({
            "block": block,
            "stabilizers": state.map(|s| s.canonical_stabilizers().iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            "expected_labels": expected.map(|e| e.iter().map(|l| l.to_string()).collect::<String>()),
            "matches_expected": matches,
        });
    }
    let classification = if reference { Some(faultlab::classify(&circuit, &out)?) } else { None };
    let payload = json!({
        "protocol": circuit.metadata.kind,
        "input": if has_input { Some(input) } else { None },
        "seed": seed,
        "injections": injections,
        "accepted": out.accepted,
        "stopped_at": out.stopped_at,
        "readouts": out.readouts,
        "feedback": out.feedback,
        "output": output,
        "classification": classification,
    });
    Ok(Outcome { payload, ok: out.accepted })
}

fn enumerate(cli: &Cli, kind: ProtocolKind, weight: usize, mode: ModeArg, model: ModelArg, keep: bool) -> Result<Outcome, CliError> {
    let circuit = protocol_circuit(cli, kind)?;
    let options = EnumerationOptions {
        mode: match mode {
            ModeArg::Input => EnumerationMode::InputPatterns,
            ModeArg::Locations => EnumerationMode::CircuitLocations,
        },
        model: match model {
            ModelArg::Xz => ErrorModel::XZ,
            ModelArg::X => ErrorModel::OnlyX,
            ModelArg::Z => ErrorModel::OnlyZ,
            ModelArg::Depolarizing => ErrorModel::Depolarizing,
        },
        keep_patterns: keep,
    };
    let r = faultlab::enumerate_protocol_errors(&circuit, weight, options)?;
    success(serde_json::to_value(&r).expect("report serializes"))
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    for path in cli.command.input_files().into_iter().chain(cli.qt.as_deref()).chain(cli.qsym.as_deref()) {
        if !path.exists() {
            return Err(CliError::MissingFile(path.to_path_buf()));
        }
    }
    match &cli.command {
        Command::CheckTriorthogonal { matrix } => check_triorthogonal(matrix),
        Command::GenSymmetric { bundle, limit, out } => gen_symmetric(bundle, *limit, out.as_deref()),
        Command::CheckTransversality { a, b, exact_cz } => check_transversality(a, b, *exact_cz),
        Command::Simulate { protocol, input, seed, inject, circuit } => {
            simulate(cli, *protocol, input, *seed, inject, circuit.as_deref())
        }
        Command::EnumerateErrors { protocol, weight, mode, model, keep_patterns } => {
            enumerate(cli, *protocol, *weight, *mode, *model, *keep_patterns)
        }
        Command::Capability { protocol, max_weight } => {
            let c = protocol_circuit(cli, *protocol)?;
            let x = faultlab::certify_correction_capability(&c, tricss::Basis::X, *max_weight)?;
            let z = faultlab::certify_correction_capability(&c, tricss::Basis::Z, *max_weight)?;
            success(json!({ "protocol": protocol, "max_weight": max_weight, "x": x, "z": z }))
        }
        Command::MonteCarlo { protocol, p, samples, seed } => {
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
            }
            let c = protocol_circuit(cli, *protocol)?;
            let r = faultlab::monte_carlo_failure_rate(&c, *p, *samples, *seed)?;
            let mut payload = serde_json::to_value(&r).expect("report serializes");
            payload["protocol"] = json!(protocol);
            success(payload)
        }
        Command::PrepSweep { max_weight } => {
            let (qt, qsym) = code_pair(cli)?;
            let r = faultlab::prep_verification_sweep(&qt, &qsym, *max_weight)?;
            let ok = r.accepted_uncorrectable.is_empty() && r.flipping_excluded_accepted.is_empty();
            let mut payload = serde_json::to_value(&r).expect("report serializes");
            payload["qubit_indexing"] = json!("zero-based");
            Ok(Outcome { payload, ok })
        }
        Command::Resources { protocol, with_prep } => {
            let c = protocol_circuit(cli, *protocol)?;
            let r = faultlab::count_resources(&c, *with_prep)?;
            success(json!({ "report": r, "published_comparison": faultlab::published_comparison() }))
        }
        Command::Distance { bundle } => {
            let code = parse_bundle(&read(bundle)?)?.code().clone();
            let p = code_parameters(&code)?;
            let mut payload = serde_json::to_value(p).expect("parameters serialize");
            payload["symmetric"] = json!(code.is_symmetric());
            success(payload)
        }
        Command::ShowCircuit { protocol, label } => {
            let c = match protocol {
                ProtocolKind::PrepPlusQTVerified | ProtocolKind::PrepZeroSym => {
                    let host = protocol_circuit(cli, ProtocolKind::TeleportTtoSymEC)?;
                    build_prep(*protocol, *label, &host.codes)?
                }
                kind => protocol_circuit(cli, *kind)?,
            };
            success(json!({
                "protocol": protocol,
                "instructions": c.instructions.len(),
                "two_qubit_gates": c.two_qubit_gate_count(),
                "text": c.to_string(),
            }))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit(report: &JsonReport, pretty: bool) {
    let text = if pretty {
        render_pretty(report)
    } else {
        serde_json::to_string(report).expect("report serializes") + "\n"
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let result = configure_threads().map_err(CliError::Usage).and_then(|_| dispatch(&cli));
    match result {
        Ok(outcome) => {
            emit(&JsonReport::new(name, outcome.payload), cli.pretty);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let payload = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            emit(&JsonReport::new(name, payload), cli.pretty);
            ExitCode::from(2)
        }
    }
}
