//! Exhaustive fault enumeration, correction-capability certification,
//! Monte Carlo sampling and resource accounting for protocol circuits.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuits::{
    build_prep, build_protocol, excluded_generators, BlockRole, Circuit, CircuitError, Executor,
    InputState, Injection, Instruction, ProtocolKind, ProtocolOutcome, RunOptions,
};
use crate::css::{CssCode, TriorthogonalCode};
use crate::gf2::BitVector;
use crate::stabsim::{LogicalLabel, PauliOperator};
use crate::{fifteen, Basis};

pub use crate::decoder::{binomial, build_decoder, for_each_combination, DecodeError, LookupDecoder};

/// Upper bound on the number of runs a single enumeration may perform.
pub const MAX_PATTERNS: u128 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaultError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("{patterns} patterns exceed the enumeration budget of {max}")]
    TooLarge { patterns: u128, max: u128 },
    #[error("{0}")]
    Unsupported(String),
}

/// Protocol circuit over the built-in 15-qubit code pair.
pub fn builtin_protocol(kind: ProtocolKind) -> Result<Circuit, FaultError> {
    let qt = fifteen::triorthogonal();
    let qsym = fifteen::symmetric();
    Ok(build_protocol(kind, &qt, Some(&qsym))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Output equals the ideal output up to a correctable residual error.
    Corrected,
    LogicalFailure,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Weight of the decoded residual error on the output block.
    pub residual_weight: usize,
}

/// Classify a reference-mode run.
///
/// Signs of the output code's stabilizers give X and Z syndromes; their
/// decoded corrections are applied virtually and the logical correlators with
/// the reference qubits are compared with the protocol's logical action.
pub fn classify(circuit: &Circuit, outcome: &ProtocolOutcome) -> Result<Classification, FaultError> {
    if !outcome.accepted {
        return Ok(Classification { verdict: Verdict::Rejected, residual_weight: 0 });
    }
    let r0 = outcome
        .reference
        .ok_or_else(|| FaultError::Unsupported("classification needs a reference-mode run".into()))?;
    let out = circuit
        .metadata
        .output
        .as_deref()
        .ok_or_else(|| FaultError::Unsupported("circuit has no output block".into()))?;
    let code = circuit
        .block_code(out)?
        .ok_or_else(|| FaultError::Unsupported("output block is not encoded".into()))?;
    let span = outcome.span(out).expect("output block in layout");
    let n_total = outcome.tableau.num_qubits();
    let failure = Classification { verdict: Verdict::LogicalFailure, residual_weight: 0 };

    let signs = |rows: &crate::gf2::BitMatrix, basis: Basis| -> Option<BitVector> {
        let mut s = BitVector::zeros(rows.nrows());
        for (i, r) in rows.rows().iter().enumerate() {
            let p = PauliOperator::of_type(basis, r).embed(n_total, span.offset);
            s.set(i, !outcome.tableau.stabilizes(&p)?);
        }
        Some(s)
    };
    let (Some(sx), Some(sz)) = (signs(&code.hz, Basis::Z), signs(&code.hx, Basis::X)) else {
        return Ok(failure);
    };
    let cx = build_decoder(code, Basis::X)?.decode(&sx)?;
    let cz = build_decoder(code, Basis::Z)?.decode(&sz)?;

    for i in 0..code.k {
        for input in [Basis::X, Basis::Z] {
            let out_basis = circuit.metadata.action.map_basis(input);
            let l = code.logicals(out_basis).row(i);
            let mut p = PauliOperator::of_type(out_basis, l).embed(n_total, span.offset);
            match input {
                Basis::X => p.a.set(r0 + i, true),
                Basis::Z => p.b.set(r0 + i, true),
            }
            let Some(positive) = outcome.tableau.stabilizes(&p) else {
                return Ok(failure);
            };
            let flipped = match out_basis {
                Basis::X => cz.dot(l),
                Basis::Z => cx.dot(l),
            };
            if positive == flipped {
                return Ok(failure);
            }
        }
    }
    Ok(Classification { verdict: Verdict::Corrected, residual_weight: cx.or(&cz).weight() })
}

/// Which Pauli types an enumeration assigns to each faulty location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorModel {
    /// X or Z per location, as in the independent X/Z channel.
    XZ,
    OnlyX,
    OnlyZ,
    /// X, Y or Z per location.
    Depolarizing,
}

impl ErrorModel {
    pub fn letters(self) -> &'static [char] {
        match self {
            ErrorModel::XZ => &['X', 'Z'],
            ErrorModel::OnlyX => &['X'],
            ErrorModel::OnlyZ => &['Z'],
            ErrorModel::Depolarizing => &['X', 'Y', 'Z'],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    /// Errors on the input block before the first instruction.
    InputPatterns,
    /// Errors on any encoded-block qubit at any instruction boundary.
    CircuitLocations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub mode: EnumerationMode,
    pub model: ErrorModel,
    pub keep_patterns: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { mode: EnumerationMode::InputPatterns, model: ErrorModel::XZ, keep_patterns: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub kind: Option<ProtocolKind>,
    pub weight: usize,
    pub mode: EnumerationMode,
    pub model: ErrorModel,
    pub total: u64,
    pub corrected: u64,
    pub logical_failure: u64,
    pub rejected: u64,
    /// Largest residual weight among corrected patterns.
    pub max_residual_weight: usize,
    /// Logical-failure patterns, when requested.
    pub failures: Option<Vec<String>>,
    /// Coefficient of `p^weight` in the logical failure rate.
    pub coefficient: u64,
}

#[derive(Clone, Copy)]
struct Location {
    position: usize,
    block: usize,
    qubit: usize,
}

fn locations(circuit: &Circuit, mode: EnumerationMode) -> Result<Vec<Location>, FaultError> {
    let mut out = Vec::new();
    match mode {
        EnumerationMode::InputPatterns => {
            let b = circuit
                .blocks
                .iter()
                .position(|b| b.input)
                .ok_or_else(|| FaultError::Unsupported("circuit has no input block".into()))?;
            for q in 0..circuit.blocks[b].size {
                out.push(Location { position: 0, block: b, qubit: q });
            }
        }
        EnumerationMode::CircuitLocations => {
            for position in 0..=circuit.instructions.len() {
                for (b, block) in circuit.blocks.iter().enumerate() {
                    if block.code.is_none() {
                        continue;
                    }
                    for q in 0..block.size {
                        out.push(Location { position, block: b, qubit: q });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn injections(circuit: &Circuit, locs: &[Location], chosen: &[usize], letters: &[char]) -> Vec<Injection> {
    let mut by_key: Vec<Injection> = Vec::new();
    for (&li, &c) in chosen.iter().zip(letters) {
        let l = locs[li];
        let size = circuit.blocks[l.block].size;
        let single = PauliOperator::single(size, l.qubit, c);
        let name = &circuit.blocks[l.block].name;
        match by_key.iter_mut().find(|i| i.position == l.position && &i.block == name) {
            Some(inj) => inj.pauli = inj.pauli.compose(&single),
            None => by_key.push(Injection { position: l.position, block: name.clone(), pauli: single }),
        }
    }
    for inj in &mut by_key {
        inj.pauli.phase = 0;
    }
    by_key
}

fn describe(circuit: &Circuit, locs: &[Location], chosen: &[usize], letters: &[char]) -> String {
    let parts: Vec<String> = chosen
        .iter()
        .zip(letters)
        .map(|(&li, c)| {
            let l = locs[li];
            let b = &circuit.blocks[l.block].name;
            if l.position == 0 {
                format!("{c}{}@{b}", l.qubit)
            } else {
                format!("{c}{}@{b}:{}", l.qubit, l.position)
            }
        })
        .collect();
    parts.join(" ")
}

/// Run every weight-`weight` fault pattern through `circuit` and classify it.
///
/// Locations of one pattern are distinct; in circuit-location mode two
/// faults on the same qubit at different instruction boundaries are distinct
/// locations.
pub fn enumerate_protocol_errors(
    circuit: &Circuit,
    weight: usize,
    options: EnumerationOptions,
) -> Result<EnumerationReport, FaultError> {
    let exec = Executor::with_input(circuit, InputState::Reference)?;
    let locs = locations(circuit, options.mode)?;
    let letters = options.model.letters();
    let per_support = (letters.len() as u128).pow(weight as u32);
    let patterns = binomial(locs.len(), weight) * per_support;
    if patterns > MAX_PATTERNS {
        return Err(FaultError::TooLarge { patterns, max: MAX_PATTERNS });
    }
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for_each_combination(locs.len(), weight, |s| {
        supports.push(s.to_vec());
        true
    });
    let assignments: Vec<Vec<char>> = (0..per_support as usize)
        .map(|mut a| {
            (0..weight)
                .map(|_| {
                    let c = letters[a % letters.len()];
                    a /= letters.len();
                    c
                })
                .collect()
        })
        .collect();

    let results: Vec<Result<(Classification, Option<String>), FaultError>> = supports
        .par_iter()
        .flat_map_iter(|s| assignments.iter().map(move |a| (s, a)))
        .map(|(s, a)| {
            let inj = injections(circuit, &locs, s, a);
            let outcome = exec.run(&RunOptions { seed: 0, injections: inj, forced: HashMap::new() })?;
            let c = classify(circuit, &outcome)?;
            let label = (options.keep_patterns && c.verdict == Verdict::LogicalFailure)
                .then(|| describe(circuit, &locs, s, a));
            Ok((c, label))
        })
        .collect();

    let mut report = EnumerationReport {
        kind: circuit.metadata.kind,
        weight,
        mode: options.mode,
        model: options.model,
        total: 0,
        corrected: 0,
        logical_failure: 0,
        rejected: 0,
        max_residual_weight: 0,
        failures: options.keep_patterns.then(Vec::new),
        coefficient: 0,
    };
    for r in results {
        let (c, label) = r?;
        report.total += 1;
        match c.verdict {
            Verdict::Corrected => {
                report.corrected += 1;
                report.max_residual_weight = report.max_residual_weight.max(c.residual_weight);
            }
            Verdict::LogicalFailure => report.logical_failure += 1,
            Verdict::Rejected => report.rejected += 1,
        }
        if let (Some(list), Some(l)) = (report.failures.as_mut(), label) {
            list.push(l);
        }
    }
    report.coefficient = report.logical_failure;
    Ok(report)
}

/// Largest `t ≤ max_weight` such that every input error of type `pauli` and
/// weight at most `t` is corrected without rejection.
pub fn certify_correction_capability(
    circuit: &Circuit,
    pauli: Basis,
    max_weight: usize,
) -> Result<usize, FaultError> {
    let model = match pauli {
        Basis::X => ErrorModel::OnlyX,
        Basis::Z => ErrorModel::OnlyZ,
    };
    let options = EnumerationOptions { mode: EnumerationMode::InputPatterns, model, keep_patterns: false };
    for w in 1..=max_weight {
        let r = enumerate_protocol_errors(circuit, w, options)?;
        if r.logical_failure > 0 || r.rejected > 0 {
            return Ok(w - 1);
        }
    }
    Ok(max_weight)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub p: f64,
    pub samples: u64,
    pub failures: u64,
    pub rate: f64,
    pub std_error: f64,
    /// Distinct error patterns simulated.
    pub distinct_patterns: usize,
}

/// Sample the independent X/Z channel (X with probability `p`, Z with
/// probability `p`, per input qubit) and estimate the logical failure rate.
///
/// Identical patterns are simulated once per worker. Results depend only on
/// `seed` and `samples`, not on the thread count.
pub fn monte_carlo_failure_rate(
    circuit: &Circuit,
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloReport, FaultError> {
    const CHUNKS: u64 = 64;
    let exec = Executor::with_input(circuit, InputState::Reference)?;
    let input = circuit
        .input_block()
        .ok_or_else(|| FaultError::Unsupported("circuit has no input block".into()))?;
    let n = input.size;
    let name = input.name.clone();
    let per = samples / CHUNKS;
    type Chunk = (u64, HashMap<Vec<u8>, bool>);
    let parts: Vec<Result<Chunk, FaultError>> = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let count = if chunk == CHUNKS - 1 { samples - per * (CHUNKS - 1) } else { per };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ chunk.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut cache: HashMap<Vec<u8>, bool> = HashMap::new();
            let mut failures = 0;
            let mut pattern = vec![0u8; n];
            for _ in 0..count {
                let mut any = false;
                for slot in pattern.iter_mut() {
                    let u: f64 = rng.gen();
                    *slot = if u < p {
                        1
                    } else if u < 2.0 * p {
                        2
                    } else {
                        0
                    };
                    any |= *slot != 0;
                }
                if !any {
                    continue;
                }
                let failed = match cache.get(&pattern) {
                    Some(&f) => f,
                    None => {
                        let mut op = PauliOperator::identity(n);
                        for (q, &s) in pattern.iter().enumerate() {
                            match s {
                                1 => op.a.set(q, true),
                                2 => op.b.set(q, true),
                                _ => {}
                            }
                        }
                        let inj = vec![Injection { position: 0, block: name.clone(), pauli: op }];
                        let outcome =
                            exec.run(&RunOptions { seed: 0, injections: inj, forced: HashMap::new() })?;
                        let f = classify(circuit, &outcome)?.verdict != Verdict::Corrected;
                        cache.insert(pattern.clone(), f);
                        f
                    }
                };
                failures += failed as u64;
            }
            Ok((failures, cache))
        })
        .collect();
    let mut failures = 0;
    let mut distinct: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    for part in parts {
        let (f, cache) = part?;
        failures += f;
        distinct.extend(cache.into_keys());
    }
    let rate = failures as f64 / samples as f64;
    Ok(MonteCarloReport {
        p,
        samples,
        failures,
        rate,
        std_error: (rate * (1.0 - rate) / samples as f64).sqrt(),
        distinct_patterns: distinct.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrepSweepReport {
    pub max_weight: usize,
    pub total: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub accepted_correctable: u64,
    /// Accepted X patterns (supports) left uncorrectable after switching.
    pub accepted_uncorrectable: Vec<Vec<usize>>,
    pub flipping_excluded: u64,
    /// Patterns flipping an excluded generator that passed verification.
    pub flipping_excluded_accepted: Vec<Vec<usize>>,
}

/// X-error sweep on the verified `|+⟩` preparation of the triorthogonal code.
///
/// Each pattern of weight `1..=max_weight` is injected on the prepared block
/// right after the encoder. Accepted states are then used as the first
/// ancilla of the error-correcting switch into the symmetric code, and the
/// switched output is classified.
pub fn prep_verification_sweep(
    qt: &TriorthogonalCode,
    qsym: &CssCode,
    max_weight: usize,
) -> Result<PrepSweepReport, FaultError> {
    let codes = build_protocol(ProtocolKind::TeleportTtoSymEC, qt, Some(qsym))?;
    let prep = build_prep(ProtocolKind::PrepPlusQTVerified, LogicalLabel::Plus, &codes.codes)?;
    let excluded = excluded_generators(&qt.base, qsym)?;
    let after_encoder = prep
        .instructions
        .iter()
        .position(|i| matches!(i, Instruction::EndSegment))
        .map_or(0, |p| p + 1);
    let prep_exec = Executor::new(&prep)?;
    let switch_exec = Executor::with_input(&codes, InputState::Reference)?;
    let ec_block = codes
        .blocks
        .iter()
        .find(|b| b.role == BlockRole::Ec)
        .map(|b| b.name.clone())
        .ok_or_else(|| FaultError::Unsupported("switching circuit has no correction ancilla".into()))?;
    let n = qt.base.n;
    let mut supports = Vec::new();
    for w in 1..=max_weight {
        for_each_combination(n, w, |s| {
            supports.push(s.to_vec());
            true
        });
    }
    type Outcome = (bool, bool, Option<bool>);
    let results: Vec<Result<Outcome, FaultError>> = supports
        .par_iter()
        .map(|s| {
            let e = BitVector::from_indices(n, s);
            let flips = !excluded.syndrome(&e).is_zero();
            let pauli = PauliOperator::of_type(Basis::X, &e);
            let inj = vec![Injection { position: after_encoder, block: "anc".into(), pauli: pauli.clone() }];
            let out = prep_exec.run(&RunOptions { seed: 0, injections: inj, forced: HashMap::new() })?;
            if !out.accepted {
                return Ok((flips, false, None));
            }
            let inj = vec![Injection { position: 0, block: ec_block.clone(), pauli }];
            let out = switch_exec.run(&RunOptions { seed: 0, injections: inj, forced: HashMap::new() })?;
            let ok = classify(&codes, &out)?.verdict == Verdict::Corrected;
            Ok((flips, true, Some(ok)))
        })
        .collect();
    let mut report = PrepSweepReport {
        max_weight,
        total: 0,
        accepted: 0,
        rejected: 0,
        accepted_correctable: 0,
        accepted_uncorrectable: Vec::new(),
        flipping_excluded: 0,
        flipping_excluded_accepted: Vec::new(),
    };
    for (s, r) in supports.into_iter().zip(results) {
        let (flips, accepted, ok) = r?;
        report.total += 1;
        report.flipping_excluded += flips as u64;
        if accepted {
            report.accepted += 1;
            if flips {
                report.flipping_excluded_accepted.push(s.clone());
            }
            if ok == Some(true) {
                report.accepted_correctable += 1;
            } else {
                report.accepted_uncorrectable.push(s);
            }
        } else {
            report.rejected += 1;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Counted from instructions.
    Computed,
    /// Published constant.
    Paper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseCount {
    pub phase: String,
    pub qubits: usize,
    pub two_qubit_gates: usize,
    pub single_qubit_gates: usize,
    pub source: Source,
    /// Two-qubit gates of the synthesized replacement for a published sub-circuit.
    pub own_two_qubit_gates: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub protocol: Option<ProtocolKind>,
    /// All physical qubits: data block, ancilla blocks and helper qubits.
    pub qubits: usize,
    pub ancilla_qubits: usize,
    pub data_qubits: usize,
    pub two_qubit_gates: usize,
    pub single_qubit_gates: usize,
    pub includes_state_prep: bool,
    pub breakdown: Vec<PhaseCount>,
    pub qubit_convention: &'static str,
}

fn phase_of(circuit: &Circuit, blocks: &[&str]) -> String {
    blocks
        .iter()
        .filter_map(|b| circuit.block(b).ok())
        .find(|b| !b.input)
        .map_or("data", |b| b.role.name())
        .to_string()
}

fn add_phase(list: &mut Vec<PhaseCount>, phase: &str, source: Source, q: usize, two: usize, one: usize) {
    match list.iter_mut().find(|p| p.phase == phase && p.source == source) {
        Some(p) => {
            p.qubits += q;
            p.two_qubit_gates += two;
            p.single_qubit_gates += one;
        }
        None => list.push(PhaseCount {
            phase: phase.to_string(),
            qubits: q,
            two_qubit_gates: two,
            single_qubit_gates: one,
            source,
            own_two_qubit_gates: None,
        }),
    }
}

/// Count qubits and gates of a circuit from its instruction list.
///
/// With `include_prep`, every ancilla block's preparation circuit is counted
/// too: sub-circuits marked as segments contribute their published two-qubit
/// gate count, everything else is counted from instructions.
pub fn count_resources(circuit: &Circuit, include_prep: bool) -> Result<ResourceReport, FaultError> {
    let mut breakdown: Vec<PhaseCount> = Vec::new();
    let data_qubits = circuit.input_block().map_or(0, |b| b.size);
    add_phase(&mut breakdown, "data", Source::Computed, data_qubits, 0, 0);
    for b in circuit.blocks.iter().filter(|b| !b.input) {
        add_phase(&mut breakdown, b.role.name(), Source::Computed, b.size, 0, 0);
    }
    count_instructions(circuit, &mut breakdown, None);
    if include_prep {
        for b in &circuit.blocks {
            let Some(spec) = b.prep else { continue };
            let prep = build_prep(spec.kind, spec.label, &circuit.codes)?;
            for h in prep.blocks.iter().filter(|h| h.code.is_none()) {
                add_phase(&mut breakdown, "prep", Source::Computed, h.size, 0, 0);
            }
            count_instructions(&prep, &mut breakdown, Some("prep"));
        }
    }
    let sum = |f: fn(&PhaseCount) -> usize| breakdown.iter().map(f).sum::<usize>();
    let qubits = sum(|p| p.qubits);
    Ok(ResourceReport {
        protocol: circuit.metadata.kind,
        qubits,
        ancilla_qubits: qubits - data_qubits,
        data_qubits,
        two_qubit_gates: sum(|p| p.two_qubit_gates),
        single_qubit_gates: sum(|p| p.single_qubit_gates),
        includes_state_prep: include_prep,
        breakdown,
        qubit_convention: "qubits = data block + ancilla blocks + helper qubits",
    })
}

fn count_instructions(circuit: &Circuit, breakdown: &mut Vec<PhaseCount>, force_phase: Option<&str>) {
    let mut segment: Option<(String, usize, usize)> = None;
    for ins in &circuit.instructions {
        let (two, one) = circuit.gate_counts(ins);
        match ins {
            Instruction::Segment { name, published_two_qubit_gates } => {
                segment = Some((name.clone(), *published_two_qubit_gates, 0));
                continue;
            }
            Instruction::EndSegment => {
                if let Some((name, published, own)) = segment.take() {
                    let phase = format!("prep:{name}");
                    add_phase(breakdown, &phase, Source::Paper, 0, published, 0);
                    if let Some(p) = breakdown.iter_mut().find(|p| p.phase == phase) {
                        *p.own_two_qubit_gates.get_or_insert(0) += own;
                    }
                }
                continue;
            }
            _ => {}
        }
        if let Some((_, _, own)) = segment.as_mut() {
            *own += two;
            continue;
        }
        if two == 0 && one == 0 {
            continue;
        }
        let phase = match force_phase {
            Some(p) => p.to_string(),
            None => match ins {
                Instruction::Gate { targets, .. } => {
                    let names: Vec<&str> = targets.iter().map(|t| t.block.as_str()).collect();
                    phase_of(circuit, &names)
                }
                Instruction::TransversalGate { a, b, .. } => {
                    let mut names = vec![a.as_str()];
                    if let Some(b) = b {
                        names.push(b);
                    }
                    phase_of(circuit, &names)
                }
                _ => "data".to_string(),
            },
        };
        add_phase(breakdown, &phase, Source::Computed, 0, two, one);
    }
}

/// Published resource figures of other code-switching schemes, for side-by-side display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PublishedResources {
    pub method: &'static str,
    /// Qubits for the two switching directions.
    pub qubits: [usize; 2],
    pub two_qubit_gates: [usize; 2],
    pub includes_state_prep: bool,
    pub source: Source,
}

pub fn published_comparison() -> Vec<PublishedResources> {
    let row = |method, qubits, two_qubit_gates, includes_state_prep| PublishedResources {
        method,
        qubits,
        two_qubit_gates,
        includes_state_prep,
        source: Source::Paper,
    };
    vec![
        row("flag-qubit switching", [17, 18], [174, 204], true),
        row("transversal switching with flag EC", [24, 25], [43, 139], false),
        row("transversal switching with flag EC", [25, 26], [54, 197], true),
        row("transversal switching with Steane EC", [36, 52], [21, 37], false),
        row("transversal switching with Steane EC", [38, 57], [54, 211], true),
        row("this construction", [45, 45], [30, 30], false),
        row("this construction", [48, 48], [96, 96], true),
    ]
}
