use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::*;
use crate::decoder::{build_decoder, LookupDecoder};
use crate::gf2::BitVector;
use crate::stabsim::{
    logical_generators, logical_readout, Gate, MeasurementEntry, MeasurementRecord,
    OutcomePolicy, StabilizerTableau,
};

/// A Pauli error applied just before instruction `position`
/// (`position == len` means after the last instruction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Injection {
    pub position: usize,
    pub block: String,
    /// Block-local operator.
    pub pauli: PauliOperator,
}

/// Initial state of the input block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputState {
    /// The labels declared by the circuit.
    Declared,
    Labels(Vec<LogicalLabel>),
    /// Each logical qubit maximally entangled with a reference qubit appended
    /// after all blocks, so one run tracks the action on every input.
    Reference,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub injections: Vec<Injection>,
    /// Forced logical outcomes for block measurements, or physical outcomes for
    /// qubit measurements, keyed by label.
    pub forced: HashMap<String, bool>,
}

/// Decoded block measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadoutInfo {
    pub label: String,
    pub block: String,
    pub basis: Basis,
    pub outcomes: BitVector,
    pub logical: BitVector,
    pub syndrome: BitVector,
    /// Decoded error estimate, when the measurement is decodable on its own.
    pub correction: Option<BitVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedFeedback {
    pub position: usize,
    pub block: String,
    pub pauli: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSpan {
    pub name: String,
    pub offset: usize,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    /// False iff a verification condition fired; execution stops there.
    pub accepted: bool,
    pub tableau: StabilizerTableau,
    pub record: MeasurementRecord,
    pub feedback: Vec<AppliedFeedback>,
    pub readouts: Vec<ReadoutInfo>,
    pub layout: Vec<BlockSpan>,
    /// Offset of the reference qubits in reference mode.
    pub reference: Option<usize>,
    pub stopped_at: Option<usize>,
}

impl ProtocolOutcome {
    pub fn span(&self, block: &str) -> Option<&BlockSpan> {
        self.layout.iter().find(|s| s.name == block)
    }

    /// Final state of one block, if it is unentangled with everything else.
    pub fn block_state(&self, block: &str) -> Option<StabilizerTableau> {
        let s = self.span(block)?;
        self.tableau.reduced_state(s.offset, s.size)
    }

    pub fn readout(&self, label: &str) -> Option<&ReadoutInfo> {
        self.readouts.iter().find(|r| r.label == label)
    }
}

enum Op {
    Gates(Vec<Gate>),
    MeasureBlock {
        block: String,
        offset: usize,
        basis: Basis,
        label: String,
        code: Arc<CssCode>,
        decoder: Arc<LookupDecoder>,
        logicals: Vec<PauliOperator>,
    },
    MeasureQubit { q: usize, basis: Basis, label: String },
    MeasureStab { block: String, ops: Vec<PauliOperator>, basis: Basis, label: String, decoder: Option<Arc<LookupDecoder>> },
    Pauli { condition: Condition, op: PauliOperator, block: String, text: String },
    Recover { source: String, error_type: Basis, block: String, offset: usize, size: usize },
    GaugeFix {
        source: String,
        error_type: Basis,
        offset: usize,
        size: usize,
        checks: usize,
        check_decoder: Arc<LookupDecoder>,
        gauge: BitMatrix,
        fix: BitMatrix,
    },
    Verify(Condition),
    Reset { qubits: Vec<usize>, then: Vec<Gate> },
    Nop,
}

struct Value {
    bits: BitVector,
    syndrome_nonzero: bool,
    readout: Option<usize>,
}

/// A compiled circuit with its initial state; reusable across runs.
pub struct Executor {
    circuit: Circuit,
    layout: Vec<BlockSpan>,
    total: usize,
    reference: Option<usize>,
    initial: StabilizerTableau,
    ops: Vec<Op>,
    stab_decoders: HashMap<String, Arc<LookupDecoder>>,
}

impl Executor {
    pub fn new(circuit: &Circuit) -> Result<Self, CircuitError> {
        Self::with_input(circuit, InputState::Declared)
    }

    pub fn with_input(circuit: &Circuit, input: InputState) -> Result<Self, CircuitError> {
        circuit.validate()?;
        let mut layout = Vec::new();
        let mut offset = 0;
        for b in &circuit.blocks {
            layout.push(BlockSpan { name: b.name.clone(), offset, size: b.size });
            offset += b.size;
        }
        let input_block = circuit.input_block();
        let reference = match (&input, input_block) {
            (InputState::Reference, Some(_)) => Some(offset),
            (InputState::Reference, None) => {
                return Err(CircuitError::Invalid("reference input needs an input block".into()))
            }
            _ => None,
        };
        let ref_k = match (reference, input_block) {
            (Some(_), Some(b)) => circuit.block_code(&b.name)?.map_or(0, |c| c.k),
            _ => 0,
        };
        let total = offset + ref_k;

        let mut gens: Vec<PauliOperator> = Vec::with_capacity(total);
        for (b, span) in circuit.blocks.iter().zip(&layout) {
            let code = circuit.block_code(&b.name)?;
            let init = match (&input, b.input) {
                (InputState::Labels(l), true) => BlockInit::Logical(l.clone()),
                _ => b.init.clone(),
            };
            match (code, init) {
                (Some(code), _) if b.input && reference.is_some() => {
                    let r0 = reference.unwrap();
                    for r in code.hx.rows() {
                        gens.push(PauliOperator::of_type(Basis::X, r).embed(total, span.offset));
                    }
                    for r in code.hz.rows() {
                        gens.push(PauliOperator::of_type(Basis::Z, r).embed(total, span.offset));
                    }
                    for i in 0..code.k {
                        for basis in [Basis::X, Basis::Z] {
                            let mut p = PauliOperator::of_type(basis, code.logicals(basis).row(i))
                                .embed(total, span.offset);
                            match basis {
                                Basis::X => p.a.set(r0 + i, true),
                                Basis::Z => p.b.set(r0 + i, true),
                            }
                            gens.push(p);
                        }
                    }
                }
                (Some(code), BlockInit::Logical(labels)) => {
                    for p in logical_generators(code, &labels)? {
                        gens.push(p.embed(total, span.offset));
                    }
                }
                (_, _) => {
                    for q in 0..b.size {
                        gens.push(PauliOperator::single(total, span.offset + q, 'Z'));
                    }
                }
            }
        }
        let initial = StabilizerTableau::from_stabilizers(&gens)?;

        let mut decoders: HashMap<(String, Basis), Arc<LookupDecoder>> = HashMap::new();
        let mut decoder_for = |code_name: &str, code: &CssCode, t: Basis| -> Result<Arc<LookupDecoder>, CircuitError> {
            if let Some(d) = decoders.get(&(code_name.to_string(), t)) {
                return Ok(d.clone());
            }
            let d = Arc::new(build_decoder(code, t).map_err(SimError::from)?);
            decoders.insert((code_name.to_string(), t), d.clone());
            Ok(d)
        };
        let span_of = |name: &str| layout.iter().find(|s| s.name == name).unwrap();
        let qubit = |q: &QubitRef| span_of(&q.block).offset + q.index;
        let mut ops = Vec::with_capacity(circuit.instructions.len());
        let mut stab_decoders = HashMap::new();
        for ins in &circuit.instructions {
            let op = match ins {
                Instruction::Gate { gate, targets } => {
                    let t: Vec<usize> = targets.iter().map(qubit).collect();
                    Op::Gates(vec![make_gate(*gate, &t)])
                }
                Instruction::TransversalGate { gate, a, b } => {
                    let sa = span_of(a);
                    let gates = match b {
                        Some(b) => {
                            let sb = span_of(b);
                            (0..sa.size).map(|i| make_gate(*gate, &[sa.offset + i, sb.offset + i])).collect()
                        }
                        None => (0..sa.size).map(|i| make_gate(*gate, &[sa.offset + i])).collect(),
                    };
                    Op::Gates(gates)
                }
                Instruction::MeasureBlock { block, basis, label } => {
                    let b = circuit.block(block)?;
                    let code_name = b.code.clone().unwrap();
                    let code = circuit.code(&code_name)?.clone();
                    let decoder = decoder_for(&code_name, &code, basis.other())?;
                    let offset = span_of(block).offset;
                    let logicals = code
                        .logicals(*basis)
                        .rows()
                        .iter()
                        .map(|r| PauliOperator::of_type(*basis, r).embed(total, offset))
                        .collect();
                    Op::MeasureBlock { block: block.clone(), offset, basis: *basis, label: label.clone(), code, decoder, logicals }
                }
                Instruction::MeasureQubit { qubit: q, basis, label } => {
                    Op::MeasureQubit { q: qubit(q), basis: *basis, label: label.clone() }
                }
                Instruction::MeasureStabilizers { block, basis, rows, label } => {
                    let offset = span_of(block).offset;
                    let ops = rows
                        .rows()
                        .iter()
                        .map(|r| PauliOperator::of_type(*basis, r).embed(total, offset))
                        .collect();
                    let decoder = LookupDecoder::from_checks(rows.clone(), basis.other()).ok().map(Arc::new);
                    if let Some(d) = &decoder {
                        stab_decoders.insert(label.clone(), d.clone());
                    }
                    Op::MeasureStab { block: block.clone(), ops, basis: *basis, label: label.clone(), decoder }
                }
                Instruction::ConditionalPauli { condition, pauli, block } => {
                    let span = span_of(block);
                    let local = match pauli {
                        CorrectionPauli::Logical { basis, index } => {
                            let code = circuit.block_code(block)?.unwrap();
                            PauliOperator::of_type(*basis, code.logicals(*basis).row(*index))
                        }
                        CorrectionPauli::Physical(p) => p.clone(),
                    };
                    Op::Pauli {
                        condition: condition.clone(),
                        op: local.embed(total, span.offset),
                        block: block.clone(),
                        text: pauli.to_string(),
                    }
                }
                Instruction::Recover { source, error_type, block } => {
                    let s = span_of(block);
                    Op::Recover {
                        source: source.clone(),
                        error_type: *error_type,
                        block: block.clone(),
                        offset: s.offset,
                        size: s.size,
                    }
                }
                Instruction::GaugeFix { source, error_type, block, checks, fix } => {
                    let s = span_of(block);
                    let rows = circuit
                        .instructions
                        .iter()
                        .find_map(|i| match i {
                            Instruction::MeasureStabilizers { rows, label, .. } if label == source => {
                                Some(rows.clone())
                            }
                            _ => None,
                        })
                        .ok_or_else(|| {
                            CircuitError::Invalid(format!("gauge fix source {source:?} is not a stabilizer measurement"))
                        })?;
                    if *checks > rows.nrows() {
                        return Err(CircuitError::Invalid("gauge fix check count exceeds rows".into()));
                    }
                    let check_rows = rows.select_rows(&(0..*checks).collect::<Vec<_>>());
                    let gauge = rows.select_rows(&(*checks..rows.nrows()).collect::<Vec<_>>());
                    let check_decoder =
                        Arc::new(LookupDecoder::from_checks(check_rows, *error_type).map_err(SimError::from)?);
                    Op::GaugeFix {
                        source: source.clone(),
                        error_type: *error_type,
                        offset: s.offset,
                        size: s.size,
                        checks: *checks,
                        check_decoder,
                        gauge,
                        fix: fix.clone(),
                    }
                }
                Instruction::VerifyDiscard { condition } => Op::Verify(condition.clone()),
                Instruction::ResetQubit { qubit: q } => Op::Reset { qubits: vec![qubit(q)], then: vec![] },
                Instruction::ResetBlock { block, label } => {
                    let s = span_of(block);
                    let qubits: Vec<usize> = (s.offset..s.offset + s.size).collect();
                    let then = match label {
                        Some(labels) => {
                            let code = circuit.block_code(block)?.unwrap();
                            let enc = synthesize_encoding_circuit(code, labels);
                            enc.instructions
                                .iter()
                                .filter_map(|i| match i {
                                    Instruction::Gate { gate, targets } => {
                                        let t: Vec<usize> = targets.iter().map(|t| s.offset + t.index).collect();
                                        Some(make_gate(*gate, &t))
                                    }
                                    _ => None,
                                })
                                .collect()
                        }
                        None => vec![],
                    };
                    Op::Reset { qubits, then }
                }
                Instruction::Segment { .. } | Instruction::EndSegment => Op::Nop,
            };
            ops.push(op);
        }
        Ok(Executor {
            circuit: circuit.clone(),
            layout,
            total,
            reference,
            initial,
            ops,
            stab_decoders,
        })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn num_qubits(&self) -> usize {
        self.total
    }

    pub fn layout(&self) -> &[BlockSpan] {
        &self.layout
    }

    pub fn reference_offset(&self) -> Option<usize> {
        self.reference
    }

    pub fn initial_state(&self) -> &StabilizerTableau {
        &self.initial
    }

    fn embed_injection(&self, inj: &Injection) -> Result<PauliOperator, CircuitError> {
        let span = self
            .layout
            .iter()
            .find(|s| s.name == inj.block)
            .ok_or_else(|| CircuitError::UnknownBlock(inj.block.clone()))?;
        if inj.pauli.len() != span.size {
            return Err(CircuitError::SizeMismatch(inj.block.clone(), inj.pauli.to_string()));
        }
        Ok(inj.pauli.embed(self.total, span.offset))
    }

    pub fn run(&self, opts: &RunOptions) -> Result<ProtocolOutcome, CircuitError> {
        let len = self.ops.len();
        let mut pending: Vec<(usize, PauliOperator)> = Vec::with_capacity(opts.injections.len());
        for inj in &opts.injections {
            if inj.position > len {
                return Err(CircuitError::InjectionOutOfRange { position: inj.position, len });
            }
            pending.push((inj.position, self.embed_injection(inj)?));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut t = self.initial.clone();
        let mut record = MeasurementRecord::default();
        let mut values: HashMap<String, Value> = HashMap::new();
        let mut readouts: Vec<ReadoutInfo> = Vec::new();
        let mut feedback = Vec::new();
        let mut accepted = true;
        let mut stopped_at = None;

        for (pos, op) in self.ops.iter().enumerate() {
            for (_, p) in pending.iter().filter(|(i, _)| *i == pos) {
                t.apply_pauli(p)?;
            }
            match op {
                Op::Gates(gates) => {
                    for g in gates {
                        t.apply_gate(*g)?;
                    }
                }
                Op::MeasureBlock { block, offset, basis, label, code, decoder, logicals } => {
                    if let Some(&bit) = opts.forced.get(label) {
                        for l in logicals {
                            t.measure_pauli(l, OutcomePolicy::Forced(bit))?;
                        }
                    }
                    let mut outcomes = BitVector::zeros(code.n);
                    for i in 0..code.n {
                        let m = t.measure(offset + i, *basis, OutcomePolicy::Random(&mut rng))?;
                        outcomes.set(i, m.outcome);
                        record.push(MeasurementEntry {
                            label: label.clone(),
                            qubit: Some(i),
                            basis: *basis,
                            outcome: m.outcome,
                            deterministic: m.deterministic,
                        });
                    }
                    let r = logical_readout(&outcomes, code, *basis, decoder)?;
                    values.insert(
                        label.clone(),
                        Value { bits: r.logical.clone(), syndrome_nonzero: !r.syndrome.is_zero(), readout: Some(readouts.len()) },
                    );
                    readouts.push(ReadoutInfo {
                        label: label.clone(),
                        block: block.clone(),
                        basis: *basis,
                        outcomes,
                        logical: r.logical,
                        syndrome: r.syndrome,
                        correction: Some(r.correction),
                    });
                }
                Op::MeasureQubit { q, basis, label } => {
                    let policy = match opts.forced.get(label) {
                        Some(&b) => OutcomePolicy::Forced(b),
                        None => OutcomePolicy::Random(&mut rng),
                    };
                    let m = t.measure(*q, *basis, policy)?;
                    record.push(MeasurementEntry {
                        label: label.clone(),
                        qubit: Some(*q),
                        basis: *basis,
                        outcome: m.outcome,
                        deterministic: m.deterministic,
                    });
                    let bits = BitVector::from_bools(&[m.outcome]);
                    values.insert(label.clone(), Value { bits, syndrome_nonzero: m.outcome, readout: None });
                }
                Op::MeasureStab { block, ops, basis, label, decoder } => {
                    let mut outcomes = BitVector::zeros(ops.len());
                    for (i, p) in ops.iter().enumerate() {
                        let m = t.measure_pauli(p, OutcomePolicy::Random(&mut rng))?;
                        outcomes.set(i, m.outcome);
                        record.push(MeasurementEntry {
                            label: label.clone(),
                            qubit: None,
                            basis: *basis,
                            outcome: m.outcome,
                            deterministic: m.deterministic,
                        });
                    }
                    let correction = match decoder {
                        Some(d) => d.decode(&outcomes).ok(),
                        None => None,
                    };
                    values.insert(
                        label.clone(),
                        Value { bits: outcomes.clone(), syndrome_nonzero: !outcomes.is_zero(), readout: Some(readouts.len()) },
                    );
                    readouts.push(ReadoutInfo {
                        label: label.clone(),
                        block: block.clone(),
                        basis: *basis,
                        outcomes: outcomes.clone(),
                        logical: outcomes.clone(),
                        syndrome: outcomes,
                        correction,
                    });
                }
                Op::Pauli { condition, op, block, text } => {
                    if eval(condition, &values)? {
                        t.apply_pauli(op)?;
                        feedback.push(AppliedFeedback { position: pos, block: block.clone(), pauli: text.clone() });
                    }
                }
                Op::Recover { source, error_type, block, offset, size } => {
                    let v = values.get(source).ok_or_else(|| missing(source))?;
                    let r = &readouts[v.readout.ok_or_else(|| missing(source))?];
                    let corr = match &r.correction {
                        Some(c) => c.clone(),
                        None => {
                            let d = self.stab_decoders.get(source).ok_or_else(|| missing(source))?;
                            d.decode(&r.syndrome).map_err(SimError::from)?
                        }
                    };
                    if corr.len() != *size {
                        return Err(CircuitError::SizeMismatch(source.clone(), block.clone()));
                    }
                    if !corr.is_zero() {
                        let p = PauliOperator::of_type(*error_type, &corr).embed(self.total, *offset);
                        t.apply_pauli(&p)?;
                        feedback.push(AppliedFeedback {
                            position: pos,
                            block: block.clone(),
                            pauli: PauliOperator::of_type(*error_type, &corr).to_string(),
                        });
                    }
                }
                Op::GaugeFix { source, error_type, offset, size, checks, check_decoder, gauge, fix } => {
                    let v = values.get(source).ok_or_else(|| missing(source))?;
                    let all = &v.bits;
                    let check_bits = all.slice(0, *checks);
                    let mut gauge_bits = all.slice(*checks, all.len() - checks);
                    let corr = check_decoder.decode(&check_bits).map_err(SimError::from)?;
                    // The correction also flips gauge outcomes it anticommutes with.
                    gauge_bits.xor_assign(&gauge.syndrome(&corr));
                    let mut total_fix = corr.clone();
                    if !gauge_bits.is_zero() {
                        // Combination of `fix` rows whose flips on the gauge operators cancel the outcomes.
                        let flips = gauge.mul_transpose(fix); // gauge x fix
                        let coeffs = flips.solve(&gauge_bits).ok_or_else(|| {
                            CircuitError::Invalid("gauge outcomes cannot be fixed".into())
                        })?;
                        let f = fix.combine(&coeffs);
                        total_fix.xor_assign(&f);
                    }
                    debug_assert_eq!(total_fix.len(), *size);
                    if !total_fix.is_zero() {
                        let p = PauliOperator::of_type(*error_type, &total_fix).embed(self.total, *offset);
                        t.apply_pauli(&p)?;
                        feedback.push(AppliedFeedback {
                            position: pos,
                            block: self.layout.iter().find(|s| s.offset == *offset).unwrap().name.clone(),
                            pauli: PauliOperator::of_type(*error_type, &total_fix).to_string(),
                        });
                    }
                }
                Op::Verify(cond) => {
                    if eval(cond, &values)? {
                        accepted = false;
                        stopped_at = Some(pos);
                        break;
                    }
                }
                Op::Reset { qubits, then } => {
                    for &q in qubits {
                        let m = t.measure(q, Basis::Z, OutcomePolicy::Random(&mut rng))?;
                        if m.outcome {
                            t.apply_gate(Gate::X(q))?;
                        }
                    }
                    for g in then {
                        t.apply_gate(*g)?;
                    }
                }
                Op::Nop => {}
            }
        }
        if accepted {
            for (_, p) in pending.iter().filter(|(i, _)| *i == len) {
                t.apply_pauli(p)?;
            }
        }
        Ok(ProtocolOutcome {
            accepted,
            tableau: t,
            record,
            feedback,
            readouts,
            layout: self.layout.clone(),
            reference: self.reference,
            stopped_at,
        })
    }
}

fn missing(label: &str) -> CircuitError {
    CircuitError::MalformedCondition(format!("label {label:?} has no recorded value"))
}

fn eval(cond: &Condition, values: &HashMap<String, Value>) -> Result<bool, CircuitError> {
    let mut bits = Vec::with_capacity(cond.terms().len());
    for term in cond.terms() {
        let v = values.get(term.label()).ok_or_else(|| missing(term.label()))?;
        bits.push(match term {
            Term::Value { index, .. } => {
                if *index >= v.bits.len() {
                    return Err(CircuitError::MalformedCondition(format!("{term} out of range")));
                }
                v.bits.get(*index)
            }
            Term::Syndrome(_) => v.syndrome_nonzero,
        });
    }
    Ok(match cond {
        Condition::Parity(_) => bits.iter().fold(false, |a, b| a ^ b),
        Condition::Any(_) => bits.iter().any(|b| *b),
    })
}

fn make_gate(g: GateName, t: &[usize]) -> Gate {
    match g {
        GateName::H => Gate::H(t[0]),
        GateName::S => Gate::S(t[0]),
        GateName::X => Gate::X(t[0]),
        GateName::Y => Gate::Y(t[0]),
        GateName::Z => Gate::Z(t[0]),
        GateName::Cnot => Gate::Cnot(t[0], t[1]),
        GateName::Cz => Gate::Cz(t[0], t[1]),
    }
}

/// Execute `circuit` from its declared initial state.
pub fn run(circuit: &Circuit, seed: u64, injections: Vec<Injection>) -> Result<ProtocolOutcome, CircuitError> {
    Executor::new(circuit)?.run(&RunOptions { seed, injections, forced: HashMap::new() })
}
