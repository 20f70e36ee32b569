//! Protocol circuits over named qubit blocks.
//!
//! A [`Circuit`] declares blocks (encoded code blocks or raw qubits) and an
//! instruction list with classical feedback. Circuits print to and parse
//! from a line-oriented text format, one instruction per line.

mod build;
mod exec;
mod text;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::css::CssCode;
use crate::gf2::BitMatrix;
use crate::stabsim::{LogicalLabel, PauliOperator, SimError};
use crate::Basis;

pub use build::{
    build_prep, build_protocol, excluded_generators, gauge_rows, synthesize_encoding_circuit,
};
pub use exec::{run, Executor, Injection, InputState, ProtocolOutcome, ReadoutInfo, RunOptions};
pub use text::parse_circuit;

pub const QT: &str = "qt";
pub const QSYM: &str = "qsym";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("code pair fails the {0} transversality check")]
    PairNotTransversal(&'static str),
    #[error("protocol kind {0} needs a symmetric companion code")]
    MissingCompanion(ProtocolKind),
    #[error("unsupported protocol kind {0:?}")]
    UnsupportedKind(String),
    #[error("malformed condition: {0}")]
    MalformedCondition(String),
    #[error("unknown block {0:?}")]
    UnknownBlock(String),
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("block {block:?} has {size} qubits, index {index} out of range")]
    QubitOutOfRange { block: String, size: usize, index: usize },
    #[error("blocks {0:?} and {1:?} have different sizes")]
    SizeMismatch(String, String),
    #[error("injection position {position} beyond {len} instructions")]
    InjectionOutOfRange { position: usize, len: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolKind {
    SteaneEC,
    HadamardCZ,
    TeleportTtoSym,
    TeleportSymToT,
    HadamardSteaneMerged,
    TeleportTtoSymEC,
    TeleportSymToTEC,
    PrepPlusQTVerified,
    PrepZeroSym,
    /// Transversal physical H with gauge fixing; corrects one X and one Z error.
    TransversalHBaseline,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 10] = [
        ProtocolKind::SteaneEC,
        ProtocolKind::HadamardCZ,
        ProtocolKind::TeleportTtoSym,
        ProtocolKind::TeleportSymToT,
        ProtocolKind::HadamardSteaneMerged,
        ProtocolKind::TeleportTtoSymEC,
        ProtocolKind::TeleportSymToTEC,
        ProtocolKind::PrepPlusQTVerified,
        ProtocolKind::PrepZeroSym,
        ProtocolKind::TransversalHBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::SteaneEC => "steane-ec",
            ProtocolKind::HadamardCZ => "hadamard-cz",
            ProtocolKind::TeleportTtoSym => "teleport-t-to-sym",
            ProtocolKind::TeleportSymToT => "teleport-sym-to-t",
            ProtocolKind::HadamardSteaneMerged => "hadamard-cz-merged",
            ProtocolKind::TeleportTtoSymEC => "teleport-t-to-sym-ec",
            ProtocolKind::TeleportSymToTEC => "teleport-sym-to-t-ec",
            ProtocolKind::PrepPlusQTVerified => "prep-plus-qt-verified",
            ProtocolKind::PrepZeroSym => "prep-zero-sym",
            ProtocolKind::TransversalHBaseline => "transversal-h-baseline",
        }
    }

    /// Code of the input block (`None` for preparation circuits).
    pub fn input_code(self) -> Option<&'static str> {
        match self {
            ProtocolKind::TeleportSymToT | ProtocolKind::TeleportSymToTEC => Some(QSYM),
            ProtocolKind::PrepPlusQTVerified | ProtocolKind::PrepZeroSym => None,
            _ => Some(QT),
        }
    }

    pub fn needs_companion(self) -> bool {
        !matches!(
            self,
            ProtocolKind::SteaneEC
                | ProtocolKind::HadamardCZ
                | ProtocolKind::HadamardSteaneMerged
                | ProtocolKind::TransversalHBaseline
        )
    }
}

impl Serialize for ProtocolKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolKind {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        let kind = match norm.as_str() {
            "steane-ec" | "steaneec" => ProtocolKind::SteaneEC,
            "hadamard-cz" | "hadamardcz" => ProtocolKind::HadamardCZ,
            "teleport-t-to-sym" | "teleportttosym" => ProtocolKind::TeleportTtoSym,
            "teleport-sym-to-t" | "teleportsymtot" => ProtocolKind::TeleportSymToT,
            "hadamard-cz-merged" | "hadamard-steane-merged" | "hadamardsteanemerged" => {
                ProtocolKind::HadamardSteaneMerged
            }
            "teleport-t-to-sym-ec" | "teleportttosymec" => ProtocolKind::TeleportTtoSymEC,
            "teleport-sym-to-t-ec" | "teleportsymtotec" => ProtocolKind::TeleportSymToTEC,
            "prep-plus-qt-verified" | "prepplusqtverified" => ProtocolKind::PrepPlusQTVerified,
            "prep-zero-sym" | "prepzerosym" => ProtocolKind::PrepZeroSym,
            "transversal-h-baseline" | "baseline" | "transversalhbaseline" => {
                ProtocolKind::TransversalHBaseline
            }
            _ => return Err(CircuitError::UnsupportedKind(s.to_string())),
        };
        Ok(kind)
    }
}

/// Logical map a protocol applies from its input block to its output block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LogicalAction {
    Identity,
    Hadamard,
    /// Preparation circuit producing the given logical state.
    Prepare(Vec<LogicalLabel>),
}

impl LogicalAction {
    /// Expected output for a single-qubit-per-logical input label.
    pub fn apply(&self, input: LogicalLabel) -> LogicalLabel {
        match self {
            LogicalAction::Identity => input,
            LogicalAction::Hadamard => input.hadamard(),
            LogicalAction::Prepare(l) => l[0],
        }
    }

    /// Image of a logical operator type.
    pub fn map_basis(&self, b: Basis) -> Basis {
        match self {
            LogicalAction::Hadamard => b.other(),
            _ => b,
        }
    }
}

/// Resource accounting phase a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockRole {
    Data,
    Switching,
    Ec,
    Verification,
    Prep,
    Helper,
}

impl BlockRole {
    pub fn name(self) -> &'static str {
        match self {
            BlockRole::Data => "data",
            BlockRole::Switching => "switching",
            BlockRole::Ec => "ec",
            BlockRole::Verification => "verification",
            BlockRole::Prep => "prep",
            BlockRole::Helper => "helper",
        }
    }
}

impl FromStr for BlockRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "data" => BlockRole::Data,
            "switching" => BlockRole::Switching,
            "ec" => BlockRole::Ec,
            "verification" => BlockRole::Verification,
            "prep" => BlockRole::Prep,
            "helper" => BlockRole::Helper,
            _ => return Err(format!("unknown role {s:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BlockInit {
    /// Encoded logical state.
    Logical(Vec<LogicalLabel>),
    /// Physical |0…0⟩.
    Zeros,
}

/// How an ancilla block would be prepared in hardware.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrepSpec {
    pub kind: ProtocolKind,
    pub label: LogicalLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub name: String,
    /// Code name, or `None` for raw qubits.
    pub code: Option<String>,
    pub size: usize,
    pub init: BlockInit,
    pub role: BlockRole,
    /// Whether this block carries the protocol input.
    pub input: bool,
    pub prep: Option<PrepSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QubitRef {
    pub block: String,
    pub index: usize,
}

impl fmt::Display for QubitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.block, self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GateName {
    H,
    S,
    X,
    Y,
    Z,
    Cnot,
    Cz,
}

impl GateName {
    pub fn arity(self) -> usize {
        match self {
            GateName::Cnot | GateName::Cz => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateName::H => "H",
            GateName::S => "S",
            GateName::X => "X",
            GateName::Y => "Y",
            GateName::Z => "Z",
            GateName::Cnot => "CNOT",
            GateName::Cz => "CZ",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "H" => GateName::H,
            "S" => GateName::S,
            "X" => GateName::X,
            "Y" => GateName::Y,
            "Z" => GateName::Z,
            "CNOT" | "CX" => GateName::Cnot,
            "CZ" => GateName::Cz,
            _ => return None,
        })
    }
}

/// A term of a classical condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Term {
    /// Logical bit `index` of a block readout, or the bit of a qubit measurement.
    Value { label: String, index: usize },
    /// Whether the syndrome of a block readout (or stabilizer measurement) is nonzero.
    Syndrome(String),
}

impl Term {
    pub fn label(&self) -> &str {
        match self {
            Term::Value { label, .. } | Term::Syndrome(label) => label,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Value { label, index: 0 } => write!(f, "{label}"),
            Term::Value { label, index } => write!(f, "{label}.{index}"),
            Term::Syndrome(label) => write!(f, "{label}.syn"),
        }
    }
}

/// Parity (`^`) or disjunction (`|`) of terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    Parity(Vec<Term>),
    Any(Vec<Term>),
}

impl Condition {
    pub fn single(label: &str) -> Self {
        Condition::Parity(vec![Term::Value { label: label.to_string(), index: 0 }])
    }

    pub fn terms(&self) -> &[Term] {
        match self {
            Condition::Parity(t) | Condition::Any(t) => t,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sep, terms) = match self {
            Condition::Parity(t) => ("^", t),
            Condition::Any(t) => ("|", t),
        };
        let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(sep))
    }
}

impl FromStr for Condition {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CircuitError::MalformedCondition(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let has_or = inner.contains('|');
        let has_xor = inner.contains('^');
        if has_or && has_xor {
            return Err(bad());
        }
        let sep = if has_or { '|' } else { '^' };
        let mut terms = Vec::new();
        for part in inner.split(sep) {
            let part = part.trim();
            if part.is_empty() || part.contains(char::is_whitespace) {
                return Err(bad());
            }
            let term = if let Some(l) = part.strip_suffix(".syn") {
                Term::Syndrome(l.to_string())
            } else if let Some((l, idx)) = part.rsplit_once('.') {
                Term::Value { label: l.to_string(), index: idx.parse().map_err(|_| bad())? }
            } else {
                Term::Value { label: part.to_string(), index: 0 }
            };
            if term.label().is_empty() {
                return Err(bad());
            }
            terms.push(term);
        }
        Ok(if has_or { Condition::Any(terms) } else { Condition::Parity(terms) })
    }
}

/// Pauli applied by a conditional correction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CorrectionPauli {
    /// Logical operator of the block's code.
    Logical { basis: Basis, index: usize },
    /// Explicit block-local Pauli.
    Physical(PauliOperator),
}

impl fmt::Display for CorrectionPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrectionPauli::Logical { basis, index: 0 } => write!(f, "{basis}_L"),
            CorrectionPauli::Logical { basis, index } => write!(f, "{basis}_L[{index}]"),
            CorrectionPauli::Physical(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Instruction {
    Gate { gate: GateName, targets: Vec<QubitRef> },
    /// Qubit-wise gate on one block, or between equal-size blocks `a` (control) and `b`.
    TransversalGate { gate: GateName, a: String, b: Option<String> },
    MeasureBlock { block: String, basis: Basis, label: String },
    MeasureQubit { qubit: QubitRef, basis: Basis, label: String },
    /// Ideal measurement of the `basis`-type operators given by `rows` on a block.
    MeasureStabilizers { block: String, basis: Basis, rows: BitMatrix, label: String },
    ConditionalPauli { condition: Condition, pauli: CorrectionPauli, block: String },
    /// Decode the readout `source` and apply the correction as `error_type` Paulis on `block`.
    Recover { source: String, error_type: Basis, block: String },
    /// Gauge fixing from a stabilizer measurement: the first `checks` outcomes
    /// are decoded to an `error_type` correction, the remaining (gauge) outcomes
    /// are then set to zero using operators from `fix`.
    GaugeFix { source: String, error_type: Basis, block: String, checks: usize, fix: BitMatrix },
    VerifyDiscard { condition: Condition },
    ResetQubit { qubit: QubitRef },
    /// Reset a raw block to |0…0⟩ or a code block to a logical state.
    ResetBlock { block: String, label: Option<Vec<LogicalLabel>> },
    /// Start of a sub-circuit whose hardware cost is taken from a published count.
    Segment { name: String, published_two_qubit_gates: usize },
    EndSegment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitMeta {
    pub kind: Option<ProtocolKind>,
    pub output: Option<String>,
    pub action: LogicalAction,
    /// Free-form parameters, e.g. gate counts of synthesized encoders.
    pub params: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circuit {
    #[serde(skip)]
    pub codes: Vec<(String, Arc<CssCode>)>,
    pub blocks: Vec<Block>,
    pub instructions: Vec<Instruction>,
    pub metadata: CircuitMeta,
}

impl Circuit {
    pub fn new(codes: Vec<(String, Arc<CssCode>)>) -> Self {
        Circuit {
            codes,
            blocks: Vec::new(),
            instructions: Vec::new(),
            metadata: CircuitMeta {
                kind: None,
                output: None,
                action: LogicalAction::Identity,
                params: Vec::new(),
            },
        }
    }

    pub fn code(&self, name: &str) -> Result<&Arc<CssCode>, CircuitError> {
        self.codes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| CircuitError::UnknownCode(name.to_string()))
    }

    pub fn block(&self, name: &str) -> Result<&Block, CircuitError> {
        self.blocks
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| CircuitError::UnknownBlock(name.to_string()))
    }

    pub fn block_index(&self, name: &str) -> Result<usize, CircuitError> {
        self.blocks
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| CircuitError::UnknownBlock(name.to_string()))
    }

    pub fn block_code(&self, name: &str) -> Result<Option<&Arc<CssCode>>, CircuitError> {
        match &self.block(name)?.code {
            Some(c) => Ok(Some(self.code(c)?)),
            None => Ok(None),
        }
    }

    pub fn input_block(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.input)
    }

    pub fn num_qubits(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn add_code_block(
        &mut self,
        name: &str,
        code: &str,
        init: BlockInit,
        role: BlockRole,
    ) -> &mut Block {
        let size = self.code(code).expect("code registered before use").n;
        self.blocks.push(Block {
            name: name.to_string(),
            code: Some(code.to_string()),
            size,
            init,
            role,
            input: false,
            prep: None,
        });
        self.blocks.last_mut().unwrap()
    }

    pub fn add_raw_block(&mut self, name: &str, size: usize, role: BlockRole) {
        self.blocks.push(Block {
            name: name.to_string(),
            code: None,
            size,
            init: BlockInit::Zeros,
            role,
            input: false,
            prep: None,
        });
    }

    pub fn push(&mut self, ins: Instruction) {
        self.instructions.push(ins);
    }

    /// Set the logical state of the input block.
    pub fn with_input(mut self, labels: Vec<LogicalLabel>) -> Self {
        if let Some(b) = self.blocks.iter_mut().find(|b| b.input) {
            b.init = BlockInit::Logical(labels);
        }
        self
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.metadata.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.metadata.params.retain(|(k, _)| k != key);
        self.metadata.params.push((key.to_string(), value.to_string()));
    }

    /// Measurement labels defined by an instruction.
    fn defined_label(ins: &Instruction) -> Option<&str> {
        match ins {
            Instruction::MeasureBlock { label, .. }
            | Instruction::MeasureQubit { label, .. }
            | Instruction::MeasureStabilizers { label, .. } => Some(label),
            _ => None,
        }
    }

    /// Check block, qubit and label references.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut names = HashSet::new();
        for b in &self.blocks {
            if !names.insert(b.name.as_str()) {
                return Err(CircuitError::Invalid(format!("duplicate block {:?}", b.name)));
            }
            if let Some(c) = &b.code {
                let code = self.code(c)?;
                if code.n != b.size {
                    return Err(CircuitError::Invalid(format!("block {:?} size mismatch", b.name)));
                }
                if let BlockInit::Logical(l) = &b.init {
                    if l.len() != code.k {
                        return Err(CircuitError::Invalid(format!(
                            "block {:?} needs {} labels",
                            b.name, code.k
                        )));
                    }
                }
            }
        }
        if let Some(out) = &self.metadata.output {
            self.block(out)?;
        }
        let mut labels: HashSet<&str> = HashSet::new();
        let mut open_segment = false;
        for ins in &self.instructions {
            let check_q = |q: &QubitRef| -> Result<(), CircuitError> {
                let b = self.block(&q.block)?;
                if q.index >= b.size {
                    return Err(CircuitError::QubitOutOfRange {
                        block: q.block.clone(),
                        size: b.size,
                        index: q.index,
                    });
                }
                Ok(())
            };
            let check_cond = |c: &Condition, labels: &HashSet<&str>| -> Result<(), CircuitError> {
                for t in c.terms() {
                    if !labels.contains(t.label()) {
                        return Err(CircuitError::MalformedCondition(format!(
                            "label {:?} used before it is measured",
                            t.label()
                        )));
                    }
                }
                Ok(())
            };
            match ins {
                Instruction::Gate { gate, targets } => {
                    if targets.len() != gate.arity() {
                        return Err(CircuitError::Invalid(format!(
                            "{} takes {} qubits",
                            gate.name(),
                            gate.arity()
                        )));
                    }
                    for q in targets {
                        check_q(q)?;
                    }
                }
                Instruction::TransversalGate { gate, a, b } => {
                    let ba = self.block(a)?;
                    match (gate.arity(), b) {
                        (2, Some(b)) => {
                            if self.block(b)?.size != ba.size {
                                return Err(CircuitError::SizeMismatch(a.clone(), b.clone()));
                            }
                            if a == b {
                                return Err(CircuitError::Invalid("transversal gate on one block".into()));
                            }
                        }
                        (1, None) => {}
                        _ => return Err(CircuitError::Invalid(format!("bad arity for T{}", gate.name()))),
                    }
                }
                Instruction::MeasureBlock { block, .. } => {
                    if self.block_code(block)?.is_none() {
                        return Err(CircuitError::Invalid(format!(
                            "block measurement of raw block {block:?}"
                        )));
                    }
                }
                Instruction::MeasureQubit { qubit, .. } | Instruction::ResetQubit { qubit } => {
                    check_q(qubit)?
                }
                Instruction::MeasureStabilizers { block, rows, .. } => {
                    if rows.ncols() != self.block(block)?.size {
                        return Err(CircuitError::SizeMismatch(block.clone(), "rows".into()));
                    }
                }
                Instruction::ConditionalPauli { condition, pauli, block } => {
                    check_cond(condition, &labels)?;
                    let b = self.block(block)?;
                    match pauli {
                        CorrectionPauli::Logical { index, .. } => {
                            let code = self.block_code(block)?.ok_or_else(|| {
                                CircuitError::Invalid(format!("logical Pauli on raw block {block:?}"))
                            })?;
                            if *index >= code.k {
                                return Err(CircuitError::Invalid("logical index out of range".into()));
                            }
                        }
                        CorrectionPauli::Physical(p) => {
                            if p.len() != b.size {
                                return Err(CircuitError::SizeMismatch(block.clone(), p.to_string()));
                            }
                        }
                    }
                }
                Instruction::Recover { source, block, .. }
                | Instruction::GaugeFix { source, block, .. } => {
                    self.block(block)?;
                    if !labels.contains(source.as_str()) {
                        return Err(CircuitError::MalformedCondition(format!(
                            "label {source:?} used before it is measured"
                        )));
                    }
                }
                Instruction::VerifyDiscard { condition } => check_cond(condition, &labels)?,
                Instruction::ResetBlock { block, label } => {
                    let b = self.block(block)?;
                    if label.is_some() != b.code.is_some() {
                        return Err(CircuitError::Invalid(format!(
                            "reset of {block:?}: labels only for code blocks"
                        )));
                    }
                }
                Instruction::Segment { .. } => {
                    if open_segment {
                        return Err(CircuitError::Invalid("nested segment".into()));
                    }
                    open_segment = true;
                }
                Instruction::EndSegment => {
                    if !open_segment {
                        return Err(CircuitError::Invalid("ENDSEGMENT without SEGMENT".into()));
                    }
                    open_segment = false;
                }
            }
            if let Some(l) = Self::defined_label(ins) {
                if !labels.insert(l) {
                    return Err(CircuitError::Invalid(format!("label {l:?} defined twice")));
                }
            }
        }
        if open_segment {
            return Err(CircuitError::Invalid("unterminated segment".into()));
        }
        Ok(())
    }

    /// Number of physical two-qubit gates in the instruction list.
    pub fn two_qubit_gate_count(&self) -> usize {
        self.instructions.iter().map(|i| self.gate_counts(i).0).sum()
    }

    /// (two-qubit, single-qubit) physical gate counts of one instruction.
    pub fn gate_counts(&self, ins: &Instruction) -> (usize, usize) {
        match ins {
            Instruction::Gate { gate, .. } => {
                if gate.arity() == 2 {
                    (1, 0)
                } else {
                    (0, 1)
                }
            }
            Instruction::TransversalGate { gate, a, .. } => {
                let n = self.block(a).map(|b| b.size).unwrap_or(0);
                if gate.arity() == 2 {
                    (n, 0)
                } else {
                    (0, n)
                }
            }
            _ => (0, 0),
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_circuit(self))
    }
}
