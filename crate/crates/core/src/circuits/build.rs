use std::sync::Arc;

use super::*;
use crate::css::TriorthogonalCode;
use crate::stabsim::encode_logical;
use crate::transversal;

fn tg(gate: GateName, a: &str, b: Option<&str>) -> Instruction {
    Instruction::TransversalGate { gate, a: a.to_string(), b: b.map(str::to_string) }
}

fn meas(block: &str, basis: Basis, label: &str) -> Instruction {
    Instruction::MeasureBlock { block: block.to_string(), basis, label: label.to_string() }
}

fn cpauli(label: &str, basis: Basis, block: &str) -> Instruction {
    Instruction::ConditionalPauli {
        condition: Condition::single(label),
        pauli: CorrectionPauli::Logical { basis, index: 0 },
        block: block.to_string(),
    }
}

fn recover(source: &str, error_type: Basis, block: &str) -> Instruction {
    Instruction::Recover { source: source.to_string(), error_type, block: block.to_string() }
}

fn q(block: &str, index: usize) -> QubitRef {
    QubitRef { block: block.to_string(), index }
}

fn zero(k: usize) -> BlockInit {
    BlockInit::Logical(vec![LogicalLabel::Zero; k])
}

fn codes(qt: &TriorthogonalCode, qsym: Option<&CssCode>) -> Vec<(String, Arc<CssCode>)> {
    let mut v = vec![(QT.to_string(), Arc::new(qt.base.clone()))];
    if let Some(s) = qsym {
        v.push((QSYM.to_string(), Arc::new(s.clone())));
    }
    v
}

fn add_input(c: &mut Circuit, code: &str) {
    let k = c.code(code).unwrap().k;
    let b = c.add_code_block("data", code, zero(k), BlockRole::Data);
    b.input = true;
}

fn add_ancilla(
    c: &mut Circuit,
    name: &str,
    code: &str,
    label: LogicalLabel,
    role: BlockRole,
    prep: Option<ProtocolKind>,
) {
    let k = c.code(code).unwrap().k;
    let b = c.add_code_block(name, code, BlockInit::Logical(vec![label; k]), role);
    b.prep = prep.map(|kind| PrepSpec { kind, label });
}

/// Prep kind used for an ancilla of `code` in state `label`.
fn prep_for(code: &str, label: LogicalLabel) -> ProtocolKind {
    match (code, label) {
        (QSYM, _) => ProtocolKind::PrepZeroSym,
        _ => ProtocolKind::PrepPlusQTVerified,
    }
}

fn require(ok: Result<bool, transversal::TransversalError>, what: &'static str) -> Result<(), CircuitError> {
    match ok {
        Ok(true) => Ok(()),
        Ok(false) => Err(CircuitError::PairNotTransversal(what)),
        Err(e) => Err(CircuitError::Invalid(e.to_string())),
    }
}

/// Build the instruction sequence of a protocol.
pub fn build_protocol(
    kind: ProtocolKind,
    qt: &TriorthogonalCode,
    qsym: Option<&CssCode>,
) -> Result<Circuit, CircuitError> {
    let sym = if kind.needs_companion() {
        Some(qsym.ok_or(CircuitError::MissingCompanion(kind))?)
    } else {
        None
    };
    let mut c = Circuit::new(codes(qt, qsym));
    c.metadata.kind = Some(kind);
    use BlockRole::*;
    use GateName::*;
    use LogicalLabel as L;
    match kind {
        ProtocolKind::SteaneEC => {
            add_input(&mut c, QT);
            build_steane_ec(&mut c, QT)?;
            c.metadata.output = Some("data".into());
            c.metadata.action = LogicalAction::Identity;
        }
        ProtocolKind::HadamardCZ => {
            require(transversal::check_cz_sufficient(&qt.base, &qt.base), "CZ")?;
            add_input(&mut c, QT);
            add_ancilla(&mut c, "anc", QT, L::Plus, Switching, Some(ProtocolKind::PrepPlusQTVerified));
            c.push(tg(Cz, "data", Some("anc")));
            c.push(meas("data", Basis::X, "m0"));
            c.push(cpauli("m0", Basis::X, "anc"));
            c.metadata.output = Some("anc".into());
            c.metadata.action = LogicalAction::Hadamard;
        }
        ProtocolKind::TeleportTtoSym => {
            require(transversal::check_cnot(&qt.base, sym.unwrap()), "CNOT")?;
            add_input(&mut c, QT);
            add_ancilla(&mut c, "anc", QSYM, L::Zero, Switching, Some(prep_for(QSYM, L::Zero)));
            c.push(tg(Cnot, "data", Some("anc")));
            c.push(meas("data", Basis::X, "m0"));
            c.push(cpauli("m0", Basis::Z, "anc"));
            c.metadata.output = Some("anc".into());
            c.metadata.action = LogicalAction::Identity;
        }
        ProtocolKind::TeleportSymToT => {
            require(transversal::check_cz_sufficient(sym.unwrap(), &qt.base), "CZ")?;
            add_input(&mut c, QSYM);
            add_ancilla(&mut c, "anc", QT, L::Plus, Switching, Some(ProtocolKind::PrepPlusQTVerified));
            c.push(tg(H, "data", None));
            c.push(tg(Cz, "data", Some("anc")));
            c.push(meas("data", Basis::X, "m0"));
            c.push(cpauli("m0", Basis::X, "anc"));
            c.metadata.output = Some("anc".into());
            c.metadata.action = LogicalAction::Identity;
        }
        ProtocolKind::HadamardSteaneMerged => {
            require(transversal::check_cz_sufficient(&qt.base, &qt.base), "CZ")?;
            add_input(&mut c, QT);
            add_ancilla(&mut c, "a1", QT, L::Plus, Ec, Some(ProtocolKind::PrepPlusQTVerified));
            add_ancilla(&mut c, "a2", QT, L::Plus, Switching, Some(ProtocolKind::PrepPlusQTVerified));
            c.push(tg(Cnot, "data", Some("a1")));
            c.push(meas("a1", Basis::Z, "s0"));
            c.push(tg(Cz, "data", Some("a2")));
            c.push(meas("data", Basis::X, "m0"));
            c.push(recover("s0", Basis::Z, "a2"));
            c.push(cpauli("m0", Basis::X, "a2"));
            c.metadata.output = Some("a2".into());
            c.metadata.action = LogicalAction::Hadamard;
        }
        ProtocolKind::TeleportTtoSymEC => {
            require(transversal::check_cnot(&qt.base, sym.unwrap()), "CNOT")?;
            add_input(&mut c, QT);
            add_ancilla(&mut c, "a1", QT, L::Plus, Ec, Some(ProtocolKind::PrepPlusQTVerified));
            add_ancilla(&mut c, "a2", QSYM, L::Zero, Switching, Some(ProtocolKind::PrepZeroSym));
            c.push(tg(Cnot, "data", Some("a1")));
            c.push(tg(Cnot, "data", Some("a2")));
            c.push(meas("a1", Basis::Z, "s0"));
            c.push(meas("data", Basis::X, "m0"));
            c.push(recover("s0", Basis::X, "a2"));
            c.push(cpauli("m0", Basis::Z, "a2"));
            c.metadata.output = Some("a2".into());
            c.metadata.action = LogicalAction::Identity;
        }
        ProtocolKind::TeleportSymToTEC => {
            let s = sym.unwrap();
            require(transversal::check_cz_sufficient(s, &qt.base), "CZ")?;
            require(transversal::check_cnot(s, s), "CNOT")?;
            add_input(&mut c, QSYM);
            add_ancilla(&mut c, "a1", QSYM, L::Plus, Ec, Some(ProtocolKind::PrepZeroSym));
            add_ancilla(&mut c, "a2", QT, L::Plus, Switching, Some(ProtocolKind::PrepPlusQTVerified));
            c.push(tg(H, "data", None));
            c.push(tg(Cnot, "data", Some("a1")));
            c.push(tg(Cz, "data", Some("a2")));
            c.push(meas("a1", Basis::Z, "s0"));
            c.push(meas("data", Basis::X, "m0"));
            c.push(recover("s0", Basis::Z, "a2"));
            c.push(cpauli("m0", Basis::X, "a2"));
            c.metadata.output = Some("a2".into());
            c.metadata.action = LogicalAction::Identity;
        }
        ProtocolKind::PrepPlusQTVerified => {
            let prep = build_prep(kind, L::Plus, &c.codes)?;
            return Ok(prep);
        }
        ProtocolKind::PrepZeroSym => {
            let prep = build_prep(kind, L::Zero, &c.codes)?;
            return Ok(prep);
        }
        ProtocolKind::TransversalHBaseline => {
            add_input(&mut c, QT);
            let gauge = gauge_rows(qt)?;
            let z_ops = qt.g0.stack(&gauge);
            c.push(tg(H, "data", None));
            c.push(Instruction::MeasureStabilizers {
                block: "data".into(),
                basis: Basis::Z,
                rows: z_ops,
                label: "g".into(),
            });
            c.push(Instruction::GaugeFix {
                source: "g".into(),
                error_type: Basis::X,
                block: "data".into(),
                checks: qt.g0.nrows(),
                fix: qt.base.hz.clone(),
            });
            c.push(Instruction::MeasureStabilizers {
                block: "data".into(),
                basis: Basis::X,
                rows: qt.base.hx.clone(),
                label: "t".into(),
            });
            c.push(recover("t", Basis::Z, "data"));
            c.metadata.output = Some("data".into());
            c.metadata.action = LogicalAction::Hadamard;
        }
    }
    c.validate()?;
    Ok(c)
}

/// Z-type gauge operators of the transversal-H frame: a basis of
/// `span(hz) / span(g0)`, chosen by (weight, colex).
pub fn gauge_rows(qt: &TriorthogonalCode) -> Result<BitMatrix, CircuitError> {
    qt.base
        .hz
        .min_weight_quotient_basis(&qt.g0)
        .map_err(|e| CircuitError::Invalid(e.to_string()))
}

/// Z generators of `qt` that the companion lacks: a (weight, colex)-minimal
/// basis of `span(hz_qt) / span(hz_sym)`.
pub fn excluded_generators(qt: &CssCode, qsym: &CssCode) -> Result<BitMatrix, CircuitError> {
    qt.hz
        .min_weight_quotient_basis(&qsym.hz)
        .map_err(|e| CircuitError::Invalid(e.to_string()))
}

/// Steane error correction on the input block with eight verified ancilla blocks.
fn build_steane_ec(c: &mut Circuit, code: &str) -> Result<(), CircuitError> {
    use GateName::*;
    use LogicalLabel as L;
    let prep = prep_for(code, L::Plus);
    for name in ["p1", "p2", "p3", "p4"] {
        let role = if name == "p1" { BlockRole::Ec } else { BlockRole::Verification };
        add_ancilla(c, name, code, L::Plus, role, Some(prep));
    }
    for name in ["z1", "z2", "z3", "z4"] {
        let role = if name == "z1" { BlockRole::Ec } else { BlockRole::Verification };
        add_ancilla(c, name, code, L::Zero, role, Some(prep));
    }
    // |+⟩ ancillas: copy Z errors of p1/p3 onto p2/p4, then X errors of p1 onto p3.
    c.push(tg(Cnot, "p2", Some("p1")));
    c.push(tg(Cnot, "p4", Some("p3")));
    c.push(meas("p2", Basis::X, "vp2"));
    c.push(meas("p4", Basis::X, "vp4"));
    c.push(tg(Cnot, "p1", Some("p3")));
    c.push(meas("p3", Basis::Z, "vp3"));
    // |0⟩ ancillas: copy X errors of z1/z3 onto z2/z4, then Z errors of z1 onto z3.
    c.push(tg(Cnot, "z1", Some("z2")));
    c.push(tg(Cnot, "z3", Some("z4")));
    c.push(meas("z2", Basis::Z, "vz2"));
    c.push(meas("z4", Basis::Z, "vz4"));
    c.push(tg(Cnot, "z3", Some("z1")));
    c.push(meas("z3", Basis::X, "vz3"));
    let terms = |v: &[(&str, bool)]| -> Vec<Term> {
        v.iter()
            .flat_map(|&(l, logical)| {
                let mut t = vec![Term::Syndrome(l.to_string())];
                if logical {
                    t.push(Term::Value { label: l.to_string(), index: 0 });
                }
                t
            })
            .collect()
    };
    c.push(Instruction::VerifyDiscard {
        condition: Condition::Any(terms(&[
            ("vp2", true),
            ("vp4", true),
            ("vp3", false),
            ("vz2", true),
            ("vz4", true),
            ("vz3", false),
        ])),
    });
    c.push(tg(Cnot, "data", Some("p1")));
    c.push(meas("p1", Basis::Z, "sx"));
    c.push(tg(Cnot, "z1", Some("data")));
    c.push(meas("z1", Basis::X, "sz"));
    c.push(recover("sx", Basis::X, "data"));
    c.push(recover("sz", Basis::Z, "data"));
    c.set_param("verification", "transversal-cnot-comparison");
    Ok(())
}

/// Preparation circuits for ancilla blocks.
///
/// `PrepPlusQTVerified` prepares `|+⟩` of the triorthogonal code: an
/// encoder segment standing in for a conventional verified preparation,
/// followed by measurement of the Z generators the companion lacks, each
/// through four CNOTs onto a helper qubit, discarding on any nonzero outcome.
/// `PrepZeroSym` prepares `|0⟩` of the companion with a flag check of the
/// logical Z; for `|+⟩` a transversal H follows.
pub fn build_prep(
    kind: ProtocolKind,
    label: LogicalLabel,
    codes: &[(String, Arc<CssCode>)],
) -> Result<Circuit, CircuitError> {
    let mut c = Circuit::new(codes.to_vec());
    c.metadata.kind = Some(kind);
    match kind {
        ProtocolKind::PrepPlusQTVerified => {
            let qt = c.code(QT)?.clone();
            let qsym = c.code(QSYM).map_err(|_| CircuitError::MissingCompanion(kind))?.clone();
            let extra = excluded_generators(&qt, &qsym)?;
            c.add_code_block("anc", QT, BlockInit::Zeros, BlockRole::Prep);
            c.add_raw_block("vq", 2, BlockRole::Helper);
            let enc = synthesize_encoding_circuit(&qt, &vec![label; qt.k]);
            c.push(Instruction::Segment {
                name: "ft-plus-prep".into(),
                published_two_qubit_gates: PUBLISHED_FT_PLUS_PREP_CNOTS,
            });
            append_renamed(&mut c, &enc, "anc");
            c.push(Instruction::EndSegment);
            let mut labels = Vec::new();
            for (i, g) in extra.rows().iter().enumerate() {
                let helper = i % 2;
                if i >= 2 {
                    c.push(Instruction::ResetQubit { qubit: q("vq", helper) });
                }
                for j in g.iter_ones() {
                    c.push(Instruction::Gate {
                        gate: GateName::Cnot,
                        targets: vec![q("anc", j), q("vq", helper)],
                    });
                }
                let l = format!("v{i}");
                c.push(Instruction::MeasureQubit {
                    qubit: q("vq", helper),
                    basis: Basis::Z,
                    label: l.clone(),
                });
                labels.push(Term::Value { label: l, index: 0 });
            }
            c.push(Instruction::VerifyDiscard { condition: Condition::Any(labels) });
            c.set_param("encoder_two_qubit_gates", enc.two_qubit_gate_count());
            c.set_param("verification_generators", extra.nrows());
        }
        ProtocolKind::PrepZeroSym => {
            let qsym = c.code(QSYM).map_err(|_| CircuitError::MissingCompanion(kind))?.clone();
            c.add_code_block("anc", QSYM, BlockInit::Zeros, BlockRole::Prep);
            c.add_raw_block("flag", 1, BlockRole::Helper);
            let enc = synthesize_encoding_circuit(&qsym, &vec![LogicalLabel::Zero; qsym.k]);
            c.push(Instruction::Segment {
                name: "sym-zero-prep".into(),
                published_two_qubit_gates: PUBLISHED_SYM_ZERO_PREP_CNOTS,
            });
            append_renamed(&mut c, &enc, "anc");
            for j in qsym.logical_z.row(0).iter_ones() {
                c.push(Instruction::Gate {
                    gate: GateName::Cnot,
                    targets: vec![q("anc", j), q("flag", 0)],
                });
            }
            c.push(Instruction::MeasureQubit { qubit: q("flag", 0), basis: Basis::Z, label: "f0".into() });
            c.push(Instruction::EndSegment);
            c.push(Instruction::VerifyDiscard { condition: Condition::single("f0") });
            match label {
                LogicalLabel::Zero => {}
                LogicalLabel::Plus => c.push(tg(GateName::H, "anc", None)),
                _ => return Err(CircuitError::UnsupportedKind(format!("{kind} with label {label}"))),
            }
            c.set_param("encoder_two_qubit_gates", enc.two_qubit_gate_count());
        }
        _ => return Err(CircuitError::UnsupportedKind(kind.to_string())),
    }
    c.metadata.output = Some("anc".into());
    c.metadata.action = LogicalAction::Prepare(vec![label]);
    c.validate()?;
    Ok(c)
}

/// Published CNOT count of a conventional fault-tolerant `|+⟩` preparation
/// of the 15-qubit triorthogonal code (flag-verified, two helper qubits).
pub const PUBLISHED_FT_PLUS_PREP_CNOTS: usize = 32;
/// Published CNOT count of the optimized `|0⟩` preparation of the 15-qubit
/// symmetric code, including its flag verification.
pub const PUBLISHED_SYM_ZERO_PREP_CNOTS: usize = 22;

fn append_renamed(c: &mut Circuit, enc: &Circuit, block: &str) {
    for ins in &enc.instructions {
        if let Instruction::Gate { gate, targets } = ins {
            c.push(Instruction::Gate {
                gate: *gate,
                targets: targets.iter().map(|t| q(block, t.index)).collect(),
            });
        }
    }
}

/// H + CNOT encoder (plus X/Z fix-ups for `1` and `-` labels) preparing the
/// encoded state from `|0…0⟩`.
///
/// The X-parts of the canonical stabilizer generators form a reduced
/// echelon basis of the X-type support space; H on each pivot followed by
/// CNOT fan-out from the pivot to the rest of its row creates the uniform
/// superposition over that space.
pub fn synthesize_encoding_circuit(code: &CssCode, labels: &[LogicalLabel]) -> Circuit {
    let mut c = Circuit::new(vec![("code".to_string(), Arc::new(code.clone()))]);
    c.add_code_block("q", "code", BlockInit::Zeros, BlockRole::Prep);
    c.metadata.output = Some("q".into());
    c.metadata.action = LogicalAction::Prepare(labels.to_vec());
    // Sign-free version of the target state: 1 -> 0, - -> +.
    let unsigned: Vec<LogicalLabel> = labels
        .iter()
        .map(|l| match l {
            LogicalLabel::One => LogicalLabel::Zero,
            LogicalLabel::Minus => LogicalLabel::Plus,
            other => *other,
        })
        .collect();
    let tableau = encode_logical(code, &unsigned).expect("label count matches code");
    let n = code.n;
    let mut xrows = BitMatrix::empty(n);
    for p in tableau.canonical_stabilizers() {
        if !p.a.is_zero() {
            xrows.push_row(p.a.clone());
        }
    }
    let e = xrows.rref();
    for (row, &p) in e.reduced.rows().iter().zip(&e.pivots) {
        c.push(Instruction::Gate { gate: GateName::H, targets: vec![q("q", p)] });
        for j in row.iter_ones().filter(|&j| j != p) {
            c.push(Instruction::Gate { gate: GateName::Cnot, targets: vec![q("q", p), q("q", j)] });
        }
    }
    for (i, l) in labels.iter().enumerate() {
        let (basis, row) = match l {
            LogicalLabel::One => (GateName::X, code.logical_x.row(i)),
            LogicalLabel::Minus => (GateName::Z, code.logical_z.row(i)),
            _ => continue,
        };
        for j in row.iter_ones() {
            c.push(Instruction::Gate { gate: basis, targets: vec![q("q", j)] });
        }
    }
    let two = c.two_qubit_gate_count();
    let total: usize = c.instructions.len();
    c.set_param("two_qubit_gates", two);
    c.set_param("single_qubit_gates", total - two);
    c
}
