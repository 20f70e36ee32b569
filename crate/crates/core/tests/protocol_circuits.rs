use std::collections::HashMap;
use std::sync::Arc;

use tricss::circuits::*;
use tricss::css::CssCode;
use tricss::faultlab::{builtin_protocol, classify, Verdict};
use tricss::fifteen;
use tricss::gf2::BitMatrix;
use tricss::stabsim::{encode_logical, LogicalLabel, PauliOperator};

const LABELS: [LogicalLabel; 4] = [LogicalLabel::Zero, LogicalLabel::One, LogicalLabel::Plus, LogicalLabel::Minus];

fn prep(kind: ProtocolKind, label: LogicalLabel) -> Circuit {
    let c = builtin_protocol(ProtocolKind::TeleportTtoSymEC).unwrap();
    build_prep(kind, label, &c.codes).unwrap()
}

#[test]
fn every_protocol_validates_and_round_trips_through_text() {
    let mut all: Vec<Circuit> = ProtocolKind::ALL.iter().map(|k| builtin_protocol(*k).unwrap()).collect();
    all.push(prep(ProtocolKind::PrepPlusQTVerified, LogicalLabel::Plus));
    all.push(prep(ProtocolKind::PrepZeroSym, LogicalLabel::Zero));
    for c in all {
        c.validate().unwrap();
        let text = c.to_string();
        let back = parse_circuit(&text, &c.codes).unwrap();
        assert_eq!(back, c, "round trip of {:?}", c.metadata.kind);
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn kind_names_parse_back() {
    for k in ProtocolKind::ALL {
        assert_eq!(k.name().parse::<ProtocolKind>().unwrap(), k);
    }
    assert!("teleport-sideways".parse::<ProtocolKind>().is_err());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let c = builtin_protocol(ProtocolKind::HadamardCZ).unwrap();
    let mut text = c.to_string();
    text.push_str("FROB data\n");
    let lines = text.lines().count();
    match parse_circuit(&text, &c.codes) {
        Err(CircuitError::Parse { line, .. }) => assert_eq!(line, lines),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn gate_counts_of_switching_circuits() {
    let count = |k| builtin_protocol(k).unwrap().two_qubit_gate_count();
    assert_eq!(count(ProtocolKind::HadamardCZ), 15);
    assert_eq!(count(ProtocolKind::TeleportTtoSym), 15);
    assert_eq!(count(ProtocolKind::TeleportSymToT), 15);
    assert_eq!(count(ProtocolKind::TeleportTtoSymEC), 30);
    assert_eq!(count(ProtocolKind::TeleportSymToTEC), 30);
}

#[test]
fn missing_companion_is_reported() {
    let qt = fifteen::triorthogonal();
    assert_eq!(
        build_protocol(ProtocolKind::TeleportTtoSym, &qt, None).unwrap_err(),
        CircuitError::MissingCompanion(ProtocolKind::TeleportTtoSym)
    );
    assert!(build_protocol(ProtocolKind::HadamardCZ, &qt, None).is_ok());
}

#[test]
fn plus_preparation_verifies_exactly_the_excluded_generators() {
    let qt = fifteen::triorthogonal().base;
    let sym = fifteen::symmetric();
    let excluded = excluded_generators(&qt, &sym).unwrap();
    let expected = BitMatrix::from_supports(15, &fifteen::EXCLUDED_Z);
    assert_eq!(excluded.nrows(), 3);
    for r in expected.rows() {
        assert!(excluded.rows().contains(r));
    }
    let c = prep(ProtocolKind::PrepPlusQTVerified, LogicalLabel::Plus);
    assert_eq!(c.param("verification_generators"), Some("3"));
    // Reconstruct the measured supports from the CNOT fan-in onto the helpers.
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    let mut in_segment = false;
    for ins in &c.instructions {
        match ins {
            Instruction::Segment { .. } => in_segment = true,
            Instruction::EndSegment => in_segment = false,
            Instruction::Gate { gate: GateName::Cnot, targets } if !in_segment && targets[1].block == "vq" => {
                current.push(targets[0].index + 1);
            }
            Instruction::MeasureQubit { .. } => supports.push(std::mem::take(&mut current)),
            _ => {}
        }
    }
    let mut want: Vec<Vec<usize>> = fifteen::EXCLUDED_Z.iter().map(|s| s.to_vec()).collect();
    supports.sort();
    want.sort();
    assert_eq!(supports, want);
}

fn run_encoder(c: &Circuit) -> tricss::stabsim::StabilizerTableau {
    let out = run(c, 0, Vec::new()).unwrap();
    assert!(out.accepted);
    out.block_state("q").unwrap()
}

#[test]
fn synthesized_encoders_prepare_the_target_states() {
    for code in [fifteen::triorthogonal().base, fifteen::symmetric()] {
        for label in LABELS {
            let enc = synthesize_encoding_circuit(&code, &[label]);
            let got = run_encoder(&enc);
            let want = encode_logical(&code, &[label]).unwrap();
            assert_eq!(got.canonical_stabilizers(), want.canonical_stabilizers(), "label {label:?}");
            assert!(enc.param("two_qubit_gates").is_some());
        }
    }
}

#[test]
fn trivial_code_encoder_is_a_single_hadamard() {
    let bare = CssCode::from_stabilizers(BitMatrix::empty(1), BitMatrix::empty(1)).unwrap();
    let enc = synthesize_encoding_circuit(&bare, &[LogicalLabel::Plus]);
    assert_eq!(enc.instructions.len(), 1);
    assert!(matches!(&enc.instructions[0], Instruction::Gate { gate: GateName::H, targets } if targets[0].index == 0));
    let enc = synthesize_encoding_circuit(&bare, &[LogicalLabel::Zero]);
    assert!(enc.instructions.is_empty());
}

#[test]
fn prep_circuits_accept_without_faults_and_produce_their_labels() {
    let cases = [
        (ProtocolKind::PrepPlusQTVerified, LogicalLabel::Plus, fifteen::triorthogonal().base),
        (ProtocolKind::PrepZeroSym, LogicalLabel::Zero, fifteen::symmetric()),
        (ProtocolKind::PrepZeroSym, LogicalLabel::Plus, fifteen::symmetric()),
    ];
    for (kind, label, code) in cases {
        let c = prep(kind, label);
        for seed in 0..5 {
            let out = run(&c, seed, Vec::new()).unwrap();
            assert!(out.accepted);
            let got = out.block_state("anc").unwrap();
            let want = encode_logical(&code, &[label]).unwrap();
            assert_eq!(got.canonical_stabilizers(), want.canonical_stabilizers());
        }
    }
}

#[test]
fn flag_catches_a_logical_flip_in_symmetric_prep() {
    let c = prep(ProtocolKind::PrepZeroSym, LogicalLabel::Zero);
    let sym = fifteen::symmetric();
    // An X error on a qubit of the logical Z support inside the encoder region flips the flag.
    let q = sym.logical_z.row(0).iter_ones().next().unwrap();
    let end = c.instructions.iter().position(|i| matches!(i, Instruction::Gate { targets, .. } if targets.len() == 2 && targets[1].block == "flag")).unwrap();
    let inj = Injection { position: end, block: "anc".into(), pauli: PauliOperator::single(15, q, 'X') };
    let out = run(&c, 0, vec![inj]).unwrap();
    assert!(!out.accepted);
}

#[test]
fn forced_branches_follow_the_requested_outcome() {
    let c = builtin_protocol(ProtocolKind::TeleportTtoSym).unwrap();
    let exec = Executor::with_input(&c, InputState::Labels(vec![LogicalLabel::Plus])).unwrap();
    for forced in [false, true] {
        let opts = RunOptions { seed: 3, injections: Vec::new(), forced: HashMap::from([("m0".to_string(), forced)]) };
        let out = exec.run(&opts).unwrap();
        assert_eq!(out.readout("m0").unwrap().logical.get(0), forced);
        let got = out.block_state("anc").unwrap();
        let want = encode_logical(&fifteen::symmetric(), &[LogicalLabel::Plus]).unwrap();
        assert_eq!(got.canonical_stabilizers(), want.canonical_stabilizers());
        assert_eq!(out.feedback.is_empty(), !forced);
    }
}

#[test]
fn runs_are_reproducible() {
    let c = builtin_protocol(ProtocolKind::TeleportSymToTEC).unwrap();
    let inj = vec![Injection { position: 1, block: "data".into(), pauli: PauliOperator::single(15, 4, 'Y') }];
    let a = run(&c, 99, inj.clone()).unwrap();
    let b = run(&c, 99, inj).unwrap();
    assert_eq!(a.record, b.record);
    assert_eq!(a.tableau.canonical_stabilizers(), b.tableau.canonical_stabilizers());
}

#[test]
fn injection_out_of_range_is_rejected() {
    let c = builtin_protocol(ProtocolKind::HadamardCZ).unwrap();
    let len = c.instructions.len();
    let inj = Injection { position: len + 1, block: "data".into(), pauli: PauliOperator::single(15, 0, 'X') };
    assert_eq!(run(&c, 0, vec![inj]).unwrap_err(), CircuitError::InjectionOutOfRange { position: len + 1, len });
}

#[test]
fn sym_to_t_switch_with_ec_corrects_a_single_input_flip() {
    let c = builtin_protocol(ProtocolKind::TeleportSymToTEC).unwrap();
    let exec = Executor::with_input(&c, InputState::Reference).unwrap();
    for (q, letter) in [(0, 'X'), (7, 'Z'), (14, 'Y')] {
        let inj = Injection { position: 0, block: "data".into(), pauli: PauliOperator::single(15, q, letter) };
        let out = exec.run(&RunOptions { seed: 5, injections: vec![inj], ..Default::default() }).unwrap();
        let verdict = classify(&c, &out).unwrap();
        assert_eq!(verdict.verdict, Verdict::Corrected, "{letter}{q}");
        assert!(verdict.residual_weight <= 1);
    }
}

#[test]
fn block_registry_rejects_unknown_names() {
    let qt = Arc::new(fifteen::triorthogonal().base);
    let c = Circuit::new(vec![("qt".to_string(), qt)]);
    assert_eq!(c.block("nope").unwrap_err(), CircuitError::UnknownBlock("nope".into()));
    assert_eq!(c.code("qsym").unwrap_err(), CircuitError::UnknownCode("qsym".into()));
}
