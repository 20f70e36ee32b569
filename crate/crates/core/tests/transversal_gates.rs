use tricss::css::{generate_symmetric_codes, CssCode};
use tricss::fifteen;
use tricss::gf2::BitMatrix;
use tricss::stabsim::{encode_logical, Gate, LogicalLabel, PauliOperator, StabilizerTableau};
use tricss::transversal::*;
use tricss::Basis;

fn pair() -> (CssCode, CssCode) {
    (fifteen::triorthogonal().base, fifteen::symmetric())
}

#[test]
fn triorthogonal_and_companion_admit_transversal_cnot_and_cz() {
    let (qt, sym) = pair();
    assert!(check_cnot(&qt, &sym).unwrap());
    assert!(check_cnot(&sym, &sym).unwrap());
    // The companion has more X stabilizers, so CNOT only runs one way.
    assert!(!check_cnot(&sym, &qt).unwrap());
    for (a, b) in [(&qt, &sym), (&sym, &qt)] {
        assert!(check_cz_sufficient(a, b).unwrap());
        assert!(check_cz_exact(a, b).unwrap());
        assert!(check_cz_exhaustive(a, b).unwrap());
    }
    let r = pair_report(&qt, &sym, true).unwrap();
    assert!(r.cnot_forward && r.cz && !r.cnot_backward);
    assert!(r.witnesses.iter().all(|w| w.condition.starts_with("cnot_backward")));
}

#[test]
fn swapped_logicals_break_cz() {
    // Two bare qubits whose logical labels are swapped on one side.
    let a = CssCode::from_stabilizers(BitMatrix::empty(2), BitMatrix::empty(2)).unwrap();
    let mut b = a.clone();
    b.logical_x = BitMatrix::from_strs(&["01", "10"]);
    b.logical_z = b.logical_x.clone();
    b.mapping_a = b.logical_x.clone();
    assert!(check_cz_sufficient(&a, &a).unwrap());
    assert!(!check_cz_sufficient(&a, &b).unwrap());
    assert!(!check_cz_exact(&a, &b).unwrap());
    assert!(!check_cz_exhaustive(&a, &b).unwrap());
    let r = pair_report(&a, &b, true).unwrap();
    assert!(!r.cz && !r.cnot_forward);
    assert!(r.witnesses.iter().any(|w| w.condition.starts_with("cz")));
}

#[test]
fn exact_test_agrees_with_exhaustive_oracle() {
    let qt = fifteen::triorthogonal();
    let mut codes = generate_symmetric_codes(&qt, 12).unwrap();
    codes.push(qt.base.clone());
    for a in &codes {
        for b in &codes {
            let exact = check_cz_exact(a, b).unwrap();
            assert_eq!(exact, check_cz_exhaustive(a, b).unwrap());
            assert_eq!(exact, check_cz_exact(b, a).unwrap());
            if check_cz_sufficient(a, b).unwrap() {
                assert!(exact);
            }
        }
    }
}

#[test]
fn mismatched_logical_pairing_breaks_cnot() {
    // Two bare qubits whose logical labels are swapped on the target side.
    let toy_a = CssCode::from_stabilizers(BitMatrix::empty(2), BitMatrix::empty(2)).unwrap();
    let mut toy_b = toy_a.clone();
    toy_b.logical_x = BitMatrix::from_strs(&["01", "10"]);
    toy_b.logical_z = BitMatrix::from_strs(&["01", "10"]);
    toy_b.mapping_a = toy_b.logical_x.clone();
    assert!(!check_cnot(&toy_a, &toy_b).unwrap());
}

#[test]
fn dimension_mismatch_is_an_error() {
    let qt = fifteen::triorthogonal().base;
    let small = CssCode::from_stabilizers(BitMatrix::empty(3), BitMatrix::from_strs(&["110", "011"])).unwrap();
    assert!(matches!(check_cnot(&qt, &small), Err(TransversalError::DimensionMismatch(15, 1, 3, 1))));
    let big = CssCode::from_stabilizers(BitMatrix::empty(21), BitMatrix::empty(21)).unwrap();
    assert!(matches!(check_cz_exhaustive(&big, &big), Err(TransversalError::TooLarge { n: 21, max: 20 })));
}

fn transversal(t: &mut StabilizerTableau, n: usize, two: fn(usize, usize) -> Gate) {
    for i in 0..n {
        t.apply_gate(two(i, n + i)).unwrap();
    }
}

#[test]
fn transversal_cz_acts_as_logical_cz_on_the_simulator() {
    let (qt, sym) = pair();
    let x = |c: &CssCode| PauliOperator::of_type(Basis::X, c.logical_x.row(0));
    let z = |c: &CssCode| PauliOperator::of_type(Basis::Z, c.logical_z.row(0));
    let mut t = encode_logical(&qt, &[LogicalLabel::Plus])
        .unwrap()
        .tensor(&encode_logical(&sym, &[LogicalLabel::Plus]).unwrap());
    transversal(&mut t, 15, Gate::Cz);
    assert_eq!(t.stabilizes(&x(&qt).tensor(&z(&sym))), Some(true));
    assert_eq!(t.stabilizes(&z(&qt).tensor(&x(&sym))), Some(true));
    // X stabilizers pick up their Z partner on the other block.
    for r in qt.hx.rows() {
        let s = PauliOperator::of_type(Basis::X, r).tensor(&PauliOperator::of_type(Basis::Z, r));
        assert_eq!(t.stabilizes(&s), Some(true));
    }
    for r in sym.hx.rows() {
        let s = PauliOperator::of_type(Basis::Z, r).tensor(&PauliOperator::of_type(Basis::X, r));
        assert_eq!(t.stabilizes(&s), Some(true));
    }
}

#[test]
fn transversal_cnot_acts_as_logical_cnot_on_the_simulator() {
    let (qt, sym) = pair();
    for (control, target) in [(LogicalLabel::One, LogicalLabel::Zero), (LogicalLabel::Zero, LogicalLabel::Zero)] {
        let mut t = encode_logical(&qt, &[control])
            .unwrap()
            .tensor(&encode_logical(&sym, &[target]).unwrap());
        transversal(&mut t, 15, Gate::Cnot);
        let z_target = PauliOperator::identity(15).tensor(&PauliOperator::of_type(Basis::Z, sym.logical_z.row(0)));
        assert_eq!(t.stabilizes(&z_target), Some(control == LogicalLabel::Zero));
        for r in sym.hz.rows() {
            let s = PauliOperator::identity(15).tensor(&PauliOperator::of_type(Basis::Z, r));
            assert_eq!(t.stabilizes(&s), Some(true));
        }
    }
}
