use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tricss::decoder::build_decoder;
use tricss::fifteen;
use tricss::stabsim::*;
use tricss::Basis;

type C = (f64, f64);

fn mul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Dense state vector; bit q of the index is qubit q.
struct Dense {
    n: usize,
    amp: Vec<C>,
}

impl Dense {
    fn new(n: usize) -> Self {
        let mut amp = vec![(0.0, 0.0); 1 << n];
        amp[0] = (1.0, 0.0);
        Dense { n, amp }
    }

    fn apply(&mut self, g: Gate) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match g {
            Gate::H(q) => {
                let m = 1 << q;
                for i in 0..self.amp.len() {
                    if i & m == 0 {
                        let (a, b) = (self.amp[i], self.amp[i | m]);
                        self.amp[i] = ((a.0 + b.0) * h, (a.1 + b.1) * h);
                        self.amp[i | m] = ((a.0 - b.0) * h, (a.1 - b.1) * h);
                    }
                }
            }
            Gate::Cnot(c, t) => {
                for i in 0..self.amp.len() {
                    if i & (1 << c) != 0 && i & (1 << t) == 0 {
                        self.amp.swap(i, i | (1 << t));
                    }
                }
            }
            Gate::Cz(a, b) => {
                for i in 0..self.amp.len() {
                    if i & (1 << a) != 0 && i & (1 << b) != 0 {
                        self.amp[i] = mul(self.amp[i], (-1.0, 0.0));
                    }
                }
            }
            Gate::S(q) => {
                for i in 0..self.amp.len() {
                    if i & (1 << q) != 0 {
                        self.amp[i] = mul(self.amp[i], (0.0, 1.0));
                    }
                }
            }
            Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                let letter = match g {
                    Gate::X(_) => 'X',
                    Gate::Y(_) => 'Y',
                    _ => 'Z',
                };
                self.amp = self.pauli_image(&PauliOperator::single(self.n, q, letter));
            }
        }
    }

    /// `P|ψ⟩`, built letter by letter.
    fn pauli_image(&self, p: &PauliOperator) -> Vec<C> {
        let global = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][p.phase as usize];
        let mut out = vec![(0.0, 0.0); self.amp.len()];
        for (i, &a) in self.amp.iter().enumerate() {
            let mut j = i;
            let mut f = global;
            for q in 0..self.n {
                let bit = i >> q & 1 == 1;
                match p.pauli_at(q) {
                    'X' => j ^= 1 << q,
                    'Z' if bit => f = mul(f, (-1.0, 0.0)),
                    'Y' => {
                        j ^= 1 << q;
                        f = mul(f, if bit { (0.0, -1.0) } else { (0.0, 1.0) });
                    }
                    _ => {}
                }
            }
            out[j] = mul(a, f);
        }
        out
    }

    fn stabilized_by(&self, p: &PauliOperator) -> bool {
        let img = self.pauli_image(p);
        img.iter().zip(&self.amp).all(|(x, y)| (x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9)
    }
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    (0..7usize, 0..n, 0..n).prop_filter_map("distinct", move |(kind, a, b)| {
        Some(match kind {
            0 => Gate::H(a),
            1 => Gate::S(a),
            2 => Gate::X(a),
            3 => Gate::Y(a),
            4 => Gate::Z(a),
            5 if a != b => Gate::Cnot(a, b),
            6 if a != b => Gate::Cz(a, b),
            _ => return None,
        })
    })
}

fn circuit() -> impl Strategy<Value = (usize, Vec<Gate>)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), proptest::collection::vec(gate(n), 0..40)))
}

fn inverse(g: Gate) -> Vec<Gate> {
    match g {
        Gate::S(q) => vec![Gate::S(q), Gate::S(q), Gate::S(q)],
        other => vec![other],
    }
}

fn p(s: &str) -> PauliOperator {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tableau_agrees_with_state_vector((n, gates) in circuit()) {
        let mut t = StabilizerTableau::new(n);
        let mut d = Dense::new(n);
        for g in &gates {
            t.apply_gate(*g).unwrap();
            d.apply(*g);
            prop_assert!(t.check_invariants());
        }
        let stabs = t.canonical_stabilizers();
        prop_assert_eq!(stabs.len(), n);
        for s in &stabs {
            prop_assert!(d.stabilized_by(s), "{} does not stabilize", s);
            prop_assert_eq!(t.stabilizes(s), Some(true));
            prop_assert_eq!(t.stabilizes(&s.negated()), Some(false));
        }
    }

    #[test]
    fn gate_then_inverse_restores_state((n, gates) in circuit(), tail in proptest::collection::vec(0usize..7, 1..10)) {
        let mut t = StabilizerTableau::new(n);
        for g in &gates {
            t.apply_gate(*g).unwrap();
        }
        let before = t.canonical_stabilizers();
        let extra: Vec<Gate> = tail
            .iter()
            .enumerate()
            .map(|(i, k)| match k % 4 {
                0 => Gate::H(i % n),
                1 => Gate::S(i % n),
                2 => Gate::Cnot(i % n, (i + 1) % n),
                _ => Gate::Cz(i % n, (i + 1) % n),
            })
            .collect();
        for g in &extra {
            t.apply_gate(*g).unwrap();
        }
        for g in extra.iter().rev() {
            for h in inverse(*g) {
                t.apply_gate(h).unwrap();
            }
        }
        prop_assert_eq!(t.canonical_stabilizers(), before);
    }

    #[test]
    fn measurement_respects_stabilizer_sign((n, gates) in circuit(), q in 0usize..5, x in any::<bool>(), seed in any::<u64>()) {
        let q = q % n;
        let mut t = StabilizerTableau::new(n);
        for g in &gates {
            t.apply_gate(*g).unwrap();
        }
        let basis = if x { Basis::X } else { Basis::Z };
        let op = PauliOperator::single(n, q, basis.letter());
        let sign = t.stabilizes(&op);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = t.measure(q, basis, OutcomePolicy::Random(&mut rng)).unwrap();
        prop_assert!(t.check_invariants());
        match sign {
            Some(s) => {
                prop_assert!(m.deterministic);
                prop_assert_eq!(m.outcome, !s);
            }
            None => prop_assert!(!m.deterministic),
        }
        // Post-measurement state carries the observed sign.
        prop_assert_eq!(t.stabilizes(&op), Some(!m.outcome));
    }

    #[test]
    fn apply_pauli_matches_state_vector((n, gates) in circuit(), letters in proptest::collection::vec(0usize..4, 5)) {
        let mut t = StabilizerTableau::new(n);
        let mut d = Dense::new(n);
        for g in &gates {
            t.apply_gate(*g).unwrap();
            d.apply(*g);
        }
        let s: String = letters[..n].iter().map(|&i| ['I', 'X', 'Y', 'Z'][i]).collect();
        let e = p(&s);
        t.apply_pauli(&e).unwrap();
        d.amp = d.pauli_image(&e);
        for s in t.canonical_stabilizers() {
            prop_assert!(d.stabilized_by(&s));
        }
    }
}

#[test]
fn encoded_states_satisfy_code_stabilizers() {
    for code in [fifteen::triorthogonal().base, fifteen::symmetric()] {
        for label in [LogicalLabel::Zero, LogicalLabel::One, LogicalLabel::Plus, LogicalLabel::Minus] {
            let t = encode_logical(&code, &[label]).unwrap();
            assert!(t.check_invariants());
            for r in code.hx.rows() {
                assert_eq!(t.stabilizes(&PauliOperator::of_type(Basis::X, r)), Some(true));
            }
            for r in code.hz.rows() {
                assert_eq!(t.stabilizes(&PauliOperator::of_type(Basis::Z, r)), Some(true));
            }
            let (basis, negative) = label.operator();
            let logical = PauliOperator::of_type(basis, code.logicals(basis).row(0));
            assert_eq!(t.stabilizes(&logical), Some(!negative));
            let other = basis.other();
            assert_eq!(t.stabilizes(&PauliOperator::of_type(other, code.logicals(other).row(0))), None);
        }
    }
}

#[test]
fn z_measurement_of_plus_lands_in_c1() {
    let qt = fifteen::triorthogonal().base;
    let c1 = qt.c1();
    for seed in 0..20 {
        let mut t = encode_logical(&qt, &[LogicalLabel::Plus]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut word = tricss::gf2::BitVector::zeros(15);
        for q in 0..15 {
            word.set(q, t.measure(q, Basis::Z, OutcomePolicy::Random(&mut rng)).unwrap().outcome);
        }
        assert!(c1.in_row_space(&word));
    }
}

#[test]
fn readout_corrects_single_flips() {
    let qt = fifteen::triorthogonal().base;
    let decoder = build_decoder(&qt, Basis::X).unwrap();
    for label in [LogicalLabel::Zero, LogicalLabel::One] {
        for q in 0..15 {
            let mut t = encode_logical(&qt, &[label]).unwrap();
            t.apply_pauli(&PauliOperator::single(15, q, 'X')).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
            let mut word = tricss::gf2::BitVector::zeros(15);
            for i in 0..15 {
                word.set(i, t.measure(i, Basis::Z, OutcomePolicy::Random(&mut rng)).unwrap().outcome);
            }
            let r = logical_readout(&word, &qt, Basis::Z, &decoder).unwrap();
            assert_eq!(r.logical.get(0), label == LogicalLabel::One, "label {label:?} flip {q}");
            assert_eq!(r.correction.weight(), 1);
        }
    }
}

#[test]
fn reduced_state_of_product_and_entangled_registers() {
    let mut t = StabilizerTableau::new(3);
    t.apply_gate(Gate::H(0)).unwrap();
    t.apply_gate(Gate::X(2)).unwrap();
    let r = t.reduced_state(0, 1).unwrap();
    assert_eq!(r.stabilizes(&p("X")), Some(true));
    let r = t.reduced_state(2, 1).unwrap();
    assert_eq!(r.stabilizes(&p("Z")), Some(false));
    t.apply_gate(Gate::Cnot(0, 1)).unwrap();
    assert!(t.reduced_state(0, 1).is_none());
    let r = t.reduced_state(0, 2).unwrap();
    assert_eq!(r.stabilizes(&p("XX")), Some(true));
}

#[test]
fn invalid_generator_sets_are_rejected() {
    assert_eq!(
        StabilizerTableau::from_stabilizers(&[p("X"), p("Z")]).err(),
        Some(SimError::InvalidGenerators)
    );
    assert_eq!(StabilizerTableau::from_stabilizers(&[p("XX"), p("XX")]).err(), Some(SimError::InvalidGenerators));
    assert!(StabilizerTableau::from_stabilizers(&[p("XX"), p("-ZZ")]).is_ok());
    assert!(matches!("XQ".parse::<PauliOperator>(), Err(SimError::PauliParse(_))));
}
