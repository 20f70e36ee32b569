//! Stabilizer tableau simulation in the destabilizer form of Aaronson and
//! Gottesman. Rows `0..n` are destabilizers, rows `n..2n` stabilizers.
//! A row with bits `(x, z)` denotes the Hermitian Pauli `E(x, z)` (so
//! `x = z = 1` is `Y`) times the sign `(-1)^r`.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::Serialize;
use thiserror::Error;

use crate::css::CssCode;
use crate::decoder::{DecodeError, LookupDecoder};
use crate::gf2::{BitMatrix, BitVector};
use crate::Basis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("invalid logical label {0:?}; expected one of 0, 1, +, -")]
    InvalidLabel(String),
    #[error("expected {expected} logical labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("two-qubit gate on a single qubit {0}")]
    RepeatedQubit(usize),
    #[error("cannot force outcome {forced}: measurement is deterministic with outcome {actual}")]
    ForcedContradiction { forced: bool, actual: bool },
    #[error("operator length {found} does not match {expected} qubits")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generators are dependent, anticommuting or non-Hermitian")]
    InvalidGenerators,
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("cannot parse Pauli string {0:?}")]
    PauliParse(String),
}

/// Logical basis-state labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LogicalLabel {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl LogicalLabel {
    pub const ALL: [LogicalLabel; 4] =
        [LogicalLabel::Zero, LogicalLabel::One, LogicalLabel::Plus, LogicalLabel::Minus];

    /// Basis of the stabilizing logical operator and whether its sign is negative.
    pub fn operator(self) -> (Basis, bool) {
        match self {
            LogicalLabel::Zero => (Basis::Z, false),
            LogicalLabel::One => (Basis::Z, true),
            LogicalLabel::Plus => (Basis::X, false),
            LogicalLabel::Minus => (Basis::X, true),
        }
    }

    pub fn from_operator(basis: Basis, negative: bool) -> Self {
        match (basis, negative) {
            (Basis::Z, false) => LogicalLabel::Zero,
            (Basis::Z, true) => LogicalLabel::One,
            (Basis::X, false) => LogicalLabel::Plus,
            (Basis::X, true) => LogicalLabel::Minus,
        }
    }

    pub fn hadamard(self) -> Self {
        let (b, neg) = self.operator();
        Self::from_operator(b.other(), neg)
    }

    pub fn symbol(self) -> char {
        match self {
            LogicalLabel::Zero => '0',
            LogicalLabel::One => '1',
            LogicalLabel::Plus => '+',
            LogicalLabel::Minus => '-',
        }
    }
}

impl FromStr for LogicalLabel {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(LogicalLabel::Zero),
            "1" => Ok(LogicalLabel::One),
            "+" => Ok(LogicalLabel::Plus),
            "-" | "−" => Ok(LogicalLabel::Minus),
            _ => Err(SimError::InvalidLabel(s.to_string())),
        }
    }
}

impl fmt::Display for LogicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Parse a label string with one character per logical qubit.
pub fn parse_labels(s: &str) -> Result<Vec<LogicalLabel>, SimError> {
    s.chars().map(|c| c.to_string().parse()).collect()
}

/// `i^phase · E(a, b)`; `E(a, b)` is the Hermitian Pauli with `Y` where both bits are set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    pub a: BitVector,
    pub b: BitVector,
    /// Exponent of `i`, in `0..4`.
    pub phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self { a: BitVector::zeros(n), b: BitVector::zeros(n), phase: 0 }
    }

    pub fn new(a: BitVector, b: BitVector, phase: u8) -> Self {
        assert_eq!(a.len(), b.len());
        Self { a, b, phase: phase % 4 }
    }

    /// Single-type operator: `X^v` or `Z^v`.
    pub fn of_type(basis: Basis, v: &BitVector) -> Self {
        let zero = BitVector::zeros(v.len());
        match basis {
            Basis::X => Self::new(v.clone(), zero, 0),
            Basis::Z => Self::new(zero, v.clone(), 0),
        }
    }

    pub fn single(n: usize, qubit: usize, pauli: char) -> Self {
        let mut p = Self::identity(n);
        match pauli {
            'X' => p.a.set(qubit, true),
            'Z' => p.b.set(qubit, true),
            'Y' => {
                p.a.set(qubit, true);
                p.b.set(qubit, true);
            }
            _ => {}
        }
        p
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.a.or(&self.b).weight()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    pub fn negated(&self) -> Self {
        Self { a: self.a.clone(), b: self.b.clone(), phase: (self.phase + 2) % 4 }
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        self.a.dot(&other.b) == self.b.dot(&other.a)
    }

    /// `self · other`.
    pub fn compose(&self, other: &PauliOperator) -> PauliOperator {
        let g = phase_exponent(self.a.words(), self.b.words(), other.a.words(), other.b.words());
        PauliOperator {
            a: self.a.xor(&other.a),
            b: self.b.xor(&other.b),
            phase: ((self.phase as i64 + other.phase as i64 + g).rem_euclid(4)) as u8,
        }
    }

    /// Embed into `n` qubits starting at `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> PauliOperator {
        let mut out = PauliOperator::identity(n);
        out.phase = self.phase;
        for i in self.a.iter_ones() {
            out.a.set(offset + i, true);
        }
        for i in self.b.iter_ones() {
            out.b.set(offset + i, true);
        }
        out
    }

    pub fn restrict(&self, offset: usize, len: usize) -> PauliOperator {
        PauliOperator {
            a: self.a.slice(offset, len),
            b: self.b.slice(offset, len),
            phase: self.phase,
        }
    }

    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            a: self.a.concat(&other.a),
            b: self.b.concat(&other.b),
            phase: (self.phase + other.phase) % 4,
        }
    }

    pub fn pauli_at(&self, q: usize) -> char {
        match (self.a.get(q), self.b.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    /// Letters only, no sign.
    pub fn letters(&self) -> String {
        (0..self.len()).map(|q| self.pauli_at(q)).collect()
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{sign}{}", self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = SimError;

    /// Accepts an optional sign prefix (`+`, `-`, `+i`, `-i`, `i`) followed by `IXYZ` letters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SimError::PauliParse(s.to_string());
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else {
            (0, s)
        };
        let n = rest.chars().count();
        if n == 0 {
            return Err(err());
        }
        let mut p = PauliOperator::identity(n);
        p.phase = phase;
        for (q, c) in rest.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'I' | '_' => {}
                'X' => p.a.set(q, true),
                'Z' => p.b.set(q, true),
                'Y' => {
                    p.a.set(q, true);
                    p.b.set(q, true);
                }
                _ => return Err(err()),
            }
        }
        Ok(p)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exponent of `i` picked up by `E(x1,z1)·E(x2,z2) = i^g E(x1^x2, z1^z2)`.
#[inline]
fn phase_exponent(x1: &[u64], z1: &[u64], x2: &[u64], z2: &[u64]) -> i64 {
    let mut plus = 0i64;
    let mut minus = 0i64;
    for w in 0..x1.len() {
        let (a, b, c, d) = (x1[w], z1[w], x2[w], z2[w]);
        let p = (a & b & !c & d) | (a & !b & c & d) | (!a & b & c & !d);
        let m = (a & b & c & !d) | (a & !b & !c & d) | (!a & b & c & d);
        plus += p.count_ones() as i64;
        minus += m.count_ones() as i64;
    }
    plus - minus
}

/// Gates supported by [`StabilizerTableau::apply_gate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) => vec![a, b],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot(..) | Gate::Cz(..))
    }
}

/// How to choose the outcome of a random measurement.
pub enum OutcomePolicy<'a> {
    Random(&'a mut dyn RngCore),
    Forced(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    pub outcome: bool,
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurementEntry {
    pub label: String,
    /// Qubit index within the measured block, or `None` for logical/operator measurements.
    pub qubit: Option<usize>,
    pub basis: Basis,
    pub outcome: bool,
    pub deterministic: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub entries: Vec<MeasurementEntry>,
}

impl MeasurementRecord {
    pub fn push(&mut self, entry: MeasurementEntry) {
        self.entries.push(entry);
    }

    /// Outcomes of every entry with `label`, in recorded order.
    pub fn outcomes(&self, label: &str) -> BitVector {
        let bits: Vec<bool> =
            self.entries.iter().filter(|e| e.label == label).map(|e| e.outcome).collect();
        BitVector::from_bools(&bits)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.entries.iter().any(|e| e.label == label)
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Row {
    x: Vec<u64>,
    z: Vec<u64>,
    r: bool,
}

impl Row {
    fn zeros(words: usize) -> Self {
        Row { x: vec![0; words], z: vec![0; words], r: false }
    }

    fn from_pauli(p: &PauliOperator) -> Self {
        Row { x: p.a.words().to_vec(), z: p.b.words().to_vec(), r: p.phase == 2 }
    }

    fn to_pauli(&self, n: usize) -> PauliOperator {
        let mut a = BitVector::zeros(n);
        let mut b = BitVector::zeros(n);
        for q in 0..n {
            let (w, m) = (q / 64, 1u64 << (q % 64));
            a.set(q, self.x[w] & m != 0);
            b.set(q, self.z[w] & m != 0);
        }
        PauliOperator { a, b, phase: if self.r { 2 } else { 0 } }
    }

    fn anticommutes(&self, other: &Row) -> bool {
        let mut acc = 0u32;
        for w in 0..self.x.len() {
            acc ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones();
        }
        acc & 1 == 1
    }

    /// `self ← other · self`, tracking the sign.
    fn multiply_by(&mut self, other: &Row) {
        let g = phase_exponent(&other.x, &other.z, &self.x, &self.z);
        let total = 2 * (self.r as i64 + other.r as i64) + g;
        self.r = total.rem_euclid(4) == 2;
        for w in 0..self.x.len() {
            self.x[w] ^= other.x[w];
            self.z[w] ^= other.z[w];
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    words: usize,
    rows: Vec<Row>,
}

impl StabilizerTableau {
    /// `|0…0⟩`.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..2 * n {
            let mut r = Row::zeros(words);
            let q = i % n;
            if i < n {
                r.x[q / 64] |= 1 << (q % 64);
            } else {
                r.z[q / 64] |= 1 << (q % 64);
            }
            rows.push(r);
        }
        Self { n, words, rows }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// State stabilized by the given `n` independent, commuting, Hermitian generators.
    pub fn from_stabilizers(gens: &[PauliOperator]) -> Result<Self, SimError> {
        let n = gens.first().map_or(0, |g| g.len());
        if gens.len() != n || gens.iter().any(|g| g.len() != n || !g.is_hermitian()) {
            return Err(SimError::InvalidGenerators);
        }
        for i in 0..n {
            for j in i + 1..n {
                if !gens[i].commutes_with(&gens[j]) {
                    return Err(SimError::InvalidGenerators);
                }
            }
        }
        // Destabilizer d_i solves [s_j, d_i] = δ_ij; rows of the system are (z_j | x_j).
        let sys_rows: Vec<BitVector> = gens.iter().map(|g| g.b.concat(&g.a)).collect();
        let sys = BitMatrix::from_rows(2 * n, sys_rows).map_err(|_| SimError::InvalidGenerators)?;
        if sys.rank() != n {
            return Err(SimError::InvalidGenerators);
        }
        let mut destabs: Vec<PauliOperator> = Vec::with_capacity(n);
        for i in 0..n {
            let e = BitVector::from_indices(n, &[i]);
            let v = sys.solve(&e).ok_or(SimError::InvalidGenerators)?;
            destabs.push(PauliOperator::new(v.slice(0, n), v.slice(n, n), 0));
        }
        for i in 0..n {
            for j in 0..i {
                if !destabs[i].commutes_with(&destabs[j]) {
                    let fixed = PauliOperator::new(
                        destabs[i].a.xor(&gens[j].a),
                        destabs[i].b.xor(&gens[j].b),
                        0,
                    );
                    destabs[i] = fixed;
                }
            }
        }
        let words = n.div_ceil(64).max(1);
        let mut rows = Vec::with_capacity(2 * n);
        for d in &destabs {
            let mut r = Row::from_pauli(d);
            r.r = false;
            rows.push(pad(r, words));
        }
        for g in gens {
            rows.push(pad(Row::from_pauli(g), words));
        }
        Ok(Self { n, words, rows })
    }

    pub fn stabilizers(&self) -> Vec<PauliOperator> {
        self.rows[self.n..].iter().map(|r| r.to_pauli(self.n)).collect()
    }

    pub fn destabilizers(&self) -> Vec<PauliOperator> {
        self.rows[..self.n].iter().map(|r| r.to_pauli(self.n)).collect()
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &StabilizerTableau) -> StabilizerTableau {
        let n = self.n + other.n;
        let words = n.div_ceil(64).max(1);
        let lift = |p: PauliOperator, offset: usize| pad(Row::from_pauli(&p.embed(n, offset)), words);
        let mut rows = Vec::with_capacity(2 * n);
        for p in self.destabilizers() {
            rows.push(lift(p, 0));
        }
        for p in other.destabilizers() {
            rows.push(lift(p, self.n));
        }
        for p in self.stabilizers() {
            rows.push(lift(p, 0));
        }
        for p in other.stabilizers() {
            rows.push(lift(p, self.n));
        }
        StabilizerTableau { n, words, rows }
    }

    fn check(&self, q: usize) -> Result<(), SimError> {
        if q >= self.n {
            return Err(SimError::IndexOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: Gate) -> Result<(), SimError> {
        for q in gate.qubits() {
            self.check(q)?;
        }
        match gate {
            Gate::H(q) => self.h(q),
            Gate::S(q) => self.s(q),
            Gate::X(q) => self.pauli_flip(q, false, true),
            Gate::Z(q) => self.pauli_flip(q, true, false),
            Gate::Y(q) => self.pauli_flip(q, true, true),
            Gate::Cnot(c, t) => {
                if c == t {
                    return Err(SimError::RepeatedQubit(c));
                }
                self.cnot(c, t)
            }
            Gate::Cz(a, b) => {
                if a == b {
                    return Err(SimError::RepeatedQubit(a));
                }
                self.cz(a, b)
            }
        }
        Ok(())
    }

    fn h(&mut self, q: usize) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        for row in &mut self.rows {
            let x = row.x[w] & m;
            let z = row.z[w] & m;
            if x != 0 && z != 0 {
                row.r = !row.r;
            }
            row.x[w] = (row.x[w] & !m) | z;
            row.z[w] = (row.z[w] & !m) | x;
        }
    }

    fn s(&mut self, q: usize) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        for row in &mut self.rows {
            let x = row.x[w] & m;
            if x != 0 && row.z[w] & m != 0 {
                row.r = !row.r;
            }
            row.z[w] ^= x;
        }
    }

    /// Conjugation by a Pauli: flip the sign of rows with an X (resp. Z)
    /// component on `q` when `flip_on_x` (resp. `flip_on_z`).
    fn pauli_flip(&mut self, q: usize, flip_on_x: bool, flip_on_z: bool) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        for row in &mut self.rows {
            let x = row.x[w] & m != 0;
            let z = row.z[w] & m != 0;
            if (flip_on_x && x) ^ (flip_on_z && z) {
                row.r = !row.r;
            }
        }
    }

    fn cnot(&mut self, c: usize, t: usize) {
        let (wc, mc) = (c / 64, 1u64 << (c % 64));
        let (wt, mt) = (t / 64, 1u64 << (t % 64));
        for row in &mut self.rows {
            let xc = row.x[wc] & mc != 0;
            let zc = row.z[wc] & mc != 0;
            let xt = row.x[wt] & mt != 0;
            let zt = row.z[wt] & mt != 0;
            if xc && zt && (xt == zc) {
                row.r = !row.r;
            }
            if xc {
                row.x[wt] ^= mt;
            }
            if zt {
                row.z[wc] ^= mc;
            }
        }
    }

    fn cz(&mut self, a: usize, b: usize) {
        let (wa, ma) = (a / 64, 1u64 << (a % 64));
        let (wb, mb) = (b / 64, 1u64 << (b % 64));
        for row in &mut self.rows {
            let xa = row.x[wa] & ma != 0;
            let za = row.z[wa] & ma != 0;
            let xb = row.x[wb] & mb != 0;
            let zb = row.z[wb] & mb != 0;
            if xa && xb && (za != zb) {
                row.r = !row.r;
            }
            if xb {
                row.z[wa] ^= ma;
            }
            if xa {
                row.z[wb] ^= mb;
            }
        }
    }

    /// Conjugate the state by a Pauli operator (error injection or correction).
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<(), SimError> {
        if p.len() != self.n {
            return Err(SimError::LengthMismatch { expected: self.n, found: p.len() });
        }
        let pr = pad(Row::from_pauli(p), self.words);
        for row in &mut self.rows {
            if row.anticommutes(&pr) {
                row.r = !row.r;
            }
        }
        Ok(())
    }

    /// Measure qubit `q` in the given basis.
    pub fn measure(
        &mut self,
        q: usize,
        basis: Basis,
        policy: OutcomePolicy<'_>,
    ) -> Result<Measurement, SimError> {
        self.check(q)?;
        let p = PauliOperator::single(self.n, q, basis.letter());
        self.measure_pauli(&p, policy)
    }

    /// Measure a Hermitian Pauli operator. Outcome `true` means eigenvalue −1.
    pub fn measure_pauli(
        &mut self,
        p: &PauliOperator,
        policy: OutcomePolicy<'_>,
    ) -> Result<Measurement, SimError> {
        if p.len() != self.n {
            return Err(SimError::LengthMismatch { expected: self.n, found: p.len() });
        }
        assert!(p.is_hermitian(), "measured operator must be Hermitian");
        let n = self.n;
        let pr = pad(Row::from_pauli(p), self.words);
        let anti = (n..2 * n).find(|&i| self.rows[i].anticommutes(&pr));
        match anti {
            Some(pi) => {
                let outcome = match policy {
                    OutcomePolicy::Random(rng) => rng.next_u32() & 1 == 1,
                    OutcomePolicy::Forced(b) => b,
                };
                let pivot = self.rows[pi].clone();
                for i in 0..2 * n {
                    if i != pi && self.rows[i].anticommutes(&pr) {
                        self.rows[i].multiply_by(&pivot);
                    }
                }
                self.rows[pi - n] = pivot;
                let mut new = pr;
                new.r ^= outcome;
                self.rows[pi] = new;
                Ok(Measurement { outcome, deterministic: false })
            }
            None => {
                let sign = self.group_sign(&pr);
                let outcome = sign ^ pr.r;
                if let OutcomePolicy::Forced(b) = policy {
                    if b != outcome {
                        return Err(SimError::ForcedContradiction { forced: b, actual: outcome });
                    }
                }
                Ok(Measurement { outcome, deterministic: true })
            }
        }
    }

    /// Sign of the stabilizer-group element equal to `±pr` (which must commute
    /// with every stabilizer).
    fn group_sign(&self, pr: &Row) -> bool {
        let n = self.n;
        let mut acc = Row::zeros(self.words);
        for i in 0..n {
            if self.rows[i].anticommutes(pr) {
                acc.multiply_by(&self.rows[i + n]);
            }
        }
        acc.r
    }

    /// `Some(true)` if `p` stabilizes the state, `Some(false)` if `-p` does,
    /// `None` if neither is in the stabilizer group.
    pub fn stabilizes(&self, p: &PauliOperator) -> Option<bool> {
        if p.len() != self.n || !p.is_hermitian() {
            return None;
        }
        let pr = pad(Row::from_pauli(p), self.words);
        if (self.n..2 * self.n).any(|i| self.rows[i].anticommutes(&pr)) {
            return None;
        }
        Some(self.group_sign(&pr) == pr.r)
    }

    /// Reduced echelon form of the stabilizer group over the column order
    /// `x_0..x_{n-1}, z_0..z_{n-1}`; two states are equal iff these agree.
    pub fn canonical_stabilizers(&self) -> Vec<PauliOperator> {
        let n = self.n;
        let mut rows: Vec<Row> = self.rows[n..].to_vec();
        let mut rank = 0;
        for col in 0..2 * n {
            let (q, is_z) = (col % n, col >= n);
            let (w, m) = (q / 64, 1u64 << (q % 64));
            let has = |r: &Row| if is_z { r.z[w] & m != 0 } else { r.x[w] & m != 0 };
            let Some(found) = (rank..n).find(|&i| has(&rows[i])) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && has(row) {
                    row.multiply_by(&pivot);
                }
            }
            rank += 1;
        }
        rows.iter().map(|r| r.to_pauli(n)).collect()
    }

    /// State of qubits `offset..offset+len` if it is pure and unentangled with
    /// the rest of the register, `None` otherwise.
    pub fn reduced_state(&self, offset: usize, len: usize) -> Option<StabilizerTableau> {
        let n = self.n;
        if offset + len > n {
            return None;
        }
        let mut rows: Vec<Row> = self.rows[n..].to_vec();
        let mut rank = 0;
        let outside = (0..n).filter(|q| *q < offset || *q >= offset + len);
        for q in outside {
            let (w, m) = (q / 64, 1u64 << (q % 64));
            for is_z in [false, true] {
                let has = |r: &Row| if is_z { r.z[w] & m != 0 } else { r.x[w] & m != 0 };
                let Some(found) = (rank..n).find(|&i| has(&rows[i])) else {
                    continue;
                };
                rows.swap(rank, found);
                let pivot = rows[rank].clone();
                for row in rows.iter_mut().skip(rank + 1) {
                    if has(row) {
                        row.multiply_by(&pivot);
                    }
                }
                rank += 1;
            }
        }
        if n - rank != len {
            return None;
        }
        let gens: Vec<PauliOperator> =
            rows[rank..].iter().map(|r| r.to_pauli(n).restrict(offset, len)).collect();
        if len == 0 {
            return Some(StabilizerTableau::new(0));
        }
        StabilizerTableau::from_stabilizers(&gens).ok()
    }

    /// One generator per line, e.g. `+XIZ`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for p in self.stabilizers() {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }

    /// Symplectic invariants: stabilizers commute, destabilizer i pairs with stabilizer i only.
    pub fn check_invariants(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let s = &self.rows[n + i];
                if j != i && s.anticommutes(&self.rows[n + j]) {
                    return false;
                }
                if s.anticommutes(&self.rows[j]) != (i == j) {
                    return false;
                }
                if j != i && self.rows[i].anticommutes(&self.rows[j]) {
                    return false;
                }
            }
        }
        true
    }
}

fn pad(mut r: Row, words: usize) -> Row {
    r.x.resize(words, 0);
    r.z.resize(words, 0);
    r
}

impl fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerTableau({} qubits)\n{}", self.n, self.dump())
    }
}

/// Generators of the code state with the given logical labels.
pub fn logical_generators(
    code: &CssCode,
    labels: &[LogicalLabel],
) -> Result<Vec<PauliOperator>, SimError> {
    if labels.len() != code.k {
        return Err(SimError::LabelCount { expected: code.k, found: labels.len() });
    }
    let mut gens = Vec::with_capacity(code.n);
    for r in code.hx.rows() {
        gens.push(PauliOperator::of_type(Basis::X, r));
    }
    for r in code.hz.rows() {
        gens.push(PauliOperator::of_type(Basis::Z, r));
    }
    for (i, label) in labels.iter().enumerate() {
        let (basis, negative) = label.operator();
        let p = PauliOperator::of_type(basis, code.logicals(basis).row(i));
        gens.push(if negative { p.negated() } else { p });
    }
    Ok(gens)
}

pub fn encode_logical(
    code: &CssCode,
    labels: &[LogicalLabel],
) -> Result<StabilizerTableau, SimError> {
    StabilizerTableau::from_stabilizers(&logical_generators(code, labels)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogicalReadout {
    pub logical: BitVector,
    pub syndrome: BitVector,
    pub correction: BitVector,
}

/// Decode a full-block measurement in `basis` to logical bits.
///
/// An X-basis word is checked against `hx` (Z errors flip it) and read out
/// with the X logicals; a Z-basis word against `hz` with the Z logicals.
pub fn logical_readout(
    outcomes: &BitVector,
    code: &CssCode,
    basis: Basis,
    decoder: &LookupDecoder,
) -> Result<LogicalReadout, SimError> {
    let syndrome = code.checks(basis).syndrome(outcomes);
    let correction = decoder.decode(&syndrome)?;
    let corrected = outcomes.xor(&correction);
    let logical = code.logicals(basis).syndrome(&corrected);
    Ok(LogicalReadout { logical, syndrome, correction })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_on_zero() {
        let mut t = StabilizerTableau::new(1);
        t.apply_gate(Gate::H(0)).unwrap();
        assert_eq!(t.stabilizes(&p("X")), Some(true));
    }

    #[test]
    fn cz_on_plus_plus() {
        let mut t = StabilizerTableau::new(2);
        t.apply_gate(Gate::H(0)).unwrap();
        t.apply_gate(Gate::H(1)).unwrap();
        t.apply_gate(Gate::Cz(0, 1)).unwrap();
        assert_eq!(t.stabilizes(&p("XZ")), Some(true));
        assert_eq!(t.stabilizes(&p("ZX")), Some(true));
    }

    #[test]
    fn cz_matches_conjugated_cnot() {
        let mut a = StabilizerTableau::new(3);
        let mut b = StabilizerTableau::new(3);
        for t in [&mut a, &mut b] {
            t.apply_gate(Gate::H(0)).unwrap();
            t.apply_gate(Gate::S(0)).unwrap();
            t.apply_gate(Gate::H(1)).unwrap();
            t.apply_gate(Gate::Cnot(1, 2)).unwrap();
        }
        a.apply_gate(Gate::Cz(0, 1)).unwrap();
        b.apply_gate(Gate::H(1)).unwrap();
        b.apply_gate(Gate::Cnot(0, 1)).unwrap();
        b.apply_gate(Gate::H(1)).unwrap();
        assert_eq!(a.canonical_stabilizers(), b.canonical_stabilizers());
    }

    #[test]
    fn y_gate_flips_signs() {
        let mut t = StabilizerTableau::new(1);
        t.apply_gate(Gate::Y(0)).unwrap();
        assert_eq!(t.stabilizes(&p("Z")), Some(false));
        t.apply_gate(Gate::H(0)).unwrap();
        assert_eq!(t.stabilizes(&p("X")), Some(false));
        t.apply_gate(Gate::S(0)).unwrap();
        assert_eq!(t.stabilizes(&p("Y")), Some(false));
    }

    #[test]
    fn deterministic_measurement() {
        let mut t = StabilizerTableau::new(1);
        let m = t.measure(0, Basis::Z, OutcomePolicy::Forced(false)).unwrap();
        assert_eq!(m, Measurement { outcome: false, deterministic: true });
        assert_eq!(
            t.measure(0, Basis::Z, OutcomePolicy::Forced(true)),
            Err(SimError::ForcedContradiction { forced: true, actual: false })
        );
    }

    #[test]
    fn random_measurement_branches() {
        for forced in [false, true] {
            let mut t = StabilizerTableau::new(1);
            let m = t.measure(0, Basis::X, OutcomePolicy::Forced(forced)).unwrap();
            assert!(!m.deterministic);
            assert_eq!(t.stabilizes(&p("X")), Some(!forced));
            assert!(t.check_invariants());
        }
    }

    #[test]
    fn bell_state_correlations() {
        let mut t = StabilizerTableau::new(2);
        t.apply_gate(Gate::H(0)).unwrap();
        t.apply_gate(Gate::Cnot(0, 1)).unwrap();
        assert_eq!(t.stabilizes(&p("XX")), Some(true));
        assert_eq!(t.stabilizes(&p("YY")), Some(false));
        assert_eq!(t.stabilizes(&p("ZI")), None);
        let m = t.measure(0, Basis::Z, OutcomePolicy::Forced(true)).unwrap();
        assert!(m.outcome);
        assert_eq!(t.stabilizes(&p("IZ")), Some(false));
    }

    #[test]
    fn pauli_composition_phases() {
        assert_eq!(p("X").compose(&p("Z")), p("-iY"));
        assert_eq!(p("Z").compose(&p("X")), p("iY"));
        assert_eq!(p("Y").compose(&p("Y")), p("I"));
        assert_eq!(p("XX").compose(&p("ZZ")), p("-YY"));
    }

    #[test]
    fn labels_parse() {
        assert_eq!(parse_labels("0+-1").unwrap().len(), 4);
        assert!(matches!("2".parse::<LogicalLabel>(), Err(SimError::InvalidLabel(_))));
        assert_eq!(LogicalLabel::Plus.hadamard(), LogicalLabel::Zero);
        assert_eq!(LogicalLabel::One.hadamard(), LogicalLabel::Minus);
    }

    #[test]
    fn trivial_code_zero() {
        let code = crate::css::build_triorthogonal_code(&BitMatrix::from_strs(&["1"])).unwrap();
        let t = encode_logical(&code.base, &[LogicalLabel::Zero]).unwrap();
        assert_eq!(t.canonical_stabilizers(), StabilizerTableau::new(1).canonical_stabilizers());
    }

    #[test]
    fn index_out_of_range() {
        let mut t = StabilizerTableau::new(2);
        assert_eq!(t.apply_gate(Gate::H(2)), Err(SimError::IndexOutOfRange { index: 2, n: 2 }));
        assert_eq!(t.apply_gate(Gate::Cnot(1, 1)), Err(SimError::RepeatedQubit(1)));
    }
}
