//! Transversal CNOT and CZ predicates for pairs of CSS codes.
//!
//! For a code `a = CSS(C1, C2)` and `b = CSS(C3, C4)`: `C2^⊥ = span(hx_a)`,
//! `C1^⊥ = span(hz_a)`, `C4^⊥ = span(hx_b)`, `C3^⊥ = span(hz_b)`. Logical
//! bases are identified index-wise.

use serde::Serialize;
use thiserror::Error;

use crate::css::CssCode;
use crate::gf2::{for_each_span_element, BitMatrix, BitVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransversalError {
    #[error("codes differ in size: [[{0},{1}]] vs [[{2},{3}]]")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("exhaustive CZ oracle limited to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// Size limit of [`check_cz_exhaustive`].
pub const EXHAUSTIVE_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub vectors: Vec<BitVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub cnot_forward: bool,
    pub cnot_backward: bool,
    pub cz: bool,
    pub witnesses: Vec<Witness>,
}

fn dims(a: &CssCode, b: &CssCode) -> Result<(), TransversalError> {
    if a.n != b.n || a.k != b.k {
        return Err(TransversalError::DimensionMismatch(a.n, a.k, b.n, b.k));
    }
    Ok(())
}

fn witness(condition: &str, vectors: Vec<BitVector>) -> Option<Witness> {
    (!vectors.is_empty()).then(|| Witness { condition: condition.to_string(), vectors })
}

fn not_in_span(rows: &BitMatrix, space: &BitMatrix) -> Vec<BitVector> {
    let e = space.rref();
    rows.rows().iter().filter(|r| !e.contains(r)).cloned().collect()
}

fn not_orthogonal(rows: &BitMatrix, checks: &BitMatrix) -> Vec<BitVector> {
    rows.rows()
        .iter()
        .filter(|r| checks.rows().iter().any(|c| c.dot(r)))
        .cloned()
        .collect()
}

fn pairing_violations(a: &BitMatrix, b: &BitMatrix) -> Vec<BitVector> {
    let m = a.mul_transpose(b);
    if m == BitMatrix::identity(a.nrows()) {
        Vec::new()
    } else {
        m.rows().to_vec()
    }
}

/// Violations of transversal CNOT with `control` as control.
pub fn cnot_witnesses(
    control: &CssCode,
    target: &CssCode,
) -> Result<Vec<Witness>, TransversalError> {
    dims(control, target)?;
    let mut out = Vec::new();
    out.extend(witness(
        "control X stabilizers outside target X stabilizers",
        not_in_span(&control.hx, &target.hx),
    ));
    out.extend(witness(
        "control logical X not a target code word",
        not_orthogonal(&control.mapping_a, &target.hz),
    ));
    let e = target.hx.rref();
    let mismatched: Vec<BitVector> = control
        .mapping_a
        .rows()
        .iter()
        .zip(target.mapping_a.rows())
        .filter(|(c, t)| !e.contains(&c.xor(t)))
        .map(|(c, _)| c.clone())
        .collect();
    out.extend(witness("control logical X in a different target coset", mismatched));
    Ok(out)
}

pub fn check_cnot(control: &CssCode, target: &CssCode) -> Result<bool, TransversalError> {
    Ok(cnot_witnesses(control, target)?.is_empty())
}

pub fn cz_sufficient_witnesses(
    a: &CssCode,
    b: &CssCode,
) -> Result<Vec<Witness>, TransversalError> {
    dims(a, b)?;
    let mut out = Vec::new();
    out.extend(witness(
        "logical X of a not orthogonal to X stabilizers of b",
        not_orthogonal(&a.mapping_a, &b.hx),
    ));
    out.extend(witness(
        "X stabilizers of a outside Z stabilizers of b",
        not_in_span(&a.hx, &b.hz),
    ));
    out.extend(witness("A·Bᵀ differs from identity", pairing_violations(&a.mapping_a, &b.mapping_a)));
    Ok(out)
}

pub fn check_cz_sufficient(a: &CssCode, b: &CssCode) -> Result<bool, TransversalError> {
    Ok(cz_sufficient_witnesses(a, b)?.is_empty())
}

/// Generator-level check of the bilinear CZ condition: for `x^A` in the
/// logical X basis of `a`, `x^B` of `b`, `y` in `span(hx_a)`, `z` in
/// `span(hx_b)`, the form `x^A·z + y·(x^B + z)` vanishes, and `A·Bᵀ = I`.
pub fn cz_exact_witnesses(a: &CssCode, b: &CssCode) -> Result<Vec<Witness>, TransversalError> {
    dims(a, b)?;
    let mut out = Vec::new();
    out.extend(witness("x^A·z ≠ 0", not_orthogonal(&a.mapping_a, &b.hx)));
    out.extend(witness("y·x^B ≠ 0", not_orthogonal(&a.hx, &b.mapping_a)));
    out.extend(witness("y·z ≠ 0", not_orthogonal(&a.hx, &b.hx)));
    out.extend(witness("A·Bᵀ differs from identity", pairing_violations(&a.mapping_a, &b.mapping_a)));
    Ok(out)
}

pub fn check_cz_exact(a: &CssCode, b: &CssCode) -> Result<bool, TransversalError> {
    Ok(cz_exact_witnesses(a, b)?.is_empty())
}

/// Brute-force oracle: every X-type code word `u` of `a` and `v` of `b`,
/// written as logical coefficients plus stabilizer parts, must satisfy
/// `u·v = coeff(u)·coeff(v)`.
pub fn check_cz_exhaustive(a: &CssCode, b: &CssCode) -> Result<bool, TransversalError> {
    dims(a, b)?;
    if a.n > EXHAUSTIVE_MAX_N {
        return Err(TransversalError::TooLarge { n: a.n, max: EXHAUSTIVE_MAX_N });
    }
    let k = a.k;
    let words = |c: &CssCode| -> Vec<(BitVector, BitVector)> {
        let stab = c.hx.row_basis();
        let mut stab_elems = Vec::new();
        for_each_span_element(&stab, |s| stab_elems.push(s.clone())).expect("n <= 20");
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << k) {
            let coeff = BitVector::from_u64(k, mask);
            let base = c.mapping_a.combine(&coeff);
            for s in &stab_elems {
                out.push((coeff.clone(), base.xor(s)));
            }
        }
        out
    };
    let wa = words(a);
    let wb = words(b);
    Ok(wa.iter().all(|(ca, u)| wb.iter().all(|(cb, v)| u.dot(v) == ca.dot(cb))))
}

/// CNOT both ways and CZ for an ordered pair.
pub fn pair_report(a: &CssCode, b: &CssCode, exact_cz: bool) -> Result<PairReport, TransversalError> {
    let fwd = cnot_witnesses(a, b)?;
    let bwd = cnot_witnesses(b, a)?;
    let cz = if exact_cz { cz_exact_witnesses(a, b)? } else { cz_sufficient_witnesses(a, b)? };
    let mut witnesses = Vec::new();
    let tag = |prefix: &str, ws: &[Witness]| -> Vec<Witness> {
        ws.iter()
            .map(|w| Witness { condition: format!("{prefix}: {}", w.condition), vectors: w.vectors.clone() })
            .collect()
    };
    witnesses.extend(tag("cnot_forward", &fwd));
    witnesses.extend(tag("cnot_backward", &bwd));
    witnesses.extend(tag("cz", &cz));
    Ok(PairReport {
        cnot_forward: fwd.is_empty(),
        cnot_backward: bwd.is_empty(),
        cz: cz.is_empty(),
        witnesses,
    })
}
