//! CSS codes, triorthogonal codes and their symmetric companions.
//!
//! A code `CSS(C1, C2)` stores X-stabilizer generators `hx` spanning `C2^⊥`
//! and Z-stabilizer generators `hz` spanning `C1^⊥`, so `C1 = hz^⊥` and
//! `C2 = hx^⊥`. The mapping matrix `A` holds the X-logical representatives,
//! i.e. a basis of `C1 / C2^⊥`.

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{self, BitMatrix, BitVector, Gf2Error, MAX_ENUM_BITS};
use crate::transversal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CssError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("matrix is not triorthogonal")]
    NotTriorthogonal,
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("n - k = {0} is odd; a symmetric companion needs an even deficiency")]
    OddDeficiency(usize),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("space and subspace have the same span")]
    EmptyQuotient,
    #[error("candidate companion failed its {0} check")]
    CandidateRejected(&'static str),
    #[error("bundle: {0}")]
    Bundle(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CssCode {
    pub n: usize,
    pub k: usize,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub logical_x: BitMatrix,
    pub logical_z: BitMatrix,
    pub mapping_a: BitMatrix,
}

impl CssCode {
    /// Build a code from stabilizer matrices; logical operators are derived
    /// as paired minimum-weight representatives.
    pub fn from_stabilizers(hx: BitMatrix, hz: BitMatrix) -> Result<Self, CssError> {
        let n = hx.ncols();
        if hz.ncols() != n {
            return Err(CssError::InvalidCode("hx and hz widths differ".into()));
        }
        let hx = hx.row_basis();
        let hz = hz.row_basis();
        if !hx.mul_transpose(&hz).is_zero() {
            return Err(CssError::InvalidCode("X and Z stabilizers do not commute".into()));
        }
        let lx = hz.dual_basis().quotient_basis(&hx)?;
        let lz = hx.dual_basis().quotient_basis(&hz)?;
        let (lx, lz) = pair_logicals(&lx, &lz)?;
        let lx = reduce_rows(&lx, &hx)?;
        let lz = reduce_rows(&lz, &hz)?;
        Self::with_logicals(hx, hz, lx, lz)
    }

    /// Build a code with explicit logical operators, validating every invariant.
    pub fn with_logicals(
        hx: BitMatrix,
        hz: BitMatrix,
        logical_x: BitMatrix,
        logical_z: BitMatrix,
    ) -> Result<Self, CssError> {
        let n = hx.ncols();
        let k = logical_x.nrows();
        let code = CssCode {
            n,
            k,
            hx: hx.row_basis(),
            hz: hz.row_basis(),
            mapping_a: logical_x.clone(),
            logical_x,
            logical_z,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn validate(&self) -> Result<(), CssError> {
        let bad = |m: &str| Err(CssError::InvalidCode(m.to_string()));
        let n = self.n;
        for m in [&self.hx, &self.hz, &self.logical_x, &self.logical_z] {
            if m.ncols() != n {
                return bad("matrix widths differ from n");
            }
        }
        if self.logical_z.nrows() != self.k || self.mapping_a.nrows() != self.k {
            return bad("logical operator counts differ");
        }
        if !self.hx.mul_transpose(&self.hz).is_zero() {
            return bad("X and Z stabilizers do not commute");
        }
        if self.hx.rank() + self.hz.rank() + self.k != n {
            return bad("rank(hx) + rank(hz) != n - k");
        }
        if !self.logical_x.mul_transpose(&self.hz).is_zero()
            || !self.logical_z.mul_transpose(&self.hx).is_zero()
        {
            return bad("logical operators do not commute with the stabilizers");
        }
        if self.logical_x.mul_transpose(&self.logical_z) != BitMatrix::identity(self.k) {
            return bad("logical X and Z are not symplectically paired");
        }
        Ok(())
    }

    /// `C1 = hz^⊥`, the span of X-type code words.
    pub fn c1(&self) -> BitMatrix {
        self.hz.dual_basis()
    }

    /// `C2 = hx^⊥`.
    pub fn c2(&self) -> BitMatrix {
        self.hx.dual_basis()
    }

    pub fn is_symmetric(&self) -> bool {
        self.hx.same_row_space(&self.hz)
    }

    /// Check matrix used to read X-basis block measurements (detects Z errors).
    pub fn checks(&self, basis: crate::Basis) -> &BitMatrix {
        match basis {
            crate::Basis::X => &self.hx,
            crate::Basis::Z => &self.hz,
        }
    }

    pub fn logicals(&self, basis: crate::Basis) -> &BitMatrix {
        match basis {
            crate::Basis::X => &self.logical_x,
            crate::Basis::Z => &self.logical_z,
        }
    }
}

/// Rearrange `lz` so that `lx · lzᵀ = I`.
fn pair_logicals(lx: &BitMatrix, lz: &BitMatrix) -> Result<(BitMatrix, BitMatrix), CssError> {
    let k = lx.nrows();
    if lz.nrows() != k {
        return Err(CssError::InvalidCode("logical X and Z counts differ".into()));
    }
    let m = lx.mul_transpose(lz);
    // Solve m · Nᵀ = I column by column; N·lz then pairs with lx.
    let mut n_rows = Vec::with_capacity(k);
    for j in 0..k {
        let e = BitVector::from_indices(k, &[j]);
        let col = m.solve(&e).ok_or_else(|| CssError::InvalidCode("degenerate logicals".into()))?;
        n_rows.push(col);
    }
    let n_mat = BitMatrix::from_rows(k, n_rows)?;
    let rows = n_mat.rows().iter().map(|c| lz.combine(c)).collect();
    Ok((lx.clone(), BitMatrix::from_rows(lx.ncols(), rows)?))
}

/// Replace every row by the lowest (weight, colex) member of `row + span(sub)`.
pub fn reduce_rows(m: &BitMatrix, sub: &BitMatrix) -> Result<BitMatrix, CssError> {
    let rows = m
        .rows()
        .iter()
        .map(|r| sub.min_coset_representative(r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BitMatrix::from_rows(m.ncols(), rows)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriorthogonalCode {
    pub base: CssCode,
    pub g: BitMatrix,
    pub g1: BitMatrix,
    pub g0: BitMatrix,
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub dx: usize,
    pub dz: usize,
}

/// Pairwise and triple overlaps of distinct rows all even.
pub fn is_triorthogonal(g: &BitMatrix) -> bool {
    let rows = g.rows();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            let ab = rows[a].and(&rows[b]);
            if ab.weight() % 2 == 1 {
                return false;
            }
            for c in rows.iter().skip(b + 1) {
                if ab.and(c).weight() % 2 == 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn build_triorthogonal_code(g: &BitMatrix) -> Result<TriorthogonalCode, CssError> {
    if !is_triorthogonal(g) {
        return Err(CssError::NotTriorthogonal);
    }
    let rank = g.rank();
    if rank != g.nrows() {
        return Err(CssError::RankDeficient { rank, rows: g.nrows() });
    }
    let n = g.ncols();
    let mut g1 = BitMatrix::empty(n);
    let mut g0 = BitMatrix::empty(n);
    for r in g.rows() {
        if r.weight() % 2 == 1 {
            g1.push_row(r.clone());
        } else {
            g0.push_row(r.clone());
        }
    }
    let hz = g.dual_basis();
    // g1·g1ᵀ = I, so g1 itself is a valid Z-logical choice before reduction.
    let logical_z = reduce_rows(&g1, &hz)?;
    let base = CssCode::with_logicals(g0.clone(), hz, g1.clone(), logical_z)?;
    let m = g0.nrows();
    Ok(TriorthogonalCode { base, g: g.clone(), g1, g0, m })
}

/// Whether transversal physical X acts as logical X on every logical qubit.
pub fn is_x_transversal(code: &TriorthogonalCode) -> bool {
    let n = code.g.ncols();
    let basis = code.g1.stack(&code.g0);
    let e = basis.rref();
    let ones = BitVector::ones(n);
    if !e.contains(&ones) {
        return false;
    }
    // Coordinates over [g1; g0] via a solve on the transpose.
    let Some(coeffs) = basis.transpose().solve(&ones) else {
        return false;
    };
    (0..code.g1.nrows()).all(|i| coeffs.get(i))
}

/// Symmetric companions `CSS(C, C)` with `C^⊥ = span([g0; B])`.
pub fn generate_symmetric_codes(
    qt: &TriorthogonalCode,
    limit: usize,
) -> Result<Vec<CssCode>, CssError> {
    let n = qt.base.n;
    let k = qt.base.k;
    if (n - k) % 2 == 1 {
        return Err(CssError::OddDeficiency(n - k));
    }
    let r = (n - k - 2 * qt.m) / 2;
    let extensions = gf2::find_self_orthogonal_extensions(&qt.g0, &qt.base.hz, r, limit)?;
    let mut out = Vec::with_capacity(extensions.len());
    for b in extensions {
        let stab = qt.g0.stack(&b);
        let logical = reduce_rows(&qt.g1, &stab)?;
        let code = CssCode::with_logicals(stab.clone(), stab, logical.clone(), logical)?;
        if !transversal::check_cnot(&qt.base, &code).map_err(|e| CssError::InvalidCode(e.to_string()))? {
            return Err(CssError::CandidateRejected("CNOT"));
        }
        for (a, bb) in [(&qt.base, &code), (&code, &qt.base)] {
            if !transversal::check_cz_sufficient(a, bb)
                .map_err(|e| CssError::InvalidCode(e.to_string()))?
            {
                return Err(CssError::CandidateRejected("CZ"));
            }
        }
        out.push(code);
    }
    Ok(out)
}

/// Minimum weight over `span(space) \ span(subspace)`.
pub fn min_coset_weight(space: &BitMatrix, subspace: &BitMatrix) -> Result<usize, CssError> {
    let quotient = space.quotient_basis(subspace)?;
    if quotient.nrows() == 0 {
        return Err(CssError::EmptyQuotient);
    }
    let sub = subspace.row_basis();
    let q = quotient.nrows();
    let bits = q + sub.nrows();
    if bits > MAX_ENUM_BITS {
        return Err(Gf2Error::TooLarge { bits, max: MAX_ENUM_BITS }.into());
    }
    let basis = quotient.stack(&sub);
    let qmask = (1u64 << q) - 1;
    let mut cur = BitVector::zeros(space.ncols());
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << bits) {
        cur.xor_assign(basis.row(i.trailing_zeros() as usize));
        let gray = i ^ (i >> 1);
        if gray & qmask != 0 {
            best = best.min(cur.weight());
        }
    }
    Ok(best)
}

pub fn code_parameters(code: &CssCode) -> Result<CodeParameters, CssError> {
    let dx = min_coset_weight(&code.c1(), &code.hx)?;
    let dz = min_coset_weight(&code.c2(), &code.hz)?;
    Ok(CodeParameters { n: code.n, k: code.k, d: dx.min(dz), dx, dz })
}

/// A code read from the bundle text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeBundle {
    Triorthogonal(TriorthogonalCode),
    Css(CssCode),
}

impl CodeBundle {
    pub fn code(&self) -> &CssCode {
        match self {
            CodeBundle::Triorthogonal(t) => &t.base,
            CodeBundle::Css(c) => c,
        }
    }

    pub fn triorthogonal(&self) -> Option<&TriorthogonalCode> {
        match self {
            CodeBundle::Triorthogonal(t) => Some(t),
            CodeBundle::Css(_) => None,
        }
    }
}

/// Parse `[G]` or `[HX]`/`[HZ]` sections, with optional `[LX]`/`[LZ]`.
/// Text before any section header is read as `[G]`.
pub fn parse_bundle(text: &str) -> Result<CodeBundle, CssError> {
    let mut sections: Vec<(String, Vec<(usize, &str)>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim().to_ascii_uppercase();
            if !matches!(name.as_str(), "G" | "HX" | "HZ" | "LX" | "LZ") {
                return Err(CssError::Bundle(format!("line {}: unknown section [{name}]", i + 1)));
            }
            if sections.iter().any(|(n, _)| *n == name) {
                return Err(CssError::Bundle(format!("line {}: duplicate section [{name}]", i + 1)));
            }
            sections.push((name, Vec::new()));
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if sections.is_empty() {
            sections.push(("G".into(), Vec::new()));
        }
        sections.last_mut().unwrap().1.push((i + 1, raw));
    }
    let take = |name: &str| -> Result<Option<BitMatrix>, CssError> {
        match sections.iter().find(|(n, _)| n == name) {
            None => Ok(None),
            Some((_, lines)) => Ok(Some(BitMatrix::parse_lines(lines.iter().copied())?)),
        }
    };
    let g = take("G")?;
    let hx = take("HX")?;
    let hz = take("HZ")?;
    let lx = take("LX")?;
    let lz = take("LZ")?;
    let apply_overrides = |mut code: CssCode| -> Result<CssCode, CssError> {
        if let Some(lx) = &lx {
            code.logical_x = lx.clone();
            code.mapping_a = lx.clone();
            code.k = lx.nrows();
        }
        if let Some(lz) = &lz {
            code.logical_z = lz.clone();
        }
        code.validate()?;
        Ok(code)
    };
    match (g, hx, hz) {
        (Some(g), None, None) => {
            let mut t = build_triorthogonal_code(&g)?;
            t.base = apply_overrides(t.base)?;
            Ok(CodeBundle::Triorthogonal(t))
        }
        (None, Some(hx), Some(hz)) => {
            let code = match (&lx, &lz) {
                (Some(lx), Some(lz)) => CssCode::with_logicals(hx, hz, lx.clone(), lz.clone())?,
                _ => apply_overrides(CssCode::from_stabilizers(hx, hz)?)?,
            };
            Ok(CodeBundle::Css(code))
        }
        (Some(_), _, _) => Err(CssError::Bundle("[G] cannot be combined with [HX]/[HZ]".into())),
        _ => Err(CssError::Bundle("expected a [G] section or both [HX] and [HZ]".into())),
    }
}

pub fn format_bundle(code: &CssCode) -> String {
    let mut s = String::new();
    for (name, m) in [
        ("HX", &code.hx),
        ("HZ", &code.hz),
        ("LX", &code.logical_x),
        ("LZ", &code.logical_z),
    ] {
        s.push_str(&format!("[{name}]\n"));
        s.push_str(&m.to_text());
    }
    s
}

pub fn format_triorthogonal_bundle(code: &TriorthogonalCode) -> String {
    format!("[G]\n{}", code.g.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fifteen;

    #[test]
    fn toy_triorthogonal_code() {
        let g = BitMatrix::from_strs(&["1000", "0011"]);
        assert!(is_triorthogonal(&g));
        let t = build_triorthogonal_code(&g).unwrap();
        assert_eq!(t.base.k, 1);
        assert_eq!(t.m, 1);
        t.base.validate().unwrap();
    }

    #[test]
    fn rank_deficient_rejected() {
        let g = BitMatrix::from_strs(&["1111", "1111"]);
        assert!(matches!(
            build_triorthogonal_code(&g),
            Err(CssError::RankDeficient { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn trivial_single_qubit_code() {
        let t = build_triorthogonal_code(&BitMatrix::from_strs(&["1"])).unwrap();
        assert!(is_x_transversal(&t));
        assert_eq!(t.base.k, 1);
    }

    #[test]
    fn toy_symmetric_with_empty_extension() {
        // n=4, k=2, m=1 -> r = 0.
        let g = BitMatrix::from_strs(&["1000", "0100", "0011"]);
        assert!(is_triorthogonal(&g));
        let t = build_triorthogonal_code(&g).unwrap();
        assert_eq!((t.base.n, t.base.k, t.m), (4, 2, 1));
        let sym = generate_symmetric_codes(&t, 4).unwrap();
        assert_eq!(sym.len(), 1);
        assert!(sym[0].hx.same_row_space(&t.g0));
        assert!(sym[0].is_symmetric());
    }

    #[test]
    fn repetition_toy_distance() {
        // Three-qubit bit-flip code: Z checks only, logical X = XXX.
        let hz = BitMatrix::from_strs(&["110", "011"]);
        let code = CssCode::from_stabilizers(BitMatrix::empty(3), hz).unwrap();
        let p = code_parameters(&code).unwrap();
        assert_eq!((p.dx, p.dz, p.d), (3, 1, 1));
    }

    #[test]
    fn forced_minimum_of_one() {
        let sub = BitMatrix::from_strs(&["1100"]);
        let space = sub.stack(&BitMatrix::from_strs(&["0001"]));
        assert_eq!(min_coset_weight(&space, &sub).unwrap(), 1);
        assert_eq!(min_coset_weight(&sub, &sub), Err(CssError::EmptyQuotient));
    }

    #[test]
    fn bundle_round_trip() {
        let qt = fifteen::triorthogonal();
        let text = format_bundle(&qt.base);
        let parsed = parse_bundle(&text).unwrap();
        assert_eq!(parsed.code(), &qt.base);
        let g_text = format_triorthogonal_bundle(&qt);
        assert_eq!(parse_bundle(&g_text).unwrap().triorthogonal().unwrap().g, qt.g);
    }

    #[test]
    fn bundle_errors() {
        assert!(matches!(parse_bundle("[HX]\n11\n"), Err(CssError::Bundle(_))));
        assert!(matches!(parse_bundle("[Q]\n11\n"), Err(CssError::Bundle(_))));
        assert!(matches!(parse_bundle("[G]\n12\n"), Err(CssError::Gf2(Gf2Error::Parse { .. }))));
    }
}
