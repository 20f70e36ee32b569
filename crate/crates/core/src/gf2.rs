//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words. Bit `i` of a vector is qubit `i`
//! (zero-based). Ordering helpers use "colex" order: a vector compares as
//! the integer whose least significant bit is index 0, so the ordering is
//! decided by the highest differing index.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest span dimension any exhaustive enumeration will accept.
pub const MAX_ENUM_BITS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("row has {found} bits, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("line {line}, column {column}: unexpected character {ch:?}")]
    Parse { line: usize, column: usize, ch: char },
    #[error("matrix text contains no rows")]
    Empty,
    #[error("subspace is not contained in the space")]
    SubspaceViolation,
    #[error("no self-orthogonal extension with {r} rows exists")]
    NoExtension { r: usize },
    #[error("enumeration over 2^{bits} elements exceeds the 2^{max} budget")]
    TooLarge { bits: usize, max: usize },
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            assert!(i < len, "index {i} out of range for length {len}");
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `bits`; requires `len <= 64`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = bits & mask;
        }
        v
    }

    /// Value of the first 64 bits as an integer (index 0 is the LSB).
    pub fn low_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        BitVector { len: self.len, words }
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        BitVector { len: self.len, words }
    }

    /// Indices of set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// Compare as integers with index 0 least significant.
    pub fn colex_cmp(&self, other: &BitVector) -> Ordering {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Order by Hamming weight, then colex.
    pub fn weight_colex_cmp(&self, other: &BitVector) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.colex_cmp(other))
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Gf2Error::Parse { line: 1, column: i + 1, ch }),
            }
        }
        Ok(v)
    }
}

impl serde::Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bit_string())
    }
}

impl<'de> serde::Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    /// Reduced row echelon form; zero rows are kept at the bottom.
    pub reduced: BitMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    /// Reduce `v` modulo the row space. The result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.reduced.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients `c` over the nonzero reduced rows with `c·reduced = v`, if `v` is in the span.
    pub fn coordinates(&self, v: &BitVector) -> Option<BitVector> {
        let mut rest = v.clone();
        let mut coeffs = BitVector::zeros(self.rank);
        for (i, (row, &p)) in self.reduced.rows.iter().zip(&self.pivots).enumerate() {
            if rest.get(p) {
                rest.xor_assign(row);
                coeffs.set(i, true);
            }
        }
        rest.is_zero().then_some(coeffs)
    }

    /// The nonzero rows of the reduced form.
    pub fn basis(&self) -> BitMatrix {
        BitMatrix {
            cols: self.reduced.cols,
            rows: self.reduced.rows[..self.rank].to_vec(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    /// Matrix with no rows.
    pub fn empty(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitVector::from_indices(n, &[i])).collect();
        Self { cols: n, rows }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        for r in &rows {
            if r.len() != cols {
                return Err(Gf2Error::LengthMismatch { expected: cols, found: r.len() });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Build from '0'/'1' strings. Panics on malformed input; meant for fixtures.
    pub fn from_strs(rows: &[&str]) -> Self {
        let parsed: Vec<BitVector> =
            rows.iter().map(|s| s.parse().expect("malformed bit string")).collect();
        let cols = parsed.first().map_or(0, |r| r.len());
        Self::from_rows(cols, parsed).expect("ragged bit strings")
    }

    /// Rows given as one-based support lists.
    pub fn from_supports(cols: usize, supports: &[&[usize]]) -> Self {
        let rows = supports
            .iter()
            .map(|s| {
                let zero_based: Vec<usize> = s.iter().map(|&i| i - 1).collect();
                BitVector::from_indices(cols, &zero_based)
            })
            .collect();
        Self { cols, rows }
    }

    /// Parse the line-oriented text format: one row of '0'/'1' per line,
    /// blank lines and `#` comments ignored.
    pub fn parse_text(text: &str) -> Result<Self, Gf2Error> {
        Self::parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    pub(crate) fn parse_lines<'a>(
        lines: impl Iterator<Item = (usize, &'a str)>,
    ) -> Result<Self, Gf2Error> {
        let mut rows = Vec::new();
        let mut cols: Option<usize> = None;
        for (lineno, raw) in lines {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut v = BitVector::zeros(line.chars().count());
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(c, true),
                    _ => return Err(Gf2Error::Parse { line: lineno, column: c + 1, ch }),
                }
            }
            match cols {
                None => cols = Some(v.len()),
                Some(n) if n != v.len() => {
                    return Err(Gf2Error::LengthMismatch { expected: n, found: v.len() })
                }
                _ => {}
            }
            rows.push(v);
        }
        let cols = cols.ok_or(Gf2Error::Empty)?;
        Ok(Self { cols, rows })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "stacking matrices with different widths");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix { cols: self.cols, rows }
    }

    pub fn select_rows(&self, idx: &[usize]) -> BitMatrix {
        BitMatrix { cols: self.cols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// `self · otherᵀ`.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bools(&other.rows.iter().map(|b| a.dot(b)).collect::<Vec<_>>()))
            .collect();
        BitMatrix { cols: other.rows.len(), rows }
    }

    /// `self · vᵀ` as a vector of length `nrows`.
    pub fn syndrome(&self, v: &BitVector) -> BitVector {
        BitVector::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    /// Sum of the rows selected by `coeffs`.
    pub fn combine(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.len(), self.rows.len());
        let mut out = BitVector::zeros(self.cols);
        for i in coeffs.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn rref(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Echelon { reduced: BitMatrix { cols: self.cols, rows }, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the row space (nonzero RREF rows).
    pub fn row_basis(&self) -> BitMatrix {
        self.rref().basis()
    }

    pub fn in_row_space(&self, v: &BitVector) -> bool {
        self.rref().contains(v)
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn spans(&self, other: &BitMatrix) -> bool {
        let e = self.rref();
        other.rows.iter().all(|r| e.contains(r))
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, a)| self.rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// Basis of the null space `{v : self · vᵀ = 0}`.
    pub fn dual_basis(&self) -> BitMatrix {
        let e = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut out = BitMatrix::empty(self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(f, true);
            for (row, &p) in e.reduced.rows.iter().zip(&e.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            out.rows.push(v);
        }
        out
    }

    /// Solve `self · xᵀ = rhs` for some `x`, if consistent.
    pub fn solve(&self, rhs: &BitVector) -> Option<BitVector> {
        assert_eq!(rhs.len(), self.rows.len());
        // Row-reduce the augmented system [self | rhs].
        let aug: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::from_bools(&[rhs.get(i)])))
            .collect();
        let e = BitMatrix { cols: self.cols + 1, rows: aug }.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (row, &p) in e.reduced.rows.iter().zip(&e.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Rows extending a basis of `span(d)` to a basis of `span(self)`.
    pub fn quotient_basis(&self, d: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if !self.spans(d) {
            return Err(Gf2Error::SubspaceViolation);
        }
        let mut acc = d.row_basis();
        let mut out = BitMatrix::empty(self.cols);
        for r in &self.row_basis().rows {
            let e = acc.rref();
            if !e.contains(r) {
                acc.push_row(r.clone());
                out.push_row(r.clone());
            }
        }
        Ok(out)
    }

    /// Like [`quotient_basis`](Self::quotient_basis) but greedily picks the
    /// lowest (weight, colex) elements of `span(self)`, so the result is
    /// basis independent.
    pub fn min_weight_quotient_basis(&self, d: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if !self.spans(d) {
            return Err(Gf2Error::SubspaceViolation);
        }
        let mut elems = self.span_elements()?;
        elems.sort_by(BitVector::weight_colex_cmp);
        let target = self.rank() - d.rank();
        let mut acc = d.row_basis();
        let mut out = BitMatrix::empty(self.cols);
        for v in elems {
            if out.nrows() == target {
                break;
            }
            if !acc.rref().contains(&v) {
                acc.push_row(v.clone());
                out.push_row(v);
            }
        }
        Ok(out)
    }

    /// Every element of the row space, enumerated in Gray-code order.
    pub fn span_elements(&self) -> Result<Vec<BitVector>, Gf2Error> {
        let mut out = Vec::new();
        for_each_span_element(&self.row_basis(), |v| out.push(v.clone()))?;
        Ok(out)
    }

    /// Lowest (weight, colex) element of the coset `v + span(self)`.
    pub fn min_coset_representative(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        let mut best = v.clone();
        for_each_span_element(&self.row_basis(), |s| {
            let c = v.xor(s);
            if c.weight_colex_cmp(&best) == Ordering::Less {
                best = c;
            }
        })?;
        Ok(best)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {}", r.to_bit_string())?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl serde::Serialize for BitMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for r in &self.rows {
            seq.serialize_element(&r.to_bit_string())?;
        }
        seq.end()
    }
}

/// Free-function form of [`BitMatrix::rref`].
pub fn rref(m: &BitMatrix) -> Echelon {
    m.rref()
}

pub fn dual_basis(m: &BitMatrix) -> BitMatrix {
    m.dual_basis()
}

pub fn is_self_orthogonal(m: &BitMatrix) -> bool {
    m.is_self_orthogonal()
}

pub fn quotient_basis(c: &BitMatrix, d: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
    c.quotient_basis(d)
}

/// Visit every element of `span(basis)` (basis rows assumed independent),
/// starting with zero and flipping one basis row per step.
pub fn for_each_span_element(
    basis: &BitMatrix,
    mut f: impl FnMut(&BitVector),
) -> Result<(), Gf2Error> {
    let k = basis.nrows();
    if k > MAX_ENUM_BITS {
        return Err(Gf2Error::TooLarge { bits: k, max: MAX_ENUM_BITS });
    }
    let mut cur = BitVector::zeros(basis.ncols());
    f(&cur);
    for i in 1u64..(1u64 << k) {
        let flip = i.trailing_zeros() as usize;
        cur.xor_assign(basis.row(flip));
        f(&cur);
    }
    Ok(())
}

/// Budget on the number of candidate tuples examined by
/// [`find_self_orthogonal_extensions`].
pub const DEFAULT_COMBINATION_BUDGET: u64 = 50_000_000;

/// Search for `r`-row matrices `B` such that `[g0; B]` is self-orthogonal
/// and has rank `rank(g0) + r`.
///
/// The search space is `span(candidates)` modulo `span(g0)`. Each coset is
/// represented by its (weight, colex)-least member; only even-weight
/// representatives can appear in a self-orthogonal matrix. Row tuples are
/// enumerated in lexicographic index order over the sorted representatives,
/// and results are deduplicated by the row space of `[g0; B]`.
pub fn find_self_orthogonal_extensions(
    g0: &BitMatrix,
    candidates: &BitMatrix,
    r: usize,
    limit: usize,
) -> Result<Vec<BitMatrix>, Gf2Error> {
    find_self_orthogonal_extensions_with_budget(g0, candidates, r, limit, DEFAULT_COMBINATION_BUDGET)
}

pub fn find_self_orthogonal_extensions_with_budget(
    g0: &BitMatrix,
    candidates: &BitMatrix,
    r: usize,
    limit: usize,
    budget: u64,
) -> Result<Vec<BitMatrix>, Gf2Error> {
    let n = g0.ncols();
    if r == 0 {
        return Ok(vec![BitMatrix::empty(n)]);
    }
    if limit == 0 {
        return Ok(Vec::new());
    }
    let base = g0.row_basis();
    let base_e = base.rref();
    let quotient_dim = candidates.stack(&base).rank() - base.nrows();
    if quotient_dim > MAX_ENUM_BITS {
        return Err(Gf2Error::TooLarge { bits: quotient_dim, max: MAX_ENUM_BITS });
    }

    // One representative per nonzero coset of span(candidates)+span(g0) mod span(g0).
    let mut reps: Vec<BitVector> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for_each_span_element(&candidates.row_basis(), |v| {
        let key = base_e.reduce(v);
        if key.is_zero() || !seen.insert(key) {
            return;
        }
        reps.push(v.clone());
    })?;
    let mut filtered = Vec::with_capacity(reps.len());
    for v in reps {
        let rep = base.min_coset_representative(&v)?;
        // Must be orthogonal to g0 and to itself.
        if rep.weight() % 2 == 0 && base.rows().iter().all(|g| !g.dot(&rep)) {
            filtered.push(rep);
        }
    }
    filtered.sort_by(BitVector::weight_colex_cmp);

    let mut results = Vec::new();
    let mut seen_spans = std::collections::HashSet::new();
    let mut examined = 0u64;
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    search(
        &filtered,
        &base,
        r,
        0,
        &mut chosen,
        &mut Ctx { limit, budget, examined: &mut examined, results: &mut results, seen: &mut seen_spans },
    );
    if results.is_empty() {
        return Err(Gf2Error::NoExtension { r });
    }
    Ok(results)
}

struct Ctx<'a> {
    limit: usize,
    budget: u64,
    examined: &'a mut u64,
    results: &'a mut Vec<BitMatrix>,
    seen: &'a mut std::collections::HashSet<BitMatrix>,
}

fn search(
    reps: &[BitVector],
    acc: &BitMatrix,
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    ctx: &mut Ctx<'_>,
) {
    if ctx.results.len() >= ctx.limit || *ctx.examined >= ctx.budget {
        return;
    }
    if chosen.len() == r {
        let b = BitMatrix {
            cols: acc.ncols(),
            rows: chosen.iter().map(|&i| reps[i].clone()).collect(),
        };
        if ctx.seen.insert(acc.row_basis()) {
            ctx.results.push(b);
        }
        return;
    }
    let e = acc.rref();
    for i in start..reps.len() {
        *ctx.examined += 1;
        if *ctx.examined >= ctx.budget || ctx.results.len() >= ctx.limit {
            return;
        }
        let v = &reps[i];
        if chosen.iter().any(|&j| reps[j].dot(v)) || e.contains(v) {
            continue;
        }
        let mut next = acc.clone();
        next.push_row(v.clone());
        chosen.push(i);
        search(reps, &next, r, i + 1, chosen, ctx);
        chosen.pop();
    }
}
