//! Syndrome lookup-table decoding.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::css::CssCode;
use crate::gf2::{for_each_span_element, BitMatrix, BitVector, MAX_ENUM_BITS};
use crate::Basis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("syndrome {0} is not in the lookup table")]
    UndecodableSyndrome(BitVector),
    #[error("syndrome length {found} does not match {expected} checks")]
    SyndromeLength { expected: usize, found: usize },
    #[error("lookup table over 2^{bits} syndromes exceeds the 2^{max} budget")]
    TooLarge { bits: usize, max: usize },
}

/// Maps every reachable syndrome to a minimum-weight error. Errors are tried
/// by increasing weight, supports in lexicographic order; the first error
/// producing a syndrome wins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LookupDecoder {
    /// Type of the errors this decoder corrects.
    pub error_type: Basis,
    pub checks: BitMatrix,
    #[serde(skip)]
    table: HashMap<BitVector, BitVector>,
    pub table_size: usize,
    /// Every error up to this weight decodes to itself.
    pub certified_weight: usize,
}

/// Decoder for errors of type `pauli` on `code` (X errors use `hz`, Z errors `hx`).
pub fn build_decoder(code: &CssCode, pauli: Basis) -> Result<LookupDecoder, DecodeError> {
    LookupDecoder::from_checks(code.checks(pauli.other()).clone(), pauli)
}

impl LookupDecoder {
    pub fn from_checks(checks: BitMatrix, error_type: Basis) -> Result<Self, DecodeError> {
        let n = checks.ncols();
        let rank = checks.rank();
        if rank > MAX_ENUM_BITS {
            return Err(DecodeError::TooLarge { bits: rank, max: MAX_ENUM_BITS });
        }
        let kernel = checks.dual_basis();
        if kernel.nrows() > MAX_ENUM_BITS {
            return Err(DecodeError::TooLarge { bits: kernel.nrows(), max: MAX_ENUM_BITS });
        }
        let mut min_kernel = usize::MAX;
        for_each_span_element(&kernel, |v| {
            if !v.is_zero() {
                min_kernel = min_kernel.min(v.weight());
            }
        })
        .expect("kernel size checked");
        let certified_weight = if min_kernel == usize::MAX { n } else { (min_kernel - 1) / 2 };

        let target = 1usize << rank;
        let mut table = HashMap::with_capacity(target);
        table.insert(BitVector::zeros(checks.nrows()), BitVector::zeros(n));
        let columns: Vec<BitVector> = checks.transpose().rows().to_vec();
        let mut w = 1;
        while table.len() < target && w <= n {
            for_each_combination(n, w, |support| {
                let mut s = BitVector::zeros(checks.nrows());
                for &q in support {
                    s.xor_assign(&columns[q]);
                }
                table.entry(s).or_insert_with(|| BitVector::from_indices(n, support));
                table.len() < target
            });
            w += 1;
        }
        let table_size = table.len();
        Ok(LookupDecoder { error_type, checks, table, table_size, certified_weight })
    }

    pub fn num_qubits(&self) -> usize {
        self.checks.ncols()
    }

    pub fn syndrome(&self, error: &BitVector) -> BitVector {
        self.checks.syndrome(error)
    }

    pub fn decode(&self, syndrome: &BitVector) -> Result<BitVector, DecodeError> {
        if syndrome.len() != self.checks.nrows() {
            return Err(DecodeError::SyndromeLength {
                expected: self.checks.nrows(),
                found: syndrome.len(),
            });
        }
        self.table
            .get(syndrome)
            .cloned()
            .ok_or_else(|| DecodeError::UndecodableSyndrome(syndrome.clone()))
    }
}

/// Visit `w`-subsets of `0..n` in lexicographic order until `f` returns false.
pub fn for_each_combination(n: usize, w: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // Rightmost position that can still advance.
        let mut i = w;
        while i > 0 && idx[i - 1] == n - w + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_combination(5, 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
        assert_eq!(binomial(15, 2), 105);
    }

    #[test]
    fn repetition_code_decoder() {
        let checks = BitMatrix::from_strs(&["110", "011"]);
        let d = LookupDecoder::from_checks(checks, Basis::X).unwrap();
        assert_eq!(d.certified_weight, 1);
        for q in 0..3 {
            let e = BitVector::from_indices(3, &[q]);
            assert_eq!(d.decode(&d.syndrome(&e)).unwrap(), e);
        }
    }
}
