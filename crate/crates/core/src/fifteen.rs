//! The 15-qubit triorthogonal code and its canonical symmetric companion.
//!
//! Supports below are one-based qubit indices.

use crate::css::{self, CssCode, TriorthogonalCode};
use crate::gf2::BitMatrix;

pub const N: usize = 15;

/// Odd-weight row of the generator matrix.
pub const G1: &str = "100101100110100";

/// Even-weight rows of the generator matrix.
pub const G0: [&str; 4] = [
    "111111110000000",
    "111100001111000",
    "110011001100110",
    "101010101010101",
];

/// Z-type stabilizers of the triorthogonal code beyond the four G0 rows.
pub const QT_EXTRA_Z: [&[usize]; 6] = [
    &[1, 2, 3, 4],
    &[1, 2, 5, 6],
    &[1, 3, 5, 7],
    &[1, 2, 9, 10],
    &[1, 5, 9, 13],
    &[1, 3, 9, 11],
];

/// The three Z generators present in the triorthogonal code but not in the
/// symmetric companion.
pub const EXCLUDED_Z: [&[usize]; 3] = [&[1, 2, 9, 10], &[1, 5, 9, 13], &[1, 3, 9, 11]];

/// Weight-3 Z-logical of the triorthogonal code.
pub const QT_LOGICAL_Z: &[usize] = &[1, 2, 15];

/// Stabilizer rows (X and Z alike) of the symmetric companion beyond G0.
pub const SYM_EXTRA: [&[usize]; 3] = [&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 3, 5, 7]];

/// Weight-3 logical (X and Z alike) of the symmetric companion.
pub const SYM_LOGICAL: &[usize] = &[9, 10, 15];

/// Completion rows `B` and `B'` that extend `G` to a generator of the
/// `[15,8,3]` classical code whose dual defines the companion.
pub const COMPLETION_B: [&[usize]; 3] = [&[2, 3, 5, 8], &[9, 11, 14], &[9, 10, 15]];
pub const COMPLETION_B_PRIME: [&[usize]; 3] = [&[1, 2, 9, 10], &[2, 3, 10, 11], &[3, 4, 11, 12]];

pub fn g_matrix() -> BitMatrix {
    BitMatrix::from_strs(&[G1]).stack(&BitMatrix::from_strs(&G0))
}

pub fn g0_matrix() -> BitMatrix {
    BitMatrix::from_strs(&G0)
}

pub fn qt_z_stabilizers() -> BitMatrix {
    g0_matrix().stack(&BitMatrix::from_supports(N, &QT_EXTRA_Z))
}

pub fn sym_stabilizers() -> BitMatrix {
    g0_matrix().stack(&BitMatrix::from_supports(N, &SYM_EXTRA))
}

pub fn triorthogonal() -> TriorthogonalCode {
    css::build_triorthogonal_code(&g_matrix()).expect("built-in generator is triorthogonal")
}

/// The canonical (first) symmetric companion.
pub fn symmetric() -> CssCode {
    css::generate_symmetric_codes(&triorthogonal(), 1)
        .expect("built-in code has a symmetric companion")
        .remove(0)
}
