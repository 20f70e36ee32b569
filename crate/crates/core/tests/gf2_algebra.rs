use proptest::prelude::*;
use tricss::fifteen;
use tricss::gf2::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows)
        .prop_map(move |r| {
            BitMatrix::from_rows(cols, r.iter().map(|b| BitVector::from_bools(b)).collect()).unwrap()
        })
}

/// Textbook elimination on `Vec<Vec<u8>>`, independent of the packed implementation.
fn naive_rank(m: &BitMatrix) -> usize {
    let mut a: Vec<Vec<u8>> = m
        .rows()
        .iter()
        .map(|r| (0..m.ncols()).map(|c| r.get(c) as u8).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.ncols() {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] == 1) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && a[i][c] == 1 {
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank as the size of the largest nonsingular square submatrix, via cofactor determinants.
fn minor_rank(m: &BitMatrix) -> usize {
    fn det(a: &[Vec<u8>]) -> u8 {
        if a.len() == 1 {
            return a[0][0];
        }
        let mut acc = 0;
        for (j, &x) in a[0].iter().enumerate() {
            if x == 0 {
                continue;
            }
            let minor: Vec<Vec<u8>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                .collect();
            acc ^= det(&minor);
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        tricss::decoder::for_each_combination(n, k, |s| {
            out.push(s.to_vec());
            true
        });
        out
    }
    let (r, c) = (m.nrows(), m.ncols());
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<u8>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j) as u8).collect()).collect();
                if det(&sub) == 1 {
                    return k;
                }
            }
        }
    }
    0
}

#[test]
fn identity_rank_and_pivots() {
    let e = rref(&BitMatrix::identity(2));
    assert_eq!(e.rank, 2);
    assert_eq!(e.pivots, vec![0, 1]);
}

#[test]
fn example_generator_has_rank_five() {
    assert_eq!(fifteen::g_matrix().rank(), 5);
}

#[test]
fn identity_has_trivial_dual() {
    let d = dual_basis(&BitMatrix::identity(6));
    assert_eq!(d.nrows(), 0);
    assert_eq!(d.ncols(), 6);
}

#[test]
fn dual_of_g0_contains_g1() {
    let d = dual_basis(&fifteen::g0_matrix());
    assert_eq!(d.nrows(), 11);
    assert!(d.in_row_space(&fifteen::G1.parse::<BitVector>().unwrap()));
}

#[test]
fn self_orthogonality_examples() {
    assert!(is_self_orthogonal(&fifteen::g0_matrix()));
    assert!(!is_self_orthogonal(&BitMatrix::from_strs(&[fifteen::G1])));
    assert!(is_self_orthogonal(&BitMatrix::empty(15)));
}

#[test]
fn quotient_of_g_by_g0_is_g1_coset() {
    let g = fifteen::g_matrix();
    let g0 = fifteen::g0_matrix();
    let q = quotient_basis(&g, &g0).unwrap();
    assert_eq!(q.nrows(), 1);
    let diff = q.row(0).xor(&fifteen::G1.parse::<BitVector>().unwrap());
    assert!(g0.in_row_space(&diff));
    assert_eq!(quotient_basis(&g, &g).unwrap().nrows(), 0);
    assert_eq!(quotient_basis(&g0, &g), Err(Gf2Error::SubspaceViolation));
}

#[test]
fn extension_search_finds_the_published_completion() {
    let qt = fifteen::triorthogonal();
    let ext = find_self_orthogonal_extensions(&qt.g0, &qt.base.hz, 3, 200).unwrap();
    let b = BitMatrix::from_supports(15, &fifteen::SYM_EXTRA);
    assert!(ext.iter().any(|e| e.same_row_space(&b)));
    assert!(ext.len() >= 8);
    for e in &ext {
        assert_eq!(e.nrows(), 3);
        assert!(e.mul_transpose(e).is_zero());
        assert!(e.mul_transpose(&qt.g0).is_zero());
        assert_eq!(qt.g0.stack(e).rank(), 7);
    }
}

#[test]
fn zero_row_extension_is_empty() {
    let g0 = fifteen::g0_matrix();
    let ext = find_self_orthogonal_extensions(&g0, &dual_basis(&g0), 0, 5).unwrap();
    assert_eq!(ext.len(), 1);
    assert_eq!(ext[0].nrows(), 0);
}

#[test]
fn matrix_text_format() {
    let m = BitMatrix::parse_text("# comment\n101\n\n011\n").unwrap();
    assert_eq!(m.nrows(), 2);
    assert_eq!(m.to_text(), "101\n011\n");
    assert!(matches!(BitMatrix::parse_text("102\n"), Err(Gf2Error::Parse { ch: '2', .. })));
    assert!(matches!(BitMatrix::parse_text("10\n1\n"), Err(Gf2Error::LengthMismatch { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_naive_elimination(m in matrix(8, 15)) {
        prop_assert_eq!(m.rank(), naive_rank(&m));
    }

    #[test]
    fn rank_matches_minor_oracle(m in matrix(5, 6)) {
        prop_assert_eq!(m.rank(), minor_rank(&m));
    }

    #[test]
    fn rref_shape(m in matrix(7, 12)) {
        let e = m.rref();
        prop_assert!(e.pivots.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(e.reduced.rows()[e.rank..].iter().all(|r| r.is_zero()));
        prop_assert!(e.reduced.same_row_space(&m));
        prop_assert!(e.rank <= 7);
    }

    #[test]
    fn dual_rows_annihilate(m in matrix(4, 10)) {
        let d = dual_basis(&m);
        prop_assert_eq!(d.nrows(), 10 - m.rank());
        prop_assert!(m.mul_transpose(&d).is_zero());
        prop_assert_eq!(d.rank(), d.nrows());
    }

    #[test]
    fn double_dual_is_span(m in matrix(6, 20)) {
        let dd = dual_basis(&dual_basis(&m));
        prop_assert!(dd.same_row_space(&m));
    }

    #[test]
    fn quotient_completes_subspace(c in matrix(6, 12), pick in proptest::collection::vec(any::<bool>(), 6)) {
        let idx: Vec<usize> = (0..6).filter(|&i| pick[i]).collect();
        let d = c.select_rows(&idx);
        let q = quotient_basis(&c, &d).unwrap();
        prop_assert_eq!(q.nrows(), c.rank() - d.rank());
        prop_assert_eq!(q.stack(&d).rank(), c.rank());
        for r in q.rows() {
            prop_assert!(!d.in_row_space(r));
        }
    }

    #[test]
    fn solve_is_consistent(m in matrix(6, 9), x in proptest::collection::vec(any::<bool>(), 9)) {
        let x = BitVector::from_bools(&x);
        let rhs = m.syndrome(&x);
        let sol = m.solve(&rhs).unwrap();
        prop_assert_eq!(m.syndrome(&sol), rhs);
    }

    #[test]
    fn span_enumeration_matches_closure(m in matrix(4, 8)) {
        let mut seen = std::collections::HashSet::new();
        for_each_span_element(&m.row_basis(), |v| { seen.insert(v.clone()); }).unwrap();
        prop_assert_eq!(seen.len(), 1 << m.rank());
        for v in &seen {
            prop_assert!(m.in_row_space(v));
        }
    }

    #[test]
    fn colex_matches_integer_order(a in 0u64..1 << 12, b in 0u64..1 << 12) {
        let (va, vb) = (BitVector::from_u64(12, a), BitVector::from_u64(12, b));
        prop_assert_eq!(va.colex_cmp(&vb), a.cmp(&b));
    }

    #[test]
    fn bit_string_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..70)) {
        let v = BitVector::from_bools(&bits);
        let s = v.to_bit_string();
        prop_assert_eq!(s.parse::<BitVector>().unwrap(), v);
    }
}
