mod common;

use common::residue_defect;
use proptest::prelude::*;
use rigidconn_core::arith::{q, Field, Matrix, Q};
use rigidconn_core::connection::{ConnCase, MatrixConnection};
use rigidconn_core::formal::{
    apply_connection, kernel_basis, kernel_dimension, SeriesWindow, Space, SpaceDims,
};
use rigidconn_core::rootsys::CartanType;
use std::collections::BTreeMap;

/// Nullity of `n v_n + Σ_k A_k v_{n−k} = 0` on the window `[−m, m]` with
/// `v = 0` to the left; with `closed`, also `v = 0` to the right.
fn dense_window_nullity(conn: &MatrixConnection, m: i64, closed: bool) -> usize {
    let d = conn.dim;
    let len = (2 * m + 1) as usize;
    let top = if closed { m + conn.max_exp() } else { m };
    let rows = ((top + m + 1) as usize) * d;
    let mut big = Matrix::<Q>::zeros(rows, len * d);
    for (row_block, n) in (-m..=top).enumerate() {
        for (k, a) in &conn.terms {
            let j = n - k;
            if j < -m || j > m {
                continue;
            }
            let col_block = (j + m) as usize;
            for r in 0..d {
                for c in 0..d {
                    big[(row_block * d + r, col_block * d + c)] += a[(r, c)].clone();
                }
            }
        }
        if n <= m {
            let col_block = (n + m) as usize;
            for r in 0..d {
                big[(row_block * d + r, col_block * d + r)] += q(n);
            }
        }
    }
    len * d - big.rank()
}

fn small_cases() -> Vec<ConnCase> {
    let mut v = vec![
        ConnCase::StandardSl(2),
        ConnCase::StandardSl(3),
        ConnCase::StandardSl(5),
        ConnCase::StandardSp(4),
        ConnCase::StandardSo(5),
        ConnCase::StandardSo(7),
        ConnCase::G2Seven,
        ConnCase::Adjoint(CartanType::A, 1),
        ConnCase::Adjoint(CartanType::A, 2),
    ];
    v.extend((1..=6).map(ConnCase::Sl2Sym));
    v
}

#[test]
fn dense_oracle_matches_transfer_solver() {
    for case in small_cases() {
        let conn = MatrixConnection::build(case).unwrap();
        let t0 = kernel_dimension(&conn, Space::Taylor0, 40).unwrap();
        let lp = kernel_dimension(&conn, Space::LaurentPolys, 40).unwrap();
        assert_eq!(
            t0.dim,
            dense_window_nullity(&conn, 12, false),
            "{case} taylor0"
        );
        assert_eq!(
            lp.dim,
            dense_window_nullity(&conn, 12, true),
            "{case} laurent"
        );
        assert!(t0.stabilized && lp.stabilized);
    }
}

fn is_zero_window(w: &SeriesWindow) -> bool {
    w.coeffs.iter().flatten().all(|x| x.is_nil())
}

#[test]
fn solver_bases_solve_the_equation() {
    for case in small_cases() {
        let conn = MatrixConnection::build(case).unwrap();
        for space in Space::ALL {
            let basis = kernel_basis(&conn, space, 40).unwrap();
            for f in &basis {
                assert!(
                    is_zero_window(&apply_connection(&conn, f)),
                    "{case} {}",
                    space.name()
                );
            }
            if !basis.is_empty() {
                let cols: Vec<Vec<Q>> = basis.iter().map(|f| f.coeffs.concat()).collect();
                let rank = Matrix::from_cols(cols[0].len(), &cols).rank();
                assert_eq!(rank, basis.len(), "{case} {} basis dependent", space.name());
            }
            let dim = kernel_dimension(&conn, space, 40).unwrap().dim;
            assert!(basis.len() <= dim);
        }
    }
}

#[test]
fn companion_reexpansion_matches_solver() {
    let cases = [
        ConnCase::StandardSl(2),
        ConnCase::StandardSl(3),
        ConnCase::StandardSl(4),
        ConnCase::StandardSl(5),
        ConnCase::StandardSl(6),
        ConnCase::StandardSp(4),
        ConnCase::StandardSp(6),
        ConnCase::StandardSo(5),
        ConnCase::StandardSo(7),
        ConnCase::G2Seven,
    ];
    for case in cases {
        let conn = MatrixConnection::build(case).unwrap();
        let op = conn.scalar_reduction(conn.dim - 1).unwrap();
        let comp = op.companion().unwrap();
        let a = SpaceDims::compute(&conn, 30).unwrap();
        let b = SpaceDims::compute(&comp, 30).unwrap();
        assert_eq!(
            (a.two_sided, a.taylor0, a.taylor_inf, a.laurent_polys),
            (b.two_sided, b.taylor0, b.taylor_inf, b.laurent_polys),
            "{case}"
        );
    }
}

fn small_matrix(d: usize) -> impl Strategy<Value = Matrix<Q>> {
    proptest::collection::vec(-3i64..=3, d * d)
        .prop_map(move |v| Matrix::from_fn(d, d, |i, j| q(v[i * d + j])))
}

fn window(d: usize, lo: i64, hi: i64) -> impl Strategy<Value = SeriesWindow> {
    let len = (hi - lo + 1) as usize;
    proptest::collection::vec(proptest::collection::vec(-5i64..=5, d), len).prop_map(move |c| {
        SeriesWindow {
            lo,
            coeffs: c
                .into_iter()
                .map(|v| v.into_iter().map(q).collect())
                .collect(),
        }
    })
}

fn random_case() -> impl Strategy<Value = (MatrixConnection, SeriesWindow, SeriesWindow)> {
    (1usize..=4).prop_flat_map(|d| {
        (
            small_matrix(d),
            small_matrix(d),
            window(d, -8, 8),
            window(d, -3, 3),
        )
            .prop_map(move |(a0, a1, f, w)| {
                let mut terms = BTreeMap::new();
                terms.insert(0, a0);
                terms.insert(1, a1);
                terms.retain(|_, m| !m.is_zero());
                (MatrixConnection::from_terms("random", terms), f, w)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn residue_pairing_adjoint_identity((conn, f, w) in random_case()) {
        prop_assert_eq!(residue_defect(&conn, &f, &w), q(0));
    }
}
