#![allow(dead_code)]

use num_bigint::BigInt;
use rigidconn_core::arith::{q, Q};
use rigidconn_core::chevalley::ChevalleyAlgebra;
use rigidconn_core::connection::MatrixConnection;
use rigidconn_core::formal::{apply_connection, residue_pair, SeriesWindow};
use rigidconn_core::rootsys::CartanType::{self, *};
use rigidconn_core::rootsys::RootSystem;
use std::collections::{BTreeMap, HashMap};

/// Every simple type up to the default rank bound.
pub fn all_types() -> Vec<(CartanType, usize)> {
    let mut v = Vec::new();
    v.extend((1..=8).map(|r| (A, r)));
    v.extend((2..=8).map(|r| (B, r)));
    v.extend((2..=8).map(|r| (C, r)));
    v.extend((4..=8).map(|r| (D, r)));
    v.extend([(E, 6), (E, 7), (E, 8), (F, 4), (G, 2)]);
    v
}

pub fn small_types() -> Vec<(CartanType, usize)> {
    all_types().into_iter().filter(|&(_, r)| r <= 4).collect()
}

type Sparse = HashMap<usize, i64>;

fn bracket_with(alg: &ChevalleyAlgebra, x: &Sparse, b: usize, out: &mut Sparse) {
    for (&a, &c) in x {
        for &(k, s) in alg.bracket_basis(a, b) {
            *out.entry(k).or_insert(0) += c * s;
        }
    }
}

fn basis_bracket(alg: &ChevalleyAlgebra, a: usize, b: usize) -> Sparse {
    alg.bracket_basis(a, b).iter().copied().collect()
}

/// First basis triple violating the Jacobi identity, if any.
pub fn jacobi_violation(alg: &ChevalleyAlgebra) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    let table: Vec<Sparse> = (0..n * n)
        .map(|i| basis_bracket(alg, i / n, i % n))
        .collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // [[a,b],c] + [[b,c],a] + [[c,a],b]
                let mut sum = Sparse::new();
                bracket_with(alg, &table[a * n + b], c, &mut sum);
                bracket_with(alg, &table[b * n + c], a, &mut sum);
                bracket_with(alg, &table[c * n + a], b, &mut sum);
                if sum.values().any(|&v| v != 0) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// `∏ ⟨λ+ρ, α̌⟩ / ⟨ρ, α̌⟩` with coroots rebuilt from root coefficients and
/// simple-root lengths.
pub fn weyl_dim_oracle(rs: &RootSystem, lambda: &[i64]) -> BigInt {
    let mut num = q(1);
    for root in &rs.positive_roots {
        let mut top = q(0);
        let mut bot = q(0);
        for i in 0..rs.rank {
            let c = q(root.coeffs[i] * rs.half_norms[i]) / q(root.half_norm);
            top += &c * q(lambda[i] + 1);
            bot += c;
        }
        num *= top / bot;
    }
    assert!(num.is_integer());
    num.to_integer()
}

/// `Res((∇f)·ω) + Res(f·(∇*ω))`, which vanishes because the integrand is
/// `θ(f·ω)`. `w` must sit well inside the window of `f`.
pub fn residue_defect(conn: &MatrixConnection, f: &SeriesWindow, w: &SeriesWindow) -> Q {
    let d = conn.dim;
    let mut padded = vec![vec![q(0); d]];
    padded.extend(w.coeffs.iter().cloned());
    padded.push(vec![q(0); d]);
    let w_pad = SeriesWindow {
        lo: w.lo - 1,
        coeffs: padded,
    };
    let to_map = |s: &SeriesWindow| -> BTreeMap<i64, Vec<Q>> {
        (s.lo..=s.hi())
            .map(|n| (n, s.get(n).unwrap().to_vec()))
            .collect()
    };
    let omega = to_map(w);
    let dual_omega = to_map(&apply_connection(&conn.dual(), &w_pad));
    residue_pair(&apply_connection(conn, f), &omega) + residue_pair(f, &dual_omega)
}
