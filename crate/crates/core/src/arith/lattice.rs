//! Integer lattices: kernels over ℤ and Hermite normal forms.

use super::{Matrix, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Basis of `{x ∈ ℤ^c : M x = 0}` for a rational matrix `M`.
///
/// Each row is scaled to integers, then unimodular column operations bring
/// `M` to column echelon form; the trailing columns of the accumulated
/// transform span the kernel lattice.
pub fn integer_kernel(m: &Matrix<Q>) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut b: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let den = m
                .row(i)
                .iter()
                .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            m.row(i)
                .iter()
                .map(|x| (x * Q::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    // column ops: col_j -= k col_p, applied to b (rows × cols) and u (cols × cols)
    let col_sub = |mat: &mut Vec<Vec<BigInt>>, j: usize, p: usize, k: &BigInt| {
        for row in mat.iter_mut() {
            let d = &row[p] * k;
            row[j] -= d;
        }
    };
    let col_swap = |mat: &mut Vec<Vec<BigInt>>, a: usize, c: usize| {
        for row in mat.iter_mut() {
            row.swap(a, c);
        }
    };
    let mut p = 0;
    for i in 0..rows {
        if p == cols {
            break;
        }
        loop {
            // smallest nonzero |b[i][j]| for j ≥ p moves to column p
            let Some(jmin) = (p..cols)
                .filter(|&j| !b[i][j].is_zero())
                .min_by_key(|&j| b[i][j].abs())
            else {
                break;
            };
            col_swap(&mut b, p, jmin);
            col_swap(&mut u, p, jmin);
            let mut done = true;
            for j in (p + 1)..cols {
                if b[i][j].is_zero() {
                    continue;
                }
                let k = b[i][j].div_floor(&b[i][p]);
                col_sub(&mut b, j, p, &k);
                col_sub(&mut u, j, p, &k);
                if !b[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                p += 1;
                break;
            }
        }
    }
    (p..cols)
        .map(|j| (0..cols).map(|i| u[i][j].clone()).collect())
        .collect()
}

/// Row Hermite normal form of the lattice spanned by `gens`; two generating
/// sets span the same lattice iff their forms agree.
pub fn hnf(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..cols {
        // gcd-reduce column c among the remaining rows
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let pivot = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &nz {
                if i == pivot {
                    continue;
                }
                let k = rows[i][c].div_floor(&rows[pivot][c]);
                let prow = rows[pivot].clone();
                for (x, y) in rows[i].iter_mut().zip(&prow) {
                    *x -= &k * y;
                }
            }
        }
        let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        let mut r = rows.swap_remove(i);
        if r[c].is_negative() {
            r.iter_mut().for_each(|x| *x = -x.clone());
        }
        out.push(r);
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // reduce entries above each pivot into [0, pivot)
    for k in 0..out.len() {
        let c = out[k].iter().position(|x| !x.is_zero()).unwrap();
        let piv = out[k][c].clone();
        for j in 0..k {
            let f = out[j][c].div_floor(&piv);
            if f.is_zero() {
                continue;
            }
            let row = out[k].clone();
            for (x, y) in out[j].iter_mut().zip(&row) {
                *x -= &f * y;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 over ℤ is spanned by (2, −1), not (4, −2)
        let m = Matrix::from_rows(vec![vec![q(2), q(4)]]);
        let k = integer_kernel(&m);
        assert_eq!(hnf(&k), hnf(&[bi(&[2, -1])]));
    }

    #[test]
    fn hnf_canonical() {
        let a = hnf(&[bi(&[2, 0]), bi(&[0, 3])]);
        let b = hnf(&[bi(&[2, 3]), bi(&[4, 3]), bi(&[0, 6])]);
        assert_eq!(a, b);
        assert_ne!(a, hnf(&[bi(&[1, 0]), bi(&[0, 3])]));
    }
}
