//! Formal solutions of `θ f + A(t) f = 0` for `A = A₀ + t A₁`.
//!
//! With `f = Σ v_n tⁿ` the equation is `(n + A₀) v_n + A₁ v_{n−1} = 0`.
//! Away from the finitely many `n` where `n + A₀` is singular this is a
//! transfer `v_n = T_n v_{n−1}`, `T_n = −(n + A₀)⁻¹ A₁`, so every solution
//! space reduces to a small linear system around `n = 0` plus two
//! subspaces propagated in from the ends of the window `[−M, M]`.

use crate::arith::{q, Field, Matrix, Q};
use crate::connection::MatrixConnection;
use crate::error::{consistency, invalid, Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// Solutions in `V((t))`.
    Taylor0,
    /// Solutions in `V((t⁻¹))`.
    TaylorInf,
    /// Solutions in `V[[t, t⁻¹]]`.
    TwoSided,
    /// Solutions in `V[t, t⁻¹]`.
    LaurentPolys,
}

impl Space {
    pub const ALL: [Space; 4] = [
        Space::TwoSided,
        Space::Taylor0,
        Space::TaylorInf,
        Space::LaurentPolys,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Space::Taylor0 => "taylor0",
            Space::TaylorInf => "taylor_inf",
            Space::TwoSided => "two_sided",
            Space::LaurentPolys => "laurent_polys",
        }
    }

    fn free_left(self) -> bool {
        matches!(self, Space::TwoSided | Space::TaylorInf)
    }

    fn free_right(self) -> bool {
        matches!(self, Space::TwoSided | Space::Taylor0)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Space::ALL
            .into_iter()
            .find(|sp| sp.name() == s)
            .ok_or_else(|| invalid!("unknown solution space `{s}`"))
    }
}

/// Window size together with whether the heuristic floor is enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub m: i64,
    pub enforce_floor: bool,
}

impl Truncation {
    pub fn relaxed(m: i64) -> Self {
        Truncation {
            m,
            enforce_floor: false,
        }
    }
}

impl From<i64> for Truncation {
    fn from(m: i64) -> Self {
        Truncation {
            m,
            enforce_floor: true,
        }
    }
}

/// Smallest truncation accepted by default: `2·dim + 2h`.
pub fn truncation_floor(conn: &MatrixConnection) -> i64 {
    2 * conn.dim as i64 + 2 * conn.coxeter_number.unwrap_or(1)
}

/// Coefficients `v_lo, …, v_hi` of a formal series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesWindow {
    pub lo: i64,
    pub coeffs: Vec<Vec<Q>>,
}

impl SeriesWindow {
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&[Q]> {
        if n < self.lo || n > self.hi() {
            return None;
        }
        Some(&self.coeffs[(n - self.lo) as usize])
    }

    /// Smallest index with a nonzero coefficient.
    pub fn min_support(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|v| v.iter().any(|x| !x.is_nil()))
            .map(|i| self.lo + i as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub space: Space,
    pub dim: usize,
    pub truncation: i64,
    /// Dimension recomputed at `M + h`.
    pub dim_next: usize,
    pub stabilized: bool,
    /// Every solution found has `v_n = 0` for `n < 0`.
    pub negative_part_vanishes: bool,
}

impl KernelReport {
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.name(),
            "dim": self.dim,
            "truncation": self.truncation,
            "dim_next": self.dim_next,
            "stabilized": self.stabilized,
            "negative_part_vanishes": self.negative_part_vanishes,
        })
    }
}

/// Subspace spanned by `vectors`, as a canonical basis (rref rows).
fn span_basis(dim: usize, vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
    debug_assert!(vectors.iter().all(|v| v.len() == dim));
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

struct Recursion {
    dim: usize,
    a0: Matrix<Q>,
    a1: Matrix<Q>,
    /// `n + A₀` is invertible for `|n| > beta`.
    beta: i64,
    transfers: BTreeMap<i64, Matrix<Q>>,
}

/// Integer `n` with `det(n + A₀) = 0`, found among the integers below the
/// Cauchy root bound of the characteristic polynomial.
fn singular_shifts(a0: &Matrix<Q>) -> Result<Vec<i64>> {
    let p = a0.charpoly();
    let lead = p.lead();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| num_traits::Signed::abs(&(c / &lead)))
        .max()
        .unwrap_or_else(|| q(0))
        .ceil()
        .to_integer();
    let bound: i64 = i64::try_from(bound + 1)
        .ok()
        .filter(|b| *b <= 10_000)
        .ok_or_else(|| Error::Unsupported("eigenvalues of A₀ are too large".into()))?;
    Ok((-bound..=bound)
        .filter(|n| p.eval(&q(-n)).is_nil())
        .collect())
}

impl Recursion {
    fn new(conn: &MatrixConnection, reach: i64) -> Result<Self> {
        if conn.terms.keys().any(|k| *k != 0 && *k != 1) {
            return Err(Error::Unsupported(format!(
                "formal solver needs A(t) = A0 + t A1; `{}` has powers {:?}",
                conn.label,
                conn.terms.keys().collect::<Vec<_>>()
            )));
        }
        let a0 = conn.coeff(0);
        let a1 = conn.coeff(1);
        let beta = singular_shifts(&a0)?
            .into_iter()
            .map(i64::abs)
            .max()
            .unwrap_or(0);
        let mut rec = Recursion {
            dim: conn.dim,
            a0,
            a1,
            beta,
            transfers: BTreeMap::new(),
        };
        for n in (beta + 1)..=reach {
            rec.transfers.insert(n, rec.transfer(n));
            rec.transfers.insert(-n, rec.transfer(-n));
        }
        Ok(rec)
    }

    fn shifted(&self, n: i64) -> Matrix<Q> {
        let mut m = self.a0.clone();
        for i in 0..self.dim {
            m[(i, i)] += q(n);
        }
        m
    }

    fn transfer(&self, n: i64) -> Matrix<Q> {
        if let Some(t) = self.transfers.get(&n) {
            return t.clone();
        }
        let inv = self
            .shifted(n)
            .inverse()
            .expect("n + A0 invertible off the singular set");
        inv.mul(&self.a1).neg()
    }

    fn t(&self, n: i64) -> &Matrix<Q> {
        &self.transfers[&n]
    }
}

/// Everything needed to count and write out the solutions of one space at
/// one truncation.
struct Solved {
    /// Bases of the left-admissible subspaces at indices `−M..=−β−1`.
    left: Vec<Vec<Vec<Q>>>,
    middle: Vec<Vec<Vec<Q>>>,
    kernel_tail: usize,
}

impl Solved {
    fn dim(&self) -> usize {
        self.middle.len() + self.kernel_tail
    }
}

fn solve_space(rec: &Recursion, space: Space, m: i64) -> Solved {
    let d = rec.dim;
    let beta = rec.beta;
    let left_end = -beta - 1;

    // Left: images T_n ⋯ T_{−M+1} V, or zero for a support bounded below.
    let mut left = Vec::new();
    let mut mid_left_dim = 0;
    if space.free_left() {
        let mut basis: Vec<Vec<Q>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
        left.push(basis.clone());
        let mid = left_end - (m + left_end) / 2;
        for n in (-m + 1)..=left_end {
            if !basis.is_empty() {
                let t = rec.t(n);
                let imgs: Vec<Vec<Q>> = basis.iter().map(|v| t.mul_vec(v)).collect();
                basis = span_basis(d, &imgs);
            }
            if n == mid {
                mid_left_dim = basis.len();
            }
            left.push(basis.clone());
        }
        if mid <= -m {
            mid_left_dim = d;
        }
    }
    let left_basis = left.last().cloned().unwrap_or_default();
    let kernel_tail = if space.free_left() {
        mid_left_dim - left_basis.len()
    } else {
        0
    };

    // Right: annihilator of ker(T_{M+1} ⋯ T_{β+1}) when the support is
    // bounded above.
    let mut ann: Vec<Vec<Q>> = Vec::new();
    if !space.free_right() {
        let t = rec.t(m + 1);
        ann = span_basis(d, &(0..d).map(|i| t.row(i).to_vec()).collect::<Vec<_>>());
        for n in ((beta + 1)..=m).rev() {
            if ann.len() == d || ann.is_empty() {
                break;
            }
            let t = rec.t(n);
            let rows: Vec<Vec<Q>> = ann.iter().map(|r| t.vec_mul(r)).collect();
            ann = span_basis(d, &rows);
        }
    }

    // Middle: unknowns x (coordinates in the left basis) and v_{−β..β}.
    let j = left_basis.len();
    let blocks = (2 * beta + 1) as usize;
    let nvars = j + blocks * d;
    let var = |n: i64, i: usize| j + ((n + beta) as usize) * d + i;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for n in -beta..=beta {
        let s = rec.shifted(n);
        for r in 0..d {
            let mut row = vec![q(0); nvars];
            for c in 0..d {
                row[var(n, c)] += &s[(r, c)];
            }
            if n == -beta {
                for (k, b) in left_basis.iter().enumerate() {
                    let mut acc = q(0);
                    for c in 0..d {
                        acc += &rec.a1[(r, c)] * &b[c];
                    }
                    row[k] += acc;
                }
            } else {
                for c in 0..d {
                    row[var(n - 1, c)] += &rec.a1[(r, c)];
                }
            }
            rows.push(row);
        }
    }
    for a in &ann {
        let mut row = vec![q(0); nvars];
        for c in 0..d {
            row[var(beta, c)] = a[c].clone();
        }
        rows.push(row);
    }
    let null = if rows.is_empty() {
        (0..nvars)
            .map(|i| {
                (0..nvars)
                    .map(|k| if i == k { q(1) } else { q(0) })
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let middle = null
        .into_iter()
        .map(|x| {
            let mut vs = Vec::with_capacity(blocks + 1);
            let mut first = vec![q(0); d];
            for (k, b) in left_basis.iter().enumerate() {
                for c in 0..d {
                    first[c] += &x[k] * &b[c];
                }
            }
            vs.push(first);
            for n in -beta..=beta {
                vs.push((0..d).map(|c| x[var(n, c)].clone()).collect());
            }
            vs
        })
        .collect();

    Solved {
        left,
        middle,
        kernel_tail,
    }
}

fn check_truncation(conn: &MatrixConnection, tr: Truncation) -> Result<()> {
    let floor = truncation_floor(conn);
    if tr.enforce_floor && tr.m < floor {
        return Err(invalid!(
            "truncation {} is below the floor 2*dim + 2h = {floor}",
            tr.m
        ));
    }
    if tr.m < 2 {
        return Err(invalid!("truncation must be at least 2"));
    }
    Ok(())
}

fn period(conn: &MatrixConnection) -> i64 {
    conn.coxeter_number.unwrap_or(1).max(1)
}

/// Dimension of the solution space at truncation `M`, rechecked at `M + h`.
pub fn kernel_dimension(
    conn: &MatrixConnection,
    space: Space,
    truncation: impl Into<Truncation>,
) -> Result<KernelReport> {
    let tr = truncation.into();
    check_truncation(conn, tr)?;
    let h = period(conn);
    let rec = Recursion::new(conn, tr.m + h + 1)?;
    if tr.m <= rec.beta + 1 {
        return Err(invalid!(
            "truncation {} does not clear the resonant shifts up to {}",
            tr.m,
            rec.beta
        ));
    }
    let at_m = solve_space(&rec, space, tr.m);
    let at_next = solve_space(&rec, space, tr.m + h);
    let neg = at_m.kernel_tail == 0
        && at_m.middle.iter().all(|vs| {
            vs.iter()
                .take(rec.beta as usize + 1)
                .all(|v| v.iter().all(|x| x.is_nil()))
        });
    Ok(KernelReport {
        space,
        dim: at_m.dim(),
        truncation: tr.m,
        dim_next: at_next.dim(),
        stabilized: at_m.dim() == at_next.dim(),
        negative_part_vanishes: neg,
    })
}

/// Windowed solutions on `[−M, M]`, one per independent solution that is
/// determined by its values near `n = 0`.
pub fn kernel_basis(
    conn: &MatrixConnection,
    space: Space,
    truncation: impl Into<Truncation>,
) -> Result<Vec<SeriesWindow>> {
    let tr = truncation.into();
    check_truncation(conn, tr)?;
    let m = tr.m;
    let rec = Recursion::new(conn, m + 1)?;
    if m <= rec.beta + 1 {
        return Err(invalid!(
            "truncation {m} does not clear the resonant shifts"
        ));
    }
    let solved = solve_space(&rec, space, m);
    let d = rec.dim;
    let beta = rec.beta;
    let mut out = Vec::new();
    for vs in &solved.middle {
        let mut coeffs: BTreeMap<i64, Vec<Q>> = BTreeMap::new();
        for (k, v) in vs.iter().enumerate() {
            coeffs.insert(-beta - 1 + k as i64, v.clone());
        }
        let mut cur = vs.last().unwrap().clone();
        for n in (beta + 1)..=m {
            cur = rec.t(n).mul_vec(&cur);
            coeffs.insert(n, cur.clone());
        }
        let mut cur = vs[0].clone();
        for n in ((-m + 1)..=(-beta - 1)).rev() {
            let prev = if cur.iter().all(|x| x.is_nil()) {
                vec![q(0); d]
            } else if space.free_left() {
                // preimage inside the admissible subspace at n − 1
                let basis = &solved.left[(n - 1 + m) as usize];
                let t = rec.t(n);
                let cols: Vec<Vec<Q>> = basis.iter().map(|b| t.mul_vec(b)).collect();
                let c = Matrix::from_cols(d, &cols)
                    .solve(&cur)
                    .ok_or_else(|| consistency!("left chain broken at index {n}"))?;
                let mut v = vec![q(0); d];
                for (ck, b) in c.iter().zip(basis) {
                    for i in 0..d {
                        v[i] += ck * &b[i];
                    }
                }
                v
            } else {
                return Err(consistency!("nonzero coefficient below a zero boundary"));
            };
            coeffs.insert(n - 1, prev.clone());
            cur = prev;
        }
        out.push(SeriesWindow {
            lo: -m,
            coeffs: coeffs.into_values().collect(),
        });
    }
    Ok(out)
}

/// `(∇f)_n = n v_n + Σ_k A_k v_{n−k}` wherever the window allows.
pub fn apply_connection(conn: &MatrixConnection, f: &SeriesWindow) -> SeriesWindow {
    let lo = f.lo + conn.max_exp().max(0);
    let hi = f.hi() + conn.min_exp().min(0);
    let d = conn.dim;
    let mut coeffs = Vec::new();
    for n in lo..=hi {
        let mut out: Vec<Q> = f.get(n).unwrap().iter().map(|x| x * q(n)).collect();
        for (k, a) in &conn.terms {
            let w = a.mul_vec(f.get(n - k).unwrap());
            for i in 0..d {
                out[i] += &w[i];
            }
        }
        coeffs.push(out);
    }
    SeriesWindow { lo, coeffs }
}

/// `⟨f, ω⟩ = Res_{t=0} (f · ω)` with `ω = Σ ω_m t^m dt/t`; coefficients of
/// `f` outside its window count as zero.
pub fn residue_pair(f: &SeriesWindow, omega: &BTreeMap<i64, Vec<Q>>) -> Q {
    let mut s = q(0);
    for (m, w) in omega {
        if let Some(v) = f.get(-m) {
            for (a, b) in v.iter().zip(w) {
                s += a * b;
            }
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceDims {
    pub two_sided: usize,
    pub taylor0: usize,
    pub taylor_inf: usize,
    pub laurent_polys: usize,
    pub stabilized: bool,
    pub negative_part_vanishes: bool,
}

impl SpaceDims {
    pub fn compute(conn: &MatrixConnection, truncation: impl Into<Truncation>) -> Result<Self> {
        let tr = truncation.into();
        let reports = Space::ALL
            .iter()
            .map(|&s| kernel_dimension(conn, s, tr))
            .collect::<Result<Vec<_>>>()?;
        let by = |s: Space| reports.iter().find(|r| r.space == s).unwrap();
        Ok(SpaceDims {
            two_sided: by(Space::TwoSided).dim,
            taylor0: by(Space::Taylor0).dim,
            taylor_inf: by(Space::TaylorInf).dim,
            laurent_polys: by(Space::LaurentPolys).dim,
            stabilized: reports.iter().all(|r| r.stabilized),
            negative_part_vanishes: by(Space::TwoSided).negative_part_vanishes,
        })
    }

    /// Two-sided solutions modulo the sum of the one-sided ones.
    pub fn middle_quotient(&self) -> i64 {
        self.two_sided as i64 - self.taylor0 as i64 - self.taylor_inf as i64
            + self.laurent_polys as i64
    }

    /// No Laurent-polynomial solutions, and two-sided solutions split
    /// uniquely into the one-sided ones.
    pub fn splits(&self) -> bool {
        self.laurent_polys == 0 && self.two_sided == self.taylor0 + self.taylor_inf
    }

    pub fn to_json(&self) -> Value {
        json!({
            "two_sided": self.two_sided,
            "taylor0": self.taylor0,
            "taylor_inf": self.taylor_inf,
            "laurent_polys": self.laurent_polys,
            "stabilized": self.stabilized,
            "negative_part_vanishes": self.negative_part_vanishes,
        })
    }
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub truncation: i64,
    pub v: SpaceDims,
    pub dual: SpaceDims,
    pub pass: bool,
    pub h1: i64,
}

impl RigidityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "truncation": self.truncation,
            "V": self.v.to_json(),
            "V_dual": self.dual.to_json(),
            "pass": self.pass,
            "h1": self.h1,
        })
    }
}

/// Criteria for vanishing of all cohomology: no Laurent-polynomial
/// solutions for `V` and `V*`, and unique splitting of two-sided solutions
/// into solutions near `0` and near `∞`.
pub fn check_rigidity(
    conn: &MatrixConnection,
    dual: &MatrixConnection,
    truncation: impl Into<Truncation>,
) -> Result<RigidityReport> {
    let tr = truncation.into();
    let v = SpaceDims::compute(conn, tr)?;
    let dv = SpaceDims::compute(dual, tr)?;
    let pass = v.stabilized && dv.stabilized && v.splits() && dv.splits();
    Ok(RigidityReport {
        truncation: tr.m,
        v,
        dual: dv,
        pass,
        h1: v.middle_quotient(),
    })
}

/// `dim H¹` of the intermediate extension from formal solutions, valid
/// when there are no global flat sections.
pub fn h1_middle_via_solver(
    conn: &MatrixConnection,
    dual: &MatrixConnection,
    truncation: impl Into<Truncation>,
) -> Result<i64> {
    let tr = truncation.into();
    let v = SpaceDims::compute(conn, tr)?;
    let dv = SpaceDims::compute(dual, tr)?;
    if !v.stabilized || !dv.stabilized {
        return Err(consistency!(
            "solution dimensions did not stabilize at truncation {}",
            tr.m
        ));
    }
    if v.laurent_polys != 0 || dv.laurent_polys != 0 {
        return Err(invalid!(
            "connection has global flat sections; the quotient formula does not apply"
        ));
    }
    let h1 = v.middle_quotient();
    if h1 < 0 {
        return Err(consistency!("negative middle cohomology {h1}"));
    }
    Ok(h1)
}

/// Checks a solution against the recursion in the principal grading
/// `d = h θ − ad ρ̌`: `m y_m + ρ̌ y_m + h p₁ y_{m−1} = 0` with
/// `p₁ = A₀ + t A₁`, on every component whose neighbours lie in the window.
pub fn principal_grading_check(conn: &MatrixConnection, f: &SeriesWindow) -> Result<bool> {
    let g = conn
        .grading
        .as_ref()
        .ok_or_else(|| invalid!("connection has no ρ̌-grading"))?;
    let h = q(period(conn));
    let a0 = conn.coeff(0);
    let a1 = conn.coeff(1);
    let d = conn.dim;
    for n in (f.lo + 1)..=f.hi() {
        let v = f.get(n).unwrap();
        let prev = f.get(n - 1).unwrap();
        for i in 0..d {
            let m = &h * q(n) - &g[i];
            let mut s = (&m + &g[i]) * &v[i];
            // y_{m−1} on t^n: components with grading g_i + 1
            for j in 0..d {
                if g[j] == &g[i] + q(1) {
                    s += &h * &a0[(i, j)] * &v[j];
                } else if !a0[(i, j)].is_nil() && !v[j].is_nil() {
                    return Ok(false);
                }
                // on t^{n−1}: grading g_i + 1 − h
                if g[j] == &g[i] + q(1) - &h {
                    s += &h * &a1[(i, j)] * &prev[j];
                } else if !a1[(i, j)].is_nil() && !prev[j].is_nil() {
                    return Ok(false);
                }
            }
            if !s.is_nil() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// On the double cover `t = z²` of `Sym^{n−1}`, `n` even: two-sided
/// solutions of `(m − J) y_m = −2(E+F) y_{m−1}` seeded by `y_n` in the even
/// part of `V`, modulo those vanishing for `m ≪ 0`.
pub fn sl2_double_cover_h1(n: usize) -> Result<usize> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid!(
            "double-cover computation needs even n >= 2, got {n}"
        ));
    }
    let k = n - 1;
    let mut ef = Matrix::<Q>::zeros(n, n);
    for i in 1..n {
        ef[(i, i - 1)] = q(1);
        ef[(i - 1, i)] = q((i * (k + 1 - i)) as i64);
    }
    let ef_inv = ef
        .inverse()
        .ok_or_else(|| consistency!("E + F is singular for even n"))?;
    // y_{m−1} = −½ (E+F)⁻¹ (m − J) y_m
    let down = |m: i64, y: &[Q]| -> Vec<Q> {
        let w: Vec<Q> = (0..n).map(|i| (q(m) - q(i as i64 + 1)) * &y[i]).collect();
        ef_inv
            .mul_vec(&w)
            .into_iter()
            .map(|x| x * q(-1) / q(2))
            .collect()
    };
    // J-eigenvalue i+1 is even
    let even: Vec<usize> = (0..n).filter(|i| (i + 1) % 2 == 0).collect();
    let mut images = Vec::new();
    for &e in &even {
        let mut y: Vec<Q> = (0..n).map(|i| if i == e { q(1) } else { q(0) }).collect();
        for m in (1..=n as i64).rev() {
            y = down(m, &y);
        }
        images.push(y);
    }
    let vanishing = even.len() - Matrix::from_cols(n, &images).rank();
    Ok(even.len() - vanishing)
}
