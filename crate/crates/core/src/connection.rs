//! Matrix connections `∇_{θ} = θ + A(t)`, `θ = t d/dt`, with `A(t)` a
//! Laurent polynomial matrix; gauge transformations, reduction to a scalar
//! operator, and the slope at `t = ∞`.

use crate::arith::{fmt_q, q, Field, Laurent, Matrix, Poly, RatFunc, Q};
use crate::chevalley::ChevalleyAlgebra;
use crate::error::{consistency, invalid, Result};
use crate::rootsys::{CartanType, RootSystem};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// The explicit connections that can be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnCase {
    /// Standard representation of `SL_n`.
    StandardSl(usize),
    /// Standard representation of `Sp_n`, `n` even.
    StandardSp(usize),
    /// Standard representation of `SO_n`, `n` odd.
    StandardSo(usize),
    /// The 7-dimensional representation of `G₂`.
    G2Seven,
    Adjoint(CartanType, usize),
    /// `Sym^k` of the standard representation of `SL₂`.
    Sl2Sym(usize),
}

pub const SUPPORTED_CASES: &str =
    "standard SL_n (n>=2), standard Sp_2m (m>=1), standard SO_2m+1 (m>=1), G2 dim 7, adjoint of any supported type, SL_2 Sym^k (k>=1)";

impl fmt::Display for ConnCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnCase::StandardSl(n) => write!(f, "SL{n} standard"),
            ConnCase::StandardSp(n) => write!(f, "Sp{n} standard"),
            ConnCase::StandardSo(n) => write!(f, "SO{n} standard"),
            ConnCase::G2Seven => write!(f, "G2 dim 7"),
            ConnCase::Adjoint(k, r) => write!(f, "{k}{r} adjoint"),
            ConnCase::Sl2Sym(k) => write!(f, "SL2 Sym^{k}"),
        }
    }
}

impl ConnCase {
    /// Lie type and rank of the group.
    pub fn group(&self) -> (CartanType, usize) {
        match *self {
            ConnCase::StandardSl(n) => (CartanType::A, n - 1),
            ConnCase::StandardSp(n) => (CartanType::C, n / 2),
            ConnCase::StandardSo(n) => (CartanType::B, (n - 1) / 2),
            ConnCase::G2Seven => (CartanType::G, 2),
            ConnCase::Adjoint(k, r) => (k, r),
            ConnCase::Sl2Sym(_) => (CartanType::A, 1),
        }
    }

    /// Highest weight of the representation, in fundamental-weight coordinates.
    pub fn highest_weight(&self) -> Result<Vec<i64>> {
        let (k, r) = self.group();
        let mut lam = vec![0; r];
        match *self {
            ConnCase::StandardSl(_)
            | ConnCase::StandardSp(_)
            | ConnCase::StandardSo(_)
            | ConnCase::G2Seven => lam[0] = 1,
            ConnCase::Sl2Sym(m) => lam[0] = m as i64,
            ConnCase::Adjoint(..) => {
                return Ok(RootSystem::with_bound(k, r, r.max(8))?
                    .highest_root()
                    .weight
                    .clone())
            }
        }
        // the 3-dimensional SO_3 module is Sym^2 of SL_2
        if let ConnCase::StandardSo(3) = self {
            lam[0] = 2;
        }
        Ok(lam)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ConnCase::StandardSl(n) => n >= 2,
            ConnCase::StandardSp(n) => n >= 2 && n % 2 == 0,
            ConnCase::StandardSo(n) => n >= 3 && n % 2 == 1,
            ConnCase::G2Seven => true,
            ConnCase::Adjoint(..) => true,
            ConnCase::Sl2Sym(k) => k >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid!(
                "unsupported case {self}; supported: {SUPPORTED_CASES}"
            ))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixConnection {
    pub dim: usize,
    /// `A(t) = Σ_k terms[k] t^k`; zero matrices are not stored.
    pub terms: BTreeMap<i64, Matrix<Q>>,
    pub label: String,
    /// `ad ρ̌` eigenvalue on each basis vector, when known.
    pub grading: Option<Vec<Q>>,
    pub coxeter_number: Option<i64>,
}

fn shift_matrix(n: usize) -> Matrix<Q> {
    Matrix::from_fn(n, n, |i, j| if i == j + 1 { q(1) } else { q(0) })
}

fn chain_grading(n: usize) -> Vec<Q> {
    (0..n)
        .map(|i| q(n as i64 - 1) / q(2) - q(i as i64))
        .collect()
}

impl MatrixConnection {
    pub fn from_terms(label: impl Into<String>, terms: BTreeMap<i64, Matrix<Q>>) -> Self {
        let dim = terms.values().next().map_or(0, |m| m.rows());
        let terms = terms.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        MatrixConnection {
            dim,
            terms,
            label: label.into(),
            grading: None,
            coxeter_number: None,
        }
    }

    /// `A(t) = N(V) + t·E(V)` for one of the supported cases.
    pub fn build(case: ConnCase) -> Result<Self> {
        case.validate()?;
        let (n_mat, e_mat, grading, h) = match case {
            ConnCase::StandardSl(n) | ConnCase::StandardSp(n) => {
                let mut e = Matrix::zeros(n, n);
                e[(0, n - 1)] = q(1);
                (shift_matrix(n), e, chain_grading(n), n as i64)
            }
            ConnCase::StandardSo(n) => {
                let mut e = Matrix::zeros(n, n);
                e[(0, n - 2)] = q(1);
                e[(1, n - 1)] = q(1);
                (shift_matrix(n), e, chain_grading(n), n as i64 - 1)
            }
            ConnCase::G2Seven => {
                let mut e = Matrix::zeros(7, 7);
                e[(0, 5)] = q(1);
                e[(1, 6)] = q(1);
                (shift_matrix(7), e, chain_grading(7), 6)
            }
            ConnCase::Sl2Sym(k) => {
                let n = k + 1;
                let mut e = Matrix::zeros(n, n);
                for i in 1..n {
                    e[(i - 1, i)] = q((i * (k + 1 - i)) as i64);
                }
                (shift_matrix(n), e, chain_grading(n), 2)
            }
            ConnCase::Adjoint(kind, rank) => {
                let rs = RootSystem::with_bound(kind, rank, rank.max(8))?;
                let alg = ChevalleyAlgebra::new(&rs)?;
                return Ok(Self::adjoint(&alg));
            }
        };
        let mut terms = BTreeMap::new();
        terms.insert(0, n_mat);
        terms.insert(1, e_mat);
        let mut c = Self::from_terms(case.to_string(), terms);
        c.grading = Some(grading);
        c.coxeter_number = Some(h);
        Ok(c)
    }

    /// `A(t) = ad N + t·ad E` on the Chevalley basis.
    pub fn adjoint(alg: &ChevalleyAlgebra) -> Self {
        let tri = alg.principal_triple();
        let mut terms = BTreeMap::new();
        terms.insert(0, alg.ad_matrix(&tri.n));
        terms.insert(1, alg.ad_matrix(&tri.e));
        let mut c = Self::from_terms(format!("{} adjoint", alg.rs.label()), terms);
        c.grading = Some(tri.rho_grading.iter().map(|&g| q(g)).collect());
        c.coxeter_number = Some(alg.rs.coxeter_number);
        c
    }

    /// Coefficient of `t^k`, zero if absent.
    pub fn coeff(&self, k: i64) -> Matrix<Q> {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
    }

    pub fn entry(&self, i: usize, j: usize) -> Laurent {
        let mut l = Laurent::zero();
        for (k, m) in &self.terms {
            l.add_term(*k, m[(i, j)].clone());
        }
        l
    }

    pub fn min_exp(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(0)
    }

    pub fn max_exp(&self) -> i64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale(&self, c: &Q) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(k, m)| {
                let f = Laurent::monomial(q(1), *k).rescale(c).coeff(*k);
                (*k, m.scale(&f))
            })
            .collect();
        out
    }

    /// Katz's normalization `t ↦ −t/2`.
    pub fn katz_rescaled(&self) -> Self {
        let mut c = self.rescale(&(q(-1) / q(2)));
        c.label = format!("{} (t -> -t/2)", self.label);
        c
    }

    /// The dual connection `θ − A(t)ᵀ`.
    pub fn dual(&self) -> Self {
        let mut c = self.clone();
        c.terms = self
            .terms
            .iter()
            .map(|(k, m)| (*k, m.transpose().neg()))
            .collect();
        c.grading = self
            .grading
            .as_ref()
            .map(|g| g.iter().map(|x| -x).collect());
        c.label = format!("{} dual", self.label);
        c
    }

    fn to_ratfunc_matrix(&self) -> Matrix<RatFunc> {
        Matrix::from_fn(self.dim, self.dim, |i, j| self.entry(i, j).to_ratfunc())
    }

    fn from_ratfunc_matrix(&self, m: &Matrix<RatFunc>, label: String) -> Result<Self> {
        let mut terms: BTreeMap<i64, Matrix<Q>> = BTreeMap::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let l = Laurent::from_ratfunc(&m[(i, j)])
                    .ok_or_else(|| consistency!("gauge result is not a Laurent polynomial"))?;
                for (k, c) in l.terms() {
                    terms
                        .entry(k)
                        .or_insert_with(|| Matrix::zeros(self.dim, self.dim))[(i, j)] = c.clone();
                }
            }
        }
        let mut c = Self::from_terms(label, terms);
        c.dim = self.dim;
        Ok(c)
    }

    /// Gauge transformation by `g(t)`: solutions transform as `f ↦ g f`,
    /// so `A ↦ g A g⁻¹ − θ(g) g⁻¹`.
    pub fn gauge_transform(&self, g: &BTreeMap<i64, Matrix<Q>>) -> Result<Self> {
        let n = self.dim;
        let gm: Matrix<RatFunc> = Matrix::from_fn(n, n, |i, j| {
            let mut l = Laurent::zero();
            for (k, m) in g {
                l.add_term(*k, m[(i, j)].clone());
            }
            l.to_ratfunc()
        });
        let det = gm.determinant();
        let is_unit =
            !det.is_nil() && det.num().degree() == det.num().valuation() && det.is_laurent();
        if !is_unit {
            return Err(invalid!(
                "gauge matrix determinant {det:?} is not a unit of the Laurent ring"
            ));
        }
        let ginv = gm.inverse().expect("determinant is nonzero");
        let theta_g = gm.map(|x| x.theta());
        let a = self.to_ratfunc_matrix();
        let new = gm.mul(&a).mul(&ginv).sub(&theta_g.mul(&ginv));
        let mut c = self.from_ratfunc_matrix(&new, format!("{} (gauged)", self.label))?;
        c.coxeter_number = self.coxeter_number;
        Ok(c)
    }

    /// Scalar operator satisfied by the solution coordinate `y = ℓ·f`,
    /// where `ℓ` is the covector picking basis coordinate `coord`.
    ///
    /// Iterates `ℓ_{k+1} = θ(ℓ_k) − ℓ_k A` over rational functions; the
    /// relation expressing `ℓ_n` through `ℓ_0..ℓ_{n-1}` is the operator.
    pub fn scalar_reduction(&self, coord: usize) -> Result<ScalarOperator> {
        let n = self.dim;
        if coord >= n {
            return Err(invalid!(
                "coordinate {coord} out of range for dimension {n}"
            ));
        }
        let a = self.to_ratfunc_matrix();
        let mut rows: Vec<Vec<RatFunc>> = Vec::with_capacity(n + 1);
        let mut ell = vec![RatFunc::nil(); n];
        ell[coord] = RatFunc::unit();
        rows.push(ell.clone());
        for _ in 0..n {
            let la = a.vec_mul(&ell);
            ell = ell
                .iter()
                .zip(&la)
                .map(|(x, y)| x.theta().minus(y))
                .collect();
            rows.push(ell.clone());
        }
        let basis = Matrix::from_rows(rows[..n].to_vec());
        let rank = basis.rank();
        if rank < n {
            return Err(invalid!(
                "coordinate {coord} is not cyclic: the iterated covectors span rank {rank} < {n}"
            ));
        }
        // ℓ_n = Σ b_i ℓ_i  ⇔  bᵀ · basis = ℓ_n
        let b = basis
            .transpose()
            .solve(&rows[n])
            .ok_or_else(|| consistency!("full-rank system without solution"))?;
        let coeffs: Vec<RatFunc> = b.iter().map(|x| x.negated()).collect();
        Ok(ScalarOperator { order: n, coeffs })
    }

    /// Slope at `t = ∞` after `s = 1/t`, `u^h = s` and the gauge `u^{ρ̌}`.
    pub fn slope_at_infinity(&self) -> Result<SlopeReport> {
        let grading = self
            .grading
            .as_ref()
            .ok_or_else(|| invalid!("connection `{}` has no ρ̌-grading", self.label))?;
        let h = self
            .coxeter_number
            .ok_or_else(|| invalid!("connection `{}` has no Coxeter number", self.label))?;
        // θ_t = −(1/h) θ_u, so θ_t + A becomes θ_u − h A(u^{-h}); the gauge
        // by diag(u^{g_i}) multiplies entry (i,j) by u^{g_i − g_j} and
        // subtracts diag(g_i).
        let mut c: BTreeMap<Q, Matrix<Q>> = BTreeMap::new();
        let n = self.dim;
        for (k, m) in &self.terms {
            for i in 0..n {
                for j in 0..n {
                    if m[(i, j)].is_nil() {
                        continue;
                    }
                    let e = q(-h * k) + &grading[i] - &grading[j];
                    let slot = c.entry(e).or_insert_with(|| Matrix::zeros(n, n));
                    slot[(i, j)] -= q(h) * &m[(i, j)];
                }
            }
        }
        let zero = c.entry(q(0)).or_insert_with(|| Matrix::zeros(n, n));
        for i in 0..n {
            zero[(i, i)] -= &grading[i];
        }
        c.retain(|_, m| !m.is_zero());
        let (lowest, leading) = c
            .iter()
            .next()
            .map(|(e, m)| (e.clone(), m.clone()))
            .ok_or_else(|| consistency!("connection vanished after gauge"))?;
        if !lowest.is_integer() {
            return Err(consistency!(
                "non-integral exponent {} after the ramified gauge",
                fmt_q(&lowest)
            ));
        }
        if lowest >= q(0) {
            return Ok(SlopeReport {
                slope: q(0),
                pole_order: q(0),
                leading_minpoly: leading.minpoly(),
                leading_kernel_dim: n - leading.rank(),
            });
        }
        let minpoly = leading.minpoly();
        let nilpotent = minpoly.coeffs().iter().rev().skip(1).all(|x| x.is_nil());
        if nilpotent || !minpoly.is_squarefree() {
            return Err(consistency!(
                "leading term at infinity is not regular semisimple (minimal polynomial {})",
                minpoly.display("x")
            ));
        }
        Ok(SlopeReport {
            slope: -lowest.clone() / q(h),
            pole_order: -lowest,
            leading_minpoly: minpoly,
            leading_kernel_dim: n - leading.rank(),
        })
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<Value>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| json!(self.entry(i, j).to_string_map()))
                    .collect()
            })
            .collect();
        json!({
            "label": self.label,
            "dim": self.dim,
            "matrix": entries,
        })
    }

    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.entry(i, j).display("t"))
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(&format!("[ {} ]\n", padded.join("  ")));
        }
        out
    }
}

/// `θⁿ + Σ c_i(t) θ^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarOperator {
    pub order: usize,
    pub coeffs: Vec<RatFunc>,
}

impl ScalarOperator {
    pub fn from_laurent(coeffs: Vec<Laurent>) -> Self {
        ScalarOperator {
            order: coeffs.len(),
            coeffs: coeffs.iter().map(Laurent::to_ratfunc).collect(),
        }
    }

    /// Coefficients as Laurent polynomials, when no other denominators occur.
    pub fn laurent_coeffs(&self) -> Option<Vec<Laurent>> {
        self.coeffs.iter().map(Laurent::from_ratfunc).collect()
    }

    /// Companion connection with 1's below the diagonal and the
    /// coefficients in the first row, whose last coordinate satisfies this
    /// operator.
    pub fn companion(&self) -> Result<MatrixConnection> {
        let n = self.order;
        let coeffs = self
            .laurent_coeffs()
            .ok_or_else(|| invalid!("operator coefficients are not Laurent polynomials"))?;
        let mut terms: BTreeMap<i64, Matrix<Q>> = BTreeMap::new();
        terms.insert(0, shift_matrix(n));
        for (i, c) in coeffs.iter().enumerate() {
            // first-row entry in column n-i (1-based) is −(−1)^{n+i} c_i
            let sign = if (n + i) % 2 == 0 { q(-1) } else { q(1) };
            for (k, x) in c.terms() {
                terms.entry(k).or_insert_with(|| Matrix::zeros(n, n))[(0, n - 1 - i)] += &sign * x;
            }
        }
        let mut conn = MatrixConnection::from_terms("companion", terms);
        conn.dim = n;
        Ok(conn)
    }

    pub fn render(&self) -> String {
        let mut parts = vec![format!("θ^{}", self.order)];
        for i in (0..self.order).rev() {
            let c = &self.coeffs[i];
            if c.is_nil() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{i}"),
            };
            let coef = match Laurent::from_ratfunc(c) {
                Some(l) => l.display("t"),
                None => format!("{c:?}"),
            };
            let term = if mono.is_empty() {
                format!("({coef})")
            } else {
                format!("({coef})*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| match Laurent::from_ratfunc(c) {
                Some(l) => json!(l.to_string_map()),
                None => json!({
                    "num": poly_strings(c.num()),
                    "den": poly_strings(c.den()),
                }),
            })
            .collect();
        json!({ "order": self.order, "variable": "theta = t d/dt", "coeffs": coeffs })
    }
}

fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(fmt_q).collect()
}

#[derive(Clone, Debug)]
pub struct SlopeReport {
    pub slope: Q,
    /// Pole order in `u` of the `θ_u`-form after the ramified gauge.
    pub pole_order: Q,
    pub leading_minpoly: Poly,
    pub leading_kernel_dim: usize,
}

impl SlopeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "slope": fmt_q(&self.slope),
            "pole_order": fmt_q(&self.pole_order),
            "leading_minpoly": poly_strings(&self.leading_minpoly),
            "leading_kernel_dim": self.leading_kernel_dim,
        })
    }
}
