//! Root systems of the simple types, Coxeter elements and the projector onto
//! their primitive eigenspaces.
//!
//! Vectors in the weight lattice are written in the basis of fundamental
//! weights, so `⟨λ, α̌_i⟩` is the `i`-th coordinate. Roots are also kept in
//! the basis of simple roots. Labels follow Bourbaki.

use crate::arith::{cyclotomic, gcd_i64, q, Matrix, Poly, Q};
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_RANK_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(invalid!("unknown Cartan type `{other}`")),
        }
    }
}

/// Checks that `(kind, rank)` names a simple type within the rank bound.
pub fn validate_type(kind: CartanType, rank: usize, bound: usize) -> Result<()> {
    let ok = match kind {
        CartanType::A => rank >= 1,
        CartanType::B | CartanType::C => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    };
    if !ok {
        return Err(invalid!("({kind}, {rank}) is not a simple type"));
    }
    let exceptional = matches!(kind, CartanType::E | CartanType::F | CartanType::G);
    if !exceptional && rank > bound {
        return Err(invalid!(
            "({kind}, {rank}) exceeds the configured rank bound {bound}"
        ));
    }
    Ok(())
}

/// Bourbaki Cartan matrix `a_ij = ⟨α̌_i, α_j⟩` and half squared lengths of
/// the simple roots (short roots have value 1).
fn cartan_data(kind: CartanType, r: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    let mut d = vec![1i64; r];
    match kind {
        CartanType::A => (1..r).for_each(|i| link(i, i + 1)),
        CartanType::B => {
            (1..r).for_each(|i| link(i, i + 1));
            a[r - 1][r - 2] = -2;
            d = (0..r).map(|i| if i + 1 < r { 2 } else { 1 }).collect();
        }
        CartanType::C => {
            (1..r).for_each(|i| link(i, i + 1));
            a[r - 2][r - 1] = -2;
            d = (0..r).map(|i| if i + 1 < r { 1 } else { 2 }).collect();
        }
        CartanType::D => {
            (1..r - 1).for_each(|i| link(i, i + 1));
            link(r - 2, r);
        }
        CartanType::E => {
            link(1, 3);
            link(2, 4);
            (3..r).for_each(|i| link(i, i + 1));
        }
        CartanType::F => {
            link(1, 2);
            link(2, 3);
            link(3, 4);
            a[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        CartanType::G => {
            link(1, 2);
            a[0][1] = -3;
            d = vec![1, 3];
        }
    }
    (a, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    /// Coefficients on the simple roots.
    pub coeffs: Vec<i64>,
    /// Coordinates on the fundamental weights.
    pub weight: Vec<i64>,
    /// Coefficients of the coroot on the simple coroots.
    pub coroot: Vec<i64>,
    pub height: i64,
    /// Half the squared length, short roots having value 1.
    pub half_norm: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystem {
    #[serde(rename = "type")]
    pub kind: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots (short roots = 1).
    pub half_norms: Vec<i64>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    /// Index of the highest root in `positive_roots`.
    pub highest: usize,
    pub exponents: Vec<i64>,
    pub degrees: Vec<i64>,
    pub coxeter_number: i64,
    /// Coefficients of `2ρ̌` on the simple coroots; `⟨μ, 2ρ̌⟩ = Σ μ_j c_j`.
    pub two_rho_check: Vec<i64>,
}

impl RootSystem {
    /// Builds the root system for a simple type, rank at most
    /// [`DEFAULT_RANK_BOUND`] for the classical series.
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        Self::with_bound(kind, rank, DEFAULT_RANK_BOUND)
    }

    pub fn with_bound(kind: CartanType, rank: usize, bound: usize) -> Result<Self> {
        validate_type(kind, rank, bound)?;
        Ok(Self::build(kind, rank))
    }

    /// Builds without validation. Used for auxiliary diagrams such as `D₃`.
    pub(crate) fn build(kind: CartanType, rank: usize) -> Self {
        let (cartan, half_norms) = cartan_data(kind, rank);
        let r = rank;
        let a = &cartan;

        // reflection closure from the simple roots, staying positive
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        let mut all = Vec::new();
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * a[i][j]).sum();
                let mut img = beta.clone();
                img[i] -= pairing;
                if img.iter().all(|&c| c >= 0)
                    && img.iter().any(|&c| c > 0)
                    && !seen.contains_key(&img)
                {
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
            all.push(beta);
        }
        all.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });

        let norm = |k: &[i64]| -> i64 {
            // (α,α)/2 with (α_i,α_j) = d_i a_ij
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += k[i] * k[j] * half_norms[i] * a[i][j];
                }
            }
            s / 2
        };
        let positive_roots: Vec<Root> = all
            .into_iter()
            .map(|k| {
                let hn = norm(&k);
                let weight = (0..r)
                    .map(|j| (0..r).map(|i| k[i] * a[j][i]).sum())
                    .collect();
                let coroot = (0..r).map(|i| k[i] * half_norms[i] / hn).collect();
                Root {
                    height: k.iter().sum(),
                    weight,
                    coroot,
                    half_norm: hn,
                    coeffs: k,
                }
            })
            .collect();
        let highest = positive_roots.len() - 1;
        let h = positive_roots[highest].height + 1;

        // 2ρ̌ = Σ c_i α̌_i with Aᵀ c = 2·1
        let at = Matrix::from_i64(a).transpose();
        let c = at
            .solve(&vec![q(2); r])
            .expect("Cartan matrix is invertible");
        let two_rho_check = c
            .iter()
            .map(|x| crate::arith::q_to_i64(x).expect("2ρ̌ is integral"))
            .collect();

        let mut rs = RootSystem {
            kind,
            rank,
            cartan,
            half_norms,
            positive_roots,
            highest,
            exponents: Vec::new(),
            degrees: Vec::new(),
            coxeter_number: h,
            two_rho_check,
        };
        rs.exponents = rs.exponents_from_coxeter();
        rs.degrees = rs.exponents.iter().map(|m| m + 1).collect();
        rs
    }

    /// Exponents read off the cyclotomic factorization of the Coxeter
    /// element's characteristic polynomial.
    fn exponents_from_coxeter(&self) -> Vec<i64> {
        let h = self.coxeter_number;
        let mut cp = self.coxeter_element().to_q().charpoly();
        let mut ex = Vec::new();
        for d in (1..=h).filter(|d| h % d == 0) {
            let phi = cyclotomic(d as u32);
            let mut mult = 0;
            while cp.degree().unwrap_or(0) > 0 && cp.is_divisible_by(&phi) {
                cp = cp.div_rem(&phi).0;
                mult += 1;
            }
            for m in 1..h {
                if h / gcd_i64(m, h) == d {
                    ex.extend(std::iter::repeat_n(m, mult));
                }
            }
        }
        ex.sort_unstable();
        ex
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn dim_algebra(&self) -> usize {
        self.rank + self.num_roots()
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest]
    }

    pub fn is_simply_laced(&self) -> bool {
        self.half_norms.iter().all(|&d| d == 1)
    }

    /// Largest half-norm, i.e. that of a long root.
    pub fn long_half_norm(&self) -> i64 {
        *self.half_norms.iter().max().unwrap()
    }

    /// Index of a positive root given by its simple-root coefficients.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.coeffs == coeffs)
    }

    /// `|W| = ∏ d_i`.
    pub fn weyl_order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    pub fn rho_check(&self) -> Vec<Q> {
        self.two_rho_check.iter().map(|&c| q(c) / q(2)).collect()
    }

    /// `⟨μ, 2ρ̌⟩` for `μ` in fundamental-weight coordinates.
    pub fn a_value(&self, mu: &[i64]) -> i64 {
        mu.iter().zip(&self.two_rho_check).map(|(m, c)| m * c).sum()
    }

    /// Simple reflection `s_i` on fundamental-weight coordinates.
    pub fn reflect(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let k = mu[i];
        (0..self.rank)
            .map(|j| mu[j] - k * self.cartan[j][i])
            .collect()
    }

    /// Matrix of `s_i` on fundamental-weight coordinates.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank;
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|k| {
                        let id = i64::from(j == k);
                        if k == i {
                            id - self.cartan[j][i]
                        } else {
                            id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Coxeter element `s₁s₂…s_r`.
    pub fn coxeter_element(&self) -> CoxeterElement {
        let mut m = Matrix::<Q>::identity(self.rank);
        for i in 0..self.rank {
            m = m.mul(&Matrix::from_i64(&self.reflection_matrix(i)));
        }
        let matrix: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| crate::arith::q_to_i64(&m[(i, j)]).unwrap())
                    .collect()
            })
            .collect();
        let mut order = 1;
        let mut p = m.clone();
        while p != Matrix::identity(self.rank) {
            p = p.mul(&m);
            order += 1;
        }
        CoxeterElement { matrix, order }
    }

    /// Weyl dimension formula `∏_{α>0} ⟨λ+ρ, α̌⟩ / ⟨ρ, α̌⟩`.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> num_bigint::BigInt {
        let mut num = q(1);
        for root in &self.positive_roots {
            let top: i64 = (0..self.rank)
                .map(|i| root.coroot[i] * (lambda[i] + 1))
                .sum();
            let bot: i64 = root.coroot.iter().sum();
            num *= q(top) / q(bot);
        }
        assert!(num.is_integer());
        num.to_integer()
    }
}

/// A Coxeter element acting on the weight lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterElement {
    pub matrix: Vec<Vec<i64>>,
    pub order: i64,
}

impl CoxeterElement {
    pub fn to_q(&self) -> Matrix<Q> {
        Matrix::from_i64(&self.matrix)
    }

    /// Projector onto the sum of eigenspaces with primitive `h`-th roots of
    /// unity as eigenvalues, as a polynomial in the element.
    pub fn primitive_projector(&self, h: i64) -> Matrix<Q> {
        let phi = cyclotomic(h as u32);
        let xh = Poly::monomial(q(1), h as usize).sub(&Poly::one());
        let rest = xh.div_rem(&phi).0;
        let (g, u, _) = rest.xgcd(&phi);
        debug_assert_eq!(g, Poly::one());
        self.to_q().eval_poly(&u.mul(&rest))
    }
}
