//! Integral Chevalley bases, the principal nilpotent `N`, the highest root
//! vector `E`, and checks on the principal grading of the loop algebra.
//!
//! Simply-laced algebras are built from a bimultiplicative sign cocycle on
//! the root lattice (the Frenkel-Kac construction). `B_n`, `C_n`, `F₄` and
//! `G₂` are obtained as fixed points of a diagram automorphism of
//! `D_{n+1}`, `A_{2n-1}`, `E₆` and `D₄`, with the cocycle chosen invariant
//! under the automorphism. Root vectors of the folded algebra are orbit sums.
//!
//! Basis order: `e_α` by decreasing height, then `h_1..h_r`, then `f_α` by
//! increasing height, so `ad ρ̌` is diagonal and non-increasing.

use crate::arith::{q, Field, Matrix, Q};
use crate::error::{consistency, invalid, Result};
use crate::rootsys::{CartanType, RootSystem};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasisElt {
    /// Positive root vector, by index into `positive_roots`.
    E(usize),
    H(usize),
    /// Negative root vector.
    F(usize),
}

type Sparse = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub rs: RootSystem,
    basis: Vec<BasisElt>,
    /// `table[a * dim + b]` = `[b_a, b_b]` as sparse integer combination.
    table: Vec<Sparse>,
    /// Nonzero entries of the invariant form, normalized by `κ(e_θ, f_θ) = 1`.
    kappa: HashMap<(usize, usize), i64>,
    /// `tr(ad e_θ ad f_θ)`: the Killing form is this multiple of `κ`.
    pub killing_scale: i64,
}

/// Diagram folding data: source simply-laced type and the node orbits
/// (1-based source nodes) that become the target's simple roots.
pub(crate) fn folding(kind: CartanType, r: usize) -> (CartanType, usize, Vec<Vec<usize>>) {
    match kind {
        CartanType::B => {
            let mut orbits: Vec<Vec<usize>> = (1..r).map(|j| vec![j]).collect();
            orbits.push(vec![r, r + 1]);
            (CartanType::D, r + 1, orbits)
        }
        CartanType::C => {
            let mut orbits: Vec<Vec<usize>> = (1..r).map(|j| vec![j, 2 * r - j]).collect();
            orbits.push(vec![r]);
            (CartanType::A, 2 * r - 1, orbits)
        }
        CartanType::F => (
            CartanType::E,
            6,
            vec![vec![2], vec![4], vec![3, 5], vec![1, 6]],
        ),
        CartanType::G => (CartanType::D, 4, vec![vec![1, 3, 4], vec![2]]),
        _ => (kind, r, (1..=r).map(|j| vec![j]).collect()),
    }
}

/// Orientation of the Dynkin diagram of a simply-laced type, as the set of
/// oriented edges `i → j` (1-based). Chosen invariant under the diagram
/// automorphisms used for folding.
fn orientation(kind: CartanType, r: usize) -> Vec<(usize, usize)> {
    match kind {
        CartanType::A => {
            let mid = r.div_ceil(2);
            (1..r)
                .map(|i| if i < mid { (i, i + 1) } else { (i + 1, i) })
                .collect()
        }
        CartanType::D if r == 3 => vec![(1, 2), (1, 3)],
        CartanType::D => {
            let mut e = vec![(2, 1)];
            e.extend((2..r - 1).map(|i| (i, i + 1)));
            e.push((r - 2, r));
            e
        }
        CartanType::E if r == 6 => vec![(1, 3), (3, 4), (5, 4), (6, 5), (2, 4)],
        CartanType::E => {
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..r).map(|i| (i, i + 1)));
            e
        }
        _ => unreachable!("orientation is only needed for simply-laced types"),
    }
}

/// The simply-laced algebra in the Frenkel-Kac basis `X_α`, `h_i`.
struct SimplyLaced {
    rs: RootSystem,
    /// bilinear form whose parity gives the cocycle
    m: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
}

impl SimplyLaced {
    fn new(kind: CartanType, r: usize) -> Self {
        let rs = RootSystem::build(kind, r);
        let mut m = vec![vec![0; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, j) in orientation(kind, r) {
            m[i - 1][j - 1] = 1;
        }
        let root_index = rs
            .positive_roots
            .iter()
            .enumerate()
            .map(|(p, root)| (root.coeffs.clone(), p))
            .collect();
        SimplyLaced { rs, m, root_index }
    }

    fn npos(&self) -> usize {
        self.rs.positive_roots.len()
    }

    /// Basis: `X_{+p}` = p, `X_{-p}` = P + p, `h_i` = 2P + i.
    fn root_of(&self, idx: usize) -> Option<Vec<i64>> {
        let p = self.npos();
        if idx < p {
            Some(self.rs.positive_roots[idx].coeffs.clone())
        } else if idx < 2 * p {
            Some(
                self.rs.positive_roots[idx - p]
                    .coeffs
                    .iter()
                    .map(|c| -c)
                    .collect(),
            )
        } else {
            None
        }
    }

    fn index_of_root(&self, coeffs: &[i64]) -> Option<usize> {
        if coeffs.iter().all(|&c| c >= 0) {
            self.root_index.get(coeffs).copied()
        } else {
            let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
            self.root_index.get(&neg).map(|p| p + self.npos())
        }
    }

    fn cocycle(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = a.len();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += a[i] * self.m[i][j] * b[j];
            }
        }
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn bracket(&self, x: usize, y: usize) -> Sparse {
        let r = self.rs.rank;
        let two_p = 2 * self.npos();
        let cartan = &self.rs.cartan;
        match (self.root_of(x), self.root_of(y)) {
            (None, None) => vec![],
            (None, Some(b)) => {
                let i = x - two_p;
                let c: i64 = (0..r).map(|j| b[j] * cartan[i][j]).sum();
                if c == 0 {
                    vec![]
                } else {
                    vec![(y, c)]
                }
            }
            (Some(a), None) => {
                let i = y - two_p;
                let c: i64 = (0..r).map(|j| a[j] * cartan[i][j]).sum();
                if c == 0 {
                    vec![]
                } else {
                    vec![(x, -c)]
                }
            }
            (Some(a), Some(b)) => {
                let sum: Vec<i64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
                if sum.iter().all(|&c| c == 0) {
                    // [X_α, X_{-α}] = α̌, coroot coefficients equal root coefficients
                    return (0..r)
                        .filter(|&i| a[i] != 0)
                        .map(|i| (two_p + i, a[i]))
                        .collect();
                }
                let Some(z) = self.index_of_root(&sum) else {
                    return vec![];
                };
                let sign = |v: &[i64]| if v.iter().all(|&c| c >= 0) { 1 } else { -1 };
                let n = sign(&a) * sign(&b) * sign(&sum) * self.cocycle(&a, &b);
                vec![(z, n)]
            }
        }
    }
}

fn add_into(acc: &mut HashMap<usize, i64>, terms: &[(usize, i64)], scale: i64) {
    for &(k, c) in terms {
        *acc.entry(k).or_insert(0) += c * scale;
    }
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let r = rs.rank;
        let npos = rs.positive_roots.len();
        let (src_kind, src_rank, orbits) = folding(rs.kind, r);
        let src = SimplyLaced::new(src_kind, src_rank);
        let sp = src.npos();

        // target positive root index for each source positive root
        let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); npos];
        for (p, root) in src.rs.positive_roots.iter().enumerate() {
            let folded: Vec<i64> = orbits
                .iter()
                .map(|orb| orb.iter().map(|&i| root.coeffs[i - 1]).sum())
                .collect();
            let g = rs.root_index(&folded).ok_or_else(|| {
                consistency!("folded root {folded:?} is not a root of {}", rs.label())
            })?;
            fibers[g].push(p);
        }

        let mut basis = Vec::with_capacity(r + 2 * npos);
        basis.extend((0..npos).rev().map(BasisElt::E));
        basis.extend((0..r).map(BasisElt::H));
        basis.extend((0..npos).map(BasisElt::F));
        let dim = basis.len();
        let position: HashMap<BasisElt, usize> =
            basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();

        let embed = |b: BasisElt| -> Vec<(usize, i64)> {
            match b {
                BasisElt::E(g) => fibers[g].iter().map(|&p| (p, 1)).collect(),
                BasisElt::F(g) => fibers[g].iter().map(|&p| (sp + p, 1)).collect(),
                BasisElt::H(j) => orbits[j].iter().map(|&i| (2 * sp + i - 1, 1)).collect(),
            }
        };
        // source index -> (target basis element, representative flag)
        let mut project: HashMap<usize, usize> = HashMap::new();
        for (t, b) in basis.iter().enumerate() {
            for (s, _) in embed(*b) {
                project.insert(s, t);
            }
        }

        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            let ea = embed(basis[a]);
            for b in 0..dim {
                let eb = embed(basis[b]);
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(x, cx) in &ea {
                    for &(y, cy) in &eb {
                        add_into(&mut acc, &src.bracket(x, y), cx * cy);
                    }
                }
                acc.retain(|_, c| *c != 0);
                // read off target coordinates and check the result is in the
                // fixed-point subalgebra
                let mut out: HashMap<usize, i64> = HashMap::new();
                for (&s, &c) in &acc {
                    let t = *project
                        .get(&s)
                        .ok_or_else(|| consistency!("bracket leaves the folded basis"))?;
                    match out.get(&t) {
                        Some(&prev) if prev != c => {
                            return Err(consistency!(
                                "bracket of {:?} and {:?} is not invariant",
                                basis[a],
                                basis[b]
                            ));
                        }
                        _ => {
                            out.insert(t, c);
                        }
                    }
                }
                for &t in out.keys() {
                    if !embed(basis[t]).iter().all(|(s, _)| acc.contains_key(s)) {
                        return Err(consistency!("bracket is not an orbit sum"));
                    }
                }
                let mut sparse: Sparse = out.into_iter().collect();
                sparse.sort_unstable();
                table.push(sparse);
            }
        }

        let long = rs.long_half_norm();
        let mut kappa = HashMap::new();
        for g in 0..npos {
            let hn = rs.positive_roots[g].half_norm;
            let v = long / hn;
            let (e, f) = (position[&BasisElt::E(g)], position[&BasisElt::F(g)]);
            kappa.insert((e, f), v);
            kappa.insert((f, e), v);
        }
        for i in 0..r {
            for j in 0..r {
                let v = rs.cartan[i][j] * long / rs.half_norms[j];
                if v != 0 {
                    kappa.insert((position[&BasisElt::H(i)], position[&BasisElt::H(j)]), v);
                }
            }
        }

        let mut alg = ChevalleyAlgebra {
            rs: rs.clone(),
            basis,
            table,
            kappa,
            killing_scale: 0,
        };
        let et = alg.basis_vector(BasisElt::E(rs.highest));
        let ft = alg.basis_vector(BasisElt::F(rs.highest));
        let killing = alg.ad_matrix(&et).mul(&alg.ad_matrix(&ft)).trace();
        alg.killing_scale = crate::arith::q_to_i64(&killing)
            .ok_or_else(|| consistency!("non-integral Killing form"))?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElt] {
        &self.basis
    }

    pub fn index_of(&self, b: BasisElt) -> usize {
        let npos = self.rs.positive_roots.len();
        match b {
            BasisElt::E(g) => npos - 1 - g,
            BasisElt::H(i) => npos + i,
            BasisElt::F(g) => npos + self.rs.rank + g,
        }
    }

    pub fn basis_vector(&self, b: BasisElt) -> Vec<Q> {
        let mut v = vec![q(0); self.dim()];
        v[self.index_of(b)] = q(1);
        v
    }

    /// `[b_a, b_b]` as a sparse integer combination of basis indices.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim() + b]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![q(0); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_nil() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_nil() {
                    continue;
                }
                let c = xa * yb;
                for &(k, s) in self.bracket_basis(a, b) {
                    out[k] += &c * q(s);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` on the Chevalley basis (column `b` is `[x, b_b]`).
    pub fn ad_matrix(&self, x: &[Q]) -> Matrix<Q> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_nil() {
                continue;
            }
            for b in 0..n {
                for &(k, s) in self.bracket_basis(a, b) {
                    m[(k, b)] += xa * q(s);
                }
            }
        }
        m
    }

    /// The invariant form on basis indices.
    pub fn kappa_basis(&self, a: usize, b: usize) -> i64 {
        self.kappa.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn kappa(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = q(0);
        for (&(a, b), &v) in &self.kappa {
            if !x[a].is_nil() && !y[b].is_nil() {
                s += &x[a] * &y[b] * q(v);
            }
        }
        s
    }

    /// Eigenvalue of `ad ρ̌` on a basis element.
    pub fn grade(&self, idx: usize) -> i64 {
        match self.basis[idx] {
            BasisElt::E(g) => self.rs.positive_roots[g].height,
            BasisElt::H(_) => 0,
            BasisElt::F(g) => -self.rs.positive_roots[g].height,
        }
    }

    pub fn principal_triple(&self) -> PrincipalTriple {
        let mut n = vec![q(0); self.dim()];
        for i in 0..self.rs.rank {
            let mut e = vec![0; self.rs.rank];
            e[i] = 1;
            let g = self.rs.root_index(&e).expect("simple root");
            n[self.index_of(BasisElt::F(g))] = q(1);
        }
        PrincipalTriple {
            n,
            e: self.basis_vector(BasisElt::E(self.rs.highest)),
            rho_grading: (0..self.dim()).map(|i| self.grade(i)).collect(),
        }
    }

    /// Sparse matrix blocks of `ad(N+E)` between principal-grading classes:
    /// `blocks[c]` maps class `c` (basis with `grade ≡ c mod h`) to class `c-1`.
    fn graded_blocks(&self) -> (Vec<Vec<usize>>, Vec<Matrix<Q>>) {
        let h = self.rs.coxeter_number;
        let tri = self.principal_triple();
        let x: Vec<Q> = tri.n.iter().zip(&tri.e).map(|(a, b)| a + b).collect();
        let ad = self.ad_matrix(&x);
        let classes: Vec<Vec<usize>> = (0..h)
            .map(|c| {
                (0..self.dim())
                    .filter(|&i| self.grade(i).rem_euclid(h) == c)
                    .collect()
            })
            .collect();
        let blocks = (0..h as usize)
            .map(|c| {
                let src = &classes[c];
                let dst = &classes[(c + h as usize - 1) % h as usize];
                Matrix::from_fn(dst.len(), src.len(), |i, j| ad[(dst[i], src[j])].clone())
            })
            .collect();
        (classes, blocks)
    }

    /// Kernel dimension and semisimplicity of `ad(N+E)`, computed blockwise
    /// on the principal grading modulo `h`.
    pub fn kostant_check(&self) -> KostantReport {
        let h = self.rs.coxeter_number as usize;
        let (classes, blocks) = self.graded_blocks();
        let kernel_dim: usize = (0..h).map(|c| classes[c].len() - blocks[c].rank()).sum();
        let kernel_sq: usize = (0..h)
            .map(|c| {
                let prev = (c + h - 1) % h;
                classes[c].len() - blocks[prev].mul(&blocks[c]).rank()
            })
            .sum();
        let mut squarefree = kernel_dim == kernel_sq;
        for c in 0..h {
            if classes[c].is_empty() {
                continue;
            }
            // (ad X)^h restricted to class c
            let mut m = Matrix::<Q>::identity(classes[c].len());
            let mut cur = c;
            for _ in 0..h {
                m = blocks[cur].mul(&m);
                cur = (cur + h - 1) % h;
            }
            squarefree &= m.minpoly().is_squarefree();
        }
        KostantReport {
            kernel_dim,
            minpoly_squarefree: squarefree,
        }
    }

    /// Kac's decomposition of the loop algebra slices `L_m`, `|m| ≤ D`,
    /// under `ad p₁` with `p₁ = N + E·t`.
    pub fn kac_decomposition(&self, window: i64) -> Result<KacDecomposition> {
        let h = self.rs.coxeter_number;
        if window < h {
            return Err(invalid!(
                "window {window} is smaller than the Coxeter number {h}"
            ));
        }
        let (classes, blocks) = self.graded_blocks();
        let r = self.rs.rank;
        let n = self.dim();
        // L_m is spanned by b·t^k with grade(b) ≡ -m (mod h)
        let class_of = |m: i64| (-m).rem_euclid(h) as usize;
        let lift = |cls: usize, v: &[Q]| -> Vec<Q> {
            let mut out = vec![q(0); n];
            for (k, &b) in classes[cls].iter().enumerate() {
                out[b] = v[k].clone();
            }
            out
        };
        let restrict = |cls: usize, v: &[Q]| -> Vec<Q> {
            classes[cls].iter().map(|&b| v[b].clone()).collect()
        };
        // ad p₁ : L_m → L_{m+1} is the block from class(m) to class(m)-1
        let step = |m: i64| &blocks[class_of(m)];

        let mut slices = Vec::new();
        let mut direct_sum = true;
        for m in -window..=window {
            let cls = class_of(m);
            let a_basis: Vec<Vec<Q>> = step(m).nullspace().iter().map(|v| lift(cls, v)).collect();
            let c_basis: Vec<Vec<Q>> = step(m - 1)
                .column_space()
                .iter()
                .map(|v| lift(cls, v))
                .collect();
            let expected_a = self
                .rs
                .exponents
                .iter()
                .filter(|&&e| (e - m).rem_euclid(h) == 0)
                .count();
            let mut both: Vec<Vec<Q>> = a_basis.iter().map(|v| restrict(cls, v)).collect();
            both.extend(c_basis.iter().map(|v| restrict(cls, v)));
            let dim_slice = classes[cls].len();
            if both.is_empty() {
                direct_sum &= dim_slice == 0;
            } else {
                direct_sum &= Matrix::from_cols(dim_slice, &both).rank() == dim_slice
                    && both.len() == dim_slice;
            }
            slices.push(KacSlice {
                degree: m,
                dim_slice,
                a_basis,
                c_basis,
                expected_a,
            });
        }

        let slice = |m: i64| &slices[(m + window) as usize];
        let dims_ok = slices
            .iter()
            .all(|s| s.a_basis.len() == s.expected_a && s.c_basis.len() == r);

        // ad p₁ maps c_m onto c_{m+1}
        let mut bijection = true;
        for m in -window..window {
            let s = slice(m);
            let images: Vec<Vec<Q>> = s
                .c_basis
                .iter()
                .map(|v| step(m).mul_vec(&restrict(class_of(m), v)))
                .collect();
            let len = classes[class_of(m + 1)].len();
            bijection &= Matrix::from_cols(len, &images).rank() == r;
        }

        // ⟨a_m, c_{-m}⟩ = 0 under the loop pairing
        let mut orthogonal = true;
        for m in -window..=window {
            for x in &slice(m).a_basis {
                for y in &slice(-m).c_basis {
                    orthogonal &= self.kappa(x, y).is_nil();
                }
            }
        }

        // [a_i, a_j] = 0 in the loop algebra (without central term)
        let mut commuting = true;
        let nonzero: Vec<&KacSlice> = slices.iter().filter(|s| !s.a_basis.is_empty()).collect();
        for s in &nonzero {
            for u in &nonzero {
                for x in &s.a_basis {
                    for y in &u.a_basis {
                        commuting &= self.bracket(x, y).iter().all(|c| c.is_nil());
                    }
                }
            }
        }

        // cocycle ω(x tᵃ, y tᵇ) = a κ(x,y) δ_{a+b,0} nondegenerate on a_m × a_{-m}
        let mut heisenberg = true;
        for m in 1..=window {
            let (pos, neg) = (slice(m), slice(-m));
            if pos.a_basis.is_empty() {
                continue;
            }
            if pos.a_basis.len() != neg.a_basis.len() {
                heisenberg = false;
                continue;
            }
            let gram = Matrix::from_fn(pos.a_basis.len(), neg.a_basis.len(), |i, j| {
                self.cocycle(m, &pos.a_basis[i], &neg.a_basis[j])
            });
            heisenberg &= !gram.determinant().is_nil();
        }

        Ok(KacDecomposition {
            window,
            slices,
            dims_ok,
            direct_sum,
            bijection,
            orthogonal,
            commuting,
            heisenberg,
        })
    }

    /// `ω(x, y)` for `x ∈ L_m`, `y ∈ L_{-m}` given as Chevalley vectors.
    fn cocycle(&self, m: i64, x: &[Q], y: &[Q]) -> Q {
        let h = self.rs.coxeter_number;
        let mut s = q(0);
        for (&(a, b), &v) in &self.kappa {
            if x[a].is_nil() || y[b].is_nil() {
                continue;
            }
            // loop degree of b_a in L_m: k·h - grade = m
            let k = (m + self.grade(a)) / h;
            s += &x[a] * &y[b] * q(v * k);
        }
        s
    }

    /// Bracket table as `[a, b, c, coefficient]` rows, for debugging dumps.
    pub fn bracket_table(&self) -> Vec<[i64; 4]> {
        let n = self.dim();
        let mut rows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for &(c, v) in self.bracket_basis(a, b) {
                    rows.push([a as i64, b as i64, c as i64, v]);
                }
            }
        }
        rows
    }
}

#[derive(Clone, Debug)]
pub struct PrincipalTriple {
    /// `Σ f_{α_i}`.
    pub n: Vec<Q>,
    /// `e_θ`.
    pub e: Vec<Q>,
    /// Diagonal of `ad ρ̌` on the basis.
    pub rho_grading: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantReport {
    pub kernel_dim: usize,
    pub minpoly_squarefree: bool,
}

#[derive(Clone, Debug)]
pub struct KacSlice {
    pub degree: i64,
    pub dim_slice: usize,
    /// Basis of `𝔞_m = Ker ad p₁`.
    pub a_basis: Vec<Vec<Q>>,
    /// Basis of `𝔠_m = Im ad p₁`.
    pub c_basis: Vec<Vec<Q>>,
    /// Multiplicity of `m mod h` among the exponents.
    pub expected_a: usize,
}

#[derive(Clone, Debug)]
pub struct KacDecomposition {
    pub window: i64,
    pub slices: Vec<KacSlice>,
    pub dims_ok: bool,
    pub direct_sum: bool,
    pub bijection: bool,
    pub orthogonal: bool,
    pub commuting: bool,
    pub heisenberg: bool,
}

impl KacDecomposition {
    pub fn all_ok(&self) -> bool {
        self.dims_ok
            && self.direct_sum
            && self.bijection
            && self.orthogonal
            && self.commuting
            && self.heisenberg
    }

    pub fn dim_a(&self, m: i64) -> usize {
        self.slices[(m + self.window) as usize].a_basis.len()
    }

    pub fn dim_c(&self, m: i64) -> usize {
        self.slices[(m + self.window) as usize].c_basis.len()
    }
}
