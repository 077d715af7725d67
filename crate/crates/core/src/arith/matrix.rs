use super::{q, Field, Poly, Q};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::nil(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::unit();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(n_rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(n_rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_nil())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negated())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_nil() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_nil() {
                        continue;
                    }
                    let v = out[(i, j)].plus(&a.times(b));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::nil();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_nil() && !b.is_nil() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![F::nil(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                if !b.is_nil() {
                    out[j] = out[j].plus(&a.times(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_nil()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = F::unit().over(&m[(r, c)]);
            for j in c..m.cols {
                if !m[(r, j)].is_nil() {
                    m[(r, j)] = m[(r, j)].times(&inv);
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_nil() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_nil() {
                        continue;
                    }
                    let v = m[(i, j)].minus(&factor.times(&m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![F::nil(); self.cols];
            v[free] = F::unit();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r[(row, free)].negated();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn column_space(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::nil(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::unit();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_nil()) else {
                return F::nil();
            };
            if p != c {
                m.swap_rows(p, c);
                det = det.negated();
            }
            let pivot = m[(c, c)].clone();
            det = det.times(&pivot);
            for i in c + 1..n {
                if m[(i, c)].is_nil() {
                    continue;
                }
                let factor = m[(i, c)].over(&pivot);
                for j in c..n {
                    let v = m[(i, j)].minus(&factor.times(&m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        det
    }
}

impl Matrix<Q> {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    /// Characteristic polynomial `det(x - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![q(0); n + 1];
        coeffs[n] = q(1);
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
            let mut mk = self.mul(&m);
            for i in 0..n {
                mk[(i, i)] += &coeffs[n - k + 1];
            }
            let c = -self.mul(&mk).trace() / q(k as i64);
            coeffs[n - k] = c;
            m = mk;
        }
        Poly::new(coeffs)
    }

    /// Minimal polynomial, found as the first linear relation among
    /// `I, M, M², …` (flattened).
    pub fn minpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let len = n * n;
        // Each stored row: reduced flattened power, plus a coefficient tag
        // expressing it in terms of the original powers.
        let mut reduced: Vec<(usize, Vec<Q>, Vec<Q>)> = Vec::new();
        let mut power = Self::identity(n);
        for d in 0..=n {
            let mut v = power.data.clone();
            let mut tag = vec![q(0); d + 1];
            tag[d] = q(1);
            for (piv, rv, rt) in &reduced {
                if v[*piv] != q(0) {
                    let f = v[*piv].clone();
                    for j in 0..len {
                        if rv[j] != q(0) {
                            v[j] -= &f * &rv[j];
                        }
                    }
                    for (j, c) in rt.iter().enumerate() {
                        tag[j] -= &f * c;
                    }
                }
            }
            match v.iter().position(|x| *x != q(0)) {
                None => return Poly::new(tag).monic(),
                Some(p) => {
                    let inv = q(1) / &v[p];
                    for x in v.iter_mut() {
                        *x *= &inv;
                    }
                    for x in tag.iter_mut() {
                        *x *= &inv;
                    }
                    // keep earlier rows reduced at the new pivot
                    for (_, rv, rt) in reduced.iter_mut() {
                        if rv[p] != q(0) {
                            let f = rv[p].clone();
                            for j in 0..len {
                                if v[j] != q(0) {
                                    rv[j] -= &f * &v[j];
                                }
                            }
                            rt.resize(d + 1, q(0));
                            for (j, c) in tag.iter().enumerate() {
                                rt[j] -= &f * c;
                            }
                        }
                    }
                    reduced.push((p, v, tag));
                }
            }
            power = power.mul(self);
        }
        unreachable!("Cayley-Hamilton bounds the degree")
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}
