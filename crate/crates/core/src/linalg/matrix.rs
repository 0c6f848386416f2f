//! Dense matrices over a [`Field`].
//!
//! Vectors are rows throughout the crate: a matrix `m` with `r` rows and `c`
//! columns is the linear map `F^r -> F^c`, `v -> v * m`.

use std::fmt;
use std::ops::Range;

use super::field::{Field, Scalar};
use super::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of reduced row-echelon reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    /// Invertible `transform` with `transform * original = reduced`.
    pub transform: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { field, rows, cols, data }
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix data length mismatch");
        Matrix { field, rows, cols, data: entries.iter().map(|&x| field.from_i64(x)).collect() }
    }

    /// Stack row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add_mul(a, b);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = o.add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self + s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = a.add_mul(s, b);
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Write `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend(m.data.iter().cloned());
        }
        Matrix { field, rows, cols, data }
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    /// Block-diagonal matrix.
    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Row-reduce in place; returns pivot columns. Pivoting is deterministic:
    /// leftmost column first, first nonzero row at or below the current one.
    fn eliminate(&mut self, mut transform: Option<&mut Matrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                self.swap_rows(pr, r);
                if let Some(t) = transform.as_deref_mut() {
                    t.swap_rows(pr, r);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            self.scale_row(r, &inv);
            if let Some(t) = transform.as_deref_mut() {
                t.scale_row(r, &inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let nf = -&f;
                self.add_row_multiple(i, r, &nf, c);
                if let Some(t) = transform.as_deref_mut() {
                    t.add_row_multiple(i, r, &nf, 0);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * s;
            }
        }
    }

    /// row[dst] += s * row[src], touching columns from `start` on.
    fn add_row_multiple(&mut self, dst: usize, src: usize, s: &Scalar, start: usize) {
        for c in start..self.cols {
            let b = &self.data[src * self.cols + c];
            if b.is_zero() {
                continue;
            }
            let b = b.clone();
            let idx = dst * self.cols + c;
            self.data[idx] = self.data[idx].add_mul(s, &b);
        }
    }

    /// Reduced row-echelon form without the transform.
    pub fn rref_only(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.eliminate(None);
        (m, piv)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut t = Matrix::identity(self.field, self.rows);
        let pivots = m.eliminate(Some(&mut t));
        Rref { reduced: m, pivots, transform: t }
    }

    pub fn rank(&self) -> usize {
        self.rref_only().1.len()
    }

    /// Basis of `{v : self * v^T = 0}` (column kernel), in echelon form.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, piv) = self.rref_only();
        let mut vecs = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &piv {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            vecs.push(v);
        }
        Subspace::from_rows(&Matrix::from_rows(self.field, self.cols, &vecs))
    }

    /// `{x : x * self = 0}`, a subspace of `F^rows`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel_basis()
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self)
    }

    /// Image of `v -> v * self` as a subspace of `F^cols`.
    pub fn image(&self) -> Subspace {
        Subspace::from_rows(self)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let r = self.rref();
        if r.pivots.len() == self.rows {
            Some(r.transform)
        } else {
            None
        }
    }

    /// Some `X` with `X * self = rhs`, if one exists.
    pub fn solve_left(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.cols, rhs.cols, "solve_left column mismatch");
        let r = self.rref();
        let rank = r.pivots.len();
        let mut out = Matrix::zeros(self.field, rhs.rows, self.rows);
        for i in 0..rhs.rows {
            // coordinates w.r.t. the reduced rows are read off at the pivots
            let b = rhs.row(i);
            let coeffs: Vec<Scalar> = r.pivots.iter().map(|&p| b[p].clone()).collect();
            let mut recon = vec![self.field.zero(); self.cols];
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, x) in recon.iter_mut().enumerate() {
                    let y = r.reduced.get(k, j);
                    if !y.is_zero() {
                        *x = x.add_mul(c, y);
                    }
                }
            }
            if recon != b {
                return None;
            }
            // reduced = transform * self, so x = coeffs * transform[0..rank]
            for (k, c) in coeffs.iter().enumerate().take(rank) {
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.rows {
                    let y = r.transform.get(k, j);
                    if !y.is_zero() {
                        let idx = i * self.rows + j;
                        out.data[idx] = out.data[idx].add_mul(c, y);
                    }
                }
            }
        }
        Some(out)
    }

    /// Flatten row-major into a single row vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn unflatten(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        Matrix::from_vec(field, rows, cols, v.to_vec())
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64().unwrap_or(0)).collect())
            .collect()
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::F2
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(f2(), 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(f2(), 3, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let m = Matrix::from_i64(f2(), 2, 2, &[1, 1, 1, 1]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(f2(), 2, 2, &[1, 1, 0, 0]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.transform.mul(&m), r.reduced);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(f2(), 3).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(f2(), 2, 3).kernel_basis().dim(), 3);
        let k = Matrix::from_i64(f2(), 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row_vec(0), vec![f2().one(), f2().one()]);
    }

    #[test]
    fn solve_left_roundtrip() {
        let q = Field::Rationals;
        let a = Matrix::from_i64(q, 2, 3, &[1, 2, 3, 0, 1, 4]);
        let x = Matrix::from_i64(q, 1, 2, &[5, -7]);
        let b = x.mul(&a);
        let sol = a.solve_left(&b).unwrap();
        assert_eq!(sol.mul(&a), b);
        let bad = Matrix::from_i64(q, 1, 3, &[0, 0, 1]);
        assert!(a.solve_left(&bad).is_none());
    }

    #[test]
    fn inverse_over_q() {
        let q = Field::Rationals;
        let a = Matrix::from_i64(q, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(q, 2));
        assert!(Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
