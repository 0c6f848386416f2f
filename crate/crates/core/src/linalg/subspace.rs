//! Subspaces of `F^n`, stored as a reduced row-echelon basis.

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// A subspace of `F^ambient`. The basis rows are in reduced echelon form, so
/// two subspaces are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient_dim(), self.basis)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_only();
        let basis = r.submatrix(0..pivots.len(), 0..m.cols());
        Subspace { basis, pivots }
    }

    pub fn from_vectors(field: Field, ambient: usize, vs: &[Vec<Scalar>]) -> Self {
        Subspace::from_rows(&Matrix::from_rows(field, ambient, vs))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in it.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim(), "vector length mismatch");
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.apply(&coeffs);
        if recon.as_slice() == v {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_rows(&self, m: &Matrix) -> bool {
        m.row_iter().all(|r| self.contains(r))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.contains_rows(&self.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient mismatch");
        let m = Matrix::vstack(self.field(), self.ambient_dim(), &[&self.basis, &other.basis]);
        Subspace::from_rows(&m)
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient mismatch");
        let f = self.field();
        let n = self.ambient_dim();
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, n);
        }
        let top = Matrix::hstack(f, self.dim(), &[&self.basis, &self.basis]);
        let bot = Matrix::hstack(f, other.dim(), &[&other.basis, &Matrix::zeros(f, other.dim(), n)]);
        let (r, piv) = Matrix::vstack(f, 2 * n, &[&top, &bot]).rref_only();
        let rows: Vec<usize> =
            piv.iter().enumerate().filter(|(_, &p)| p >= n).map(|(i, _)| i).collect();
        Subspace::from_rows(&r.select_rows(&rows).submatrix(0..rows.len(), n..2 * n))
    }

    /// Standard unit vectors spanning a complement (the non-pivot positions).
    pub fn complement_basis(&self) -> Matrix {
        let f = self.field();
        let n = self.ambient_dim();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut m = Matrix::zeros(f, free.len(), n);
        for (i, &c) in free.iter().enumerate() {
            m.set(i, c, f.one());
        }
        m
    }

    pub fn complement(&self) -> Subspace {
        Subspace::from_rows(&self.complement_basis())
    }

    /// Image under `v -> v * m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::from_rows(&self.basis.mul(m))
    }

    /// Preimage of `target` under `v -> v * m`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Subspace {
        // v*m lies in target iff v*m*C = 0, C a basis of the annihilator of target
        let ann = target.basis().kernel_basis();
        let c = ann.basis().transpose();
        m.mul(&c).left_kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn mat(rows: usize, cols: usize, v: &[i64]) -> Matrix {
        Matrix::from_i64(f3(), rows, cols, v)
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_rows(&mat(2, 3, &[1, 0, 0, 0, 1, 0]));
        let b = Subspace::from_rows(&mat(2, 3, &[0, 1, 0, 0, 0, 1]));
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::from_rows(&mat(1, 3, &[0, 1, 0])));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn preimage_of_line() {
        let m = mat(2, 2, &[1, 1, 0, 0]);
        let t = Subspace::from_rows(&mat(1, 2, &[1, 1]));
        assert_eq!(Subspace::preimage(&m, &t).dim(), 2);
        let t2 = Subspace::from_rows(&mat(1, 2, &[1, 0]));
        assert_eq!(Subspace::preimage(&m, &t2), Subspace::from_rows(&mat(1, 2, &[0, 1])));
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0i64..3, rows * cols).prop_map(move |v| mat(rows, cols, &v))
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(4, 5)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), 5);
            prop_assert_eq!(m.rank() + m.left_kernel().dim(), 4);
        }

        #[test]
        fn sum_intersection_dimension(a in arb_matrix(3, 5), b in arb_matrix(3, 5)) {
            let (a, b) = (Subspace::from_rows(&a), Subspace::from_rows(&b));
            let s = a.sum(&b);
            let i = a.intersect(&b);
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        }

        #[test]
        fn rref_transform_invariant(m in arb_matrix(4, 4)) {
            let r = m.rref();
            prop_assert_eq!(r.transform.mul(&m), r.reduced.clone());
            prop_assert!(r.transform.inverse().is_some());
        }
    }
}
