//! Path algebras of quivers modulo admissible relations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

use super::quiver::{Path, Quiver};

/// A linear combination of paths sharing source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(field: Field, arrows: Vec<usize>) -> Relation {
        Relation { terms: vec![(field.one(), arrows)] }
    }
}

const MAX_TRUNCATION: usize = 64;
const MAX_PATHS: usize = 200_000;

/// A finite-dimensional algebra `kQ/I` with `I` admissible.
///
/// The basis consists of residues of paths; basis index `v` is the trivial
/// path at vertex `v`, so the idempotents are the first `|Q_0|` basis
/// elements. Each basis element `b` satisfies `e_s b e_t = b` for its source
/// `s` and target `t`.
#[derive(Clone)]
pub struct FinDimAlgebra(Arc<AlgebraData>);

struct AlgebraData {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    basis_index: HashMap<(usize, Vec<usize>), usize>,
    truncation: usize,
    columns: HashMap<(usize, Vec<usize>), usize>,
    ideal: Subspace,
    // column index -> basis index for non-pivot columns
    column_basis: HashMap<usize, usize>,
    mult: Vec<Vec<Vec<(usize, Scalar)>>>,
    nilpotency: usize,
}

impl PartialEq for FinDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.quiver == other.0.quiver
                && self.0.basis == other.0.basis
                && self.0.mult == other.0.mult)
    }
}
impl Eq for FinDimAlgebra {}

impl fmt::Debug for FinDimAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinDimAlgebra(dim {} over {}, {} vertices)", self.dim(), self.field(), self.num_vertices())
    }
}

impl FinDimAlgebra {
    pub fn path_algebra(quiver: Quiver, relations: Vec<Relation>, field: Field) -> Result<Self> {
        let mut max_len = 1;
        for r in &relations {
            if r.terms.is_empty() {
                return Err(Error::NonAdmissible("empty relation".into()));
            }
            let mut ends = None;
            for (c, arrows) in &r.terms {
                if c.field() != field {
                    return Err(Error::InvalidField("relation coefficient over another field".into()));
                }
                let p = quiver.path(arrows)?;
                if p.len() < 2 {
                    return Err(Error::NonAdmissible(format!(
                        "relation term {} is not in the square of the arrow ideal",
                        quiver.path_label(&p)
                    )));
                }
                match ends {
                    None => ends = Some((p.source, p.target)),
                    Some(e) if e != (p.source, p.target) => {
                        return Err(Error::NonAdmissible(
                            "relation terms have different endpoints".into(),
                        ))
                    }
                    _ => {}
                }
                max_len = max_len.max(p.len());
            }
        }

        // Work in kQ/J^L and grow L until J^(L-1) lies in I + J^L.
        let mut trunc = max_len + 1;
        loop {
            if trunc > MAX_TRUNCATION {
                return Err(Error::InfiniteDimensional(format!(
                    "paths of length {MAX_TRUNCATION} survive the relations"
                )));
            }
            let Some(mut paths) = quiver.paths_below(trunc, MAX_PATHS) else {
                return Err(Error::InfiniteDimensional("too many paths before stabilising".into()));
            };
            let longest = paths.iter().map(Path::len).max().unwrap_or(0);
            // columns: longest paths first so that pivots fall on long paths
            paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            let columns: HashMap<(usize, Vec<usize>), usize> =
                paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
            let ncols = paths.len();

            let mut gens: Vec<Vec<Scalar>> = Vec::new();
            for r in &relations {
                let (s, t) = {
                    let p = quiver.path(&r.terms[0].1)?;
                    (p.source, p.target)
                };
                let lefts: Vec<&Path> = paths.iter().filter(|p| p.target == s).collect();
                let rights: Vec<&Path> = paths.iter().filter(|p| p.source == t).collect();
                for l in &lefts {
                    for rt in &rights {
                        let mut v = vec![field.zero(); ncols];
                        let mut nonzero = false;
                        for (c, arrows) in &r.terms {
                            let len = l.len() + arrows.len() + rt.len();
                            if len >= trunc {
                                continue;
                            }
                            let mut w = l.arrows.clone();
                            w.extend_from_slice(arrows);
                            w.extend_from_slice(&rt.arrows);
                            let col = columns[&(l.source, w)];
                            v[col] = &v[col] + c;
                            nonzero = true;
                        }
                        if nonzero && v.iter().any(|x| !x.is_zero()) {
                            gens.push(v);
                        }
                    }
                }
            }
            let ideal = Subspace::from_vectors(field, ncols, &gens);

            let top_len = trunc - 1;
            let stable = longest < top_len
                || paths.iter().filter(|p| p.len() == top_len).all(|p| {
                    let mut e = vec![field.zero(); ncols];
                    e[columns[&(p.source, p.arrows.clone())]] = field.one();
                    ideal.contains(&e)
                });
            if !stable {
                trunc += 1;
                continue;
            }

            let mut is_pivot = vec![false; ncols];
            for &p in ideal.pivots() {
                is_pivot[p] = true;
            }
            let mut basis: Vec<Path> =
                paths.iter().enumerate().filter(|(i, _)| !is_pivot[*i]).map(|(_, p)| p.clone()).collect();
            basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            let basis_index: HashMap<(usize, Vec<usize>), usize> =
                basis.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
            let column_basis: HashMap<usize, usize> = basis
                .iter()
                .enumerate()
                .map(|(i, p)| (columns[&(p.source, p.arrows.clone())], i))
                .collect();

            let mut data = AlgebraData {
                field,
                quiver,
                relations,
                basis,
                basis_index,
                truncation: trunc,
                columns,
                ideal,
                column_basis,
                mult: Vec::new(),
                nilpotency: 0,
            };
            data.build_mult();
            data.nilpotency = (1..trunc)
                .find(|&len| {
                    paths.iter().filter(|p| p.len() == len).all(|p| data.reduce(p.source, &p.arrows).is_empty())
                })
                .unwrap_or(trunc);
            return Ok(FinDimAlgebra(Arc::new(data)));
        }
    }

    pub fn field(&self) -> Field {
        self.0.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.0.quiver
    }
    pub fn relations(&self) -> &[Relation] {
        &self.0.relations
    }
    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }
    pub fn num_vertices(&self) -> usize {
        self.0.quiver.num_vertices()
    }
    pub fn num_arrows(&self) -> usize {
        self.0.quiver.num_arrows()
    }
    pub fn basis(&self) -> &[Path] {
        &self.0.basis
    }
    pub fn basis_path(&self, i: usize) -> &Path {
        &self.0.basis[i]
    }
    pub fn basis_label(&self, i: usize) -> String {
        self.0.quiver.path_label(&self.0.basis[i])
    }
    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.basis_label(i)).collect()
    }
    /// Basis index of the idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.0.basis_index[&(v, Vec::new())]
    }
    /// Every basis element of `e_v A`, in basis order.
    pub fn basis_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.basis[i].source == v).collect()
    }
    /// Every basis element of `A e_v`, in basis order.
    pub fn basis_into(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0.basis[i].target == v).collect()
    }
    /// Smallest `N` with `J^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.0.nilpotency
    }
    pub fn basis_index_of(&self, p: &Path) -> Option<usize> {
        self.0.basis_index.get(&(p.source, p.arrows.clone())).copied()
    }

    /// Structure constants: coordinates of `b_i * b_j`, sparse.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.0.mult[i][j]
    }

    /// Coordinates of the residue of an arbitrary path given by its arrows,
    /// starting at `source` (needed for trivial paths).
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> Vec<(usize, Scalar)> {
        self.0.reduce(source, arrows)
    }

    /// Dense product of two elements given in basis coordinates.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        for i in 0..self.num_vertices() {
            v[self.idempotent(i)] = f.one();
        }
        v
    }

    /// `A^op`, presented by the opposite quiver with reversed relations.
    pub fn opposite(&self) -> Result<FinDimAlgebra> {
        let rels = self
            .relations()
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), p.iter().rev().cloned().collect()))
                    .collect(),
            })
            .collect();
        FinDimAlgebra::path_algebra(self.quiver().opposite(), rels, self.field())
    }

    /// Dense structure-constant tensor; entry `[i][j]` is the coordinate vector of `b_i b_j`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let f = self.field();
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let mut v = vec![f.zero(); self.dim()];
                        for (k, c) in self.mul_basis(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Associativity of the structure constants, checked on all basis triples.
    pub fn check_associative(&self) -> bool {
        let n = self.dim();
        let f = self.field();
        let unit = |i: usize| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        };
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&unit(i), &unit(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &unit(k));
                    let jk = self.mul(&unit(j), &unit(k));
                    if lhs != self.mul(&unit(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of the truncation data, exposed for diagnostics.
    pub fn truncation_length(&self) -> usize {
        self.0.truncation
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.0.quiver.arrows()[a].label
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.0.quiver.vertices()[v]
    }

    /// Regular representation matrices are rarely needed; this builds the
    /// matrix of right multiplication by basis element `j` on `A`.
    pub fn right_mult_matrix(&self, j: usize) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), self.dim());
        for i in 0..self.dim() {
            for (k, c) in self.mul_basis(i, j) {
                m.set(i, *k, c.clone());
            }
        }
        m
    }
}

impl AlgebraData {
    fn reduce(&self, source: usize, arrows: &[usize]) -> Vec<(usize, Scalar)> {
        if arrows.len() + 1 >= self.truncation && !arrows.is_empty() {
            return Vec::new();
        }
        let Some(&col) = self.columns.get(&(source, arrows.to_vec())) else {
            return Vec::new();
        };
        if let Some(&b) = self.column_basis.get(&col) {
            return vec![(b, self.field.one())];
        }
        let row = self.ideal.pivots().iter().position(|&p| p == col).expect("pivot column");
        let mut out = Vec::new();
        for (c, x) in self.ideal.basis().row(row).iter().enumerate() {
            if c != col && !x.is_zero() {
                out.push((self.column_basis[&c], -x));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }

    fn build_mult(&mut self) {
        let n = self.basis.len();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let (p, q) = (&self.basis[i], &self.basis[j]);
                if p.target != q.source {
                    continue;
                }
                let mut w = p.arrows.clone();
                w.extend_from_slice(&q.arrows);
                mult[i][j] = self.reduce(p.source, &w);
            }
        }
        self.mult = mult;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3r() -> FinDimAlgebra {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("alpha".into(), "1".into(), "2".into()),
                ("beta".into(), "2".into(), "3".into()),
            ],
        )
        .unwrap();
        FinDimAlgebra::path_algebra(q, vec![Relation::monomial(Field::F2, vec![0, 1])], Field::F2)
            .unwrap()
    }

    #[test]
    fn a2_is_three_dimensional() {
        let alg = FinDimAlgebra::path_algebra(Quiver::linear(2), vec![], Field::F2).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.basis_labels(), vec!["e1", "e2", "a1"]);
    }

    #[test]
    fn a3_with_zero_relation() {
        let alg = a3r();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.basis_labels(), vec!["e1", "e2", "e3", "alpha", "beta"]);
        assert!(alg.check_associative());
        assert!(alg.mul_basis(3, 4).is_empty());
    }

    #[test]
    fn single_vertex_is_the_field() {
        let q = Quiver::new(vec!["x".into()], vec![]).unwrap();
        let alg = FinDimAlgebra::path_algebra(q, vec![], Field::F2).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let q = Quiver::new(vec!["1".into()], vec![("x".into(), "1".into(), "1".into())]).unwrap();
        let err = FinDimAlgebra::path_algebra(q, vec![], Field::F2).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional(_)));
    }

    #[test]
    fn loop_with_nilpotency() {
        let q = Quiver::new(vec!["1".into()], vec![("x".into(), "1".into(), "1".into())]).unwrap();
        let alg =
            FinDimAlgebra::path_algebra(q, vec![Relation::monomial(Field::F2, vec![0, 0, 0])], Field::F2)
                .unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.check_associative());
    }

    #[test]
    fn commutative_square() {
        let f = Field::prime(3).unwrap();
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "4".into()),
                ("c".into(), "1".into(), "3".into()),
                ("d".into(), "3".into(), "4".into()),
            ],
        )
        .unwrap();
        let rel = Relation { terms: vec![(f.one(), vec![0, 1]), (f.from_i64(-1), vec![2, 3])] };
        let alg = FinDimAlgebra::path_algebra(q, vec![rel], f).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        assert!(alg.check_associative());
    }

    #[test]
    fn arrow_in_relation_rejected() {
        let q = Quiver::linear(2);
        let err = FinDimAlgebra::path_algebra(q, vec![Relation::monomial(Field::F2, vec![0])], Field::F2)
            .unwrap_err();
        assert!(matches!(err, Error::NonAdmissible(_)));
    }

    #[test]
    fn opposite_has_same_dimension() {
        let alg = a3r();
        let op = alg.opposite().unwrap();
        assert_eq!(op.dim(), alg.dim());
        assert_eq!(op.basis_path(3).source, 1);
    }
}
