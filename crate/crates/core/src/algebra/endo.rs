//! Endomorphism algebras, locality and isomorphism tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

use super::hom::{hom_space, HomSpace};
use super::module::{Module, ModuleMap};

/// `End(M)` with product `a * b = a then b` (matrix order), so that the
/// structure constants of `End(A_A)` are those of `A^op`.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub module: Module,
    pub hom: HomSpace,
    pub basis: Vec<ModuleMap>,
    /// `structure[i][j]` = coordinates of `basis[i] then basis[j]`.
    pub structure: Vec<Vec<Vec<Scalar>>>,
}

impl EndomorphismAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn unit(&self) -> Vec<Scalar> {
        self.hom.coordinates(&ModuleMap::identity(&self.module)).expect("identity is an endomorphism")
    }

    /// Structure constants of the opposite algebra.
    pub fn opposite_structure(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.structure[j][i].clone()).collect()).collect()
    }

    pub fn check_associative(&self) -> bool {
        let n = self.dim();
        let f = self.field();
        let mul = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![f.zero(); n];
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let ab = a * b;
                    for (k, c) in self.structure[i][j].iter().enumerate() {
                        out[k] = out[k].add_mul(&ab, c);
                    }
                }
            }
            out
        };
        let e = |i: usize| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| mul(&mul(&e(i), &e(j)), &e(k)) == mul(&e(i), &mul(&e(j), &e(k))))
            })
        })
    }
}

pub fn endomorphism_algebra(m: &Module) -> Result<EndomorphismAlgebra> {
    let hom = hom_space(m, m)?;
    let basis = hom.basis();
    let structure = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| hom.coordinates(&a.then(b)).expect("endomorphisms compose"))
                .collect()
        })
        .collect();
    Ok(EndomorphismAlgebra { module: m.clone(), hom, basis, structure })
}

fn is_nilpotent(x: &Matrix) -> bool {
    let d = x.rows();
    if d == 0 {
        return true;
    }
    let mut p = x.clone();
    let mut e = 1;
    while e < d {
        p = p.mul(&p);
        e *= 2;
    }
    p.is_zero()
}

/// `λ` with `x - λ` nilpotent, if it exists.
pub fn scalar_part(x: &Matrix) -> Option<Scalar> {
    let f = x.field();
    let d = x.rows();
    if d == 0 {
        return Some(f.zero());
    }
    let lambda = match f {
        Field::PrimeField(p) => {
            // (λ + N)^(p^m) = λ once p^m ≥ d
            let mut y = x.clone();
            let mut pm: u64 = 1;
            while pm < d as u64 {
                let mut z = Matrix::identity(f, d);
                for _ in 0..p {
                    z = z.mul(&y);
                }
                y = z;
                pm *= p as u64;
            }
            if pm == 1 {
                // d == 1: x is already scalar
                y.get(0, 0).clone()
            } else {
                y.get(0, 0).clone()
            }
        }
        Field::Rationals => {
            let mut tr = f.zero();
            for i in 0..d {
                tr = &tr + x.get(i, i);
            }
            &tr * &f.from_i64(d as i64).inv().expect("nonzero")
        }
    };
    let shifted = x.sub(&Matrix::identity(f, d).scale(&lambda));
    if is_nilpotent(&shifted) {
        Some(lambda)
    } else {
        None
    }
}

/// Verdict of a locality test on `End(M)`.
#[derive(Clone, Debug)]
pub enum Locality {
    /// `End(M) = k ⊕ rad`; `rad` given as a basis of nilpotent endomorphisms.
    SplitLocal { radical: Vec<ModuleMap> },
    /// Local with a residue field bigger than `k` (exhaustive search found no idempotent).
    Local,
    /// A non-trivial Fitting decomposition `M = im f^d ⊕ ker f^d`.
    Decomposable { witness: ModuleMap },
    Zero,
}

impl Locality {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Locality::SplitLocal { .. } | Locality::Local)
    }
}

fn subspace_products(a: &Subspace, b: &Subspace, d: usize) -> Subspace {
    let f = a.field();
    let mut rows = Vec::new();
    for x in a.basis().row_iter() {
        let xm = Matrix::unflatten(f, d, d, x);
        for y in b.basis().row_iter() {
            let ym = Matrix::unflatten(f, d, d, y);
            rows.push(xm.mul(&ym).flatten());
        }
    }
    Subspace::from_vectors(f, d * d, &rows)
}

/// Decide whether `End(M)` is local. Exact for split-local algebras; in the
/// non-split case an exhaustive Fitting search is used, bounded by `cap` candidates.
pub fn locality(m: &Module, cap: u64) -> Result<Locality> {
    if m.is_zero() {
        return Ok(Locality::Zero);
    }
    let end = endomorphism_algebra(m)?;
    let f = m.field();
    let d = m.dim();
    let mats: Vec<Matrix> = end.basis.iter().map(ModuleMap::matrix).collect();
    let mut split = true;
    let mut nil = Vec::new();
    for x in &mats {
        match scalar_part(x) {
            Some(l) => nil.push(x.sub(&Matrix::identity(f, d).scale(&l))),
            None => {
                split = false;
                break;
            }
        }
    }
    if split {
        let n = Subspace::from_vectors(f, d * d, &nil.iter().map(Matrix::flatten).collect::<Vec<_>>());
        if n.dim() + 1 == end.dim() {
            let mut power = n.clone();
            let mut steps = 0;
            while !power.is_zero() && steps <= d {
                power = subspace_products(&power, &n, d);
                steps += 1;
            }
            if power.is_zero() {
                let radical = n
                    .basis()
                    .row_iter()
                    .map(|r| {
                        ModuleMap::from_matrix(m, m, &Matrix::unflatten(f, d, d, r)).expect("endomorphism")
                    })
                    .collect();
                return Ok(Locality::SplitLocal { radical });
            }
        }
    }
    // Fitting search: f^d is neither zero nor invertible on a decomposable module.
    let fitting = |x: &Matrix| -> bool {
        let mut p = x.clone();
        let mut e = 1;
        while e < d {
            p = p.mul(&p);
            e *= 2;
        }
        let r = p.rank();
        r != 0 && r != d
    };
    for (i, x) in mats.iter().enumerate() {
        if fitting(x) {
            return Ok(Locality::Decomposable { witness: end.basis[i].clone() });
        }
    }
    let k = end.dim() as u32;
    if let Some(q) = f.order() {
        if (q as f64).powi(k as i32) <= cap as f64 {
            let elems = f.elements()?;
            let total = q.pow(k);
            for idx in 0..total {
                let mut c = Vec::with_capacity(k as usize);
                let mut r = idx;
                for _ in 0..k {
                    c.push(elems[(r % q) as usize].clone());
                    r /= q;
                }
                let x = end.hom.combination(&c);
                if fitting(&x.matrix()) {
                    return Ok(Locality::Decomposable { witness: x });
                }
            }
            return Ok(Locality::Local);
        }
    }
    Err(Error::CapExceeded(format!(
        "locality of a {}-dimensional endomorphism algebra needs more than {cap} candidates",
        end.dim()
    )))
}

pub fn is_indecomposable(m: &Module, cap: u64) -> Result<bool> {
    Ok(locality(m, cap)?.is_indecomposable())
}

/// Exact isomorphism test for two indecomposable modules: `M ≅ N` iff some
/// composite `f then g` of basis maps is not nilpotent.
pub fn iso_indecomposables(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let hmn = hom_space(m, n)?;
    if hmn.dim() == 0 {
        return Ok(None);
    }
    let hnm = hom_space(n, m)?;
    for f in hmn.basis() {
        for g in hnm.basis() {
            let c = f.then(&g).matrix();
            if !is_nilpotent(&c) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

/// Bounded isomorphism search: basis maps, then seeded random combinations,
/// then exhaustive enumeration of `Hom(M, N)` when it has at most `cap` elements.
pub fn find_isomorphism(m: &Module, n: &Module, cap: u64) -> Result<Option<ModuleMap>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let h = hom_space(m, n)?;
    let k = h.dim();
    if k == 0 {
        return Ok(None);
    }
    // necessary: End dimensions and Hom(M,N) must agree for isomorphic modules
    if hom_space(m, m)?.dim() != k || hom_space(n, n)?.dim() != k || hom_space(n, m)?.dim() != k {
        return Ok(None);
    }
    for f in h.basis() {
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    let fld = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let random_scalar = |rng: &mut ChaCha8Rng| match fld {
        Field::PrimeField(p) => fld.from_i64(rng.gen_range(0..p as i64)),
        Field::Rationals => fld.from_i64(rng.gen_range(-1000..=1000)),
    };
    for _ in 0..64 {
        let c: Vec<Scalar> = (0..k).map(|_| random_scalar(&mut rng)).collect();
        let f = h.combination(&c);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    if let Some(q) = fld.order() {
        if (q as f64).powi(k as i32) <= cap as f64 {
            let elems = fld.elements()?;
            let total = q.pow(k as u32);
            for idx in 1..total {
                let mut c = Vec::with_capacity(k);
                let mut r = idx;
                for _ in 0..k {
                    c.push(elems[(r % q) as usize].clone());
                    r /= q;
                }
                let f = h.combination(&c);
                if f.is_iso() {
                    return Ok(Some(f));
                }
            }
            return Ok(None);
        }
    }
    Err(Error::CapExceeded(format!("isomorphism search over a {k}-dimensional Hom space")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;

    #[test]
    fn end_of_regular_module_is_opposite() {
        let alg = a3r();
        let reg = Module::regular(&alg);
        let end = endomorphism_algebra(&reg).unwrap();
        assert_eq!(end.dim(), alg.dim());
        assert!(end.check_associative());
        // left multiplications l_x: m -> x m; l_x then l_y = l_{yx}
        let f = alg.field();
        let offsets: Vec<usize> = {
            let mut acc = 0;
            (0..alg.num_vertices())
                .map(|v| {
                    let o = acc;
                    acc += alg.basis_from(v).len();
                    o
                })
                .collect()
        };
        let _ = offsets;
        let lmult = |x: usize| -> ModuleMap {
            // coordinates of Λ_Λ are grouped by target vertex, then by projective
            let coords = |b: usize| -> (usize, usize) {
                let t = alg.basis_path(b).target;
                let mut idx = 0;
                for v in 0..alg.num_vertices() {
                    for c in alg.basis_from(v) {
                        if alg.basis_path(c).target == t {
                            if c == b {
                                return (t, idx);
                            }
                            idx += 1;
                        }
                    }
                }
                unreachable!()
            };
            let mut blocks: Vec<Matrix> =
                reg.dims().iter().map(|&d| Matrix::zeros(f, d, d)).collect();
            for b in 0..alg.dim() {
                let (t, r) = coords(b);
                for (k, c) in alg.mul_basis(x, b) {
                    let (t2, col) = coords(*k);
                    assert_eq!(t, t2);
                    blocks[t].set(r, col, c.clone());
                }
            }
            ModuleMap::new(&reg, &reg, blocks).unwrap()
        };
        let ls: Vec<ModuleMap> = (0..alg.dim()).map(lmult).collect();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = ls[i].then(&ls[j]);
                let mut rhs = ModuleMap::zero(&reg, &reg);
                for (k, c) in alg.mul_basis(j, i) {
                    rhs = rhs.add(&ls[*k].scale(c));
                }
                assert_eq!(lhs.blocks(), rhs.blocks());
            }
        }
    }

    #[test]
    fn locality_of_small_modules() {
        let alg = a3r();
        assert!(is_indecomposable(&Module::projective(&alg, 0), 1 << 16).unwrap());
        assert!(is_indecomposable(&Module::simple(&alg, 1), 1 << 16).unwrap());
        let s = Module::simple(&alg, 1);
        let ss = Module::direct_sum2(&s, &s);
        assert!(!is_indecomposable(&ss, 1 << 16).unwrap());
    }

    #[test]
    fn isomorphism_search() {
        let alg = a3r();
        let s1 = Module::simple(&alg, 0);
        let p1 = Module::projective(&alg, 0);
        let a = Module::direct_sum2(&s1, &p1);
        let b = Module::direct_sum2(&p1, &s1);
        assert!(find_isomorphism(&a, &b, 1 << 16).unwrap().is_some());
        let s2 = Module::simple(&alg, 1);
        let c = Module::direct_sum2(&Module::direct_sum2(&s1, &s1), &s2);
        assert!(find_isomorphism(&a, &c, 1 << 16).unwrap().is_none());
        assert!(iso_indecomposables(&p1, &p1).unwrap().is_some());
        assert!(iso_indecomposables(&s1, &s2).unwrap().is_none());
    }
}
