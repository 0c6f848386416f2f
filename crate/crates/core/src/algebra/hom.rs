//! Hom spaces between representations.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

use super::module::{Module, ModuleMap};

/// `Hom_A(M, N)` as a subspace of the flattened per-vertex blocks.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: Module,
    tgt: Module,
    offsets: Vec<usize>,
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn source(&self) -> &Module {
        &self.src
    }
    pub fn target(&self) -> &Module {
        &self.tgt
    }
    pub fn space(&self) -> &Subspace {
        &self.space
    }
    pub fn num_unknowns(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn flatten(&self, f: &ModuleMap) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.num_unknowns());
        for b in f.blocks() {
            out.extend(b.data().iter().cloned());
        }
        out
    }

    pub fn unflatten(&self, x: &[Scalar]) -> ModuleMap {
        let fld = self.src.field();
        let blocks = (0..self.src.num_vertices())
            .map(|v| {
                let (r, c) = (self.src.dims()[v], self.tgt.dims()[v]);
                Matrix::unflatten(fld, r, c, &x[self.offsets[v]..self.offsets[v] + r * c])
            })
            .collect();
        ModuleMap::new_unchecked(&self.src, &self.tgt, blocks)
    }

    pub fn basis(&self) -> Vec<ModuleMap> {
        self.space.basis().row_iter().map(|r| self.unflatten(r)).collect()
    }

    pub fn basis_map(&self, i: usize) -> ModuleMap {
        self.unflatten(self.space.basis().row(i))
    }

    /// Linear combination of the basis.
    pub fn combination(&self, coeffs: &[Scalar]) -> ModuleMap {
        self.unflatten(&self.space.basis().apply(coeffs))
    }

    pub fn coordinates(&self, f: &ModuleMap) -> Option<Vec<Scalar>> {
        self.space.coordinates(&self.flatten(f))
    }
}

/// Basis of `Hom_A(M, N)` from the intertwining equations
/// `M(a) F_t = F_s N(a)` for every arrow `a: s -> t`.
pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let nv = m.num_vertices();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += m.dims()[v] * n.dims()[v];
    }
    let q = m.algebra().quiver();
    let neq: usize = q.arrows().iter().map(|a| m.dims()[a.source] * n.dims()[a.target]).sum();
    let mut eq = Matrix::zeros(f, neq, total);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (m.arrow(ai), n.arrow(ai));
        let (ds_m, dt_m, ds_n, dt_n) = (m.dims()[s], m.dims()[t], n.dims()[s], n.dims()[t]);
        for i in 0..ds_m {
            for j in 0..dt_n {
                // sum_k M(a)[i,k] F_t[k,j]
                for k in 0..dt_m {
                    let c = ma.get(i, k);
                    if !c.is_zero() {
                        let col = offsets[t] + k * dt_n + j;
                        let cur = eq.get(row, col).clone();
                        eq.set(row, col, &cur + c);
                    }
                }
                // - sum_l F_s[i,l] N(a)[l,j]
                for l in 0..ds_n {
                    let c = na.get(l, j);
                    if !c.is_zero() {
                        let col = offsets[s] + i * ds_n + l;
                        let cur = eq.get(row, col).clone();
                        eq.set(row, col, &cur - c);
                    }
                }
                row += 1;
            }
        }
    }
    let space = eq.kernel_basis();
    Ok(HomSpace { src: m.clone(), tgt: n.clone(), offsets, space })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;

    #[test]
    fn hom_between_projectives() {
        let alg = a3r();
        let p1 = Module::projective(&alg, 0);
        let p2 = Module::projective(&alg, 1);
        assert_eq!(hom_dim(&p2, &p1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &p2).unwrap(), 0);
        let h = hom_space(&p2, &p1).unwrap();
        let f = h.basis_map(0);
        assert!(f.commutes());
        let (img, _) = f.image();
        assert_eq!(img.dims(), &[0, 1, 0]);
    }

    #[test]
    fn schur_for_simples() {
        let alg = a3r();
        for v in 0..3 {
            let s = Module::simple(&alg, v);
            assert_eq!(hom_dim(&s, &s).unwrap(), 1);
        }
    }

    #[test]
    fn hom_from_projective_counts_vertex_dimension() {
        let alg = a3r();
        let m = Module::regular(&alg);
        for v in 0..3 {
            let p = Module::projective(&alg, v);
            assert_eq!(hom_dim(&p, &m).unwrap(), m.dims()[v]);
        }
    }
}
