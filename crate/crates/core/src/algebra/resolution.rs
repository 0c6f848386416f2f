//! Projective covers, minimal projective resolutions, Ext and global dimension.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

use super::module::{Module, ModuleMap, Submodule};
use super::path_algebra::FinDimAlgebra;

/// A direct sum of indecomposable projectives `P_{g_1} + P_{g_2} + ...`,
/// with the bookkeeping needed to read its elements as algebra elements.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub module: Module,
    /// Vertex of each generator.
    pub gens: Vec<usize>,
    /// For each vertex, the (generator, algebra basis index) of every coordinate.
    pub rows: Vec<Vec<(usize, usize)>>,
}

impl FreeModule {
    pub fn new(alg: &FinDimAlgebra, gens: Vec<usize>) -> FreeModule {
        let nv = alg.num_vertices();
        let mut parts = Vec::new();
        let mut rows: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (g, &v) in gens.iter().enumerate() {
            let (p, per_vertex) = Module::projective_with_basis(alg, v);
            for t in 0..nv {
                for &b in &per_vertex[t] {
                    rows[t].push((g, b));
                }
            }
            parts.push(p);
        }
        let module = Module::direct_sum(alg, &parts).0;
        FreeModule { module, gens, rows }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Coordinate (at vertex `gens[g]`) of generator `g`.
    pub fn generator_index(&self, g: usize) -> usize {
        let v = self.gens[g];
        let alg = self.module.algebra();
        let e = alg.idempotent(v);
        self.rows[v].iter().position(|&(h, b)| h == g && b == e).expect("generator present")
    }

    /// Generator `g` as a vector at its vertex.
    pub fn generator(&self, g: usize) -> Vec<Scalar> {
        let v = self.gens[g];
        let f = self.module.field();
        let mut x = vec![f.zero(); self.module.dims()[v]];
        x[self.generator_index(g)] = f.one();
        x
    }

    /// The unique map sending generator `g` to `images[g]` (a vector of `n` at vertex `gens[g]`).
    pub fn map_from_images(&self, n: &Module, images: &[Vec<Scalar>]) -> ModuleMap {
        let f = n.field();
        let blocks = (0..n.num_vertices())
            .map(|t| {
                let mut m = Matrix::zeros(f, self.module.dims()[t], n.dims()[t]);
                for (r, &(g, b)) in self.rows[t].iter().enumerate() {
                    let row = n.basis_action(b).apply(&images[g]);
                    for (j, x) in row.into_iter().enumerate() {
                        m.set(r, j, x);
                    }
                }
                m
            })
            .collect();
        ModuleMap::new_unchecked(&self.module, n, blocks)
    }

    /// Matrix of `Hom(self, N) -> Hom(Q, N)` for `d: Q -> self`, in generator-image coordinates.
    pub fn hom_pullback(&self, d: &ModuleMap, q: &FreeModule, n: &Module) -> Matrix {
        let f = n.field();
        let src_dim: usize = self.gens.iter().map(|&v| n.dims()[v]).sum();
        let tgt_dim: usize = q.gens.iter().map(|&v| n.dims()[v]).sum();
        let mut out = Matrix::zeros(f, src_dim, tgt_dim);
        let src_off = offsets(&self.gens, n);
        let tgt_off = offsets(&q.gens, n);
        for (g, &vg) in q.gens.iter().enumerate() {
            let x = d.apply(vg, &q.generator(g));
            for (r, c) in x.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (h, b) = self.rows[vg][r];
                let act = n.basis_action(b);
                let vh = self.gens[h];
                for j in 0..n.dims()[vh] {
                    for l in 0..n.dims()[vg] {
                        let y = act.get(j, l);
                        if y.is_zero() {
                            continue;
                        }
                        let (rr, cc) = (src_off[h] + j, tgt_off[g] + l);
                        let cur = out.get(rr, cc).clone();
                        out.set(rr, cc, cur.add_mul(c, y));
                    }
                }
            }
        }
        out
    }
}

fn offsets(gens: &[usize], n: &Module) -> Vec<usize> {
    let mut out = Vec::new();
    let mut acc = 0;
    for &v in gens {
        out.push(acc);
        acc += n.dims()[v];
    }
    out
}

/// Projective cover `P -> M`, generators taken from the echelon complement of `rad M`.
pub fn projective_cover(m: &Module) -> (FreeModule, ModuleMap) {
    let alg = m.algebra();
    let rad = m.radical();
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for v in 0..m.num_vertices() {
        let comp = rad.parts[v].complement_basis();
        for r in comp.row_iter() {
            gens.push(v);
            images.push(r.to_vec());
        }
    }
    let free = FreeModule::new(alg, gens);
    let map = free.map_from_images(m, &images);
    (free, map)
}

/// Minimal projective resolution `... -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub terms: Vec<FreeModule>,
    /// `differentials[k-1]` is `d_k: P_k -> P_{k-1}`.
    pub differentials: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// False if the length cap was hit before the kernel vanished.
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn projective_dimension(&self) -> Result<usize> {
        if !self.complete {
            return Err(Error::CapExceeded(format!(
                "resolution not finished after {} steps",
                self.terms.len()
            )));
        }
        Ok(if self.module.is_zero() { 0 } else { self.length() })
    }

    /// Exactness at every term and `d∘d = 0`.
    pub fn check_exact(&self) -> bool {
        if !self.augmentation.is_surjective() {
            return false;
        }
        let mut prev_kernel = self.augmentation.kernel_submodule();
        for d in &self.differentials {
            if d.image_submodule() != prev_kernel {
                return false;
            }
            prev_kernel = d.kernel_submodule();
        }
        !self.complete || prev_kernel.is_zero()
    }

    /// Every differential lands in the radical.
    pub fn check_minimal(&self) -> bool {
        self.differentials.iter().all(|d| d.image_submodule().is_sub_of(&d.target().radical()))
    }
}

pub fn minimal_resolution(m: &Module, max_len: usize) -> Resolution {
    let (p0, aug) = projective_cover(m);
    let mut terms = vec![p0];
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let (mut kmod, mut kinc) = aug.kernel();
    let mut complete = kmod.is_zero();
    while !complete && terms.len() <= max_len {
        let (p, cover) = projective_cover(&kmod);
        let d = cover.then(&kinc);
        let (k2, kinc2) = d.kernel();
        terms.push(p);
        diffs.push(d);
        kmod = k2;
        kinc = kinc2;
        complete = kmod.is_zero();
    }
    Resolution { module: m.clone(), terms, differentials: diffs, augmentation: aug, complete }
}

pub fn projective_dimension(m: &Module, cap: usize) -> Result<usize> {
    minimal_resolution(m, cap).projective_dimension()
}

/// Extension group with a basis of representative cocycles in `Hom(P_i, N)`,
/// written in generator-image coordinates.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: Vec<Vec<Scalar>>,
}

/// The cochain complex `Hom(P_•, N)` with `delta[k]: Hom(P_k, N) -> Hom(P_{k+1}, N)`.
pub fn hom_complex(res: &Resolution, n: &Module) -> (Vec<usize>, Vec<Matrix>) {
    let dims: Vec<usize> =
        res.terms.iter().map(|t| t.gens.iter().map(|&v| n.dims()[v]).sum()).collect();
    let deltas = res
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| res.terms[k].hom_pullback(d, &res.terms[k + 1], n))
        .collect();
    (dims, deltas)
}

pub fn ext_from_resolution(res: &Resolution, i: usize, n: &Module) -> Result<ExtGroup> {
    if res.module.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = n.field();
    if i >= res.terms.len() {
        if res.complete {
            return Ok(ExtGroup { degree: i, dim: 0, cocycles: Vec::new() });
        }
        return Err(Error::CapExceeded(format!("resolution too short for Ext^{i}")));
    }
    if i + 1 == res.terms.len() && !res.complete {
        return Err(Error::CapExceeded(format!("resolution too short for Ext^{i}")));
    }
    let (dims, deltas) = hom_complex(res, n);
    let z = if i < deltas.len() { deltas[i].left_kernel() } else { Subspace::full(f, dims[i]) };
    let b = if i > 0 { deltas[i - 1].image() } else { Subspace::zero(f, dims[i]) };
    let mut reps = Vec::new();
    let mut acc = b.clone();
    for r in z.basis().row_iter() {
        if !acc.contains(r) {
            acc = acc.sum(&Subspace::from_vectors(f, dims[i], &[r.to_vec()]));
            reps.push(r.to_vec());
        }
    }
    Ok(ExtGroup { degree: i, dim: z.dim() - b.dim(), cocycles: reps })
}

pub fn ext_group(i: usize, m: &Module, n: &Module, cap: usize) -> Result<ExtGroup> {
    let res = minimal_resolution(m, cap.max(i + 1));
    ext_from_resolution(&res, i, n)
}

pub fn ext_dim(i: usize, m: &Module, n: &Module, cap: usize) -> Result<usize> {
    Ok(ext_group(i, m, n, cap)?.dim)
}

pub fn global_dimension(alg: &FinDimAlgebra, cap: usize) -> Result<usize> {
    let mut gd = 0;
    for v in 0..alg.num_vertices() {
        gd = gd.max(projective_dimension(&Module::simple(alg, v), cap)?);
    }
    Ok(gd)
}

/// `true` if `m` is projective (its cover is an isomorphism).
pub fn is_projective(m: &Module) -> bool {
    let (p, _) = projective_cover(m);
    p.module.dim() == m.dim()
}

/// Radical series dims, mainly for diagnostics.
pub fn radical_layers(m: &Module) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        out.push(cur.top_dims());
        let r: Submodule = cur.radical();
        cur = cur.submodule(&r).0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, a3r};

    #[test]
    fn resolution_of_s1_in_a3r() {
        let alg = a3r();
        let s1 = Module::simple(&alg, 0);
        let res = minimal_resolution(&s1, 10);
        assert!(res.complete && res.check_exact() && res.check_minimal());
        let gens: Vec<Vec<usize>> = res.terms.iter().map(|t| t.gens.clone()).collect();
        assert_eq!(gens, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(res.projective_dimension().unwrap(), 2);
    }

    #[test]
    fn projective_resolves_in_length_zero() {
        let alg = a3r();
        let p = Module::projective(&alg, 1);
        assert_eq!(projective_dimension(&p, 10).unwrap(), 0);
    }

    #[test]
    fn ext_values_in_a3r() {
        let alg = a3r();
        let s = |v| Module::simple(&alg, v);
        let p = |v| Module::projective(&alg, v);
        assert_eq!(ext_dim(1, &s(0), &s(1), 10).unwrap(), 1);
        assert_eq!(ext_dim(2, &s(0), &p(2), 10).unwrap(), 1);
        assert_eq!(ext_dim(2, &s(0), &p(0), 10).unwrap(), 0);
        assert_eq!(ext_dim(0, &s(0), &s(0), 10).unwrap(), 1);
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(global_dimension(&a3r(), 10).unwrap(), 2);
        assert_eq!(global_dimension(&a2(), 10).unwrap(), 1);
        let s1 = Module::simple(&a2(), 0);
        let res = minimal_resolution(&s1, 10);
        assert_eq!(res.terms.iter().map(|t| t.gens.clone()).collect::<Vec<_>>(), vec![vec![0], vec![1]]);
    }
}
