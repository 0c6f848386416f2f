//! `Hom(T, -)`, `- ⊗_A T` and the derived functors built from them.

use crate::algebra::complex::{
    coresolve_complex, resolve_complex, BoundedComplex, ChainMap, ComplexCoresolution, ComplexResolution,
};
use crate::algebra::hom::{hom_space, HomSpace};
use crate::algebra::module::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::data::TiltingData;

/// `Hom(T, X)` as a right `A`-module, with the Hom spaces that give its basis.
#[derive(Clone, Debug)]
pub struct HomT {
    pub module: Module,
    pub spaces: Vec<HomSpace>,
}

/// `M ⊗_A T = W / R` with `W = ⊕_i T_i^{dim M_i}`.
#[derive(Clone, Debug)]
pub struct TensorT {
    pub source: Module,
    pub module: Module,
    pub w: Module,
    /// `W -> M ⊗ T`.
    pub projection: ModuleMap,
    /// `incs[i][r]: T_i -> W`, the copy belonging to basis vector `r` of `M_i`.
    pub incs: Vec<Vec<ModuleMap>>,
}

impl TensorT {
    /// The map `T_i -> M ⊗ T`, `t ↦ m ⊗ t` for `m` basis vector `r` of `M_i`.
    pub fn element_map(&self, i: usize, r: usize) -> ModuleMap {
        self.incs[i][r].then(&self.projection)
    }
}

/// Model of `ΦX = Hom(T, I)` for an injective coresolution `X -> I`.
#[derive(Clone, Debug)]
pub struct PhiModel {
    pub complex: BoundedComplex,
    pub coresolution: ComplexCoresolution,
    pub homs: Vec<HomT>,
}

impl PhiModel {
    fn hom_at(&self, k: i32) -> &HomT {
        &self.homs[(k - self.complex.low()) as usize]
    }
}

/// Model of `ΨY = P ⊗ T` for a projective resolution `P -> Y`.
#[derive(Clone, Debug)]
pub struct PsiModel {
    pub complex: BoundedComplex,
    pub resolution: ComplexResolution,
    pub tensors: Vec<TensorT>,
}

impl PsiModel {
    fn tensor_at(&self, k: i32) -> &TensorT {
        &self.tensors[(k - self.complex.low()) as usize]
    }
}

impl TiltingData {
    pub fn hom_t(&self, x: &Module) -> Result<HomT> {
        if x.algebra() != &self.lambda {
            return Err(Error::AlgebraMismatch);
        }
        let spaces: Vec<HomSpace> = self.summands.iter().map(|t| hom_space(t, x)).collect::<Result<_>>()?;
        let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
        let f = x.field();
        let q = self.a.quiver();
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arr)| {
                let (s, t) = (arr.source, arr.target);
                let h = &self.arrow_maps[ai];
                let rows: Vec<_> = spaces[s]
                    .basis()
                    .iter()
                    .map(|g| spaces[t].coordinates(&h.then(g)).expect("precomposition stays in Hom"))
                    .collect();
                Matrix::from_rows(f, dims[t], &rows)
            })
            .collect();
        let module = Module::new(&self.a, dims, arrows)?;
        Ok(HomT { module, spaces })
    }

    pub fn hom_t_map(&self, g: &ModuleMap, hx: &HomT, hy: &HomT) -> ModuleMap {
        let f = g.source().field();
        let blocks = (0..self.num_summands())
            .map(|i| {
                let rows: Vec<_> = hx.spaces[i]
                    .basis()
                    .iter()
                    .map(|b| hy.spaces[i].coordinates(&b.then(g)).expect("postcomposition stays in Hom"))
                    .collect();
                Matrix::from_rows(f, hy.spaces[i].dim(), &rows)
            })
            .collect();
        ModuleMap::new_unchecked(&hx.module, &hy.module, blocks)
    }

    pub fn tensor_t(&self, m: &Module) -> Result<TensorT> {
        if m.algebra() != &self.a {
            return Err(Error::AlgebraMismatch);
        }
        let k = self.num_summands();
        let dims = m.dims().to_vec();
        let mut parts = Vec::new();
        for i in 0..k {
            for _ in 0..dims[i] {
                parts.push(self.summands[i].clone());
            }
        }
        let (w, winc, _) = Module::direct_sum(&self.lambda, &parts);
        let mut incs: Vec<Vec<ModuleMap>> = Vec::new();
        let mut it = winc.into_iter();
        for &d in dims.iter().take(k) {
            incs.push((0..d).map(|_| it.next().expect("one copy per basis vector")).collect());
        }
        // relations (m·a) ⊗ t - m ⊗ (a·t), one block T_t^{dim M_s} per arrow a: s -> t
        let q = self.a.quiver();
        let mut rel_parts = Vec::new();
        let mut rel_maps: Vec<ModuleMap> = Vec::new();
        for (ai, arr) in q.arrows().iter().enumerate() {
            let (s, t) = (arr.source, arr.target);
            let ma = m.arrow(ai);
            for r in 0..dims[s] {
                let mut g = self.arrow_maps[ai].then(&incs[s][r]).neg();
                for kk in 0..dims[t] {
                    let c = ma.get(r, kk);
                    if !c.is_zero() {
                        g = g.add(&incs[t][kk].scale(c));
                    }
                }
                rel_parts.push(self.summands[t].clone());
                rel_maps.push(g);
            }
        }
        let (rsum, _, rproj) = Module::direct_sum(&self.lambda, &rel_parts);
        let mut rho = ModuleMap::zero(&rsum, &w);
        for (p, g) in rproj.iter().zip(&rel_maps) {
            rho = rho.add(&p.then(g));
        }
        let (module, projection) = rho.cokernel();
        Ok(TensorT { source: m.clone(), module, w, projection, incs })
    }

    pub fn tensor_t_map(&self, g: &ModuleMap, tm: &TensorT, tn: &TensorT) -> Result<ModuleMap> {
        let mut lift = ModuleMap::zero(&tm.w, &tn.module);
        for i in 0..self.num_summands() {
            let b = g.block(i);
            for r in 0..b.rows() {
                // copy (i, r) goes to Σ_k g[r,k] copy (i, k)
                let mut target = ModuleMap::zero(&self.summands[i], &tn.module);
                for k in 0..b.cols() {
                    let c = b.get(r, k);
                    if !c.is_zero() {
                        target = target.add(&tn.element_map(i, k).scale(c));
                    }
                }
                lift = lift.add(&copy_projection(tm, &tm.incs[i][r]).then(&target));
            }
        }
        lift.factor_through_epi(&tm.projection)
            .ok_or_else(|| Error::Internal("tensor map does not respect the relations".into()))
    }

    pub(crate) fn module_depth(&self) -> usize {
        self.n.max(1) - 1
    }

    pub(crate) fn complex_depth(&self, x: &BoundedComplex) -> usize {
        let x = x.trimmed();
        if x.low() == x.high() {
            self.module_depth()
        } else {
            self.n
        }
    }

    /// `ΦX = Hom(T, I)`; for a module `E` the complex sits in degrees `0..=n`.
    pub fn phi_complex(&self, x: &BoundedComplex) -> Result<PhiModel> {
        if x.algebra() != &self.lambda {
            return Err(Error::AlgebraMismatch);
        }
        let cores = coresolve_complex(x, self.complex_depth(x))?;
        let i = &cores.complex;
        if i.is_empty() {
            return Ok(PhiModel { complex: BoundedComplex::zero(&self.a), coresolution: cores, homs: Vec::new() });
        }
        let homs: Vec<HomT> = i.degrees().map(|k| self.hom_t(&i.term(k))).collect::<Result<_>>()?;
        let diffs: Vec<ModuleMap> = i
            .degrees()
            .take(homs.len().saturating_sub(1))
            .enumerate()
            .map(|(idx, k)| self.hom_t_map(&i.diff(k), &homs[idx], &homs[idx + 1]))
            .collect();
        let terms = homs.iter().map(|h| h.module.clone()).collect();
        let complex = BoundedComplex::new_unchecked(&self.a, i.low(), terms, diffs);
        Ok(PhiModel { complex, coresolution: cores, homs })
    }

    pub fn phi_module(&self, e: &Module) -> Result<PhiModel> {
        self.phi_complex(&BoundedComplex::concentrated(e, 0))
    }

    /// `ΨY = P ⊗_A T`; for a module `M` the complex sits in degrees `-n..=0`.
    pub fn psi_complex(&self, y: &BoundedComplex) -> Result<PsiModel> {
        if y.algebra() != &self.a {
            return Err(Error::AlgebraMismatch);
        }
        self.psi_from_resolution(resolve_complex(y, self.complex_depth(y)))
    }

    /// `P ⊗_A T` for a given resolution `P -> Y`.
    pub fn psi_from_resolution(&self, res: ComplexResolution) -> Result<PsiModel> {
        let p = &res.complex;
        if p.is_empty() {
            return Ok(PsiModel { complex: BoundedComplex::zero(&self.lambda), resolution: res, tensors: Vec::new() });
        }
        let tensors: Vec<TensorT> = p.degrees().map(|k| self.tensor_t(&p.term(k))).collect::<Result<_>>()?;
        let diffs: Vec<ModuleMap> = p
            .degrees()
            .take(tensors.len().saturating_sub(1))
            .enumerate()
            .map(|(idx, k)| self.tensor_t_map(&p.diff(k), &tensors[idx], &tensors[idx + 1]))
            .collect::<Result<_>>()?;
        let terms = tensors.iter().map(|t| t.module.clone()).collect();
        let complex = BoundedComplex::new_unchecked(&self.lambda, p.low(), terms, diffs);
        Ok(PsiModel { complex, resolution: res, tensors })
    }

    pub fn psi_module(&self, m: &Module) -> Result<PsiModel> {
        self.psi_complex(&BoundedComplex::concentrated(m, 0))
    }

    /// `dim Φ^i E` for `i = 0..=n`.
    pub fn phi_dims(&self, e: &Module) -> Result<Vec<usize>> {
        let phi = self.phi_module(e)?;
        Ok((0..=self.n as i32).map(|k| phi.complex.cohomology_dim(k)).collect())
    }

    /// `dim Ψ^j M` for `j = -n..=0`.
    pub fn psi_dims(&self, m: &Module) -> Result<Vec<usize>> {
        let psi = self.psi_module(m)?;
        Ok((-(self.n as i32)..=0).map(|k| psi.complex.cohomology_dim(k)).collect())
    }

    pub fn phi_cohomology(&self, e: &Module, i: i32) -> Result<Module> {
        Ok(self.phi_module(e)?.complex.cohomology(i).module)
    }

    pub fn psi_cohomology(&self, m: &Module, j: i32) -> Result<Module> {
        Ok(self.psi_module(m)?.complex.cohomology(j).module)
    }

    /// Chain map `P ⊗ T -> I`, where `P -> Y -> ΦX` and `X -> I` is the
    /// coresolution behind `phi`; `f` is a chain map from the resolved
    /// complex `Y` into `phi.complex`.
    pub fn evaluation(&self, psi: &PsiModel, to_phi: &ChainMap, phi: &PhiModel) -> Result<ChainMap> {
        let i = &phi.coresolution.complex;
        let p = &psi.resolution.complex;
        let mut maps = Vec::new();
        for k in p.degrees() {
            if !i.degrees().contains(&k) {
                continue;
            }
            let tens = psi.tensor_at(k);
            let res_to_phi = to_phi.at(k);
            let hom = phi.hom_at(k);
            let target = i.term(k);
            let mut lift = ModuleMap::zero(&tens.w, &target);
            for v in 0..self.num_summands() {
                let b = res_to_phi.block(v);
                for r in 0..b.rows() {
                    let coeffs = b.row(r);
                    if coeffs.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let g = hom.spaces[v].combination(coeffs);
                    lift = lift.add(&copy_projection(tens, &tens.incs[v][r]).then(&g));
                }
            }
            let m = lift
                .factor_through_epi(&tens.projection)
                .ok_or_else(|| Error::Internal("evaluation does not respect the relations".into()))?;
            maps.push((k, m));
        }
        Ok(ChainMap::new_unchecked(&psi.complex, i, maps))
    }

    /// `ε: Hom(T, E) ⊗_A T -> E`, `f ⊗ t ↦ f(t)`; this is `Ψ^0 Φ^0 E -> E`.
    pub fn module_counit(&self, e: &Module) -> Result<(HomT, TensorT, ModuleMap)> {
        let hom = self.hom_t(e)?;
        let tens = self.tensor_t(&hom.module)?;
        let mut lift = ModuleMap::zero(&tens.w, e);
        for v in 0..self.num_summands() {
            for r in 0..hom.spaces[v].dim() {
                lift = lift.add(&copy_projection(&tens, &tens.incs[v][r]).then(&hom.spaces[v].basis_map(r)));
            }
        }
        let eps = lift
            .factor_through_epi(&tens.projection)
            .ok_or_else(|| Error::Internal("evaluation does not respect the relations".into()))?;
        Ok((hom, tens, eps))
    }

    /// Counit `ΨΦX -> X` realised as a chain map `ΨΦX -> I` together with the models used.
    pub fn counit(&self, x: &BoundedComplex) -> Result<(PhiModel, PsiModel, ChainMap)> {
        let phi = self.phi_complex(x)?;
        let psi = self.psi_complex(&phi.complex)?;
        let ev = self.evaluation(&psi, &psi.resolution.map, &phi)?;
        Ok((phi, psi, ev))
    }

    /// Unit `Y -> ΦΨY` realised as a chain map `P -> Hom(T, I')`, where
    /// `P -> Y` resolves `Y` and `ΨY -> I'` coresolves `ΨY`.
    pub fn unit(&self, y: &BoundedComplex) -> Result<(PsiModel, PhiModel, ChainMap)> {
        let psi = self.psi_complex(y)?;
        let phi = self.phi_complex(&psi.complex)?;
        let p = &psi.resolution.complex;
        let core = &phi.coresolution;
        let f = self.a.field();
        let mut maps = Vec::new();
        for k in p.degrees() {
            if !core.complex.degrees().contains(&k) {
                continue;
            }
            let tens = psi.tensor_at(k);
            let to_i = core.map.at(k);
            let hom = phi.hom_at(k);
            let blocks = (0..self.num_summands())
                .map(|v| {
                    let rows: Vec<_> = (0..p.term(k).dims()[v])
                        .map(|r| {
                            let g = tens.element_map(v, r).then(&to_i);
                            hom.spaces[v].coordinates(&g).expect("a module map from T_v")
                        })
                        .collect();
                    Matrix::from_rows(f, hom.spaces[v].dim(), &rows)
                })
                .collect();
            maps.push((k, ModuleMap::new_unchecked(&p.term(k), &hom.module, blocks)));
        }
        let chain = ChainMap::new_unchecked(p, &phi.complex, maps);
        Ok((psi, phi, chain))
    }
}

/// Projection of `W` onto copy `(i, r)`, assembled from the inclusion.
fn copy_projection(t: &TensorT, inc: &ModuleMap) -> ModuleMap {
    // inclusions of a direct sum are coordinate embeddings, so the projection is the transpose
    let blocks = inc.blocks().iter().map(Matrix::transpose).collect();
    ModuleMap::new_unchecked(&t.w, inc.source(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::algebra::resolution::ext_dim;
    use crate::tilting::data::tests::a3r_tilting;

    #[test]
    fn phi_of_t_is_regular() {
        let td = a3r_tilting();
        let phi = td.phi_module(&td.t).unwrap();
        assert!(phi.complex.check_d_squared());
        assert_eq!(phi.complex.cohomology_dim(0), td.a.dim());
        assert_eq!(td.phi_dims(&td.t).unwrap(), vec![5, 0, 0]);
        for (i, s) in td.summands.iter().enumerate() {
            let h0 = td.phi_cohomology(s, 0).unwrap();
            let p = Module::projective(&td.a, i);
            assert!(crate::algebra::endo::iso_indecomposables(&h0, &p).unwrap().is_some());
        }
    }

    #[test]
    fn phi_dims_match_ext() {
        let td = a3r_tilting();
        let alg = a3r();
        for v in 0..3 {
            let s = Module::simple(&alg, v);
            let dims = td.phi_dims(&s).unwrap();
            for (i, d) in dims.iter().enumerate() {
                let oracle: usize = td.summands.iter().map(|t| ext_dim(i, t, &s, 10).unwrap()).sum();
                assert_eq!(*d, oracle, "vertex {v}, degree {i}");
            }
        }
        assert_eq!(td.phi_dims(&Module::simple(&alg, 1)).unwrap(), vec![1, 1, 0]);
        assert_eq!(td.phi_dims(&Module::simple(&alg, 2)).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn psi_of_regular_is_t() {
        let td = a3r_tilting();
        let reg = Module::regular(&td.a);
        let psi = td.psi_module(&reg).unwrap();
        assert!(psi.complex.check_d_squared());
        assert_eq!(td.psi_dims(&reg).unwrap(), vec![0, 0, td.t.dim()]);
        let h0 = psi.complex.cohomology(0).module;
        assert!(crate::algebra::endo::find_isomorphism(&h0, &td.t, 1 << 16).unwrap().is_some());
        assert_eq!(td.psi_dims(&Module::zero(&td.a)).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn counit_and_unit_are_quasi_isomorphisms() {
        let td = a3r_tilting();
        let alg = a3r();
        for v in 0..3 {
            let s = BoundedComplex::concentrated(&Module::simple(&alg, v), 0);
            let (_, _, ev) = td.counit(&s).unwrap();
            assert!(ev.is_chain_map());
            assert!(ev.is_quasi_iso(), "counit at S{}", v + 1);
        }
        for v in 0..3 {
            let s = BoundedComplex::concentrated(&Module::simple(&td.a, v), 0);
            let (_, _, u) = td.unit(&s).unwrap();
            assert!(u.is_chain_map());
            assert!(u.is_quasi_iso(), "unit at simple {v}");
        }
    }
}
