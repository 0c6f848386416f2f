//! Bounded cochain complexes of modules.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

use super::module::{Module, ModuleMap, Submodule};
use super::path_algebra::FinDimAlgebra;
use super::resolution::{projective_cover, FreeModule};

/// Terms `X^low, ..., X^(low+len-1)` with `d^k: X^k -> X^(k+1)`.
#[derive(Clone)]
pub struct BoundedComplex {
    alg: FinDimAlgebra,
    low: i32,
    terms: Vec<Module>,
    diffs: Vec<ModuleMap>,
}

impl fmt::Debug for BoundedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[")?;
        for (i, t) in self.terms.iter().enumerate() {
            write!(f, " {}:{:?}", self.low + i as i32, t.dims())?;
        }
        write!(f, " ]")
    }
}

impl BoundedComplex {
    pub fn new(alg: &FinDimAlgebra, low: i32, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Result<Self> {
        if !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidMap("complex needs one differential between consecutive terms".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source().dims() != terms[i].dims() || d.target().dims() != terms[i + 1].dims() {
                return Err(Error::InvalidMap(format!("differential {} has wrong shape", low + i as i32)));
            }
            if !d.commutes() {
                return Err(Error::InvalidMap("differential is not a module map".into()));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].then(&diffs[i]).is_zero() {
                return Err(Error::InvalidMap(format!("d∘d ≠ 0 at degree {}", low + i as i32 - 1)));
            }
        }
        Ok(BoundedComplex { alg: alg.clone(), low, terms, diffs })
    }

    pub(crate) fn new_unchecked(alg: &FinDimAlgebra, low: i32, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Self {
        BoundedComplex { alg: alg.clone(), low, terms, diffs }
    }

    pub fn zero(alg: &FinDimAlgebra) -> Self {
        BoundedComplex { alg: alg.clone(), low: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M` placed in degree `deg`.
    pub fn concentrated(m: &Module, deg: i32) -> Self {
        BoundedComplex { alg: m.algebra().clone(), low: deg, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.alg
    }
    pub fn low(&self) -> i32 {
        self.low
    }
    /// Highest degree carrying a term slot (may be `low - 1` for the empty complex).
    pub fn high(&self) -> i32 {
        self.low + self.terms.len() as i32 - 1
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, k: i32) -> Module {
        if k < self.low || k > self.high() {
            return Module::zero(&self.alg);
        }
        self.terms[(k - self.low) as usize].clone()
    }

    /// `d^k: X^k -> X^(k+1)`, zero outside the stored range.
    pub fn diff(&self, k: i32) -> ModuleMap {
        if k >= self.low && k < self.high() {
            return self.diffs[(k - self.low) as usize].clone();
        }
        ModuleMap::zero(&self.term(k), &self.term(k + 1))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.low..=self.high()
    }

    pub fn cycles(&self, k: i32) -> Submodule {
        self.diff(k).kernel_submodule()
    }

    pub fn boundaries(&self, k: i32) -> Submodule {
        self.diff(k - 1).image_submodule()
    }

    pub fn cohomology(&self, k: i32) -> Cohomology {
        let x = self.term(k);
        let z = self.cycles(k);
        let (zm, zinc) = x.submodule(&z);
        let b = Submodule::preimage(&zinc, &self.boundaries(k));
        let (h, proj) = zm.quotient(&b);
        let section = quotient_section(&b);
        Cohomology { degree: k, module: h, cycle_module: zm, cycle_inclusion: zinc, projection: proj, section }
    }

    pub fn cohomology_dim(&self, k: i32) -> usize {
        let z = self.cycles(k).dim();
        let b = self.boundaries(k).dim();
        z - b
    }

    /// `(degree, dim H^degree)` over the stored range.
    pub fn cohomology_dims(&self) -> Vec<(i32, usize)> {
        self.degrees().map(|k| (k, self.cohomology_dim(k))).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|k| self.cohomology_dim(k) == 0)
    }

    /// Smart truncation `τ^{≤j}`: `X^k` for `k < j`, `ker d^j` at `j`, zero above;
    /// returned with its inclusion.
    pub fn truncate_le(&self, j: i32) -> (BoundedComplex, ChainMap) {
        if j < self.low {
            let z = BoundedComplex::zero(&self.alg);
            let m = ChainMap::zero(&z, self);
            return (z, m);
        }
        let top = j.min(self.high());
        let mut terms = Vec::new();
        let mut incs = Vec::new();
        for k in self.low..=top {
            if k == j {
                let (zm, zinc) = self.term(k).submodule(&self.cycles(k));
                terms.push(zm);
                incs.push(zinc);
            } else {
                terms.push(self.term(k));
                incs.push(ModuleMap::identity(&self.term(k)));
            }
        }
        let mut diffs = Vec::new();
        for k in self.low..top {
            let i = (k - self.low) as usize;
            let d = self.diff(k);
            if k + 1 == j {
                diffs.push(d.factor_through_mono(&incs[i + 1]).expect("boundaries are cycles"));
            } else {
                diffs.push(d.retarget(&terms[i], &terms[i + 1]));
            }
        }
        let t = BoundedComplex::new_unchecked(&self.alg, self.low, terms, diffs);
        let maps = incs.into_iter().enumerate().map(|(i, m)| (self.low + i as i32, m)).collect();
        let inc = ChainMap::new_unchecked(&t, self, maps);
        (t, inc)
    }

    /// Smart truncation `τ^{≥j}`: `coker d^(j-1)` at `j`, `X^k` above; with the projection.
    pub fn truncate_ge(&self, j: i32) -> (BoundedComplex, ChainMap) {
        if j > self.high() {
            let z = BoundedComplex::zero(&self.alg);
            let m = ChainMap::zero(self, &z);
            return (z, m);
        }
        let bottom = j.max(self.low);
        let mut terms = Vec::new();
        let mut projs = Vec::new();
        for k in bottom..=self.high() {
            if k == j {
                let (q, p) = self.term(k).quotient(&self.boundaries(k));
                terms.push(q);
                projs.push(p);
            } else {
                terms.push(self.term(k));
                projs.push(ModuleMap::identity(&self.term(k)));
            }
        }
        let mut diffs = Vec::new();
        for k in bottom..self.high() {
            let i = (k - bottom) as usize;
            let d = self.diff(k);
            if k == j {
                diffs.push(d.factor_through_epi(&projs[i]).expect("boundaries are killed"));
            } else {
                diffs.push(d.retarget(&terms[i], &terms[i + 1]));
            }
        }
        let t = BoundedComplex::new_unchecked(&self.alg, bottom, terms, diffs);
        let maps = projs.into_iter().enumerate().map(|(i, m)| (bottom + i as i32, m)).collect();
        let proj = ChainMap::new_unchecked(self, &t, maps);
        (t, proj)
    }

    /// `X[s]`: degree `k` of the result is `X^(k+s)`; differentials change sign for odd `s`.
    pub fn shift(&self, s: i32) -> BoundedComplex {
        let diffs = if s % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(ModuleMap::neg).collect() };
        BoundedComplex { alg: self.alg.clone(), low: self.low - s, terms: self.terms.clone(), diffs }
    }

    /// `D X` over `target` (the opposite algebra): `(DX)^k = D(X^(-k))`.
    pub fn dual_over(&self, target: &FinDimAlgebra) -> BoundedComplex {
        if self.is_empty() {
            return BoundedComplex::zero(target);
        }
        let terms: Vec<Module> = self.terms.iter().rev().map(|m| m.dual_over(target)).collect();
        let n = terms.len();
        let diffs = (0..n.saturating_sub(1))
            .map(|i| {
                // (DX)^(-high+i) -> (DX)^(-high+i+1) is the transpose of d^(high-i-1)
                let d = &self.diffs[n - 2 - i];
                dual_map(d, &terms[i], &terms[i + 1])
            })
            .collect();
        BoundedComplex { alg: target.clone(), low: -self.high(), terms, diffs }
    }

    /// Drop zero terms at both ends.
    pub fn trimmed(&self) -> BoundedComplex {
        let nz: Vec<usize> = (0..self.terms.len()).filter(|&i| !self.terms[i].is_zero()).collect();
        let (Some(&a), Some(&b)) = (nz.first(), nz.last()) else {
            return BoundedComplex::zero(&self.alg);
        };
        BoundedComplex {
            alg: self.alg.clone(),
            low: self.low + a as i32,
            terms: self.terms[a..=b].to_vec(),
            diffs: self.diffs[a..b].to_vec(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::dim).sum()
    }

    pub fn check_d_squared(&self) -> bool {
        (1..self.diffs.len()).all(|i| self.diffs[i - 1].then(&self.diffs[i]).is_zero())
    }
}

/// Transpose of `f: M -> N` as a map `DN -> DM`.
pub fn dual_map(f: &ModuleMap, dn: &Module, dm: &Module) -> ModuleMap {
    ModuleMap::new_unchecked(dn, dm, f.blocks().iter().map(Matrix::transpose).collect())
}

/// Per-vertex section of the quotient `zm -> zm/b`: rows are the chosen lifts.
fn quotient_section(b: &Submodule) -> Vec<Matrix> {
    b.parts.iter().map(|s| s.complement_basis()).collect()
}

/// `H^k(X) = Z^k / B^k` together with the maps needed to move classes around.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub module: Module,
    pub cycle_module: Module,
    /// `Z^k -> X^k`.
    pub cycle_inclusion: ModuleMap,
    /// `Z^k -> H^k`.
    pub projection: ModuleMap,
    /// Per vertex, lifts of the basis of `H^k` into `Z^k` coordinates.
    pub section: Vec<Matrix>,
}

impl Cohomology {
    /// Lift of the basis of `H^k` at each vertex, as vectors of `X^k`.
    pub fn lift_to_term(&self, v: usize) -> Matrix {
        self.section[v].mul(self.cycle_inclusion.block(v))
    }

    /// Class of a cycle given as a vector of `X^k` at vertex `v`.
    pub fn class_of(&self, v: usize, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let z = self.cycle_inclusion.block(v).solve_left(&Matrix::from_rows(self.module.field(), x.len(), &[x.to_vec()]))?;
        Some(self.projection.block(v).apply(z.row(0)))
    }
}

/// A chain map, one module map per degree (missing degrees are zero).
#[derive(Clone, Debug)]
pub struct ChainMap {
    src: BoundedComplex,
    tgt: BoundedComplex,
    lo: i32,
    maps: Vec<ModuleMap>,
}

impl ChainMap {
    pub fn new(src: &BoundedComplex, tgt: &BoundedComplex, maps: Vec<(i32, ModuleMap)>) -> Result<ChainMap> {
        let c = ChainMap::new_unchecked(src, tgt, maps);
        let lo = src.low().min(tgt.low());
        let hi = src.high().max(tgt.high());
        for k in lo..=hi {
            let f = c.at(k);
            if f.source().dims() != src.term(k).dims() || f.target().dims() != tgt.term(k).dims() {
                return Err(Error::InvalidMap(format!("chain map component {k} has wrong shape")));
            }
            if !f.commutes() {
                return Err(Error::InvalidMap(format!("chain map component {k} is not a module map")));
            }
            let lhs = src.diff(k).then(&c.at(k + 1));
            let rhs = f.then(&tgt.diff(k));
            if lhs.blocks() != rhs.blocks() {
                return Err(Error::InvalidMap(format!("chain map does not commute at degree {k}")));
            }
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(src: &BoundedComplex, tgt: &BoundedComplex, maps: Vec<(i32, ModuleMap)>) -> ChainMap {
        let lo = src.low().min(tgt.low());
        let hi = src.high().max(tgt.high());
        let mut out: Vec<ModuleMap> =
            (lo..=hi).map(|k| ModuleMap::zero(&src.term(k), &tgt.term(k))).collect();
        for (k, m) in maps {
            if k >= lo && k <= hi {
                out[(k - lo) as usize] = m;
            }
        }
        ChainMap { src: src.clone(), tgt: tgt.clone(), lo, maps: out }
    }

    pub fn zero(src: &BoundedComplex, tgt: &BoundedComplex) -> ChainMap {
        ChainMap::new_unchecked(src, tgt, Vec::new())
    }

    pub fn source(&self) -> &BoundedComplex {
        &self.src
    }
    pub fn target(&self) -> &BoundedComplex {
        &self.tgt
    }

    pub fn at(&self, k: i32) -> ModuleMap {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.maps.len() {
            return self.maps[i as usize].clone();
        }
        ModuleMap::zero(&self.src.term(k), &self.tgt.term(k))
    }

    pub fn then(&self, g: &ChainMap) -> ChainMap {
        let lo = self.src.low().min(g.tgt.low());
        let hi = self.src.high().max(g.tgt.high());
        let maps = (lo..=hi).map(|k| (k, self.at(k).then(&g.at(k)))).collect();
        ChainMap::new_unchecked(&self.src, &g.tgt, maps)
    }

    pub fn is_chain_map(&self) -> bool {
        let lo = self.src.low().min(self.tgt.low()) - 1;
        let hi = self.src.high().max(self.tgt.high());
        (lo..=hi).all(|k| {
            self.src.diff(k).then(&self.at(k + 1)).blocks() == self.at(k).then(&self.tgt.diff(k)).blocks()
        })
    }

    /// Induced map `H^k(src) -> H^k(tgt)` between the given cohomology objects.
    pub fn on_cohomology(&self, hs: &Cohomology, ht: &Cohomology) -> ModuleMap {
        let f = self.at(hs.degree);
        let blocks = (0..hs.module.num_vertices())
            .map(|v| {
                let lifted = hs.lift_to_term(v).mul(f.block(v));
                let z = ht
                    .cycle_inclusion
                    .block(v)
                    .solve_left(&lifted)
                    .expect("chain maps send cycles to cycles");
                z.mul(ht.projection.block(v))
            })
            .collect();
        ModuleMap::new_unchecked(&hs.module, &ht.module, blocks)
    }

    pub fn is_quasi_iso(&self) -> bool {
        let lo = self.src.low().min(self.tgt.low());
        let hi = self.src.high().max(self.tgt.high());
        (lo..=hi).all(|k| {
            let hs = self.src.cohomology(k);
            let ht = self.tgt.cohomology(k);
            hs.module.dim() == ht.module.dim() && self.on_cohomology(&hs, &ht).is_iso()
        })
    }
}

/// A projective resolution `φ: P -> X` of a bounded complex. Every term of
/// `P` in degrees `≥ low(X) - depth` is projective; the lowest term is the
/// kernel that makes the resolution exact.
#[derive(Clone, Debug)]
pub struct ComplexResolution {
    pub complex: BoundedComplex,
    pub map: ChainMap,
    /// Free-module data for the projective terms, indexed from `complex.low()`.
    pub free: Vec<Option<FreeModule>>,
}

/// Cone construction, working down from the top degree.
pub fn resolve_complex(x: &BoundedComplex, depth: usize) -> ComplexResolution {
    let alg = x.algebra().clone();
    if x.is_empty() || x.total_dim() == 0 {
        let z = BoundedComplex::zero(&alg);
        return ComplexResolution { map: ChainMap::zero(&z, x), complex: z, free: Vec::new() };
    }
    let x = x.trimmed();
    let (lo, hi) = (x.low(), x.high());
    let bottom = lo - depth as i32;
    let zero = Module::zero(&alg);
    let mut p: BTreeMap<i32, Module> = BTreeMap::new();
    let mut free: BTreeMap<i32, Option<FreeModule>> = BTreeMap::new();
    let mut dp: BTreeMap<i32, ModuleMap> = BTreeMap::new();
    let mut phi: BTreeMap<i32, ModuleMap> = BTreeMap::new();

    let mut k = hi;
    loop {
        let p1 = p.get(&(k + 1)).cloned().unwrap_or_else(|| zero.clone());
        let p2 = p.get(&(k + 2)).cloned().unwrap_or_else(|| zero.clone());
        let (xk, xk1) = (x.term(k), x.term(k + 1));
        let (cone, incs, projs) = Module::direct_sum(&alg, &[p1.clone(), xk.clone()]);
        let (cone1, incs1, _) = Module::direct_sum(&alg, &[p2.clone(), xk1.clone()]);
        let dp1 = dp.get(&(k + 1)).cloned().unwrap_or_else(|| ModuleMap::zero(&p1, &p2));
        let phi1 = phi.get(&(k + 1)).cloned().unwrap_or_else(|| ModuleMap::zero(&p1, &xk1));
        // d_C(p, x) = (-d_P p, φ(p) + d_X x)
        let dc = projs[0]
            .then(&dp1.neg())
            .then(&incs1[0])
            .add(&projs[0].then(&phi1).then(&incs1[1]))
            .add(&projs[1].then(&x.diff(k)).then(&incs1[1]))
            .retarget(&cone, &cone1);
        let (zm, zinc) = cone.submodule(&dc.kernel_submodule());

        let (pk, pi, fk) = if k < bottom {
            (zm.clone(), zinc, None)
        } else {
            let bx = x.diff(k - 1).then(&incs[1]).image_submodule();
            let b_in_z = Submodule::preimage(&zinc, &bx);
            let (qm, _) = zm.quotient(&b_in_z);
            let section: Vec<Matrix> = b_in_z.parts.iter().map(|s| s.complement_basis()).collect();
            let (fm, cover) = projective_cover(&qm);
            let images: Vec<Vec<Scalar>> = (0..fm.rank())
                .map(|g| {
                    let v = fm.gens[g];
                    let q = cover.apply(v, &fm.generator(g));
                    zinc.apply(v, &section[v].apply(&q))
                })
                .collect();
            let pi = fm.map_from_images(&cone, &images);
            (fm.module.clone(), pi, Some(fm))
        };
        dp.insert(k, pi.then(&projs[0]).neg().retarget(&pk, &p1));
        phi.insert(k, pi.then(&projs[1]).retarget(&pk, &xk));
        p.insert(k, pk);
        free.insert(k, fk);
        if k < bottom {
            break;
        }
        k -= 1;
    }

    let low = k;
    let terms: Vec<Module> = (low..=hi).map(|d| p[&d].clone()).collect();
    let diffs: Vec<ModuleMap> = (low..hi).map(|d| dp[&d].clone()).collect();
    let complex = BoundedComplex::new_unchecked(&alg, low, terms, diffs);
    let maps = (low..=hi).map(|d| (d, phi[&d].clone())).collect();
    let map = ChainMap::new_unchecked(&complex, &x, maps);
    let free = (low..=hi).map(|d| free.remove(&d).flatten()).collect();
    ComplexResolution { complex, map, free }
}

/// An injective coresolution `X -> I`, computed through duality. The terms
/// in degrees `≤ high(X) + depth` are injective; the top term is a cosyzygy.
#[derive(Clone, Debug)]
pub struct ComplexCoresolution {
    pub complex: BoundedComplex,
    pub map: ChainMap,
}

pub fn coresolve_complex(x: &BoundedComplex, depth: usize) -> Result<ComplexCoresolution> {
    let alg = x.algebra().clone();
    let op = alg.opposite()?;
    let x = x.trimmed();
    let dx = x.dual_over(&op);
    let res = resolve_complex(&dx, depth);
    let i = res.complex.dual_over(&alg);
    let lo = x.low().min(i.low());
    let hi = x.high().max(i.high());
    let maps = (lo..=hi)
        .map(|k| {
            let f = res.map.at(-k);
            (k, dual_map(&f, &x.term(k), &i.term(k)))
        })
        .collect();
    let map = ChainMap::new_unchecked(&x, &i, maps);
    Ok(ComplexCoresolution { complex: i, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::algebra::hom::hom_space;

    fn two_term() -> BoundedComplex {
        // P2 -> P1 (the nonzero map), in degrees -1, 0
        let alg = a3r();
        let p1 = Module::projective(&alg, 0);
        let p2 = Module::projective(&alg, 1);
        let f = hom_space(&p2, &p1).unwrap().basis_map(0);
        BoundedComplex::new(&alg, -1, vec![p2, p1], vec![f]).unwrap()
    }

    #[test]
    fn cohomology_of_two_term_complex() {
        let c = two_term();
        assert_eq!(c.cohomology_dims(), vec![(-1, 1), (0, 1)]);
        assert_eq!(c.cohomology(-1).module.dims(), &[0, 0, 1]);
        assert_eq!(c.cohomology(0).module.dims(), &[1, 0, 0]);
    }

    #[test]
    fn truncations_split_cohomology() {
        let c = two_term();
        let (le, inc) = c.truncate_le(-1);
        assert!(inc.is_chain_map());
        assert_eq!(le.cohomology_dims(), vec![(-1, 1)]);
        let (ge, proj) = c.truncate_ge(0);
        assert!(proj.is_chain_map());
        assert_eq!(ge.cohomology_dims(), vec![(0, 1)]);
    }

    #[test]
    fn resolution_of_complex_is_quasi_iso() {
        let c = two_term();
        for depth in 0..3 {
            let r = resolve_complex(&c, depth);
            assert!(r.complex.check_d_squared());
            assert!(r.map.is_chain_map(), "depth {depth}");
            assert!(r.map.is_quasi_iso(), "depth {depth}");
        }
    }

    #[test]
    fn resolution_of_simple() {
        let alg = a3r();
        let s1 = BoundedComplex::concentrated(&Module::simple(&alg, 0), 0);
        let r = resolve_complex(&s1, 1);
        assert!(r.map.is_quasi_iso());
        assert_eq!(r.complex.low(), -2);
        assert_eq!(r.complex.term(0).dims(), &[1, 1, 0]);
        assert_eq!(r.complex.term(-1).dims(), &[0, 1, 1]);
        assert_eq!(r.complex.term(-2).dims(), &[0, 0, 1]);
    }

    #[test]
    fn coresolution_of_simple() {
        let alg = a3r();
        let s3 = BoundedComplex::concentrated(&Module::simple(&alg, 2), 0);
        let r = coresolve_complex(&s3, 1).unwrap();
        assert!(r.map.is_chain_map());
        assert!(r.map.is_quasi_iso());
        // S3 -> I3 = P2 -> I2 = P1 -> S1
        assert_eq!(r.complex.term(0).dims(), &[0, 1, 1]);
        assert_eq!(r.complex.term(1).dims(), &[1, 1, 0]);
    }
}
