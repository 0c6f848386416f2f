//! Right modules over path algebras, stored as quiver representations.
//!
//! Elements are row vectors in a vertex-adapted basis: the coordinates at
//! vertex `v` occupy `offset(v)..offset(v)+dims[v]`. An arrow `a: s -> t` acts
//! by `m -> m * arrow(a)` with `arrow(a)` of shape `dims[s] x dims[t]`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

use super::path_algebra::FinDimAlgebra;

#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

struct ModuleData {
    alg: FinDimAlgebra,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    arrows: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dims == other.0.dims
                && self.0.arrows == other.0.arrows
                && self.0.alg == other.0.alg)
    }
}
impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.0.dims)
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in dims {
        off.push(acc);
        acc += d;
    }
    off
}

impl Module {
    /// Build and validate a representation.
    pub fn new(alg: &FinDimAlgebra, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Module> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "expected {} vertex dimensions, got {}",
                q.num_vertices(),
                dims.len()
            )));
        }
        if arrows.len() != q.num_arrows() {
            return Err(Error::InvalidModule(format!(
                "expected {} arrow matrices, got {}",
                q.num_arrows(),
                arrows.len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&arrows) {
            if m.shape() != (dims[a.source], dims[a.target]) {
                return Err(Error::InvalidModule(format!(
                    "arrow {:?} needs a {}x{} matrix, got {}x{}",
                    a.label,
                    dims[a.source],
                    dims[a.target],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::InvalidField(format!("arrow {:?} over another field", a.label)));
            }
        }
        let m = Module::new_unchecked(alg, dims, arrows);
        for (i, r) in alg.relations().iter().enumerate() {
            let (s, t) = {
                let a = &q.arrows()[r.terms[0].1[0]];
                let last = &q.arrows()[*r.terms[0].1.last().unwrap()];
                (a.source, last.target)
            };
            let mut acc = Matrix::zeros(alg.field(), m.dims()[s], m.dims()[t]);
            for (c, p) in &r.terms {
                acc.add_scaled(c, &m.arrow_path(p));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {} is not satisfied", i + 1)));
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: &FinDimAlgebra, dims: Vec<usize>, arrows: Vec<Matrix>) -> Module {
        let offsets = offsets_of(&dims);
        Module(Arc::new(ModuleData { alg: alg.clone(), dims, offsets, arrows }))
    }

    pub fn zero(alg: &FinDimAlgebra) -> Module {
        let n = alg.num_vertices();
        Module::new_unchecked(
            alg,
            vec![0; n],
            alg.quiver().arrows().iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect(),
        )
    }

    pub fn simple(alg: &FinDimAlgebra, v: usize) -> Module {
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let arrows = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.field(), dims[a.source], dims[a.target]))
            .collect();
        Module::new_unchecked(alg, dims, arrows)
    }

    /// The indecomposable projective `e_v A`; its basis is the algebra basis
    /// elements starting at `v`, grouped by target.
    pub fn projective(alg: &FinDimAlgebra, v: usize) -> Module {
        let (m, _) = Module::projective_with_basis(alg, v);
        m
    }

    /// The projective `e_v A` together with, per vertex, the algebra basis
    /// indices spanning each vertex space (in coordinate order).
    pub fn projective_with_basis(alg: &FinDimAlgebra, v: usize) -> (Module, Vec<Vec<usize>>) {
        let nv = alg.num_vertices();
        let mut per_vertex: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for b in alg.basis_from(v) {
            per_vertex[alg.basis_path(b).target].push(b);
        }
        let dims: Vec<usize> = per_vertex.iter().map(Vec::len).collect();
        let f = alg.field();
        let mut arrows = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(f, dims[a.source], dims[a.target]);
            for (r, &b) in per_vertex[a.source].iter().enumerate() {
                let p = alg.basis_path(b);
                let mut w = p.arrows.clone();
                w.push(ai);
                for (k, c) in alg.reduce_path(p.source, &w) {
                    let col = per_vertex[a.target].iter().position(|&x| x == k).expect("target vertex");
                    m.set(r, col, c);
                }
            }
            arrows.push(m);
        }
        (Module::new_unchecked(alg, dims, arrows), per_vertex)
    }

    /// `A_A` as the direct sum of the indecomposable projectives.
    pub fn regular(alg: &FinDimAlgebra) -> Module {
        let ps: Vec<Module> = (0..alg.num_vertices()).map(|v| Module::projective(alg, v)).collect();
        Module::direct_sum(alg, &ps).0
    }

    /// The indecomposable injective at `v`, as the dual of a projective over the opposite algebra.
    pub fn injective(alg: &FinDimAlgebra, v: usize) -> Result<Module> {
        let op = alg.opposite()?;
        Ok(Module::projective(&op, v).dual_over(alg))
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.0.alg
    }
    pub fn field(&self) -> Field {
        self.0.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }
    pub fn dim(&self) -> usize {
        self.0.dims.iter().sum()
    }
    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn arrow(&self, a: usize) -> &Matrix {
        &self.0.arrows[a]
    }
    pub fn arrows(&self) -> &[Matrix] {
        &self.0.arrows
    }
    pub fn num_vertices(&self) -> usize {
        self.0.dims.len()
    }

    /// Action matrix of an arrow sequence starting at `source`.
    pub fn path_matrix(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.0.dims[source]);
        for &a in arrows {
            m = m.mul(&self.0.arrows[a]);
        }
        m
    }

    fn arrow_path(&self, arrows: &[usize]) -> Matrix {
        let s = self.0.alg.quiver().arrows()[arrows[0]].source;
        self.path_matrix(s, arrows)
    }

    /// Action block of algebra basis element `b` (source block to target block).
    pub fn basis_action(&self, b: usize) -> Matrix {
        let p = self.0.alg.basis_path(b);
        self.path_matrix(p.source, &p.arrows)
    }

    /// Full `dim x dim` action matrix of an algebra element in basis coordinates.
    pub fn element_action(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.0.alg.basis_path(b);
            let blk = self.basis_action(b).scale(c);
            let (r0, c0) = (self.offset(p.source), self.offset(p.target));
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    let cur = out.get(r0 + i, c0 + j).clone();
                    out.set(r0 + i, c0 + j, &cur + blk.get(i, j));
                }
            }
        }
        out
    }

    /// The part of a total-space vector at vertex `v`.
    pub fn vertex_part(&self, x: &[Scalar], v: usize) -> Vec<Scalar> {
        x[self.offset(v)..self.offset(v) + self.0.dims[v]].to_vec()
    }

    pub fn dual_over(&self, target: &FinDimAlgebra) -> Module {
        Module::new_unchecked(target, self.0.dims.clone(), self.0.arrows.iter().map(Matrix::transpose).collect())
    }

    /// `D M = Hom_k(M, k)` as a module over the opposite algebra.
    pub fn dual(&self) -> Result<Module> {
        Ok(self.dual_over(&self.0.alg.opposite()?))
    }

    /// Direct sum with canonical injections and projections.
    pub fn direct_sum(alg: &FinDimAlgebra, parts: &[Module]) -> (Module, Vec<ModuleMap>, Vec<ModuleMap>) {
        let nv = alg.num_vertices();
        let f = alg.field();
        let mut dims = vec![0; nv];
        for p in parts {
            for v in 0..nv {
                dims[v] += p.dims()[v];
            }
        }
        let mut arrows = Vec::new();
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.arrow(ai)).collect();
            let mut m = Matrix::block_diag(f, &blocks);
            if blocks.is_empty() {
                m = Matrix::zeros(f, dims[a.source], dims[a.target]);
            }
            arrows.push(m);
        }
        let sum = Module::new_unchecked(alg, dims.clone(), arrows);
        let mut incs = Vec::new();
        let mut projs = Vec::new();
        let mut start = vec![0; nv];
        for p in parts {
            let mut ib = Vec::new();
            let mut pb = Vec::new();
            for v in 0..nv {
                let mut inc = Matrix::zeros(f, p.dims()[v], dims[v]);
                inc.set_block(0, start[v], &Matrix::identity(f, p.dims()[v]));
                pb.push(inc.transpose());
                ib.push(inc);
                start[v] += p.dims()[v];
            }
            incs.push(ModuleMap::new_unchecked(p, &sum, ib));
            projs.push(ModuleMap::new_unchecked(&sum, p, pb));
        }
        (sum, incs, projs)
    }

    pub fn direct_sum2(a: &Module, b: &Module) -> Module {
        Module::direct_sum(a.algebra(), &[a.clone(), b.clone()]).0
    }

    /// Submodule as a module, with its inclusion.
    pub fn submodule(&self, sub: &Submodule) -> (Module, ModuleMap) {
        let f = self.field();
        let bases: Vec<Matrix> = sub.parts.iter().map(|s| s.basis().clone()).collect();
        let dims: Vec<usize> = sub.parts.iter().map(Subspace::dim).collect();
        let mut arrows = Vec::new();
        for (ai, a) in self.algebra().quiver().arrows().iter().enumerate() {
            let img = bases[a.source].mul(self.arrow(ai));
            let mut m = Matrix::zeros(f, dims[a.source], dims[a.target]);
            for r in 0..img.rows() {
                let c = sub.parts[a.target].coordinates(img.row(r)).expect("submodule is invariant");
                for (j, x) in c.into_iter().enumerate() {
                    m.set(r, j, x);
                }
            }
            arrows.push(m);
        }
        let m = Module::new_unchecked(self.algebra(), dims, arrows);
        let inc = ModuleMap::new_unchecked(&m, self, bases);
        (m, inc)
    }

    /// Quotient module with its projection. The quotient basis is the set of
    /// non-pivot coordinates of each vertex part of `sub`.
    pub fn quotient(&self, sub: &Submodule) -> (Module, ModuleMap) {
        let f = self.field();
        let nv = self.num_vertices();
        let mut projs = Vec::new();
        let mut dims = Vec::new();
        let mut sections = Vec::new();
        for v in 0..nv {
            let s = &sub.parts[v];
            let comp = s.complement_basis();
            let free: Vec<usize> =
                (0..comp.rows()).map(|r| comp.row(r).iter().position(|x| x.is_one()).unwrap()).collect();
            let d = self.dims()[v];
            let mut p = Matrix::zeros(f, d, free.len());
            for i in 0..d {
                let mut e = vec![f.zero(); d];
                e[i] = f.one();
                let red = reduce_mod(s, &e);
                for (j, &c) in free.iter().enumerate() {
                    p.set(i, j, red[c].clone());
                }
            }
            dims.push(free.len());
            projs.push(p);
            sections.push(comp);
        }
        let mut arrows = Vec::new();
        for ai in 0..self.algebra().num_arrows() {
            let a = &self.algebra().quiver().arrows()[ai];
            arrows.push(sections[a.source].mul(self.arrow(ai)).mul(&projs[a.target]));
        }
        let q = Module::new_unchecked(self.algebra(), dims, arrows);
        let proj = ModuleMap::new_unchecked(self, &q, projs);
        (q, proj)
    }

    /// Radical `M * rad A`: per vertex, the sum of arrow images.
    pub fn radical(&self) -> Submodule {
        let f = self.field();
        let mut parts: Vec<Subspace> = self.dims().iter().map(|&d| Subspace::zero(f, d)).collect();
        for (ai, a) in self.algebra().quiver().arrows().iter().enumerate() {
            let img = Subspace::from_rows(self.arrow(ai));
            parts[a.target] = parts[a.target].sum(&img);
        }
        Submodule { parts }
    }

    /// Socle: per vertex, the common kernel of outgoing arrows.
    pub fn socle(&self) -> Submodule {
        let f = self.field();
        let mut parts: Vec<Subspace> = self.dims().iter().map(|&d| Subspace::full(f, d)).collect();
        for (ai, a) in self.algebra().quiver().arrows().iter().enumerate() {
            parts[a.source] = parts[a.source].intersect(&self.arrow(ai).left_kernel());
        }
        Submodule { parts }
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let r = self.radical();
        self.dims().iter().zip(&r.parts).map(|(d, s)| d - s.dim()).collect()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_zero()
    }

    pub fn identity(&self) -> ModuleMap {
        ModuleMap::identity(self)
    }
}

/// `v` reduced modulo the echelon basis of `s` (zero at pivot positions).
pub fn reduce_mod(s: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (k, &p) in s.pivots().iter().enumerate() {
        let c = out[p].clone();
        if c.is_zero() {
            continue;
        }
        let nc = -&c;
        for (j, x) in s.basis().row(k).iter().enumerate() {
            if !x.is_zero() {
                out[j] = out[j].add_mul(&nc, x);
            }
        }
    }
    out
}

/// A submodule, given by one subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    pub parts: Vec<Subspace>,
}

impl Submodule {
    pub fn zero(m: &Module) -> Submodule {
        Submodule { parts: m.dims().iter().map(|&d| Subspace::zero(m.field(), d)).collect() }
    }

    pub fn full(m: &Module) -> Submodule {
        Submodule { parts: m.dims().iter().map(|&d| Subspace::full(m.field(), d)).collect() }
    }

    /// Smallest submodule containing the given per-vertex spaces.
    pub fn generated(m: &Module, mut parts: Vec<Subspace>) -> Submodule {
        let q = m.algebra().quiver();
        loop {
            let mut changed = false;
            for (ai, a) in q.arrows().iter().enumerate() {
                let img = parts[a.source].image_under(m.arrow(ai));
                if !img.is_subspace_of(&parts[a.target]) {
                    parts[a.target] = parts[a.target].sum(&img);
                    changed = true;
                }
            }
            if !changed {
                return Submodule { parts };
            }
        }
    }

    /// Submodule generated by a single vector at vertex `v`.
    pub fn generated_by(m: &Module, v: usize, x: &[Scalar]) -> Submodule {
        let f = m.field();
        let mut parts: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(f, d)).collect();
        parts[v] = Subspace::from_vectors(f, m.dims()[v], &[x.to_vec()]);
        Submodule::generated(m, parts)
    }

    pub fn is_invariant(&self, m: &Module) -> bool {
        m.algebra().quiver().arrows().iter().enumerate().all(|(ai, a)| {
            self.parts[a.source].image_under(m.arrow(ai)).is_subspace_of(&self.parts[a.target])
        })
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.sum(b)).collect() }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.intersect(b)).collect() }
    }

    pub fn is_sub_of(&self, other: &Submodule) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subspace_of(b))
    }

    /// Image under a module map whose source contains this submodule.
    pub fn image_under(&self, f: &ModuleMap) -> Submodule {
        Submodule {
            parts: self.parts.iter().zip(&f.blocks).map(|(s, b)| s.image_under(b)).collect(),
        }
    }

    /// Preimage of a submodule of the target.
    pub fn preimage(f: &ModuleMap, target: &Submodule) -> Submodule {
        Submodule {
            parts: f.blocks.iter().zip(&target.parts).map(|(b, t)| Subspace::preimage(b, t)).collect(),
        }
    }

    /// Total-space subspace in the adapted basis of `m`.
    pub fn to_subspace(&self, m: &Module) -> Subspace {
        let f = m.field();
        let mut rows = Vec::new();
        for (v, s) in self.parts.iter().enumerate() {
            for r in s.basis().row_iter() {
                let mut x = vec![f.zero(); m.dim()];
                for (j, c) in r.iter().enumerate() {
                    x[m.offset(v) + j] = c.clone();
                }
                rows.push(x);
            }
        }
        Subspace::from_vectors(f, m.dim(), &rows)
    }

    /// Inverse of [`Submodule::to_subspace`]; fails unless the subspace is vertex-homogeneous.
    pub fn from_subspace(m: &Module, s: &Subspace) -> Result<Submodule> {
        let f = m.field();
        let mut parts = Vec::new();
        for v in 0..m.num_vertices() {
            let rows: Vec<Vec<Scalar>> = s.basis().row_iter().map(|r| m.vertex_part(r, v)).collect();
            parts.push(Subspace::from_vectors(f, m.dims()[v], &rows));
        }
        let sub = Submodule { parts };
        if sub.dim() != s.dim() || !sub.is_invariant(m) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        Ok(sub)
    }
}

/// A homomorphism of right modules, stored as one block per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    src: Module,
    tgt: Module,
    blocks: Vec<Matrix>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}) {:?}", self.src, self.tgt, self.blocks)
    }
}

impl ModuleMap {
    pub fn new(src: &Module, tgt: &Module, blocks: Vec<Matrix>) -> Result<ModuleMap> {
        if src.algebra() != tgt.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if blocks.len() != src.num_vertices() {
            return Err(Error::InvalidMap("wrong number of vertex blocks".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (src.dims()[v], tgt.dims()[v]) {
                return Err(Error::InvalidMap(format!("block at vertex {v} has the wrong shape")));
            }
        }
        let f = ModuleMap::new_unchecked(src, tgt, blocks);
        if !f.commutes() {
            return Err(Error::InvalidMap("matrix does not commute with the action".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: &Module, tgt: &Module, blocks: Vec<Matrix>) -> ModuleMap {
        ModuleMap { src: src.clone(), tgt: tgt.clone(), blocks }
    }

    /// Build from a full `dim(src) x dim(tgt)` matrix; fails if it is not block diagonal.
    pub fn from_matrix(src: &Module, tgt: &Module, m: &Matrix) -> Result<ModuleMap> {
        if m.shape() != (src.dim(), tgt.dim()) {
            return Err(Error::InvalidMap("matrix shape".into()));
        }
        let nv = src.num_vertices();
        let mut blocks = Vec::new();
        for v in 0..nv {
            for w in 0..nv {
                let blk = m.submatrix(
                    src.offset(v)..src.offset(v) + src.dims()[v],
                    tgt.offset(w)..tgt.offset(w) + tgt.dims()[w],
                );
                if v == w {
                    blocks.push(blk);
                } else if !blk.is_zero() {
                    return Err(Error::InvalidMap("matrix mixes vertices".into()));
                }
            }
        }
        ModuleMap::new(src, tgt, blocks)
    }

    pub fn commutes(&self) -> bool {
        self.src.algebra().quiver().arrows().iter().enumerate().all(|(ai, a)| {
            self.src.arrow(ai).mul(&self.blocks[a.target]) == self.blocks[a.source].mul(self.tgt.arrow(ai))
        })
    }

    pub fn zero(src: &Module, tgt: &Module) -> ModuleMap {
        let f = src.field();
        let blocks = (0..src.num_vertices()).map(|v| Matrix::zeros(f, src.dims()[v], tgt.dims()[v])).collect();
        ModuleMap::new_unchecked(src, tgt, blocks)
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let f = m.field();
        ModuleMap::new_unchecked(m, m, m.dims().iter().map(|&d| Matrix::identity(f, d)).collect())
    }

    pub fn source(&self) -> &Module {
        &self.src
    }
    pub fn target(&self) -> &Module {
        &self.tgt
    }
    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }
    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    /// Full block-diagonal matrix.
    pub fn matrix(&self) -> Matrix {
        let f = self.src.field();
        let mut m = Matrix::zeros(f, self.src.dim(), self.tgt.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            m.set_block(self.src.offset(v), self.tgt.offset(v), b);
        }
        m
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        assert_eq!(self.tgt.dims(), g.src.dims(), "composition dimension mismatch");
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect();
        ModuleMap::new_unchecked(&self.src, &g.tgt, blocks)
    }

    pub fn add(&self, g: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMap::new_unchecked(&self.src, &self.tgt, blocks)
    }

    pub fn sub(&self, g: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.sub(b)).collect();
        ModuleMap::new_unchecked(&self.src, &self.tgt, blocks)
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        ModuleMap::new_unchecked(&self.src, &self.tgt, blocks)
    }

    pub fn neg(&self) -> ModuleMap {
        let blocks = self.blocks.iter().map(Matrix::neg).collect();
        ModuleMap::new_unchecked(&self.src, &self.tgt, blocks)
    }

    /// Replace source and target by equal-shaped modules (used after rebuilding).
    pub fn retarget(&self, src: &Module, tgt: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(src, tgt, self.blocks.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rank).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.tgt.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim() == self.tgt.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let mut blocks = Vec::new();
        for b in &self.blocks {
            blocks.push(b.inverse()?);
        }
        Some(ModuleMap::new_unchecked(&self.tgt, &self.src, blocks))
    }

    pub fn kernel_submodule(&self) -> Submodule {
        Submodule { parts: self.blocks.iter().map(Matrix::left_kernel).collect() }
    }

    pub fn image_submodule(&self) -> Submodule {
        Submodule { parts: self.blocks.iter().map(Matrix::image).collect() }
    }

    pub fn kernel(&self) -> (Module, ModuleMap) {
        self.src.submodule(&self.kernel_submodule())
    }

    pub fn image(&self) -> (Module, ModuleMap) {
        self.tgt.submodule(&self.image_submodule())
    }

    pub fn cokernel(&self) -> (Module, ModuleMap) {
        self.tgt.quotient(&self.image_submodule())
    }

    /// Apply to a vector at vertex `v`.
    pub fn apply(&self, v: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.blocks[v].apply(x)
    }

    /// Factor `self` through a monomorphism `g` with the same target: returns
    /// `h` with `h.then(g) == self`, if it exists.
    pub fn factor_through_mono(&self, g: &ModuleMap) -> Option<ModuleMap> {
        let mut blocks = Vec::new();
        for (a, b) in self.blocks.iter().zip(&g.blocks) {
            blocks.push(b.solve_left(a)?);
        }
        Some(ModuleMap::new_unchecked(&self.src, &g.src, blocks))
    }

    /// Factor `self` through an epimorphism `p` with the same source: returns
    /// `h` with `p.then(h) == self`, if `self` vanishes on `ker p`.
    pub fn factor_through_epi(&self, p: &ModuleMap) -> Option<ModuleMap> {
        let mut blocks = Vec::new();
        for (a, b) in self.blocks.iter().zip(&p.blocks) {
            // b * h = a, solved on transposes
            let ht = b.transpose().solve_left(&a.transpose())?;
            blocks.push(ht.transpose());
        }
        Some(ModuleMap::new_unchecked(&p.tgt, &self.tgt, blocks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;

    #[test]
    fn projectives_of_a3r() {
        let alg = a3r();
        let p1 = Module::projective(&alg, 0);
        assert_eq!(p1.dims(), &[1, 1, 0]);
        assert!(!p1.arrow(0).is_zero());
        let p2 = Module::projective(&alg, 1);
        assert_eq!(p2.dims(), &[0, 1, 1]);
        assert_eq!(Module::projective(&alg, 2).dims(), &[0, 0, 1]);
        assert_eq!(p1.socle().dim_vector(), vec![0, 1, 0]);
        assert_eq!(p1.top_dims(), vec![1, 0, 0]);
    }

    #[test]
    fn relation_is_enforced() {
        let alg = a3r();
        let f = alg.field();
        let one = Matrix::identity(f, 1);
        assert!(Module::new(&alg, vec![1, 1, 1], vec![one.clone(), one.clone()]).is_err());
        assert!(Module::new(&alg, vec![1, 1, 1], vec![one, Matrix::zeros(f, 1, 1)]).is_ok());
    }

    #[test]
    fn quotient_and_submodule_dimensions() {
        let alg = a3r();
        let p1 = Module::projective(&alg, 0);
        let soc = p1.socle();
        let (s, inc) = p1.submodule(&soc);
        let (q, proj) = p1.quotient(&soc);
        assert_eq!(s.dims(), &[0, 1, 0]);
        assert_eq!(q.dims(), &[1, 0, 0]);
        assert!(inc.commutes() && proj.commutes());
        assert!(inc.then(&proj).is_zero());
    }

    #[test]
    fn injective_of_a3r() {
        let alg = a3r();
        // I_2 has composition factors S1, S2
        assert_eq!(Module::injective(&alg, 1).unwrap().dims(), &[1, 1, 0]);
        assert_eq!(Module::injective(&alg, 2).unwrap().dims(), &[0, 1, 1]);
    }
}
