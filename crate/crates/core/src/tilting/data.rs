//! Validation of tilting modules and a quiver presentation of their endomorphism algebra.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::endo::{iso_indecomposables, locality, Locality};
use crate::algebra::hom::{hom_space, HomSpace};
use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::path_algebra::{FinDimAlgebra, Relation};
use crate::algebra::quiver::{Path, Quiver};
use crate::algebra::resolution::{ext_dim, global_dimension, minimal_resolution, Resolution};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

/// Caps used while validating and while applying the functors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TiltCaps {
    pub res_cap: usize,
    pub search_cap: u64,
}

impl Default for TiltCaps {
    fn default() -> Self {
        TiltCaps { res_cap: 10, search_cap: 1 << 16 }
    }
}

/// `0 -> Λ -> T^0 -> ... -> T^m -> 0` with every `T^i` in `add T`.
#[derive(Clone, Debug)]
pub struct AddTCoresolution {
    pub terms: Vec<Module>,
    /// `maps[0]: Λ -> T^0`, `maps[i]: T^(i-1) -> T^i`.
    pub maps: Vec<ModuleMap>,
    /// Multiplicity of each summand of `T` in each `T^i`.
    pub multiplicities: Vec<Vec<usize>>,
}

impl AddTCoresolution {
    pub fn is_exact(&self) -> bool {
        let n = self.maps.len();
        if !self.maps[0].is_injective() || !self.maps[n - 1].is_surjective() {
            return false;
        }
        (1..n).all(|i| self.maps[i - 1].image_submodule() == self.maps[i].kernel_submodule())
    }
}

/// A validated tilting module together with its endomorphism algebra `A`,
/// presented by a quiver with relations.
///
/// Vertex `i` of `A` is the summand `T_i`; a basis path from `i` to `j`
/// evaluates to a map `T_j -> T_i`, and `Hom(T, X)` is the right `A`-module
/// with `Hom(T_i, X)` at vertex `i`.
#[derive(Clone, Debug)]
pub struct TiltingData {
    pub lambda: FinDimAlgebra,
    pub names: Vec<String>,
    pub summands: Vec<Module>,
    pub t: Module,
    pub n: usize,
    pub gldim: usize,
    pub a: FinDimAlgebra,
    /// `basis_maps[b]` evaluates basis path `b` of `A`.
    pub basis_maps: Vec<ModuleMap>,
    /// Arrow evaluations `T_target -> T_source`.
    pub arrow_maps: Vec<ModuleMap>,
    /// Radical of each `End(T_i)`.
    pub radicals: Vec<Vec<ModuleMap>>,
    pub ptres: Vec<Resolution>,
    pub coresolution: AddTCoresolution,
    pub caps: TiltCaps,
    pub(crate) cache: LabelCache,
}

/// Memo of cohomology dimension vectors, keyed by side and exact module data.
#[derive(Clone, Debug, Default)]
pub(crate) struct LabelCache(pub(crate) Arc<Mutex<HashMap<(bool, String), Vec<usize>>>>);

fn not_tilting(axiom: &str, detail: String) -> Error {
    Error::NotTilting { axiom: axiom.into(), detail }
}

/// Check the tilting axioms for `T = ⊕ summands` and `n ≥ gldim Λ`, and
/// present `End(T)`. With `n = None` the global dimension of `Λ` is used.
pub fn validate_tilting(
    lambda: &FinDimAlgebra,
    names: &[String],
    summands: &[Module],
    n: Option<usize>,
    caps: TiltCaps,
) -> Result<TiltingData> {
    if summands.is_empty() {
        return Err(not_tilting("summands", "no summands given".into()));
    }
    if names.len() != summands.len() {
        return Err(Error::Semantic("one name per summand is required".into()));
    }
    for m in summands {
        if m.algebra() != lambda {
            return Err(Error::AlgebraMismatch);
        }
    }
    let gldim = global_dimension(lambda, caps.res_cap)?;
    let n = n.unwrap_or(gldim);
    if gldim > n {
        return Err(not_tilting(
            "homological dimension",
            format!("global dimension {gldim} exceeds n = {n}"),
        ));
    }
    let mut radicals = Vec::new();
    for (name, m) in names.iter().zip(summands) {
        match locality(m, caps.search_cap)? {
            Locality::SplitLocal { radical } => radicals.push(radical),
            Locality::Zero => return Err(not_tilting("indecomposable summands", format!("{name} is zero"))),
            Locality::Decomposable { .. } => {
                return Err(not_tilting("indecomposable summands", format!("{name} is decomposable")))
            }
            Locality::Local => {
                return Err(Error::Unsupported(format!(
                    "End({name}) is local with residue field larger than the ground field"
                )))
            }
        }
    }
    for i in 0..summands.len() {
        for j in 0..i {
            if iso_indecomposables(&summands[i], &summands[j])?.is_some() {
                return Err(not_tilting(
                    "basic",
                    format!("summands {} and {} are isomorphic", names[j], names[i]),
                ));
            }
        }
    }
    let t = Module::direct_sum(lambda, summands).0;
    let ptres: Vec<Resolution> = summands.iter().map(|m| minimal_resolution(m, caps.res_cap)).collect();
    for (name, r) in names.iter().zip(&ptres) {
        let pd = r.projective_dimension()?;
        if pd > n {
            return Err(not_tilting("projective dimension", format!("pd {name} = {pd} > {n}")));
        }
    }
    for i in 1..=n {
        for (a, x) in names.iter().zip(summands) {
            for (b, y) in names.iter().zip(summands) {
                let e = ext_dim(i, x, y, caps.res_cap)?;
                if e != 0 {
                    return Err(not_tilting(
                        "self-orthogonality",
                        format!("Ext^{i}({a}, {b}) has dimension {e}"),
                    ));
                }
            }
        }
    }
    let (a, basis_maps, arrow_maps) = present_endomorphisms(lambda, names, summands, &radicals)?;
    let mut td = TiltingData {
        lambda: lambda.clone(),
        names: names.to_vec(),
        summands: summands.to_vec(),
        t,
        n,
        gldim,
        a,
        basis_maps,
        arrow_maps,
        radicals,
        ptres,
        coresolution: AddTCoresolution { terms: Vec::new(), maps: Vec::new(), multiplicities: Vec::new() },
        caps,
        cache: LabelCache::default(),
    };
    td.coresolution = add_t_coresolution(&td, &Module::regular(lambda))?;
    Ok(td)
}

/// Evaluate a path of `A`'s quiver given the arrow evaluations.
fn evaluate(summands: &[Module], arrow_maps: &[ModuleMap], p: &Path) -> ModuleMap {
    let mut acc = ModuleMap::identity(&summands[p.target]);
    for &a in p.arrows.iter().rev() {
        acc = acc.then(&arrow_maps[a]);
    }
    acc
}

type Presentation = (FinDimAlgebra, Vec<ModuleMap>, Vec<ModuleMap>);

/// Gabriel quiver of `End(T)` with relations from the kernel of path evaluation.
fn present_endomorphisms(
    lambda: &FinDimAlgebra,
    names: &[String],
    summands: &[Module],
    radicals: &[Vec<ModuleMap>],
) -> Result<Presentation> {
    let k = summands.len();
    let f = lambda.field();
    // hom[i][j] = Hom(T_j, T_i)
    let hom: Vec<Vec<HomSpace>> = (0..k)
        .map(|i| (0..k).map(|j| hom_space(&summands[j], &summands[i])).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let rad_basis = |i: usize, j: usize| -> Vec<ModuleMap> {
        if i == j {
            radicals[i].clone()
        } else {
            hom[i][j].basis()
        }
    };
    let span = |i: usize, j: usize, maps: &[ModuleMap]| -> Subspace {
        let h = &hom[i][j];
        let rows: Vec<_> = maps.iter().map(|m| h.flatten(m)).collect();
        Subspace::from_vectors(f, h.num_unknowns(), &rows)
    };
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut arrow_maps: Vec<ModuleMap> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let mut products = Vec::new();
            for l in 0..k {
                for h1 in rad_basis(i, l) {
                    for h2 in rad_basis(l, j) {
                        products.push(h2.then(&h1));
                    }
                }
            }
            let mut acc = span(i, j, &products);
            let mut count = 0;
            for g in rad_basis(i, j) {
                let v = hom[i][j].flatten(&g);
                if !acc.contains(&v) {
                    acc = acc.sum(&Subspace::from_vectors(f, v.len(), &[v]));
                    count += 1;
                    let base = format!("{}_{}", names[i], names[j]);
                    arrows.push((format!("{base}#{count}"), names[i].clone(), names[j].clone()));
                    arrow_maps.push(g);
                }
            }
        }
    }
    // single arrows between a pair keep the plain label
    let labels: Vec<String> = arrows
        .iter()
        .map(|(l, _, _)| {
            let base = l.rsplit_once('#').map(|(b, _)| b).unwrap_or(l);
            let multiple = arrows.iter().filter(|(m, _, _)| m.starts_with(&format!("{base}#"))).count() > 1;
            if multiple {
                l.replace('#', "_")
            } else {
                base.to_string()
            }
        })
        .collect();
    let arrows: Vec<(String, String, String)> =
        arrows.into_iter().zip(labels).map(|((_, s, t), l)| (l, s, t)).collect();
    let quiver = Quiver::new(names.to_vec(), arrows)?;
    let total: usize = (0..k).map(|i| (0..k).map(|j| hom[i][j].dim()).sum::<usize>()).sum();
    // nilpotency of the radical bounds the relevant path length
    let mut len = 1;
    loop {
        let paths = quiver
            .paths_below(len + 1, 200_000)
            .ok_or_else(|| Error::CapExceeded("too many paths in the endomorphism quiver".into()))?;
        let longest: Vec<&Path> = paths.iter().filter(|p| p.len() == len).collect();
        if longest.iter().all(|p| evaluate(summands, &arrow_maps, p).is_zero()) {
            break;
        }
        len += 1;
        if len > total + 1 {
            return Err(Error::Internal("radical of End(T) is not nilpotent".into()));
        }
    }
    let paths = quiver.paths_below(len + 1, 200_000).expect("checked above");
    let mut relations = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let ps: Vec<&Path> = paths.iter().filter(|p| p.source == i && p.target == j && p.len() >= 2).collect();
            if ps.is_empty() {
                continue;
            }
            let rows: Vec<_> = ps.iter().map(|p| hom[i][j].flatten(&evaluate(summands, &arrow_maps, p))).collect();
            let m = crate::linalg::Matrix::from_rows(f, hom[i][j].num_unknowns(), &rows);
            let ker = m.left_kernel();
            for r in ker.basis().row_iter() {
                let terms = r
                    .iter()
                    .zip(&ps)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, p)| (c.clone(), p.arrows.clone()))
                    .collect();
                relations.push(Relation { terms });
            }
        }
    }
    let a = FinDimAlgebra::path_algebra(quiver, relations, f)?;
    if a.dim() != total {
        return Err(Error::Internal(format!(
            "presentation of End(T) has dimension {} instead of {total}",
            a.dim()
        )));
    }
    let basis_maps: Vec<ModuleMap> = a.basis().iter().map(|p| evaluate(summands, &arrow_maps, p)).collect();
    // evaluation is multiplicative: ev(b c) = ev(c) then ev(b)
    for b in 0..a.dim() {
        for c in 0..a.dim() {
            let (pb, pc) = (a.basis_path(b), a.basis_path(c));
            if pb.target != pc.source {
                continue;
            }
            let mut lhs = ModuleMap::zero(&summands[pc.target], &summands[pb.source]);
            for (d, s) in a.mul_basis(b, c) {
                lhs = lhs.add(&basis_maps[*d].scale(s));
            }
            if lhs != basis_maps[c].then(&basis_maps[b]) {
                return Err(Error::Internal("path evaluation is not multiplicative".into()));
            }
        }
    }
    Ok((a, basis_maps, arrow_maps))
}

impl TiltingData {
    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    pub fn lambda(&self) -> &FinDimAlgebra {
        &self.lambda
    }

    pub fn a(&self) -> &FinDimAlgebra {
        &self.a
    }

    /// Minimal left `add T`-approximation `X -> U`: one copy of `T_i` for each
    /// element of a basis of `Hom(X, T_i)` modulo maps through the radical of `add T`.
    pub fn left_approximation(&self, x: &Module) -> Result<(Module, ModuleMap, Vec<usize>)> {
        let k = self.num_summands();
        let f = x.field();
        let homs: Vec<HomSpace> = self.summands.iter().map(|t| hom_space(x, t)).collect::<Result<_>>()?;
        let mut chosen: Vec<Vec<ModuleMap>> = vec![Vec::new(); k];
        for i in 0..k {
            let h = &homs[i];
            let mut rows = Vec::new();
            for (j, hj) in homs.iter().enumerate() {
                let rad: Vec<ModuleMap> = if i == j {
                    self.radicals[i].clone()
                } else {
                    hom_space(&self.summands[j], &self.summands[i])?.basis()
                };
                for g in hj.basis() {
                    for r in &rad {
                        rows.push(h.flatten(&g.then(r)));
                    }
                }
            }
            let mut acc = Subspace::from_vectors(f, h.num_unknowns(), &rows);
            for g in h.basis() {
                let v = h.flatten(&g);
                if !acc.contains(&v) {
                    acc = acc.sum(&Subspace::from_vectors(f, v.len(), &[v]));
                    chosen[i].push(g);
                }
            }
        }
        let mults: Vec<usize> = chosen.iter().map(Vec::len).collect();
        let parts: Vec<Module> = chosen
            .iter()
            .enumerate()
            .flat_map(|(i, c)| std::iter::repeat(self.summands[i].clone()).take(c.len()))
            .collect();
        let (u, incs, _) = Module::direct_sum(&self.lambda, &parts);
        let mut map = ModuleMap::zero(x, &u);
        for (g, inc) in chosen.iter().flatten().zip(&incs) {
            map = map.add(&g.then(inc));
        }
        Ok((u, map, mults))
    }

    /// `X ∈ add T` iff its minimal left approximation is an isomorphism.
    pub fn in_add_t(&self, x: &Module) -> Result<Option<Vec<usize>>> {
        let (_, map, mults) = self.left_approximation(x)?;
        Ok(if map.is_iso() { Some(mults) } else { None })
    }
}

/// Coresolve `x` by minimal left `add T`-approximations until the cokernel lies in `add T`.
pub fn add_t_coresolution(td: &TiltingData, x: &Module) -> Result<AddTCoresolution> {
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut mults = Vec::new();
    let mut cur = x.clone();
    let mut into_cur: Option<ModuleMap> = None;
    for _ in 0..=td.n {
        let (u, approx, m) = td.left_approximation(&cur)?;
        if !approx.is_injective() {
            return Err(not_tilting("coresolution", "an add T approximation is not injective".into()));
        }
        let step = match &into_cur {
            Some(p) => p.then(&approx),
            None => approx.clone(),
        };
        maps.push(step);
        terms.push(u.clone());
        mults.push(m);
        if approx.is_iso() {
            // cur was already in add T
            return Ok(AddTCoresolution { terms, maps, multiplicities: mults });
        }
        let (c, proj) = approx.cokernel();
        if let Some(cm) = td.in_add_t(&c)? {
            let (u2, approx2, _) = td.left_approximation(&c)?;
            maps.push(proj.then(&approx2));
            terms.push(u2);
            mults.push(cm);
            return Ok(AddTCoresolution { terms, maps, multiplicities: mults });
        }
        cur = c;
        into_cur = Some(proj);
    }
    Err(not_tilting("coresolution", format!("no add T coresolution of length ≤ {}", td.n)))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, a3r};

    pub(crate) fn a3r_tilting() -> TiltingData {
        let alg = a3r();
        let names = vec!["P1".to_string(), "P2".to_string(), "S1".to_string()];
        let summands = vec![Module::projective(&alg, 0), Module::projective(&alg, 1), Module::simple(&alg, 0)];
        validate_tilting(&alg, &names, &summands, None, TiltCaps::default()).unwrap()
    }

    #[test]
    fn a3r_tilting_module_validates() {
        let td = a3r_tilting();
        assert_eq!(td.n, 2);
        assert_eq!(td.a.dim(), 5);
        assert_eq!(td.a.num_arrows(), 2);
        assert_eq!(td.a.relations().len(), 1);
        assert!(td.coresolution.is_exact());
        // P3 needs P2 -> P1 -> S1
        assert_eq!(td.coresolution.terms.len(), 3);
        assert_eq!(td.coresolution.multiplicities[0], vec![1, 2, 0]);
        assert_eq!(td.coresolution.multiplicities[1], vec![1, 0, 0]);
        assert_eq!(td.coresolution.multiplicities[2], vec![0, 0, 1]);
    }

    #[test]
    fn regular_module_is_tilting() {
        let alg = a3r();
        let names: Vec<String> = (1..=3).map(|i| format!("P{i}")).collect();
        let summands: Vec<Module> = (0..3).map(|v| Module::projective(&alg, v)).collect();
        let td = validate_tilting(&alg, &names, &summands, None, TiltCaps::default()).unwrap();
        assert_eq!(td.a.dim(), alg.dim());
        assert_eq!(td.coresolution.terms.len(), 1);
    }

    #[test]
    fn hereditary_tilting() {
        let alg = a2();
        let names = vec!["P1".to_string(), "S1".to_string()];
        let summands = vec![Module::projective(&alg, 0), Module::simple(&alg, 0)];
        let td = validate_tilting(&alg, &names, &summands, None, TiltCaps::default()).unwrap();
        assert_eq!(td.n, 1);
        assert!(td.coresolution.is_exact());
    }

    #[test]
    fn non_tilting_examples_are_rejected() {
        let alg = a3r();
        let names = vec!["P1".to_string(), "S2".to_string(), "S3".to_string()];
        let summands = vec![Module::projective(&alg, 0), Module::simple(&alg, 1), Module::simple(&alg, 2)];
        let err = validate_tilting(&alg, &names, &summands, None, TiltCaps::default()).unwrap_err();
        assert!(matches!(err, Error::NotTilting { ref axiom, .. } if axiom == "self-orthogonality"));
        let names = vec!["P1".to_string(), "P2".to_string()];
        let summands = vec![Module::projective(&alg, 0), Module::projective(&alg, 1)];
        let err = validate_tilting(&alg, &names, &summands, None, TiltCaps::default()).unwrap_err();
        assert!(matches!(err, Error::NotTilting { ref axiom, .. } if axiom == "coresolution"));
    }
}
