//! Brute-force enumeration over prime fields: submodules, representations,
//! indecomposables and their direct sums.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

use super::endo::{is_indecomposable, iso_indecomposables};
use super::module::{Module, Submodule};
use super::path_algebra::FinDimAlgebra;

/// Caps shared by every enumeration routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumCaps {
    /// Largest module dimension accepted by submodule enumeration.
    pub max_dim: usize,
    /// Largest number of candidates in any exhaustive search.
    pub max_candidates: u64,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps { max_dim: 8, max_candidates: 1 << 20 }
    }
}

fn prime_of(f: Field) -> Result<u64> {
    match f {
        Field::PrimeField(p) => Ok(p as u64),
        Field::Rationals => Err(Error::Unsupported("enumeration needs a prime field".into())),
    }
}

/// Every vector of `F_p^n` in lexicographic residue order.
pub fn all_vectors(f: Field, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let p = prime_of(f)?;
    let elems = f.elements()?;
    let total = p.checked_pow(n as u32).ok_or_else(|| Error::CapExceeded("vector count".into()))?;
    Ok((0..total)
        .map(|mut idx| {
            let mut v = vec![f.zero(); n];
            for slot in v.iter_mut().rev() {
                *slot = elems[(idx % p) as usize].clone();
                idx /= p;
            }
            v
        })
        .collect())
}

fn sort_key(s: &Submodule) -> (usize, Vec<usize>, Vec<i64>) {
    let mut entries = Vec::new();
    for part in &s.parts {
        for r in part.basis().row_iter() {
            entries.extend(r.iter().map(|c| c.to_i64().unwrap_or(0)));
        }
    }
    (s.dim(), s.dim_vector(), entries)
}

/// All submodules of `m`, each exactly once, sorted by dimension, dimension
/// vector and echelon basis.
pub fn enumerate_submodules(m: &Module, caps: EnumCaps) -> Result<Vec<Submodule>> {
    let f = m.field();
    prime_of(f)?;
    if m.dim() > caps.max_dim {
        return Err(Error::CapExceeded(format!(
            "submodule enumeration of a {}-dimensional module (cap {})",
            m.dim(),
            caps.max_dim
        )));
    }
    let vectors: Vec<Vec<Vec<Scalar>>> =
        m.dims().iter().map(|&d| all_vectors(f, d)).collect::<Result<_>>()?;
    let zero = Submodule::zero(m);
    let mut seen: HashSet<Submodule> = HashSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(u) = frontier.pop() {
        for (v, vs) in vectors.iter().enumerate() {
            for x in vs {
                if u.parts[v].contains(x) {
                    continue;
                }
                let w = u.sum(&Submodule::generated_by(m, v, x));
                if seen.insert(w.clone()) {
                    if seen.len() as u64 > caps.max_candidates {
                        return Err(Error::CapExceeded("too many submodules".into()));
                    }
                    frontier.push(w);
                }
            }
        }
    }
    let mut out: Vec<Submodule> = seen.into_iter().collect();
    out.sort_by_cached_key(sort_key);
    Ok(out)
}

/// Dimension vectors with `1 ≤ total ≤ max_total`, ordered by total then lexicographically.
pub fn dimension_vectors(num_vertices: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        let mut cur = vec![0; num_vertices];
        fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
        }
        if num_vertices > 0 {
            rec(0, total, &mut cur, &mut out);
        }
    }
    out
}

/// Every representation with dimension vector `dims` satisfying the relations.
pub fn enumerate_representations(alg: &FinDimAlgebra, dims: &[usize], caps: EnumCaps) -> Result<Vec<Module>> {
    let f = alg.field();
    let p = prime_of(f)?;
    let q = alg.quiver();
    let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.source], dims[a.target])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = (p as f64).powi(entries as i32);
    if total > caps.max_candidates as f64 {
        return Err(Error::CapExceeded(format!(
            "{} candidate representations with dimension vector {:?}",
            total, dims
        )));
    }
    let elems = f.elements()?;
    let mut out = Vec::new();
    for mut idx in 0..(total as u64) {
        let mut data = Vec::with_capacity(entries);
        for _ in 0..entries {
            data.push(elems[(idx % p) as usize].clone());
            idx /= p;
        }
        let mut arrows = Vec::with_capacity(shapes.len());
        let mut off = 0;
        for &(r, c) in &shapes {
            arrows.push(Matrix::unflatten(f, r, c, &data[off..off + r * c]));
            off += r * c;
        }
        if let Ok(m) = Module::new(alg, dims.to_vec(), arrows) {
            out.push(m);
        }
    }
    Ok(out)
}

/// One representative per isomorphism class of indecomposable modules of
/// total dimension at most `max_dim`.
pub fn indecomposables(alg: &FinDimAlgebra, max_dim: usize, caps: EnumCaps) -> Result<Vec<Module>> {
    let mut reps: Vec<Module> = Vec::new();
    for dims in dimension_vectors(alg.num_vertices(), max_dim) {
        let start = reps.len();
        // projectives and simples first, so that representatives are recognisable
        let mut candidates: Vec<Module> = Vec::new();
        for v in 0..alg.num_vertices() {
            for m in [Module::simple(alg, v), Module::projective(alg, v)] {
                if m.dims() == dims.as_slice() {
                    candidates.push(m);
                }
            }
            if let Ok(i) = Module::injective(alg, v) {
                if i.dims() == dims.as_slice() {
                    candidates.push(i);
                }
            }
        }
        candidates.extend(enumerate_representations(alg, &dims, caps)?);
        for m in candidates {
            if !is_indecomposable(&m, caps.max_candidates)? {
                continue;
            }
            let mut new = true;
            for r in &reps[start..] {
                if iso_indecomposables(&m, r)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                reps.push(m);
            }
        }
    }
    Ok(reps)
}

/// All multisets of the given indecomposables with total dimension in `1..=max_dim`,
/// as direct sums together with the multiplicity vector.
pub fn direct_sums(alg: &FinDimAlgebra, indecs: &[Module], max_dim: usize) -> Vec<(Vec<usize>, Module)> {
    let mut out = Vec::new();
    let mut mult = vec![0usize; indecs.len()];
    fn rec(
        i: usize,
        left: usize,
        mult: &mut Vec<usize>,
        indecs: &[Module],
        alg: &FinDimAlgebra,
        out: &mut Vec<(Vec<usize>, Module)>,
    ) {
        if i == indecs.len() {
            if mult.iter().any(|&k| k > 0) {
                let parts: Vec<Module> = mult
                    .iter()
                    .zip(indecs)
                    .flat_map(|(&k, m)| std::iter::repeat(m.clone()).take(k))
                    .collect();
                let (sum, _, _) = Module::direct_sum(alg, &parts);
                out.push((mult.clone(), sum));
            }
            return;
        }
        let d = indecs[i].dim().max(1);
        for k in 0..=left / d {
            mult[i] = k;
            rec(i + 1, left - k * d, mult, indecs, alg, out);
        }
        mult[i] = 0;
    }
    rec(0, max_dim, &mut mult, indecs, alg, &mut out);
    out.sort_by_key(|(_, m)| m.dim());
    out
}

/// Distinct dimension vectors occurring among the submodules.
pub fn submodule_dimension_vectors(subs: &[Submodule]) -> BTreeSet<Vec<usize>> {
    subs.iter().map(Submodule::dim_vector).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, a3r};

    #[test]
    fn submodules_of_simple_and_semisimple() {
        let alg = a3r();
        let s = Module::simple(&alg, 1);
        assert_eq!(enumerate_submodules(&s, EnumCaps::default()).unwrap().len(), 2);
        let ss = Module::direct_sum2(&s, &s);
        assert_eq!(enumerate_submodules(&ss, EnumCaps::default()).unwrap().len(), 5);
    }

    #[test]
    fn projective_is_uniserial() {
        let alg = a3r();
        let p1 = Module::projective(&alg, 0);
        let subs = enumerate_submodules(&p1, EnumCaps::default()).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[1].dim_vector(), vec![0, 1, 0]);
        for a in &subs {
            for b in &subs {
                assert!(subs.contains(&a.sum(b)));
                assert!(subs.contains(&a.intersect(b)));
            }
        }
    }

    #[test]
    fn rationals_are_rejected() {
        let alg = crate::algebra::fixtures::linear(2, Field::Rationals);
        let s = Module::simple(&alg, 0);
        assert!(matches!(enumerate_submodules(&s, EnumCaps::default()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn indecomposables_of_small_algebras() {
        // A2: S1, S2, P1; A3 with one zero relation: 5 indecomposables
        assert_eq!(indecomposables(&a2(), 4, EnumCaps::default()).unwrap().len(), 3);
        assert_eq!(indecomposables(&a3r(), 4, EnumCaps::default()).unwrap().len(), 5);
        let a3 = crate::algebra::fixtures::linear(3, Field::F2);
        assert_eq!(indecomposables(&a3, 4, EnumCaps::default()).unwrap().len(), 6);
    }

    #[test]
    fn direct_sums_count() {
        let alg = a2();
        let ind = indecomposables(&alg, 2, EnumCaps::default()).unwrap();
        // dims 1,1,2: multisets of total ≤ 2
        let sums = direct_sums(&alg, &ind, 2);
        assert_eq!(sums.len(), 2 + 3 + 1);
    }
}
