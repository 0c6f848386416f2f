//! A second model of `Φ^i`: `Ext^i(T_j, E)` from projective resolutions of the
//! summands, with the `A`-action induced by chain lifts of endomorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::resolution::{ext_from_resolution, hom_complex, Resolution};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

use super::data::TiltingData;

fn random_in(s: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let f = s.field();
    let mut x = vec![f.zero(); s.ambient_dim()];
    for r in s.basis().row_iter() {
        let c = match f {
            Field::PrimeField(p) => f.from_i64(rng.gen_range(0..p as i64)),
            Field::Rationals => f.from_i64(rng.gen_range(-3..=3)),
        };
        for (xi, ri) in x.iter_mut().zip(r) {
            *xi = xi.add_mul(&c, ri);
        }
    }
    x
}

/// Preimage of `y` under `block` (row convention), optionally shifted by a random kernel element.
fn lift_vector(block: &Matrix, y: &[Scalar], rng: &mut Option<ChaCha8Rng>) -> Result<Vec<Scalar>> {
    let f = block.field();
    let rhs = Matrix::from_rows(f, y.len(), &[y.to_vec()]);
    let x = block
        .solve_left(&rhs)
        .ok_or_else(|| Error::Internal("chain lift: target is not in the image".into()))?
        .row_vec(0);
    Ok(match rng {
        Some(r) => {
            let k = random_in(&block.left_kernel(), r);
            x.iter().zip(&k).map(|(a, b)| a + b).collect()
        }
        None => x,
    })
}

/// Chain map `P(M) -> P(N)` over `h: M -> N`, degree by degree.
pub fn chain_lift(src: &Resolution, tgt: &Resolution, h: &ModuleMap, seed: Option<u64>) -> Result<Vec<ModuleMap>> {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut out: Vec<ModuleMap> = Vec::new();
    for k in 0..src.terms.len() {
        let p = &src.terms[k];
        let images: Vec<Vec<Scalar>> = (0..p.rank())
            .map(|g| {
                let v = p.gens[g];
                let gen = p.generator(g);
                if k >= tgt.terms.len() {
                    return Ok(vec![h.source().field().zero(); 0]);
                }
                let (y, block) = if k == 0 {
                    (h.apply(v, &src.augmentation.apply(v, &gen)), tgt.augmentation.block(v).clone())
                } else {
                    let down = src.differentials[k - 1].apply(v, &gen);
                    (out[k - 1].apply(v, &down), tgt.differentials[k - 1].block(v).clone())
                };
                lift_vector(&block, &y, &mut rng)
            })
            .collect::<Result<_>>()?;
        if k >= tgt.terms.len() {
            // the target resolution stopped; the lift is zero from here on
            let zero = Module::zero(h.source().algebra());
            out.push(ModuleMap::zero(&p.module, &zero));
            continue;
        }
        out.push(p.map_from_images(&tgt.terms[k].module, &images));
    }
    Ok(out)
}

/// `⊕_j Ext^i(T_j, E)` as a right `A`-module, the arrow `a: s -> t` acting by
/// pulling back along a chain lift of `T_t -> T_s`.
pub fn phi_via_lifts(td: &TiltingData, e: &Module, i: usize, seed: Option<u64>) -> Result<Module> {
    let f = e.field();
    let exts = td
        .ptres
        .iter()
        .map(|r| ext_from_resolution(r, i, e))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = exts.iter().map(|x| x.dim).collect();
    let q = td.a.quiver();
    let mut arrows = Vec::new();
    for (ai, arr) in q.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (rs, rt) = (&td.ptres[s], &td.ptres[t]);
        let lift = chain_lift(rt, rs, &td.arrow_maps[ai], seed.map(|x| x + ai as u64))?;
        let mut rows = Vec::new();
        for c in &exts[s].cocycles {
            let pulled: Vec<Scalar> = if i < rt.terms.len() && i < rs.terms.len() {
                let cmap = rs.terms[i].map_from_images(e, &split_images(&rs.terms[i].gens, e, c));
                let pt = &rt.terms[i];
                (0..pt.rank())
                    .flat_map(|g| {
                        let v = pt.gens[g];
                        cmap.apply(v, &lift[i].apply(v, &pt.generator(g)))
                    })
                    .collect()
            } else {
                Vec::new()
            };
            rows.push(class_coordinates(rt, i, e, &exts[t].cocycles, &pulled)?);
        }
        arrows.push(Matrix::from_rows(f, dims[t], &rows));
    }
    Module::new(&td.a, dims, arrows)
}

fn split_images(gens: &[usize], e: &Module, c: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let mut off = 0;
    for &v in gens {
        out.push(c[off..off + e.dims()[v]].to_vec());
        off += e.dims()[v];
    }
    out
}

/// Coordinates of a cocycle in the chosen basis of `Ext^i`, modulo coboundaries.
fn class_coordinates(
    res: &Resolution,
    i: usize,
    e: &Module,
    reps: &[Vec<Scalar>],
    x: &[Scalar],
) -> Result<Vec<Scalar>> {
    let f = e.field();
    if reps.is_empty() {
        return Ok(Vec::new());
    }
    let (dims, deltas) = hom_complex(res, e);
    let mut rows: Vec<Vec<Scalar>> = reps.to_vec();
    if i > 0 {
        rows.extend(deltas[i - 1].image().basis().row_iter().map(|r| r.to_vec()));
    }
    let m = Matrix::from_rows(f, dims[i], &rows);
    let sol = m
        .solve_left(&Matrix::from_rows(f, dims[i], &[x.to_vec()]))
        .ok_or_else(|| Error::Internal("pulled-back cochain is not a cocycle".into()))?;
    Ok(sol.row_vec(0)[..reps.len()].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::endo::find_isomorphism;
    use crate::algebra::fixtures::a3r;
    use crate::tilting::data::tests::a3r_tilting;

    #[test]
    fn lifts_agree_with_coresolution_model() {
        let td = a3r_tilting();
        let alg = a3r();
        let mut samples: Vec<Module> = (0..3).map(|v| Module::simple(&alg, v)).collect();
        samples.push(Module::regular(&alg));
        samples.push(td.t.clone());
        for e in &samples {
            for i in 0..=td.n {
                let plain = phi_via_lifts(&td, e, i, None).unwrap();
                let perturbed = phi_via_lifts(&td, e, i, Some(17)).unwrap();
                assert_eq!(plain.arrows(), perturbed.arrows());
                let h = td.phi_cohomology(e, i as i32).unwrap();
                assert!(find_isomorphism(&plain, &h, 1 << 16).unwrap().is_some());
            }
        }
    }
}
