//! Morphisms in the derived category, computed as chain maps modulo
//! homotopy from a projective resolution of the source.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

use super::complex::{resolve_complex, BoundedComplex};
use super::hom::{hom_space, HomSpace};
use super::module::ModuleMap;

fn flat(f: &ModuleMap) -> Vec<Scalar> {
    f.blocks().iter().flat_map(|b| b.data().iter().cloned()).collect()
}

/// `dim Hom_K(P, Y)`. Only the terms of `P` in degrees `≥ low(Y) - 1`
/// matter; they must be projective for the answer to be a derived Hom.
pub fn homotopy_classes_dim(p: &BoundedComplex, y: &BoundedComplex) -> Result<usize> {
    if p.algebra() != y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if p.is_empty() || y.is_empty() || p.total_dim() == 0 || y.total_dim() == 0 {
        return Ok(0);
    }
    let fld = p.algebra().field();
    let lo = p.low().max(y.low() - 1);
    let hi = p.high().min(y.high());
    if lo > hi {
        return Ok(0);
    }
    let degs: Vec<i32> = (lo..=hi).collect();
    let homs: Vec<HomSpace> = degs.iter().map(|&k| hom_space(&p.term(k), &y.term(k))).collect::<Result<_>>()?;
    let mut unk_off = Vec::new();
    let mut nunk = 0;
    for h in &homs {
        unk_off.push(nunk);
        nunk += h.dim();
    }
    if nunk == 0 {
        return Ok(0);
    }
    // constraint slot k holds a map P^k -> Y^(k+1), for k in lo-1..=hi
    let mut slot_off = std::collections::BTreeMap::new();
    let mut nslot = 0;
    for k in (lo - 1)..=hi {
        slot_off.insert(k, nslot);
        let (a, b) = (p.term(k), y.term(k + 1));
        nslot += a.dims().iter().zip(b.dims()).map(|(x, y)| x * y).sum::<usize>();
    }
    let mut cons = Matrix::zeros(fld, nunk, nslot.max(1));
    for (i, &k) in degs.iter().enumerate() {
        for (j, b) in homs[i].basis().iter().enumerate() {
            let row = unk_off[i] + j;
            let mut put = |slot: i32, f: ModuleMap| {
                let off = slot_off[&slot];
                for (c, v) in flat(&f).into_iter().enumerate() {
                    if !v.is_zero() {
                        let cur = cons.get(row, off + c).clone();
                        cons.set(row, off + c, &cur + &v);
                    }
                }
            };
            put(k, b.then(&y.diff(k)).neg());
            put(k - 1, p.diff(k - 1).then(b));
        }
    }
    let cycles = cons.left_kernel().dim();

    let mut null_rows: Vec<Vec<Scalar>> = Vec::new();
    for k in lo..=(hi + 1) {
        let (pk, yk1) = (p.term(k), y.term(k - 1));
        let sh = hom_space(&pk, &yk1)?;
        for s in sh.basis() {
            let mut row = vec![fld.zero(); nunk];
            if let Some(i) = degs.iter().position(|&d| d == k) {
                let f = s.then(&y.diff(k - 1));
                let c = homs[i].coordinates(&f).ok_or_else(|| Error::Internal("homotopy leaves Hom".into()))?;
                for (j, v) in c.into_iter().enumerate() {
                    row[unk_off[i] + j] = &row[unk_off[i] + j] + &v;
                }
            }
            if let Some(i) = degs.iter().position(|&d| d == k - 1) {
                let f = p.diff(k - 1).then(&s);
                let c = homs[i].coordinates(&f).ok_or_else(|| Error::Internal("homotopy leaves Hom".into()))?;
                for (j, v) in c.into_iter().enumerate() {
                    row[unk_off[i] + j] = &row[unk_off[i] + j] + &v;
                }
            }
            null_rows.push(row);
        }
    }
    let null_rank = if null_rows.is_empty() { 0 } else { Matrix::from_rows(fld, nunk, &null_rows).rank() };
    Ok(cycles - null_rank)
}

/// `dim Hom_D(X, Y)` for bounded complexes over a finite-dimensional algebra.
pub fn derived_hom_dim(x: &BoundedComplex, y: &BoundedComplex) -> Result<usize> {
    if x.is_empty() || y.is_empty() || x.total_dim() == 0 || y.total_dim() == 0 {
        return Ok(0);
    }
    let (x, y) = (x.trimmed(), y.trimmed());
    if x.is_empty() || y.is_empty() {
        return Ok(0);
    }
    let depth = (x.low() - y.low() + 2).max(0) as usize + 1;
    let res = resolve_complex(&x, depth);
    homotopy_classes_dim(&res.complex, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::algebra::resolution::ext_dim;
    use crate::algebra::Module;

    #[test]
    fn matches_hom_and_ext_for_modules() {
        let alg = a3r();
        let mods: Vec<Module> = (0..3)
            .flat_map(|v| [Module::simple(&alg, v), Module::projective(&alg, v)])
            .collect();
        for m in &mods {
            for n in &mods {
                let xm = BoundedComplex::concentrated(m, 0);
                for i in 0..3 {
                    let yn = BoundedComplex::concentrated(n, -i);
                    let d = derived_hom_dim(&xm, &yn).unwrap();
                    assert_eq!(d, ext_dim(i as usize, m, n, 10).unwrap(), "{:?} {:?} {}", m.dims(), n.dims(), i);
                }
                let neg = BoundedComplex::concentrated(n, 1);
                assert_eq!(derived_hom_dim(&xm, &neg).unwrap(), 0);
            }
        }
    }

    #[test]
    fn cone_of_identity_is_zero() {
        let alg = a3r();
        let p = Module::projective(&alg, 0);
        let c = BoundedComplex::new(&alg, -1, vec![p.clone(), p.clone()], vec![p.identity()]).unwrap();
        let s = BoundedComplex::concentrated(&Module::simple(&alg, 0), 0);
        assert_eq!(derived_hom_dim(&c, &s).unwrap(), 0);
        assert_eq!(derived_hom_dim(&s, &c).unwrap(), 0);
    }
}
