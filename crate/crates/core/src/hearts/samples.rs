//! Sample objects for sweeps: direct sums of small indecomposables, and
//! two-term complexes built from maps between them.

use crate::algebra::complex::BoundedComplex;
use crate::algebra::enumerate::{direct_sums, indecomposables, EnumCaps};
use crate::algebra::hom::hom_space;
use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::path_algebra::FinDimAlgebra;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Sample {
    pub name: String,
    pub module: Module,
}

#[derive(Clone, Debug)]
pub struct ComplexSample {
    pub name: String,
    pub complex: BoundedComplex,
}

pub fn dims_string(d: &[usize]) -> String {
    format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// The zero module and every direct sum of indecomposables of total dimension
/// at most `max_dim`, one per isomorphism class, in order of dimension.
pub fn module_sweep(alg: &FinDimAlgebra, max_dim: usize, caps: EnumCaps) -> Result<Vec<Sample>> {
    let ind = indecomposables(alg, max_dim, caps)?;
    let names: Vec<String> = ind.iter().enumerate().map(|(i, m)| format!("I{i}{}", dims_string(m.dims()))).collect();
    let mut out = vec![Sample { name: "0".into(), module: Module::zero(alg) }];
    for (mult, m) in direct_sums(alg, &ind, max_dim) {
        let name = mult
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{k}*{}", names[i]) })
            .collect::<Vec<_>>()
            .join("+");
        out.push(Sample { name, module: m });
    }
    Ok(out)
}

/// `M -> N` in degrees `-1, 0`, for the zero map, up to `max_maps` basis maps of
/// `Hom(M, N)`, and the sum of the whole basis.
pub fn two_term_complexes(left: &[Sample], right: &[Sample], max_maps: usize) -> Result<Vec<ComplexSample>> {
    let mut out = Vec::new();
    for l in left {
        for r in right {
            let alg = l.module.algebra();
            let hs = hom_space(&l.module, &r.module)?;
            let mut maps = vec![("0".to_string(), ModuleMap::zero(&l.module, &r.module))];
            let basis = hs.basis();
            for (i, f) in basis.iter().take(max_maps).enumerate() {
                maps.push((format!("f{i}"), f.clone()));
            }
            if basis.len() > 1 {
                let sum = basis.iter().skip(1).fold(basis[0].clone(), |acc, f| acc.add(f));
                maps.push(("sum".into(), sum));
            }
            for (tag, f) in maps {
                let complex = BoundedComplex::new(alg, -1, vec![l.module.clone(), r.module.clone()], vec![f])?;
                out.push(ComplexSample { name: format!("[{} -{tag}-> {}]", l.name, r.name), complex });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a2;

    #[test]
    fn a2_sweep_counts() {
        let alg = a2();
        let s = module_sweep(&alg, 2, EnumCaps::default()).unwrap();
        // 0, S1, S2, P1, S1+S1, S1+S2, S2+S2
        assert_eq!(s.len(), 7);
        assert_eq!(s[0].name, "0");
    }
}
