//! Round trips through `ΨΦ` and `ΦΨ`, and the filtration coming from the
//! spectral sequence `Ψ^p Φ^q E => E`.

use crate::algebra::complex::{resolve_complex, BoundedComplex};
use crate::algebra::endo::find_isomorphism;
use crate::algebra::module::{Module, ModuleMap, Submodule};
use crate::error::Result;
use crate::linalg::Matrix;

use super::data::TiltingData;
use super::functor::PhiModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    /// `(degree, dim H^degree)` of the round-trip complex.
    pub dims: Vec<(i32, usize)>,
    /// The canonical (co)unit chain map is a quasi-isomorphism.
    pub canonical_quasi_iso: bool,
    /// `H^0` is isomorphic to the input by an explicit isomorphism.
    pub h0_isomorphic: bool,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.canonical_quasi_iso
            && self.h0_isomorphic
            && self.dims.iter().all(|&(k, d)| k == 0 || d == 0)
    }
}

/// The isomorphism `E -> H^0(I)` induced by the coresolution `E -> I`.
pub(crate) fn identify_h0(e: &Module, phi: &PhiModel) -> ModuleMap {
    let i = &phi.coresolution.complex;
    let h0 = i.cohomology(0);
    let eps = phi.coresolution.map.at(0);
    let f = e.field();
    let blocks = (0..e.num_vertices())
        .map(|v| {
            let rows: Vec<_> = (0..e.dims()[v])
                .map(|r| h0.class_of(v, eps.block(v).row(r)).expect("E lands in the cycles"))
                .collect();
            Matrix::from_rows(f, h0.module.dims()[v], &rows)
        })
        .collect();
    ModuleMap::new_unchecked(e, &h0.module, blocks)
}

impl TiltingData {
    /// `H^j(ΨΦE) ≅ E` exactly when `j = 0`.
    pub fn roundtrip_lambda(&self, e: &Module) -> Result<RoundtripReport> {
        let x = BoundedComplex::concentrated(e, 0);
        let (_, psi, ev) = self.counit(&x)?;
        let dims = psi.complex.cohomology_dims();
        let h0 = psi.complex.cohomology(0).module;
        let h0_isomorphic = find_isomorphism(&h0, e, self.caps.search_cap)?.is_some();
        Ok(RoundtripReport { dims, canonical_quasi_iso: ev.is_quasi_iso(), h0_isomorphic })
    }

    /// `H^j(ΦΨM) ≅ M` exactly when `j = 0`.
    pub fn roundtrip_a(&self, m: &Module) -> Result<RoundtripReport> {
        let y = BoundedComplex::concentrated(m, 0);
        let (psi, phi, unit) = self.unit(&y)?;
        let dims = phi.complex.cohomology_dims();
        let h0 = phi.complex.cohomology(0).module;
        let h0_isomorphic = find_isomorphism(&h0, m, self.caps.search_cap)?.is_some();
        let quasi = unit.is_quasi_iso() && psi.resolution.map.is_quasi_iso();
        Ok(RoundtripReport { dims, canonical_quasi_iso: quasi, h0_isomorphic })
    }

    /// `F^{-j}E` for `j = 0..=n`: the image of `H^0(Ψ(τ^{≤j} ΦE)) -> E`.
    /// Entry `j` of the result is `F^{-j}E`; the last entry is `E`.
    pub fn spectral_steps(&self, e: &Module) -> Result<Vec<Submodule>> {
        let phi = self.phi_module(e)?;
        let iso = identify_h0(e, &phi);
        let h0i = phi.coresolution.complex.cohomology(0);
        let mut steps = Vec::with_capacity(self.n + 1);
        for j in 0..=self.n as i32 {
            let (tau, inc) = phi.complex.truncate_le(j);
            let res = resolve_complex(&tau, self.n);
            let to_phi = res.map.then(&inc);
            let psi = self.psi_from_resolution(res)?;
            let ev = self.evaluation(&psi, &to_phi, &phi)?;
            let h0 = psi.complex.cohomology(0);
            let img = ev.on_cohomology(&h0, &h0i).image_submodule();
            steps.push(Submodule::preimage(&iso, &img));
        }
        Ok(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::tilting::data::tests::a3r_tilting;

    #[test]
    fn roundtrips_on_simples_and_t() {
        let td = a3r_tilting();
        let alg = a3r();
        for v in 0..3 {
            assert!(td.roundtrip_lambda(&Module::simple(&alg, v)).unwrap().passed());
            assert!(td.roundtrip_a(&Module::simple(&td.a, v)).unwrap().passed());
        }
        assert!(td.roundtrip_lambda(&td.t).unwrap().passed());
        assert!(td.roundtrip_lambda(&Module::zero(&alg)).unwrap().passed());
    }

    #[test]
    fn spectral_steps_of_simples() {
        let td = a3r_tilting();
        let alg = a3r();
        let s3 = Module::simple(&alg, 2);
        let dims: Vec<usize> = td.spectral_steps(&s3).unwrap().iter().map(Submodule::dim).collect();
        assert_eq!(dims, vec![0, 0, 1]);
        let s2 = Module::simple(&alg, 1);
        let steps = td.spectral_steps(&s2).unwrap();
        assert_eq!(steps[2].dim(), 1);
        for w in steps.windows(2) {
            assert!(w[0].is_sub_of(&w[1]));
        }
        let t_steps = td.spectral_steps(&td.t).unwrap();
        assert_eq!(t_steps[0].dim(), td.t.dim());
    }
}
