//! The classes `X_i`, `B_i` (over Λ), `Y_i`, `C_i` (over A) and `X_i^D` (complexes).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::complex::BoundedComplex;
use crate::algebra::module::Module;
use crate::error::{Error, Result};

use super::data::TiltingData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    /// `Φ^j = 0` for `j ≠ i`.
    X(i32),
    /// `Φ^i = 0`.
    B(i32),
    /// `Ψ^j = 0` for `j ≠ i`.
    Y(i32),
    /// `Ψ^i = 0`.
    C(i32),
    /// A complex whose `Φ` is concentrated in degree `i`.
    XD(i32),
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::X(i) => write!(f, "X({i})"),
            Class::B(i) => write!(f, "B({i})"),
            Class::Y(i) => write!(f, "Y({i})"),
            Class::C(i) => write!(f, "C({i})"),
            Class::XD(i) => write!(f, "XD({i})"),
        }
    }
}

impl std::str::FromStr for Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Class> {
        let bad = || Error::Semantic(format!("unknown class {s:?}"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let i: i32 = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        match name.trim() {
            "X" => Ok(Class::X(i)),
            "B" => Ok(Class::B(i)),
            "Y" => Ok(Class::Y(i)),
            "C" => Ok(Class::C(i)),
            "XD" => Ok(Class::XD(i)),
            _ => Err(bad()),
        }
    }
}

/// Dimensions of `Φ^i` (degrees `0..=n`) or `Ψ^j` (degrees `-n..=0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyLabel {
    pub functor: String,
    pub low: i32,
    pub dims: Vec<usize>,
}

impl CohomologyLabel {
    pub fn at(&self, k: i32) -> usize {
        if k < self.low {
            return 0;
        }
        self.dims.get((k - self.low) as usize).copied().unwrap_or(0)
    }

    pub fn concentrated_in(&self, k: i32) -> bool {
        self.dims.iter().enumerate().all(|(idx, &d)| d == 0 || self.low + idx as i32 == k)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Exact data of a module, used as a memo key.
pub(crate) fn fingerprint(m: &Module) -> String {
    let mut s = format!("{:?}", m.dims());
    for a in m.arrows() {
        for r in a.to_string_rows() {
            s.push('|');
            s.push_str(&r.join(","));
        }
        s.push(';');
    }
    s
}

impl TiltingData {
    fn cached(&self, phi: bool, m: &Module, compute: impl FnOnce() -> Result<Vec<usize>>) -> Result<Vec<usize>> {
        let key = (phi, fingerprint(m));
        if let Some(v) = self.cache.0.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.cache.0.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// `dim Φ^i E` for `i = 0..=n`, memoised.
    pub fn phi_label(&self, e: &Module) -> Result<CohomologyLabel> {
        if e.algebra() != &self.lambda {
            return Err(Error::AlgebraMismatch);
        }
        let dims = self.cached(true, e, || self.phi_dims(e))?;
        Ok(CohomologyLabel { functor: "phi".into(), low: 0, dims })
    }

    /// `dim Ψ^j M` for `j = -n..=0`, memoised.
    pub fn psi_label(&self, m: &Module) -> Result<CohomologyLabel> {
        if m.algebra() != &self.a {
            return Err(Error::AlgebraMismatch);
        }
        let dims = self.cached(false, m, || self.psi_dims(m))?;
        Ok(CohomologyLabel { functor: "psi".into(), low: -(self.n as i32), dims })
    }

    /// Cohomology dimensions of `ΦX` for a bounded complex `X` over Λ.
    pub fn phi_label_complex(&self, x: &BoundedComplex) -> Result<CohomologyLabel> {
        let phi = self.phi_complex(x)?;
        let c = &phi.complex;
        if c.is_empty() {
            return Ok(CohomologyLabel { functor: "phi".into(), low: 0, dims: Vec::new() });
        }
        Ok(CohomologyLabel {
            functor: "phi".into(),
            low: c.low(),
            dims: c.degrees().map(|k| c.cohomology_dim(k)).collect(),
        })
    }

    /// Membership of a module in `X(i)`, `B(i)` (over Λ) or `Y(i)`, `C(i)` (over A).
    pub fn in_class(&self, m: &Module, class: Class) -> Result<bool> {
        Ok(self.class_membership(m, class)?.0)
    }

    pub fn class_membership(&self, m: &Module, class: Class) -> Result<(bool, CohomologyLabel)> {
        match class {
            Class::X(i) | Class::B(i) => {
                let l = self.phi_label(m)?;
                let yes = if let Class::X(_) = class { l.concentrated_in(i) } else { l.at(i) == 0 };
                Ok((yes, l))
            }
            Class::Y(i) | Class::C(i) => {
                let l = self.psi_label(m)?;
                let yes = if let Class::Y(_) = class { l.concentrated_in(i) } else { l.at(i) == 0 };
                Ok((yes, l))
            }
            Class::XD(i) => {
                let l = self.phi_label_complex(&BoundedComplex::concentrated(m, 0))?;
                Ok((l.concentrated_in(i), l))
            }
        }
    }

    pub fn complex_in_xd(&self, x: &BoundedComplex, i: i32) -> Result<(bool, CohomologyLabel)> {
        let l = self.phi_label_complex(x)?;
        Ok((l.concentrated_in(i), l))
    }

    /// `d(E) = dim Φ^1 E`.
    pub fn d(&self, e: &Module) -> Result<usize> {
        Ok(self.phi_label(e)?.at(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, a3r};
    use crate::tilting::data::{tests::a3r_tilting, validate_tilting, TiltCaps};

    #[test]
    fn memberships_on_a3r() {
        let td = a3r_tilting();
        let alg = a3r();
        let s2 = Module::simple(&alg, 1);
        let s3 = Module::simple(&alg, 2);
        assert!(td.in_class(&td.t, Class::X(0)).unwrap());
        assert!(td.in_class(&s3, Class::X(2)).unwrap());
        assert!(td.in_class(&s3, Class::B(0)).unwrap());
        assert!(!td.in_class(&s3, Class::B(2)).unwrap());
        assert!(td.in_class(&s2, Class::B(2)).unwrap());
        for i in 0..3 {
            assert!(!td.in_class(&s2, Class::X(i)).unwrap());
        }
        assert!(td.in_class(&s3, Class::XD(2)).unwrap());
        let reg = Module::regular(&td.a);
        assert!(td.in_class(&reg, Class::Y(0)).unwrap());
        assert!(!td.in_class(&reg, Class::C(0)).unwrap());
    }

    #[test]
    fn hereditary_memberships() {
        let alg = a2();
        let names = vec!["P1".to_string(), "S1".to_string()];
        let summands = vec![Module::projective(&alg, 0), Module::simple(&alg, 0)];
        let td = validate_tilting(&alg, &names, &summands, None, TiltCaps::default()).unwrap();
        let s2 = Module::simple(&alg, 1);
        assert_eq!(td.phi_label(&s2).unwrap().dims, vec![0, 1]);
        assert!(td.in_class(&s2, Class::X(1)).unwrap());
    }

    #[test]
    fn class_names_round_trip() {
        for c in [Class::X(2), Class::B(0), Class::Y(-1), Class::C(0), Class::XD(1)] {
            assert_eq!(c.to_string().parse::<Class>().unwrap(), c);
        }
    }
}
