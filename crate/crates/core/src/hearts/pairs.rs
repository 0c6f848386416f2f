//! Torsion pairs over Λ or over A: the decomposition of an object by a torsion
//! radical, and sampled checks of the torsion-pair axioms.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::enumerate::enumerate_submodules;
use crate::algebra::hom::hom_space;
use crate::algebra::module::{Module, ModuleMap, Submodule};
use crate::error::{Error, Result};
use crate::filtration::{Answer, Basis, ClassDescriptor, Engine, SesCert, Verdict};
use crate::tilting::Class;

use super::samples::{dims_string, Sample};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lambda,
    A,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lambda => "lambda",
            Side::A => "A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPairSpec {
    pub side: Side,
    pub torsion: ClassDescriptor,
    pub free: ClassDescriptor,
}

impl fmt::Display for TorsionPairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) over {}", self.torsion, self.free, self.side)
    }
}

impl TorsionPairSpec {
    pub fn new(side: Side, torsion: ClassDescriptor, free: ClassDescriptor) -> TorsionPairSpec {
        TorsionPairSpec { side, torsion, free }
    }

    /// `(B(n), B(n)°)` over Λ.
    pub fn top(n: usize) -> TorsionPairSpec {
        let t = ClassDescriptor::single(Class::B(n as i32));
        TorsionPairSpec::new(Side::Lambda, t.clone(), ClassDescriptor::perp(t))
    }

    /// `(B(2), B(0) ∩ X(1)°)` over Λ.
    pub fn top_by_b0() -> TorsionPairSpec {
        TorsionPairSpec::new(
            Side::Lambda,
            ClassDescriptor::single(Class::B(2)),
            ClassDescriptor::between(ClassDescriptor::single(Class::B(0)), ClassDescriptor::single(Class::X(1))),
        )
    }

    /// `(C(0), C(0)°)` over A.
    pub fn c0() -> TorsionPairSpec {
        let t = ClassDescriptor::single(Class::C(0));
        TorsionPairSpec::new(Side::A, t.clone(), ClassDescriptor::perp(t))
    }

    /// `(E0, E0°)` over Λ.
    pub fn e0() -> TorsionPairSpec {
        TorsionPairSpec::new(Side::Lambda, ClassDescriptor::E0, ClassDescriptor::perp(ClassDescriptor::E0))
    }

    /// `(everything, 0)`.
    pub fn trivial(side: Side) -> TorsionPairSpec {
        TorsionPairSpec::new(side, ClassDescriptor::meet(&[]), ClassDescriptor::Zero)
    }

    /// Presets by name, as used on the command line.
    pub fn preset(name: &str, n: usize) -> Result<TorsionPairSpec> {
        match name {
            "top" => Ok(TorsionPairSpec::top(n)),
            "top-b0" => Ok(TorsionPairSpec::top_by_b0()),
            "c0" => Ok(TorsionPairSpec::c0()),
            "e0" => Ok(TorsionPairSpec::e0()),
            "trivial" => Ok(TorsionPairSpec::trivial(Side::Lambda)),
            "trivial-a" => Ok(TorsionPairSpec::trivial(Side::A)),
            _ => Err(Error::Semantic(format!("unknown torsion pair {name:?}"))),
        }
    }

    pub const PRESETS: [&'static str; 6] = ["top", "top-b0", "c0", "e0", "trivial", "trivial-a"];
}

/// `0 -> E_T -> E -> E_F -> 0` with `E_T` the torsion radical.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub torsion_sub: Submodule,
    pub torsion: Module,
    pub free: Module,
    pub inc: ModuleMap,
    pub proj: ModuleMap,
    pub basis: Basis,
    pub lower_bound_only: bool,
    /// Membership of `E_F` in the free class.
    pub free_check: Answer,
}

impl Decomposition {
    pub fn sequence(&self) -> SesCert {
        SesCert::new(&self.inc, &self.proj, None, None, None)
    }
}

pub fn torsion_decompose(eng: &Engine, e: &Module, pair: &TorsionPairSpec) -> Result<Decomposition> {
    let tp = eng.torsion_part(e, &pair.torsion)?;
    let (torsion, inc) = e.submodule(&tp.sub);
    let (free, proj) = e.quotient(&tp.sub);
    let free_check = eng.member(&free, &pair.free)?;
    Ok(Decomposition {
        torsion_sub: tp.sub,
        torsion,
        free,
        inc,
        proj,
        basis: tp.basis,
        lower_bound_only: tp.lower_bound_only,
        free_check,
    })
}

/// `E ∈ 𝒱°`, exact where a torsion radical or a reduction applies and
/// bounded by the engine's perp bound otherwise.
pub fn perp_membership(eng: &Engine, e: &Module, of: &ClassDescriptor) -> Result<Answer> {
    eng.perp(e, of)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub pair: String,
    pub objects: usize,
    pub torsion_members: usize,
    pub free_members: usize,
    pub hom_pairs_checked: usize,
    pub hom_violations: Vec<String>,
    pub decomposition_failures: Vec<String>,
    pub closure_failures: Vec<String>,
    pub unknown: Vec<String>,
    pub basis: Option<Basis>,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.hom_violations.is_empty() && self.decomposition_failures.is_empty() && self.closure_failures.is_empty()
    }
}

struct PerObject {
    t: Answer,
    f: Answer,
    decomposition: Vec<String>,
    closure: Vec<String>,
    unknown: Vec<String>,
}

fn check_object(eng: &Engine, s: &Sample, pair: &TorsionPairSpec) -> Result<PerObject> {
    let e = &s.module;
    let t = eng.member(e, &pair.torsion)?;
    let f = eng.member(e, &pair.free)?;
    let mut o = PerObject { t, f, decomposition: Vec::new(), closure: Vec::new(), unknown: Vec::new() };
    if o.t.is_yes() && o.f.is_yes() && !e.is_zero() {
        o.decomposition.push(format!("{}: nonzero object in both classes", s.name));
    }
    let d = torsion_decompose(eng, e, pair)?;
    let tcheck = eng.member(&d.torsion, &pair.torsion)?;
    for (what, a, m) in [("torsion part", &tcheck, &d.torsion), ("free part", &d.free_check, &d.free)] {
        match a.verdict {
            Verdict::Yes => {}
            Verdict::No => o.decomposition.push(format!("{}: {what} {} fails", s.name, dims_string(m.dims()))),
            Verdict::Unknown => o.unknown.push(format!("{}: {what} {a}", s.name)),
        }
    }
    if d.lower_bound_only {
        o.unknown.push(format!("{}: torsion part is a lower bound", s.name));
    }
    let subs = enumerate_submodules(e, eng.caps.enum_caps)?;
    for sub in subs.iter().filter(|x| !x.is_zero()) {
        let sm = e.submodule(sub).0;
        // uniqueness: every torsion submodule lies in E_T
        if !sub.is_sub_of(&d.torsion_sub) && eng.member(&sm, &pair.torsion)?.is_yes() {
            o.decomposition.push(format!("{}: torsion submodule {:?} outside the radical", s.name, sub.dim_vector()));
        }
        if o.f.is_yes() && eng.member(&sm, &pair.free)?.is_no() {
            o.closure.push(format!("{}: submodule {:?} leaves the free class", s.name, sub.dim_vector()));
        }
        if o.t.is_yes() {
            let q = e.quotient(sub).0;
            if eng.member(&q, &pair.torsion)?.is_no() {
                o.closure.push(format!("{}: quotient by {:?} leaves the torsion class", s.name, sub.dim_vector()));
            }
        }
    }
    Ok(o)
}

/// Sampled torsion-pair axioms: `Hom(t, f) = 0`, the decomposition and its
/// uniqueness, and closure of the torsion class under quotients and of the
/// free class under submodules.
pub fn verify_torsion_pair(eng: &Engine, pair: &TorsionPairSpec, samples: &[Sample]) -> Result<PairReport> {
    let per: Vec<PerObject> = samples.par_iter().map(|s| check_object(eng, s, pair)).collect::<Result<_>>()?;
    let mut r = PairReport { pair: pair.to_string(), objects: samples.len(), ..Default::default() };
    let mut basis = Basis::Exact;
    for (s, o) in samples.iter().zip(&per) {
        basis = basis.weakest(o.t.basis).weakest(o.f.basis);
        if o.t.is_unknown() {
            r.unknown.push(format!("{}: torsion membership {}", s.name, o.t));
        }
        if o.f.is_unknown() {
            r.unknown.push(format!("{}: free membership {}", s.name, o.f));
        }
        r.decomposition_failures.extend(o.decomposition.iter().cloned());
        r.closure_failures.extend(o.closure.iter().cloned());
        r.unknown.extend(o.unknown.iter().cloned());
    }
    let ts: Vec<&Sample> = samples.iter().zip(&per).filter(|(s, o)| o.t.is_yes() && !s.module.is_zero()).map(|(s, _)| s).collect();
    let fs: Vec<&Sample> = samples.iter().zip(&per).filter(|(s, o)| o.f.is_yes() && !s.module.is_zero()).map(|(s, _)| s).collect();
    r.torsion_members = ts.len();
    r.free_members = fs.len();
    let pairs: Vec<(&Sample, &Sample)> = ts.iter().flat_map(|t| fs.iter().map(move |f| (*t, *f))).collect();
    r.hom_pairs_checked = pairs.len();
    let bad: Vec<Option<String>> = pairs
        .par_iter()
        .map(|(t, f)| {
            Ok((hom_space(&t.module, &f.module)?.dim() > 0).then(|| format!("Hom({}, {}) ≠ 0", t.name, f.name)))
        })
        .collect::<Result<_>>()?;
    r.hom_violations = bad.into_iter().flatten().collect();
    r.basis = Some(basis);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::filtration::EngineCaps;
    use crate::tilting::data::tests::a3r_tilting;

    #[test]
    fn decompose_sum_of_simples() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        let alg = a3r();
        let e = Module::direct_sum2(&Module::simple(&alg, 1), &Module::simple(&alg, 2));
        let d = torsion_decompose(&eng, &e, &TorsionPairSpec::top(2)).unwrap();
        assert_eq!(d.torsion.dims(), &[0, 1, 0]);
        assert_eq!(d.free.dims(), &[0, 0, 1]);
        assert!(d.free_check.is_yes());
        d.sequence().verify(&td, &alg).unwrap();
        let t = torsion_decompose(&eng, &td.t, &TorsionPairSpec::top(2)).unwrap();
        assert!(t.free.is_zero());
    }

    #[test]
    fn perp_examples() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        let alg = a3r();
        let b2 = ClassDescriptor::single(Class::B(2));
        assert!(perp_membership(&eng, &Module::zero(&alg), &ClassDescriptor::single(Class::X(0))).unwrap().is_yes());
        assert!(perp_membership(&eng, &Module::simple(&alg, 2), &b2).unwrap().is_yes());
        assert!(perp_membership(&eng, &Module::simple(&alg, 1), &b2).unwrap().is_no());
    }
}
