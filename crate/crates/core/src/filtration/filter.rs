//! The iterated refinement for `n = 2`, the three-step grouping, the general
//! filtration by torsion radicals, and checks of their uniqueness and functoriality.

use serde::{Deserialize, Serialize};

use crate::algebra::enumerate::enumerate_submodules;
use crate::algebra::module::{Module, ModuleMap, Submodule};
use crate::error::{Error, Result};
use crate::tilting::Class;

use super::descriptor::ClassDescriptor;
use super::engine::{subquotient, Engine};
use super::verdict::{Answer, Basis, Verdict};

/// One round of the refinement: `d` of the piece being refined and of its middle factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub d_before: usize,
    pub d_middle: usize,
    pub middle_in_x1: bool,
}

#[derive(Clone, Debug)]
pub struct Filtration {
    pub kind: String,
    pub module: Module,
    /// Ascending, from `0` to the whole module.
    pub steps: Vec<Submodule>,
    /// One class per factor `steps[i+1] / steps[i]`.
    pub labels: Vec<ClassDescriptor>,
    /// Membership of each factor in its class, computed on the factor itself.
    pub certificates: Vec<Answer>,
    pub rounds: Vec<RoundRecord>,
    pub notes: Vec<String>,
}

impl Filtration {
    pub fn factor(&self, i: usize) -> Module {
        subquotient(&self.module, &self.steps[i + 1], &self.steps[i])
    }

    pub fn factors(&self) -> Vec<Module> {
        (0..self.labels.len()).map(|i| self.factor(i)).collect()
    }

    pub fn factor_dims(&self) -> Vec<Vec<usize>> {
        self.steps
            .windows(2)
            .map(|w| w[1].dim_vector().iter().zip(w[0].dim_vector()).map(|(a, b)| a - b).collect())
            .collect()
    }

    pub fn is_strict(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].dim() < w[1].dim())
    }

    /// Steps are invariant and nested, run from `0` to the module, and the
    /// factor dimension vectors add up to that of the module.
    pub fn is_additive(&self) -> bool {
        let m = &self.module;
        let (Some(first), Some(last)) = (self.steps.first(), self.steps.last()) else {
            return false;
        };
        if !first.is_zero() || last.dim_vector() != m.dims() {
            return false;
        }
        if !self.steps.iter().all(|s| s.is_invariant(m)) || !self.steps.windows(2).all(|w| w[0].is_sub_of(&w[1])) {
            return false;
        }
        let mut total = vec![0; m.num_vertices()];
        for d in self.factor_dims() {
            for (t, x) in total.iter_mut().zip(d) {
                *t += x;
            }
        }
        total == m.dims()
    }

    pub fn weakest(&self) -> Basis {
        self.certificates.iter().fold(Basis::Exact, |b, a| b.weakest(a.basis))
    }

    pub fn all_certified(&self) -> bool {
        self.certificates.iter().all(Answer::is_yes)
    }

    pub fn step_dims(&self) -> Vec<Vec<usize>> {
        self.steps.iter().map(Submodule::dim_vector).collect()
    }
}

/// Outcome of comparing a filtration with the maximal torsion submodules found by enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub checked_submodules: usize,
    pub agree: bool,
    pub unknown: usize,
    pub detail: String,
}

impl<'a> Engine<'a> {
    fn certify(&self, module: &Module, steps: &[Submodule], labels: &[ClassDescriptor]) -> Result<Vec<Answer>> {
        steps
            .windows(2)
            .zip(labels)
            .map(|(w, l)| self.member(&subquotient(module, &w[1], &w[0]), l))
            .collect()
    }

    /// `0 = Z_0 ⊆ ... ⊆ Z_m ⊆ Y_m ⊆ ... ⊆ Y_0 = E`: refine `Y_i / Z_i` by the
    /// spectral filtration until the middle piece lies in `X(1)`.
    pub fn filter_jms(&self, e: &Module) -> Result<Filtration> {
        if self.td.n != 2 {
            return Err(Error::Unsupported("the iterated refinement needs n = 2".into()));
        }
        let mut zs = vec![Submodule::zero(e)];
        let mut ys = vec![Submodule::full(e)];
        let mut rounds = Vec::new();
        loop {
            let (z, y) = (zs.last().unwrap().clone(), ys.last().unwrap().clone());
            let (ym, yinc) = e.submodule(&y);
            let (q, qp) = ym.quotient(&Submodule::preimage(&yinc, &z));
            if self.td.in_class(&q, Class::X(1))? {
                break;
            }
            let d_before = self.td.d(&q)?;
            let f = self.td.spectral_steps(&q)?;
            let middle = subquotient(&q, &f[1], &f[0]);
            let d_middle = self.td.d(&middle)?;
            let middle_in_x1 = self.td.in_class(&middle, Class::X(1))?;
            rounds.push(RoundRecord { d_before, d_middle, middle_in_x1 });
            if d_middle > d_before || (d_middle == d_before && !middle_in_x1) {
                return Err(Error::Internal(format!(
                    "refinement round {}: d went from {d_before} to {d_middle} with the middle factor outside X(1)",
                    rounds.len()
                )));
            }
            let pull = |s: &Submodule| Submodule::preimage(&qp, s).image_under(&yinc);
            let (nz, ny) = (pull(&f[0]), pull(&f[1]));
            if nz == z && ny == y {
                return Err(Error::Internal("refinement round made no progress".into()));
            }
            zs.push(nz);
            ys.push(ny);
            if middle_in_x1 {
                break;
            }
        }
        let m = zs.len() - 1;
        let mut steps = zs;
        steps.extend(ys.into_iter().rev());
        let mut labels = vec![ClassDescriptor::K0; m];
        labels.push(ClassDescriptor::K1);
        labels.extend(std::iter::repeat(ClassDescriptor::K2).take(m));
        let certificates = self.certify(e, &steps, &labels)?;
        Ok(Filtration {
            kind: "jms".into(),
            module: e.clone(),
            steps,
            labels,
            certificates,
            rounds,
            notes: Vec::new(),
        })
    }

    /// `0 ⊆ E_1 ⊆ E_2 ⊆ E` with factors in `E0`, `E1 = X(1)`, `E2`.
    pub fn filter_three_step(&self, e: &Module) -> Result<Filtration> {
        if self.td.n != 2 {
            return Err(Error::Unsupported("the three-step filtration needs n = 2".into()));
        }
        let tp = self.torsion_part(e, &ClassDescriptor::single(Class::B(2)))?;
        let e2 = tp.sub;
        let (e2m, inc) = e.submodule(&e2);
        let inner = self.filter_jms(&e2m)?;
        let m = (inner.steps.len() - 2) / 2;
        for k in 0..m {
            let w = (&inner.steps[m + 1 + k], &inner.steps[m + 2 + k]);
            if w.0 != w.1 {
                return Err(Error::Internal("a K2 layer inside the B(2)-radical is nonzero".into()));
            }
        }
        let e1 = inner.steps[m].image_under(&inc);
        let steps = vec![Submodule::zero(e), e1, e2, Submodule::full(e)];
        let labels = vec![ClassDescriptor::E0, ClassDescriptor::E1, ClassDescriptor::E2];
        let certificates = self.certify(e, &steps, &labels)?;
        let mut notes = Vec::new();
        if tp.lower_bound_only {
            notes.push("B(2)-radical is a lower bound".into());
        }
        Ok(Filtration {
            kind: "three-step".into(),
            module: e.clone(),
            steps,
            labels,
            certificates,
            rounds: inner.rounds,
            notes,
        })
    }

    /// `0 = E_0 ⊆ E_1 ⊆ ... ⊆ E_n ⊆ E_{n+1} = E` with `E_i` the `T_i`-radical of `E_{i+1}`.
    pub fn filter_general(&self, e: &Module) -> Result<Filtration> {
        let n = self.td.n;
        let mut desc = vec![Submodule::full(e)];
        let mut notes = Vec::new();
        for i in (1..=n).rev() {
            let cur = desc.last().unwrap().clone();
            let (cm, inc) = e.submodule(&cur);
            let tp = self.torsion_part(&cm, &ClassDescriptor::t_class(i, n))?;
            if tp.lower_bound_only {
                notes.push(format!("T_{i}-radical is a lower bound"));
            }
            desc.push(tp.sub.image_under(&inc));
        }
        desc.push(Submodule::zero(e));
        desc.reverse();
        let labels: Vec<ClassDescriptor> = (1..=n + 1).map(|i| ClassDescriptor::general_factor(i, n)).collect();
        let certificates = self.certify(e, &desc, &labels)?;
        Ok(Filtration {
            kind: "general".into(),
            module: e.clone(),
            steps: desc,
            labels,
            certificates,
            rounds: Vec::new(),
            notes,
        })
    }

    /// Experimental: refine the interior factors of the spectral filtration by
    /// the spectral filtration of the factor, up to `max_depth` times. Nothing
    /// guarantees that this stabilises.
    pub fn filter_iterated(&self, e: &Module, max_depth: usize) -> Result<Filtration> {
        let mut steps = vec![Submodule::zero(e)];
        let mut labels = Vec::new();
        let mut notes = Vec::new();
        self.refine_piece(e, &Submodule::zero(e), &Submodule::full(e), max_depth, &mut steps, &mut labels, &mut notes)?;
        let certificates = steps
            .windows(2)
            .zip(&labels)
            .map(|(w, l)| self.member(&subquotient(e, &w[1], &w[0]), l))
            .collect::<Result<_>>()?;
        Ok(Filtration { kind: "iterated".into(), module: e.clone(), steps, labels, certificates, rounds: Vec::new(), notes })
    }

    /// Appends the refined steps of the piece `upper / lower` of `e`.
    #[allow(clippy::too_many_arguments)]
    fn refine_piece(
        &self,
        e: &Module,
        lower: &Submodule,
        upper: &Submodule,
        depth: usize,
        steps: &mut Vec<Submodule>,
        labels: &mut Vec<ClassDescriptor>,
        notes: &mut Vec<String>,
    ) -> Result<()> {
        let n = self.td.n;
        let (um, uinc) = e.submodule(upper);
        let (q, qp) = um.quotient(&Submodule::preimage(&uinc, lower));
        let pull = |s: &Submodule| Submodule::preimage(&qp, s).image_under(&uinc);
        let f = self.td.spectral_steps(&q)?;
        let mut prev = lower.clone();
        for (j, fj) in f.iter().enumerate() {
            let step = pull(fj);
            let factor = subquotient(e, &step, &prev);
            let class = ClassDescriptor::single(Class::X(j as i32));
            let settled = factor.is_zero() || self.td.in_class(&factor, Class::X(j as i32))?;
            let interior = j > 0 && j < n;
            let whole = prev == *lower && step == *upper;
            if settled || !interior || depth == 0 || whole {
                if !settled && interior {
                    notes.push(format!("a degree-{j} factor of dimension {:?} is left unresolved", factor.dims()));
                }
                steps.push(step.clone());
                labels.push(if settled { class } else { ClassDescriptor::meet(&[]) });
            } else {
                self.refine_piece(e, &prev, &step, depth - 1, steps, labels, notes)?;
            }
            prev = step;
        }
        Ok(())
    }

    /// Every submodule `U` of `E` in `T_i` lies in the `i`-th step, and the step is in `T_i`.
    /// Membership here is decided by the chain search over the lattice of `U`, not by the
    /// trace used to build the filtration.
    pub fn check_uniqueness(&self, f: &Filtration) -> Result<UniquenessReport> {
        let n = self.td.n;
        let e = &f.module;
        let classes: Vec<(usize, ClassDescriptor)> = match f.kind.as_str() {
            "three-step" => vec![(1, ClassDescriptor::E0), (2, ClassDescriptor::single(Class::B(2)))],
            "general" => (1..=n).map(|i| (i, ClassDescriptor::t_class(i, n))).collect(),
            "jms" => vec![],
            other => return Err(Error::Unsupported(format!("uniqueness of a {other} filtration"))),
        };
        let subs = enumerate_submodules(e, self.caps.enum_caps)?;
        let mut unknown = 0;
        for (i, d) in &classes {
            let step = &f.steps[*i];
            let mut found_step = false;
            for s in &subs {
                let a = self.member_by_chain_search(&e.submodule(s).0, d)?;
                match a.verdict {
                    Verdict::Yes => {
                        if !s.is_sub_of(step) {
                            return Ok(UniquenessReport {
                                checked_submodules: subs.len(),
                                agree: false,
                                unknown,
                                detail: format!("a {d}-submodule {:?} is not inside step {i}", s.dim_vector()),
                            });
                        }
                        found_step |= s == step;
                    }
                    Verdict::Unknown => unknown += 1,
                    Verdict::No => {}
                }
            }
            if !found_step {
                return Ok(UniquenessReport {
                    checked_submodules: subs.len(),
                    agree: false,
                    unknown,
                    detail: format!("step {i} is not a {d}-submodule"),
                });
            }
        }
        Ok(UniquenessReport { checked_submodules: subs.len(), agree: true, unknown, detail: String::new() })
    }

    /// Membership decided by a chain search over the submodule lattice.
    pub fn member_by_chain_search(&self, e: &Module, d: &ClassDescriptor) -> Result<Answer> {
        match d {
            ClassDescriptor::Bracket { of } => {
                let n = self.td.n as i32;
                if of.iter().all(|&c| c == Class::B(n)) {
                    return self.meet(e, of);
                }
                self.extension_closure_by(e, &|m| self.in_quotient_class(m, of))
            }
            _ => self.member(e, d),
        }
    }

    /// `f(E_i) ⊆ E'_i` for every step.
    pub fn check_functoriality(&self, f: &ModuleMap, src: &Filtration, tgt: &Filtration) -> Result<bool> {
        if src.steps.len() != tgt.steps.len() {
            return Err(Error::DimensionMismatch("filtrations of different lengths".into()));
        }
        Ok(src.steps.iter().zip(&tgt.steps).all(|(s, t)| s.image_under(f).is_sub_of(t)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::filtration::EngineCaps;
    use crate::tilting::data::tests::a3r_tilting;

    #[test]
    fn jms_on_s2() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        let s2 = Module::simple(&a3r(), 1);
        let f = eng.filter_jms(&s2).unwrap();
        assert!(f.rounds.len() <= 1);
        assert!(f.is_additive());
        let total: Vec<usize> = f.factor_dims().iter().fold(vec![0; 3], |acc, d| {
            acc.iter().zip(d).map(|(a, b)| a + b).collect()
        });
        assert_eq!(total, vec![0, 1, 0]);
        assert!(f.all_certified(), "{:?}", f.certificates);
    }

    #[test]
    fn trivial_filtrations() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        let alg = a3r();
        let t = eng.filter_three_step(&td.t).unwrap();
        assert_eq!(t.steps[1].dim(), td.t.dim());
        let s3 = Module::simple(&alg, 2);
        let f = eng.filter_three_step(&s3).unwrap();
        assert_eq!(f.step_dims(), vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
        let s2 = Module::simple(&alg, 1);
        let f = eng.filter_three_step(&s2).unwrap();
        assert_eq!(f.steps[2].dim(), 1);
        assert!(f.all_certified());
    }

    #[test]
    fn general_matches_three_step_on_small_modules() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        let alg = a3r();
        let mut samples: Vec<Module> = (0..3).map(|v| Module::simple(&alg, v)).collect();
        samples.extend((0..3).map(|v| Module::projective(&alg, v)));
        samples.push(td.t.clone());
        for e in &samples {
            let a = eng.filter_three_step(e).unwrap();
            let b = eng.filter_general(e).unwrap();
            assert_eq!(a.steps, b.steps);
            assert!(b.all_certified(), "{:?}", b.certificates);
            assert!(eng.check_uniqueness(&a).unwrap().agree);
            assert!(eng.check_uniqueness(&b).unwrap().agree);
        }
    }
}
