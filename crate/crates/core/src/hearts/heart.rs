//! Hearts of bounded t-structures, tested on bounded complexes through their
//! cohomology, and the sampled heart axiom `Hom(x, y[-1]) = 0`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::complex::BoundedComplex;
use crate::algebra::dhom::derived_hom_dim;
use crate::error::{Error, Result};
use crate::filtration::{Answer, ClassDescriptor, Engine};
use crate::tilting::Class;

use super::pairs::Side;
use super::samples::ComplexSample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeartDescriptor {
    /// Λ-modules in degree 0.
    Z,
    /// A-modules in degree 0.
    A,
    /// `⟨(B(0) ∩ X(1)°)[1], B(2)⟩` over Λ.
    U21,
    /// `⟨B(1)°[1], B(1)⟩` over Λ.
    U11,
    /// `Ψ(A)`: complexes over Λ whose `Φ` is concentrated in degree 0.
    H,
    /// `Φ(U21)[1]`: complexes over A whose `Ψ`, shifted by `[-1]`, lies in `U21`.
    #[serde(rename = "PhiU21-shift")]
    PhiU21Shift,
}

impl HeartDescriptor {
    pub const ALL: [HeartDescriptor; 6] = [
        HeartDescriptor::Z,
        HeartDescriptor::A,
        HeartDescriptor::U21,
        HeartDescriptor::U11,
        HeartDescriptor::H,
        HeartDescriptor::PhiU21Shift,
    ];

    pub fn side(&self) -> Side {
        match self {
            HeartDescriptor::A | HeartDescriptor::PhiU21Shift => Side::A,
            _ => Side::Lambda,
        }
    }

    /// Whether the heart is defined for homological dimension `n`.
    pub fn supports(&self, n: usize) -> bool {
        match self {
            HeartDescriptor::U21 | HeartDescriptor::PhiU21Shift => n == 2,
            HeartDescriptor::U11 => n == 1,
            _ => true,
        }
    }
}

impl fmt::Display for HeartDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeartDescriptor::Z => "Z",
            HeartDescriptor::A => "A",
            HeartDescriptor::U21 => "U21",
            HeartDescriptor::U11 => "U11",
            HeartDescriptor::H => "H",
            HeartDescriptor::PhiU21Shift => "PhiU21-shift",
        })
    }
}

impl FromStr for HeartDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<HeartDescriptor> {
        HeartDescriptor::ALL
            .into_iter()
            .find(|h| h.to_string() == s)
            .ok_or_else(|| Error::Semantic(format!("unknown heart {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeartVerdict {
    pub heart: HeartDescriptor,
    pub answer: Answer,
    /// Nonzero cohomology of the complex tested, as `(degree, dimension vector)`.
    pub cohomology: Vec<(i32, Vec<usize>)>,
}

fn nonzero_cohomology(x: &BoundedComplex) -> Vec<(i32, Vec<usize>)> {
    if x.is_empty() {
        return Vec::new();
    }
    x.degrees()
        .filter_map(|k| {
            let h = x.cohomology(k).module;
            (!h.is_zero()).then(|| (k, h.dims().to_vec()))
        })
        .collect()
}

/// `⟨F[1], T⟩`: `H^-1 ∈ F`, `H^0 ∈ T` and no other cohomology.
fn tilted(eng: &Engine, x: &BoundedComplex, free: &ClassDescriptor, torsion: &ClassDescriptor) -> Result<Answer> {
    let mut out = Answer::exact(true);
    if x.is_empty() {
        return Ok(out);
    }
    for k in x.degrees() {
        let h = x.cohomology(k).module;
        if h.is_zero() {
            continue;
        }
        let a = match k {
            -1 => eng.member(&h, free)?.with_note(format!("H^-1 in {free}")),
            0 => eng.member(&h, torsion)?.with_note(format!("H^0 in {torsion}")),
            _ => Answer::exact(false).with_note(format!("H^{k} ≠ 0")),
        };
        out = out.and(a);
        if out.is_no() {
            break;
        }
    }
    Ok(out)
}

fn concentrated(x: &BoundedComplex) -> Answer {
    let bad: Vec<i32> = nonzero_cohomology(x).into_iter().map(|(k, _)| k).filter(|&k| k != 0).collect();
    if bad.is_empty() {
        Answer::exact(true)
    } else {
        Answer::exact(false).with_note(format!("cohomology in degrees {bad:?}"))
    }
}

pub fn heart_membership(eng: &Engine, x: &BoundedComplex, heart: HeartDescriptor) -> Result<HeartVerdict> {
    let td = eng.td;
    let want = if heart.side() == Side::Lambda { &td.lambda } else { &td.a };
    if x.algebra() != want {
        return Err(Error::AlgebraMismatch);
    }
    if !heart.supports(td.n) {
        return Err(Error::Unsupported(format!("heart {heart} is not defined for n = {}", td.n)));
    }
    let u21 = |y: &BoundedComplex| {
        tilted(
            eng,
            y,
            &ClassDescriptor::between(ClassDescriptor::single(Class::B(0)), ClassDescriptor::single(Class::X(1))),
            &ClassDescriptor::single(Class::B(2)),
        )
    };
    let answer = match heart {
        HeartDescriptor::Z | HeartDescriptor::A => concentrated(x),
        HeartDescriptor::U21 => u21(x)?,
        HeartDescriptor::U11 => {
            let b1 = ClassDescriptor::single(Class::B(1));
            tilted(eng, x, &ClassDescriptor::perp(b1.clone()), &b1)?
        }
        HeartDescriptor::H => {
            let l = td.phi_label_complex(x)?;
            let yes = l.concentrated_in(0);
            Answer::exact(yes).with_label(l)
        }
        HeartDescriptor::PhiU21Shift => {
            let psi = td.psi_complex(x)?;
            u21(&psi.complex.shift(-1))?.with_note("Ψ(-)[-1] in U21")
        }
    };
    Ok(HeartVerdict { heart, answer, cohomology: nonzero_cohomology(x) })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeartReport {
    pub heart: String,
    pub samples: usize,
    pub members: Vec<String>,
    pub unknown: Vec<String>,
    /// Members whose image under `Φ` leaves the expected degrees.
    pub image_failures: Vec<String>,
    pub axiom_pairs: usize,
    pub axiom_violations: Vec<String>,
}

impl HeartReport {
    pub fn passed(&self) -> bool {
        self.image_failures.is_empty() && self.axiom_violations.is_empty()
    }
}

/// Degrees allowed for `Φx` when `x` lies in the heart: `Φ(U11) ⊆ A`,
/// `Φ(U21) ⊆ ⟨A, A[-1]⟩`.
fn phi_degrees(heart: HeartDescriptor) -> Option<&'static [i32]> {
    match heart {
        HeartDescriptor::U11 | HeartDescriptor::H => Some(&[0]),
        HeartDescriptor::U21 => Some(&[0, 1]),
        _ => None,
    }
}

/// Membership of each sample, the image of each member under `Φ`, and
/// `Hom_D(x, y[-1]) = 0` for up to `max_axiom_pairs` pairs of members.
pub fn check_heart(
    eng: &Engine,
    heart: HeartDescriptor,
    samples: &[ComplexSample],
    max_axiom_pairs: usize,
) -> Result<HeartReport> {
    let verdicts: Vec<(HeartVerdict, Option<bool>)> = samples
        .par_iter()
        .map(|s| {
            let v = heart_membership(eng, &s.complex, heart)?;
            let img = match (v.answer.is_yes(), phi_degrees(heart)) {
                (true, Some(degs)) => {
                    let l = eng.td.phi_label_complex(&s.complex)?;
                    let ok = (0..l.dims.len()).all(|i| l.dims[i] == 0 || degs.contains(&(l.low + i as i32)));
                    Some(ok)
                }
                _ => None,
            };
            Ok((v, img))
        })
        .collect::<Result<_>>()?;
    let mut r = HeartReport { heart: heart.to_string(), samples: samples.len(), ..Default::default() };
    let mut members = Vec::new();
    for (s, (v, img)) in samples.iter().zip(&verdicts) {
        if v.answer.is_unknown() {
            r.unknown.push(format!("{}: {}", s.name, v.answer));
        }
        if v.answer.is_yes() {
            r.members.push(s.name.clone());
            members.push(s);
        }
        if *img == Some(false) {
            r.image_failures.push(s.name.clone());
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..members.len()).flat_map(|i| (0..members.len()).map(move |j| (i, j))).take(max_axiom_pairs).collect();
    r.axiom_pairs = pairs.len();
    let bad: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (members[i], members[j]);
            let d = derived_hom_dim(&x.complex, &y.complex.shift(-1))?;
            Ok((d > 0).then(|| format!("Hom({}, {}[-1]) has dimension {d}", x.name, y.name)))
        })
        .collect::<Result<_>>()?;
    r.axiom_violations = bad.into_iter().flatten().collect();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;
    use crate::algebra::Module;
    use crate::filtration::EngineCaps;
    use crate::tilting::data::tests::a3r_tilting;

    #[test]
    fn membership_examples() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        let alg = a3r();
        let t = BoundedComplex::concentrated(&td.t, 0);
        for h in [HeartDescriptor::Z, HeartDescriptor::U21, HeartDescriptor::H] {
            assert!(heart_membership(&eng, &t, h).unwrap().answer.is_yes(), "{h}");
        }
        let s3 = BoundedComplex::concentrated(&Module::simple(&alg, 2), -1);
        assert!(heart_membership(&eng, &s3, HeartDescriptor::U21).unwrap().answer.is_yes());
        assert!(heart_membership(&eng, &s3, HeartDescriptor::Z).unwrap().answer.is_no());
        let s2 = BoundedComplex::concentrated(&Module::simple(&alg, 1), 0);
        assert!(heart_membership(&eng, &s2, HeartDescriptor::U21).unwrap().answer.is_yes());
        // S3 in degree 0 is not in B(2)
        let s3_0 = BoundedComplex::concentrated(&Module::simple(&alg, 2), 0);
        assert!(heart_membership(&eng, &s3_0, HeartDescriptor::U21).unwrap().answer.is_no());
        assert!(heart_membership(&eng, &s3, HeartDescriptor::U11).is_err());
    }

    #[test]
    fn regular_a_module_in_shifted_heart() {
        let td = a3r_tilting();
        let eng = Engine::new(&td, EngineCaps::default());
        // Ψ(A) = T, and T[-1] has H^1 = T ≠ 0
        let a = BoundedComplex::concentrated(&Module::regular(&td.a), 0);
        assert!(heart_membership(&eng, &a, HeartDescriptor::A).unwrap().answer.is_yes());
        assert!(heart_membership(&eng, &a, HeartDescriptor::PhiU21Shift).unwrap().answer.is_no());
    }
}
