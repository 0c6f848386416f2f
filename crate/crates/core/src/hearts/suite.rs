//! Sampled checks of the class identities behind the two tilts and the
//! filtrations, one report per identity.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::module::Module;
use crate::error::{Error, Result};
use crate::filtration::{subquotient, Answer, Basis, ClassDescriptor, Engine, EngineCaps, Verdict};
use crate::tilting::Class;

use super::pairs::Side;
use super::samples::Sample;
use super::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    L6,
    L7,
    L8,
    L9,
    L12,
    L15,
    L19,
    L20,
    L21,
    R5,
    Cor4,
}

impl LemmaId {
    pub const ALL: [LemmaId; 11] = [
        LemmaId::L6,
        LemmaId::L7,
        LemmaId::L8,
        LemmaId::L9,
        LemmaId::L12,
        LemmaId::L15,
        LemmaId::L19,
        LemmaId::L20,
        LemmaId::L21,
        LemmaId::R5,
        LemmaId::Cor4,
    ];

    pub fn statement(&self) -> &'static str {
        match self {
            LemmaId::L6 => "B(2)° = B(0) & X(1)°",
            LemmaId::L7 => "Φ^0 E ∈ Y(0), Φ^2 E ∈ Y(-2), and Ψ^-2 Φ^1 E = 0 for E ∈ B(0)",
            LemmaId::L8 => "B(0) = X(0)°",
            LemmaId::L9 => "Ψ^0 M ∈ X(0) and Ψ^-2 M ∈ X(2)",
            LemmaId::L12 => "d(Ψ^-1 Φ^1 E) <= d(E), with equality only if Ψ^-1 Φ^1 E ∈ X(1)",
            LemmaId::L15 => "E2 = B(2)°",
            LemmaId::L19 => "B(2) & E0° = X(1)",
            LemmaId::L20 => "B(1)° = B(0) = X(1) and B(1) = X(0)",
            LemmaId::L21 => "F^0 E ∈ B(n) and E / F^-(n-1) E ∈ B(0)",
            LemmaId::R5 => "F^0 E ∈ [B(n-1) & B(n)]",
            LemmaId::Cor4 => "C(0)° = Y(-1)° & Y(-2)°",
        }
    }

    pub fn side(&self) -> Side {
        match self {
            LemmaId::L9 | LemmaId::Cor4 => Side::A,
            _ => Side::Lambda,
        }
    }

    pub fn supports(&self, n: usize) -> bool {
        match self {
            LemmaId::L20 => n == 1,
            LemmaId::L21 => n >= 1,
            LemmaId::R5 => n >= 2,
            _ => n == 2,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for LemmaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<LemmaId> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Semantic(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectResult {
    pub object: String,
    pub outcome: Outcome,
    pub lhs: Verdict,
    pub rhs: Verdict,
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub id: LemmaId,
    pub statement: String,
    pub objects: Vec<ObjectResult>,
    pub passes: usize,
    pub failures: usize,
    pub unknown: usize,
    pub weakest: Basis,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn equality(lhs: Answer, rhs: Answer) -> ObjectResult {
    let outcome = match (lhs.verdict, rhs.verdict) {
        (Verdict::Unknown, _) | (_, Verdict::Unknown) => Outcome::Unknown,
        (a, b) => Outcome::of(a == b),
    };
    let detail = match outcome {
        Outcome::Pass => String::new(),
        _ => format!("lhs {lhs}: {}; rhs {rhs}: {}", lhs.note, rhs.note),
    };
    ObjectResult {
        object: String::new(),
        outcome,
        lhs: lhs.verdict,
        rhs: rhs.verdict,
        basis: lhs.basis.weakest(rhs.basis),
        detail,
    }
}

fn holds(premise: bool, conclusion: Answer) -> ObjectResult {
    let outcome = if !premise {
        Outcome::Pass
    } else {
        match conclusion.verdict {
            Verdict::Yes => Outcome::Pass,
            Verdict::No => Outcome::Fail,
            Verdict::Unknown => Outcome::Unknown,
        }
    };
    let detail = if outcome == Outcome::Pass { String::new() } else { conclusion.note.clone() };
    ObjectResult {
        object: String::new(),
        outcome,
        lhs: if premise { Verdict::Yes } else { Verdict::No },
        rhs: conclusion.verdict,
        basis: conclusion.basis,
        detail,
    }
}

fn flag(yes: bool, note: &str) -> Answer {
    let a = Answer::exact(yes);
    if yes {
        a
    } else {
        a.with_note(note.to_string())
    }
}

fn single(c: Class) -> ClassDescriptor {
    ClassDescriptor::single(c)
}

fn check_object(eng: &Engine, plain: &Engine, id: LemmaId, e: &Module) -> Result<ObjectResult> {
    let td = eng.td;
    let n = td.n as i32;
    Ok(match id {
        LemmaId::L6 => equality(
            plain.member(e, &ClassDescriptor::perp(single(Class::B(2))))?,
            plain.member(e, &ClassDescriptor::between(single(Class::B(0)), single(Class::X(1))))?,
        ),
        LemmaId::L7 => {
            let p0 = td.phi_cohomology(e, 0)?;
            let p1 = td.phi_cohomology(e, 1)?;
            let p2 = td.phi_cohomology(e, 2)?;
            let mut a = flag(td.in_class(&p0, Class::Y(0))?, "Φ^0 E not in Y(0)")
                .and(flag(td.in_class(&p2, Class::Y(-2))?, "Φ^2 E not in Y(-2)"));
            if td.in_class(e, Class::B(0))? {
                a = a.and(flag(td.psi_label(&p1)?.at(-2) == 0, "Ψ^-2 Φ^1 E ≠ 0"));
            }
            holds(true, a)
        }
        LemmaId::L8 => equality(eng.meet(e, &[Class::B(0)])?, plain.member(e, &ClassDescriptor::perp(single(Class::X(0))))?),
        LemmaId::L9 => {
            let top = td.psi_cohomology(e, 0)?;
            let bottom = td.psi_cohomology(e, -2)?;
            holds(
                true,
                flag(td.in_class(&top, Class::X(0))?, "Ψ^0 M not in X(0)")
                    .and(flag(td.in_class(&bottom, Class::X(2))?, "Ψ^-2 M not in X(2)")),
            )
        }
        LemmaId::L12 => {
            let mid = td.psi_cohomology(&td.phi_cohomology(e, 1)?, -1)?;
            let (d0, d1) = (td.d(e)?, td.d(&mid)?);
            let ok = d1 < d0 || (d1 == d0 && td.in_class(&mid, Class::X(1))?);
            holds(true, flag(ok, &format!("d goes from {d0} to {d1}")))
        }
        LemmaId::L15 => equality(eng.member(e, &ClassDescriptor::E2)?, eng.member(e, &ClassDescriptor::perp(single(Class::B(2))))?),
        LemmaId::L19 => {
            let lhs = plain.meet(e, &[Class::B(2)])?;
            let lhs = if lhs.is_yes() { lhs.and(plain.member(e, &ClassDescriptor::perp(ClassDescriptor::E0))?) } else { lhs };
            equality(lhs, eng.meet(e, &[Class::X(1)])?)
        }
        LemmaId::L20 => {
            let b1p = plain.member(e, &ClassDescriptor::perp(single(Class::B(1))))?;
            let b0 = eng.meet(e, &[Class::B(0)])?;
            let x1 = eng.meet(e, &[Class::X(1)])?;
            let b1 = eng.meet(e, &[Class::B(1)])?;
            let x0 = eng.meet(e, &[Class::X(0)])?;
            let mut r = equality(b1p, b0.clone());
            for (a, b) in [(b0, x1), (b1, x0)] {
                let s = equality(a, b);
                if s.outcome != Outcome::Pass && r.outcome != Outcome::Fail {
                    r = s;
                }
            }
            r
        }
        LemmaId::L21 => {
            let steps = td.spectral_steps(e)?;
            let f0 = e.submodule(&steps[0]).0;
            let top = subquotient(e, &steps[n as usize], &steps[n as usize - 1]);
            holds(
                true,
                flag(td.in_class(&f0, Class::B(n))?, "F^0 E not in B(n)")
                    .and(flag(td.in_class(&top, Class::B(0))?, "E / F^-(n-1) E not in B(0)")),
            )
        }
        LemmaId::R5 => {
            let steps = td.spectral_steps(e)?;
            let f0 = e.submodule(&steps[0]).0;
            holds(true, eng.in_bracket_class(&f0, &[Class::B(n - 1), Class::B(n)])?)
        }
        LemmaId::Cor4 => {
            let lhs = eng.member(e, &ClassDescriptor::perp(single(Class::C(0))))?;
            let rhs = plain
                .member(e, &ClassDescriptor::perp(single(Class::Y(-1))))?
                .and(plain.member(e, &ClassDescriptor::perp(single(Class::Y(-2))))?);
            equality(lhs, rhs)
        }
    })
}

/// Checks one identity on every sample. Both sides of an equality are computed
/// independently: the right-hand perps run without the engine's reductions,
/// so they are exact only when a torsion radical or a complete list of
/// indecomposables decides them.
pub fn check_lemma(eng: &Engine, id: LemmaId, samples: &[Sample]) -> Result<LemmaReport> {
    if !id.supports(eng.td.n) {
        return Err(Error::Unsupported(format!("{id} is not defined for n = {}", eng.td.n)));
    }
    let plain = Engine::new(eng.td, EngineCaps { shortcuts: false, ..eng.caps });
    let want = if id.side() == Side::Lambda { &eng.td.lambda } else { &eng.td.a };
    if samples.iter().any(|s| s.module.algebra() != want) {
        return Err(Error::AlgebraMismatch);
    }
    let objects: Vec<ObjectResult> = samples
        .par_iter()
        .map(|s| {
            let mut r = check_object(eng, &plain, id, &s.module)?;
            r.object = s.name.clone();
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let count = |o: Outcome| objects.iter().filter(|r| r.outcome == o).count();
    let weakest = objects.iter().fold(Basis::Exact, |b, r| b.weakest(r.basis));
    Ok(LemmaReport {
        id,
        statement: id.statement().to_string(),
        passes: count(Outcome::Pass),
        failures: count(Outcome::Fail),
        unknown: count(Outcome::Unknown),
        weakest,
        objects,
    })
}

/// How the sweep objects fall for the torsion pair on each side of the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorRow {
    pub side: Side,
    pub pair: String,
    pub objects: usize,
    pub torsion: usize,
    pub free: usize,
    pub mixed: usize,
    pub unknown: usize,
    /// Indecomposables of the sweep in the torsion class, by dimension vector.
    pub torsion_indecomposables: Vec<Vec<usize>>,
    pub free_indecomposables: Vec<Vec<usize>>,
}

/// The two tilts side by side, as an observation only: nothing is asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorTable {
    pub rows: Vec<MirrorRow>,
}

fn mirror_row(
    eng: &Engine,
    side: Side,
    torsion: &ClassDescriptor,
    free: &ClassDescriptor,
    samples: &[Sample],
) -> Result<MirrorRow> {
    let per: Vec<(Answer, Answer)> = samples
        .par_iter()
        .map(|s| Ok((eng.member(&s.module, torsion)?, eng.member(&s.module, free)?)))
        .collect::<Result<_>>()?;
    let mut r = MirrorRow {
        side,
        pair: format!("({torsion}, {free})"),
        objects: samples.len(),
        torsion: 0,
        free: 0,
        mixed: 0,
        unknown: 0,
        torsion_indecomposables: Vec::new(),
        free_indecomposables: Vec::new(),
    };
    for (s, (t, f)) in samples.iter().zip(&per) {
        if s.module.is_zero() {
            continue;
        }
        let indec = !s.name.contains('+') && !s.name.contains('*');
        match (t.verdict, f.verdict) {
            (Verdict::Yes, _) => {
                r.torsion += 1;
                if indec {
                    r.torsion_indecomposables.push(s.module.dims().to_vec());
                }
            }
            (_, Verdict::Yes) => {
                r.free += 1;
                if indec {
                    r.free_indecomposables.push(s.module.dims().to_vec());
                }
            }
            (Verdict::No, Verdict::No) => r.mixed += 1,
            _ => r.unknown += 1,
        }
    }
    Ok(r)
}

pub fn mirror_table(eng: &Engine, lambda_samples: &[Sample], a_samples: &[Sample]) -> Result<MirrorTable> {
    if eng.td.n != 2 {
        return Err(Error::Unsupported("the mirror table needs n = 2".into()));
    }
    let x0x1 = ClassDescriptor::between(
        ClassDescriptor::perp(single(Class::X(0))),
        single(Class::X(1)),
    );
    let y1y2 = ClassDescriptor::between(ClassDescriptor::perp(single(Class::Y(-1))), single(Class::Y(-2)));
    Ok(MirrorTable {
        rows: vec![
            mirror_row(eng, Side::Lambda, &single(Class::B(2)), &x0x1, lambda_samples)?,
            mirror_row(eng, Side::A, &single(Class::C(0)), &y1y2, a_samples)?,
        ],
    })
}
