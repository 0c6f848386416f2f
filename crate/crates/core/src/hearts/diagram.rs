//! The two tilts for `n = 2`: `Z` tilted at `(B(2), X(0)° ∩ X(1)°)` gives `U21`,
//! and `A` tilted at `(C(0), Y(-1)° ∩ Y(-2)°)` gives `Φ(U21)[1]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::complex::BoundedComplex;
use crate::error::{Error, Result};
use crate::filtration::{Answer, Basis, ClassDescriptor, Engine, Verdict};
use crate::tilting::Class;

use super::heart::{heart_membership, HeartDescriptor};
use super::pairs::{torsion_decompose, TorsionPairSpec};
use super::samples::Sample;
use super::Outcome;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRow {
    pub object: String,
    pub dims: Vec<usize>,
    /// Dimensions of `Ψ^-2, Ψ^-1, Ψ^0`.
    pub psi: Vec<usize>,
    pub in_c0: bool,
    /// `ΨM[-1] ∈ U21`, i.e. `M ∈ Φ(U21)[1]` on the torsion side.
    pub psi_shift_in_u21: Answer,
    pub torsion_side: Outcome,
    /// `M ∈ C(0)°`, from the torsion radical.
    pub in_c0_perp: Answer,
    /// `ΨM ∈ U21`.
    pub psi_in_u21: Answer,
    /// `M ∈ Y(-1)° ∩ Y(-2)°`, bounded.
    pub y_perp: Answer,
    pub free_side: Outcome,
    /// `(C(0), C(0)°)` part dimensions, and whether `Ψ` sends them to
    /// `U21[1]` and `U21` respectively.
    pub torsion_part: Vec<usize>,
    pub free_part: Vec<usize>,
    pub parts_placed: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftRow {
    pub object: String,
    pub torsion_part: Vec<usize>,
    pub free_part: Vec<usize>,
    /// `E_T ∈ U21` and `E_F[1] ∈ U21`.
    pub placed: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub left_tilt: String,
    pub right_tilt: String,
    pub left_rows: Vec<LeftRow>,
    pub rows: Vec<DiagramRow>,
    pub failures: usize,
    pub unknown: usize,
    pub weakest: Basis,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn same(a: &Answer, b: &Answer) -> Outcome {
    match (a.verdict, b.verdict) {
        (Verdict::Unknown, _) | (_, Verdict::Unknown) => Outcome::Unknown,
        (x, y) => Outcome::of(x == y),
    }
}

fn right_row(eng: &Engine, s: &Sample) -> Result<DiagramRow> {
    let td = eng.td;
    let m = &s.module;
    let psi = td.psi_complex(&BoundedComplex::concentrated(m, 0))?.complex;
    let label = td.psi_label(m)?;
    let in_c0 = label.at(0) == 0;
    let u21 = |x: &BoundedComplex| -> Result<Answer> { Ok(heart_membership(eng, x, HeartDescriptor::U21)?.answer) };
    let psi_shift_in_u21 = u21(&psi.shift(-1))?;
    let torsion_side = same(&Answer::exact(in_c0), &psi_shift_in_u21);

    let c0 = ClassDescriptor::single(Class::C(0));
    let in_c0_perp = eng.member(m, &ClassDescriptor::perp(c0))?;
    let psi_in_u21 = u21(&psi)?;
    let y_perp = eng
        .member(m, &ClassDescriptor::perp(ClassDescriptor::single(Class::Y(-1))))?
        .and(eng.member(m, &ClassDescriptor::perp(ClassDescriptor::single(Class::Y(-2))))?);
    let free_side = same(&in_c0_perp, &psi_in_u21).and(same(&in_c0_perp, &y_perp));

    let d = torsion_decompose(eng, m, &TorsionPairSpec::c0())?;
    let pt = td.psi_complex(&BoundedComplex::concentrated(&d.torsion, 0))?.complex;
    let pf = td.psi_complex(&BoundedComplex::concentrated(&d.free, 0))?.complex;
    let placed = u21(&pt.shift(-1))?.and(u21(&pf)?);
    let parts_placed = match placed.verdict {
        Verdict::Yes => Outcome::Pass,
        Verdict::No => Outcome::Fail,
        Verdict::Unknown => Outcome::Unknown,
    };
    Ok(DiagramRow {
        object: s.name.clone(),
        dims: m.dims().to_vec(),
        psi: label.dims,
        in_c0,
        psi_shift_in_u21,
        torsion_side,
        in_c0_perp,
        psi_in_u21,
        y_perp,
        free_side,
        torsion_part: d.torsion.dims().to_vec(),
        free_part: d.free.dims().to_vec(),
        parts_placed,
    })
}

fn left_row(eng: &Engine, s: &Sample) -> Result<LeftRow> {
    let d = torsion_decompose(eng, &s.module, &TorsionPairSpec::top(2))?;
    let t = heart_membership(eng, &BoundedComplex::concentrated(&d.torsion, 0), HeartDescriptor::U21)?.answer;
    let f = heart_membership(eng, &BoundedComplex::concentrated(&d.free, -1), HeartDescriptor::U21)?.answer;
    let a = t.and(f);
    Ok(LeftRow {
        object: s.name.clone(),
        torsion_part: d.torsion.dims().to_vec(),
        free_part: d.free.dims().to_vec(),
        placed: match a.verdict {
            Verdict::Yes => Outcome::Pass,
            Verdict::No => Outcome::Fail,
            Verdict::Unknown => Outcome::Unknown,
        },
    })
}

/// Per-object evidence for both tilts. Over A: `M ∈ C(0)` iff `ΨM ∈ U21[1]`,
/// and `M ∈ C(0)°` iff `ΨM ∈ U21` iff `M ∈ Y(-1)° ∩ Y(-2)°` (the last bounded).
pub fn check_tilt_diagram(eng: &Engine, lambda_samples: &[Sample], a_samples: &[Sample]) -> Result<DiagramReport> {
    if eng.td.n != 2 {
        return Err(Error::Unsupported(format!("the two-tilt diagram needs n = 2, have n = {}", eng.td.n)));
    }
    let left_rows: Vec<LeftRow> = lambda_samples.par_iter().map(|s| left_row(eng, s)).collect::<Result<_>>()?;
    let rows: Vec<DiagramRow> = a_samples.par_iter().map(|s| right_row(eng, s)).collect::<Result<_>>()?;
    let mut failures = 0;
    let mut unknown = 0;
    let mut weakest = Basis::Exact;
    let mut tally = |o: Outcome| match o {
        Outcome::Fail => failures += 1,
        Outcome::Unknown => unknown += 1,
        Outcome::Pass => {}
    };
    for r in &left_rows {
        tally(r.placed);
    }
    for r in &rows {
        tally(r.torsion_side);
        tally(r.free_side);
        tally(r.parts_placed);
    }
    for r in &rows {
        for a in [&r.psi_shift_in_u21, &r.in_c0_perp, &r.psi_in_u21, &r.y_perp] {
            weakest = weakest.weakest(a.basis);
        }
    }
    Ok(DiagramReport {
        left_tilt: "Z --(B(2), X(0)° & X(1)°)--> U21".into(),
        right_tilt: "A --(C(0), Y(-1)° & Y(-2)°)--> Φ(U21)[1]".into(),
        left_rows,
        rows,
        failures,
        unknown,
        weakest,
    })
}
