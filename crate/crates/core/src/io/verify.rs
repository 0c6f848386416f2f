//! Re-checking a report: exact sequences, filtration steps, dimension sums,
//! memberships implied by labels and the internal consistency of counts. No
//! search is repeated; the cohomology of a recorded module is recomputed
//! directly where a verdict depends on it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::module::{Module, Submodule};
use crate::error::{Error, Result};
use crate::filtration::{Answer, ClassDescriptor, Verdict};
use crate::hearts::{DiagramReport, LemmaReport, Outcome};
use crate::linalg::Subspace;
use crate::tilting::{Class, TiltingData};

use super::report::{parse_rows, tally, Entry, FiltrationRecord, Report, SweepRow, SCHEMA};
use super::workspace::{parse_str, Workspace};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub problems: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.problems.push(what());
        }
    }
}

pub fn verify_file(path: &Path) -> Result<VerifyOutcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    verify_report(&Report::from_json(&text)?)
}

/// Checks a report against the workspace text it carries.
pub fn verify_report(r: &Report) -> Result<VerifyOutcome> {
    let mut v = VerifyOutcome::default();
    v.check(r.schema == SCHEMA, || format!("schema {:?}, expected {SCHEMA:?}", r.schema));
    let (counts, status) = tally(&r.results);
    v.check(counts == r.counts, || format!("counts {:?} do not match the results {counts:?}", r.counts));
    v.check(status == r.status, || format!("status {:?} does not match the results ({status:?})", r.status));

    let ws = parse_str(&r.command.workspace_text)?;
    let td = match ws.tilting_data(r.caps.tilt_caps()) {
        Ok(td) => Some(td),
        Err(Error::NotTilting { .. }) => None,
        Err(e) => return Err(e),
    };
    for (i, e) in r.results.iter().enumerate() {
        let at = format!("results[{i}] ({})", e.kind());
        match (e, &td) {
            (Entry::NotTilting { outcome, .. }, td) => {
                v.check(td.is_none(), || format!("{at}: the workspace declares a valid tilting module"));
                v.check(*outcome == Outcome::Fail, || format!("{at}: outcome must be fail"));
            }
            (_, None) => v.check(false, || format!("{at}: the workspace tilting declaration does not validate")),
            (_, Some(td)) => verify_entry(&mut v, &ws, td, e, &at)?,
        }
    }
    Ok(v)
}

fn verify_entry(v: &mut VerifyOutcome, ws: &Workspace, td: &TiltingData, e: &Entry, at: &str) -> Result<()> {
    match e {
        Entry::Tilting { summands, n, gldim, t_dims, end_dim, coresolution, outcome } => {
            v.check(summands == &td.names, || format!("{at}: summands differ from the workspace"));
            v.check(*n == td.n && *gldim == td.gldim, || format!("{at}: n or gldim differ"));
            v.check(t_dims.as_slice() == td.t.dims(), || format!("{at}: dimension vector of T"));
            v.check(*end_dim == td.a.dim(), || format!("{at}: dim End(T) is {}, not {end_dim}", td.a.dim()));
            let terms: Vec<Vec<usize>> = td.coresolution.terms.iter().map(|m| m.dims().to_vec()).collect();
            v.check(&terms == coresolution, || format!("{at}: coresolution terms differ"));
            v.check(td.coresolution.is_exact(), || format!("{at}: coresolution is not exact"));
            v.check(*outcome == Outcome::Pass, || format!("{at}: outcome must be pass"));
        }
        Entry::NotTilting { .. } => unreachable!("handled by the caller"),
        Entry::Cohomology { object, module, label, dim_vectors, .. } => {
            let m = rebuild(ws, td, module, label.functor == "psi", at)?;
            let Some(m) = record_ok(v, m, at) else { return Ok(()) };
            let fresh = if label.functor == "psi" { td.psi_label(&m)? } else { td.phi_label(&m)? };
            v.check(&fresh == label, || format!("{at}: cohomology of {object} is {:?}, not {:?}", fresh.dims, label.dims));
            let sums: Vec<usize> = dim_vectors.iter().map(|d| d.iter().sum()).collect();
            v.check(sums == label.dims, || format!("{at}: dimension vectors of {object} do not add up to {:?}", label.dims));
        }
        Entry::Classify { object, module, label, classes, .. } => {
            let m = rebuild(ws, td, module, label.functor == "psi", at)?;
            let Some(m) = record_ok(v, m, at) else { return Ok(()) };
            let fresh = if label.functor == "psi" { td.psi_label(&m)? } else { td.phi_label(&m)? };
            v.check(&fresh == label, || format!("{at}: cohomology of {object} is {:?}, not {:?}", fresh.dims, label.dims));
            for c in classes {
                let yes = td.in_class(&m, c.class)?;
                v.check(c.verdict == if yes { Verdict::Yes } else { Verdict::No }, || {
                    format!("{at}: {object} in {} is {}, recorded {}", c.class, if yes { "yes" } else { "no" }, c.verdict)
                });
            }
        }
        Entry::Filtration { record, outcome } => verify_filtration(v, td, record, *outcome, at)?,
        Entry::Sweep { rows, outcome, .. } => {
            for r in rows {
                verify_sweep_row(v, r, at);
            }
            let folded = rows.iter().fold(Outcome::Pass, |o, r| o.and(r.outcome));
            v.check(folded == *outcome, || format!("{at}: outcome {outcome:?} but rows give {folded:?}"));
        }
        Entry::Pair { report, outcome } => {
            let expect = if !report.passed() {
                Outcome::Fail
            } else if report.unknown.is_empty() {
                Outcome::Pass
            } else {
                Outcome::Unknown
            };
            v.check(expect == *outcome, || format!("{at}: pair {} outcome {outcome:?}, findings give {expect:?}", report.pair));
            v.check(report.torsion_members <= report.objects && report.free_members <= report.objects, || {
                format!("{at}: pair {} has more members than objects", report.pair)
            });
            v.check(report.hom_pairs_checked <= report.torsion_members * report.free_members, || {
                format!("{at}: pair {} checked more hom pairs than member pairs", report.pair)
            });
        }
        Entry::Heart { report, outcome } => {
            let expect = if !report.passed() {
                Outcome::Fail
            } else if report.unknown.is_empty() {
                Outcome::Pass
            } else {
                Outcome::Unknown
            };
            v.check(expect == *outcome, || format!("{at}: heart {} outcome {outcome:?}, findings give {expect:?}", report.heart));
            v.check(report.members.len() + report.unknown.len() <= report.samples, || {
                format!("{at}: heart {} has more members than samples", report.heart)
            });
        }
        Entry::Diagram { report, outcome } => verify_diagram(v, report, *outcome, at),
        Entry::Mirror { table, .. } => {
            for row in &table.rows {
                v.check(row.torsion + row.free + row.mixed + row.unknown <= row.objects, || {
                    format!("{at}: mirror row {} counts exceed its objects", row.pair)
                });
            }
        }
        Entry::Lemma { report, outcome } => verify_lemma(v, report, *outcome, at),
    }
    Ok(())
}

fn rebuild(
    ws: &Workspace,
    td: &TiltingData,
    rec: &crate::filtration::ModuleRecord,
    over_a: bool,
    at: &str,
) -> Result<std::result::Result<Module, String>> {
    let alg = if over_a { &td.a } else { &ws.algebra };
    Ok(rec.to_module(alg).map_err(|e| format!("{at}: recorded module does not rebuild: {e}")))
}

fn record_ok(v: &mut VerifyOutcome, m: std::result::Result<Module, String>, _at: &str) -> Option<Module> {
    match m {
        Ok(m) => {
            v.checked += 1;
            Some(m)
        }
        Err(e) => {
            v.check(false, || e);
            None
        }
    }
}

/// Classes every member of the labelled class must lie in. The `K` and `E`
/// classes sit inside `B(n)` or `B(0)` by the long exact sequence of `Φ`.
fn necessary_classes(d: &ClassDescriptor, n: usize) -> Vec<Class> {
    let n = n as i32;
    match d {
        ClassDescriptor::Meet { of } => of.clone(),
        ClassDescriptor::K0 | ClassDescriptor::E0 => vec![Class::B(n)],
        ClassDescriptor::K1 => vec![Class::X(1)],
        ClassDescriptor::E1 => vec![Class::B(0), Class::B(n)],
        ClassDescriptor::K2 | ClassDescriptor::E2 => vec![Class::B(0)],
        ClassDescriptor::Bracket { of } => of.iter().filter(|c| matches!(c, Class::B(i) if *i == n)).copied().collect(),
        ClassDescriptor::Between { torsion, .. } => necessary_classes(torsion, n as usize),
        ClassDescriptor::Perp { .. } | ClassDescriptor::Zero => Vec::new(),
    }
}

fn subspace_from(f: crate::linalg::Field, ambient: usize, rows: &[Vec<String>]) -> Result<Subspace> {
    Ok(Subspace::from_rows(&parse_rows(f, ambient, rows)?))
}

fn verify_filtration(v: &mut VerifyOutcome, td: &TiltingData, r: &FiltrationRecord, outcome: Outcome, at: &str) -> Result<()> {
    let alg = &td.lambda;
    let at = format!("{at} {} filtration of {}", r.kind, r.object);
    let Some(e) = record_ok(v, r.module.to_module(alg).map_err(|x| format!("{at}: module does not rebuild: {x}")), &at) else {
        return Ok(());
    };
    let f = e.field();
    let mut steps = Vec::new();
    for (i, s) in r.steps.iter().enumerate() {
        if s.basis.len() != e.num_vertices() {
            v.check(false, || format!("{at}: step {i} has the wrong number of vertex parts"));
            return Ok(());
        }
        let parts = s
            .basis
            .iter()
            .enumerate()
            .map(|(vx, rows)| subspace_from(f, e.dims()[vx], rows))
            .collect::<Result<Vec<_>>>();
        let Ok(parts) = parts else {
            v.check(false, || format!("{at}: step {i} does not parse"));
            return Ok(());
        };
        let sub = Submodule { parts };
        v.check(sub.dim_vector() == s.dims, || format!("{at}: step {i} has dimension vector {:?}, recorded {:?}", sub.dim_vector(), s.dims));
        v.check(sub.is_invariant(&e), || format!("{at}: step {i} is not a submodule"));
        steps.push(sub);
    }
    let (Some(first), Some(last)) = (steps.first(), steps.last()) else {
        v.check(false, || format!("{at}: no steps"));
        return Ok(());
    };
    v.check(first.is_zero(), || format!("{at}: the first step is not zero"));
    v.check(last.dim_vector() == e.dims(), || format!("{at}: the last step is not the whole module"));
    for (i, w) in steps.windows(2).enumerate() {
        v.check(w[0].is_sub_of(&w[1]), || format!("{at}: step {i} is not inside step {}", i + 1));
    }
    v.check(r.factors.len() + 1 == steps.len(), || format!("{at}: {} factors for {} steps", r.factors.len(), steps.len()));

    let mut total = vec![0usize; e.num_vertices()];
    for (i, fac) in r.factors.iter().enumerate() {
        let name = format!("{at}: factor {} ({})", i + 1, fac.label);
        for (t, x) in total.iter_mut().zip(&fac.dims) {
            *t += x;
        }
        if let (Some(lo), Some(hi)) = (r.steps.get(i), r.steps.get(i + 1)) {
            let diff: Option<Vec<usize>> = hi.dims.iter().zip(&lo.dims).map(|(a, b)| a.checked_sub(*b)).collect();
            v.check(diff.as_ref() == Some(&fac.dims), || {
                format!("{name}: dimension vector {:?} is not step {} minus step {i}", fac.dims, i + 1)
            });
        }
        // 0 -> F_i -> F_{i+1} -> factor -> 0
        let q = &fac.quotient;
        v.check(q.left.dims == r.steps[i].dims && q.middle.dims == r.steps.get(i + 1).map_or(vec![], |s| s.dims.clone()), || {
            format!("{name}: quotient sequence does not start from the recorded steps")
        });
        v.check(q.right.dims == fac.dims, || format!("{name}: quotient sequence ends in {:?}, not {:?}", q.right.dims, fac.dims));
        let factor = match q.verify(td, alg) {
            Ok(m) => {
                v.checked += 1;
                Some(m)
            }
            Err(msg) => {
                v.check(false, || format!("{name}: quotient sequence: {msg}"));
                None
            }
        };
        if let Some(x) = factor {
            if fac.verdict == Verdict::Yes {
                for c in necessary_classes(&fac.label, td.n) {
                    let yes = td.in_class(&x, c)?;
                    v.check(yes, || format!("{name}: the factor is not in {c}, so it cannot be in {}", fac.label));
                }
                if fac.label == ClassDescriptor::Zero {
                    v.check(x.is_zero(), || format!("{name}: the factor is not zero"));
                }
            }
        }
        if let Some(w) = &fac.witness {
            match w.verify(td, alg) {
                Ok(_) => {
                    v.checked += 1;
                    let end = match fac.label {
                        ClassDescriptor::K2 => &w.left.dims,
                        _ => &w.right.dims,
                    };
                    v.check(end == &fac.dims, || format!("{name}: witness sequence is about a module of dimension {end:?}"));
                }
                Err(msg) => v.check(false, || format!("{name}: witness sequence: {msg}")),
            }
        }
    }
    v.check(total == e.dims(), || format!("{at}: factor dimension vectors add up to {total:?}, not {:?}", e.dims()));
    let expect = r.outcome();
    v.check(outcome == expect || outcome == Outcome::Fail, || format!("{at}: outcome {outcome:?}, factors give {expect:?}"));
    Ok(())
}

fn verify_sweep_row(v: &mut VerifyOutcome, r: &SweepRow, at: &str) {
    let ok = r.roundtrip && r.additive && r.d_decreasing && r.filtrations_agree && r.unique;
    v.check(ok || r.outcome == Outcome::Fail, || format!("{at}: {} has a failed check but outcome {:?}", r.object, r.outcome));
    let dec = r.rounds.windows(2).all(|w| w[1].d_before < w[0].d_before);
    v.check(dec || !r.d_decreasing, || format!("{at}: {} rounds do not decrease d", r.object));
}

fn same(a: &Answer, b: &Answer) -> Outcome {
    match (a.verdict, b.verdict) {
        (Verdict::Unknown, _) | (_, Verdict::Unknown) => Outcome::Unknown,
        (x, y) => Outcome::of(x == y),
    }
}

fn verify_diagram(v: &mut VerifyOutcome, d: &DiagramReport, outcome: Outcome, at: &str) {
    let (mut fails, mut unknown) = (0, 0);
    let mut count = |o: Outcome| match o {
        Outcome::Fail => fails += 1,
        Outcome::Unknown => unknown += 1,
        Outcome::Pass => {}
    };
    for r in &d.left_rows {
        count(r.placed);
    }
    for r in &d.rows {
        count(r.torsion_side);
        count(r.free_side);
        count(r.parts_placed);
    }
    v.check(fails == d.failures && unknown == d.unknown, || format!("{at}: failure or unknown counts disagree with the rows"));
    for r in &d.rows {
        let name = format!("{at}: row {}", r.object);
        v.check(r.in_c0 == (r.psi.last() == Some(&0)), || format!("{name}: C(0) membership disagrees with its Ψ dimensions"));
        v.check(r.torsion_side == same(&Answer::exact(r.in_c0), &r.psi_shift_in_u21), || format!("{name}: torsion side outcome"));
        let free = same(&r.in_c0_perp, &r.psi_in_u21).and(same(&r.in_c0_perp, &r.y_perp));
        v.check(r.free_side == free, || format!("{name}: free side outcome"));
        let sum: Vec<usize> = r.torsion_part.iter().zip(&r.free_part).map(|(a, b)| a + b).collect();
        v.check(sum == r.dims, || format!("{name}: parts do not add up to {:?}", r.dims));
    }
    let expect = if d.failures > 0 {
        Outcome::Fail
    } else if d.unknown > 0 {
        Outcome::Unknown
    } else {
        Outcome::Pass
    };
    v.check(expect == outcome, || format!("{at}: outcome {outcome:?}, rows give {expect:?}"));
}

fn verify_lemma(v: &mut VerifyOutcome, r: &LemmaReport, outcome: Outcome, at: &str) {
    let at = format!("{at} {}", r.id);
    let (mut p, mut f, mut u) = (0, 0, 0);
    for o in &r.objects {
        match o.outcome {
            Outcome::Pass => p += 1,
            Outcome::Fail => f += 1,
            Outcome::Unknown => u += 1,
        }
        let known = o.lhs != Verdict::Unknown && o.rhs != Verdict::Unknown;
        let consistent = match o.outcome {
            Outcome::Pass => o.lhs != Verdict::Yes || o.rhs == Verdict::Yes,
            Outcome::Fail => known && o.lhs != o.rhs,
            Outcome::Unknown => !known,
        };
        v.check(consistent, || format!("{at}: {} has sides {} / {} but outcome {:?}", o.object, o.lhs, o.rhs, o.outcome));
    }
    v.check((p, f, u) == (r.passes, r.failures, r.unknown), || {
        format!("{at}: counts {}/{}/{} disagree with the objects ({p}/{f}/{u})", r.passes, r.failures, r.unknown)
    });
    let expect = if f > 0 {
        Outcome::Fail
    } else if u > 0 {
        Outcome::Unknown
    } else {
        Outcome::Pass
    };
    v.check(expect == outcome, || format!("{at}: outcome {outcome:?}, objects give {expect:?}"));
}
