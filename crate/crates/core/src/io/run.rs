//! Commands over a workspace, each producing a [`Report`].

use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::enumerate::EnumCaps;
use crate::algebra::module::Module;
use crate::error::{Error, Result};
use crate::filtration::{Engine, EngineCaps, Verdict};
use crate::hearts::{
    check_heart, check_lemma, check_tilt_diagram, mirror_table, module_sweep, two_term_complexes, verify_torsion_pair,
    HeartDescriptor, LemmaId, Outcome, Sample, Side, TorsionPairSpec,
};
use crate::tilting::{Class, TiltCaps, TiltingData};

use super::report::{module_dims, tally, CapsRecord, ClassVerdict, CommandEcho, Entry, FiltrationRecord, Report, SweepRow, SCHEMA};
use super::workspace::Workspace;
use crate::filtration::ModuleRecord;

pub const COMMANDS: [&str; 11] = [
    "validate-tilting",
    "phi",
    "psi",
    "classify",
    "filter-jms",
    "filter-three",
    "filter-general",
    "check-pairs",
    "check-hearts",
    "check-lemma",
    "sweep",
];

/// Heart-axiom pairs checked per heart.
const AXIOM_PAIRS: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    ValidateTilting,
    Phi(String),
    Psi(String),
    Classify(String),
    FilterJms(String),
    FilterThree(String),
    FilterGeneral(String),
    /// Preset pair names; empty means every preset that applies.
    CheckPairs(Vec<String>),
    CheckHearts,
    /// `None` runs every lemma that applies.
    CheckLemma(Option<LemmaId>),
    Sweep(usize),
}

impl Command {
    /// Parses a command name and its arguments.
    pub fn parse(words: &[String]) -> Result<Command> {
        let Some((name, args)) = words.split_first() else {
            return Err(Error::UnknownCommand(String::new()));
        };
        let one = |what: &str| -> Result<String> {
            match args {
                [x] => Ok(x.clone()),
                _ => Err(Error::Semantic(format!("{name} takes exactly one {what}"))),
            }
        };
        let none = || -> Result<()> {
            if args.is_empty() {
                Ok(())
            } else {
                Err(Error::Semantic(format!("{name} takes no arguments")))
            }
        };
        Ok(match name.as_str() {
            "validate-tilting" => {
                none()?;
                Command::ValidateTilting
            }
            "phi" => Command::Phi(one("module")?),
            "psi" => Command::Psi(one("module")?),
            "classify" => Command::Classify(one("module")?),
            "filter-jms" => Command::FilterJms(one("module")?),
            "filter-three" => Command::FilterThree(one("module")?),
            "filter-general" => Command::FilterGeneral(one("module")?),
            "check-pairs" => Command::CheckPairs(args.to_vec()),
            "check-hearts" => {
                none()?;
                Command::CheckHearts
            }
            "check-lemma" => {
                let id = one("lemma id or all")?;
                if id.eq_ignore_ascii_case("all") {
                    Command::CheckLemma(None)
                } else {
                    Command::CheckLemma(Some(id.parse()?))
                }
            }
            "sweep" => {
                let cap = one("dimension cap")?;
                Command::Sweep(cap.parse().map_err(|_| Error::Semantic(format!("bad dimension cap {cap:?}")))?)
            }
            other => return Err(Error::UnknownCommand(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::ValidateTilting => "validate-tilting",
            Command::Phi(_) => "phi",
            Command::Psi(_) => "psi",
            Command::Classify(_) => "classify",
            Command::FilterJms(_) => "filter-jms",
            Command::FilterThree(_) => "filter-three",
            Command::FilterGeneral(_) => "filter-general",
            Command::CheckPairs(_) => "check-pairs",
            Command::CheckHearts => "check-hearts",
            Command::CheckLemma(_) => "check-lemma",
            Command::Sweep(_) => "sweep",
        }
    }

    pub fn args(&self) -> Vec<String> {
        match self {
            Command::ValidateTilting | Command::CheckHearts => Vec::new(),
            Command::Phi(x)
            | Command::Psi(x)
            | Command::Classify(x)
            | Command::FilterJms(x)
            | Command::FilterThree(x)
            | Command::FilterGeneral(x) => vec![x.clone()],
            Command::CheckPairs(v) => v.clone(),
            Command::CheckLemma(id) => vec![id.map_or("all".to_string(), |i| i.to_string())],
            Command::Sweep(d) => vec![d.to_string()],
        }
    }
}

/// Caps for one run; unset values come from the workspace defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub enum_cap: Option<usize>,
    pub perp_bound: Option<usize>,
    pub res_cap: Option<usize>,
    /// Largest dimension of the sampled objects for the check commands.
    pub sample_dim: Option<usize>,
}

impl Options {
    pub fn resolve(&self, ws: &Workspace) -> CapsRecord {
        let d = ws.file.defaults;
        CapsRecord {
            enum_cap: self.enum_cap.unwrap_or(d.enum_cap),
            perp_bound: self.perp_bound.unwrap_or(d.perp_bound),
            res_cap: self.res_cap.unwrap_or(d.res_cap),
            sample_dim: self.sample_dim.unwrap_or(4),
        }
    }
}

impl CapsRecord {
    pub fn tilt_caps(&self) -> TiltCaps {
        TiltCaps { res_cap: self.res_cap, ..TiltCaps::default() }
    }

    pub fn enum_caps(&self) -> EnumCaps {
        EnumCaps { max_dim: self.enum_cap, ..EnumCaps::default() }
    }

    pub fn engine_caps(&self) -> EngineCaps {
        EngineCaps { enum_caps: self.enum_caps(), perp_bound: self.perp_bound, shortcuts: true }
    }
}

fn outcome_of(v: Verdict) -> Outcome {
    match v {
        Verdict::Yes => Outcome::Pass,
        Verdict::No => Outcome::Fail,
        Verdict::Unknown => Outcome::Unknown,
    }
}

/// Runs one command. Failures of the mathematics are findings in the report;
/// errors are reserved for bad input, exceeded caps and internal faults.
pub fn run_command(ws: &Workspace, workspace_path: &str, cmd: &Command, opts: &Options) -> Result<Report> {
    let start = Instant::now();
    let caps = opts.resolve(ws);
    let mut results = Vec::new();
    let td = match ws.tilting_data(caps.tilt_caps()) {
        Ok(td) => Some(td),
        Err(Error::NotTilting { axiom, detail }) if *cmd == Command::ValidateTilting => {
            results.push(Entry::NotTilting { axiom, detail, outcome: Outcome::Fail });
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(td) = &td {
        let eng = Engine::new(td, caps.engine_caps());
        run_on(ws, td, &eng, cmd, &caps, &mut results)?;
    }
    let (counts, status) = tally(&results);
    Ok(Report {
        schema: SCHEMA.to_string(),
        command: CommandEcho {
            name: cmd.name().to_string(),
            args: cmd.args(),
            workspace: workspace_path.to_string(),
            workspace_text: ws.file.to_canonical_string(),
        },
        caps,
        status,
        counts,
        elapsed_ms: start.elapsed().as_millis() as u64,
        results,
    })
}

fn require_side(side: Side, want: Side, object: &str, what: &str) -> Result<()> {
    if side != want {
        let over = if want == Side::A { "A" } else { "the base algebra" };
        return Err(Error::Semantic(format!("{what} needs a module over {over}, {object:?} is not")));
    }
    Ok(())
}

pub(crate) fn classify_classes(td: &TiltingData, side: Side) -> Vec<Class> {
    let n = td.n as i32;
    match side {
        Side::Lambda => (0..=n).map(Class::X).chain((0..=n).map(Class::B)).collect(),
        Side::A => (-n..=0).map(Class::Y).chain((-n..=0).map(Class::C)).collect(),
    }
}

fn samples(td: &TiltingData, side: Side, caps: &CapsRecord) -> Result<Vec<Sample>> {
    let alg = if side == Side::A { &td.a } else { &td.lambda };
    module_sweep(alg, caps.sample_dim, caps.enum_caps())
}

fn run_on(ws: &Workspace, td: &TiltingData, eng: &Engine, cmd: &Command, caps: &CapsRecord, out: &mut Vec<Entry>) -> Result<()> {
    match cmd {
        Command::ValidateTilting => {
            out.push(Entry::Tilting {
                summands: td.names.clone(),
                n: td.n,
                gldim: td.gldim,
                t_dims: td.t.dims().to_vec(),
                end_dim: td.a.dim(),
                coresolution: module_dims(&td.coresolution.terms),
                outcome: Outcome::Pass,
            });
        }
        Command::Phi(obj) | Command::Psi(obj) => {
            let (side, m) = ws.resolve(obj, Some(td))?;
            let phi = matches!(cmd, Command::Phi(_));
            require_side(side, if phi { Side::Lambda } else { Side::A }, obj, cmd.name())?;
            let (label, ms): (_, Vec<Module>) = if phi {
                let l = td.phi_label(&m)?;
                let ms = (0..=td.n as i32).map(|i| td.phi_cohomology(&m, i)).collect::<Result<_>>()?;
                (l, ms)
            } else {
                let l = td.psi_label(&m)?;
                let ms = (-(td.n as i32)..=0).map(|j| td.psi_cohomology(&m, j)).collect::<Result<_>>()?;
                (l, ms)
            };
            out.push(Entry::Cohomology {
                object: obj.clone(),
                module: ModuleRecord::of(&m),
                label,
                dim_vectors: module_dims(&ms),
                outcome: Outcome::Pass,
            });
        }
        Command::Classify(obj) => {
            let (side, m) = ws.resolve(obj, Some(td))?;
            let label = if side == Side::Lambda { td.phi_label(&m)? } else { td.psi_label(&m)? };
            let classes = classify_classes(td, side)
                .into_iter()
                .map(|c| Ok(ClassVerdict { class: c, verdict: if td.in_class(&m, c)? { Verdict::Yes } else { Verdict::No } }))
                .collect::<Result<_>>()?;
            out.push(Entry::Classify {
                object: obj.clone(),
                module: ModuleRecord::of(&m),
                label,
                classes,
                outcome: Outcome::Pass,
            });
        }
        Command::FilterJms(obj) | Command::FilterThree(obj) | Command::FilterGeneral(obj) => {
            let (side, m) = ws.resolve(obj, Some(td))?;
            require_side(side, Side::Lambda, obj, cmd.name())?;
            let f = match cmd {
                Command::FilterJms(_) => eng.filter_jms(&m)?,
                Command::FilterThree(_) => eng.filter_three_step(&m)?,
                _ => eng.filter_general(&m)?,
            };
            let mut record = FiltrationRecord::of(obj, &f);
            if !f.is_additive() {
                record.notes.push("steps are not additive".into());
            }
            let outcome = if f.is_additive() { record.outcome() } else { Outcome::Fail };
            out.push(Entry::Filtration { record, outcome });
        }
        Command::CheckPairs(names) => {
            let names: Vec<String> = if names.is_empty() {
                TorsionPairSpec::PRESETS
                    .iter()
                    .filter(|p| td.n == 2 || !matches!(**p, "top-b0" | "e0"))
                    .map(|s| s.to_string())
                    .collect()
            } else {
                names.clone()
            };
            for name in names {
                if td.n != 2 && matches!(name.as_str(), "top-b0" | "e0") {
                    return Err(Error::Unsupported(format!("the pair {name} needs n = 2")));
                }
                let pair = TorsionPairSpec::preset(&name, td.n)?;
                let report = verify_torsion_pair(eng, &pair, &samples(td, pair.side, caps)?)?;
                let outcome = if !report.passed() {
                    Outcome::Fail
                } else if report.unknown.is_empty() {
                    Outcome::Pass
                } else {
                    Outcome::Unknown
                };
                out.push(Entry::Pair { report, outcome });
            }
        }
        Command::CheckHearts => {
            let ls = samples(td, Side::Lambda, caps)?;
            let small_l = module_sweep(&td.lambda, caps.sample_dim.min(2), caps.enum_caps())?;
            let small_a = module_sweep(&td.a, caps.sample_dim.min(2), caps.enum_caps())?;
            let cl = two_term_complexes(&small_l, &small_l, 2)?;
            let ca = two_term_complexes(&small_a, &small_a, 2)?;
            for h in HeartDescriptor::ALL {
                if !h.supports(td.n) {
                    continue;
                }
                let cs = if h.side() == Side::A { &ca } else { &cl };
                let report = check_heart(eng, h, cs, AXIOM_PAIRS)?;
                let outcome = if !report.passed() {
                    Outcome::Fail
                } else if report.unknown.is_empty() {
                    Outcome::Pass
                } else {
                    Outcome::Unknown
                };
                out.push(Entry::Heart { report, outcome });
            }
            if td.n == 2 {
                let as_ = samples(td, Side::A, caps)?;
                let report = check_tilt_diagram(eng, &ls, &as_)?;
                let outcome = if report.failures > 0 {
                    Outcome::Fail
                } else if report.unknown > 0 {
                    Outcome::Unknown
                } else {
                    Outcome::Pass
                };
                out.push(Entry::Diagram { report, outcome });
                let table = mirror_table(eng, &ls, &as_)?;
                out.push(Entry::Mirror { table, outcome: Outcome::Pass });
            }
        }
        Command::CheckLemma(id) => {
            let ids: Vec<LemmaId> = match id {
                Some(i) => {
                    if !i.supports(td.n) {
                        return Err(Error::Unsupported(format!("{i} does not apply for n = {}", td.n)));
                    }
                    vec![*i]
                }
                None => LemmaId::ALL.into_iter().filter(|i| i.supports(td.n)).collect(),
            };
            let ls = samples(td, Side::Lambda, caps)?;
            let as_ = samples(td, Side::A, caps)?;
            for i in ids {
                let s = if i.side() == Side::A { &as_ } else { &ls };
                let report = check_lemma(eng, i, s)?;
                let outcome = if report.failures > 0 {
                    Outcome::Fail
                } else if report.unknown > 0 {
                    Outcome::Unknown
                } else {
                    Outcome::Pass
                };
                out.push(Entry::Lemma { report, outcome });
            }
        }
        Command::Sweep(cap) => {
            let ls = module_sweep(&td.lambda, *cap, caps.enum_caps())?;
            let as_ = module_sweep(&td.a, *cap, caps.enum_caps())?;
            let mut rows: Vec<SweepRow> = ls.par_iter().map(|s| sweep_lambda(td, eng, s)).collect::<Result<_>>()?;
            let arows: Vec<SweepRow> = as_.par_iter().map(|s| sweep_a(td, s)).collect::<Result<_>>()?;
            rows.extend(arows);
            let outcome = rows.iter().fold(Outcome::Pass, |o, r| o.and(r.outcome));
            out.push(Entry::Sweep { dim_cap: *cap, rows, outcome });
        }
    }
    Ok(())
}

fn sweep_lambda(td: &TiltingData, eng: &Engine, s: &Sample) -> Result<SweepRow> {
    let m = &s.module;
    let label = td.phi_label(m)?;
    let roundtrip = td.roundtrip_lambda(m)?.passed();
    let mut row = SweepRow {
        object: s.name.clone(),
        side: Side::Lambda,
        dims: m.dims().to_vec(),
        cohomology: label.dims,
        roundtrip,
        additive: false,
        certified: false,
        rounds: Vec::new(),
        d_decreasing: true,
        filtrations_agree: true,
        unique: false,
        outcome: Outcome::Pass,
    };
    let general = eng.filter_general(m)?;
    row.additive = general.is_additive();
    let mut outcome = outcome_of(if general.all_certified() {
        Verdict::Yes
    } else if general.certificates.iter().any(|a| a.is_no()) {
        Verdict::No
    } else {
        Verdict::Unknown
    });
    row.certified = general.all_certified();
    let uniq = eng.check_uniqueness(&general)?;
    row.unique = uniq.agree;
    if uniq.unknown > 0 && uniq.agree {
        outcome = outcome.and(Outcome::Unknown);
    }
    if td.n == 2 {
        let jms = eng.filter_jms(m)?;
        let three = eng.filter_three_step(m)?;
        row.additive &= jms.is_additive() && three.is_additive();
        row.certified &= jms.all_certified() && three.all_certified();
        row.d_decreasing = jms.rounds.windows(2).all(|w| w[1].d_before < w[0].d_before)
            && jms.rounds.iter().all(|r| r.d_middle < r.d_before || r.middle_in_x1);
        row.filtrations_agree = three.steps == general.steps;
        row.rounds = jms.rounds;
    }
    let ok = row.roundtrip && row.additive && row.d_decreasing && row.filtrations_agree && row.unique;
    row.outcome = if ok { outcome } else { Outcome::Fail };
    Ok(row)
}

fn sweep_a(td: &TiltingData, s: &Sample) -> Result<SweepRow> {
    let m = &s.module;
    let label = td.psi_label(m)?;
    let roundtrip = td.roundtrip_a(m)?.passed();
    Ok(SweepRow {
        object: format!("A:{}", s.name),
        side: Side::A,
        dims: m.dims().to_vec(),
        cohomology: label.dims,
        roundtrip,
        additive: true,
        certified: true,
        rounds: Vec::new(),
        d_decreasing: true,
        filtrations_agree: true,
        unique: true,
        outcome: Outcome::of(roundtrip),
    })
}
