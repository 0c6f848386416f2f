//! The machine-readable report and its human rendering.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::module::{Module, Submodule};
use crate::error::{Error, Result};
use crate::filtration::{Basis, ClassDescriptor, Filtration, ModuleRecord, RoundRecord, SesCert, Verdict};
use crate::hearts::{dims_string, DiagramReport, HeartReport, LemmaReport, MirrorTable, Outcome, PairReport, Side};
use crate::linalg::Matrix;
use crate::tilting::{Class, CohomologyLabel};

pub const SCHEMA: &str = "tiltfilt-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
    pub workspace: String,
    /// Canonical text of the workspace, so the report can be checked on its own.
    pub workspace_text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsRecord {
    pub enum_cap: usize,
    pub perp_bound: usize,
    pub res_cap: usize,
    pub sample_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Unknown,
    Failures,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: CommandEcho,
    pub caps: CapsRecord,
    pub status: Status,
    pub counts: Counts,
    pub elapsed_ms: u64,
    pub results: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub class: Class,
    pub verdict: Verdict,
}

/// One submodule in a filtration, as spanning vectors at each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub dims: Vec<usize>,
    pub basis: Vec<Vec<Vec<String>>>,
}

impl StepRecord {
    pub fn of(s: &Submodule) -> StepRecord {
        StepRecord { dims: s.dim_vector(), basis: s.parts.iter().map(|p| p.basis().to_string_rows()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub label: ClassDescriptor,
    pub dims: Vec<usize>,
    pub verdict: Verdict,
    pub basis: Basis,
    /// `0 -> F_i -> F_{i+1} -> factor -> 0`.
    pub quotient: SesCert,
    /// Witness behind the membership verdict, when the test produced one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SesCert>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationRecord {
    pub object: String,
    pub kind: String,
    pub module: ModuleRecord,
    pub steps: Vec<StepRecord>,
    pub factors: Vec<FactorRecord>,
    pub rounds: Vec<RoundRecord>,
    pub notes: Vec<String>,
}

impl FiltrationRecord {
    pub fn of(object: &str, f: &Filtration) -> FiltrationRecord {
        let e = &f.module;
        let factors = f
            .steps
            .windows(2)
            .zip(&f.labels)
            .zip(&f.certificates)
            .map(|((w, label), a)| {
                let (upper, inc) = e.submodule(&w[1]);
                let lower = Submodule::preimage(&inc, &w[0]);
                let (_, j) = upper.submodule(&lower);
                let (q, p) = upper.quotient(&lower);
                FactorRecord {
                    label: label.clone(),
                    dims: q.dims().to_vec(),
                    verdict: a.verdict,
                    basis: a.basis,
                    quotient: SesCert::new(&j, &p, None, None, None),
                    witness: a.sequence.clone(),
                }
            })
            .collect();
        FiltrationRecord {
            object: object.to_string(),
            kind: f.kind.clone(),
            module: ModuleRecord::of(e),
            steps: f.steps.iter().map(StepRecord::of).collect(),
            factors,
            rounds: f.rounds.clone(),
            notes: f.notes.clone(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        self.factors.iter().fold(Outcome::Pass, |o, f| {
            o.and(match f.verdict {
                Verdict::Yes => Outcome::Pass,
                Verdict::No => Outcome::Fail,
                Verdict::Unknown => Outcome::Unknown,
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub object: String,
    pub side: Side,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub roundtrip: bool,
    /// The remaining fields are filled for modules over Λ only.
    #[serde(default)]
    pub additive: bool,
    #[serde(default)]
    pub certified: bool,
    #[serde(default)]
    pub rounds: Vec<RoundRecord>,
    /// `d` strictly drops from round to round.
    #[serde(default)]
    pub d_decreasing: bool,
    /// The three-step and general filtrations have the same steps.
    #[serde(default)]
    pub filtrations_agree: bool,
    /// The maximal torsion submodules found by enumeration agree with the filtration.
    #[serde(default)]
    pub unique: bool,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Entry {
    Tilting {
        summands: Vec<String>,
        n: usize,
        gldim: usize,
        t_dims: Vec<usize>,
        end_dim: usize,
        coresolution: Vec<Vec<usize>>,
        outcome: Outcome,
    },
    NotTilting {
        axiom: String,
        detail: String,
        outcome: Outcome,
    },
    Cohomology {
        object: String,
        module: ModuleRecord,
        label: CohomologyLabel,
        dim_vectors: Vec<Vec<usize>>,
        outcome: Outcome,
    },
    Classify {
        object: String,
        module: ModuleRecord,
        label: CohomologyLabel,
        classes: Vec<ClassVerdict>,
        outcome: Outcome,
    },
    Filtration {
        record: FiltrationRecord,
        outcome: Outcome,
    },
    Sweep {
        dim_cap: usize,
        rows: Vec<SweepRow>,
        outcome: Outcome,
    },
    Pair {
        report: PairReport,
        outcome: Outcome,
    },
    Heart {
        report: HeartReport,
        outcome: Outcome,
    },
    Diagram {
        report: DiagramReport,
        outcome: Outcome,
    },
    Mirror {
        table: MirrorTable,
        outcome: Outcome,
    },
    Lemma {
        report: LemmaReport,
        outcome: Outcome,
    },
}

impl Entry {
    pub fn outcome(&self) -> Outcome {
        match self {
            Entry::Tilting { outcome, .. }
            | Entry::NotTilting { outcome, .. }
            | Entry::Cohomology { outcome, .. }
            | Entry::Classify { outcome, .. }
            | Entry::Filtration { outcome, .. }
            | Entry::Sweep { outcome, .. }
            | Entry::Pair { outcome, .. }
            | Entry::Heart { outcome, .. }
            | Entry::Diagram { outcome, .. }
            | Entry::Mirror { outcome, .. }
            | Entry::Lemma { outcome, .. } => *outcome,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Entry::Tilting { .. } => "tilting",
            Entry::NotTilting { .. } => "not-tilting",
            Entry::Cohomology { .. } => "cohomology",
            Entry::Classify { .. } => "classify",
            Entry::Filtration { .. } => "filtration",
            Entry::Sweep { .. } => "sweep",
            Entry::Pair { .. } => "pair",
            Entry::Heart { .. } => "heart",
            Entry::Diagram { .. } => "diagram",
            Entry::Mirror { .. } => "mirror",
            Entry::Lemma { .. } => "lemma",
        }
    }
}

pub fn tally(results: &[Entry]) -> (Counts, Status) {
    let mut c = Counts::default();
    for e in results {
        match e.outcome() {
            Outcome::Pass => c.pass += 1,
            Outcome::Fail => c.fail += 1,
            Outcome::Unknown => c.unknown += 1,
        }
    }
    let status = if c.fail > 0 {
        Status::Failures
    } else if c.unknown > 0 {
        Status::Unknown
    } else {
        Status::Ok
    };
    (c, status)
}

/// Dimension vectors of the cohomology modules of a complex, degree by degree.
pub(crate) fn module_dims(ms: &[Module]) -> Vec<Vec<usize>> {
    ms.iter().map(|m| m.dims().to_vec()).collect()
}

fn label_string(l: &CohomologyLabel) -> String {
    let parts: Vec<String> = l
        .dims
        .iter()
        .enumerate()
        .map(|(i, d)| format!("{}^{}={d}", l.functor, l.low + i as i32))
        .collect();
    parts.join(" ")
}

/// The key memberships in one line: where the cohomology sits, then the two
/// extreme vanishing classes.
pub fn classify_line(label: &CohomologyLabel, classes: &[ClassVerdict]) -> String {
    let psi = label.functor == "psi";
    let conc = classes.iter().find(|c| matches!(c.class, Class::X(_) | Class::Y(_)) && c.verdict == Verdict::Yes);
    let top = label.low + label.dims.len() as i32 - 1;
    let (lo, hi) = if psi { (label.low, 0) } else { (0, top) };
    let pick = |i: i32| {
        let cls = if psi { Class::C(i) } else { Class::B(i) };
        classes.iter().find(|c| c.class == cls).map(|c| format!("{cls}: {}", c.verdict))
    };
    let mut parts = Vec::new();
    match conc {
        Some(c) => parts.push(format!("{}: yes", c.class)),
        None => parts.push(format!("{}: none", if psi { "Y" } else { "X" })),
    }
    parts.extend(pick(lo));
    parts.extend(pick(hi));
    parts.join("; ")
}

fn tick(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::Unknown => "unknown",
    }
}

fn basis_string(b: Basis) -> String {
    match b {
        Basis::Exact => "exact".into(),
        Basis::Bounded { bound } => format!("bounded at dim {bound}"),
    }
}

impl Report {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let c = &self.command;
        let _ = writeln!(s, "{} {} {}", c.name, c.args.join(" "), c.workspace);
        for e in &self.results {
            render_entry(&mut s, e);
        }
        let n = &self.counts;
        let _ = writeln!(
            s,
            "status: {:?}, {} pass, {} fail, {} unknown ({} ms; enum cap {}, perp bound {}, res cap {})",
            self.status, n.pass, n.fail, n.unknown, self.elapsed_ms, self.caps.enum_cap, self.caps.perp_bound, self.caps.res_cap
        );
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    /// Writes the JSON form to `path` through a temporary file and a rename.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let name = path.file_name().ok_or_else(|| Error::Io(format!("{}: not a file path", path.display())))?;
        let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
        std::fs::write(&tmp, self.to_json()).map_err(io)?;
        std::fs::rename(&tmp, path).map_err(|e| {
            let _ = std::fs::remove_file(&tmp);
            io(e)
        })
    }
}

fn render_entry(s: &mut String, e: &Entry) {
    let o = tick(e.outcome());
    match e {
        Entry::Tilting { summands, n, gldim, t_dims, end_dim, coresolution, .. } => {
            let _ = writeln!(s, "[{o}] T = {} is {n}-tilting", summands.join(" + "));
            let _ = writeln!(s, "  dim T = {}, gldim = {gldim}, dim End(T) = {end_dim}", dims_string(t_dims));
            let terms: Vec<String> = coresolution.iter().map(|d| dims_string(d)).collect();
            let _ = writeln!(s, "  coresolution of the regular module: {}", terms.join(" -> "));
        }
        Entry::NotTilting { axiom, detail, .. } => {
            let _ = writeln!(s, "[{o}] not tilting: {axiom}: {detail}");
        }
        Entry::Cohomology { object, label, dim_vectors, .. } => {
            let _ = writeln!(s, "[{o}] {object}: {}", label_string(label));
            for (i, d) in dim_vectors.iter().enumerate() {
                let _ = writeln!(s, "  {}^{}: {}", label.functor, label.low + i as i32, dims_string(d));
            }
        }
        Entry::Classify { object, label, classes, module, .. } => {
            let _ = writeln!(s, "[{o}] {object} {}: {}", dims_string(&module.dims), label_string(label));
            let _ = writeln!(s, "{}", classify_line(label, classes));
            let all: Vec<String> = classes.iter().map(|c| format!("{}: {}", c.class, c.verdict)).collect();
            let _ = writeln!(s, "  {}", all.join("; "));
        }
        Entry::Filtration { record, .. } => {
            let _ = writeln!(s, "[{o}] {} filtration of {} {}", record.kind, record.object, dims_string(&record.module.dims));
            let steps: Vec<String> = record.steps.iter().map(|st| dims_string(&st.dims)).collect();
            let _ = writeln!(s, "  steps: {}", steps.join(" ⊆ "));
            for (i, f) in record.factors.iter().enumerate() {
                let _ = writeln!(s, "  factor {}: {} in {}: {} ({})", i + 1, dims_string(&f.dims), f.label, f.verdict, basis_string(f.basis));
            }
            if !record.rounds.is_empty() {
                let ds: Vec<String> = record.rounds.iter().map(|r| format!("{}->{}", r.d_before, r.d_middle)).collect();
                let _ = writeln!(s, "  rounds (d): {}", ds.join(", "));
            }
            for n in &record.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        Entry::Sweep { dim_cap, rows, .. } => {
            let bad: Vec<&SweepRow> = rows.iter().filter(|r| r.outcome != Outcome::Pass).collect();
            let _ = writeln!(s, "[{o}] sweep to dim {dim_cap}: {} objects, {} not passing", rows.len(), bad.len());
            for r in bad {
                let _ = writeln!(s, "  {} {} over {}: {}", r.object, dims_string(&r.dims), r.side, tick(r.outcome));
            }
        }
        Entry::Pair { report, .. } => {
            let _ = writeln!(
                s,
                "[{o}] torsion pair {}: {} objects, {} torsion, {} free, {} hom pairs, {} unknown",
                report.pair,
                report.objects,
                report.torsion_members,
                report.free_members,
                report.hom_pairs_checked,
                report.unknown.len()
            );
            for f in report.hom_violations.iter().chain(&report.decomposition_failures).chain(&report.closure_failures) {
                let _ = writeln!(s, "  {f}");
            }
        }
        Entry::Heart { report, .. } => {
            let _ = writeln!(
                s,
                "[{o}] heart {}: {} of {} samples are members, {} unknown, {} axiom pairs checked",
                report.heart,
                report.members.len(),
                report.samples,
                report.unknown.len(),
                report.axiom_pairs
            );
            for f in report.image_failures.iter().chain(&report.axiom_violations) {
                let _ = writeln!(s, "  {f}");
            }
        }
        Entry::Diagram { report, .. } => {
            let _ = writeln!(
                s,
                "[{o}] tilt diagram: {} -> {}; {} + {} rows, {} failures, {} unknown ({})",
                report.left_tilt,
                report.right_tilt,
                report.left_rows.len(),
                report.rows.len(),
                report.failures,
                report.unknown,
                basis_string(report.weakest)
            );
        }
        Entry::Mirror { table, .. } => {
            let _ = writeln!(s, "[{o}] mirror table (observation): {} rows", table.rows.len());
            for r in &table.rows {
                let _ = writeln!(s, "  {}", serde_json::to_string(r).unwrap_or_default());
            }
        }
        Entry::Lemma { report, .. } => {
            let _ = writeln!(
                s,
                "[{o}] {}: {}: {} pass, {} fail, {} unknown ({})",
                report.id,
                report.statement,
                report.passes,
                report.failures,
                report.unknown,
                basis_string(report.weakest)
            );
            for r in report.objects.iter().filter(|r| r.outcome != Outcome::Pass) {
                let _ = writeln!(s, "  {}: {} {}", r.object, tick(r.outcome), r.detail);
            }
        }
    }
}

/// Rows of a matrix record as scalars over `f`, for rebuilding subspaces.
pub(crate) fn parse_rows(f: crate::linalg::Field, cols: usize, rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in ambient dimension {cols}", r.len())));
            }
            r.iter().map(|x| f.parse_scalar(x)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(f, cols, &parsed))
}

/// Process exit status for a finished run.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURES: i32 = 1;
    pub const UNKNOWN: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const CAP: i32 = 4;
    pub const VERIFY: i32 = 5;
    pub const INTERNAL: i32 = 6;
}

impl Report {
    pub fn exit_code(&self, allow_unknown: bool) -> i32 {
        match self.status {
            Status::Failures => exit::FAILURES,
            Status::Unknown if !allow_unknown => exit::UNKNOWN,
            _ => exit::OK,
        }
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) => exit::CAP,
        Error::Io(_) | Error::Internal(_) => exit::INTERNAL,
        _ => exit::INPUT,
    }
}
