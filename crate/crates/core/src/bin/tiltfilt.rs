use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tiltcore::io::{error_exit_code, exit, parse_workspace, run_command, verify_file, Command, Options};
use tiltcore::Error;

/// Tilting modules, their derived functors and the filtrations they induce.
#[derive(Parser)]
#[command(name = "tiltfilt", version)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Args)]
struct Flags {
    /// Largest module dimension for submodule enumeration [workspace default: 8]
    #[arg(long, global = true)]
    enum_cap: Option<usize>,
    /// Largest dimension of the test objects behind a bounded verdict [workspace default: 6]
    #[arg(long, global = true)]
    perp_bound: Option<usize>,
    /// Longest resolution computed [workspace default: 10]
    #[arg(long, global = true)]
    res_cap: Option<usize>,
    /// Largest dimension of the sampled objects in the check commands
    #[arg(long, global = true, default_value_t = 4)]
    sample_dim: usize,
    /// Exit 0 even when some verdicts are only unknown at the bound
    #[arg(long, global = true)]
    allow_unknown: bool,
    /// Print the JSON report instead of the human summary
    #[arg(long, global = true)]
    json: bool,
    /// Where to write the JSON report [default: tiltfilt-<command>.json]
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Do not write the JSON report
    #[arg(long, global = true)]
    no_report: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the tilting axioms and present the endomorphism algebra
    ValidateTilting { workspace: PathBuf },
    /// Cohomology of Φ applied to a module over the base algebra
    Phi { workspace: PathBuf, module: String },
    /// Cohomology of Ψ applied to a module over A (prefix A:)
    Psi { workspace: PathBuf, module: String },
    /// Membership in the X, B (or Y, C) classes
    Classify { workspace: PathBuf, module: String },
    /// The iterated refinement (n = 2)
    FilterJms { workspace: PathBuf, module: String },
    /// The three-step filtration (n = 2)
    FilterThree { workspace: PathBuf, module: String },
    /// The filtration by torsion radicals
    FilterGeneral { workspace: PathBuf, module: String },
    /// Sampled torsion pair checks; with no names, every preset that applies
    CheckPairs { workspace: PathBuf, pairs: Vec<String> },
    /// Sampled heart checks, the tilt diagram and the mirror table
    CheckHearts { workspace: PathBuf },
    /// One class identity by id (L6, L7, L8, L9, L12, L15, L19, L20, L21, R5, Cor4) or all
    CheckLemma { workspace: PathBuf, id: String },
    /// Round trips and filtrations for every module up to a total dimension
    Sweep { workspace: PathBuf, dim_cap: usize },
    /// Re-check the certificates in a JSON report
    Verify { report: PathBuf },
}

impl Sub {
    fn split(self) -> (PathBuf, Vec<String>) {
        let one = |w: PathBuf, name: &str, x: String| (w, vec![name.to_string(), x]);
        match self {
            Sub::ValidateTilting { workspace } => (workspace, vec!["validate-tilting".into()]),
            Sub::Phi { workspace, module } => one(workspace, "phi", module),
            Sub::Psi { workspace, module } => one(workspace, "psi", module),
            Sub::Classify { workspace, module } => one(workspace, "classify", module),
            Sub::FilterJms { workspace, module } => one(workspace, "filter-jms", module),
            Sub::FilterThree { workspace, module } => one(workspace, "filter-three", module),
            Sub::FilterGeneral { workspace, module } => one(workspace, "filter-general", module),
            Sub::CheckPairs { workspace, pairs } => {
                let mut w = vec!["check-pairs".to_string()];
                w.extend(pairs);
                (workspace, w)
            }
            Sub::CheckHearts { workspace } => (workspace, vec!["check-hearts".into()]),
            Sub::CheckLemma { workspace, id } => one(workspace, "check-lemma", id),
            Sub::Sweep { workspace, dim_cap } => one(workspace, "sweep", dim_cap.to_string()),
            Sub::Verify { .. } => unreachable!("handled before dispatch"),
        }
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("tiltfilt: {e}");
    error_exit_code(e)
}

fn verify(path: &Path) -> i32 {
    match verify_file(path) {
        Ok(v) if v.passed() => {
            println!("verified {}: {} checks passed", path.display(), v.checked);
            exit::OK
        }
        Ok(v) => {
            for p in &v.problems {
                println!("FAIL {p}");
            }
            println!("{} of {} checks failed", v.problems.len(), v.checked);
            exit::VERIFY
        }
        Err(e) => fail(&e),
    }
}

fn run(cli: Cli) -> i32 {
    let f = cli.flags;
    if let Sub::Verify { report } = &cli.cmd {
        return verify(report);
    }
    let (workspace, words) = cli.cmd.split();
    let result = Command::parse(&words).and_then(|cmd| {
        let ws = parse_workspace(&workspace)?;
        let opts = Options { enum_cap: f.enum_cap, perp_bound: f.perp_bound, res_cap: f.res_cap, sample_dim: Some(f.sample_dim) };
        let report = run_command(&ws, &workspace.display().to_string(), &cmd, &opts)?;
        Ok((cmd, report))
    });
    let (cmd, report) = match result {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    if f.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    if !f.no_report {
        let path = f.report.unwrap_or_else(|| PathBuf::from(format!("tiltfilt-{}.json", cmd.name())));
        if let Err(e) = report.write_atomic(&path) {
            return fail(&e);
        }
    }
    report.exit_code(f.allow_unknown)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(exit::INPUT as u8),
            };
        }
    };
    ExitCode::from(run(cli) as u8)
}
