//! Workspace files, command execution, JSON reports and their verification.

pub mod report;
pub mod run;
pub mod verify;
pub mod workspace;

pub use report::{error_exit_code, exit, Entry, Report, Status, SCHEMA};
pub use run::{run_command, Command, Options, COMMANDS};
pub use workspace::{parse_str, parse_workspace, Defaults, ModuleDecl, ModuleSource, Workspace, WorkspaceFile};
pub use verify::{verify_file, verify_report, VerifyOutcome};
