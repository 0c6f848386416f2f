//! Membership tests for the classes cut out by `Φ` and the filtrations built from them.

pub mod cert;
pub mod descriptor;
pub mod engine;
pub mod filter;
pub mod verdict;

pub use cert::{MapRecord, ModuleRecord, SesCert};
pub use descriptor::ClassDescriptor;
pub use engine::{subquotient, Engine, EngineCaps, TorsionPart};
pub use filter::{Filtration, RoundRecord};
pub use verdict::{Answer, Basis, Verdict};
