//! Torsion pairs, hearts and their tilts, and sampled checks of the class
//! identities relating them.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod diagram;
pub mod heart;
pub mod pairs;
pub mod samples;
pub mod suite;

pub use diagram::{check_tilt_diagram, DiagramReport, DiagramRow, LeftRow};
pub use heart::{check_heart, heart_membership, HeartDescriptor, HeartReport, HeartVerdict};
pub use pairs::{perp_membership, torsion_decompose, verify_torsion_pair, Decomposition, PairReport, Side, TorsionPairSpec};
pub use samples::{dims_string, module_sweep, two_term_complexes, ComplexSample, Sample};
pub use suite::{check_lemma, mirror_table, LemmaId, LemmaReport, MirrorRow, MirrorTable, ObjectResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

impl Outcome {
    pub fn of(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// Fail dominates Unknown, which dominates Pass.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Unknown, _) | (_, Outcome::Unknown) => Outcome::Unknown,
            _ => Outcome::Pass,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Unknown => "unknown",
        })
    }
}
