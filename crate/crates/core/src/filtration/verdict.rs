//! Three-valued answers with the certificate that backs them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tilting::CohomologyLabel;

use super::cert::SesCert;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Whether a verdict is final or only holds for objects up to a dimension bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "basis")]
pub enum Basis {
    Exact,
    Bounded { bound: usize },
}

impl Basis {
    /// The weaker of two bases.
    pub fn weakest(self, other: Basis) -> Basis {
        match (self, other) {
            (Basis::Exact, b) | (b, Basis::Exact) => b,
            (Basis::Bounded { bound: a }, Basis::Bounded { bound: b }) => Basis::Bounded { bound: a.min(b) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub verdict: Verdict,
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<CohomologyLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SesCert>,
    /// Dimension vectors of a witnessing chain of submodules, bottom to top.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<usize>>>,
}

impl Answer {
    pub fn new(verdict: Verdict, basis: Basis) -> Answer {
        Answer { verdict, basis, note: String::new(), labels: Vec::new(), sequence: None, chain: None }
    }

    pub fn exact(yes: bool) -> Answer {
        Answer::new(if yes { Verdict::Yes } else { Verdict::No }, Basis::Exact)
    }

    pub fn unknown(bound: usize) -> Answer {
        Answer::new(Verdict::Unknown, Basis::Bounded { bound })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Answer {
        self.note = note.into();
        self
    }

    pub fn with_label(mut self, l: CohomologyLabel) -> Answer {
        self.labels.push(l);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }

    pub fn is_unknown(&self) -> bool {
        self.verdict == Verdict::Unknown
    }

    /// Three-valued conjunction; the basis is the weaker one unless a `No` decides.
    pub fn and(self, other: Answer) -> Answer {
        match (self.verdict, other.verdict) {
            (Verdict::No, _) if self.basis == Basis::Exact => self,
            (_, Verdict::No) if other.basis == Basis::Exact => other,
            (Verdict::Yes, Verdict::Yes) => {
                let mut a = self;
                a.basis = a.basis.weakest(other.basis);
                a.labels.extend(other.labels);
                if a.note.is_empty() {
                    a.note = other.note;
                }
                a
            }
            (Verdict::Unknown, _) => self,
            _ => other,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis {
            Basis::Exact => write!(f, "{}", self.verdict),
            Basis::Bounded { bound } => write!(f, "{} (dim <= {bound})", self.verdict),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_is_three_valued() {
        let y = Answer::exact(true);
        let n = Answer::exact(false);
        let u = Answer::unknown(6);
        assert!(y.clone().and(n.clone()).is_no());
        assert!(u.clone().and(n).is_no());
        assert!(y.clone().and(u.clone()).is_unknown());
        let b = Answer::new(Verdict::Yes, Basis::Bounded { bound: 4 });
        assert_eq!(y.and(b).basis, Basis::Bounded { bound: 4 });
        assert_eq!(u.to_string(), "unknown (dim <= 6)");
    }
}
