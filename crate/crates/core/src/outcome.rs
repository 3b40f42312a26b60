use std::fmt;
use std::time::Duration;

use crate::model::Allocation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    ResourceLimit,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::ResourceLimit => "RESOURCE_LIMIT",
        })
    }
}

/// Search counters reported by every engine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Branches, enumerated assignments or branch-and-bound nodes.
    pub nodes: u64,
    /// Configuration states stored (DP) or models built (ILP).
    pub states: u64,
    pub elapsed: Duration,
}

/// Result of a decision engine. `witness` is present iff `answer` is YES.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub answer: Answer,
    pub witness: Option<Allocation>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn yes(witness: Allocation, stats: SolveStats) -> Self {
        SolveOutcome {
            answer: Answer::Yes,
            witness: Some(witness),
            stats,
        }
    }

    pub fn no(stats: SolveStats) -> Self {
        SolveOutcome {
            answer: Answer::No,
            witness: None,
            stats,
        }
    }

    pub fn resource_limit(stats: SolveStats) -> Self {
        SolveOutcome {
            answer: Answer::ResourceLimit,
            witness: None,
            stats,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}
