//! The naive `n^k` enumerator every other engine is tested against.
//!
//! No pruning, no symmetry breaking. Open items are enumerated as an
//! odometer with the first open item as the most significant digit and
//! candidate agents in index order, so the first witness found is the
//! lexicographically least one.

use std::time::Instant;

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::fairness::{BundleView, Notion};
use crate::model::{Allocation, Instance, Query};
use crate::outcome::{SolveOutcome, SolveStats};

/// Cap on the number of complete assignments the oracle evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    max_assignments: u64,
}

impl OracleBudget {
    pub const DEFAULT_MAX: u64 = 10_000_000;

    pub fn new(max_assignments: u64) -> Result<Self> {
        if max_assignments == 0 {
            return Err(Error::BadParams("oracle budget must be at least 1".into()));
        }
        Ok(OracleBudget { max_assignments })
    }

    pub fn max_assignments(&self) -> u64 {
        self.max_assignments
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_assignments: Self::DEFAULT_MAX,
        }
    }
}

/// Decides the instance's query by exhaustive enumeration.
pub fn solve_bruteforce(inst: &Instance, budget: OracleBudget) -> SolveOutcome {
    solve_bruteforce_relaxed(inst, Notion::Ef, budget)
}

/// Same enumeration with `notion` as the acceptance predicate.
pub fn solve_bruteforce_relaxed(inst: &Instance, notion: Notion, budget: OracleBudget) -> SolveOutcome {
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let open = inst.open_items();
    let mut owners: Vec<usize> = inst.assigned().iter().map(|o| o.unwrap_or(0)).collect();

    let candidate_sets: Box<dyn Iterator<Item = Vec<usize>>> = match inst.query() {
        Query::Efae => Box::new(std::iter::once((0..inst.n()).collect())),
        Query::Refae { recipients } => Box::new(std::iter::once(recipients.clone())),
        Query::Fefae { p } => Box::new(combinations(inst.n(), *p)),
    };

    for set in candidate_sets {
        if set.is_empty() && !open.is_empty() {
            continue;
        }
        let mut digits = vec![0usize; open.len()];
        loop {
            if stats.nodes >= budget.max_assignments {
                stats.elapsed = start.elapsed();
                return SolveOutcome::resource_limit(stats);
            }
            stats.nodes += 1;
            for (&item, &d) in open.iter().zip(&digits) {
                owners[item] = set[d];
            }
            if BundleView::new(inst, &owners).satisfies(notion) {
                stats.elapsed = start.elapsed();
                return SolveOutcome::yes(Allocation::new(owners), stats);
            }
            if !advance(&mut digits, set.len()) {
                break;
            }
        }
    }
    stats.elapsed = start.elapsed();
    SolveOutcome::no(stats)
}

/// Odometer step; the last digit is least significant. Returns false after
/// the final assignment.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
