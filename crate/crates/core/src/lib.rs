//! Exact solvers for extending a partial allocation of indivisible goods to
//! an envy-free one.
//!
//! The crate covers three problems over additive, non-negative integer
//! valuations:
//!
//! * **EFAE**: may any extension of the partial allocation be envy-free?
//! * **REFAE**: the same, with open items restricted to a given recipient set.
//! * **FEFAE**: the same, with at most `p` agents receiving open items.
//!
//! Engines: [`oracle`] (exhaustive ground truth), [`fpt`] (open items plus
//! agent types), [`dp`] (recipients plus agent types, unary values) and
//! [`ilp`] (recipients plus item types). [`relaxed`] builds EF1 extensions and
//! carries the EF1/EFX counterexamples; [`reductions`] generates hardness
//! gadgets; [`io`] handles documents, graph files and random instances;
//! [`engine`] dispatches by name and picks an engine automatically.

pub mod combinatorics;
pub mod dp;
pub mod engine;
pub mod error;
pub mod fairness;
pub mod fpt;
pub mod ilp;
pub mod io;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod outcome;
pub mod reductions;
pub mod relaxed;
pub mod types;

pub use dp::{solve_dp, solve_dp_with, DpConfig, DpTrace, Representative};
pub use engine::{run_engine, select_algorithm, Engine, EngineConfig, Selection};
pub use error::{Error, Result};
pub use fairness::{bundle_value, envy_pairs, is_ef1, is_efx, is_envy_free, Notion};
pub use model::{Allocation, Instance, Query, Value};
pub use oracle::{solve_bruteforce, solve_bruteforce_relaxed, OracleBudget};
pub use outcome::{Answer, SolveOutcome, SolveStats};
pub use relaxed::{extend_to_ef1, verify_catalog, CounterexampleCatalog};
pub use types::{compute_types, TypePartition};
