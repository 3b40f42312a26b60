//! Integer-programming engine for REFAE and FEFAE, parameterized by the
//! number of recipients and open-item types, with its own exact
//! branch-and-bound feasibility solver.

mod encode;
mod model;
mod solver;

pub use encode::{
    build_ilp, solve_fefae_ilp, solve_fefae_ilp_with, solve_recipients_ilp, solve_refae_ilp, solve_refae_ilp_with,
    IlpOptions, RecipientIlp,
};
pub use model::{IlpModel, LinearConstraint, Relation, Variable};
pub use solver::{solve_ilp, IlpStatus, IlpVerdict, DEFAULT_NODE_BUDGET};
