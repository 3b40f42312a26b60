//! Hardness gadgets: Multicolored Clique to EFAE and Independent Set to
//! REFAE/FEFAE, with maps between graph solutions and allocations.

mod graph;
mod indset;
mod mcq;

pub use graph::{ColoredGraph, Graph};
pub use indset::{extract_independent_set, is_to_refae, IsGadget};
pub use mcq::{clique_to_allocation, extract_clique, mcq_to_efae, ItemClass, McqGadget};
