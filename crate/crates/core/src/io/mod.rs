//! Instance and allocation documents, graph text files, and the seeded
//! instance generator.

mod document;
mod gen;
mod graph_text;

pub use document::{
    canonicalize, parse_allocation, parse_instance, serialize_allocation, serialize_instance, AllocationDocument,
    InstanceDocument, QueryDocument,
};
pub use gen::{gen_colored_graph, gen_graph, gen_random, GenSpec, GenVariant};
pub use graph_text::{parse_colored_graph, parse_graph, write_colored_graph, write_graph};
