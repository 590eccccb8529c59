//! Instance generators from SAT, QBF, vertex cover and Hamiltonian path.
//!
//! Each gadget comes with the property relating its coverage answer to the
//! source problem, recorded in the instance metadata.

mod edge_list;
mod formula;
mod gadgets;

pub use edge_list::{Digraph, UndirectedGraph};
pub use formula::{
    parse_dimacs, parse_qdimacs, render_dimacs, render_qdimacs, CnfFormula, QbfFormula, Quantifier,
};
pub use gadgets::{hampath_to_bounded, qbf_to_game, sat_to_graph, vc_to_game, Gadget};
