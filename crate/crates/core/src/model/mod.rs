//! Labeled graphs, labeled game graphs, input-driven systems and their
//! interchange formats.

mod dot;
mod format;
mod graph;
mod props;
mod system;
mod validate;

pub use dot::{game_to_dot, graph_to_dot};
pub use format::{
    parse_model, render_game, render_graph, render_system, Metadata, Model, ModelKind,
};
pub use graph::{cover_of, game_to_graph, path_check, LabeledGameGraph, LabeledGraph, Path, Player};
pub use props::{PropId, PropSet, SubsetsBySize, SymbolTable, DEFAULT_AP_CAP, MAX_PROPS};
pub use system::{compile_system, SystemAutomaton};
pub use validate::{Validate, ValidationReport, Violation};
