//! Coverage problems on labeled graphs and labeled game graphs.
//!
//! A labeled graph attaches a set of atomic propositions (coverage goals) to
//! every vertex. The solvers here decide whether `m` distinct propositions can
//! be visited from the initial vertex, optionally within `k` steps, compute the
//! best achievable coverage, and return witnesses: a finite path for graphs, a
//! finite-memory tester strategy for games, and an end component certifying a
//! negative answer on controllably recurrent games.
//!
//! The [`reductions`] module builds instances from SAT, QBF, vertex cover and
//! Hamiltonian path; [`oracle`] holds exhaustive reference implementations used
//! to cross-check the solvers.

pub mod error;
pub mod game_cover;
pub mod generate;
pub mod graph_cover;
pub mod model;
pub mod oracle;
pub mod reductions;

pub use error::{Error, Result};
pub use game_cover::{EndComponent, GameAnswer, ProductGame, TesterStrategy};
pub use graph_cover::GraphCoverageAnswer;
pub use model::{
    compile_system, cover_of, game_to_graph, path_check, LabeledGameGraph, LabeledGraph, Path,
    Player, PropId, PropSet, SymbolTable, SystemAutomaton, Validate, ValidationReport, Violation,
};

/// Solver configuration shared by the graph and game solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solver {
    /// Largest proposition universe the product constructions accept.
    pub ap_cap: usize,
    /// Evaluate bounded games with the memoryless depth-first tree walk
    /// instead of the budget-indexed value table.
    pub low_memory: bool,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            ap_cap: model::DEFAULT_AP_CAP,
            low_memory: false,
        }
    }
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_ap_cap(mut self, cap: usize) -> Self {
        self.ap_cap = cap.min(model::MAX_PROPS);
        self
    }

    pub fn with_low_memory(mut self, low_memory: bool) -> Self {
        self.low_memory = low_memory;
        self
    }

    pub(crate) fn check_ap(&self, num_props: usize) -> Result<()> {
        if num_props > self.ap_cap {
            return Err(Error::ApCapExceeded {
                props: num_props,
                cap: self.ap_cap,
            });
        }
        Ok(())
    }

    pub(crate) fn check_m(&self, m: usize, num_props: usize) -> Result<()> {
        if m > num_props {
            return Err(Error::MOutOfRange { m, props: num_props });
        }
        Ok(())
    }
}
