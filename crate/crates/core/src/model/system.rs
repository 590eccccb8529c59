use super::graph::{LabeledGameGraph, Player};
use super::props::{PropId, PropSet, SymbolTable};
use super::validate::Validate;
use crate::error::Result;

/// Input-driven nondeterministic system: the environment (tester) picks a
/// letter, the system picks one of the successors for it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SystemAutomaton {
    states: SymbolTable,
    alphabet: SymbolTable,
    props: SymbolTable,
    /// `delta[q][a]`: sorted successor states.
    delta: Vec<Vec<Vec<usize>>>,
    labels: Vec<PropSet>,
    initial: usize,
}

impl SystemAutomaton {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_prop(&mut self, name: &str) -> PropId {
        PropId(self.props.intern(name))
    }

    pub fn add_letter(&mut self, name: &str) -> usize {
        let id = self.alphabet.intern(name);
        for row in &mut self.delta {
            row.resize(self.alphabet.len(), Vec::new());
        }
        id
    }

    pub fn add_state(&mut self, name: &str, labels: PropSet) -> usize {
        let id = self.states.intern(name);
        if id == self.delta.len() {
            self.delta.push(vec![Vec::new(); self.alphabet.len()]);
            self.labels.push(labels);
        } else {
            self.labels[id] = labels;
        }
        id
    }

    pub fn add_labeled_state(&mut self, name: &str, props: &[&str]) -> usize {
        let labels = props.iter().map(|p| self.add_prop(p)).collect();
        self.add_state(name, labels)
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) {
        let succ = &mut self.delta[from][letter];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial = q;
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_props(&self) -> usize {
        self.props.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.delta[q][letter]
    }

    pub fn label(&self, q: usize) -> PropSet {
        self.labels[q]
    }

    pub fn state_name(&self, q: usize) -> &str {
        self.states.name(q)
    }

    pub fn letter_name(&self, a: usize) -> &str {
        self.alphabet.name(a)
    }

    pub fn prop_names(&self) -> &[String] {
        self.props.names()
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.states.get(name)
    }

    pub fn letter_id(&self, name: &str) -> Option<usize> {
        self.alphabet.get(name)
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.props.get(name).map(PropId)
    }

    /// Every state has exactly one successor per letter.
    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().flatten().all(|succ| succ.len() == 1)
    }
}

/// Compiles a system into its system-tester game.
///
/// States become player 1 vertices (ids `0..|Q|`); each pair `(q, a)` becomes
/// the player 2 vertex `|Q| + q * |Σ| + a`, labeled like `q`.
pub fn compile_system(sys: &SystemAutomaton) -> Result<LabeledGameGraph> {
    sys.validate().into_result()?;
    let (nq, ns) = (sys.num_states(), sys.num_letters());
    let mut game = LabeledGameGraph::new();
    for p in sys.prop_names() {
        game.add_prop(p);
    }
    for q in 0..nq {
        game.add_vertex(sys.state_name(q), Player::One, sys.label(q));
    }
    for q in 0..nq {
        for a in 0..ns {
            let mut name = format!("({},{})", sys.state_name(q), sys.letter_name(a));
            while game.vertex_id(&name).is_some() {
                name.push('\'');
            }
            let v = game.add_vertex(&name, Player::Two, sys.label(q));
            debug_assert_eq!(v, nq + q * ns + a);
        }
    }
    for q in 0..nq {
        for a in 0..ns {
            let choice = nq + q * ns + a;
            game.add_edge(q, choice);
            for &to in sys.successors(q, a) {
                game.add_edge(choice, to);
            }
        }
    }
    game.set_initial(sys.initial());
    Ok(game)
}
