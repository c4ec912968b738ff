use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Display;

use crate::error::{Error, Result};

/// Opaque state handle. Identifiers carry no meaning beyond identity; textual
/// output renames states canonically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub(crate) u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Partial deterministic finite automaton. Undefined transitions reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa<S> {
    num_states: u32,
    alphabet: BTreeSet<S>,
    transitions: Vec<BTreeMap<S, StateId>>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
}

impl<S: Ord + Clone + Display> Dfa<S> {
    /// A DFA with `num_states` states and no transitions, starting in the
    /// first state.
    pub fn new(num_states: usize, alphabet: impl IntoIterator<Item = S>) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::InvalidAutomaton("a DFA needs at least one state".into()));
        }
        Ok(Dfa {
            num_states: num_states as u32,
            alphabet: alphabet.into_iter().collect(),
            transitions: vec![BTreeMap::new(); num_states],
            initial: StateId(0),
            accepting: BTreeSet::new(),
        })
    }

    pub fn state(&self, index: usize) -> Result<StateId> {
        if index < self.num_states as usize {
            Ok(StateId(index as u32))
        } else {
            Err(Error::InvalidAutomaton(format!("state index {index} out of range")))
        }
    }

    pub fn set_initial(&mut self, state: StateId) -> Result<()> {
        self.check_state(state)?;
        self.initial = state;
        Ok(())
    }

    pub fn set_accepting(&mut self, state: StateId, accepting: bool) -> Result<()> {
        self.check_state(state)?;
        if accepting {
            self.accepting.insert(state);
        } else {
            self.accepting.remove(&state);
        }
        Ok(())
    }

    /// Adds `from --symbol--> to`. Redefining an existing transition with a
    /// different target is a determinism violation.
    pub fn add_transition(&mut self, from: StateId, symbol: S, to: StateId) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        if !self.alphabet.contains(&symbol) {
            return Err(Error::UnknownSymbol(symbol.to_string()));
        }
        match self.transitions[from.index()].get(&symbol) {
            Some(&existing) if existing != to => Err(Error::InvalidAutomaton(format!(
                "nondeterministic transition on `{symbol}`"
            ))),
            _ => {
                self.transitions[from.index()].insert(symbol, to);
                Ok(())
            }
        }
    }

    /// Extends the alphabet; existing transitions are untouched.
    pub fn extend_alphabet(&mut self, symbols: impl IntoIterator<Item = S>) {
        self.alphabet.extend(symbols);
    }

    fn check_state(&self, state: StateId) -> Result<()> {
        if state.0 < self.num_states {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(format!("unknown state {}", state.0)))
        }
    }

    pub fn size(&self) -> usize {
        self.num_states as usize
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states).map(StateId)
    }

    pub fn alphabet(&self) -> &BTreeSet<S> {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting.contains(&state)
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn step(&self, state: StateId, symbol: &S) -> Option<StateId> {
        self.transitions[state.index()].get(symbol).copied()
    }

    /// All transitions ordered by source state, then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &S, StateId)> {
        self.states()
            .flat_map(move |from| self.outgoing(from).map(move |(s, to)| (from, s, to)))
    }

    pub fn outgoing(&self, state: StateId) -> impl Iterator<Item = (&S, StateId)> {
        self.transitions[state.index()].iter().map(|(s, to)| (s, *to))
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(BTreeMap::len).sum()
    }

    /// Final state of `word`, or `None` when a transition is undefined.
    pub fn run(&self, word: &[S]) -> Result<Option<StateId>> {
        let mut state = self.initial;
        for symbol in word {
            if !self.alphabet.contains(symbol) {
                return Err(Error::UnknownSymbol(symbol.to_string()));
            }
            match self.step(state, symbol) {
                Some(next) => state = next,
                None => return Ok(None),
            }
        }
        Ok(Some(state))
    }

    pub fn accepts(&self, word: &[S]) -> Result<bool> {
        Ok(self.run(word)?.is_some_and(|q| self.is_accepting(q)))
    }

    /// States in breadth-first order from the initial state (outgoing edges
    /// by symbol order), followed by unreachable states in id order.
    pub fn canonical_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.size()];
        let mut order = Vec::with_capacity(self.size());
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial.index()] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for (_, to) in self.outgoing(q) {
                if !seen[to.index()] {
                    seen[to.index()] = true;
                    queue.push_back(to);
                }
            }
        }
        order.extend(self.states().filter(|q| !seen[q.index()]));
        order
    }
}
