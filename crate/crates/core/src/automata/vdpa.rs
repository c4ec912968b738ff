use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::dfa::StateId;
use super::symbol::{Symbol, SymbolKind, VpaAlphabet};
use crate::error::{Error, Result};

/// Why a run ended the way it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictReason {
    Accepted,
    RejectedAtState,
    PopFromEmptyStack,
    NonEmptyStackAtEnd,
    UndefinedTransition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VdpaVerdict {
    pub accepted: bool,
    pub reason: VerdictReason,
}

impl VdpaVerdict {
    fn new(reason: VerdictReason) -> Self {
        VdpaVerdict {
            accepted: reason == VerdictReason::Accepted,
            reason,
        }
    }
}

/// One labelled edge of a [`Vdpa`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VdpaEdge {
    Internal(Symbol),
    /// Pushes the symbol itself.
    Call(Symbol),
    /// Pops `top`, which must be on top of the stack.
    Return { ret: Symbol, top: Symbol },
}

impl VdpaEdge {
    fn sort_key(&self) -> (&Symbol, Option<&Symbol>) {
        match self {
            VdpaEdge::Internal(s) | VdpaEdge::Call(s) => (s, None),
            VdpaEdge::Return { ret, top } => (ret, Some(top)),
        }
    }
}

/// Visibly deterministic pushdown automaton.
///
/// The stack alphabet is the call alphabet: every call pushes itself, every
/// return pops. The bottom-of-stack marker is the empty stack. A word is
/// accepted when it ends in an accepting state with an empty stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vdpa {
    num_states: u32,
    alphabet: VpaAlphabet,
    internal: BTreeMap<(StateId, Symbol), StateId>,
    call: BTreeMap<(StateId, Symbol), StateId>,
    ret: BTreeMap<(StateId, Symbol, Symbol), StateId>,
    initial: StateId,
    accepting: BTreeSet<StateId>,
}

impl Vdpa {
    pub fn new(num_states: usize, alphabet: VpaAlphabet) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::InvalidAutomaton("a VDPA needs at least one state".into()));
        }
        Ok(Vdpa {
            num_states: num_states as u32,
            alphabet,
            internal: BTreeMap::new(),
            call: BTreeMap::new(),
            ret: BTreeMap::new(),
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

    fn check_state(&self, state: StateId) -> Result<()> {
        if state.0 < self.num_states {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(format!("unknown state {}", state.0)))
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

    fn expect_kind(&self, symbol: &Symbol, kind: SymbolKind) -> Result<()> {
        match self.alphabet.kind(symbol) {
            Some(k) if k == kind => Ok(()),
            Some(k) => Err(Error::InvalidAutomaton(format!(
                "symbol `{symbol}` is a {k:?} symbol, expected {kind:?}"
            ))),
            None => Err(Error::UnknownSymbol(symbol.to_string())),
        }
    }

    fn insert<K: Ord>(
        map: &mut BTreeMap<K, StateId>,
        key: K,
        to: StateId,
        what: impl FnOnce() -> String,
    ) -> Result<()> {
        match map.get(&key) {
            Some(&prev) if prev != to => Err(Error::InvalidAutomaton(format!(
                "nondeterministic {} transition",
                what()
            ))),
            _ => {
                map.insert(key, to);
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, from: StateId, edge: VdpaEdge, to: StateId) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        match edge {
            VdpaEdge::Internal(s) => {
                self.expect_kind(&s, SymbolKind::Internal)?;
                Self::insert(&mut self.internal, (from, s.clone()), to, || format!("internal `{s}`"))
            }
            VdpaEdge::Call(s) => {
                self.expect_kind(&s, SymbolKind::Call)?;
                Self::insert(&mut self.call, (from, s.clone()), to, || format!("call `{s}`"))
            }
            VdpaEdge::Return { ret, top } => {
                self.expect_kind(&ret, SymbolKind::Return)?;
                self.expect_kind(&top, SymbolKind::Call)?;
                Self::insert(&mut self.ret, (from, ret.clone(), top.clone()), to, || {
                    format!("return `{ret}` over `{top}`")
                })
            }
        }
    }

    pub fn add_internal(&mut self, from: StateId, symbol: Symbol, to: StateId) -> Result<()> {
        self.add_edge(from, VdpaEdge::Internal(symbol), to)
    }

    pub fn add_call(&mut self, from: StateId, symbol: Symbol, to: StateId) -> Result<()> {
        self.add_edge(from, VdpaEdge::Call(symbol), to)
    }

    pub fn add_return(&mut self, from: StateId, ret: Symbol, top: Symbol, to: StateId) -> Result<()> {
        self.add_edge(from, VdpaEdge::Return { ret, top }, to)
    }

    pub fn size(&self) -> usize {
        self.num_states as usize
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states).map(StateId)
    }

    pub fn alphabet(&self) -> &VpaAlphabet {
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

    pub fn num_edges(&self) -> usize {
        self.internal.len() + self.call.len() + self.ret.len()
    }

    /// All edges as `(from, edge, to)`, sorted by source, then symbol, then
    /// popped call symbol.
    pub fn edges(&self) -> Vec<(StateId, VdpaEdge, StateId)> {
        let mut out: Vec<_> = self
            .internal
            .iter()
            .map(|((q, s), t)| (*q, VdpaEdge::Internal(s.clone()), *t))
            .chain(self.call.iter().map(|((q, s), t)| (*q, VdpaEdge::Call(s.clone()), *t)))
            .chain(self.ret.iter().map(|((q, r, c), t)| {
                (*q, VdpaEdge::Return { ret: r.clone(), top: c.clone() }, *t)
            }))
            .collect();
        out.sort_by(|a, b| (a.0, a.1.sort_key()).cmp(&(b.0, b.1.sort_key())));
        out
    }

    pub fn internal_step(&self, state: StateId, symbol: &Symbol) -> Option<StateId> {
        self.internal.get(&(state, symbol.clone())).copied()
    }

    pub fn call_step(&self, state: StateId, symbol: &Symbol) -> Option<StateId> {
        self.call.get(&(state, symbol.clone())).copied()
    }

    pub fn return_step(&self, state: StateId, ret: &Symbol, top: &Symbol) -> Option<StateId> {
        self.ret.get(&(state, ret.clone(), top.clone())).copied()
    }

    /// One step from configuration `(state, stack)`. `Ok(None)` carries the
    /// reason the run got stuck.
    pub(crate) fn step_config(
        &self,
        state: StateId,
        stack: &mut Vec<Symbol>,
        symbol: &Symbol,
    ) -> Result<std::result::Result<StateId, VerdictReason>> {
        let next = match self.alphabet.classify(symbol)? {
            SymbolKind::Internal => self.internal_step(state, symbol),
            SymbolKind::Call => {
                let next = self.call_step(state, symbol);
                stack.push(symbol.clone());
                next
            }
            SymbolKind::Return => {
                let Some(top) = stack.pop() else {
                    return Ok(Err(VerdictReason::PopFromEmptyStack));
                };
                self.return_step(state, symbol, &top)
            }
        };
        Ok(next.ok_or(VerdictReason::UndefinedTransition))
    }

    /// Simulates `word` with an explicit stack.
    pub fn run(&self, word: &[Symbol]) -> Result<VdpaVerdict> {
        // Validate the whole word first so a foreign symbol after a stuck
        // prefix is still reported.
        for s in word {
            self.alphabet.classify(s)?;
        }
        let mut state = self.initial;
        let mut stack = Vec::new();
        for symbol in word {
            match self.step_config(state, &mut stack, symbol)? {
                Ok(next) => state = next,
                Err(reason) => return Ok(VdpaVerdict::new(reason)),
            }
        }
        let reason = if !stack.is_empty() {
            VerdictReason::NonEmptyStackAtEnd
        } else if self.is_accepting(state) {
            VerdictReason::Accepted
        } else {
            VerdictReason::RejectedAtState
        };
        Ok(VdpaVerdict::new(reason))
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        Ok(self.run(word)?.accepted)
    }

    /// Breadth-first state order from the initial state, unreachable states
    /// appended in id order.
    pub fn canonical_order(&self) -> Vec<StateId> {
        let edges = self.edges();
        let mut seen = vec![false; self.size()];
        let mut order = Vec::with_capacity(self.size());
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial.index()] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for (_, _, to) in edges.iter().filter(|(from, _, _)| *from == q) {
                if !seen[to.index()] {
                    seen[to.index()] = true;
                    queue.push_back(*to);
                }
            }
        }
        order.extend(self.states().filter(|q| !seen[q.index()]));
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::symbol::word;
    use crate::bench::builtin::{arithmetic_expr, balanced_parens};

    #[test]
    fn arithmetic_accepts_listed_words() {
        let m = arithmetic_expr();
        for w in ["1", "( 1 )", "1 + ( 1 )", "( 1 ) + ( ( 1 ) )"] {
            assert_eq!(m.run(&word(w)).unwrap().reason, VerdictReason::Accepted, "{w}");
        }
    }

    #[test]
    fn arithmetic_rejects_listed_words() {
        let m = arithmetic_expr();
        for w in ["( )", ") (", "( 1 ) + ( )", "( ( ) )"] {
            assert!(!m.accepts(&word(w)).unwrap(), "{w}");
        }
        assert_eq!(m.run(&word("( )")).unwrap().reason, VerdictReason::UndefinedTransition);
    }

    #[test]
    fn pop_from_empty_stack() {
        let m = balanced_parens();
        let v = m.run(&word(") (")).unwrap();
        assert_eq!(v.reason, VerdictReason::PopFromEmptyStack);
        assert!(!v.accepted);
    }

    #[test]
    fn leftover_stack_rejects() {
        let m = balanced_parens();
        assert_eq!(m.run(&word("( ( )")).unwrap().reason, VerdictReason::NonEmptyStackAtEnd);
    }

    #[test]
    fn empty_word_follows_initial_label() {
        let m = balanced_parens();
        assert_eq!(m.run(&[]).unwrap().reason, VerdictReason::RejectedAtState);
        let mut m2 = m.clone();
        m2.set_accepting(m2.initial(), true).unwrap();
        assert!(m2.accepts(&[]).unwrap());
    }

    #[test]
    fn foreign_symbol_is_an_error() {
        let m = balanced_parens();
        assert!(m.run(&word("( x )")).is_err());
        assert!(m.run(&word(") x")).is_err());
    }

    #[test]
    fn edge_kinds_are_checked() {
        let mut m = balanced_parens();
        let q = m.initial();
        let open = Symbol::new("(").unwrap();
        assert!(m.add_internal(q, open.clone(), q).is_err());
        assert!(m.add_return(q, open.clone(), open, q).is_err());
    }

    #[test]
    fn verdict_flag_matches_reason() {
        let m = balanced_parens();
        for w in ["( )", "( ( ) )", ") (", "( )  ( )", "(", ""] {
            let v = m.run(&word(w)).unwrap();
            assert_eq!(v.accepted, v.reason == VerdictReason::Accepted);
        }
    }
}
