//! Classification over plain input words and bounded language comparison.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::hash::Hash;

use super::dfa::{Dfa, StateId};
use super::symbol::Symbol;
use super::vdpa::Vdpa;
use crate::error::{Error, Result};

/// A word classifier that can be explored one symbol at a time.
///
/// `advance` returns `None` once the run can never accept again (undefined
/// transition, pop from an empty stack, or a foreign symbol).
pub trait Acceptor {
    type Config: Clone + Eq + Hash;

    fn input_symbols(&self) -> BTreeSet<Symbol>;
    fn start(&self) -> Self::Config;
    fn advance(&self, config: &Self::Config, symbol: &Symbol) -> Option<Self::Config>;
    fn is_final(&self, config: &Self::Config) -> bool;

    /// Total classification: symbols outside the alphabet reject.
    fn classify(&self, word: &[Symbol]) -> bool {
        let mut config = self.start();
        for s in word {
            match self.advance(&config, s) {
                Some(next) => config = next,
                None => return false,
            }
        }
        self.is_final(&config)
    }

    /// Number of control states, used as the model size in reports.
    fn num_states(&self) -> usize;
}

impl Acceptor for Dfa<Symbol> {
    type Config = StateId;

    fn input_symbols(&self) -> BTreeSet<Symbol> {
        self.alphabet().clone()
    }

    fn start(&self) -> StateId {
        self.initial()
    }

    fn advance(&self, config: &StateId, symbol: &Symbol) -> Option<StateId> {
        self.step(*config, symbol)
    }

    fn is_final(&self, config: &StateId) -> bool {
        self.is_accepting(*config)
    }

    fn num_states(&self) -> usize {
        self.size()
    }
}

impl Acceptor for Vdpa {
    type Config = (StateId, Vec<Symbol>);

    fn input_symbols(&self) -> BTreeSet<Symbol> {
        self.alphabet().symbols()
    }

    fn start(&self) -> Self::Config {
        (self.initial(), Vec::new())
    }

    fn advance(&self, (state, stack): &Self::Config, symbol: &Symbol) -> Option<Self::Config> {
        let mut stack = stack.clone();
        match self.step_config(*state, &mut stack, symbol) {
            Ok(Ok(next)) => Some((next, stack)),
            _ => None,
        }
    }

    fn is_final(&self, (state, stack): &Self::Config) -> bool {
        stack.is_empty() && self.is_accepting(*state)
    }

    fn num_states(&self) -> usize {
        self.size()
    }
}

impl<A: Acceptor + ?Sized> Acceptor for &A {
    type Config = A::Config;

    fn input_symbols(&self) -> BTreeSet<Symbol> {
        (**self).input_symbols()
    }
    fn start(&self) -> Self::Config {
        (**self).start()
    }
    fn advance(&self, config: &Self::Config, symbol: &Symbol) -> Option<Self::Config> {
        (**self).advance(config, symbol)
    }
    fn is_final(&self, config: &Self::Config) -> bool {
        (**self).is_final(config)
    }
    fn num_states(&self) -> usize {
        (**self).num_states()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// Shortest, then lexicographically smallest, word classified differently.
    Counterexample(Vec<Symbol>),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

/// Compares `a` and `b` on every word of length at most `max_len` over their
/// common alphabet.
///
/// Explores the product of both configuration spaces in shortlex order and
/// skips configurations already reached by a smaller word, so the first
/// disagreement found is the shortlex-minimal counterexample without
/// enumerating every word.
pub fn bounded_equivalence<A: Acceptor, B: Acceptor>(
    a: &A,
    b: &B,
    max_len: usize,
) -> Result<Equivalence> {
    let alphabet = a.input_symbols();
    let other = b.input_symbols();
    if alphabet != other {
        let only_a: Vec<_> = alphabet.difference(&other).map(Symbol::to_string).collect();
        let only_b: Vec<_> = other.difference(&alphabet).map(Symbol::to_string).collect();
        return Err(Error::AlphabetMismatch(format!(
            "only in first: {only_a:?}, only in second: {only_b:?}"
        )));
    }
    let alphabet: Vec<Symbol> = alphabet.into_iter().collect();

    type Pair<A, B> = (Option<<A as Acceptor>::Config>, Option<<B as Acceptor>::Config>);
    let verdict = |c: &Pair<A, B>| {
        (
            c.0.as_ref().is_some_and(|x| a.is_final(x)),
            c.1.as_ref().is_some_and(|x| b.is_final(x)),
        )
    };

    let start: Pair<A, B> = (Some(a.start()), Some(b.start()));
    let mut seen: HashSet<Pair<A, B>> = HashSet::from([start.clone()]);
    let mut queue: VecDeque<(Vec<Symbol>, Pair<A, B>)> = VecDeque::from([(Vec::new(), start)]);

    while let Some((word, config)) = queue.pop_front() {
        let (va, vb) = verdict(&config);
        if va != vb {
            return Ok(Equivalence::Counterexample(word));
        }
        if word.len() == max_len {
            continue;
        }
        for s in &alphabet {
            let next: Pair<A, B> = (
                config.0.as_ref().and_then(|x| a.advance(x, s)),
                config.1.as_ref().and_then(|x| b.advance(x, s)),
            );
            if next.0.is_none() && next.1.is_none() {
                continue;
            }
            if seen.insert(next.clone()) {
                let mut w = word.clone();
                w.push(s.clone());
                queue.push_back((w, next));
            }
        }
    }
    Ok(Equivalence::Equivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::symbol::word;
    use crate::bench::builtin::{balanced_parens, dyck1};

    /// Enumerates every word up to `max_len` in shortlex order.
    fn brute_force<A: Acceptor, B: Acceptor>(a: &A, b: &B, max_len: usize) -> Option<Vec<Symbol>> {
        let alphabet: Vec<Symbol> = a.input_symbols().into_iter().collect();
        let mut layer = vec![Vec::new()];
        for _ in 0..=max_len {
            for w in &layer {
                if a.classify(w) != b.classify(w) {
                    return Some(w.clone());
                }
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |s| {
                        let mut w = w.clone();
                        w.push(s.clone());
                        w
                    })
                })
                .collect();
        }
        None
    }

    #[test]
    fn reflexive() {
        let m = balanced_parens();
        assert_eq!(bounded_equivalence(&m, &m, 8).unwrap(), Equivalence::Equivalent);
    }

    #[test]
    fn finds_shortlex_minimal_counterexample() {
        let a = balanced_parens();
        let b = dyck1();
        let found = bounded_equivalence(&a, &b, 8).unwrap();
        // dyck1 accepts the empty word, balanced_parens does not.
        assert_eq!(found, Equivalence::Counterexample(vec![]));
        assert_eq!(Some(vec![]), brute_force(&a, &b, 8));
    }

    #[test]
    fn agrees_with_enumeration_after_empty_word() {
        let a = balanced_parens();
        let mut b = dyck1();
        b.set_accepting(b.initial(), true).unwrap();
        let mut a2 = a.clone();
        a2.set_accepting(a2.initial(), true).unwrap();
        let expected = brute_force(&a2, &b, 8);
        assert_eq!(expected, Some(word("( ) ( )")));
        assert_eq!(
            bounded_equivalence(&a2, &b, 8).unwrap(),
            Equivalence::Counterexample(expected.unwrap())
        );
    }

    #[test]
    fn alphabet_mismatch() {
        let a = balanced_parens();
        let b = crate::bench::builtin::dyck2();
        assert!(matches!(bounded_equivalence(&a, &b, 3), Err(Error::AlphabetMismatch(_))));
    }
}
