//! Automaton data model and execution semantics.

pub mod dfa;
pub mod dot;
pub mod equivalence;
pub mod format;
pub mod symbol;
pub mod vdpa;

pub use dfa::{Dfa, StateId};
pub use dot::{dfa_to_dot, vdpa_to_dot, DotLabel};
pub use equivalence::{bounded_equivalence, Acceptor, Equivalence};
pub use format::{parse_dfa, parse_vdpa, write_dfa, write_vdpa, Model};
pub use symbol::{word, StackAwareSymbol, Symbol, SymbolKind, VpaAlphabet};
pub use vdpa::{Vdpa, VdpaEdge, VdpaVerdict, VerdictReason};
