//! Passive learning of visibly deterministic pushdown automata (VDPAs) from
//! labelled words.
//!
//! Well-matched samples are rewritten so that each return carries the call
//! it closes; a DFA learned over that alphabet is then read back as a VDPA.

pub mod automata;
pub mod bench;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod papni;
pub mod preprocessing;
pub mod rpni;

pub use automata::{
    bounded_equivalence, word, Acceptor, Dfa, Equivalence, Model, StackAwareSymbol, StateId, Symbol,
    SymbolKind, Vdpa, VdpaEdge, VdpaVerdict, VerdictReason, VpaAlphabet,
};
pub use dataset::{parse_alphabet, parse_dataset, write_alphabet, LabeledDataset, LabeledSample};
pub use error::{Error, Result};
pub use papni::{dfa_to_vdpa, papni_learn, vdpa_to_dfa, PapniConfig};
pub use preprocessing::{from_stack_aware, is_well_matched, preprocess_dataset, to_stack_aware, PreprocessReport};
pub use rpni::{build_pta, edsm_learn, rpni_learn, Backend};
