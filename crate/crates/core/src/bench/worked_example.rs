//! The ten-sample balanced-parentheses training set and the models it
//! should produce.

use crate::automata::{parse_dfa, word, Dfa, StackAwareSymbol, Symbol, VpaAlphabet};
use crate::dataset::LabeledDataset;

const WORDS: [(&str, bool); 10] = [
    ("( )", true),
    ("( ( ) )", true),
    ("( ) ( )", false),
    ("( ) ( ) ( )", false),
    ("( ) ( ( ) )", false),
    ("(", false),
    ("( ) )", false),
    (") (", false),
    ("( ( )", false),
    ("( ( ) ) ) (", false),
];

/// The ten labelled words, five of them well-matched.
pub fn sample_words() -> LabeledDataset<Symbol> {
    LabeledDataset::from_pairs(WORDS.iter().map(|&(w, l)| (word(w), l))).expect("consistent")
}

/// The ten words preceded by the empty word labelled negative; this is the
/// set the learned model sizes 5 (RPNI) and 3 (PAPNI) refer to.
pub fn training_set() -> LabeledDataset<Symbol> {
    let pairs = std::iter::once((Vec::new(), false)).chain(WORDS.iter().map(|&(w, l)| (word(w), l)));
    LabeledDataset::from_pairs(pairs).expect("consistent")
}

pub fn alphabet() -> VpaAlphabet {
    VpaAlphabet::from_tokens("", "(", ")").expect("valid")
}

/// Three-state DFA over the stack-aware alphabet with `s2` as a sink.
pub fn stack_aware_dfa() -> Dfa<StackAwareSymbol> {
    parse_dfa(
        "dfa
initial: s0
accepting: s1
s0 ( -> s0
s0 )|( -> s1
s1 )|( -> s1
s1 ( -> s2
s2 ( -> s2
s2 )|( -> s2
",
    )
    .expect("well-formed")
}
