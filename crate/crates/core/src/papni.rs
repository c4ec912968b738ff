//! VDPA learning by reduction to DFA learning over the stack-aware alphabet.

use crate::automata::{Dfa, StackAwareSymbol, Symbol, SymbolKind, Vdpa, VdpaEdge, VpaAlphabet};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::preprocessing::{preprocess_dataset, PreprocessReport};
use crate::rpni::Backend;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PapniConfig {
    pub backend: Backend,
    pub report_dropped: bool,
}

/// Reinterprets a DFA over stack-aware symbols as a VDPA with the same
/// states and edges: plain internal symbols become internal edges, plain
/// calls push themselves, and `r|c` becomes a return on `r` popping `c`.
pub fn dfa_to_vdpa(dfa: &Dfa<StackAwareSymbol>, alphabet: &VpaAlphabet) -> Result<Vdpa> {
    let malformed = |s: &StackAwareSymbol| Error::MalformedStackAware(s.to_string());
    for s in dfa.alphabet() {
        let ok = match s {
            StackAwareSymbol::Plain(p) => {
                matches!(alphabet.kind(p), Some(SymbolKind::Internal | SymbolKind::Call))
            }
            StackAwareSymbol::ReturnPaired { ret, call } => {
                alphabet.kind(ret) == Some(SymbolKind::Return)
                    && alphabet.kind(call) == Some(SymbolKind::Call)
            }
        };
        if !ok {
            return Err(malformed(s));
        }
    }
    let mut vdpa = Vdpa::new(dfa.size(), alphabet.clone())?;
    vdpa.set_initial(vdpa.state(dfa.initial().index())?)?;
    for &q in dfa.accepting() {
        vdpa.set_accepting(vdpa.state(q.index())?, true)?;
    }
    for (from, s, to) in dfa.transitions() {
        let edge = match s {
            StackAwareSymbol::Plain(p) if alphabet.kind(p) == Some(SymbolKind::Call) => {
                VdpaEdge::Call(p.clone())
            }
            StackAwareSymbol::Plain(p) => VdpaEdge::Internal(p.clone()),
            StackAwareSymbol::ReturnPaired { ret, call } => VdpaEdge::Return {
                ret: ret.clone(),
                top: call.clone(),
            },
        };
        let (from, to) = (vdpa.state(from.index())?, vdpa.state(to.index())?);
        vdpa.add_edge(from, edge, to)?;
    }
    Ok(vdpa)
}

/// Inverse of [`dfa_to_vdpa`]: flattens the stack behaviour back into
/// stack-aware edge labels.
pub fn vdpa_to_dfa(vdpa: &Vdpa) -> Result<Dfa<StackAwareSymbol>> {
    let edges = vdpa.edges();
    let alphabet = edges.iter().map(|(_, e, _)| edge_symbol(e));
    let mut dfa = Dfa::new(vdpa.size(), alphabet)?;
    dfa.set_initial(dfa.state(vdpa.initial().index())?)?;
    for &q in vdpa.accepting() {
        dfa.set_accepting(dfa.state(q.index())?, true)?;
    }
    for (from, e, to) in &edges {
        let (from, to) = (dfa.state(from.index())?, dfa.state(to.index())?);
        dfa.add_transition(from, edge_symbol(e), to)?;
    }
    Ok(dfa)
}

fn edge_symbol(e: &VdpaEdge) -> StackAwareSymbol {
    match e {
        VdpaEdge::Internal(s) | VdpaEdge::Call(s) => StackAwareSymbol::Plain(s.clone()),
        VdpaEdge::Return { ret, top } => StackAwareSymbol::paired(ret.clone(), top.clone()),
    }
}

/// Filter, transform, learn a DFA over the stack-aware alphabet, and lift it.
pub fn papni_learn(
    dataset: &LabeledDataset<Symbol>,
    alphabet: &VpaAlphabet,
    config: PapniConfig,
) -> Result<(Vdpa, PreprocessReport)> {
    let (kept, report) = preprocess_dataset(dataset, alphabet)?;
    if kept.is_empty() {
        return Err(Error::NoWellMatchedSamples);
    }
    let dfa = config.backend.learn(&kept)?;
    let vdpa = dfa_to_vdpa(&dfa, alphabet)?;
    Ok((vdpa, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{bounded_equivalence, word, write_dfa, Equivalence};
    use crate::bench::{builtin, worked_example};

    #[test]
    fn worked_example_lifts_to_ground_truth() {
        let (vdpa, report) = papni_learn(
            &worked_example::training_set(),
            &worked_example::alphabet(),
            PapniConfig::default(),
        )
        .unwrap();
        assert_eq!(vdpa.size(), 3);
        assert_eq!(report.dropped(), 5);
        assert_eq!(
            bounded_equivalence(&vdpa, &builtin::balanced_parens(), 12).unwrap(),
            Equivalence::Equivalent
        );
        assert!(!vdpa.accepts(&word(") ( )")).unwrap());
    }

    #[test]
    fn stack_aware_dfa_lifts_to_three_state_vdpa() {
        let dfa = worked_example::stack_aware_dfa();
        let vdpa = dfa_to_vdpa(&dfa, &worked_example::alphabet()).unwrap();
        assert_eq!(vdpa.size(), 3);
        assert_eq!(vdpa.num_edges(), 6);
        assert_eq!(crate::automata::write_vdpa(&vdpa), crate::automata::write_vdpa(&builtin::balanced_parens()));
    }

    #[test]
    fn lift_then_flatten_restores_edges() {
        let dfa = worked_example::stack_aware_dfa();
        let vdpa = dfa_to_vdpa(&dfa, &worked_example::alphabet()).unwrap();
        let back = vdpa_to_dfa(&vdpa).unwrap();
        assert_eq!(write_dfa(&back), write_dfa(&dfa));
    }

    #[test]
    fn internal_only_dfa_has_no_stack_behaviour() {
        let text = "dfa\ninitial: s0\naccepting: s1\ns0 a -> s1\ns1 b -> s0\n";
        let dfa: Dfa<StackAwareSymbol> = crate::automata::parse_dfa(text).unwrap();
        let alphabet = VpaAlphabet::from_tokens("a b", "", "").unwrap();
        let vdpa = dfa_to_vdpa(&dfa, &alphabet).unwrap();
        for w in ["a", "a b a", "a b", "b"] {
            let plain: Vec<StackAwareSymbol> = word(w).into_iter().map(StackAwareSymbol::Plain).collect();
            assert_eq!(vdpa.accepts(&word(w)).unwrap(), dfa.accepts(&plain).unwrap());
        }
    }

    #[test]
    fn malformed_stack_aware_symbols() {
        let alphabet = worked_example::alphabet();
        for text in [
            "dfa\ninitial: s0\ns0 ) -> s0\n",
            "dfa\ninitial: s0\ns0 (|) -> s0\n",
            "dfa\ninitial: s0\ns0 x -> s0\n",
        ] {
            let dfa: Dfa<StackAwareSymbol> = crate::automata::parse_dfa(text).unwrap();
            assert!(matches!(dfa_to_vdpa(&dfa, &alphabet), Err(Error::MalformedStackAware(_))));
        }
    }

    #[test]
    fn nothing_well_matched_is_an_error() {
        let d = LabeledDataset::from_pairs([(word(") ("), false)]).unwrap();
        let err = papni_learn(&d, &worked_example::alphabet(), PapniConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NoWellMatchedSamples));
    }
}
