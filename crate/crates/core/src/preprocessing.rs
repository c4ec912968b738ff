//! Well-matchedness filtering and the stack-aware word transformation.

use std::collections::BTreeSet;
use std::fmt;

use crate::automata::{StackAwareSymbol, Symbol, SymbolKind, VpaAlphabet};
use crate::dataset::{render_word, LabeledDataset, LabeledSample};
use crate::error::{Error, Result};

/// Counter test: calls add one, returns subtract one, the counter may never
/// go negative and must end at zero.
pub fn is_well_matched(word: &[Symbol], alphabet: &VpaAlphabet) -> Result<bool> {
    let mut depth: usize = 0;
    let mut balanced = true;
    for s in word {
        match alphabet.classify(s)? {
            SymbolKind::Call => depth += 1,
            SymbolKind::Return if balanced => match depth.checked_sub(1) {
                Some(d) => depth = d,
                None => balanced = false,
            },
            _ => {}
        }
    }
    Ok(balanced && depth == 0)
}

/// Pairs every return symbol with the call symbol it pops.
pub fn to_stack_aware(word: &[Symbol], alphabet: &VpaAlphabet) -> Result<Vec<StackAwareSymbol>> {
    let mut stack: Vec<&Symbol> = Vec::new();
    let mut out = Vec::with_capacity(word.len());
    for s in word {
        let mapped = match alphabet.classify(s)? {
            SymbolKind::Internal => StackAwareSymbol::Plain(s.clone()),
            SymbolKind::Call => {
                stack.push(s);
                StackAwareSymbol::Plain(s.clone())
            }
            SymbolKind::Return => {
                let call = stack
                    .pop()
                    .ok_or_else(|| Error::NotWellMatched(render_word(word)))?;
                StackAwareSymbol::paired(s.clone(), call.clone())
            }
        };
        out.push(mapped);
    }
    if !stack.is_empty() {
        return Err(Error::NotWellMatched(render_word(word)));
    }
    Ok(out)
}

/// Drops the pairing information.
pub fn from_stack_aware(word: &[StackAwareSymbol]) -> Vec<Symbol> {
    word.iter().map(|s| s.input_symbol().clone()).collect()
}

/// Outcome of filtering and transforming a dataset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreprocessReport {
    pub kept: usize,
    pub dropped_positive: usize,
    pub dropped_negative: usize,
    /// Positive samples that were not well-matched. A VDPA cannot accept
    /// these, so they indicate noisy data.
    pub anomalies: Vec<String>,
    /// Distinct stack-aware symbols occurring in the kept samples.
    pub observed: BTreeSet<StackAwareSymbol>,
    /// `|internal| + |call| + |return| * |call|` for the alphabet used.
    pub bound: usize,
}

impl PreprocessReport {
    pub fn dropped(&self) -> usize {
        self.dropped_positive + self.dropped_negative
    }

    /// Observed `(return, call)` pairs.
    pub fn observed_pairs(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.observed.iter().filter_map(|s| match s {
            StackAwareSymbol::ReturnPaired { ret, call } => Some((ret, call)),
            StackAwareSymbol::Plain(_) => None,
        })
    }
}

impl fmt::Display for PreprocessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kept: {}", self.kept)?;
        writeln!(f, "dropped_positive: {}", self.dropped_positive)?;
        writeln!(f, "dropped_negative: {}", self.dropped_negative)?;
        writeln!(f, "stack_aware_symbols: {} of at most {}", self.observed.len(), self.bound)?;
        write!(f, "observed_pairs:")?;
        for (r, c) in self.observed_pairs() {
            write!(f, " {r}|{c}")?;
        }
        writeln!(f)?;
        for a in &self.anomalies {
            writeln!(f, "warning: positive sample is not well-matched: {a}")?;
        }
        Ok(())
    }
}

/// Removes every non-well-matched sample, whatever its label, and rewrites
/// the rest over the stack-aware alphabet. Labels are never changed.
pub fn preprocess_dataset(
    dataset: &LabeledDataset<Symbol>,
    alphabet: &VpaAlphabet,
) -> Result<(LabeledDataset<StackAwareSymbol>, PreprocessReport)> {
    let mut report = PreprocessReport {
        bound: alphabet.stack_aware_bound(),
        ..Default::default()
    };
    let mut kept = Vec::new();
    for sample in dataset {
        if !is_well_matched(&sample.word, alphabet)? {
            if sample.label {
                report.dropped_positive += 1;
                report.anomalies.push(render_word(&sample.word));
            } else {
                report.dropped_negative += 1;
            }
            continue;
        }
        let word = to_stack_aware(&sample.word, alphabet)?;
        report.observed.extend(word.iter().cloned());
        kept.push(LabeledSample::new(word, sample.label));
    }
    report.kept = kept.len();
    // The transform is injective, so label consistency carries over.
    Ok((LabeledDataset::from_samples_unchecked(kept), report))
}
