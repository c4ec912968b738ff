//! Binary classification scores.

use std::fmt;

use crate::automata::{Acceptor, Symbol};
use crate::dataset::LabeledDataset;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EvalMetrics {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Set when the corresponding ratio has a zero denominator and was
    /// reported as 0.
    pub precision_undefined: bool,
    pub recall_undefined: bool,
    pub f1_undefined: bool,
}

fn ratio(num: f64, den: f64) -> (f64, bool) {
    if den == 0.0 {
        (0.0, true)
    } else {
        (num / den, false)
    }
}

impl EvalMetrics {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize, tn: usize) -> Self {
        let (precision, precision_undefined) = ratio(tp as f64, (tp + fp) as f64);
        let (recall, recall_undefined) = ratio(tp as f64, (tp + fn_) as f64);
        let (f1, f1_undefined) = ratio(2.0 * precision * recall, precision + recall);
        EvalMetrics { tp, fp, fn_, tn, precision, recall, f1, precision_undefined, recall_undefined, f1_undefined }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn accuracy(&self) -> f64 {
        ratio((self.tp + self.tn) as f64, self.total() as f64).0
    }
}

impl fmt::Display for EvalMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tp={} fp={} fn={} tn={} precision={:.6} recall={:.6} f1={:.6}",
            self.tp, self.fp, self.fn_, self.tn, self.precision, self.recall, self.f1
        )
    }
}

/// Scores `model` against the labels in `dataset`.
pub fn evaluate<A: Acceptor + ?Sized>(model: &A, dataset: &LabeledDataset<Symbol>) -> EvalMetrics {
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for s in dataset {
        match (model.classify(&s.word), s.label) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    EvalMetrics::from_counts(tp, fp, fn_, tn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::word;
    use crate::bench::builtin;

    #[test]
    fn known_counts() {
        let m = EvalMetrics::from_counts(3, 1, 1, 5);
        assert_eq!(m.precision, 0.75);
        assert_eq!(m.recall, 0.75);
        assert_eq!(m.f1, 0.75);
        assert_eq!(m.accuracy(), 0.8);
    }

    #[test]
    fn zero_denominators_are_flagged() {
        let m = EvalMetrics::from_counts(0, 0, 0, 4);
        assert!(m.precision_undefined && m.recall_undefined && m.f1_undefined);
        assert_eq!(m.f1, 0.0);
        let m = EvalMetrics::from_counts(0, 2, 3, 0);
        assert!(!m.precision_undefined && m.f1_undefined);
    }

    #[test]
    fn ground_truth_scores_perfectly() {
        let gt = builtin::balanced_parens();
        let d = LabeledDataset::from_pairs([
            (word("( )"), true),
            (word("( ( ) )"), true),
            (word(") ("), false),
            (word("( ) ( )"), false),
        ])
        .unwrap();
        let m = evaluate(&gt, &d);
        assert_eq!((m.tp, m.fp, m.fn_, m.tn), (2, 0, 0, 2));
        assert_eq!(m.f1, 1.0);
    }
}
