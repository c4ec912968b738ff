//! Labelled samples and their on-disk formats.
//!
//! Dataset files hold one sample per line: `+` or `-` followed by the
//! whitespace-separated symbols of the word. Blank lines and lines starting
//! with `#` are ignored. Alphabet files hold `internal:`, `call:` and
//! `return:` lines.

use std::collections::HashMap;
use std::fmt::{Display, Write as _};
use std::hash::Hash;
use std::str::FromStr;

use crate::automata::{Symbol, VpaAlphabet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledSample<S> {
    pub word: Vec<S>,
    pub label: bool,
}

impl<S> LabeledSample<S> {
    pub fn new(word: Vec<S>, label: bool) -> Self {
        LabeledSample { word, label }
    }
}

/// A list of samples in which no word carries both labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDataset<S> {
    samples: Vec<LabeledSample<S>>,
}

impl<S> Default for LabeledDataset<S> {
    fn default() -> Self {
        LabeledDataset { samples: Vec::new() }
    }
}

pub(crate) fn render_word<S: Display>(word: &[S]) -> String {
    let mut out = String::new();
    for (i, s) in word.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{s}").unwrap();
    }
    out
}

impl<S: Clone + Eq + Hash + Display> LabeledDataset<S> {
    pub fn new(samples: Vec<LabeledSample<S>>) -> Result<Self> {
        let mut seen: HashMap<&[S], bool> = HashMap::with_capacity(samples.len());
        for s in &samples {
            if let Some(&prev) = seen.get(s.word.as_slice()) {
                if prev != s.label {
                    return Err(Error::LabelConflict(render_word(&s.word)));
                }
            } else {
                seen.insert(&s.word, s.label);
            }
        }
        Ok(LabeledDataset { samples })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vec<S>, bool)>) -> Result<Self> {
        LabeledDataset::new(pairs.into_iter().map(|(w, l)| LabeledSample::new(w, l)).collect())
    }

    /// Keeps the first occurrence of every word.
    pub fn dedup(&self) -> Self {
        let mut seen = std::collections::HashSet::with_capacity(self.samples.len());
        LabeledDataset {
            samples: self
                .samples
                .iter()
                .filter(|s| seen.insert(s.word.clone()))
                .cloned()
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.samples {
            out.push(if s.label { '+' } else { '-' });
            for sym in &s.word {
                write!(out, " {sym}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl<S> LabeledDataset<S> {
    pub(crate) fn from_samples_unchecked(samples: Vec<LabeledSample<S>>) -> Self {
        LabeledDataset { samples }
    }

    pub fn samples(&self) -> &[LabeledSample<S>] {
        &self.samples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledSample<S>> {
        self.samples.iter()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positives(&self) -> usize {
        self.samples.iter().filter(|s| s.label).count()
    }

    pub fn negatives(&self) -> usize {
        self.len() - self.positives()
    }
}

impl<'a, S> IntoIterator for &'a LabeledDataset<S> {
    type Item = &'a LabeledSample<S>;
    type IntoIter = std::slice::Iter<'a, LabeledSample<S>>;

    fn into_iter(self) -> Self::IntoIter {
        self.samples.iter()
    }
}

/// Parses a dataset file.
pub fn parse_dataset<S>(text: &str) -> Result<LabeledDataset<S>>
where
    S: Clone + Eq + Hash + Display + FromStr<Err = Error>,
{
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let label = match tokens.next() {
            Some("+") => true,
            Some("-") => false,
            Some(other) => {
                return Err(Error::parse(i + 1, format!("expected `+` or `-`, found `{other}`")))
            }
            None => unreachable!("blank lines are skipped"),
        };
        let word = tokens
            .map(|t| t.parse::<S>().map_err(|e| Error::parse(i + 1, e.to_string())))
            .collect::<Result<Vec<S>>>()?;
        samples.push(LabeledSample::new(word, label));
    }
    LabeledDataset::new(samples)
}

pub fn parse_alphabet(text: &str) -> Result<VpaAlphabet> {
    let (mut internal, mut call, mut ret) = (None, None, None);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(i + 1, "expected `internal:`, `call:` or `return:`"))?;
        let slot = match key.trim() {
            "internal" => &mut internal,
            "call" => &mut call,
            "return" => &mut ret,
            other => return Err(Error::parse(i + 1, format!("unknown key `{other}:`"))),
        };
        if slot.is_some() {
            return Err(Error::parse(i + 1, format!("duplicate `{}:` line", key.trim())));
        }
        let symbols = rest
            .split_whitespace()
            .map(|t| Symbol::new(t).map_err(|e| Error::parse(i + 1, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        *slot = Some(symbols);
    }
    VpaAlphabet::new(
        internal.unwrap_or_default(),
        call.unwrap_or_default(),
        ret.unwrap_or_default(),
    )
}

pub fn write_alphabet(alphabet: &VpaAlphabet) -> String {
    let line = |key: &str, set: &std::collections::BTreeSet<Symbol>| {
        let mut s = format!("{key}:");
        for sym in set {
            write!(s, " {sym}").unwrap();
        }
        s.push('\n');
        s
    };
    line("internal", alphabet.internal()) + &line("call", alphabet.call()) + &line("return", alphabet.ret())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{word, StackAwareSymbol};

    #[test]
    fn parses_labels_words_and_comments() {
        let text = "# header\n+ ( )\n\n-\n- ) (\n";
        let d: LabeledDataset<Symbol> = parse_dataset(text).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.samples()[0], LabeledSample::new(word("( )"), true));
        assert_eq!(d.samples()[1], LabeledSample::new(vec![], false));
        assert_eq!(d.to_text(), "+ ( )\n-\n- ) (\n");
    }

    #[test]
    fn conflicting_labels_fail_at_load() {
        let err = parse_dataset::<Symbol>("+ a b\n- a b\n").unwrap_err();
        assert!(matches!(err, Error::LabelConflict(w) if w == "a b"));
        assert!(parse_dataset::<Symbol>("+ a b\n+ a b\n").is_ok());
    }

    #[test]
    fn bad_label_is_a_parse_error() {
        assert!(matches!(parse_dataset::<Symbol>("* a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_dataset::<Symbol>("+a\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn stack_aware_dataset_tokens() {
        let d: LabeledDataset<StackAwareSymbol> = parse_dataset("+ ( )|(\n").unwrap();
        assert_eq!(d.to_text(), "+ ( )|(\n");
    }

    #[test]
    fn alphabet_file() {
        let a = parse_alphabet("internal:\ncall: (\nreturn: )\n").unwrap();
        assert!(a.internal().is_empty());
        assert_eq!(a.call().len(), 1);
        assert_eq!(parse_alphabet(&write_alphabet(&a)).unwrap(), a);
        assert!(parse_alphabet("call: (\ncall: [\nreturn: )\n").is_err());
        assert!(parse_alphabet("push: (\n").is_err());
        assert!(parse_alphabet("internal: a\ncall: a\nreturn: b\n").is_err());
    }

    #[test]
    fn dedup_keeps_first() {
        let d = LabeledDataset::from_pairs([(word("a"), true), (word("b"), false), (word("a"), true)]).unwrap();
        assert_eq!(d.dedup().len(), 2);
    }
}
