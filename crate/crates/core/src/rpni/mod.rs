//! Passive regular inference by state merging over a prefix tree acceptor.
//!
//! Both learners use the red-blue frame: red blocks are final states of the
//! hypothesis, blue blocks are their not-yet-red successors. Candidates are
//! ordered by the shortlex order of their smallest access string.

mod hypothesis;
mod pta;

use std::fmt::Display;
use std::hash::Hash;

pub use hypothesis::{Hypothesis, Incompatible};
pub use pta::{NodeId, NodeLabel, Pta};

use crate::automata::Dfa;
use crate::dataset::LabeledDataset;
use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Rpni,
    Edsm,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rpni => "rpni",
            Backend::Edsm => "edsm",
        }
    }

    pub fn learn<S>(self, dataset: &LabeledDataset<S>) -> Result<Dfa<S>>
    where
        S: Ord + Clone + Eq + Hash + Display,
    {
        match self {
            Backend::Rpni => rpni_learn(dataset),
            Backend::Edsm => edsm_learn(dataset),
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rpni" => Ok(Backend::Rpni),
            "edsm" => Ok(Backend::Edsm),
            other => Err(crate::error::Error::InvalidConfig(format!("unknown backend `{other}`"))),
        }
    }
}

pub fn build_pta<S>(dataset: &LabeledDataset<S>) -> Result<Pta<S>>
where
    S: Ord + Clone + Eq + Hash + Display,
{
    Pta::build(dataset)
}

struct RedBlue<'p, S> {
    hyp: Hypothesis<'p, S>,
    red: Vec<NodeId>,
}

impl<'p, S> RedBlue<'p, S> {
    fn new(pta: &'p Pta<S>) -> Self {
        RedBlue {
            hyp: Hypothesis::new(pta),
            red: vec![pta.root()],
        }
    }

    /// Red nodes sorted by block key.
    fn reds(&self) -> Vec<NodeId> {
        let mut reds = self.red.clone();
        reds.sort_by_key(|&r| self.hyp.block_key(r));
        reds
    }

    /// Blue nodes (one per block) sorted by block key.
    fn blues(&self) -> Vec<NodeId> {
        let red_blocks: Vec<NodeId> = self.red.iter().map(|&r| self.hyp.block(r)).collect();
        let mut blues: Vec<NodeId> = Vec::new();
        for &r in &self.red {
            for (_, t) in self.hyp.successors(r) {
                if !red_blocks.contains(&t) && !blues.contains(&t) {
                    blues.push(t);
                }
            }
        }
        blues.sort_by_key(|&b| self.hyp.block_key(b));
        blues
    }

    fn promote(&mut self, blue: NodeId) {
        self.red.push(blue);
    }
}

/// Classic RPNI order: the shortlex-first blue block is merged into the
/// first compatible red block, or promoted when none is compatible.
pub fn rpni_learn<S>(dataset: &LabeledDataset<S>) -> Result<Dfa<S>>
where
    S: Ord + Clone + Eq + Hash + Display,
{
    rpni_learn_observed(dataset, |_| {})
}

/// As [`rpni_learn`], calling `observer` after every accepted merge.
pub fn rpni_learn_observed<S>(
    dataset: &LabeledDataset<S>,
    mut observer: impl FnMut(&Hypothesis<'_, S>),
) -> Result<Dfa<S>>
where
    S: Ord + Clone + Eq + Hash + Display,
{
    let pta = Pta::build(dataset)?;
    let mut rb = RedBlue::new(&pta);
    while let Some(&blue) = rb.blues().first() {
        let mut merged = false;
        for red in rb.reds() {
            if rb.hyp.try_merge(red, blue).is_ok() {
                observer(&rb.hyp);
                merged = true;
                break;
            }
        }
        if !merged {
            rb.promote(blue);
        }
    }
    Ok(rb.hyp.to_dfa())
}

/// Evidence-driven merging: every compatible (red, blue) pair is scored and
/// the best-scoring merge is taken. Ties go to the shortlex-first red, then
/// the shortlex-first blue. A blue block with no compatible red is promoted
/// before any merge is made.
pub fn edsm_learn<S>(dataset: &LabeledDataset<S>) -> Result<Dfa<S>>
where
    S: Ord + Clone + Eq + Hash + Display,
{
    edsm_learn_observed(dataset, |_| {})
}

pub fn edsm_learn_observed<S>(
    dataset: &LabeledDataset<S>,
    mut observer: impl FnMut(&Hypothesis<'_, S>),
) -> Result<Dfa<S>>
where
    S: Ord + Clone + Eq + Hash + Display,
{
    let pta = Pta::build(dataset)?;
    let mut rb = RedBlue::new(&pta);
    'rounds: loop {
        let blues = rb.blues();
        if blues.is_empty() {
            break;
        }
        let reds = rb.reds();
        // (score, red rank, blue rank); higher score wins, then lower ranks.
        let mut best: Option<(usize, usize, usize)> = None;
        for (bi, &blue) in blues.iter().enumerate() {
            let mut any = false;
            for (ri, &red) in reds.iter().enumerate() {
                if let Ok(score) = rb.hyp.merge_score(red, blue) {
                    any = true;
                    let better = match best {
                        None => true,
                        Some((s, r, b)) => score > s || (score == s && (ri, bi) < (r, b)),
                    };
                    if better {
                        best = Some((score, ri, bi));
                    }
                }
            }
            if !any {
                rb.promote(blue);
                continue 'rounds;
            }
        }
        let (_, ri, bi) = best.expect("every blue has a compatible red");
        rb.hyp
            .try_merge(reds[ri], blues[bi])
            .expect("scored merge is compatible");
        observer(&rb.hyp);
    }
    Ok(rb.hyp.to_dfa())
}
