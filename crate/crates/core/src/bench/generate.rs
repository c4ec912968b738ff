//! Seeded dataset generation and train/eval splitting.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::builtin::GroundTruth;
use crate::automata::{StateId, Symbol, Vdpa, VdpaEdge};
use crate::dataset::{LabeledDataset, LabeledSample};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GenMode {
    /// Uniform length, uniform symbols, labelled by the ground truth.
    #[default]
    Uniform,
    /// Half accepted words from random accepting walks, half rejected
    /// uniform words.
    Balanced,
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GenMode::Uniform),
            "balanced" => Ok(GenMode::Balanced),
            other => Err(Error::InvalidConfig(format!("unknown generation mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub total: usize,
    pub len_min: usize,
    pub len_max: usize,
    pub seed: u64,
    pub mode: GenMode,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            total: 10_000,
            len_min: 4,
            len_max: 50,
            seed: DEFAULT_SEED,
            mode: GenMode::Uniform,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Retry budget per requested word in balanced mode.
const RETRY_FACTOR: usize = 100;
/// Duplicate draws tolerated before a repeated word is accepted.
const DISTINCT_TRIES: usize = 10;

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.len_min == 0 || self.len_min > self.len_max {
            return Err(Error::InvalidConfig(format!(
                "need 0 < len_min <= len_max, got {}..{}",
                self.len_min, self.len_max
            )));
        }
        if self.total < 2 {
            return Err(Error::InvalidConfig("total must be at least 2".into()));
        }
        Ok(())
    }
}

/// Independent per-run seed derived from a base seed and a run index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn uniform_word(rng: &mut ChaCha8Rng, symbols: &[Symbol], cfg: &GenConfig) -> Vec<Symbol> {
    let len = rng.gen_range(cfg.len_min..=cfg.len_max);
    (0..len).map(|_| symbols[rng.gen_range(0..symbols.len())].clone()).collect()
}

pub fn generate_dataset(gt: &GroundTruth, cfg: &GenConfig) -> Result<LabeledDataset<Symbol>> {
    cfg.validate()?;
    let symbols: Vec<Symbol> = gt.alphabet().symbols().into_iter().collect();
    if symbols.is_empty() {
        return Err(Error::InvalidConfig("ground truth has an empty alphabet".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples = match cfg.mode {
        GenMode::Uniform => (0..cfg.total)
            .map(|_| {
                let w = uniform_word(&mut rng, &symbols, cfg);
                let label = gt.vdpa.accepts(&w).expect("alphabet symbols");
                LabeledSample::new(w, label)
            })
            .collect(),
        GenMode::Balanced => balanced(gt, cfg, &symbols, &mut rng)?,
    };
    LabeledDataset::new(samples)
}

fn balanced(
    gt: &GroundTruth,
    cfg: &GenConfig,
    symbols: &[Symbol],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<LabeledSample<Symbol>>> {
    let n_pos = cfg.total / 2;
    let n_neg = cfg.total - n_pos;
    let walker = Walker::new(&gt.vdpa, cfg);
    if walker.lengths.is_empty() {
        return Err(Error::GenerationFailed(format!(
            "`{}` accepts no word with length in {}..={}",
            gt.name, cfg.len_min, cfg.len_max
        )));
    }

    let mut positives = collect(n_pos, rng, |rng| walker.walk(rng))
        .ok_or_else(|| Error::GenerationFailed(format!("could not sample {n_pos} accepted words of `{}`", gt.name)))?;
    let negatives = collect(n_neg, rng, |rng| {
        let w = uniform_word(rng, symbols, cfg);
        (!gt.vdpa.accepts(&w).expect("alphabet symbols")).then_some(w)
    })
    .ok_or_else(|| Error::GenerationFailed(format!("could not sample {n_neg} rejected words of `{}`", gt.name)))?;

    let mut samples: Vec<LabeledSample<Symbol>> = positives
        .drain(..)
        .map(|w| LabeledSample::new(w, true))
        .chain(negatives.into_iter().map(|w| LabeledSample::new(w, false)))
        .collect();
    samples.shuffle(rng);
    Ok(samples)
}

/// Draws `count` words, preferring distinct ones. Gives up after
/// `RETRY_FACTOR * count` draws.
fn collect(
    count: usize,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<Vec<Symbol>>,
) -> Option<Vec<Vec<Symbol>>> {
    let mut budget = RETRY_FACTOR * count.max(1);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut duplicates = 0;
    while out.len() < count {
        if budget == 0 {
            return None;
        }
        budget -= 1;
        let Some(w) = draw(rng) else { continue };
        if seen.insert(w.clone()) || duplicates >= DISTINCT_TRIES {
            out.push(w);
            duplicates = 0;
        } else {
            duplicates += 1;
        }
    }
    Some(out)
}

/// Random walks restricted to moves after which an accepting empty-stack
/// configuration is still reachable in the remaining steps. Reachability
/// tracks only stack height, which over-approximates when returns depend on
/// the popped symbol; such walks may still fail and are retried.
struct Walker<'a> {
    vdpa: &'a Vdpa,
    edges: Vec<Vec<(VdpaEdge, StateId)>>,
    // feasible[q][r][h]: from state q with stack height h, some move
    // sequence of exactly r steps ends accepting with an empty stack.
    feasible: Vec<Vec<Vec<bool>>>,
    lengths: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(vdpa: &'a Vdpa, cfg: &GenConfig) -> Self {
        let n = vdpa.size();
        let mut edges = vec![Vec::new(); n];
        for (from, e, to) in vdpa.edges() {
            edges[from.index()].push((e, to));
        }
        let max = cfg.len_max;
        let mut feasible = vec![vec![vec![false; max + 2]; max + 1]; n];
        for q in vdpa.states() {
            feasible[q.index()][0][0] = vdpa.is_accepting(q);
        }
        for r in 1..=max {
            for q in 0..n {
                for h in 0..=(max - r).min(r) {
                    feasible[q][r][h] = edges[q].iter().any(|(e, to)| {
                        let t = to.index();
                        match e {
                            VdpaEdge::Internal(_) => feasible[t][r - 1][h],
                            VdpaEdge::Call(_) => h < r - 1 && feasible[t][r - 1][h + 1],
                            VdpaEdge::Return { .. } => h > 0 && feasible[t][r - 1][h - 1],
                        }
                    });
                }
            }
        }
        let q0 = vdpa.initial().index();
        let lengths = (cfg.len_min..=max).filter(|&l| feasible[q0][l][0]).collect();
        Walker { vdpa, edges, feasible, lengths }
    }

    fn walk(&self, rng: &mut ChaCha8Rng) -> Option<Vec<Symbol>> {
        let len = *self.lengths.choose(rng)?;
        let mut state = self.vdpa.initial();
        let mut stack: Vec<Symbol> = Vec::new();
        let mut word = Vec::with_capacity(len);
        let mut moves = Vec::new();
        for step in 0..len {
            let r = len - step - 1;
            let h = stack.len();
            moves.clear();
            for (e, to) in &self.edges[state.index()] {
                let t = to.index();
                let ok = match e {
                    VdpaEdge::Internal(_) => h <= r && self.feasible[t][r][h],
                    VdpaEdge::Call(_) => h < r && self.feasible[t][r][h + 1],
                    VdpaEdge::Return { top, .. } => {
                        stack.last() == Some(top) && self.feasible[t][r][h - 1]
                    }
                };
                if ok {
                    moves.push((e, *to));
                }
            }
            let &(e, to) = moves.choose(rng)?;
            match e {
                VdpaEdge::Internal(s) => word.push(s.clone()),
                VdpaEdge::Call(s) => {
                    stack.push(s.clone());
                    word.push(s.clone());
                }
                VdpaEdge::Return { ret, .. } => {
                    stack.pop();
                    word.push(ret.clone());
                }
            }
            state = to;
        }
        (stack.is_empty() && self.vdpa.is_accepting(state)).then_some(word)
    }
}

/// Splits by word: every copy of a word lands in the same half. Each label's
/// word groups are shuffled; the first two seed the two halves and the rest
/// go to whichever half currently holds fewer samples.
pub fn split_dataset(
    dataset: &LabeledDataset<Symbol>,
    seed: u64,
) -> Result<(LabeledDataset<Symbol>, LabeledDataset<Symbol>)> {
    let mut index: HashMap<&[Symbol], usize> = HashMap::new();
    let mut groups: Vec<Vec<&LabeledSample<Symbol>>> = Vec::new();
    for s in dataset {
        let g = *index.entry(&s.word).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(s);
    }
    let (mut pos, mut neg): (Vec<_>, Vec<_>) = groups.into_iter().partition(|g| g[0].label);
    if pos.len() < 2 || neg.len() < 2 {
        return Err(Error::Split(format!(
            "need at least 2 positive and 2 negative distinct words, have {}/{}",
            pos.len(),
            neg.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);
    let (mut train, mut eval) = (Vec::new(), Vec::new());
    for groups in [pos, neg] {
        for (i, g) in groups.into_iter().enumerate() {
            let side = match i {
                0 => &mut train,
                1 => &mut eval,
                _ if train.len() <= eval.len() => &mut train,
                _ => &mut eval,
            };
            side.extend(g.into_iter().cloned());
        }
    }
    train.shuffle(&mut rng);
    eval.shuffle(&mut rng);
    Ok((
        LabeledDataset::from_samples_unchecked(train),
        LabeledDataset::from_samples_unchecked(eval),
    ))
}
