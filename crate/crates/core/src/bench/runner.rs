//! Repeated generate / split / learn / evaluate runs over built-in grammars.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use super::builtin::builtin;
use super::generate::{derive_seed, generate_dataset, split_dataset, GenConfig, GenMode, DEFAULT_SEED};
use super::metrics::{evaluate, EvalMetrics};
use crate::automata::Acceptor;
use crate::error::{Error, Result};
use crate::papni::{papni_learn, PapniConfig};
use crate::rpni::Backend;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Learner {
    /// The DFA learner applied directly to raw words.
    Rpni,
    /// Well-matched filtering, stack-aware transform, DFA learning, lift.
    Papni,
}

impl Learner {
    pub fn name(self) -> &'static str {
        match self {
            Learner::Rpni => "rpni",
            Learner::Papni => "papni",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub grammars: Vec<String>,
    pub repeats: usize,
    pub total: usize,
    pub len_min: usize,
    pub len_max: usize,
    pub seed: u64,
    /// Shared by both learners.
    pub backend: Backend,
    /// Generation mode for every cell. Uniform sampling yields almost no
    /// accepted words for sparse languages, so the default is balanced.
    pub mode: GenMode,
}

impl Default for BenchConfig {
    fn default() -> Self {
        let g = GenConfig::default();
        BenchConfig {
            grammars: ["balanced_parens", "arithmetic_expr", "anbn", "dyck2"].map(String::from).to_vec(),
            repeats: 5,
            total: g.total,
            len_min: g.len_min,
            len_max: g.len_max,
            seed: DEFAULT_SEED,
            backend: Backend::Edsm,
            mode: GenMode::Balanced,
        }
    }
}

/// Outcome of one learner on one (grammar, repeat) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub grammar: String,
    pub repeat: usize,
    pub learner: Learner,
    pub metrics: EvalMetrics,
    pub size: usize,
    pub train_size: usize,
    /// Distinct stack-aware symbols in the preprocessed training set and
    /// the alphabet bound they must respect.
    pub stack_aware_symbols: usize,
    pub stack_aware_bound: usize,
    pub wall_ms: f64,
}

/// Aggregate of a learner over all repeats of a grammar.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub grammar: String,
    pub learner: Learner,
    pub runs: usize,
    pub mean_f1: f64,
    pub std_f1: f64,
    pub mean_size: f64,
    pub wall_ms: f64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "grammar={} learner={} runs={} mean_f1={:.6} std_f1={:.6} mean_size={:.2} wall_ms={:.3}",
            self.grammar,
            self.learner.name(),
            self.runs,
            self.mean_f1,
            self.std_f1,
            self.mean_size,
            self.wall_ms
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub runs: Vec<RunResult>,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, grammar: &str, learner: Learner) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.grammar == grammar && r.learner == learner)
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64() * 1e3))
}

/// Runs a single cell: one dataset, one split, both learners.
pub fn run_cell(grammar: &str, repeat: usize, index: u64, cfg: &BenchConfig) -> Result<[RunResult; 2]> {
    let gt = builtin(grammar)?;
    let seed = derive_seed(cfg.seed, index);
    let gen = GenConfig {
        total: cfg.total,
        len_min: cfg.len_min,
        len_max: cfg.len_max,
        seed,
        mode: cfg.mode,
    };
    let data = generate_dataset(&gt, &gen)?;
    let (train, eval) = split_dataset(&data, derive_seed(seed, 1))?;

    let (rpni, rpni_ms) = timed(|| {
        let mut dfa = cfg.backend.learn(&train)?;
        dfa.extend_alphabet(gt.alphabet().symbols());
        Ok(dfa)
    })?;
    let papni_cfg = PapniConfig { backend: cfg.backend, report_dropped: false };
    let ((papni, report), papni_ms) = timed(|| papni_learn(&train, gt.alphabet(), papni_cfg))?;

    let result = |learner, model: &dyn AcceptorDyn, wall_ms| RunResult {
        grammar: grammar.to_string(),
        repeat,
        learner,
        metrics: model.score(&eval),
        size: model.states(),
        train_size: train.len(),
        stack_aware_symbols: report.observed.len(),
        stack_aware_bound: report.bound,
        wall_ms,
    };
    Ok([
        result(Learner::Rpni, &rpni, rpni_ms),
        result(Learner::Papni, &papni, papni_ms),
    ])
}

// Object-safe view over the two model types.
trait AcceptorDyn {
    fn score(&self, d: &crate::dataset::LabeledDataset<crate::automata::Symbol>) -> EvalMetrics;
    fn states(&self) -> usize;
}

impl<A: Acceptor> AcceptorDyn for A {
    fn score(&self, d: &crate::dataset::LabeledDataset<crate::automata::Symbol>) -> EvalMetrics {
        evaluate(self, d)
    }
    fn states(&self) -> usize {
        self.num_states()
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Population standard deviation.
fn std_dev(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.repeats == 0 {
        return Err(Error::InvalidConfig("repeats must be at least 1".into()));
    }
    if cfg.grammars.is_empty() {
        return Err(Error::InvalidConfig("no grammars selected".into()));
    }
    for g in &cfg.grammars {
        builtin(g)?;
    }
    let cells: Vec<(usize, usize)> = (0..cfg.grammars.len())
        .flat_map(|g| (0..cfg.repeats).map(move |r| (g, r)))
        .collect();
    let results: Vec<[RunResult; 2]> = cells
        .par_iter()
        .map(|&(g, r)| run_cell(&cfg.grammars[g], r, (g * cfg.repeats + r) as u64, cfg))
        .collect::<Result<_>>()?;
    let runs: Vec<RunResult> = results.into_iter().flatten().collect();

    let mut rows = Vec::new();
    for g in &cfg.grammars {
        for learner in [Learner::Rpni, Learner::Papni] {
            let sel: Vec<&RunResult> = runs.iter().filter(|r| &r.grammar == g && r.learner == learner).collect();
            let f1: Vec<f64> = sel.iter().map(|r| r.metrics.f1).collect();
            let sizes: Vec<f64> = sel.iter().map(|r| r.size as f64).collect();
            let wall: Vec<f64> = sel.iter().map(|r| r.wall_ms).collect();
            rows.push(BenchRow {
                grammar: g.clone(),
                learner,
                runs: sel.len(),
                mean_f1: mean(&f1),
                std_f1: std_dev(&f1),
                mean_size: mean(&sizes),
                wall_ms: mean(&wall),
            });
        }
    }
    Ok(BenchReport { runs, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(grammar: &str, repeats: usize) -> BenchConfig {
        BenchConfig {
            grammars: vec![grammar.to_string()],
            repeats,
            total: 1_000,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn single_repeat_has_zero_spread() {
        let report = run_benchmark(&small("balanced_parens", 1)).unwrap();
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert_eq!(row.runs, 1);
            assert_eq!(row.std_f1, 0.0);
        }
    }

    #[test]
    fn results_ignore_thread_scheduling() {
        let cfg = small("arithmetic_expr", 3);
        let strip = |r: BenchReport| r.runs.into_iter().map(|x| (x.grammar, x.repeat, x.learner, x.size, x.metrics)).collect::<Vec<_>>();
        assert_eq!(strip(run_benchmark(&cfg).unwrap()), strip(run_benchmark(&cfg).unwrap()));
    }

    #[test]
    fn row_lines_are_keyed() {
        let report = run_benchmark(&small("anbn", 1)).unwrap();
        let text = report.to_text();
        assert!(text.lines().all(|l| l.starts_with("grammar=anbn learner=")));
        assert!(report.row("anbn", Learner::Papni).is_some());
    }

    #[test]
    fn bad_configs() {
        assert!(run_benchmark(&small("anbn", 0)).is_err());
        assert!(matches!(run_benchmark(&small("nope", 1)), Err(Error::UnknownGrammar(_))));
    }

    #[test]
    fn std_is_population() {
        assert_eq!(std_dev(&[1.0, 3.0]), 1.0);
    }
}
