//! Ground truths, data generation, scoring and the benchmark driver.

pub mod builtin;
pub mod generate;
pub mod metrics;
pub mod runner;
pub mod worked_example;

pub use builtin::{builtin, GroundTruth, BUILTIN_NAMES};
pub use generate::{derive_seed, generate_dataset, split_dataset, GenConfig, GenMode, DEFAULT_SEED};
pub use metrics::{evaluate, EvalMetrics};
pub use runner::{run_benchmark, run_cell, BenchConfig, BenchReport, BenchRow, Learner, RunResult};
