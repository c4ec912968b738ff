//! Command-line front end.
//!
//! Every command appends `key=value` lines to a run manifest, which goes to
//! stdout unless `--manifest` names a file. Exit codes: 0 success, 2 bad
//! input, 3 label conflict, 4 no well-matched samples, 5 generation failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::automata::{dfa_to_dot, parse_vdpa, vdpa_to_dot, write_dfa, write_vdpa, Acceptor, Model, Symbol};
use crate::bench::{
    builtin, derive_seed, evaluate, generate_dataset, run_benchmark, split_dataset, BenchConfig, GenConfig,
    GenMode, GroundTruth, BUILTIN_NAMES, DEFAULT_SEED,
};
use crate::dataset::{parse_alphabet, parse_dataset, write_alphabet, LabeledDataset};
use crate::error::{Error, Result};
use crate::papni::{papni_learn, PapniConfig};
use crate::preprocessing::{is_well_matched, preprocess_dataset};
use crate::rpni::Backend;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LABEL_CONFLICT: i32 = 3;
pub const EXIT_NO_WELL_MATCHED: i32 = 4;
pub const EXIT_GENERATION: i32 = 5;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::LabelConflict(_) => EXIT_LABEL_CONFLICT,
        Error::NoWellMatchedSamples => EXIT_NO_WELL_MATCHED,
        Error::GenerationFailed(_) => EXIT_GENERATION,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Parser)]
#[command(name = "papni", version, about = "Passive learning of visibly deterministic pushdown automata")]
pub struct Cli {
    /// Write the run manifest here instead of stdout.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn a model from a labelled dataset.
    Learn(LearnArgs),
    /// Sample a labelled dataset from a built-in grammar.
    Generate(GenerateArgs),
    /// Score a model against a labelled dataset.
    Eval(EvalArgs),
    /// Report which samples are well-matched.
    Check(CheckArgs),
    /// Compare RPNI on raw words against PAPNI over built-in grammars.
    Benchmark(BenchmarkArgs),
    /// Re-emit a model as canonical text or DOT.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Alphabet file; required in `vdpa` mode.
    #[arg(long)]
    pub alphabet: Option<PathBuf>,
    /// Output model path. A `.dot` rendering is written next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "rpni")]
    pub backend: Backend,
    /// `vdpa` learns through the stack-aware reduction; `dfa` runs the
    /// backend directly on the raw words.
    #[arg(long, value_enum, default_value = "vdpa")]
    pub mode: LearnMode,
    /// Print the preprocessing report to stderr.
    #[arg(long)]
    pub report_dropped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum LearnMode {
    Dfa,
    Vdpa,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["grammar", "automaton"])))]
pub struct GenerateArgs {
    /// Built-in ground truth.
    #[arg(long)]
    pub grammar: Option<String>,
    /// Ground-truth VDPA in the textual automaton format.
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    /// Output path, or prefix for `<prefix>.train` and `<prefix>.eval` with `--split`.
    #[arg(long)]
    pub out: PathBuf,
    /// Split into disjoint training and evaluation files.
    #[arg(long)]
    pub split: bool,
    /// Also write the grammar's alphabet file here.
    #[arg(long)]
    pub alphabet_out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub total: usize,
    #[arg(long, default_value_t = 4)]
    pub len_min: usize,
    #[arg(long, default_value_t = 50)]
    pub len_max: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "uniform")]
    pub mode: GenMode,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub alphabet: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// Comma-separated grammar names.
    #[arg(long, value_delimiter = ',', default_value = "balanced_parens,arithmetic_expr,anbn,dyck2")]
    pub grammars: Vec<String>,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long, default_value_t = 10_000)]
    pub total: usize,
    #[arg(long, default_value_t = 4)]
    pub len_min: usize,
    #[arg(long, default_value_t = 50)]
    pub len_max: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Backend shared by both learners.
    #[arg(long, default_value = "edsm")]
    pub backend: Backend,
    #[arg(long, default_value = "balanced")]
    pub mode: GenMode,
    /// Write the per-row report here as well.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConvertFormat {
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, value_enum, default_value = "dot")]
    pub to: ConvertFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Ordered `key=value` record of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunManifest {
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut os = prefix.as_os_str().to_owned();
    os.push(".");
    os.push(suffix);
    PathBuf::from(os)
}

fn load_dataset(path: &Path) -> Result<LabeledDataset<Symbol>> {
    parse_dataset(&read(path)?)
}

fn model_dot(model: &Model) -> String {
    match model {
        Model::Dfa(d) => dfa_to_dot(d),
        Model::Vdpa(v) => vdpa_to_dot(v),
    }
}

fn learn(args: &LearnArgs, m: &mut RunManifest, stderr: &mut dyn Write) -> Result<()> {
    let data = load_dataset(&args.data)?;
    if data.is_empty() {
        return Err(Error::InvalidConfig(format!("{} holds no samples", args.data.display())));
    }
    m.push("data", args.data.display());
    m.push("samples", data.len());
    m.push("backend", args.backend.name());
    let model = if args.mode == LearnMode::Dfa {
        let mut dfa = args.backend.learn(&data)?;
        if let Some(path) = &args.alphabet {
            dfa.extend_alphabet(parse_alphabet(&read(path)?)?.symbols());
        }
        m.push("mode", "dfa");
        Model::Dfa(dfa)
    } else {
        let path = args
            .alphabet
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("--alphabet is required in vdpa mode".into()))?;
        let alphabet = parse_alphabet(&read(path)?)?;
        let cfg = PapniConfig { backend: args.backend, report_dropped: args.report_dropped };
        let (vdpa, report) = papni_learn(&data, &alphabet, cfg)?;
        m.push("mode", "vdpa");
        m.push("alphabet", path.display());
        m.push("kept", report.kept);
        m.push("dropped_positive", report.dropped_positive);
        m.push("dropped_negative", report.dropped_negative);
        m.push("stack_aware_symbols", report.observed.len());
        m.push("stack_aware_bound", report.bound);
        if cfg.report_dropped {
            write!(stderr, "{report}")?;
        } else {
            for a in &report.anomalies {
                writeln!(stderr, "warning: positive sample is not well-matched: {a}")?;
            }
        }
        Model::Vdpa(vdpa)
    };
    let dot_path = args.out.with_extension("dot");
    write(&args.out, &model.to_text())?;
    write(&dot_path, &model_dot(&model))?;
    m.push("states", model.size());
    m.push("model", args.out.display());
    m.push("dot", dot_path.display());
    Ok(())
}

fn generate(args: &GenerateArgs, m: &mut RunManifest) -> Result<()> {
    let gt = match (&args.grammar, &args.automaton) {
        (Some(name), _) => builtin(name)?,
        (None, Some(path)) => GroundTruth::new(path.display().to_string(), parse_vdpa(&read(path)?)?),
        (None, None) => unreachable!("clap requires a source"),
    };
    let cfg = GenConfig {
        total: args.total,
        len_min: args.len_min,
        len_max: args.len_max,
        seed: args.seed,
        mode: args.mode,
    };
    let data = generate_dataset(&gt, &cfg)?;
    if args.split {
        let (train, eval) = split_dataset(&data, derive_seed(args.seed, 1))?;
        let train_path = with_suffix(&args.out, "train");
        let eval_path = with_suffix(&args.out, "eval");
        write(&train_path, &train.to_text())?;
        write(&eval_path, &eval.to_text())?;
        m.push("train", train_path.display());
        m.push("train_samples", train.len());
        m.push("eval", eval_path.display());
        m.push("eval_samples", eval.len());
    } else {
        write(&args.out, &data.to_text())?;
        m.push("data", args.out.display());
    }
    if let Some(path) = &args.alphabet_out {
        write(path, &write_alphabet(gt.alphabet()))?;
        m.push("alphabet", path.display());
    }
    m.push("grammar", &gt.name);
    m.push("total", args.total);
    m.push("len_min", args.len_min);
    m.push("len_max", args.len_max);
    m.push("seed", args.seed);
    m.push("mode", format!("{:?}", args.mode).to_lowercase());
    m.push("samples", data.len());
    m.push("positives", data.positives());
    m.push("negatives", data.negatives());
    Ok(())
}

fn eval(args: &EvalArgs, m: &mut RunManifest) -> Result<()> {
    let model = Model::parse(&read(&args.model)?)?;
    let data = load_dataset(&args.data)?;
    let metrics = evaluate(&model, &data);
    m.push("model", args.model.display());
    m.push("data", args.data.display());
    m.push("states", model.num_states());
    m.push("samples", data.len());
    m.push("tp", metrics.tp);
    m.push("fp", metrics.fp);
    m.push("fn", metrics.fn_);
    m.push("tn", metrics.tn);
    m.push("precision", format!("{:.6}", metrics.precision));
    m.push("recall", format!("{:.6}", metrics.recall));
    m.push("f1", format!("{:.6}", metrics.f1));
    Ok(())
}

fn check(args: &CheckArgs, m: &mut RunManifest, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let data = load_dataset(&args.data)?;
    let alphabet = parse_alphabet(&read(&args.alphabet)?)?;
    for (i, s) in data.iter().enumerate() {
        let verdict = is_well_matched(&s.word, &alphabet)?;
        writeln!(stdout, "sample={} label={} well_matched={verdict}", i + 1, if s.label { '+' } else { '-' })?;
    }
    let (_, report) = preprocess_dataset(&data, &alphabet)?;
    m.push("samples", data.len());
    m.push("well_matched", report.kept);
    m.push("dropped_positive", report.dropped_positive);
    m.push("dropped_negative", report.dropped_negative);
    m.push("stack_aware_symbols", report.observed.len());
    m.push("stack_aware_bound", report.bound);
    for a in &report.anomalies {
        writeln!(stderr, "warning: positive sample is not well-matched: {a}")?;
    }
    Ok(())
}

fn benchmark(args: &BenchmarkArgs, m: &mut RunManifest, stdout: &mut dyn Write) -> Result<()> {
    let cfg = BenchConfig {
        grammars: args.grammars.clone(),
        repeats: args.repeats,
        total: args.total,
        len_min: args.len_min,
        len_max: args.len_max,
        seed: args.seed,
        backend: args.backend,
        mode: args.mode,
    };
    let report = run_benchmark(&cfg)?;
    let text = report.to_text();
    stdout.write_all(text.as_bytes())?;
    if let Some(path) = &args.out {
        write(path, &text)?;
        m.push("report", path.display());
    }
    m.push("grammars", args.grammars.join(","));
    m.push("repeats", args.repeats);
    m.push("total", args.total);
    m.push("seed", args.seed);
    m.push("backend", args.backend.name());
    m.push("mode", format!("{:?}", args.mode).to_lowercase());
    Ok(())
}

fn convert(args: &ConvertArgs, m: &mut RunManifest, stdout: &mut dyn Write) -> Result<()> {
    let model = Model::parse(&read(&args.model)?)?;
    let text = match args.to {
        ConvertFormat::Dot => model_dot(&model),
        ConvertFormat::Text => match &model {
            Model::Dfa(d) => write_dfa(d),
            Model::Vdpa(v) => write_vdpa(v),
        },
    };
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            m.push("out", path.display());
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    m.push("states", model.size());
    Ok(())
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<RunManifest> {
    let mut m = RunManifest::default();
    let name = match &cli.command {
        Command::Learn(_) => "learn",
        Command::Generate(_) => "generate",
        Command::Eval(_) => "eval",
        Command::Check(_) => "check",
        Command::Benchmark(_) => "benchmark",
        Command::Convert(_) => "convert",
    };
    m.push("command", name);
    m.push("version", env!("CARGO_PKG_VERSION"));
    match &cli.command {
        Command::Learn(a) => learn(a, &mut m, stderr)?,
        Command::Generate(a) => generate(a, &mut m)?,
        Command::Eval(a) => eval(a, &mut m)?,
        Command::Check(a) => check(a, &mut m, stdout, stderr)?,
        Command::Benchmark(a) => benchmark(a, &mut m, stdout)?,
        Command::Convert(a) => convert(a, &mut m, stdout)?,
    }
    Ok(m)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let outcome = execute(&cli, stdout, stderr).and_then(|m| {
        match &cli.manifest {
            Some(path) => write(path, &m.to_text())?,
            None => stdout.write_all(m.to_text().as_bytes())?,
        }
        Ok(())
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let Error::UnknownGrammar(_) = e {
                let _ = writeln!(stderr, "known grammars: {}", BUILTIN_NAMES.join(", "));
            }
            exit_code(&e)
        }
    }
}
