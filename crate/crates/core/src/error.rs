use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid symbol {0:?}: {1}")]
    InvalidSymbol(String, &'static str),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("word `{0}` appears with both labels")]
    LabelConflict(String),

    #[error("word `{0}` is not well-matched")]
    NotWellMatched(String),

    #[error("malformed stack-aware symbol `{0}`")]
    MalformedStackAware(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("no well-matched samples")]
    NoWellMatchedSamples,

    #[error("unknown grammar `{0}`")]
    UnknownGrammar(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("cannot split dataset: {0}")]
    Split(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
