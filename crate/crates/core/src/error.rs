use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscordError {
    #[error("populations sum to {trace}, expected 1")]
    Trace { trace: f64 },
    #[error("state is not positive semidefinite: {0}")]
    Positivity(String),
    #[error("non-finite or out-of-range input: {0}")]
    Domain(String),
    #[error("degenerate POVM weights: {0}")]
    Degenerate(String),
    #[error("outcome has zero probability (1 + A m_z = {0})")]
    ZeroProbability(f64),
    #[error("negative eigenvalue {0} beyond rounding tolerance")]
    NegativeEigenvalue(f64),
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("record `{name}`: {source}")]
    Record {
        name: String,
        #[source]
        source: Box<DiscordError>,
    },
    #[error("output error: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, DiscordError>;
