//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// All failures raised by the library.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// so that front ends can report errors without parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("polynomial expansion exceeded the term ceiling of {limit}")]
    TermLimit { limit: usize },

    #[error("partition {parts:?} has more than {max} parts")]
    TooManyParts { parts: Vec<u32>, max: usize },

    #[error("not a partition (parts must be weakly decreasing): {0:?}")]
    NotPartition(Vec<u32>),

    #[error("not a strict partition (parts must be strictly decreasing and positive): {0:?}")]
    NotStrictPartition(Vec<u32>),

    #[error("invalid dimension sequence {dims:?}: {reason}")]
    InvalidDims { dims: Vec<usize>, reason: String },

    #[error("invalid strict partition {mu:?}: {reason}")]
    InvalidMu { mu: Vec<u32>, reason: String },

    #[error("inadmissible strict partition {mu:?}: parts {a} and {b} sum to 2n+1 = {sum}")]
    Inadmissible { mu: Vec<u32>, a: u32, b: u32, sum: u32 },

    #[error("partition {lambda:?} does not fit in the {rows}x{cols} rectangle: {reason}")]
    LambdaOutOfBounds { lambda: Vec<u32>, rows: usize, cols: u32, reason: String },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("halving requested on a geometry without two isomorphic components ({0})")]
    NotHalvable(String),

    #[error("Segre class of bundle `{0}` is not in the reference chain")]
    UnknownBundle(String),

    #[error("reference chain of length {chain} needs {expected} line classes, got {found}")]
    ChainMismatch { chain: usize, expected: usize, found: usize },

    #[error("line class at position {0} is not of grade 1")]
    NotLineClass(usize),

    #[error("no stepwise oracle for family {0}")]
    OracleUnsupported(String),

    #[error("syntax error at column {column}: {message}{}", expected_suffix(expected))]
    Parse { column: usize, message: String, expected: Vec<String> },

    #[error("variable x{index} at column {column} is out of range (d = {d})")]
    VariableOutOfRange { index: usize, d: usize, column: usize },

    #[error("missing field `{0}`")]
    MissingField(String),

    #[error("invalid value for `{field}`: {reason}")]
    InvalidField { field: String, reason: String },

    #[error("cannot read job input: {0}")]
    Input(String),
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ArityMismatch { .. } => "E_ARITY",
            Error::TermLimit { .. } => "E_TERM_LIMIT",
            Error::TooManyParts { .. } => "E_TOO_MANY_PARTS",
            Error::NotPartition(_) => "E_NOT_PARTITION",
            Error::NotStrictPartition(_) => "E_NOT_STRICT",
            Error::InvalidDims { .. } => "E_DIMS",
            Error::InvalidMu { .. } => "E_MU",
            Error::Inadmissible { .. } => "E_INADMISSIBLE",
            Error::LambdaOutOfBounds { .. } => "E_LAMBDA_BOUNDS",
            Error::InvalidGeometry(_) => "E_GEOMETRY",
            Error::NotHalvable(_) => "E_NOT_HALVABLE",
            Error::UnknownBundle(_) => "E_UNKNOWN_BUNDLE",
            Error::ChainMismatch { .. } => "E_CHAIN",
            Error::NotLineClass(_) => "E_LINE_CLASS",
            Error::OracleUnsupported(_) => "E_ORACLE_UNSUPPORTED",
            Error::Parse { .. } => "E_PARSE",
            Error::VariableOutOfRange { .. } => "E_VARIABLE",
            Error::MissingField(_) => "E_MISSING_FIELD",
            Error::InvalidField { .. } => "E_INVALID_FIELD",
            Error::Input(_) => "E_INPUT",
        }
    }
}
