use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A test set with no anchor to compare against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingAnchor {
    pub system: String,
    pub target_language: String,
    pub vowel: String,
}

impl fmt::Display for MissingAnchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, /{}/) needed by system {}", self.target_language, self.vowel, self.system)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {}", .0.display())]
    MissingFile(PathBuf),

    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),

    #[error("audio contains no samples")]
    EmptyAudio,

    #[error("signal too short: {0}")]
    TooShort(String),

    #[error("no voiced segment found")]
    NoVoicedSegment,

    #[error("degenerate analysis frame (zero energy)")]
    DegenerateFrame,

    #[error("fewer than two formant candidates ({found} found)")]
    InsufficientFormants { found: usize },

    #[error("no formant candidates inside the F1/F2 gates (candidates: {candidates:?})")]
    GateViolation { candidates: Vec<f64> },

    #[error("empty list")]
    EmptyList,

    #[error("unknown language code {0:?}")]
    UnknownLanguage(String),

    #[error("vowel /{vowel}/ belongs to neither {a} nor {b}")]
    VowelNotInPair { vowel: String, a: String, b: String },

    #[error("invalid inventory: {0}")]
    InvalidInventory(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("zero variance: {0}")]
    ZeroVariance(String),

    #[error("missing anchor for {}", join_missing(.0))]
    MissingAnchor(Vec<MissingAnchor>),

    #[error("{}:{line}: schema mismatch: {message}", .path.display())]
    SchemaMismatch { path: PathBuf, line: u64, message: String },

    #[error("nothing to plot")]
    EmptyPlot,

    #[error("unknown selector: {0}")]
    UnknownSelector(String),

    #[error("manifest line {line}: {message}")]
    ManifestParse { line: u64, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_missing(items: &[MissingAnchor]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl Error {
    /// Process exit status: 2 when the inputs hold no usable data, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmptyAudio
            | Error::TooShort(_)
            | Error::NoVoicedSegment
            | Error::DegenerateFrame
            | Error::InsufficientFormants { .. }
            | Error::GateViolation { .. }
            | Error::EmptyList
            | Error::InsufficientData(_)
            | Error::ZeroVariance(_)
            | Error::MissingAnchor(_)
            | Error::EmptyPlot => 2,
            _ => 1,
        }
    }

    /// Short stable name, used in error sidecars.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MissingFile(_) => "MissingFile",
            Error::UnsupportedFormat(_) => "UnsupportedFormat",
            Error::EmptyAudio => "EmptyAudio",
            Error::TooShort(_) => "TooShort",
            Error::NoVoicedSegment => "NoVoicedSegment",
            Error::DegenerateFrame => "DegenerateFrame",
            Error::InsufficientFormants { .. } => "InsufficientFormants",
            Error::GateViolation { .. } => "GateViolation",
            Error::EmptyList => "EmptyList",
            Error::UnknownLanguage(_) => "UnknownLanguage",
            Error::VowelNotInPair { .. } => "VowelNotInPair",
            Error::InvalidInventory(_) => "InvalidInventory",
            Error::InsufficientData(_) => "InsufficientData",
            Error::ZeroVariance(_) => "ZeroVariance",
            Error::MissingAnchor(_) => "MissingAnchor",
            Error::SchemaMismatch { .. } => "SchemaMismatch",
            Error::EmptyPlot => "EmptyPlot",
            Error::UnknownSelector(_) => "UnknownSelector",
            Error::ManifestParse { .. } => "ManifestParseError",
            Error::Config(_) => "ConfigError",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }
}
