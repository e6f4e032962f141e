use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("direction {0} not in X")]
    UnknownDirection(u64),

    #[error("unsupported dimension d={d}: {reason}")]
    UnsupportedDimension { d: u32, reason: String },

    #[error("radius {radius} exceeds feasible bound: ball of size {work} > limit {limit}")]
    RadiusInfeasible { radius: u32, work: u128, limit: u64 },

    #[error("explicit mode needs d <= {cap} (got d={d}); set CUBEFACTORS_MAX_EXPLICIT_D to override")]
    ExplicitCapExceeded { d: u32, cap: u32 },

    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),

    #[error("overlapping swap regions at edge ({lo:#x}, direction index {dir})")]
    OverlappingSwapRegions { lo: u64, dir: usize },

    #[error("invalid subset of factors: {0}")]
    InvalidSubset(String),

    #[error("vertex {0:#x} is not a codeword")]
    NotACodeword(u64),

    #[error("r(M) computation needs d <= {cap} (got d={d})")]
    RminGuard { d: u32, cap: u32 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
