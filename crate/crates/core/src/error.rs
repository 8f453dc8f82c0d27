use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter 0 is not a valid signed letter")]
    ZeroLetter,
    #[error("magnitude {0} appears more than once")]
    DuplicateMagnitude(u32),
    #[error("magnitude {magnitude} is outside 1..={n}")]
    MagnitudeOutOfRange { magnitude: u64, n: usize },
    #[error("letters {0} and {1} have equal magnitudes")]
    EqualMagnitudes(i32, i32),
    #[error("n = {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cap {0} exceeds the hard limit {max}", max = crate::enumeration::MAX_CAP)]
    CapTooLarge(usize),
    #[error("index must be positive")]
    NonpositiveIndex,
    #[error("unknown formula id `{0}`")]
    UnknownId(String),
    #[error("cannot parse pattern `{0}`: {1}")]
    PatternParse(String, &'static str),
    #[error("census file does not match the expected schema: {0}")]
    SchemaMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
