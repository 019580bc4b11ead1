use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a door game needs at least 3 doors, got {0}")]
    InvalidDoorCount(usize),
    #[error("door index {door} out of range for {n_doors} doors")]
    InvalidDoorIndex { door: usize, n_doors: usize },
    #[error("negative probability {0}")]
    NegativeProbability(String),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("host bias {0} outside [0, 1]")]
    InvalidBias(String),
    #[error("host opens the picked door {pick} (car {car})")]
    HostOpensPickedDoor { car: usize, pick: usize },
    #[error("host reveals the car behind door {car} (pick {pick})")]
    HostOpensCarDoor { car: usize, pick: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incomplete game spec: {0}")]
    IncompleteSpec(String),
    #[error("switch probability {value} at (pick {pick}, opened {opened}) outside [0, 1]")]
    InvalidSwitchProbability {
        pick: usize,
        opened: usize,
        value: String,
    },
    #[error("conditioning event (pick {pick}, opened {opened}) has probability zero")]
    UndefinedConditional { pick: usize, opened: usize },
    #[error("proposition does not apply: {0}")]
    InapplicableProposition(String),
    #[error("check does not apply: {0}")]
    InapplicableCheck(String),
    #[error("strategy enumeration supports only 3 doors, got {0}")]
    UnsupportedSize(usize),
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("malformed game spec: {0}")]
    MalformedSpec(String),
    #[error("invalid linear program: {0}")]
    InvalidProgram(String),
    #[error("linear program is unbounded")]
    UnboundedProgram,
}

impl Error {
    /// Stable kebab-case identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDoorCount(_) => "invalid-door-count",
            Error::InvalidDoorIndex { .. } => "invalid-door-index",
            Error::NegativeProbability(_) => "negative-probability",
            Error::NotNormalized(_) => "not-normalized",
            Error::DivisionByZero => "division-by-zero",
            Error::MalformedRational(_) => "malformed-rational",
            Error::InvalidBias(_) => "invalid-bias",
            Error::HostOpensPickedDoor { .. } => "host-opens-picked-door",
            Error::HostOpensCarDoor { .. } => "host-opens-car-door",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::IncompleteSpec(_) => "incomplete-spec",
            Error::InvalidSwitchProbability { .. } => "invalid-switch-probability",
            Error::UndefinedConditional { .. } => "undefined-conditional",
            Error::InapplicableProposition(_) => "inapplicable-proposition",
            Error::InapplicableCheck(_) => "inapplicable-check",
            Error::UnsupportedSize(_) => "unsupported-size",
            Error::InvalidConfig(_) => "invalid-config",
            Error::MalformedSpec(_) => "malformed-spec",
            Error::InvalidProgram(_) => "invalid-program",
            Error::UnboundedProgram => "unbounded-program",
        }
    }
}
