use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid symmetry numbers: {0}")]
    InvalidSymmetry(String),
    #[error("infeasible timing: {reason} (minimum feasible nutation frequency {min_nut_hz:.1} Hz)")]
    InfeasibleTiming { reason: String, min_nut_hz: f64 },
    #[error("element duration mismatch: expected {expected_s} s, found {found_s} s")]
    DurationMismatch { expected_s: f64, found_s: f64 },
    #[error("term {0} is not symmetry-allowed")]
    TermNotAllowed(String),
    #[error("symmetry is not in the singlet-triplet class: {0}")]
    NotSingletTriplet(String),
    #[error("sequence contains a filter marker at event {0}")]
    FilterMarker(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
