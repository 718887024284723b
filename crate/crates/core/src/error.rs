use alloc::string::String;
use core::fmt;

/// Errors raised by the exact-arithmetic and dynamics routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different fields (or different orders/moduli).
    MixedFields,
    DivisionByZero,
    /// A field parameter that must be prime was not.
    NotPrime(u64),
    ZeroInput,
    DimensionMismatch { expected: usize, found: usize },
    DegreeTooSmall { required: usize, given: usize },
    InvalidChart { chart: usize, dim: usize },
    NotHomogeneous,
    /// Dehomogenizing on this chart does not give a polynomial map.
    NotPolynomialOnChart(usize),
    ZeroMap,
    /// Heights are only defined here for points with rational coordinates.
    NotRational,
    StrategyInapplicable(String),
    /// A configured size cap would be exceeded.
    ExplosionGuard { what: &'static str, count: u128, cap: u128 },
    UnsupportedOrder(u64),
    NotCommuting,
    NotPeriodic,
    /// The point stream ran out before the Veronese matrix reached full rank.
    StreamExhausted { rank: usize, needed: usize },
    SingularFrame,
    NoGoodPrime,
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MixedFields => write!(f, "operands belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroInput => write!(f, "input must be nonzero"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DegreeTooSmall { required, given } => {
                write!(f, "degree {given} is smaller than the map degree {required}")
            }
            Error::InvalidChart { chart, dim } => {
                write!(f, "chart {chart} out of range for {dim} homogeneous coordinates")
            }
            Error::NotHomogeneous => write!(f, "components are not homogeneous of a common degree"),
            Error::NotPolynomialOnChart(c) => write!(f, "map is not polynomial on chart {c}"),
            Error::ZeroMap => write!(f, "all components vanish identically"),
            Error::NotRational => write!(f, "point does not have rational coordinates"),
            Error::StrategyInapplicable(why) => write!(f, "strategy not applicable: {why}"),
            Error::ExplosionGuard { what, count, cap } => {
                write!(f, "{what}: {count} exceeds the configured cap {cap}")
            }
            Error::UnsupportedOrder(n) => write!(f, "unsupported root-of-unity order {n}"),
            Error::NotCommuting => write!(f, "maps do not commute"),
            Error::NotPeriodic => write!(f, "point is not periodic"),
            Error::StreamExhausted { rank, needed } => {
                write!(f, "point stream exhausted at rank {rank} of {needed}")
            }
            Error::SingularFrame => write!(f, "evaluation matrix is singular"),
            Error::NoGoodPrime => write!(f, "no sampled prime has good reduction"),
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
        }
    }
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedFields => "MixedFields",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroInput => "ZeroInput",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::InvalidChart { .. } => "InvalidChart",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotPolynomialOnChart(_) => "NotPolynomialOnChart",
            Error::ZeroMap => "ZeroMap",
            Error::NotRational => "NotRational",
            Error::StrategyInapplicable(_) => "StrategyInapplicable",
            Error::ExplosionGuard { .. } => "ExplosionGuard",
            Error::UnsupportedOrder(_) => "UnsupportedOrder",
            Error::NotCommuting => "NotCommuting",
            Error::NotPeriodic => "NotPeriodic",
            Error::StreamExhausted { .. } => "StreamExhausted",
            Error::SingularFrame => "SingularFrame",
            Error::NoGoodPrime => "NoGoodPrime",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
