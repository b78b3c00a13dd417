use alloc::string::String;
use core::fmt;

/// Errors produced by the algorithmic core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate is non-finite or outside [-180, 180] x [-90, 90].
    InvalidCoordinate { lng: f64, lat: f64 },
    /// An operation that needs at least one point received none.
    EmptyInput,
    /// Flat-kernel mean shift found no point inside the window.
    IsolatedPoint,
    /// K-means was given more seeds than data points.
    TooManySeeds { seeds: usize, points: usize },
    /// A cluster validity index is undefined for this (k, n) combination.
    UndefinedIndex { k: usize, n: usize },
    /// A life circle contains no POI mass; the caller drops it.
    EmptyLifeCircle,
    /// Every life circle of a passenger was empty; the passenger is dropped.
    AllCirclesEmpty,
    /// The requested uid is not present in any fitted model.
    UnknownUid(String),
    /// An attribute or hyperparameter configuration is inconsistent.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCoordinate { lng, lat } => {
                write!(f, "invalid coordinate (lng {lng}, lat {lat})")
            }
            Error::EmptyInput => write!(f, "empty input"),
            Error::IsolatedPoint => write!(f, "no point inside the flat-kernel window"),
            Error::TooManySeeds { seeds, points } => {
                write!(f, "{seeds} seeds but only {points} points")
            }
            Error::UndefinedIndex { k, n } => {
                write!(f, "index undefined for k={k}, n={n}")
            }
            Error::EmptyLifeCircle => write!(f, "life circle contains no POI mass"),
            Error::AllCirclesEmpty => write!(f, "all life circles of the passenger are empty"),
            Error::UnknownUid(uid) => write!(f, "uid {uid} not found in any model"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
