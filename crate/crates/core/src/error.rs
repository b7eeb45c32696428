use thiserror::Error;

/// Sections whose geometry makes the design equations undefined.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("effective depth is not positive (h = {h} m, d_c = {d_c} m)")]
    NonPositiveEffectiveDepth { h: f64, d_c: f64 },
    #[error("bar spacing is negative (b = {b} m < 2·d_c = {} m)", 2.0 * d_c)]
    NegativeSpacing { b: f64, d_c: f64 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("bar catalog: {0}")]
    Catalog(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("no feasible initial position after {attempts} attempts ({found} of {wanted} found)")]
    InitializationFailure {
        attempts: usize,
        found: usize,
        wanted: usize,
    },
    #[error("no feasible point among {evaluated} grid points")]
    NoFeasiblePoint { evaluated: usize },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Catalog(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
