use thiserror::Error;

use crate::tree::TreeError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("vector is not of unit length (norm {0})")]
    NonUnit(f64),
    #[error("index {index} out of range for {n} points")]
    Index { index: usize, n: usize },
    #[error("scale {t} at vertex {vertex} is not below the chart radius {radius}")]
    ScaleBound { vertex: usize, t: f64, radius: f64 },
    #[error("configuration at vertex {0} is not normalized")]
    NotNormalized(usize),
    #[error("point lies outside the chart of the given tree")]
    OutsideChart,
    #[error("direction data has exclusions; reconstruction needs an undegenerate point")]
    Exclusions,
    #[error("no ray intersection found for the remaining indices")]
    NoIntersection,
    #[error("{0}")]
    Parameter(String),
    #[error("map is not monotone")]
    NotMonotone,
    #[error("tree is not planar")]
    NotPlanar,
    #[error("{0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Tree(_) => "tree",
            Error::Duplicate(..) => "duplicate",
            Error::Dimension { .. } => "dimension",
            Error::NonFinite => "non-finite",
            Error::NonUnit(_) => "non-unit",
            Error::Index { .. } => "index",
            Error::ScaleBound { .. } => "scale-bound",
            Error::NotNormalized(_) => "not-normalized",
            Error::OutsideChart => "outside-chart",
            Error::Exclusions => "exclusions",
            Error::NoIntersection => "no-intersection",
            Error::Parameter(_) => "parameter",
            Error::NotMonotone => "not-monotone",
            Error::NotPlanar => "not-planar",
            Error::Malformed(_) => "malformed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
