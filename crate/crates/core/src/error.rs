use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element does not live in the semigroup's ambient group: {0}")]
    AmbientMismatch(String),
    #[error("operation requires a numerical semigroup (free rank 1, no torsion)")]
    NotNumerical,
    #[error("element {0} is not in the semigroup")]
    NotInSemigroup(String),
    #[error("generator subset must be nonempty")]
    EmptySubset,
    #[error("generator index {0} out of range")]
    BadGeneratorIndex(usize),
    #[error("factorizations have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("semigroup is not reduced: generator {0} has zero free part")]
    NotReduced(usize),
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("no fit: {0}")]
    NoFit(String),
    #[error("no quasipolynomial fit within degree <= {degree_bound} and period dividing {period_bound}")]
    NoFitWithinBounds { degree_bound: usize, period_bound: u64 },
    #[error("empty range")]
    EmptyRange,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed document: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AmbientMismatch(_) => "AmbientMismatch",
            Error::NotNumerical => "NotNumerical",
            Error::NotInSemigroup(_) => "NotInSemigroup",
            Error::EmptySubset => "EmptySubset",
            Error::BadGeneratorIndex(_) => "BadGeneratorIndex",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::NotReduced(_) => "NotReduced",
            Error::InvalidSemigroup(_) => "InvalidSemigroup",
            Error::InsufficientSamples(_) => "InsufficientSamples",
            Error::NoFit(_) => "NoFit",
            Error::NoFitWithinBounds { .. } => "NoFitWithinBounds",
            Error::EmptyRange => "EmptyRange",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}
