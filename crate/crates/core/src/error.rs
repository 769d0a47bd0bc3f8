use thiserror::Error;

/// Errors raised while building systems or evaluating functions on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IfsError {
    /// The images `f_n([0,1])` do not tile `[0,1]` in order.
    #[error("partition error: {0}")]
    Partition(String),
    /// A weight is nonpositive or the weights do not sum to one.
    #[error("weight error: {0}")]
    Weight(String),
    /// Some map has Lipschitz constant at least one, or is not increasing.
    #[error("contraction error: {0}")]
    Contraction(String),
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation only applies to a narrower class of systems.
    #[error("applicability error: {0}")]
    Applicability(String),
    /// Invalid parameter list (duplicates, out of range, wrong length).
    #[error("parameter error: {0}")]
    Parameter(String),
}

impl IfsError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            IfsError::Partition(_) => "PartitionError",
            IfsError::Weight(_) => "WeightError",
            IfsError::Contraction(_) => "ContractionError",
            IfsError::Domain(_) => "DomainError",
            IfsError::Applicability(_) => "ApplicabilityError",
            IfsError::Parameter(_) => "ParameterError",
        }
    }
}

pub type Result<T> = std::result::Result<T, IfsError>;
