use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Validation problems (bad input, failed hypotheses) are distinguished from
/// resource bounds so the CLI can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("could not parse rational {0}")]
    BadRational(String),
    #[error("zero normal covector for hyperplane {0}")]
    ZeroNormal(usize),
    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),
    #[error("{0} labels given for {1} hyperplanes")]
    LabelCount(usize, usize),
    #[error("subspace is not a flat of the arrangement")]
    NotAFlat,
    #[error("flat {0} does not exist")]
    UnknownFlat(usize),
    #[error("flat {0} is reducible")]
    ReducibleFlat(usize),
    #[error("weight {mu} is below the codimension of flat {flat}")]
    WeightTooSmall { flat: usize, mu: u32 },
    #[error("matrix is singular")]
    Singular,
    #[error("group has more than {0} elements")]
    GroupBoundExceeded(usize),
    #[error("fixed space computation disagrees with reflection subgroup for flat {0}")]
    SteinbergMismatch(usize),
    #[error("group does not preserve the arrangement")]
    NotPreserved,
    #[error("coefficient rings differ")]
    CoefficientMismatch,
    #[error("coefficient {0} is not an integer")]
    NonIntegralCoefficient(String),
    #[error("invariants with normalised orbit sums need rational coefficients")]
    IntegralInvariants,
    #[error("a reflection group is required for this operation")]
    MissingGroup,
    #[error("flats do not decompose the intersection: {0}")]
    DecompositionHypothesis(String),
    #[error("invalid weighted partition: {0}")]
    InvalidPartition(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("degree {0} must be even")]
    OddDegree(usize),
    #[error("degree {0} exceeds the maximum of {1}")]
    DegreeTooLarge(usize, usize),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures caused by a configured resource bound rather than
    /// by invalid input.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::GroupBoundExceeded(_) | Error::DegreeTooLarge(..))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
