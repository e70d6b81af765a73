use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid squared-distance matrix: {0}")]
    InvalidDistanceMatrix(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("radius at index {index} is zero")]
    ZeroRadius { index: usize },
    #[error("curvature at index {index} is zero")]
    ZeroCurvature { index: usize },
    #[error("{count} negative radii; at most one circle may enclose the others")]
    MultipleNegative { count: usize },
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("quadratic has no real solution (discriminant {0})")]
    NoRealSolution(String),
    #[error("root is irrational; float mode is required")]
    FloatModeRequired,
    #[error("curvatures do not satisfy the tangency identity (residual {0})")]
    InconsistentConfiguration(String),
    #[error("distances need {rank} dimensions but only {dim} were requested")]
    RankExceedsDim { rank: usize, dim: usize },
    #[error("distances are not Euclidean (eigenvalue {0})")]
    NonEuclidean(String),
    #[error("no point satisfies the requested distances: {0}")]
    NoSolution(String),
    #[error("point is underdetermined: {0}")]
    Ambiguous(String),
    #[error("invalid gasket seed: {0}")]
    InvalidSeed(String),
    #[error("could not place circle: {0}")]
    Geometry(String),
    #[error("depth {requested} exceeds the limit of {limit}")]
    DepthExceeded { requested: usize, limit: usize },
    #[error("gasket has no circles")]
    EmptyGasket,
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NonFinite(_) => "non_finite",
            Error::Singular => "singular",
            Error::InvalidDistanceMatrix(_) => "invalid_distance_matrix",
            Error::InvalidInput(_) => "invalid_input",
            Error::ZeroRadius { .. } => "zero_radius",
            Error::ZeroCurvature { .. } => "zero_curvature",
            Error::MultipleNegative { .. } => "multiple_negative",
            Error::WrongLength { .. } => "wrong_length",
            Error::NoRealSolution(_) => "no_real_solution",
            Error::FloatModeRequired => "float_mode_required",
            Error::InconsistentConfiguration(_) => "inconsistent_configuration",
            Error::RankExceedsDim { .. } => "rank_exceeds_dim",
            Error::NonEuclidean(_) => "non_euclidean",
            Error::NoSolution(_) => "no_solution",
            Error::Ambiguous(_) => "ambiguous",
            Error::InvalidSeed(_) => "invalid_seed",
            Error::Geometry(_) => "geometry",
            Error::DepthExceeded { .. } => "depth_exceeded",
            Error::EmptyGasket => "empty_gasket",
        }
    }

    /// True for errors caused by malformed input rather than by the
    /// mathematics of an otherwise well-formed request.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::NonFinite(_)
                | Error::InvalidDistanceMatrix(_)
                | Error::InvalidInput(_)
                | Error::ZeroRadius { .. }
                | Error::ZeroCurvature { .. }
                | Error::MultipleNegative { .. }
                | Error::WrongLength { .. }
                | Error::InvalidSeed(_)
                | Error::DepthExceeded { .. }
                | Error::EmptyGasket
        )
    }
}
