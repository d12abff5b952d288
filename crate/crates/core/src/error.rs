use thiserror::Error;

/// Which admissibility check a projection failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionCheck {
    /// The matrix does not have rank 2 or does not match the ambient dimension.
    Shape,
    /// Some branch lost multiplicity.
    Multiplicity,
    /// Some image branch is not primitive.
    Primitivity,
    /// Two image branches define the same plane germ.
    Coincidence,
}

impl std::fmt::Display for ProjectionCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Shape => "shape",
            Self::Multiplicity => "multiplicity",
            Self::Primitivity => "primitivity",
            Self::Coincidence => "coincidence",
        })
    }
}

/// Every domain failure of the library. [`Error::name`] gives the stable
/// identifier reported by the command line.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("resultant input has degree zero in the eliminated variable")]
    DegenerateResultant,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("invalid branch `{label}`: {reason}")]
    InvalidBranch { label: String, reason: String },
    #[error("branch `{label}` does not pass through the origin")]
    BranchNotThroughOrigin { label: String },
    #[error("branch `{label}` is not primitive")]
    NonPrimitive { label: String },
    #[error("branch `{label}` vanishes identically at t = {t}")]
    DegenerateFiber { label: String, t: String },
    #[error("branch `{label}` is not primitive at t = {t}")]
    NonPrimitiveFiber { label: String, t: String },
    #[error("branches `{first}` and `{second}` define the same germ")]
    CoincidentBranches { first: String, second: String },
    #[error("branch `{label}` revisits the origin at parameter values outside ℚ(i)")]
    SelfOverlappingParametrization { label: String },
    #[error("no stabilization up to truncation {limit}")]
    PrecisionExhausted { limit: usize },
    #[error("projection is not generic: {check} check failed")]
    NotGenericProjection { check: ProjectionCheck },
    #[error("genericity could not be certified: {reason}")]
    InconclusiveGenericity { reason: String },
    #[error("the s-invariant needs at least two branches")]
    UndefinedForIrreducible,
    #[error("unknown example `{name}`; available: {available}")]
    UnknownExample { name: String, available: String },
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Self::DegenerateResultant => "DegenerateResultant",
            Self::ZeroInput => "ZeroInput",
            Self::InvalidBranch { .. } => "InvalidBranch",
            Self::BranchNotThroughOrigin { .. } => "BranchNotThroughOrigin",
            Self::NonPrimitive { .. } => "NonPrimitive",
            Self::DegenerateFiber { .. } => "DegenerateFiber",
            Self::NonPrimitiveFiber { .. } => "NonPrimitiveFiber",
            Self::CoincidentBranches { .. } => "CoincidentBranches",
            Self::SelfOverlappingParametrization { .. } => "SelfOverlappingParametrization",
            Self::PrecisionExhausted { .. } => "PrecisionExhausted",
            Self::NotGenericProjection { .. } => "NotGenericProjection",
            Self::InconclusiveGenericity { .. } => "InconclusiveGenericity",
            Self::UndefinedForIrreducible => "UndefinedForIrreducible",
            Self::UnknownExample { .. } => "UnknownExample",
            Self::InvalidInput(_) => "InvalidInput",
        }
    }
}
