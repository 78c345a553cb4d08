use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("map is not well defined: {0}")]
    IllDefined(String),
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("not a chain map: commutation fails at degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("composite of consecutive maps is nonzero at degree {degree}")]
    NonzeroComposite { degree: i64 },
    #[error("bounded and periodic complexes cannot be combined here")]
    VariantMismatch,
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("not degreewise short exact at degree {degree}")]
    NotShortExact { degree: i64 },
    #[error("hypotheses unmet: {0}")]
    Hypotheses(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
