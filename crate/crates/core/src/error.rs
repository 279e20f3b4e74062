use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("Weyl group exceeds the size bound of {0} elements")]
    WeylTooLarge(usize),
    #[error("sublattice of rank {rank} in ambient rank {ambient}: quotient is infinite")]
    InfiniteQuotient { rank: usize, ambient: usize },
    #[error("invalid cover data: {0}")]
    InvalidCover(String),
    #[error("epsilon = -1 requires even degree, got n = {0}")]
    EpsilonOddDegree(u32),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("pole: chi_alpha = 1 at positive root #{root} {coords:?}")]
    Pole { root: usize, coords: Vec<i64> },
    #[error("metaplectic-type cover: {0}")]
    Metaplectic(String),
    #[error("datum is not semisimple: {0}")]
    NonSemisimple(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator would contain Gauss symbols")]
    GaussDenominator,
    #[error("points are not congruent modulo Y_Qn: {0}")]
    NotCongruent(String),
    #[error("Gauss phases violate the product relation: {0}")]
    BadPhases(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for mathematical domain errors, false for malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::InvalidDatum(_) | Error::InvalidCover(_) | Error::InvalidCharacter(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
