use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("pairing ({0}) is not an integer; the twist would need fractional powers of q")]
    NonIntegralPairing(String),
    #[error("q = {0} is not allowed (0 and ±1 are excluded)")]
    InvalidSpecialization(String),
    #[error("denominator vanishes at q = {0}")]
    VanishingDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("Laurent polynomial is not of degree zero in the x-variables")]
    NotDegreeZero,
    #[error("element is not self-reciprocal under qK ↦ (qK)^-1")]
    NotSelfReciprocal,
    #[error("element has nonzero degree {0} and does not lie in U_0")]
    NonzeroDegree(i64),
    #[error("rank must be even, got {0}")]
    OddRank(usize),
    #[error("vector is not in the root lattice")]
    NotInRootLattice,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("malformed data: {0}")]
    Malformed(String),
}
