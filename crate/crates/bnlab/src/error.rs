use thiserror::Error;

/// Errors raised by precondition violations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Serre adjoint has negative rank: g - d + r - 1 = {0}")]
    NegativeRank(i64),
    #[error("gonality setup needs g - d + r - 1 >= 0, got {0}")]
    BadGonality(i64),
    #[error("lattice is not hyperbolic: disc = {0} >= 0")]
    IndefiniteH(i64),
    #[error("series is not Brill-Noether special: rho = {0} >= 0")]
    NotSpecial(i64),
    #[error("g^{r}_{d} is not an expected maximal series in genus {g}")]
    NotExpectedMaximal { g: i64, r: i64, d: i64 },
    #[error("degenerate projection: target rank {0}, degree {1}")]
    DegenerateProjection(i64, i64),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
