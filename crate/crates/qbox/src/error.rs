use thiserror::Error;

/// Errors produced by lattice construction and the numerical routines.
#[derive(Debug, Error)]
pub enum QboxError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("lattice needs at least one interior site (J0 >= 2), got J0 = {0}")]
    NoInteriorSites(usize),

    #[error("quantum number n = {n} out of range, expected 1 <= n <= {max}")]
    ModeOutOfRange { n: usize, max: usize },

    #[error("wave vectors have mismatched lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("k^2 lambda0^2 = {0} lies outside the lattice band [0, 1]")]
    OutsideBand(f64),

    #[error("Jacobi diagonalization did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("omega * tau0 = {0} is outside the stability domain (must be < 1)")]
    StabilityDomain(f64),

    #[error("power-law fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("power-law fit requires strictly positive values, got {0} at lambda0 = {1}")]
    NonPositiveValue(f64, f64),

    #[error("tau0 = {tau0} does not divide total time {total} to within rounding")]
    NonDivisibleStep { tau0: f64, total: f64 },

    #[error("negative variance {0} outside rounding tolerance")]
    NegativeVariance(f64),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, QboxError>;
