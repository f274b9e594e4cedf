use crate::geometry::GeneralPositionReport;
use thiserror::Error;

/// Errors surfaced by construction, measurement, and generation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cone count must be at least 3, got {0}")]
    InvalidConeCount(u32),
    #[error("apex and target coincide")]
    DuplicatePoint,
    #[error("target lies within {tolerance} rad of a cone boundary ray")]
    BoundaryDegeneracy { tolerance: f64 },
    #[error("point set violates the general position assumption ({} pair(s))", .0.violations.len())]
    GeneralPositionViolation(GeneralPositionReport),
    #[error("insertion order is not a permutation of 0..{expected}")]
    InvalidOrder { expected: usize },
    #[error("two candidates tie on bisector distance ({0} vs {1})")]
    AmbiguousClosest(usize, usize),
    #[error("graph has {0} vertices, oracle guard allows at most {1}")]
    TooLarge(usize, usize),
    #[error("certificate requires a 4k+4 cone count (m >= 8, m % 4 == 0), got m={0}")]
    WrongFamily(u32),
    #[error("angle arguments leave the formula's domain (denominator {0:.3e})")]
    DegenerateAngle(f64),
    #[error("tower constructions exist only for m in 3..=6, got m={0}")]
    NotATower(u32),
    #[error("generator does not apply to m={m}: {reason}")]
    InvalidFamily { m: u32, reason: &'static str },
    #[error("eps must satisfy 0 < eps <= 1e-3, got {0}")]
    BadEps(f64),
    #[error("staircase realizes beta = {realized} rad, target {target} rad (|diff| > {tolerance})")]
    BetaRealizationFailure {
        realized: f64,
        target: f64,
        tolerance: f64,
    },
    #[error("could not sample a general-position point set within {0} attempts")]
    ResampleBudgetExceeded(u64),
    #[error("vertex index {0} out of range for {1} vertices")]
    BadVertex(usize, usize),
    #[error("need at least {0} points, got {1}")]
    TooSmall(usize, usize),
    #[error("invalid instance: {0}")]
    BadInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
