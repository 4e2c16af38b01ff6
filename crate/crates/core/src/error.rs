use thiserror::Error;

/// Errors shared across the crate. Arithmetic on angle multiples is only
/// defined up to the validity guard, so exceeding it is a hard error rather
/// than a silent approximation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiple {k} exceeds angle guard {guard}; the result would depend on which irrational is meant")]
    GuardExceeded { k: u32, guard: u32 },

    #[error("{what} must be positive")]
    NotPositive { what: &'static str },

    #[error("rational base must have a nonzero denominator")]
    ZeroDenominator,

    #[error("integer overflow in exact index arithmetic")]
    Overflow,

    #[error("partition parts must be positive")]
    ZeroPart,

    #[error("orbit sets have different degrees: {alpha} vs {beta}")]
    DegreeMismatch { alpha: i64, beta: i64 },

    #[error("orbit {0:?} listed twice in one orbit set")]
    DuplicateOrbit(String),

    #[error("cable base must be a connected braid")]
    DisconnectedBase,

    #[error("braid exceeds the supported strand count")]
    TooManyStrands,

    #[error("{0}")]
    Mismatch(String),

    #[error("writhe total required but not supplied")]
    MissingWrithe,

    #[error("operation undefined in the presence of trivial cylinders")]
    TrivialCylindersPresent,

    #[error("parity check requires admissible orbit sets")]
    NotAdmissible,
}

impl Error {
    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}
