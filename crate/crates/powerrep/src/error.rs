use thiserror::Error;

/// Errors for contract violations at the crate boundary.
///
/// Mathematical disagreements are never errors; they are reported as data
/// (verdicts, failure lists) so that a run can finish and show them.
#[derive(Debug, Error)]
pub enum Error {
    /// The identities are stated for nonzero integer bases; zero is rejected
    /// rather than silently extended.
    #[error("base 0 is outside the supported domain (nonzero integers only)")]
    ZeroBase,

    /// A witness was requested for a modulus that is not prime.
    #[error("witness construction requires a prime modulus, got {0}")]
    NotPrime(u64),

    /// The failure probe only makes sense for composite moduli.
    #[error("failure probe requires a composite modulus >= 4, got {0}")]
    NotComposite(u64),

    /// Witness moduli are capped to keep factorial growth bounded.
    #[error("modulus {p} exceeds the supported bound {bound}")]
    PrimeBoundExceeded { p: u64, bound: u64 },

    /// A malformed or empty `A..B` range argument.
    #[error("invalid range `{text}`: {reason}")]
    InvalidRange { text: String, reason: String },

    /// Failure writing a report to the requested output path.
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}
