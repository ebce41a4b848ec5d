//! Error type shared by all modules.

/// Errors raised by arithmetic, parsing and solver routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus mismatch: Z/{p1}^{k1} vs Z/{p2}^{k2}")]
    ModulusMismatch { p1: u32, k1: u32, p2: u32, k2: u32 },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("{value} is not divisible by {p}^{j}")]
    NotDivisible { value: u64, p: u32, j: u32 },

    #[error("out of range: {0}")]
    Range(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A mathematical invariant the construction guarantees was violated;
    /// this always indicates a bug, never bad user input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
