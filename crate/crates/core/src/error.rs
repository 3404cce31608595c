use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CvtError {
    #[error("radix must be at least 2, got {0}")]
    InvalidBase(u32),

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("arithmetic overflow: result does not fit in {bits} bits")]
    Overflow { bits: u32 },

    #[error("carry value still nonzero after {cap} steps")]
    CapExceeded { cap: usize },

    /// The MCVT iteration failed to vanish within two steps. This would
    /// contradict a proven property and indicates a bug.
    #[error("MCVT of ({a}, {b}) in base {base} did not vanish within two iterations")]
    McvtBound { a: String, b: String, base: u32 },

    #[error("table size n = {0} is outside the supported range 1..=12")]
    TableSize(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = CvtError> = std::result::Result<T, E>;
