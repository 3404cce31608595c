//! Rendering and exit-status plumbing behind the `cvt` binary.

use std::io;

use cvt_core::CvtError;
use thiserror::Error;

pub mod render;
pub mod table_io;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const OVERFLOW: i32 = 3;
    pub const CAP_EXCEEDED: i32 = 4;
    pub const VERIFY_FAILED: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CvtError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(e) => match e {
                CvtError::Overflow { .. } => exit::OVERFLOW,
                CvtError::CapExceeded { .. } => exit::CAP_EXCEEDED,
                CvtError::InvalidBase(_)
                | CvtError::DigitOutOfRange { .. }
                | CvtError::TableSize(_)
                | CvtError::InvalidArgument(_) => exit::USAGE,
                CvtError::McvtBound { .. } => exit::FAILURE,
            },
            CliError::Io { .. } => exit::FAILURE,
        }
    }
}

/// Parses `LO..HI` (inclusive) or a single radix `B`.
pub fn parse_base_range(s: &str) -> Result<std::ops::RangeInclusive<u32>, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("invalid base '{t}': {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let b = parse(s)?;
            (b, b)
        }
    };
    if lo < 2 {
        return Err(format!("bases must be at least 2, got {lo}"));
    }
    if hi < lo {
        return Err(format!("empty base range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}
