//! File formats, NDJSON reports, rayon drivers and the command line on top
//! of `loopforge-core`.

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

use loopforge_core::group::DEFAULT_CAP;

pub use loopforge_core as core;

/// Environment variable overriding the group materialization cap.
pub const CAP_VAR: &str = "LOOPFORGE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] loopforge_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const CAP: i32 = 3;
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        use loopforge_core::Error as E;
        match self {
            Error::Io { .. } | Error::Parse { .. } | Error::Usage(_) => exit::INPUT,
            Error::Core(E::CapExceeded { .. } | E::SizeLimit { .. } | E::Undecided(_)) => exit::CAP,
            Error::Core(E::Internal(_) | E::RouteMismatch(_) | E::NotFound(_)) => exit::FAILED,
            Error::Core(_) => exit::INPUT,
        }
    }
}

/// The materialization cap: `LOOPFORGE_CAP` when set, else the default.
pub fn cap_from_env() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::Usage(format!("{CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn read_file(path: &std::path::Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
