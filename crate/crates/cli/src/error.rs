use std::fmt;

use lefvol_core::io::IoError;
use lefvol_core::verify::VerifyError;
use lefvol_core::{GeometryError, MapError, ValuationError};

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

pub const USAGE: u8 = 2;
pub const INVALID_MAP: u8 = 3;
pub const DEGENERATE: u8 = 4;
pub const RANK_DEFICIENT: u8 = 5;

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(USAGE, message)
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn geometry_code(e: &GeometryError) -> u8 {
    match e {
        GeometryError::Degenerate { .. } => DEGENERATE,
        _ => USAGE,
    }
}

fn map_code(e: &MapError) -> u8 {
    match e {
        MapError::Geometry(g) => geometry_code(g),
        _ => INVALID_MAP,
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let code = match &e {
            IoError::Map(m) => map_code(m),
            IoError::Geometry(g) => geometry_code(g),
            _ => USAGE,
        };
        Self::new(code, e.to_string())
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        Self::new(map_code(&e), e.to_string())
    }
}

impl From<ValuationError> for CliError {
    fn from(e: ValuationError) -> Self {
        let code = match &e {
            ValuationError::Geometry(g) => geometry_code(g),
            ValuationError::Map(m) => map_code(m),
            ValuationError::Underdetermined { .. } => RANK_DEFICIENT,
            _ => USAGE,
        };
        Self::new(code, e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        Self::usage(e.to_string())
    }
}
