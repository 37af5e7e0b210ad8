//! Crate-wide error type.

use thiserror::Error;

/// A non-positive density or pressure encountered while decoding a state.
///
/// Carries no allocation so it can be produced in hot loops; callers that
/// know the cell attach it via [`PositivityFault::at_cell`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityFault {
    pub quantity: &'static str,
    pub value: f64,
}

impl PositivityFault {
    pub fn at_cell(self, cell: usize) -> Error {
        Error::Positivity {
            quantity: self.quantity,
            value: self.value,
            location: format!("cell {cell}"),
        }
    }
}

impl From<PositivityFault> for Error {
    fn from(f: PositivityFault) -> Self {
        Error::Positivity {
            quantity: f.quantity,
            value: f.value,
            location: "unlocated state".into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("positivity fault: {quantity} = {value:e} in {location}")]
    Positivity {
        quantity: &'static str,
        value: f64,
        location: String,
    },
    #[error("configuration fault: {0}")]
    Config(String),
    #[error("logic fault: {0}")]
    Logic(String),
    #[error("geometry fault: {0}")]
    Geometry(String),
    #[error("conformity fault: {0}")]
    Conformity(String),
    #[error("setup fault: {0}")]
    Setup(String),
    #[error("solver fault: {0}")]
    Solver(String),
    #[error("i/o fault on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse fault in {path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
