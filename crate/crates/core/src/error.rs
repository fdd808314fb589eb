use std::fmt;

use thiserror::Error;

/// Position in a text input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: Position, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("domain error: colouring covers {got} vertices, graph has {expected}")]
    DomainMismatch { expected: usize, got: usize },

    #[error("colour {colour} outside 1..={k}")]
    ColourOutOfRange { colour: u32, k: u32 },

    #[error("improper colouring: edge {u}-{v} is monochromatic")]
    ImproperColouring { u: usize, v: usize },

    #[error("parameter undefined: {0}")]
    ParameterUndefined(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("enumeration cap exceeded: p = {p} > cap {cap}")]
    EnumerationCap { p: usize, cap: usize },

    #[error("materialization cap exceeded: m = {m} > cap {cap}")]
    MaterializationCap { m: usize, cap: usize },

    #[error("search budget exhausted after {budget} colourings")]
    BudgetExhausted { budget: usize },

    #[error("state space of a {vertices}-vertex component with k = {k} does not fit a 64-bit key")]
    StateSpaceTooLarge { vertices: usize, k: u32 },

    #[error("construction violates size bound {inequality}")]
    ConstructionTooLarge { inequality: String },

    #[error("assignment length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("variable index {index} outside 1..={max}")]
    VarOutOfRange { index: usize, max: usize },

    #[error("cycle detected at gate {0}")]
    CycleDetected(usize),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("hereditary promise violated: instance contains the forbidden graph")]
    PromiseViolated,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos: Position { line, column },
            msg: msg.into(),
        }
    }

    /// True for failures caused by a resource cap or search budget rather
    /// than by bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::EnumerationCap { .. }
                | Error::MaterializationCap { .. }
                | Error::BudgetExhausted { .. }
                | Error::StateSpaceTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
