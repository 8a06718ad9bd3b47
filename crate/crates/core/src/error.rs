use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has invalid {what} {value} (must be at least 1)")]
    InvalidGenerator {
        name: String,
        what: &'static str,
        value: u32,
    },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("not a unit: constant term is zero")]
    NotAUnit,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown singularity type `{name}` at kappa={kappa}")]
    UnknownType { name: String, kappa: i32 },
    #[error("missing residual polynomial for types=[{}] kappa={kappa}", types.join(","))]
    MissingResidual { types: Vec<String>, kappa: i32 },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: String, got: String },
    #[error("locus not zero-dimensional: codimension {ell} but target dimension {dim}")]
    NotZeroDimensional { ell: i32, dim: i32 },
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("symbol `{symbol}` is not allowed on the {side} side")]
    WrongSide { symbol: String, side: &'static str },
    #[error("non-birational parametrization: divided-difference resultant vanishes identically")]
    NonBirational,
    #[error("resultant of two zero polynomials is undefined")]
    ZeroResultant,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
