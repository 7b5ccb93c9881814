use thiserror::Error;

use crate::topology::AxiomViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the lattice, topology and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree {value}: must be a rational in [0, 1]")]
    DegreeOutOfRange { value: String },

    #[error("invalid rational literal {text:?}: {reason}")]
    BadRational { text: String, reason: String },

    #[error("universe mismatch: [{left}] vs [{right}]")]
    UniverseMismatch { left: String, right: String },

    #[error("invalid universe: {0}")]
    BadUniverse(String),

    #[error("fuzzy set has {got} degrees but the universe has {expected} elements")]
    ArityMismatch { expected: usize, got: usize },

    #[error("backend mismatch: cannot combine {left} and {right} fuzzy sets")]
    BackendMismatch { left: &'static str, right: &'static str },

    #[error("invalid piecewise-linear set: {0}")]
    BadBreakpoints(String),

    #[error("point {x} lies outside [0, 1]")]
    OutsideDomain { x: String },

    #[error("exact arithmetic overflowed 64-bit rationals")]
    Overflow,

    #[error("empty family of open sets")]
    EmptyFamily,

    #[error("not a fuzzy topology: {0}")]
    NotATopology(AxiomViolation),

    #[error("topology generation exceeded the member cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("grid enumeration of {size} sets exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("degree {degree} is not on the 1/{denominator} grid; use a grid denominator of {required}")]
    OffGrid {
        degree: String,
        denominator: u32,
        required: u64,
    },

    #[error("grid spec expects a universe of {expected} elements, topology has {got}")]
    GridUniverse { expected: usize, got: usize },

    #[error("invalid function: {0}")]
    BadFunction(String),
}
