//! Exact computation over finite fuzzy topologies.
//!
//! Degrees are exact rationals, so every verdict (openness, semiopenness,
//! "the interior is non-zero") is decided without tolerance. Two fuzzy-set
//! backends are provided: sets over a finite universe ([`FiniteFuzzySet`]) and
//! continuous piecewise-linear sets on `[0, 1]` ([`PlFuzzySet`]).

pub mod cli;
pub mod degree;
pub mod document;
mod error;
pub mod fuzzyfn;
pub mod lattice;
pub mod oracle;
pub mod plin;
pub mod semiclass;
pub mod set;
pub mod topology;

pub use degree::Degree;
pub use error::{Error, Result};
pub use fuzzyfn::{FunctionClassification, FuzzyFunction};
pub use lattice::{FiniteFuzzySet, Universe};
pub use plin::PlFuzzySet;
pub use semiclass::{classify_set, SetClassification};
pub use set::{FuzzySet, FuzzySetValue};
pub use topology::{AxiomViolation, Topology};
