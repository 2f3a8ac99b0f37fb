//! Exact computations for supersaturation problems of colour-critical graphs.
//!
//! The crate builds the standard extremal host graphs and pattern families,
//! counts pattern copies exactly, checks criticality and admissibility, and
//! evaluates the closed-form copy counts against brute force.

pub mod caps;
pub mod constructions;
pub mod counting;
pub mod criticality;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod report;
pub mod scalar;
pub mod types;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

/// Arbitrary-precision count used by the formula evaluators.
pub type BigCount = num_bigint::BigUint;
/// Exact rational used for formula ratios.
pub type Ratio = num_rational::BigRational;
/// Fixed-width exact count used by the brute-force engine.
pub type Count = u128;
