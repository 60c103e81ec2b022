//! Positivity and speciality invariants of divisor classes on blow-ups of
//! projective space at points in very general position, in exact arithmetic.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod positivity;
pub mod rational;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{BlowupContext, CurveClass, DivisorClass, QuadraticScalar};
