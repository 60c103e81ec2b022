//! Finite-field interpolation: `h⁰` of fat-point linear systems by exact rank over `F_p`.
//!
//! Results at random points are one-sided evidence about very general points:
//! `h⁰ = 0` at any configuration forces `h⁰ = 0` at very general ones, while a
//! positive value is only an upper bound.

pub mod elliptic;
pub mod examples;
pub mod field;
pub mod interp;
pub mod points;

pub use elliptic::{EcPoint, WeierstrassCurve};
pub use examples::{run_example_14pts, run_example_mix, MixReport, TableRow};
pub use field::{FiniteField, DEFAULT_PRIME};
pub use interp::{column_count, conditions_matrix, h0, h0_at, InterpolationResult};
pub use points::{sample_on_cubic_torsion, PointConfig, PointKind};
