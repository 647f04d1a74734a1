//! Charts, vector fields and graded metrics.

mod chart;
mod field;
mod metric;

pub use chart::{Chart, Coord};
pub use field::VectorField;
pub use metric::{identity, invert_even, mat_mul, InverseMetric, Manifold, Matrix};
