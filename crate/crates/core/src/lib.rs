pub mod bundled;
pub mod checks;
pub mod connection;
pub mod curvature;
pub mod einstein;
pub mod error;
pub mod geometry;
pub mod graded;
pub mod parity;
pub mod report;
pub mod scalar;
pub mod specfile;
pub mod suite;
pub mod warped;

pub use connection::{Connection, ConnectionKind};
pub use error::{Error, ParseError, Result};
pub use geometry::{Chart, Coord, Manifold, VectorField};
pub use graded::{OddMonomial, SuperScalar};
pub use parity::{Parity, Sign};
pub use scalar::{Assumptions, Equality, RatFunc, ScalarExpr};
