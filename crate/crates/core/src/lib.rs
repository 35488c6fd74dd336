//! Exact arithmetic, cell combinatorics, meshes and homology for the order
//! complex of nonzero covectors over the tropical phase hyperfield.

pub mod cell;
pub mod covector;
pub mod error;
pub mod exec;
pub mod gluing;
pub mod homology;
pub mod mesh;
pub mod order_complex;
pub mod phase;
pub mod verify;

/// Exact rational scalar used for angles (in turns), radii and weights.
pub type Rational = num_rational::Ratio<i64>;

pub use error::{Error, Result};
pub use exec::Execution;
