//! Truncated weighted Fourier spaces on the 2-torus and periodic profiles on
//! the circle.

mod algebra;
mod field;
mod profile;

pub use algebra::{algebra_constant, AlgebraConstant};
pub use field::{Decomposition, FourierField2, Product, SpaceWeights, Subspace};
pub use profile::{Antiderivative, Parity, PeriodicProfile1};

pub(crate) use profile::grid_points;
