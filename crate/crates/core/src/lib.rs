//! Numerics for mixed-Fourier-norm Bergman spaces `A^{q,p}_λ` on the upper
//! half-plane: weights and norms, the `U₁`/`U₂` transform chain, the
//! Paley–Wiener pair, and Toeplitz operators with vertical symbols.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
mod error;
pub mod grid;
pub mod io;
pub mod lang;
pub mod norm;
pub mod space;
pub mod specfun;
pub mod toeplitz;
pub mod transforms;
pub mod verify;

pub use density::DensityForm;
pub use error::{Error, IntegrabilityCondition, Result};
pub use grid::{BoundaryDensity, GridFunction, HalfPlaneGrid, Repr};
pub use norm::{lq_norm, mixed_norm};
pub use space::{nu_weight, SpaceParams};
