//! Three-point sl2 Gaudin model: closed-form tridiagonal Hamiltonians on
//! singular vectors, the spectral curve `det(x + uΩ13 + wΩ12) = 0`, its
//! discriminant and branch points, genus and monodromy.
//!
//! The brute-force tensor model in [`oracle`] is independent of the closed
//! forms in [`hamiltonian`] and is used to validate them.

#![allow(clippy::needless_range_loop)]

pub mod branch;
mod config;
pub mod curve;
mod error;
pub mod hamiltonian;
pub mod monodromy;
pub mod numeric;
pub mod oracle;

pub use branch::{branch_points, discriminant_u, simplicity_check, BranchSet, Discriminant};
pub use config::{singular_dimension, WeightConfig};
pub use curve::{char_poly, GaudinCurve};
pub use error::{GaudinError, Result};
pub use hamiltonian::{build_model, hamiltonian_at, trace_scalar, TridiagonalModel, Which};
pub use monodromy::{identify_group, monodromy_group, MonodromyReport, Permutation};
