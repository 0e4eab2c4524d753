//! Diagonalized spectral Galerkin solver for
//! `-Δu + λ (1 - ‖x‖²)^κ u = f` on the unit disk with homogeneous Dirichlet data.
//!
//! Layers, bottom-up: [`jacobi`] polynomials, Gauss–Jacobi [`quad`]rature,
//! the univariate Sobolev-orthogonal family in [`sobolev1d`], the disk basis in
//! [`ballbasis`], and the [`solver`].

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod ballbasis;
pub mod error;
pub mod jacobi;
pub mod poly2;
pub mod quad;
pub mod sobolev1d;
pub mod solver;

pub use ballbasis::{enumerate_indices, BallBases, BallIndex};
pub use error::{Error, Result};
pub use jacobi::JacobiParam;
pub use quad::{disk_rule, gauss_jacobi, DiskRule, QuadratureRule};
pub use sobolev1d::{build_basis, SobolevBasis, SobolevParams};
pub use solver::{solve, Problem, SobolevExpansion};
