//! Symmetric and Hermitian eigensolvers.
//!
//! Two routes are provided for real symmetric matrices:
//!
//! * [`dense`]: Householder tridiagonalisation followed by implicit QL with
//!   accumulated transformations. All eigenpairs, `O(n^3)`.
//! * [`band`] and [`tridiag`]: for banded matrices. The band is reduced to
//!   tridiagonal form with Givens rotations, selected eigenvalues are found by
//!   Sturm-sequence bisection and eigenvectors by inverse iteration on the
//!   original band. `O(n^2)` for a fixed bandwidth.
//!
//! Hermitian matrices are handled by embedding them into a real symmetric
//! matrix of twice the size ([`complex`]).

pub mod band;
pub mod complex;
pub mod dense;
pub mod tridiag;

pub use complex::CMatrix;
pub use dense::{symmetric_eigen, tridiagonal_eigen, DenseEigen};
