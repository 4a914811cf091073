//! Numerical models of a Cooper pair box.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation: Hamiltonian builders and eigensolvers, mean-field and
//! classical integrators, a Lindblad master-equation solver and the
//! single-system quantumness witness. File formats, configuration and the
//! command-line front end live in the `cpb-lab` crate.
//!
//! Module map:
//!
//! * [`bose_hubbard`] – restricted two-mode Hamiltonian, its Bose-Hubbard
//!   approximation, the large-N oscillator Hamiltonian, binomial product
//!   states and coherent vectors.
//! * [`quantum_phase`] – the phase-model Hamiltonian in the charge basis and
//!   offset-charge sweeps.
//! * [`meanfield`] – discrete Gross-Pitaevskii flow, the driven pendulum, two
//!   coupled boxes, state reconstruction and mean-field phenomenology.
//! * [`stability`] – dissipator, master-equation evolution, fidelity decay
//!   rates and Gibbs number statistics.
//! * [`witness`] – operator dominance checks and the witness value.
//! * [`linalg`] – the symmetric eigensolvers everything else is built on.
#![no_std]

extern crate alloc;

pub mod bose_hubbard;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod meanfield;
pub mod params;
pub mod propagate;
pub mod quantum_phase;
pub mod stability;
pub mod state;
pub mod witness;

pub use error::{Error, Result};
pub use hamiltonian::{eigensolve, eigensolve_with, EigenMethod, HamiltonianMatrix, Spectrum};
pub use params::CpbParams;
pub use state::{Basis, StateVector};

pub use num_complex::Complex64;

#[inline]
pub(crate) fn sq(x: f64) -> f64 {
    x * x
}
