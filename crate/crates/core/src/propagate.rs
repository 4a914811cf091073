//! Unitary evolution by spectral decomposition, used for quantum-classical
//! comparisons.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bose_hubbard::oscillator_matrix;
use crate::error::{invalid, Error, Result};
use crate::hamiltonian::HamiltonianMatrix;
use crate::linalg::dense::{symmetric_eigen, tridiagonal_eigen, DenseEigen};
use crate::params::CpbParams;
use crate::sq;
use crate::state::{Basis, StateVector};

/// Probability outside the window that [`ehrenfest_number_track`] accepts.
pub const WINDOW_LEAK_LIMIT: f64 = 1e-12;

/// `exp(-iHt)` through the full eigendecomposition of `H`.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    eigen: DenseEigen,
}

impl SpectralPropagator {
    pub fn new(h: &HamiltonianMatrix) -> Result<Self> {
        let eigen = if h.corner() == 0.0 {
            tridiagonal_eigen(h.diagonal(), h.off_diagonal())?
        } else {
            symmetric_eigen(&h.to_dense(), h.dim())?
        };
        Ok(SpectralPropagator { eigen })
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.values
    }

    /// Components of `psi` in the eigenbasis.
    pub fn coefficients(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        if psi.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: psi.len(),
            });
        }
        let v = &self.eigen.vectors;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (k, &a) in psi.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &v[k * n..(k + 1) * n];
            for (cj, &vkj) in c.iter_mut().zip(row) {
                *cj += a * vkj;
            }
        }
        Ok(c)
    }

    /// State at time `t` from eigenbasis coefficients.
    pub fn evolve(&self, coeffs: &[Complex64], t: f64) -> Vec<Complex64> {
        let n = self.dim();
        let e0 = self.eigen.values[0];
        let phased: Vec<Complex64> = coeffs
            .iter()
            .zip(&self.eigen.values)
            .map(|(c, e)| c * Complex64::from_polar(1.0, -(e - e0) * t))
            .collect();
        let v = &self.eigen.vectors;
        (0..n)
            .map(|k| v[k * n..(k + 1) * n].iter().zip(&phased).map(|(&x, c)| c * x).sum())
            .collect()
    }
}

/// `<n̂> - n̄₁` at each of `times` for the state `psi0` evolving under the
/// oscillator Hamiltonian, restricted to Fock levels within
/// `half_width * sqrt(n̄₁)` of `n̄₁`.
pub fn ehrenfest_number_track(
    params: &CpbParams,
    psi0: &StateVector,
    times: &[f64],
    half_width: f64,
) -> Result<Vec<f64>> {
    let Basis::Fock { cutoff } = psi0.basis() else {
        return Err(invalid("psi0", "must be a Fock-basis vector"));
    };
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(invalid(
            "half_width",
            format!("must be finite and > 0, got {half_width}"),
        ));
    }
    let n_bar = params.n_bar();
    let w = half_width * libm::sqrt(n_bar);
    let lo = libm::floor((n_bar - w).max(0.0)) as usize;
    let hi = (libm::ceil(n_bar + w) as usize).min(cutoff);
    if hi <= lo + 1 {
        return Err(invalid("half_width", "window is empty"));
    }
    let amps = psi0.amplitudes();
    let outside: f64 = amps[..lo]
        .iter()
        .chain(&amps[hi + 1..])
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        / sq(psi0.norm());
    if outside > WINDOW_LEAK_LIMIT {
        return Err(Error::TruncationInsufficient {
            tail: outside,
            limit: WINDOW_LEAK_LIMIT,
        });
    }
    let full = oscillator_matrix(params, cutoff)?;
    let block = full.principal_block(lo, hi + 1)?;
    let prop = SpectralPropagator::new(&block)?;
    let local: Vec<Complex64> = amps[lo..=hi].to_vec();
    let norm: f64 = local.iter().map(|z| z.norm_sqr()).sum();
    let coeffs = prop.coefficients(&local)?;
    Ok(times
        .iter()
        .map(|&t| {
            let psi = prop.evolve(&coeffs, t);
            let mean: f64 = psi
                .iter()
                .enumerate()
                .map(|(k, z)| (lo + k) as f64 * z.norm_sqr())
                .sum::<f64>()
                / norm;
            mean - n_bar
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_rabi() {
        let h = HamiltonianMatrix::new(vec![0.0, 0.0], vec![-1.0], 0.0, Basis::Plain { dim: 2 }).unwrap();
        let p = SpectralPropagator::new(&h).unwrap();
        let c = p
            .coefficients(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        for t in [0.0, 0.3, 1.1] {
            let psi = p.evolve(&c, t);
            assert!((psi[0].norm_sqr() - sq(libm::cos(t))).abs() < 1e-14);
        }
    }

    #[test]
    fn number_is_stationary_for_eigenstate() {
        let params = CpbParams::from_josephson(1.0, 2.0, 10_000, 400.0).unwrap();
        let h = oscillator_matrix(&params, 700).unwrap();
        let ground = crate::hamiltonian::eigensolve(&h, 1).unwrap();
        let psi = &ground.vectors[0];
        let track = ehrenfest_number_track(&params, psi, &[0.0, 0.5, 1.0], 10.0).unwrap();
        for x in &track {
            assert!((x - track[0]).abs() < 1e-9);
        }
    }
}
