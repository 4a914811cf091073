//! Condensate state rebuilt from a phase-space point, and entanglement of
//! pairs of such states.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::meanfield::PhasePoint;
use crate::params::CpbParams;

/// Fraction of `n̄₁` beyond which the linearised reconstruction is flagged.
pub const VALIDITY_FRACTION: f64 = 0.1;

/// Normalised two-component single-boson state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleParticleState {
    pub psi: [Complex64; 2],
    /// `false` when `|ξ| ≥ 0.1 n̄₁`.
    pub within_linear_regime: bool,
}

fn chi(params: &CpbParams) -> ([f64; 2], [f64; 2]) {
    let n = params.total_pairs() as f64;
    let nb = params.n_bar();
    let s = 1.0 / libm::sqrt(n);
    let (a, b) = (libm::sqrt(nb), libm::sqrt(n - nb));
    ([s * a, s * b], [s * b, -s * a])
}

fn scale(params: &CpbParams) -> f64 {
    let n = params.total_pairs() as f64;
    let nb = params.n_bar();
    0.5 / libm::sqrt((n - nb) * nb)
}

fn single_from(theta: f64, c: f64, params: &CpbParams, valid: bool) -> SingleParticleState {
    let (chi0, chi1) = chi(params);
    let v = [chi0[0] + c * chi1[0], chi0[1] + c * chi1[1]];
    let norm = libm::sqrt(v[0] * v[0] + v[1] * v[1]);
    SingleParticleState {
        psi: [
            Complex64::from_polar(v[0] / norm, -theta),
            Complex64::new(v[1] / norm, 0.0),
        ],
        within_linear_regime: valid,
    }
}

/// `ψ = W(θ)[χ₀ + ξ (2 sqrt((N - n̄₁) n̄₁))⁻¹ χ₁]`, renormalised, with
/// `W(θ) = diag(e^{-iθ}, 1)`.
pub fn reconstruct_single_particle(x: PhasePoint, params: &CpbParams) -> Result<SingleParticleState> {
    if !x.theta.is_finite() || !x.xi.is_finite() {
        return Err(Error::NonFinite("phase point"));
    }
    let valid = x.xi.abs() < VALIDITY_FRACTION * params.n_bar();
    Ok(single_from(x.wrapped_theta(), x.xi * scale(params), params, valid))
}

/// `W(θ)[Φ₀ + ε Φ₁]` with `ε = ξ sqrt(N) / (2 sqrt((N - n̄₁) n̄₁))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldManyBodyState {
    pub theta: f64,
    pub epsilon: f64,
    pub params: CpbParams,
    pub within_linear_regime: bool,
}

impl MeanFieldManyBodyState {
    /// `ξ` recovered from `ε`.
    pub fn xi(&self) -> f64 {
        self.epsilon / (libm::sqrt(self.params.total_pairs() as f64) * scale(&self.params))
    }

    /// Squared norm `1 + ε²` of the unnormalised superposition.
    pub fn norm_sqr(&self) -> f64 {
        1.0 + self.epsilon * self.epsilon
    }

    /// Coefficients on `(Φ₀, Φ₁)`, normalised.
    pub fn coefficients(&self) -> [f64; 2] {
        let n = libm::sqrt(self.norm_sqr());
        [1.0 / n, self.epsilon / n]
    }

    /// The single-boson state of the product, reconstructed from `ε`.
    pub fn single_particle(&self) -> SingleParticleState {
        let c = self.epsilon / libm::sqrt(self.params.total_pairs() as f64);
        single_from(self.theta, c, &self.params, self.within_linear_regime)
    }

    /// `⟨n̂₁⟩ = N |ψ₁|²`.
    pub fn mean_n1(&self) -> f64 {
        self.params.total_pairs() as f64 * self.single_particle().psi[0].norm_sqr()
    }

    /// Excess charge on electrode 1 in units of `e`: `2ξ`.
    pub fn excess_charge(&self) -> f64 {
        2.0 * self.xi()
    }
}

pub fn manybody_state(x: PhasePoint, params: &CpbParams) -> Result<MeanFieldManyBodyState> {
    if !x.theta.is_finite() || !x.xi.is_finite() {
        return Err(Error::NonFinite("phase point"));
    }
    let n = params.total_pairs() as f64;
    Ok(MeanFieldManyBodyState {
        theta: x.wrapped_theta(),
        epsilon: x.xi * libm::sqrt(n) * scale(params),
        params: *params,
        within_linear_regime: x.xi.abs() < VALIDITY_FRACTION * params.n_bar(),
    })
}

/// Entanglement entropy (natural log) of the product of two mean-field
/// states, from the Schmidt decomposition of the coefficient matrix on
/// `{Φ₀, Φ₁} ⊗ {Φ₀', Φ₁'}`.
pub fn product_entanglement(a: &MeanFieldManyBodyState, b: &MeanFieldManyBodyState) -> Result<f64> {
    let (u, v) = (a.coefficients(), b.coefficients());
    let coeffs: Vec<Complex64> = [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    schmidt_entropy(&coeffs, 2, 2)
}

/// Entropy `-Σ λ ln λ` of the squared Schmidt coefficients of a bipartite
/// pure state given as a row-major `rows x cols` coefficient matrix. The
/// state is normalised first.
pub fn schmidt_entropy(coeffs: &[Complex64], rows: usize, cols: usize) -> Result<f64> {
    if coeffs.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            found: coeffs.len(),
        });
    }
    let mut rho = CMatrix::zeros(rows);
    for i in 0..rows {
        for j in 0..rows {
            rho[(i, j)] = (0..cols)
                .map(|k| coeffs[i * cols + k] * coeffs[j * cols + k].conj())
                .sum();
        }
    }
    let trace = rho.trace().re;
    if !(trace > 0.0) {
        return Err(crate::error::invalid("coeffs", "zero state"));
    }
    let eig = rho.hermitian_eigen()?;
    Ok(eig
        .values
        .iter()
        .map(|&l| l / trace)
        .filter(|&p| p > 0.0)
        .map(|p| -p * libm::log(p))
        .sum())
}
