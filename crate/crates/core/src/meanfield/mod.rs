//! Mean-field description of the box: the discrete Gross-Pitaevskii flow,
//! the reduced pendulum with external control, two coupled boxes, the
//! reconstructed condensate state and mean-field phenomenology.

pub mod analysis;
pub mod control;
pub mod coupled;
pub mod gp;
pub mod pendulum;
pub mod reconstruct;

pub use analysis::{arcsine_histogram, lyapunov_exponent, spectral_peaks, zero_crossing_frequency, Histogram};
pub use control::ControlPulse;
pub use coupled::{integrate_coupled, CoupledCpbParams, CoupledTrajectory};
pub use gp::{gp_rhs, integrate_gp, CondensateAmplitudes, GpCoefficients, GpTrajectory};
pub use pendulum::{classical_h1, integrate_pendulum, integrate_pendulum_with, Pendulum, PendulumOptions, Scheme};
pub use reconstruct::{
    manybody_state, product_entanglement, reconstruct_single_particle, schmidt_entropy, MeanFieldManyBodyState,
    SingleParticleState,
};

use alloc::vec::Vec;
use core::f64::consts::PI;

/// Point `(θ, ξ)` of the reduced phase space, `ξ = n₁ - n̄₁`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub theta: f64,
    pub xi: f64,
}

impl PhasePoint {
    pub fn new(theta: f64, xi: f64) -> Self {
        PhasePoint { theta, xi }
    }

    /// `θ` mapped to `[-π, π)`.
    pub fn wrapped_theta(&self) -> f64 {
        wrap_angle(self.theta)
    }
}

pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let x = theta + PI;
    let w = x - two_pi * libm::floor(x / two_pi) - PI;
    if w >= PI {
        -PI
    } else {
        w
    }
}

/// Sampled classical trajectory. `theta` is stored unwrapped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub theta: Vec<f64>,
    pub xi: Vec<f64>,
    pub energy: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn point(&self, i: usize) -> PhasePoint {
        PhasePoint {
            theta: self.theta[i],
            xi: self.xi[i],
        }
    }

    pub fn last(&self) -> Option<PhasePoint> {
        (!self.is_empty()).then(|| self.point(self.len() - 1))
    }

    pub fn wrapped_theta(&self) -> Vec<f64> {
        self.theta.iter().map(|&t| wrap_angle(t)).collect()
    }

    /// Largest `|E(t) - E(0)| / |E(0)|` (absolute if `E(0) = 0`).
    pub fn energy_drift(&self) -> f64 {
        let Some(&e0) = self.energy.first() else { return 0.0 };
        let scale = if e0 == 0.0 { 1.0 } else { e0.abs() };
        self.energy.iter().map(|e| (e - e0).abs() / scale).fold(0.0, f64::max)
    }

    pub(crate) fn push(&mut self, t: f64, p: PhasePoint, energy: f64) {
        self.t.push(t);
        self.theta.push(p.theta);
        self.xi.push(p.xi);
        self.energy.push(energy);
    }
}

/// Which canonical variable to analyse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Theta,
    Xi,
}

impl Trajectory {
    pub fn component(&self, c: Component) -> &[f64] {
        match c {
            Component::Theta => &self.theta,
            Component::Xi => &self.xi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapping_range() {
        assert_eq!(wrap_angle(PI), -PI);
        assert!((wrap_angle(3.0 * PI + 0.5) - (-PI + 0.5)).abs() < 1e-12);
        assert!((wrap_angle(-0.25) + 0.25).abs() < 1e-15);
    }
}
