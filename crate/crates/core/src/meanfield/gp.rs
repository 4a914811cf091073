//! Discrete Gross-Pitaevskii flow for the two condensate amplitudes.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::meanfield::control::ControlPulse;
use crate::meanfield::PhasePoint;
use crate::params::CpbParams;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `φ = sqrt(N) ψ` for the two electrodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensateAmplitudes {
    pub phi1: Complex64,
    pub phi2: Complex64,
}

impl CondensateAmplitudes {
    pub fn new(phi1: Complex64, phi2: Complex64) -> Self {
        CondensateAmplitudes { phi1, phi2 }
    }

    /// `φ₁ = sqrt(n_ref + ξ) e^{-iθ}`, `φ₂ = sqrt(N - n_ref - ξ)`.
    pub fn from_point(x: PhasePoint, n_ref: f64, total_pairs: f64) -> Result<Self> {
        let n1 = n_ref + x.xi;
        if !(n1 >= 0.0 && n1 <= total_pairs) {
            return Err(invalid("xi", format!("occupation {n1} outside [0, {total_pairs}]")));
        }
        Ok(CondensateAmplitudes {
            phi1: Complex64::from_polar(libm::sqrt(n1), -x.theta),
            phi2: Complex64::new(libm::sqrt(total_pairs - n1), 0.0),
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.phi1.norm_sqr() + self.phi2.norm_sqr()
    }

    /// `θ = arg φ₂ - arg φ₁` in `(-2π, 2π)` and `ξ = |φ₁|² - n_ref`.
    pub fn point(&self, n_ref: f64) -> PhasePoint {
        PhasePoint {
            theta: self.phi2.arg() - self.phi1.arg(),
            xi: self.phi1.norm_sqr() - n_ref,
        }
    }

    fn axpy(&self, h: f64, d: &CondensateAmplitudes) -> Self {
        CondensateAmplitudes {
            phi1: self.phi1 + d.phi1 * h,
            phi2: self.phi2 + d.phi2 * h,
        }
    }
}

/// `φ̇₁ = -i(U₁ + g|φ₁|²)φ₁ - iKφ₂`, `φ̇₂ = -iU₂φ₂ - iKφ₁`.
pub fn gp_rhs(phi: &CondensateAmplitudes, u1: f64, u2: f64, g: f64, k: f64) -> CondensateAmplitudes {
    CondensateAmplitudes {
        phi1: -I * ((u1 + g * phi.phi1.norm_sqr()) * phi.phi1 + k * phi.phi2),
        phi2: -I * (u2 * phi.phi2 + k * phi.phi1),
    }
}

/// Coefficients of the flow. The control `u(t)` is added to `U₂`, so the
/// potential difference is `U₂ - U₁ + u(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpCoefficients {
    pub u1: f64,
    pub u2: f64,
    pub g: f64,
    pub k: f64,
    pub total_pairs: f64,
}

impl GpCoefficients {
    /// Coefficients whose reduced flow is `θ̇ = 2E_C ξ - u`,
    /// `ξ̇ = -E_J sin θ` around `n̄₁`: `g = 2E_C`,
    /// `K = -E_J / (2 sqrt(n̄₁(N - n̄₁)))`, `U₂ = 0`, `U₁ = -g n̄₁`.
    pub fn matched(params: &CpbParams) -> Self {
        let n = params.total_pairs() as f64;
        let n_bar = params.n_bar();
        let g = 2.0 * params.e_c();
        GpCoefficients {
            u1: -g * n_bar,
            u2: 0.0,
            g,
            k: -params.e_j() / (2.0 * libm::sqrt(n_bar * (n - n_bar))),
            total_pairs: n,
        }
    }

    /// `g = 4E_C`, `K` as given by the parameters and `U₂ - U₁ = g n̄₁`.
    pub fn literal(params: &CpbParams) -> Self {
        let g = params.interaction();
        GpCoefficients {
            u1: -params.potential(),
            u2: 0.0,
            g,
            k: params.tunneling(),
            total_pairs: params.total_pairs() as f64,
        }
    }

    pub fn potential(&self) -> f64 {
        self.u2 - self.u1
    }

    /// Occupation `n₁` of the stationary state with `θ = 0`:
    /// `g n₁ - U + K (N - 2n₁) / sqrt(n₁ (N - n₁)) = 0`.
    pub fn stationary(&self) -> Result<f64> {
        let n = self.total_pairs;
        let u = self.potential();
        let f = |x: f64| {
            let s = x * (n - x);
            let rs = libm::sqrt(s);
            let val = self.g * x - u + self.k * (n - 2.0 * x) / rs;
            let der = self.g + self.k * (-2.0 / rs - (n - 2.0 * x) * (n - 2.0 * x) / (2.0 * s * rs));
            (val, der)
        };
        let mut x = if self.g != 0.0 {
            (u / self.g).clamp(1e-9 * n, n * (1.0 - 1e-9))
        } else {
            0.5 * n
        };
        for _ in 0..100 {
            let (val, der) = f(x);
            let step = val / der;
            let next = (x - step).clamp(0.5 * x, x + 0.5 * (n - x));
            if (next - x).abs() <= 1e-15 * n {
                return Ok(next);
            }
            x = next;
        }
        let (val, _) = f(x);
        if val.abs() <= 1e-9 * (self.g.abs() * n).max(1.0) {
            Ok(x)
        } else {
            Err(Error::NonConvergence { iterations: 100 })
        }
    }

    /// Stationary amplitudes with `θ = 0`.
    pub fn stationary_amplitudes(&self) -> Result<CondensateAmplitudes> {
        let n1 = self.stationary()?;
        CondensateAmplitudes::from_point(PhasePoint::default(), n1, self.total_pairs)
    }

    /// Conserved value of the flow for constant control `u`.
    pub fn energy(&self, phi: &CondensateAmplitudes, u: f64) -> f64 {
        let u2 = self.u2 + u;
        let n1 = phi.phi1.norm_sqr();
        0.5 * (self.u1 - u2) * n1 + 0.25 * self.g * n1 * n1 - self.k * (phi.phi1.conj() * phi.phi2).re
            + 0.5 * u2 * phi.norm_sqr()
    }

    /// Rate used for the step-size precondition.
    pub fn frequency_scale(&self, phi: &CondensateAmplitudes, control: &ControlPulse) -> f64 {
        let n1 = phi.phi1.norm_sqr();
        let n2 = phi.phi2.norm_sqr();
        let kk = self.k.abs();
        let local1 = (self.u1 + self.g * n1).abs() + kk;
        let local2 = self.u2.abs() + control.bound() + kk;
        let plasma = libm::sqrt(2.0 * self.g.abs() * kk * libm::sqrt(n1 * n2));
        local1.max(local2).max(plasma)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GpTrajectory {
    pub t: Vec<f64>,
    pub phi: Vec<CondensateAmplitudes>,
    pub energy: Vec<f64>,
}

impl GpTrajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Largest relative deviation of `‖φ‖²` from its initial value.
    pub fn norm_drift(&self) -> f64 {
        let Some(first) = self.phi.first() else { return 0.0 };
        let n0 = first.norm_sqr();
        self.phi
            .iter()
            .map(|p| (p.norm_sqr() - n0).abs() / n0)
            .fold(0.0, f64::max)
    }

    /// `(θ, ξ)` along the trajectory with `θ` unwrapped.
    pub fn phase_points(&self, n_ref: f64) -> Vec<PhasePoint> {
        let mut out: Vec<PhasePoint> = Vec::with_capacity(self.phi.len());
        let two_pi = 2.0 * core::f64::consts::PI;
        for p in &self.phi {
            let mut x = p.point(n_ref);
            if let Some(prev) = out.last() {
                let jump = libm::round((x.theta - prev.theta) / two_pi);
                x.theta -= jump * two_pi;
            }
            out.push(x);
        }
        out
    }
}

/// Fourth-order Runge-Kutta integration of the flow with `U₂ → U₂ + u(t)`.
pub fn integrate_gp(
    phi0: CondensateAmplitudes,
    coeffs: &GpCoefficients,
    control: &ControlPulse,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<GpTrajectory> {
    control.validate()?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(invalid("t_end", format!("must be finite and >= 0, got {t_end}")));
    }
    let scale = coeffs.frequency_scale(&phi0, control);
    if dt * scale >= 0.1 {
        return Err(Error::StepTooLarge { dt, limit: 0.1 / scale });
    }
    let steps = libm::round(t_end / dt) as usize;
    let every = record_every.max(1);
    let (u1, g, k) = (coeffs.u1, coeffs.g, coeffs.k);
    let rhs = |phi: &CondensateAmplitudes, t: f64| gp_rhs(phi, u1, coeffs.u2 + control.at(t), g, k);

    let mut traj = GpTrajectory::default();
    let mut phi = phi0;
    traj.t.push(0.0);
    traj.phi.push(phi);
    traj.energy.push(coeffs.energy(&phi, control.at(0.0)));
    for n in 0..steps {
        let t = n as f64 * dt;
        let k1 = rhs(&phi, t);
        let k2 = rhs(&phi.axpy(0.5 * dt, &k1), t + 0.5 * dt);
        let k3 = rhs(&phi.axpy(0.5 * dt, &k2), t + 0.5 * dt);
        let k4 = rhs(&phi.axpy(dt, &k3), t + dt);
        phi.phi1 += (k1.phi1 + (k2.phi1 + k3.phi1) * 2.0 + k4.phi1) * (dt / 6.0);
        phi.phi2 += (k1.phi2 + (k2.phi2 + k3.phi2) * 2.0 + k4.phi2) * (dt / 6.0);
        if !phi.norm_sqr().is_finite() {
            return Err(Error::NonFinite("gp amplitudes"));
        }
        if (n + 1) % every == 0 || n + 1 == steps {
            let t1 = (n + 1) as f64 * dt;
            traj.t.push(t1);
            traj.phi.push(phi);
            traj.energy.push(coeffs.energy(&phi, control.at(t1)));
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rhs_without_tunnelling() {
        let n: f64 = 16.0;
        let phi = CondensateAmplitudes::new(c(0.0, 0.0), c(n.sqrt(), 0.0));
        let d = gp_rhs(&phi, 1.0, 2.5, 3.0, 0.0);
        assert_eq!(d.phi1, c(0.0, 0.0));
        assert!((d.phi2 - c(0.0, -2.5 * 4.0)).norm() < 1e-15);
    }

    #[test]
    fn rhs_preserves_norm_pointwise() {
        let phi = CondensateAmplitudes::new(c(0.3, -1.2), c(2.0, 0.7));
        let d = gp_rhs(&phi, -0.4, 1.1, 2.2, 0.9);
        let dn = (phi.phi1.conj() * d.phi1 + phi.phi2.conj() * d.phi2).re;
        assert!(dn.abs() < 1e-14);
    }

    #[test]
    fn rabi_oscillation() {
        // g = 0, U₁ = U₂ = 0: population swaps as cos²(K t).
        let coeffs = GpCoefficients {
            u1: 0.0,
            u2: 0.0,
            g: 0.0,
            k: 0.8,
            total_pairs: 1.0,
        };
        let phi0 = CondensateAmplitudes::new(c(1.0, 0.0), c(0.0, 0.0));
        let tr = integrate_gp(phi0, &coeffs, &ControlPulse::none(), 5.0, 1e-3, 100).unwrap();
        for (t, p) in tr.t.iter().zip(&tr.phi) {
            let exact = sq(libm::cos(0.8 * t));
            assert!((p.phi1.norm_sqr() - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn stationary_state_is_fixed() {
        let params = CpbParams::from_josephson(1.0, 50.0, 20_000, 7_000.0).unwrap();
        let coeffs = GpCoefficients::matched(&params);
        let phi0 = coeffs.stationary_amplitudes().unwrap();
        let n0 = phi0.phi1.norm_sqr();
        let tr = integrate_gp(phi0, &coeffs, &ControlPulse::none(), 2.0, 1e-3, 10).unwrap();
        for p in &tr.phi {
            assert!((p.phi1.norm_sqr() - n0).abs() < 1e-9);
        }
    }

    #[test]
    fn point_round_trip() {
        let x = PhasePoint::new(0.4, -3.0);
        let a = CondensateAmplitudes::from_point(x, 100.0, 1000.0).unwrap();
        assert!((a.norm_sqr() - 1000.0).abs() < 1e-10);
        let y = a.point(100.0);
        assert!((y.theta - 0.4).abs() < 1e-14);
        assert!((y.xi + 3.0).abs() < 1e-11);
    }
}
