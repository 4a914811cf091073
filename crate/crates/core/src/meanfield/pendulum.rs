//! Reduced single-box dynamics: `h(θ, ξ; t) = E_C ξ^2 - u(t) ξ - E_J cos θ`.

use alloc::format;

use crate::error::{invalid, Error, Result};
use crate::meanfield::control::ControlPulse;
use crate::meanfield::{PhasePoint, Trajectory};
use crate::params::CpbParams;

/// Splitting scheme for separable Hamiltonians `T(ξ, t) + V(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Störmer-Verlet, second order.
    Leapfrog,
    /// Yoshida's fourth-order composition of leapfrog steps.
    #[default]
    Yoshida4,
}

const CBRT2: f64 = 1.259_921_049_894_873_2;
const Y1: f64 = 1.0 / (2.0 - CBRT2);
const Y0: f64 = -CBRT2 / (2.0 - CBRT2);

impl Scheme {
    // (drift, kick) coefficient pairs; the final drift has no kick.
    fn coefficients(&self) -> &'static [(f64, f64)] {
        match self {
            Scheme::Leapfrog => &[(0.5, 1.0), (0.5, 0.0)],
            Scheme::Yoshida4 => &[
                (0.5 * Y1, Y1),
                (0.5 * (Y0 + Y1), Y0),
                (0.5 * (Y0 + Y1), Y1),
                (0.5 * Y1, 0.0),
            ],
        }
    }
}

/// One step of a drift-kick splitting for `D` degrees of freedom.
///
/// `velocity(p, t, out)` gives `dq/dt`, evaluated at the midpoint of each
/// drift; `force(q, out)` gives `dp/dt`.
pub(crate) fn split_step<const D: usize>(
    scheme: Scheme,
    q: &mut [f64; D],
    p: &mut [f64; D],
    t: f64,
    dt: f64,
    velocity: &impl Fn(&[f64; D], f64, &mut [f64; D]),
    force: &impl Fn(&[f64; D], &mut [f64; D]),
) {
    let mut v = [0.0; D];
    let mut f = [0.0; D];
    let mut elapsed = 0.0;
    for &(c, d) in scheme.coefficients() {
        let h = c * dt;
        velocity(p, t + elapsed + 0.5 * h, &mut v);
        for i in 0..D {
            q[i] += h * v[i];
        }
        elapsed += h;
        if d != 0.0 {
            force(q, &mut f);
            for i in 0..D {
                p[i] += d * dt * f[i];
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumOptions {
    pub scheme: Scheme,
    /// Keep every `record_every`-th step (the initial point is always kept).
    pub record_every: usize,
}

impl Default for PendulumOptions {
    fn default() -> Self {
        PendulumOptions {
            scheme: Scheme::Yoshida4,
            record_every: 1,
        }
    }
}

/// Single-box pendulum with fixed `E_C`, `E_J` and control.
#[derive(Debug, Clone, Copy)]
pub struct Pendulum {
    pub e_c: f64,
    pub e_j: f64,
    pub control: ControlPulse,
    pub scheme: Scheme,
}

impl Pendulum {
    pub fn new(params: &CpbParams, control: ControlPulse, scheme: Scheme) -> Self {
        Pendulum {
            e_c: params.e_c(),
            e_j: params.e_j(),
            control,
            scheme,
        }
    }

    pub fn plasma_frequency(&self) -> f64 {
        libm::sqrt(2.0 * self.e_c * self.e_j)
    }

    pub fn energy(&self, x: PhasePoint, t: f64) -> f64 {
        self.e_c * x.xi * x.xi - self.control.at(t) * x.xi - self.e_j * libm::cos(x.theta)
    }

    pub fn step(&self, x: &mut PhasePoint, t: f64, dt: f64) {
        let (e_c, e_j, control) = (self.e_c, self.e_j, self.control);
        let mut q = [x.theta];
        let mut p = [x.xi];
        split_step(
            self.scheme,
            &mut q,
            &mut p,
            t,
            dt,
            &|p: &[f64; 1], t: f64, v: &mut [f64; 1]| v[0] = 2.0 * e_c * p[0] - control.at(t),
            &|q: &[f64; 1], f: &mut [f64; 1]| f[0] = -e_j * libm::sin(q[0]),
        );
        x.theta = q[0];
        x.xi = p[0];
    }
}

pub(crate) fn check_step(dt: f64, t_end: f64, omega: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(invalid("t_end", format!("must be finite and >= 0, got {t_end}")));
    }
    if omega > 0.0 {
        let limit = 0.05 / omega;
        if dt >= limit {
            return Err(Error::StepTooLarge { dt, limit });
        }
    }
    Ok(libm::round(t_end / dt) as usize)
}

/// Integrate the controlled pendulum from `x0` over `[0, t_end]` with steps
/// of `dt` (the number of steps is `round(t_end / dt)`).
pub fn integrate_pendulum(
    x0: PhasePoint,
    params: &CpbParams,
    control: &ControlPulse,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_pendulum_with(x0, params, control, t_end, dt, PendulumOptions::default())
}

pub fn integrate_pendulum_with(
    x0: PhasePoint,
    params: &CpbParams,
    control: &ControlPulse,
    t_end: f64,
    dt: f64,
    options: PendulumOptions,
) -> Result<Trajectory> {
    control.validate()?;
    if !x0.theta.is_finite() || !x0.xi.is_finite() {
        return Err(Error::NonFinite("initial point"));
    }
    let sys = Pendulum::new(params, *control, options.scheme);
    let steps = check_step(dt, t_end, sys.plasma_frequency())?;
    let every = options.record_every.max(1);
    let mut traj = Trajectory::default();
    let mut x = x0;
    traj.push(0.0, x, sys.energy(x, 0.0));
    for n in 0..steps {
        let t = n as f64 * dt;
        sys.step(&mut x, t, dt);
        if (n + 1) % every == 0 || n + 1 == steps {
            let t1 = (n + 1) as f64 * dt;
            traj.push(t1, x, sys.energy(x, t1));
        }
    }
    if !x.theta.is_finite() || !x.xi.is_finite() {
        return Err(Error::NonFinite("pendulum trajectory"));
    }
    Ok(traj)
}

/// `(g/4)(n1 - U/g)^2 - K sqrt(n1 (N - n1)) cos θ`.
pub fn classical_h1(theta: f64, n1: f64, params: &CpbParams) -> Result<f64> {
    let n = params.total_pairs() as f64;
    if !(n1 > 0.0 && n1 < n) {
        return Err(invalid("n1", format!("must lie in (0, {n}), got {n1}")));
    }
    let g = params.interaction();
    let d = n1 - params.potential() / g;
    Ok(0.25 * g * d * d - params.tunneling() * libm::sqrt(n1 * (n - n1)) * libm::cos(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> CpbParams {
        CpbParams::from_josephson(1.0, 50.0, 20_000, 10_000.0).unwrap()
    }

    #[test]
    fn fixed_point_stays_put() {
        let tr = integrate_pendulum(PhasePoint::default(), &params(), &ControlPulse::none(), 1.0, 1e-3).unwrap();
        assert!(tr.theta.iter().all(|&t| t == 0.0));
        assert!(tr.xi.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn step_limit_enforced() {
        let r = integrate_pendulum(PhasePoint::new(0.1, 0.0), &params(), &ControlPulse::none(), 1.0, 0.01);
        assert!(matches!(r, Err(Error::StepTooLarge { .. })));
    }

    #[test]
    fn yoshida_beats_leapfrog() {
        let p = params();
        let x0 = PhasePoint::new(1.0, 0.0);
        let run = |scheme| {
            integrate_pendulum_with(
                x0,
                &p,
                &ControlPulse::none(),
                20.0,
                2e-3,
                PendulumOptions {
                    scheme,
                    record_every: 1,
                },
            )
            .unwrap()
            .energy_drift()
        };
        let lf = run(Scheme::Leapfrog);
        let y4 = run(Scheme::Yoshida4);
        assert!(y4 < lf / 100.0, "leapfrog {lf:e}, yoshida {y4:e}");
    }

    #[test]
    fn rotating_regime() {
        let p = params();
        let xi0 = libm::sqrt(2.5 * p.e_j() / p.e_c());
        let tr = integrate_pendulum(PhasePoint::new(0.0, xi0), &p, &ControlPulse::none(), 5.0, 1e-3).unwrap();
        assert!(tr.theta.windows(2).all(|w| w[1] > w[0]));
        assert!(tr.theta.last().unwrap() > &(4.0 * core::f64::consts::PI));
    }

    #[test]
    fn h1_special_values() {
        let p = CpbParams::from_josephson(1.0, 50.0, 20_000, 10_000.0).unwrap();
        let at_right_angle = classical_h1(core::f64::consts::FRAC_PI_2, 10_003.0, &p).unwrap();
        assert!((at_right_angle - 9.0).abs() < 1e-9);
        let bottom = classical_h1(0.0, 10_000.0, &p).unwrap();
        assert!((bottom + 50.0).abs() < 1e-12);
        assert!(classical_h1(0.0, 0.0, &p).is_err());
    }
}
