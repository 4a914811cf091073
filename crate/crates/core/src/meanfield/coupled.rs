//! Two boxes coupled through the charges on their first electrodes:
//! `h = E_C ξ² - E_J cos θ + E_C' ξ'² - E_J' cos θ' + (G/2) ξ ξ'`, with
//! controls entering as `-u ξ - u' ξ'`.

use alloc::format;

use crate::error::{invalid, Error, Result};
use crate::meanfield::control::ControlPulse;
use crate::meanfield::pendulum::{check_step, split_step, PendulumOptions};
use crate::meanfield::{PhasePoint, Trajectory};
use crate::params::CpbParams;

const STATIONARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledCpbParams {
    first: CpbParams,
    second: CpbParams,
    coupling: f64,
    potentials: (f64, f64),
}

impl CoupledCpbParams {
    /// Reference occupations are solved from `U = g n̄₁ + G n̄₁'` and
    /// `U' = g' n̄₁' + G n̄₁`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_potentials(
        e_c: (f64, f64),
        tunneling: (f64, f64),
        total_pairs: (u64, u64),
        potentials: (f64, f64),
        coupling: f64,
    ) -> Result<Self> {
        if !coupling.is_finite() {
            return Err(Error::NonFinite("coupling"));
        }
        let (g1, g2) = (4.0 * e_c.0, 4.0 * e_c.1);
        let det = g1 * g2 - coupling * coupling;
        if !(det.abs() > 1e-300) {
            return Err(invalid(
                "coupling",
                format!("stationary equations are singular for G = {coupling}"),
            ));
        }
        let (u, v) = potentials;
        let n1 = (u * g2 - coupling * v) / det;
        let n2 = (g1 * v - coupling * u) / det;
        let first = CpbParams::from_tunneling(e_c.0, tunneling.0, total_pairs.0, n1)?;
        let second = CpbParams::from_tunneling(e_c.1, tunneling.1, total_pairs.1, n2)?;
        let p = CoupledCpbParams {
            first,
            second,
            coupling,
            potentials,
        };
        p.check_stationary()?;
        Ok(p)
    }

    /// Take the reference occupations of `first` and `second` as given and
    /// derive the potentials that make them stationary.
    pub fn from_boxes(first: CpbParams, second: CpbParams, coupling: f64) -> Result<Self> {
        if !coupling.is_finite() {
            return Err(Error::NonFinite("coupling"));
        }
        let u = first.interaction() * first.n_bar() + coupling * second.n_bar();
        let v = second.interaction() * second.n_bar() + coupling * first.n_bar();
        Ok(CoupledCpbParams {
            first,
            second,
            coupling,
            potentials: (u, v),
        })
    }

    fn check_stationary(&self) -> Result<()> {
        let (r1, r2) = self.stationary_residuals();
        let (u, v) = self.potentials;
        let scale = u.abs().max(v.abs()).max(1.0);
        if r1.abs() > STATIONARY_TOL * scale || r2.abs() > STATIONARY_TOL * scale {
            return Err(Error::Precondition(format!(
                "stationary equations violated: residuals {r1:e}, {r2:e}"
            )));
        }
        Ok(())
    }

    /// `(U - g n̄₁ - G n̄₁', U' - g' n̄₁' - G n̄₁)`.
    pub fn stationary_residuals(&self) -> (f64, f64) {
        let (a, b) = (&self.first, &self.second);
        let (u, v) = self.potentials;
        (
            u - a.interaction() * a.n_bar() - self.coupling * b.n_bar(),
            v - b.interaction() * b.n_bar() - self.coupling * a.n_bar(),
        )
    }

    pub fn first(&self) -> &CpbParams {
        &self.first
    }

    pub fn second(&self) -> &CpbParams {
        &self.second
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn potentials(&self) -> (f64, f64) {
        self.potentials
    }

    pub fn energy(&self, x: PhasePoint, y: PhasePoint, u: f64, v: f64) -> f64 {
        let (a, b) = (&self.first, &self.second);
        a.e_c() * x.xi * x.xi - a.e_j() * libm::cos(x.theta) + b.e_c() * y.xi * y.xi - b.e_j() * libm::cos(y.theta)
            + 0.5 * self.coupling * x.xi * y.xi
            - u * x.xi
            - v * y.xi
    }

    /// Squared small-oscillation frequencies are the eigenvalues of
    /// `[[2 E_C E_J, (G/2) E_J'], [(G/2) E_J, 2 E_C' E_J']]`.
    pub fn normal_mode_frequencies(&self) -> (f64, f64) {
        let (a, b) = (&self.first, &self.second);
        let m11 = 2.0 * a.e_c() * a.e_j();
        let m22 = 2.0 * b.e_c() * b.e_j();
        let off = 0.25 * self.coupling * self.coupling * a.e_j() * b.e_j();
        let mean = 0.5 * (m11 + m22);
        let split = libm::sqrt(0.25 * (m11 - m22) * (m11 - m22) + off);
        (libm::sqrt((mean - split).max(0.0)), libm::sqrt(mean + split))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoupledTrajectory {
    pub first: Trajectory,
    pub second: Trajectory,
    /// Total energy of the coupled system at each sample.
    pub energy: alloc::vec::Vec<f64>,
}

impl CoupledTrajectory {
    pub fn energy_drift(&self) -> f64 {
        let Some(&e0) = self.energy.first() else { return 0.0 };
        let scale = if e0 == 0.0 { 1.0 } else { e0.abs() };
        self.energy.iter().map(|e| (e - e0).abs() / scale).fold(0.0, f64::max)
    }
}

/// Integrate both boxes with the same splitting scheme as the single
/// pendulum. The per-box trajectories carry the uncoupled single-box
/// energies; the coupled energy is stored separately.
pub fn integrate_coupled(
    x0: PhasePoint,
    y0: PhasePoint,
    params: &CoupledCpbParams,
    controls: (&ControlPulse, &ControlPulse),
    t_end: f64,
    dt: f64,
    options: PendulumOptions,
) -> Result<CoupledTrajectory> {
    controls.0.validate()?;
    controls.1.validate()?;
    let (a, b) = (params.first, params.second);
    let omega = a.plasma_frequency().max(b.plasma_frequency());
    let steps = check_step(dt, t_end, omega)?;
    let (ec1, ej1, ec2, ej2, g) = (a.e_c(), a.e_j(), b.e_c(), b.e_j(), params.coupling);
    let (c1, c2) = (*controls.0, *controls.1);

    let velocity = |p: &[f64; 2], t: f64, v: &mut [f64; 2]| {
        v[0] = 2.0 * ec1 * p[0] + 0.5 * g * p[1] - c1.at(t);
        v[1] = 2.0 * ec2 * p[1] + 0.5 * g * p[0] - c2.at(t);
    };
    let force = |q: &[f64; 2], f: &mut [f64; 2]| {
        f[0] = -ej1 * libm::sin(q[0]);
        f[1] = -ej2 * libm::sin(q[1]);
    };
    let single_energy =
        |e_c: f64, e_j: f64, x: PhasePoint, u: f64| e_c * x.xi * x.xi - u * x.xi - e_j * libm::cos(x.theta);

    let mut out = CoupledTrajectory::default();
    let record = |out: &mut CoupledTrajectory, t: f64, q: &[f64; 2], p: &[f64; 2]| {
        let x = PhasePoint::new(q[0], p[0]);
        let y = PhasePoint::new(q[1], p[1]);
        let (u, v) = (c1.at(t), c2.at(t));
        out.first.push(t, x, single_energy(ec1, ej1, x, u));
        out.second.push(t, y, single_energy(ec2, ej2, y, v));
        out.energy.push(params.energy(x, y, u, v));
    };

    let every = options.record_every.max(1);
    let mut q = [x0.theta, y0.theta];
    let mut p = [x0.xi, y0.xi];
    if q.iter().chain(&p).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("initial point"));
    }
    record(&mut out, 0.0, &q, &p);
    for n in 0..steps {
        split_step(options.scheme, &mut q, &mut p, n as f64 * dt, dt, &velocity, &force);
        if (n + 1) % every == 0 || n + 1 == steps {
            record(&mut out, (n + 1) as f64 * dt, &q, &p);
        }
    }
    if q.iter().chain(&p).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("coupled trajectory"));
    }
    Ok(out)
}
