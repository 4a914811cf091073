use cpb_core::meanfield::{
    integrate_gp, integrate_pendulum_with, wrap_angle, CondensateAmplitudes, GpCoefficients, PendulumOptions,
    PhasePoint,
};
use serde_json::json;

use crate::config::{GpMapping, Integrator, RunConfig};
use crate::error::LabError;
use crate::output::{Report, Table};

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let d = &cfg.dynamics;
    let params = cfg.junction.params()?;
    let pulse = d.control.pulse();
    let x0 = PhasePoint::new(d.theta0, d.xi0);

    match d.integrator {
        Integrator::Pendulum => {
            let options = PendulumOptions {
                scheme: d.scheme.into(),
                record_every: d.record_every,
            };
            let traj = integrate_pendulum_with(x0, &params, &pulse, d.t_end, d.dt, options)?;
            let mut table = Table::new(["t", "theta_wrapped", "theta_unwrapped", "xi", "energy"]);
            for i in 0..traj.len() {
                table.push(vec![
                    traj.t[i].into(),
                    wrap_angle(traj.theta[i]).into(),
                    traj.theta[i].into(),
                    traj.xi[i].into(),
                    traj.energy[i].into(),
                ]);
            }
            let last = traj.last().expect("initial point recorded");
            let summary = json!({
                "integrator": d.integrator,
                "samples": traj.len(),
                "plasma_frequency": params.plasma_frequency(),
                "energy_drift": traj.energy_drift(),
                "final": { "theta": last.theta, "xi": last.xi },
            });
            Ok(Report {
                table: Some(table),
                summary: Some(summary),
            })
        }
        Integrator::Gp => {
            let coeffs = match d.mapping {
                GpMapping::Matched => GpCoefficients::matched(&params),
                GpMapping::Literal => GpCoefficients::literal(&params),
            };
            let n = params.total_pairs() as f64;
            let phi0 = CondensateAmplitudes::from_point(x0, params.n_bar(), n)?;
            let traj = integrate_gp(phi0, &coeffs, &pulse, d.t_end, d.dt, d.record_every)?;
            let points = traj.phase_points(params.n_bar());
            let mut table = Table::new([
                "t",
                "theta_wrapped",
                "theta_unwrapped",
                "xi",
                "energy",
                "phi1_sq",
                "phi2_sq",
            ]);
            for (i, p) in points.iter().enumerate() {
                let phi = traj.phi[i];
                table.push(vec![
                    traj.t[i].into(),
                    wrap_angle(p.theta).into(),
                    p.theta.into(),
                    p.xi.into(),
                    traj.energy[i].into(),
                    phi.phi1.norm_sqr().into(),
                    phi.phi2.norm_sqr().into(),
                ]);
            }
            let last = points.last().expect("initial point recorded");
            let summary = json!({
                "integrator": d.integrator,
                "mapping": d.mapping,
                "samples": traj.len(),
                "plasma_frequency": params.plasma_frequency(),
                "norm_drift": traj.norm_drift(),
                "final": { "theta": last.theta, "xi": last.xi },
            });
            Ok(Report {
                table: Some(table),
                summary: Some(summary),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;

    #[test]
    fn pendulum_and_gp_tables() {
        let mut cfg = RunConfig {
            command: Some(Command::Dynamics),
            ..RunConfig::default()
        };
        cfg.dynamics.t_end = 0.5;
        let pendulum = run(&cfg).unwrap();
        assert_eq!(pendulum.table.unwrap().rows.len(), 51);
        assert!(pendulum.summary.unwrap()["energy_drift"].as_f64().unwrap() < 1e-8);

        cfg.dynamics.integrator = Integrator::Gp;
        cfg.dynamics.dt = 2e-5;
        cfg.dynamics.t_end = 0.1;
        cfg.dynamics.record_every = 500;
        let gp = run(&cfg).unwrap();
        let table = gp.table.unwrap();
        assert_eq!(table.columns.len(), 7);
        assert_eq!(table.rows.len(), 11);
        assert!(gp.summary.unwrap()["norm_drift"].as_f64().unwrap() < 1e-9);
    }
}
