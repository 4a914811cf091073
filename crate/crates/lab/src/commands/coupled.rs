use cpb_core::meanfield::{integrate_coupled, CoupledCpbParams, PendulumOptions, PhasePoint};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::LabError;
use crate::output::{Report, Table};

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let c = &cfg.coupled;
    let params = CoupledCpbParams::from_boxes(cfg.junction.params()?, c.second.params()?, c.coupling)?;
    let (u, v) = (c.control.pulse(), c.control_second.pulse());
    let options = PendulumOptions {
        scheme: c.scheme.into(),
        record_every: c.record_every,
    };
    let traj = integrate_coupled(
        PhasePoint::new(c.theta0[0], c.xi0[0]),
        PhasePoint::new(c.theta0[1], c.xi0[1]),
        &params,
        (&u, &v),
        c.t_end,
        c.dt,
        options,
    )?;
    let (a, b) = (&traj.first, &traj.second);
    let mut table = Table::new(["t", "theta_a", "xi_a", "theta_b", "xi_b", "energy"]);
    for i in 0..a.len() {
        table.push(vec![
            a.t[i].into(),
            a.theta[i].into(),
            a.xi[i].into(),
            b.theta[i].into(),
            b.xi[i].into(),
            traj.energy[i].into(),
        ]);
    }
    let (lo, hi) = params.normal_mode_frequencies();
    let summary = json!({
        "samples": a.len(),
        "normal_modes": [lo, hi],
        "energy_drift": traj.energy_drift(),
    });
    Ok(Report {
        table: Some(table),
        summary: Some(summary),
    })
}
