use std::f64::consts::PI;

use cpb_core::bose_hubbard::{build_bose_hubbard, build_oscillator_hamiltonian, default_cutoff};
use cpb_core::meanfield::{integrate_pendulum, zero_crossing_frequency, ControlPulse, PhasePoint};
use cpb_core::quantum_phase::{build_phase_operator, Convention, PhaseModelParams};
use cpb_core::{eigensolve, CpbParams};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::LabError;
use crate::output::{Report, Table};

/// Lowest levels of the Bose-Hubbard and phase models, computed in parallel.
/// The phase model uses the literal convention unless `match_convention`.
pub fn spectra(cfg: &RunConfig) -> Result<(Vec<f64>, Vec<f64>), LabError> {
    let c = &cfg.compare;
    let params = cfg.junction.params()?;
    let convention = if c.match_convention {
        Convention::HoppingMatch
    } else {
        Convention::Literal
    };
    let (bh, phase) = rayon::join(
        || -> Result<_, LabError> { Ok(eigensolve(&build_bose_hubbard(&params)?, c.count)?.values) },
        || -> Result<_, LabError> {
            let p = PhaseModelParams::from_cpb(&params, c.phase_cutoff)?;
            Ok(eigensolve(&build_phase_operator(&p, convention)?, c.count)?.values)
        },
    );
    Ok((bh?, phase?))
}

fn plasma(params: &CpbParams) -> Result<Value, LabError> {
    let nominal = params.plasma_frequency();
    let osc = eigensolve(
        &build_oscillator_hamiltonian(params, default_cutoff(params.n_bar()))?,
        2,
    )?;
    let gap = osc.values[1] - osc.values[0];
    let value = if nominal > 0.0 {
        let period = 2.0 * PI / nominal;
        let dt = period / 2000.0;
        let traj = integrate_pendulum(
            PhasePoint::new(1e-3, 0.0),
            params,
            &ControlPulse::none(),
            20.0 * period,
            dt,
        )?;
        let pendulum = zero_crossing_frequency(&traj.t, &traj.theta)?;
        json!({ "nominal": nominal, "oscillator_gap": gap, "pendulum": pendulum, "gap_over_pendulum": gap / pendulum })
    } else {
        json!({ "nominal": nominal, "oscillator_gap": gap, "pendulum": 0.0, "gap_over_pendulum": Value::Null })
    };
    Ok(value)
}

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let c = &cfg.compare;
    let (bh, phase) = spectra(cfg)?;
    let scale = cfg.junction.e_c;
    let mut table = Table::new(["level", "bose_hubbard", "phase", "difference", "relative_error"]);
    let (mut max_abs, mut max_rel) = (0.0f64, 0.0f64);
    for (k, (x, y)) in bh.iter().zip(&phase).enumerate() {
        let (x, y) = (x - bh[0], y - phase[0]);
        let diff = y - x;
        let rel = diff.abs() / if x > 0.0 { x } else { scale };
        max_abs = max_abs.max(diff.abs());
        max_rel = max_rel.max(rel);
        table.push(vec![k.into(), x.into(), y.into(), diff.into(), rel.into()]);
    }
    let gap_bh = bh[1] - bh[0];
    let gap_phase = phase[1] - phase[0];
    let params = cfg.junction.params()?;
    let summary = json!({
        "convention": if c.match_convention { "hopping-match" } else { "literal" },
        "levels": bh.len(),
        "ground_energies": { "bose_hubbard": bh[0], "phase": phase[0] },
        "max_abs_difference": max_abs,
        "max_relative_error": max_rel,
        "gap_ratio": if gap_bh > 0.0 { json!(gap_phase / gap_bh) } else { Value::Null },
        "plasma": if c.plasma { plasma(&params)? } else { Value::Null },
    });
    Ok(Report {
        table: Some(table),
        summary: Some(summary),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;

    #[test]
    fn matched_convention_agrees() {
        let mut cfg = RunConfig {
            command: Some(Command::Compare),
            ..RunConfig::default()
        };
        cfg.compare.match_convention = true;
        cfg.compare.plasma = false;
        let s = run(&cfg).unwrap().summary.unwrap();
        assert!(s["max_relative_error"].as_f64().unwrap() < 1e-6);
        assert!((s["gap_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-6);

        cfg.compare.match_convention = false;
        let s = run(&cfg).unwrap().summary.unwrap();
        assert!(s["max_relative_error"].as_f64().unwrap() > 1e-2);
        let ratio = s["gap_ratio"].as_f64().unwrap();
        assert!((ratio - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.02, "{ratio}");
    }

    #[test]
    fn zero_coupling_gives_identical_parabolas() {
        let mut cfg = RunConfig {
            command: Some(Command::Compare),
            ..RunConfig::default()
        };
        cfg.junction.e_j = 0.0;
        cfg.compare.plasma = false;
        let s = run(&cfg).unwrap().summary.unwrap();
        assert_eq!(s["max_abs_difference"].as_f64().unwrap(), 0.0);
    }
}
