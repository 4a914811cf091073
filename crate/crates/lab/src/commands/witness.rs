use cpb_core::linalg::CMatrix;
use cpb_core::witness::{
    check_dominance, classical_no_go_property, find_violation, paper_instance, paper_state, witness_value,
    ObservablePair,
};
use cpb_core::Complex64;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::LabError;
use crate::output::Report;

fn real_matrix(rows: &[Vec<f64>]) -> Result<CMatrix, LabError> {
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Ok(CMatrix::from_real(rows.len(), &flat)?)
}

fn state_json(state: &[Complex64]) -> Value {
    state.iter().map(|z| json!([z.re, z.im])).collect()
}

/// Observables and evaluation state from the config.
pub fn instance(cfg: &RunConfig) -> Result<(ObservablePair, Option<Vec<Complex64>>), LabError> {
    let w = &cfg.witness;
    let given = (!w.state.is_empty()).then(|| w.state.iter().map(|&x| Complex64::new(x, 0.0)).collect());
    if w.paper_instance {
        Ok((paper_instance(), given.or_else(|| Some(paper_state().to_vec()))))
    } else {
        Ok((ObservablePair::new(real_matrix(&w.a)?, real_matrix(&w.b)?)?, given))
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let w = &cfg.witness;
    let (pair, state) = instance(cfg)?;
    let dominance = check_dominance(&pair, w.tolerance)?;
    let violation = find_violation(&pair)?;
    let value = match &state {
        Some(phi) => witness_value(&pair, phi)?,
        None => violation
            .as_ref()
            .map_or(pair.witness_operator().min_eigenvalue()?, |v| v.value),
    };
    let no_go = if w.no_go_samples > 0 {
        let [lo, hi] = w.no_go_dims;
        let r = classical_no_go_property(w.no_go_samples, lo..=hi, cfg.seed, w.no_go_rotate)?;
        json!({ "samples": r.samples, "violations": r.violations, "worst": r.worst, "passed": r.passed() })
    } else {
        Value::Null
    };
    let summary = json!({
        "dimension": pair.dim(),
        "margins": { "a": dominance.margin_a, "b_minus_a": dominance.margin_ba },
        "certified": dominance.certified,
        "tolerance": dominance.tolerance,
        "witness_value": value,
        "state": state.as_deref().map(state_json),
        "violating_state": violation.as_ref().map(|v| json!({ "value": v.value, "state": state_json(&v.state) })),
        "no_go": no_go,
    });
    Ok(Report {
        table: None,
        summary: Some(summary),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;

    #[test]
    fn built_in_instance_violates() {
        let cfg = RunConfig {
            command: Some(Command::Witness),
            ..RunConfig::default()
        };
        let s = run(&cfg).unwrap().summary.unwrap();
        assert!(s["witness_value"].as_f64().unwrap() < -0.05);
        assert_eq!(s["certified"], json!(true));
        assert!(s["violating_state"]["value"].as_f64().unwrap() <= s["witness_value"].as_f64().unwrap());
    }

    #[test]
    fn commuting_pair_has_no_violation() {
        let mut cfg = RunConfig {
            command: Some(Command::Witness),
            ..RunConfig::default()
        };
        cfg.witness.paper_instance = false;
        cfg.witness.a = vec![vec![0.2, 0.0], vec![0.0, 0.5]];
        cfg.witness.b = vec![vec![0.3, 0.0], vec![0.0, 0.9]];
        cfg.witness.no_go_samples = 50;
        let s = run(&cfg).unwrap().summary.unwrap();
        assert!(s["violating_state"].is_null());
        assert!(s["witness_value"].as_f64().unwrap() >= 0.0);
        assert_eq!(s["no_go"]["passed"], json!(true));
    }
}
