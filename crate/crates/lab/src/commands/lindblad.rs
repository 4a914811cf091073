use cpb_core::bose_hubbard::{coherent_vector, oscillator_matrix};
use cpb_core::stability::{
    evolve_master, fidelity_decay_rate, lifetime_ratio, DensityMatrix, LindbladParams, MasterOptions,
};
use cpb_core::{Basis, Complex64, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{InitialState, MasterHamiltonian, RunConfig};
use crate::error::LabError;
use crate::output::{Report, Table};

/// Initial pure state selected by `lindblad.state`.
pub fn initial_state(cfg: &RunConfig) -> Result<StateVector, LabError> {
    let l = &cfg.lindblad;
    let basis = Basis::Fock { cutoff: l.cutoff };
    let phi = match l.state {
        InitialState::Coherent => coherent_vector(l.n1, l.theta, l.cutoff)?,
        InitialState::Fock => StateVector::basis_state(l.level, basis)?,
        InitialState::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let amps: Vec<Complex64> = (0..=l.cutoff)
                .map(|k| {
                    if k < l.support {
                        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            StateVector::new(amps, basis)?.normalized()?
        }
    };
    Ok(phi)
}

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let l = &cfg.lindblad;
    let params = LindbladParams::new(l.gamma, l.delta)?;
    let phi = initial_state(cfg)?;
    let h = match l.hamiltonian {
        MasterHamiltonian::None => None,
        MasterHamiltonian::Oscillator => Some(oscillator_matrix(&cfg.junction.params()?, l.cutoff)?),
    };
    let rho0 = DensityMatrix::pure(&phi)?;
    let options = MasterOptions {
        record_every: l.record_every,
    };
    let traj = evolve_master(&rho0, h.as_ref(), &params, l.t_end, l.dt, options)?;

    let mut table = Table::new(["t", "fidelity", "trace", "purity", "mean_number"]);
    for (t, rho) in traj.t.iter().zip(&traj.states) {
        table.push(vec![
            (*t).into(),
            rho.fidelity(&phi)?.into(),
            rho.trace().into(),
            rho.purity().into(),
            rho.mean_number().into(),
        ]);
    }
    let n_mean = phi.number_moments().mean;
    let summary = json!({
        "samples": traj.t.len(),
        "initial_decay_rate": fidelity_decay_rate(&phi, &params),
        "fock_to_coherent_lifetime_ratio": lifetime_ratio(n_mean, &params)?,
        "initial_mean_number": n_mean,
        "leakage_warnings": traj.leakage_warnings,
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
    use crate::output::Cell;

    fn cfg(state: InitialState) -> RunConfig {
        let mut cfg = RunConfig {
            command: Some(Command::Lindblad),
            seed: 3,
            ..RunConfig::default()
        };
        cfg.lindblad.state = state;
        cfg.lindblad.t_end = 0.05;
        cfg
    }

    #[test]
    fn fidelity_starts_at_one_and_decays() {
        for state in [InitialState::Coherent, InitialState::Fock, InitialState::Random] {
            let mut c = cfg(state);
            c.lindblad.level = 3;
            let t = run(&c).unwrap().table.unwrap();
            let Cell::Float(f0) = t.rows[0][1] else { panic!() };
            let Cell::Float(f1) = t.rows.last().unwrap()[1] else {
                panic!()
            };
            assert!((f0 - 1.0).abs() < 1e-12, "{state:?}");
            assert!(f1 < f0, "{state:?}");
        }
    }

    #[test]
    fn random_start_depends_on_seed_only() {
        let a = initial_state(&cfg(InitialState::Random)).unwrap();
        let b = initial_state(&cfg(InitialState::Random)).unwrap();
        assert_eq!(a, b);
        let mut other = cfg(InitialState::Random);
        other.seed = 4;
        assert_ne!(a, initial_state(&other).unwrap());
    }
}
