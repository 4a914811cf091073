use cpb_core::bose_hubbard::{
    build_bose_hubbard, build_oscillator_hamiltonian, build_two_mode_restricted, default_cutoff,
};
use cpb_core::quantum_phase::{build_phase_operator, PhaseModelParams};
use cpb_core::{eigensolve, HamiltonianMatrix, Spectrum};

use crate::config::{phase_cutoff, Model, RunConfig};
use crate::error::LabError;
use crate::output::{Report, Table};

/// The Hamiltonian selected by `spectrum.model`.
pub fn hamiltonian(cfg: &RunConfig) -> Result<HamiltonianMatrix, LabError> {
    let s = &cfg.spectrum;
    let params = cfg.junction.params()?;
    let h = match s.model {
        Model::BoseHubbard => build_bose_hubbard(&params)?,
        Model::TwoMode => {
            let u2 = s.u1 + 4.0 * params.e_c() * params.n_bar();
            build_two_mode_restricted(&params, s.u1, u2, s.hopping.into())?
        }
        Model::Oscillator => {
            build_oscillator_hamiltonian(&params, s.cutoff.unwrap_or_else(|| default_cutoff(params.n_bar())))?
        }
        Model::Phase => {
            let cutoff = s.cutoff.unwrap_or_else(|| phase_cutoff(&cfg.junction));
            build_phase_operator(&PhaseModelParams::from_cpb(&params, cutoff)?, s.convention.into())?
        }
    };
    Ok(h)
}

pub fn levels(cfg: &RunConfig) -> Result<Spectrum, LabError> {
    Ok(eigensolve(&hamiltonian(cfg)?, cfg.spectrum.count)?)
}

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let spectrum = levels(cfg)?;
    let mut table = Table::new(["level", "energy", "excitation"]);
    for (k, (e, x)) in spectrum.values.iter().zip(spectrum.excitations()).enumerate() {
        table.push(vec![k.into(), (*e).into(), x.into()]);
    }
    Ok(Report {
        table: Some(table),
        summary: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Command, Junction};

    fn cfg(model: Model) -> RunConfig {
        let mut cfg = RunConfig {
            command: Some(Command::Spectrum),
            ..RunConfig::default()
        };
        cfg.junction = Junction {
            e_c: 1.0,
            e_j: 4.0,
            total_pairs: 200,
            n_bar: 100.0,
        };
        cfg.spectrum.model = model;
        cfg
    }

    #[test]
    fn bose_hubbard_and_phase_agree() {
        let a = levels(&cfg(Model::BoseHubbard)).unwrap().values;
        let b = levels(&cfg(Model::Phase)).unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
    }

    #[test]
    fn table_has_requested_rows() {
        let report = run(&cfg(Model::TwoMode)).unwrap();
        let table = report.table.unwrap();
        assert_eq!(table.rows.len(), 5);
        assert_eq!(table.columns, ["level", "energy", "excitation"]);
    }
}
