use cpb_core::stability::gibbs_number_stats;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::LabError;
use crate::output::{Report, Table};

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let j = &cfg.junction;
    let cutoff = cfg.gibbs.cutoff_for(j);
    let stats = cfg
        .gibbs
        .kt
        .par_iter()
        .map(|&kt| gibbs_number_stats(j.e_c, j.n_bar, kt, cutoff))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(["kt", "mean", "variance", "tail_weight", "truncation_warning"]);
    for (kt, s) in cfg.gibbs.kt.iter().zip(stats) {
        table.push(vec![
            (*kt).into(),
            s.mean.into(),
            s.variance.into(),
            s.tail_weight.into(),
            s.truncation_warning.into(),
        ]);
    }
    Ok(Report {
        table: Some(table),
        summary: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;
    use crate::output::Cell;

    #[test]
    fn variance_grows_with_temperature() {
        let mut cfg = RunConfig {
            command: Some(Command::Gibbs),
            ..RunConfig::default()
        };
        cfg.gibbs.kt = vec![0.25, 1.0, 4.0];
        let t = run(&cfg).unwrap().table.unwrap();
        let var: Vec<f64> = t
            .rows
            .iter()
            .map(|r| match r[2] {
                Cell::Float(x) => x,
                _ => panic!(),
            })
            .collect();
        assert!(var[0] < var[1] && var[1] < var[2]);
        assert!(t.rows.iter().all(|r| r[4] == Cell::Bool(false)));
    }
}
