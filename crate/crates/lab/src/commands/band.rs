use cpb_core::quantum_phase::{band_point, PhaseModelParams};
use rayon::prelude::*;

use crate::config::{phase_cutoff, RunConfig};
use crate::error::LabError;
use crate::output::{Report, Table};

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    let b = &cfg.band;
    let j = &cfg.junction;
    let cutoff = b.cutoff.unwrap_or_else(|| phase_cutoff(j));
    let p = PhaseModelParams::new(j.e_c, j.e_j, 0.0, cutoff)?;
    let convention = b.convention.into();
    let grid = b.grid();
    let points = grid
        .par_iter()
        .map(|&a| band_point(&p, convention, a, b.count))
        .collect::<Result<Vec<_>, _>>()?;

    let mut columns = vec!["offset".to_string()];
    columns.extend((0..b.count).map(|i| format!("level_{i}")));
    let mut table = Table::new(columns);
    for (a, point) in grid.iter().zip(points) {
        let mut row = vec![(*a).into()];
        row.extend(point.values.into_iter().map(Into::into));
        table.push(row);
    }
    Ok(Report {
        table: Some(table),
        summary: None,
    })
}
