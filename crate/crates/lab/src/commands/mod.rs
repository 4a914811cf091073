//! One module per subcommand. Each turns a validated [`RunConfig`] into a
//! [`Report`].

pub mod band;
pub mod compare;
pub mod coupled;
pub mod dynamics;
pub mod gibbs;
pub mod lindblad;
pub mod spectrum;
pub mod witness;

use crate::config::{Command, RunConfig};
use crate::error::LabError;
use crate::output::Report;

pub fn run(cfg: &RunConfig) -> Result<Report, LabError> {
    cfg.validate()?;
    match cfg.command() {
        Command::Spectrum => spectrum::run(cfg),
        Command::Band => band::run(cfg),
        Command::Dynamics => dynamics::run(cfg),
        Command::Coupled => coupled::run(cfg),
        Command::Lindblad => lindblad::run(cfg),
        Command::Gibbs => gibbs::run(cfg),
        Command::Witness => witness::run(cfg),
        Command::Compare => compare::run(cfg),
    }
}
