//! Flags layered over the config file: defaults, then the file, then flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{
    Command, Control, ControlKind, Convention, GpMapping, Hopping, InitialState, Integrator, MasterHamiltonian, Model,
    RunConfig, Scheme,
};
use crate::error::LabError;

#[derive(Debug, Parser)]
#[command(
    name = "cpb-lab",
    version,
    about = "Cooper pair box experiments with CSV/JSON output"
)]
pub struct Cli {
    /// TOML or JSON config, or an earlier CSV/JSON output to rerun.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = "CPB_LAB_OUT")]
    pub out_dir: Option<PathBuf>,
    /// File name stem of the artifacts; defaults to the command name.
    #[arg(long, global = true)]
    pub stem: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub junction: JunctionArgs,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct JunctionArgs {
    /// Charging energy `E_C`.
    #[arg(long = "ec", global = true, allow_hyphen_values = true)]
    pub e_c: Option<f64>,
    /// Josephson energy `E_J`.
    #[arg(long = "ej", global = true, allow_hyphen_values = true)]
    pub e_j: Option<f64>,
    /// Total number of pairs `N`.
    #[arg(long = "N", global = true)]
    pub total_pairs: Option<u64>,
    /// Reference occupation `n̄₁`.
    #[arg(long = "n-bar", global = true, allow_hyphen_values = true)]
    pub n_bar: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Lowest levels of one model.
    Spectrum(SpectrumArgs),
    /// Phase-model levels against the offset charge.
    Band(BandArgs),
    /// Classical pendulum or condensate amplitude evolution.
    Dynamics(DynamicsArgs),
    /// Two capacitively coupled boxes.
    Coupled(CoupledArgs),
    /// Master-equation evolution of a truncated oscillator.
    Lindblad(LindbladArgs),
    /// Thermal number statistics.
    Gibbs(GibbsArgs),
    /// Quantumness witness for a pair of observables.
    Witness(WitnessArgs),
    /// Bose-Hubbard against phase-model levels.
    Compare(CompareArgs),
    /// Run the command named in `--config`.
    Run,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, value_enum)]
    pub hopping: Option<Hopping>,
    #[arg(long, value_enum)]
    pub convention: Option<Convention>,
    #[arg(long, allow_negative_numbers = true)]
    pub u1: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BandArgs {
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, value_enum)]
    pub convention: Option<Convention>,
    /// Explicit offsets, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub offsets: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub offset_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub offset_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ControlArgs {
    #[arg(long = "control", value_enum)]
    pub kind: Option<ControlKind>,
    #[arg(long = "control-amplitude", allow_negative_numbers = true)]
    pub amplitude: Option<f64>,
    #[arg(long = "control-center", allow_negative_numbers = true)]
    pub center: Option<f64>,
    #[arg(long = "control-width", allow_negative_numbers = true)]
    pub width: Option<f64>,
    #[arg(long = "control-frequency", allow_negative_numbers = true)]
    pub frequency: Option<f64>,
    #[arg(long = "control-phase", allow_negative_numbers = true)]
    pub phase: Option<f64>,
}

impl ControlArgs {
    fn apply(&self, c: &mut Control) {
        set(&mut c.kind, self.kind);
        set(&mut c.amplitude, self.amplitude);
        set(&mut c.center, self.center);
        set(&mut c.width, self.width);
        set(&mut c.frequency, self.frequency);
        set(&mut c.phase, self.phase);
    }
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[arg(long, value_enum)]
    pub integrator: Option<Integrator>,
    #[arg(long, value_enum)]
    pub scheme: Option<Scheme>,
    #[arg(long, value_enum)]
    pub mapping: Option<GpMapping>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xi0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub record_every: Option<usize>,
    #[command(flatten)]
    pub control: ControlArgs,
}

#[derive(Debug, Args)]
pub struct CoupledArgs {
    /// `E_C` of the second box.
    #[arg(long = "ec2", allow_negative_numbers = true)]
    pub e_c2: Option<f64>,
    /// `E_J` of the second box.
    #[arg(long = "ej2", allow_negative_numbers = true)]
    pub e_j2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub coupling: Option<f64>,
    #[arg(long, value_enum)]
    pub scheme: Option<Scheme>,
    /// Initial phases of both boxes, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub theta0: Option<Vec<f64>>,
    /// Initial charges of both boxes, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub xi0: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub record_every: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LindbladArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, value_enum)]
    pub state: Option<InitialState>,
    #[arg(long, allow_negative_numbers = true)]
    pub n1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long)]
    pub support: Option<usize>,
    #[arg(long, value_enum)]
    pub hamiltonian: Option<MasterHamiltonian>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub record_every: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GibbsArgs {
    /// Temperatures `kT`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub kt: Option<Vec<f64>>,
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Use the built-in 2x2 instance and its paired state.
    #[arg(long)]
    pub paper_instance: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
    /// Also sample this many commuting pairs.
    #[arg(long)]
    pub no_go_samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum, value_delimiter = ',')]
    pub models: Option<Vec<Model>>,
    /// Use the phase-model convention with the Bose-Hubbard hopping.
    #[arg(long)]
    pub match_convention: bool,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub phase_cutoff: Option<usize>,
    /// Skip the plasma-frequency extraction.
    #[arg(long)]
    pub no_plasma: bool,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn pair(name: &str, values: Option<Vec<f64>>, slot: &mut [f64; 2], errors: &mut Vec<String>) {
    match values.as_deref() {
        None => {}
        Some(&[a, b]) => *slot = [a, b],
        Some(other) => errors.push(format!("--{name}: expected two values, got {}", other.len())),
    }
}

impl Cli {
    /// Resolved config: defaults, then `--config`, then flags.
    pub fn resolve(self) -> Result<RunConfig, LabError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mut errors = Vec::new();
        set(&mut cfg.seed, self.seed);
        set(&mut cfg.output.stem, self.stem.map(Some));
        set(&mut cfg.output.dir, self.out_dir.map(Some));
        let j = &self.junction;
        set(&mut cfg.junction.e_c, j.e_c);
        set(&mut cfg.junction.e_j, j.e_j);
        set(&mut cfg.junction.total_pairs, j.total_pairs);
        set(&mut cfg.junction.n_bar, j.n_bar);

        let command = match self.command {
            Sub::Run => {
                if cfg.command.is_none() {
                    errors.push("command: `run` needs a config that names the command".into());
                }
                cfg.command
            }
            Sub::Spectrum(a) => {
                let s = &mut cfg.spectrum;
                set(&mut s.model, a.model);
                set(&mut s.count, a.count);
                set(&mut s.cutoff, a.cutoff.map(Some));
                set(&mut s.hopping, a.hopping);
                set(&mut s.convention, a.convention);
                set(&mut s.u1, a.u1);
                Some(Command::Spectrum)
            }
            Sub::Band(a) => {
                let b = &mut cfg.band;
                set(&mut b.count, a.count);
                set(&mut b.cutoff, a.cutoff.map(Some));
                set(&mut b.convention, a.convention);
                set(&mut b.offsets, a.offsets);
                set(&mut b.offset_min, a.offset_min);
                set(&mut b.offset_max, a.offset_max);
                set(&mut b.points, a.points);
                Some(Command::Band)
            }
            Sub::Dynamics(a) => {
                let d = &mut cfg.dynamics;
                set(&mut d.integrator, a.integrator);
                set(&mut d.scheme, a.scheme);
                set(&mut d.mapping, a.mapping);
                set(&mut d.theta0, a.theta0);
                set(&mut d.xi0, a.xi0);
                set(&mut d.t_end, a.t_end);
                set(&mut d.dt, a.dt);
                set(&mut d.record_every, a.record_every);
                a.control.apply(&mut d.control);
                Some(Command::Dynamics)
            }
            Sub::Coupled(a) => {
                let c = &mut cfg.coupled;
                set(&mut c.second.e_c, a.e_c2);
                set(&mut c.second.e_j, a.e_j2);
                set(&mut c.coupling, a.coupling);
                set(&mut c.scheme, a.scheme);
                pair("theta0", a.theta0, &mut c.theta0, &mut errors);
                pair("xi0", a.xi0, &mut c.xi0, &mut errors);
                set(&mut c.t_end, a.t_end);
                set(&mut c.dt, a.dt);
                set(&mut c.record_every, a.record_every);
                Some(Command::Coupled)
            }
            Sub::Lindblad(a) => {
                let l = &mut cfg.lindblad;
                set(&mut l.gamma, a.gamma);
                set(&mut l.delta, a.delta);
                set(&mut l.cutoff, a.cutoff);
                set(&mut l.state, a.state);
                set(&mut l.n1, a.n1);
                set(&mut l.theta, a.theta);
                set(&mut l.level, a.level);
                set(&mut l.support, a.support);
                set(&mut l.hamiltonian, a.hamiltonian);
                set(&mut l.t_end, a.t_end);
                set(&mut l.dt, a.dt);
                set(&mut l.record_every, a.record_every);
                Some(Command::Lindblad)
            }
            Sub::Gibbs(a) => {
                set(&mut cfg.gibbs.kt, a.kt);
                set(&mut cfg.gibbs.cutoff, a.cutoff.map(Some));
                Some(Command::Gibbs)
            }
            Sub::Witness(a) => {
                let w = &mut cfg.witness;
                if a.paper_instance {
                    w.paper_instance = true;
                }
                set(&mut w.tolerance, a.tolerance);
                set(&mut w.no_go_samples, a.no_go_samples);
                Some(Command::Witness)
            }
            Sub::Compare(a) => {
                let c = &mut cfg.compare;
                set(&mut c.models, a.models);
                if a.match_convention {
                    c.match_convention = true;
                }
                if a.no_plasma {
                    c.plasma = false;
                }
                set(&mut c.count, a.count);
                set(&mut c.phase_cutoff, a.phase_cutoff);
                Some(Command::Compare)
            }
        };
        cfg.command = command;
        if let Err(LabError::Config(list)) = cfg.validate() {
            errors.extend(list);
        }
        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(LabError::Config(errors))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str]) -> Result<RunConfig, LabError> {
        Cli::try_parse_from(std::iter::once("cpb-lab").chain(args.iter().copied()))
            .unwrap()
            .resolve()
    }

    #[test]
    fn flags_override_defaults() {
        let cfg = resolve(&["spectrum", "--model", "phase", "--ej", "12", "--count", "3"]).unwrap();
        assert_eq!(cfg.command, Some(Command::Spectrum));
        assert_eq!(cfg.spectrum.model, Model::Phase);
        assert_eq!(cfg.junction.e_j, 12.0);
        assert_eq!(cfg.spectrum.count, 3);
    }

    #[test]
    fn list_flags() {
        let cfg = resolve(&["compare", "--models", "bose-hubbard,phase", "--match-convention"]).unwrap();
        assert!(cfg.compare.match_convention);
        let cfg = resolve(&["band", "--offsets", "-0.5,0,0.5"]).unwrap();
        assert_eq!(cfg.band.offsets, [-0.5, 0.0, 0.5]);
        let cfg = resolve(&["coupled", "--theta0", "0.2,-0.1"]).unwrap();
        assert_eq!(cfg.coupled.theta0, [0.2, -0.1]);
    }

    #[test]
    fn flag_and_config_errors_are_collected() {
        let Err(LabError::Config(list)) = resolve(&["coupled", "--xi0", "1", "--ec", "-1", "--dt", "0"]) else {
            panic!("expected config error")
        };
        assert_eq!(list.len(), 3, "{list:?}");
    }

    #[test]
    fn run_requires_a_command() {
        assert!(matches!(resolve(&["run"]), Err(LabError::Config(_))));
    }
}
