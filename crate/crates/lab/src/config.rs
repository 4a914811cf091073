//! Run configuration: TOML or JSON files, flag overrides, defaults and
//! validation.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use cpb_core::bose_hubbard::{default_cutoff, min_cutoff};
use cpb_core::meanfield::ControlPulse;
use cpb_core::quantum_phase::PhaseModelParams;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::LabError;

/// Prefix of the header line that carries the resolved config.
pub const CONFIG_HEADER: &str = "# config: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Band,
    Dynamics,
    Coupled,
    Lindblad,
    Gibbs,
    Witness,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Band => "band",
            Command::Dynamics => "dynamics",
            Command::Coupled => "coupled",
            Command::Lindblad => "lindblad",
            Command::Gibbs => "gibbs",
            Command::Witness => "witness",
            Command::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    BoseHubbard,
    TwoMode,
    Oscillator,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Hopping {
    Exact,
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    HoppingMatch,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    Pendulum,
    Gp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Leapfrog,
    Yoshida4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GpMapping {
    Matched,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ControlKind {
    None,
    Constant,
    Gaussian,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    Coherent,
    Fock,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MasterHamiltonian {
    None,
    Oscillator,
}

impl From<Convention> for cpb_core::quantum_phase::Convention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::HoppingMatch => Self::HoppingMatch,
            Convention::Literal => Self::Literal,
        }
    }
}

impl From<Hopping> for cpb_core::bose_hubbard::HoppingForm {
    fn from(h: Hopping) -> Self {
        match h {
            Hopping::Exact => Self::Exact,
            Hopping::PaperLiteral => Self::PaperLiteral,
        }
    }
}

impl From<Scheme> for cpb_core::meanfield::Scheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Leapfrog => Self::Leapfrog,
            Scheme::Yoshida4 => Self::Yoshida4,
        }
    }
}

/// One Cooper pair box. Energies in units of the default `E_C = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Junction {
    pub e_c: f64,
    pub e_j: f64,
    pub total_pairs: u64,
    pub n_bar: f64,
}

impl Default for Junction {
    fn default() -> Self {
        Junction {
            e_c: 1.0,
            e_j: 50.0,
            total_pairs: 2000,
            n_bar: 1000.0,
        }
    }
}

impl Junction {
    pub fn params(&self) -> cpb_core::Result<cpb_core::CpbParams> {
        cpb_core::CpbParams::from_josephson(self.e_c, self.e_j, self.total_pairs, self.n_bar)
    }

    fn check(&self, section: &str, v: &mut Vec<String>) {
        positive(v, &format!("{section}.e_c"), self.e_c);
        nonnegative(v, &format!("{section}.e_j"), self.e_j);
        if self.total_pairs < 2 {
            v.push(format!("{section}.total_pairs: must be >= 2, got {}", self.total_pairs));
        }
        let n = self.total_pairs as f64;
        if !(self.n_bar > 0.0 && self.n_bar < n) {
            v.push(format!(
                "{section}.n_bar: must lie in (0, {}), got {}",
                self.total_pairs, self.n_bar
            ));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Control {
    pub kind: ControlKind,
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    pub frequency: f64,
    pub phase: f64,
}

impl Default for Control {
    fn default() -> Self {
        Control {
            kind: ControlKind::None,
            amplitude: 0.0,
            center: 0.0,
            width: 1.0,
            frequency: 1.0,
            phase: 0.0,
        }
    }
}

impl Control {
    pub fn pulse(&self) -> ControlPulse {
        match self.kind {
            ControlKind::None => ControlPulse::none(),
            ControlKind::Constant => ControlPulse::Constant {
                amplitude: self.amplitude,
            },
            ControlKind::Gaussian => ControlPulse::Gaussian {
                amplitude: self.amplitude,
                center: self.center,
                width: self.width,
            },
            ControlKind::Harmonic => ControlPulse::Harmonic {
                amplitude: self.amplitude,
                frequency: self.frequency,
                phase: self.phase,
            },
        }
    }

    fn check(&self, section: &str, v: &mut Vec<String>) {
        if let Err(e) = self.pulse().validate() {
            v.push(format!("{section}: {e}"));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub model: Model,
    pub count: usize,
    /// Fock cutoff for `oscillator`, charge cutoff `M` for `phase`; chosen
    /// automatically when absent.
    pub cutoff: Option<usize>,
    pub hopping: Hopping,
    pub convention: Convention,
    /// `U₁` for `two-mode`; `U₂` follows from `n̄₁`.
    pub u1: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            model: Model::BoseHubbard,
            count: 5,
            cutoff: None,
            hopping: Hopping::Exact,
            convention: Convention::HoppingMatch,
            u1: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandConfig {
    pub count: usize,
    pub cutoff: Option<usize>,
    pub convention: Convention,
    /// Explicit offsets; when empty, `points` values spread over
    /// `[offset_min, offset_max]`.
    pub offsets: Vec<f64>,
    pub offset_min: f64,
    pub offset_max: f64,
    pub points: usize,
}

impl Default for BandConfig {
    fn default() -> Self {
        BandConfig {
            count: 4,
            cutoff: None,
            convention: Convention::HoppingMatch,
            offsets: Vec::new(),
            offset_min: -1.0,
            offset_max: 1.0,
            points: 41,
        }
    }
}

impl BandConfig {
    pub fn grid(&self) -> Vec<f64> {
        if !self.offsets.is_empty() {
            return self.offsets.clone();
        }
        if self.points == 1 {
            return vec![self.offset_min];
        }
        let step = (self.offset_max - self.offset_min) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.offset_min + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsConfig {
    pub integrator: Integrator,
    pub scheme: Scheme,
    pub mapping: GpMapping,
    pub theta0: f64,
    pub xi0: f64,
    pub t_end: f64,
    pub dt: f64,
    pub record_every: usize,
    pub control: Control,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            integrator: Integrator::Pendulum,
            scheme: Scheme::Yoshida4,
            mapping: GpMapping::Matched,
            theta0: 0.1,
            xi0: 0.0,
            t_end: 10.0,
            dt: 1e-3,
            record_every: 10,
            control: Control::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoupledConfig {
    pub second: Junction,
    pub coupling: f64,
    pub scheme: Scheme,
    pub theta0: [f64; 2],
    pub xi0: [f64; 2],
    pub t_end: f64,
    pub dt: f64,
    pub record_every: usize,
    pub control: Control,
    pub control_second: Control,
}

impl Default for CoupledConfig {
    fn default() -> Self {
        CoupledConfig {
            second: Junction {
                e_j: 60.0,
                ..Junction::default()
            },
            coupling: 0.5,
            scheme: Scheme::Yoshida4,
            theta0: [0.1, 0.0],
            xi0: [0.0, 0.0],
            t_end: 10.0,
            dt: 1e-3,
            record_every: 10,
            control: Control::default(),
            control_second: Control::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LindbladConfig {
    pub gamma: f64,
    pub delta: f64,
    pub cutoff: usize,
    pub state: InitialState,
    /// Mean occupation of the coherent start.
    pub n1: f64,
    pub theta: f64,
    /// Level of the Fock start.
    pub level: usize,
    /// Number of occupied levels of the random start (drawn from `seed`);
    /// the top level is always left empty.
    pub support: usize,
    pub hamiltonian: MasterHamiltonian,
    pub t_end: f64,
    pub dt: f64,
    pub record_every: usize,
}

impl Default for LindbladConfig {
    fn default() -> Self {
        LindbladConfig {
            gamma: 1.0,
            delta: 0.1,
            cutoff: 30,
            state: InitialState::Coherent,
            n1: 2.0,
            theta: 0.0,
            level: 0,
            support: 8,
            hamiltonian: MasterHamiltonian::None,
            t_end: 0.5,
            dt: 1e-3,
            record_every: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GibbsConfig {
    pub kt: Vec<f64>,
    pub cutoff: Option<usize>,
}

impl Default for GibbsConfig {
    fn default() -> Self {
        GibbsConfig {
            kt: vec![0.25, 0.5, 1.0],
            cutoff: None,
        }
    }
}

impl GibbsConfig {
    pub fn cutoff_for(&self, junction: &Junction) -> usize {
        self.cutoff.unwrap_or_else(|| {
            let kt_max = self.kt.iter().copied().fold(0.0, f64::max);
            let spread = (kt_max / junction.e_c).sqrt().max(1.0);
            (junction.n_bar + 12.0 * spread).ceil() as usize + 1
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WitnessConfig {
    pub paper_instance: bool,
    /// Real symmetric observables, row by row; used when `paper_instance`
    /// is false.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    /// State to evaluate; defaults to the paired state of the built-in
    /// instance, or to the most violating state.
    pub state: Vec<f64>,
    pub tolerance: f64,
    pub no_go_samples: usize,
    pub no_go_dims: [usize; 2],
    pub no_go_rotate: bool,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            paper_instance: true,
            a: Vec::new(),
            b: Vec::new(),
            state: Vec::new(),
            tolerance: cpb_core::witness::DEFAULT_TOLERANCE,
            no_go_samples: 0,
            no_go_dims: [2, 6],
            no_go_rotate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareConfig {
    pub models: Vec<Model>,
    pub match_convention: bool,
    pub count: usize,
    pub phase_cutoff: usize,
    /// Also extract the plasma frequency from the oscillator spectrum and a
    /// small-amplitude pendulum run.
    pub plasma: bool,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            models: vec![Model::BoseHubbard, Model::Phase],
            match_convention: false,
            count: 5,
            phase_cutoff: 60,
            plasma: true,
        }
    }
}

/// Output location. Not part of the echoed config.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub stem: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub seed: u64,
    #[serde(skip_serializing)]
    pub output: OutputConfig,
    pub junction: Junction,
    pub spectrum: SpectrumConfig,
    pub band: BandConfig,
    pub dynamics: DynamicsConfig,
    pub coupled: CoupledConfig,
    pub lindblad: LindbladConfig,
    pub gibbs: GibbsConfig,
    pub witness: WitnessConfig,
    pub compare: CompareConfig,
}

impl RunConfig {
    /// Read a TOML or JSON config. A CSV produced by this tool is accepted
    /// too: its config header line is used.
    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = fs::read_to_string(path).map_err(|source| LabError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|message| LabError::Parse {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        if let Some(line) = text.lines().find_map(|l| l.strip_prefix(CONFIG_HEADER)) {
            return serde_json::from_str(line).map_err(|e| e.to_string());
        }
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let value: Value = serde_json::from_str(trimmed).map_err(|e| e.to_string())?;
            // JSON reports nest the echo under "config".
            let config = match value.get("config") {
                Some(inner) if value.get("schema_version").is_some() => inner.clone(),
                _ => value,
            };
            return serde_json::from_value(config).map_err(|e| e.to_string());
        }
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn command(&self) -> Command {
        self.command.unwrap_or(Command::Spectrum)
    }

    /// The resolved config of the selected command, as written to output
    /// headers. Feeding it back reproduces the run.
    pub fn echo(&self) -> Value {
        let command = self.command();
        let section = match command {
            Command::Spectrum => serde_json::to_value(&self.spectrum),
            Command::Band => serde_json::to_value(&self.band),
            Command::Dynamics => serde_json::to_value(&self.dynamics),
            Command::Coupled => serde_json::to_value(&self.coupled),
            Command::Lindblad => serde_json::to_value(&self.lindblad),
            Command::Gibbs => serde_json::to_value(&self.gibbs),
            Command::Witness => serde_json::to_value(&self.witness),
            Command::Compare => serde_json::to_value(&self.compare),
        }
        .expect("config sections serialise");
        let mut echo = json!({
            "command": command,
            "seed": self.seed,
            "junction": self.junction,
        });
        echo[command.name()] = section;
        echo
    }

    /// Every violated precondition of the selected command.
    pub fn validate(&self) -> Result<(), LabError> {
        let mut v = Vec::new();
        let command = self.command();
        let uses_junction = !matches!(command, Command::Witness)
            && !(command == Command::Lindblad && self.lindblad.hamiltonian == MasterHamiltonian::None);
        if uses_junction {
            self.junction.check("junction", &mut v);
        }
        match command {
            Command::Spectrum => self.check_spectrum(&mut v),
            Command::Band => self.check_band(&mut v),
            Command::Dynamics => self.check_dynamics(&mut v),
            Command::Coupled => self.check_coupled(&mut v),
            Command::Lindblad => self.check_lindblad(&mut v),
            Command::Gibbs => self.check_gibbs(&mut v),
            Command::Witness => self.check_witness(&mut v),
            Command::Compare => self.check_compare(&mut v),
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(LabError::Config(v))
        }
    }

    fn check_spectrum(&self, v: &mut Vec<String>) {
        let s = &self.spectrum;
        let j = &self.junction;
        if s.count == 0 {
            v.push("spectrum.count: must be >= 1".into());
        }
        finite(v, "spectrum.u1", s.u1);
        let dim = match s.model {
            Model::BoseHubbard | Model::TwoMode => Some(j.total_pairs as usize + 1),
            Model::Oscillator => {
                let cutoff = s.cutoff.unwrap_or_else(|| default_cutoff(j.n_bar.max(0.0)));
                let required = min_cutoff(j.n_bar.max(0.0));
                if cutoff < required {
                    v.push(format!(
                        "spectrum.cutoff: {cutoff} is below the minimum {required} for n_bar = {}",
                        j.n_bar
                    ));
                }
                Some(cutoff + 1)
            }
            Model::Phase => {
                let cutoff = s.cutoff.unwrap_or_else(|| phase_cutoff(j));
                if let Ok(p) = PhaseModelParams::new(j.e_c.max(f64::MIN_POSITIVE), j.e_j.max(0.0), 0.0, 1) {
                    if cutoff < p.required_cutoff() {
                        v.push(format!(
                            "spectrum.cutoff: {cutoff} is below the required {}",
                            p.required_cutoff()
                        ));
                    }
                }
                Some(2 * cutoff + 1)
            }
        };
        if let Some(dim) = dim {
            if s.count > dim {
                v.push(format!("spectrum.count: {} exceeds the dimension {dim}", s.count));
            }
        }
    }

    fn check_band(&self, v: &mut Vec<String>) {
        let b = &self.band;
        if b.count == 0 {
            v.push("band.count: must be >= 1".into());
        }
        if b.offsets.is_empty() {
            if b.points == 0 {
                v.push("band.points: must be >= 1".into());
            }
            finite(v, "band.offset_min", b.offset_min);
            finite(v, "band.offset_max", b.offset_max);
            if b.offset_max < b.offset_min {
                v.push("band.offset_max: must not be below offset_min".into());
            }
        }
        if b.offsets.iter().any(|x| !x.is_finite()) {
            v.push("band.offsets: all values must be finite".into());
        }
        if let Some(cutoff) = b.cutoff {
            let j = &self.junction;
            if let Ok(p) = PhaseModelParams::new(j.e_c.max(f64::MIN_POSITIVE), j.e_j.max(0.0), 0.0, 1) {
                if cutoff < p.required_cutoff() {
                    v.push(format!(
                        "band.cutoff: {cutoff} is below the required {}",
                        p.required_cutoff()
                    ));
                }
            }
            if b.count > 2 * cutoff + 1 {
                v.push(format!(
                    "band.count: {} exceeds the dimension {}",
                    b.count,
                    2 * cutoff + 1
                ));
            }
        }
    }

    fn check_dynamics(&self, v: &mut Vec<String>) {
        let d = &self.dynamics;
        finite(v, "dynamics.theta0", d.theta0);
        finite(v, "dynamics.xi0", d.xi0);
        positive(v, "dynamics.t_end", d.t_end);
        positive(v, "dynamics.dt", d.dt);
        if d.record_every == 0 {
            v.push("dynamics.record_every: must be >= 1".into());
        }
        d.control.check("dynamics.control", v);
        let omega = (2.0 * self.junction.e_c * self.junction.e_j).sqrt();
        if d.integrator == Integrator::Pendulum && omega > 0.0 && d.dt >= 0.05 / omega {
            v.push(format!(
                "dynamics.dt: {} must be below 0.05 / ω₀ = {}",
                d.dt,
                0.05 / omega
            ));
        }
        if d.integrator == Integrator::Gp {
            let n = self.junction.total_pairs as f64;
            let n1 = self.junction.n_bar + d.xi0;
            if !(n1 > 0.0 && n1 < n) {
                v.push(format!("dynamics.xi0: n_bar + xi0 = {n1} must lie in (0, {n})"));
            }
        }
    }

    fn check_coupled(&self, v: &mut Vec<String>) {
        let c = &self.coupled;
        c.second.check("coupled.second", v);
        finite(v, "coupled.coupling", c.coupling);
        for (name, x) in [("theta0", c.theta0), ("xi0", c.xi0)] {
            if x.iter().any(|y| !y.is_finite()) {
                v.push(format!("coupled.{name}: values must be finite"));
            }
        }
        positive(v, "coupled.t_end", c.t_end);
        positive(v, "coupled.dt", c.dt);
        if c.record_every == 0 {
            v.push("coupled.record_every: must be >= 1".into());
        }
        c.control.check("coupled.control", v);
        c.control_second.check("coupled.control_second", v);
        let omega = (2.0 * self.junction.e_c * self.junction.e_j)
            .sqrt()
            .max((2.0 * c.second.e_c * c.second.e_j).sqrt());
        if omega > 0.0 && c.dt >= 0.05 / omega {
            v.push(format!("coupled.dt: {} must be below {}", c.dt, 0.05 / omega));
        }
    }

    fn check_lindblad(&self, v: &mut Vec<String>) {
        let l = &self.lindblad;
        nonnegative(v, "lindblad.gamma", l.gamma);
        nonnegative(v, "lindblad.delta", l.delta);
        if l.cutoff < 2 {
            v.push(format!("lindblad.cutoff: must be >= 2, got {}", l.cutoff));
        }
        positive(v, "lindblad.t_end", l.t_end);
        positive(v, "lindblad.dt", l.dt);
        if l.record_every == 0 {
            v.push("lindblad.record_every: must be >= 1".into());
        }
        match l.state {
            InitialState::Coherent => {
                positive(v, "lindblad.n1", l.n1);
                finite(v, "lindblad.theta", l.theta);
                if l.n1 > 0.0 && l.cutoff < min_cutoff(l.n1) {
                    v.push(format!(
                        "lindblad.cutoff: {} is below the minimum {} for n1 = {}",
                        l.cutoff,
                        min_cutoff(l.n1),
                        l.n1
                    ));
                }
            }
            InitialState::Fock => {
                if l.level >= l.cutoff {
                    v.push(format!(
                        "lindblad.level: {} must lie below the cutoff {}",
                        l.level, l.cutoff
                    ));
                }
            }
            InitialState::Random => {
                if l.support == 0 || l.support > l.cutoff {
                    v.push(format!(
                        "lindblad.support: must lie in 1..={}, got {}",
                        l.cutoff, l.support
                    ));
                }
            }
        }
        if l.hamiltonian == MasterHamiltonian::Oscillator {
            let required = min_cutoff(self.junction.n_bar.max(0.0));
            if l.cutoff < required {
                v.push(format!(
                    "lindblad.cutoff: {} is below the minimum {required} for the oscillator at n_bar = {}",
                    l.cutoff, self.junction.n_bar
                ));
            }
        }
    }

    fn check_gibbs(&self, v: &mut Vec<String>) {
        let g = &self.gibbs;
        if g.kt.is_empty() {
            v.push("gibbs.kt: need at least one temperature".into());
        }
        for (i, &kt) in g.kt.iter().enumerate() {
            positive(v, &format!("gibbs.kt[{i}]"), kt);
        }
        if let Some(cutoff) = g.cutoff {
            let j = &self.junction;
            let kt_max = g.kt.iter().copied().fold(0.0, f64::max);
            if j.e_c > 0.0 {
                let required = (j.n_bar + 10.0 * (kt_max / j.e_c).sqrt().max(1.0)).floor() as usize + 1;
                if cutoff < required {
                    v.push(format!("gibbs.cutoff: {cutoff} is below the required {required}"));
                }
            }
        }
    }

    fn check_witness(&self, v: &mut Vec<String>) {
        let w = &self.witness;
        nonnegative(v, "witness.tolerance", w.tolerance);
        let dim = if w.paper_instance {
            2
        } else {
            let d = w.a.len();
            if d < 2 {
                v.push("witness.a: need a square matrix of dimension >= 2".into());
            }
            for (name, m) in [("a", &w.a), ("b", &w.b)] {
                if m.len() != d || m.iter().any(|row| row.len() != d) {
                    v.push(format!("witness.{name}: must be {d}x{d}"));
                } else if (0..d).any(|i| (0..d).any(|j| (m[i][j] - m[j][i]).abs() > 1e-12 || !m[i][j].is_finite())) {
                    v.push(format!("witness.{name}: must be finite and symmetric"));
                }
            }
            d
        };
        if !w.state.is_empty() {
            if w.state.len() != dim {
                v.push(format!(
                    "witness.state: length {} does not match dimension {dim}",
                    w.state.len()
                ));
            } else if w.state.iter().all(|&x| x == 0.0) || w.state.iter().any(|x| !x.is_finite()) {
                v.push("witness.state: must be finite and nonzero".into());
            }
        }
        let [lo, hi] = w.no_go_dims;
        if w.no_go_samples > 0 && (lo < 2 || hi < lo) {
            v.push(format!("witness.no_go_dims: need 2 <= low <= high, got [{lo}, {hi}]"));
        }
    }

    fn check_compare(&self, v: &mut Vec<String>) {
        let c = &self.compare;
        let mut models = c.models.clone();
        models.sort_by_key(|m| *m as u8);
        if models != [Model::BoseHubbard, Model::Phase] {
            v.push("compare.models: only the pair bose-hubbard,phase is supported".into());
        }
        if c.count < 2 {
            v.push("compare.count: must be >= 2".into());
        }
        let j = &self.junction;
        if let Ok(p) = PhaseModelParams::new(j.e_c.max(f64::MIN_POSITIVE), j.e_j.max(0.0), 0.0, 1) {
            if c.phase_cutoff < p.required_cutoff() {
                v.push(format!(
                    "compare.phase_cutoff: {} is below the required {}",
                    c.phase_cutoff,
                    p.required_cutoff()
                ));
            }
        }
        if c.count > j.total_pairs as usize + 1 || c.count > 2 * c.phase_cutoff + 1 {
            v.push(format!("compare.count: {} exceeds a model dimension", c.count));
        }
    }
}

/// Charge cutoff chosen when none is configured.
pub fn phase_cutoff(j: &Junction) -> usize {
    PhaseModelParams::new(j.e_c, j.e_j, 0.0, 1)
        .map(|p| p.required_cutoff())
        .unwrap_or(1)
}

fn finite(v: &mut Vec<String>, name: &str, x: f64) {
    if !x.is_finite() {
        v.push(format!("{name}: must be finite, got {x}"));
    }
}

fn positive(v: &mut Vec<String>, name: &str, x: f64) {
    if !(x > 0.0 && x.is_finite()) {
        v.push(format!("{name}: must be finite and > 0, got {x}"));
    }
}

fn nonnegative(v: &mut Vec<String>, name: &str, x: f64) {
    if !(x >= 0.0 && x.is_finite()) {
        v.push(format!("{name}: must be finite and >= 0, got {x}"));
    }
}
