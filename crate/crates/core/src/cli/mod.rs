//! Command-line front end: argument parsing, run configuration, and the
//! commands that write spectra, wavefunctions, dispersion curves, propagated
//! states and the comparison report.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure. Errors
//! are written to stderr as a one-line JSON object.

mod commands;
pub mod report;
mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{
    cmd_dispersion, cmd_dtmm_propagate, cmd_spectrum, cmd_wavefunction, wavefunction_comparison,
    WavefunctionComparison, INTERIOR_FRACTION,
};
pub use report::{cmd_compare, paper_suite, CriterionResult};
pub use table::{format_number, Cell, Format, Table};

use crate::bloch::TwoLayerCell;
use crate::dtmm::StateVector4;
use crate::oracle::Grid;
use crate::profiles::{PhysicalScales, PotentialSpec};
use crate::spectra::RuleKind;
use crate::{Result, WaveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    New,
    Wkb,
    SimpleWkb,
    Airy,
}

/// Which energy the approximate bases are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum EnergySource {
    /// The oracle eigenvalue of the same level.
    #[default]
    Oracle,
    /// The root of the selected quantization rule.
    Rule,
}

/// Resolved settings shared by all commands. Fields a command does not use
/// are ignored by it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub potential: Option<PotentialSpec>,
    pub scales: PhysicalScales,
    pub rule: RuleKind,
    pub bases: Vec<BasisChoice>,
    pub n_max: usize,
    /// Level shown by `wavefunction`.
    pub level: usize,
    pub grid: Option<Grid>,
    pub samples: usize,
    pub energy_from: EnergySource,
    pub segments: usize,
    /// Energy at which a periodic cell or a propagated profile is evaluated.
    pub energy: f64,
    pub cell: TwoLayerCell,
    /// `(min, max, steps)` of the dispersion drive scale.
    pub drives: (f64, f64, usize),
    /// Constant `(g, h)` of `f = g + ih` for `dtmm-propagate`.
    pub coefficient: (f64, f64),
    pub interval: (f64, f64),
    pub state: StateVector4,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            potential: None,
            scales: PhysicalScales::normalized(),
            rule: RuleKind::NewBases,
            bases: vec![BasisChoice::New, BasisChoice::SimpleWkb, BasisChoice::Wkb, BasisChoice::Airy],
            n_max: 3,
            level: 0,
            grid: None,
            samples: 201,
            energy_from: EnergySource::Oracle,
            segments: 1024,
            energy: 0.0,
            cell: TwoLayerCell { k1: 1.0, a: 1.0, k2: 3.0, b: 1.0 },
            drives: (0.0, 2.0, 41),
            coefficient: (0.0, 0.0),
            interval: (0.0, 1.0),
            state: StateVector4::new(1.0, 0.0, 0.0, 0.0),
            format: Format::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn potential(&self) -> Result<&PotentialSpec> {
        self.potential
            .as_ref()
            .ok_or_else(|| WaveError::Config("no potential given; use --potential or --spec".into()))
    }
}

#[derive(Debug, Parser)]
#[command(name = "wavebasis", version, about = "Algebraic and WKB bases, transfer matrices, spectra and Bloch dispersion for the 1D wave equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialKind {
    #[value(name = "power_law")]
    PowerLaw,
    Singular,
    Harmonic,
    #[value(name = "hard_wall")]
    HardWall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    New,
    Wkb,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Built-in potential family.
    #[arg(long, value_enum, conflicts_with = "spec")]
    pub potential: Option<PotentialKind>,
    /// Strength U of power-law and singular potentials.
    #[arg(long = "U", default_value_t = 1.0)]
    pub u: f64,
    /// Power-law exponent.
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    /// Singular exponent, 0 < beta < 1.
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Oscillator frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Hard-wall half width.
    #[arg(long = "half-width", default_value_t = 1.0)]
    pub half_width: f64,
    /// JSON potential document (`{"type": ..., "scales": {...}}`).
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Oracle half-line grid points (with --x-max); automatic when omitted.
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Oracle half-line extent (with --grid-points).
    #[arg(long = "x-max")]
    pub x_max: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form, quantized and oracle energies per level.
    Spectrum {
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long, value_enum, default_value = "new")]
        rule: RuleArg,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Oracle wavefunction against the approximate bases on [−ξ, ξ].
    Wavefunction {
        #[command(flatten)]
        potential: PotentialArgs,
        /// Level index (box levels start at 1).
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Basis columns to include [default: all].
        #[arg(long, value_enum, value_delimiter = ',')]
        basis: Vec<BasisChoice>,
        #[arg(long, value_enum, default_value = "new")]
        rule: RuleArg,
        #[arg(long = "energy-from", value_enum, default_value = "oracle")]
        energy_from: EnergySource,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bloch wavenumber against a drive scale for a periodic cell.
    Dispersion {
        /// Piecewise or tabulated cell (JSON); the two-layer cell otherwise.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        k1: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 3.0)]
        k2: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Energy of a --spec cell.
        #[arg(long, default_value_t = 0.0)]
        energy: f64,
        #[arg(long = "drive-min", default_value_t = 0.0)]
        drive_min: f64,
        #[arg(long = "drive-max", default_value_t = 2.0)]
        drive_max: f64,
        #[arg(long = "drive-steps", default_value_t = 41)]
        drive_steps: usize,
        #[arg(long, default_value_t = 1024)]
        segments: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Propagate a state {u, v, u', v'} with the transfer matrix.
    DtmmPropagate {
        /// Real part of a constant coefficient f.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g: f64,
        /// Imaginary part of a constant coefficient f.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        h: f64,
        #[command(flatten)]
        potential: PotentialArgs,
        /// Energy when f = k²(x; E) comes from a potential.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        energy: f64,
        #[arg(long = "x-min", default_value_t = 0.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long = "x-max", default_value_t = 1.0, allow_negative_numbers = true)]
        x_max: f64,
        /// Initial state as u,v,du,dv.
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        state: String,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        /// Segments per sample interval.
        #[arg(long, default_value_t = 64)]
        segments: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the acceptance checks and write a JSON report.
    Compare {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_spec(path: &PathBuf) -> Result<(PotentialSpec, PhysicalScales)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| WaveError::Config(format!("cannot read {}: {e}", path.display())))?;
    PotentialSpec::from_json(&text)
}

impl PotentialArgs {
    fn resolve(&self) -> Result<Option<(PotentialSpec, PhysicalScales)>> {
        if let Some(path) = &self.spec {
            return read_spec(path).map(Some);
        }
        let Some(kind) = self.potential else {
            return Ok(None);
        };
        let spec = match kind {
            PotentialKind::PowerLaw => PotentialSpec::PowerLaw { u: self.u, alpha: self.alpha },
            PotentialKind::Singular => PotentialSpec::SingularPowerLaw { u: self.u, beta: self.beta },
            PotentialKind::Harmonic => PotentialSpec::Harmonic { omega: self.omega },
            PotentialKind::HardWall => PotentialSpec::HardWall { half_width: self.half_width },
        };
        spec.validate()?;
        Ok(Some((spec, PhysicalScales::normalized())))
    }

    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        if let Some((spec, scales)) = self.resolve()? {
            cfg.potential = Some(spec);
            cfg.scales = scales;
        }
        Ok(())
    }
}

impl GridArgs {
    fn resolve(&self) -> Result<Option<Grid>> {
        match (self.grid_points, self.x_max) {
            (None, None) => Ok(None),
            (Some(n), Some(x)) => Grid::half_line(x, n).map(Some),
            _ => Err(WaveError::Config("--grid-points and --x-max must be given together".into())),
        }
    }
}

fn rule_kind(r: RuleArg) -> RuleKind {
    match r {
        RuleArg::New => RuleKind::NewBases,
        RuleArg::Wkb => RuleKind::Wkb,
    }
}

fn parse_state(text: &str) -> Result<StateVector4> {
    let parts: std::result::Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == 4 => Ok(StateVector4::new(v[0], v[1], v[2], v[3])),
        _ => Err(WaveError::Config(format!("--state needs four comma-separated numbers, got {text:?}"))),
    }
}

/// What a parsed command line asks for.
pub enum Job {
    Table(fn(&RunConfig) -> Result<Table>, RunConfig),
    Compare { suite: String, out: Option<PathBuf> },
}

impl Command {
    pub fn into_job(self) -> Result<Job> {
        let mut cfg = RunConfig::default();
        let set_output = |cfg: &mut RunConfig, o: OutputArgs| {
            cfg.out = o.out;
            cfg.format = o.format;
        };
        let run: fn(&RunConfig) -> Result<Table> = match self {
            Command::Spectrum { potential, rule, n_max, grid, output } => {
                potential.apply(&mut cfg)?;
                cfg.rule = rule_kind(rule);
                cfg.n_max = n_max;
                cfg.grid = grid.resolve()?;
                set_output(&mut cfg, output);
                cmd_spectrum
            }
            Command::Wavefunction { potential, n, basis, rule, energy_from, samples, grid, output } => {
                potential.apply(&mut cfg)?;
                cfg.level = n;
                if !basis.is_empty() {
                    cfg.bases = basis;
                }
                cfg.rule = rule_kind(rule);
                cfg.energy_from = energy_from;
                cfg.samples = samples;
                cfg.grid = grid.resolve()?;
                set_output(&mut cfg, output);
                cmd_wavefunction
            }
            Command::Dispersion { spec, k1, a, k2, b, energy, drive_min, drive_max, drive_steps, segments, output } => {
                if let Some(path) = spec {
                    let (s, scales) = read_spec(&path)?;
                    cfg.potential = Some(s);
                    cfg.scales = scales;
                }
                cfg.cell = TwoLayerCell { k1, a, k2, b };
                cfg.energy = energy;
                cfg.drives = (drive_min, drive_max, drive_steps);
                cfg.segments = segments;
                set_output(&mut cfg, output);
                cmd_dispersion
            }
            Command::DtmmPropagate { g, h, potential, energy, x_min, x_max, state, samples, segments, output } => {
                potential.apply(&mut cfg)?;
                cfg.coefficient = (g, h);
                cfg.energy = energy;
                cfg.interval = (x_min, x_max);
                cfg.state = parse_state(&state)?;
                cfg.samples = samples;
                cfg.segments = segments;
                set_output(&mut cfg, output);
                cmd_dtmm_propagate
            }
            Command::Compare { suite, out } => return Ok(Job::Compare { suite, out }),
        };
        Ok(Job::Table(run, cfg))
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| WaveError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// One-line JSON error document.
pub fn error_json(e: &WaveError) -> String {
    serde_json::json!({"error": e.kind(), "message": e.to_string()}).to_string()
}

pub fn exit_code(e: &WaveError) -> i32 {
    if e.is_config() {
        2
    } else {
        3
    }
}

/// Parse `args`, run the command, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = WaveError::Config(e.to_string().lines().next().unwrap_or("bad arguments").to_string());
            eprintln!("{}", error_json(&err));
            return 2;
        }
    };
    let outcome = cli.command.into_job().and_then(|job| match job {
        Job::Table(run, cfg) => {
            let table = run(&cfg)?;
            write_output(&cfg.out, &table.render(cfg.format)).map(|_| 0)
        }
        Job::Compare { suite, out } => {
            let (text, all_pass) = cmd_compare(&suite)?;
            write_output(&out, &text)?;
            Ok(if all_pass { 0 } else { 3 })
        }
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            exit_code(&e)
        }
    }
}
