use rayon::prelude::*;

use super::table::{Cell, Table};
use super::{BasisChoice, EnergySource, RunConfig};
use crate::bases::{self, BasisKind};
use crate::bloch::{self, DispersionMethod, PeriodicProfile};
use crate::dtmm::{self, ComplexCoefficient, TransferMatrix4};
use crate::oracle::{self, OracleEigenresult, Parity};
use crate::profiles::{KsqProfile, PotentialSpec};
use crate::spectra::{self, QuantizationRule, RuleKind};
use crate::{Result, WaveError};

fn is_hard_wall(spec: &PotentialSpec) -> bool {
    matches!(spec, PotentialSpec::HardWall { .. })
}

/// Box states are numbered from 1; the oracle counts from 0.
fn oracle_index(spec: &PotentialSpec, n: usize) -> Result<usize> {
    if is_hard_wall(spec) {
        n.checked_sub(1).ok_or_else(|| WaveError::Config("hard-wall levels start at n = 1".into()))
    } else {
        Ok(n)
    }
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Table> {
    let spec = cfg.potential()?;
    let scales = cfg.scales;
    let profile = KsqProfile::new(spec.clone(), scales)?;
    let ns: Vec<usize> = if is_hard_wall(spec) { (1..=cfg.n_max.max(1)).collect() } else { (0..=cfg.n_max).collect() };
    let rule = QuantizationRule::for_profile(cfg.rule, &profile);
    let wkb = QuantizationRule::for_profile(RuleKind::Wkb, &profile);
    let rows: Vec<Vec<Cell>> = ns
        .par_iter()
        .map(|&n| -> Result<Vec<Cell>> {
            let closed = spectra::closed_form_energy(spec, scales, n).unwrap_or(f64::NAN);
            let root = spectra::solve_quantization(&profile, rule, n)?.energy;
            let wkb_root = spectra::solve_quantization(&profile, wkb, n)?.energy;
            let exact = oracle::numerov_eigensolve(spec, scales, cfg.grid.as_ref(), oracle_index(spec, n)?)?.energy;
            let rel = (closed - exact).abs() / exact.abs();
            Ok(vec![n.into(), closed.into(), root.into(), wkb_root.into(), exact.into(), rel.into(), (closed / exact).into()])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(
        "spectrum",
        &[
            ("n", "-"),
            ("E_closed_form", "energy"),
            ("E_quantization_root", "energy"),
            ("E_wkb_rule", "energy"),
            ("E_oracle", "energy"),
            ("rel_err_vs_oracle", "-"),
            ("ratio_vs_oracle", "-"),
        ],
    );
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

/// A sampled wavefunction comparison and its error summary.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionComparison {
    pub table: Table,
    pub energy_oracle: f64,
    pub energy_bases: f64,
    pub turning_point: f64,
    /// `(column, RMS deviation from the oracle over |x| ≤ 0.8ξ)`.
    pub rms: Vec<(String, f64)>,
}

impl WavefunctionComparison {
    pub fn rms_of(&self, column: &str) -> Option<f64> {
        self.rms.iter().find(|(c, _)| c == column).map(|(_, v)| *v)
    }
}

/// Fraction of `[−ξ, ξ]` over which approximations are fitted and scored.
pub const INTERIOR_FRACTION: f64 = 0.8;

fn column_name(choice: BasisChoice) -> &'static str {
    match choice {
        BasisChoice::New => "u_new_bases",
        BasisChoice::SimpleWkb => "u_simple_wkb",
        BasisChoice::Wkb => "u_improved_wkb",
        BasisChoice::Airy => "u_airy",
    }
}

/// The basis member with the level's parity, continued to `x < 0` by symmetry.
fn approximate(choice: BasisChoice, profile: &KsqProfile, energy: f64, xi: f64, parity: Parity, x: f64) -> Result<f64> {
    let t = x.abs();
    let kind = match choice {
        BasisChoice::New => BasisKind::NewBases,
        BasisChoice::SimpleWkb => BasisKind::SimpleWkb,
        BasisChoice::Wkb => BasisKind::Wkb,
        BasisChoice::Airy => BasisKind::AiryImproved { xi },
    };
    if choice == BasisChoice::Wkb
        && !is_hard_wall(profile.potential())
        && (t - xi).abs() < 1e-8 * xi.max(1.0)
    {
        return Ok(f64::INFINITY);
    }
    let b = bases::eval_basis(kind, profile, energy, t)?;
    let value = match (choice, parity) {
        // the Ai member is the one that decays beyond the turning point
        (BasisChoice::Airy, _) | (_, Parity::Even) => b.c,
        (_, Parity::Odd) => b.s,
    };
    Ok(if parity == Parity::Odd && x < 0.0 { -value } else { value })
}

/// Least-squares factor `s` minimizing `Σ(s·a − o)²` over the finite entries.
fn fit_scale(approx: &[f64], reference: &[f64], mask: &[bool]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for ((a, o), &m) in approx.iter().zip(reference).zip(mask) {
        if m && a.is_finite() {
            num += a * o;
            den += a * a;
        }
    }
    if den > 0.0 {
        num / den
    } else {
        f64::NAN
    }
}

fn rms_deviation(approx: &[f64], reference: &[f64], mask: &[bool]) -> f64 {
    let (mut sum, mut count) = (0.0, 0usize);
    for ((a, o), &m) in approx.iter().zip(reference).zip(mask) {
        if m {
            sum += (a - o).powi(2);
            count += 1;
        }
    }
    (sum / count.max(1) as f64).sqrt()
}

/// The oracle state and the approximate bases sampled on `[−ξ, ξ]`.
///
/// Each approximate column is scaled by the least-squares factor that best
/// matches the oracle over the interior fraction, then scored there by RMS.
pub fn wavefunction_comparison(cfg: &RunConfig) -> Result<WavefunctionComparison> {
    let spec = cfg.potential()?;
    let profile = KsqProfile::new(spec.clone(), cfg.scales)?;
    let state: OracleEigenresult =
        oracle::numerov_eigensolve(spec, cfg.scales, cfg.grid.as_ref(), oracle_index(spec, cfg.level)?)?;
    let energy_bases = match cfg.energy_from {
        EnergySource::Oracle => state.energy,
        EnergySource::Rule => {
            let rule = QuantizationRule::for_profile(cfg.rule, &profile);
            spectra::solve_quantization(&profile, rule, cfg.level)?.energy
        }
    };
    let xi = profile.turning_point(energy_bases)?.xi;
    let samples = cfg.samples.max(2);
    let xs: Vec<f64> = (0..samples).map(|i| -xi + 2.0 * xi * i as f64 / (samples - 1) as f64).collect();
    let reference: Vec<f64> = xs.iter().map(|&x| state.sample(x)).collect();
    let mask: Vec<bool> = xs.iter().map(|&x| x.abs() <= INTERIOR_FRACTION * xi).collect();

    let mut columns = Vec::new();
    let mut rms = Vec::new();
    for &choice in &cfg.bases {
        let raw: Result<Vec<f64>> =
            xs.iter().map(|&x| approximate(choice, &profile, energy_bases, xi, state.parity, x)).collect();
        let raw = match (raw, choice) {
            (Ok(v), _) => v,
            (Err(e), BasisChoice::Airy) => {
                log::warn!("Airy column unavailable: {e}");
                vec![f64::NAN; samples]
            }
            (Err(e), _) => return Err(e),
        };
        let scale = fit_scale(&raw, &reference, &mask);
        let scaled: Vec<f64> = raw.iter().map(|&v| if v.is_finite() { scale * v } else { v }).collect();
        rms.push((column_name(choice).to_string(), rms_deviation(&scaled, &reference, &mask)));
        columns.push((choice, scaled));
    }

    let mut header = vec![("x", "length"), ("u_oracle", "arb")];
    header.extend(columns.iter().map(|(c, _)| (column_name(*c), "arb")));
    let mut table = Table::new("wavefunction", &header);
    for (i, &x) in xs.iter().enumerate() {
        let mut row: Vec<Cell> = vec![x.into(), reference[i].into()];
        row.extend(columns.iter().map(|(_, v)| Cell::Num(v[i])));
        table.push(row);
    }
    Ok(WavefunctionComparison { table, energy_oracle: state.energy, energy_bases, turning_point: xi, rms })
}

pub fn cmd_wavefunction(cfg: &RunConfig) -> Result<Table> {
    Ok(wavefunction_comparison(cfg)?.table)
}

fn periodic_cell(cfg: &RunConfig) -> Result<PeriodicProfile> {
    match &cfg.potential {
        Some(spec) => PeriodicProfile::new(KsqProfile::new(spec.clone(), cfg.scales)?, cfg.energy),
        None => cfg.cell.profile(),
    }
}

pub fn cmd_dispersion(cfg: &RunConfig) -> Result<Table> {
    let cell = periodic_cell(cfg)?;
    let (lo, hi, steps) = cfg.drives;
    if steps == 0 || !(hi >= lo) {
        return Err(WaveError::Config(format!("bad drive range [{lo}, {hi}] with {steps} steps")));
    }
    let drives: Vec<f64> = (0..steps)
        .map(|i| if steps == 1 { lo } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
        .collect();
    let methods = [DispersionMethod::New, DispersionMethod::Wkb, DispersionMethod::Exact];
    let sweeps: Vec<Vec<Option<bloch::DispersionPoint>>> = methods
        .iter()
        .map(|&m| {
            drives
                .par_iter()
                .map(|&s| {
                    let p = cell.scaled(s);
                    let point = match m {
                        DispersionMethod::New => bloch::kappa_new(&p),
                        DispersionMethod::Wkb => bloch::kappa_wkb(&p),
                        DispersionMethod::Exact => bloch::kappa_exact(&p, cfg.segments),
                    };
                    match point {
                        Ok(v) => Ok(Some(v)),
                        Err(WaveError::ForbiddenRegion { .. }) => Ok(None),
                        Err(e) => Err(e),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(
        "dispersion",
        &[("drive", "-"), ("kappa_re", "1/length"), ("kappa_im", "1/length"), ("method", "-")],
    );
    for (i, &s) in drives.iter().enumerate() {
        for (m, sweep) in methods.iter().zip(&sweeps) {
            let (re, im) = sweep[i].map_or((f64::NAN, f64::NAN), |p| (p.kappa_re, p.kappa_im));
            table.push(vec![s.into(), re.into(), im.into(), m.name().into()]);
        }
    }
    Ok(table)
}

pub fn cmd_dtmm_propagate(cfg: &RunConfig) -> Result<Table> {
    let f = match &cfg.potential {
        Some(spec) => ComplexCoefficient::from_profile(&KsqProfile::new(spec.clone(), cfg.scales)?, cfg.energy),
        None => ComplexCoefficient::constant(cfg.coefficient.0, cfg.coefficient.1),
    };
    let (a, b) = cfg.interval;
    if !(b > a) {
        return Err(WaveError::Config(format!("propagation interval must have a < b, got [{a}, {b}]")));
    }
    if cfg.segments == 0 {
        return Err(WaveError::Config("segments must be at least 1".into()));
    }
    let samples = cfg.samples.max(2);
    let xs: Vec<f64> =
        (0..samples).map(|i| if i + 1 == samples { b } else { a + (b - a) * i as f64 / (samples - 1) as f64 }).collect();
    let mut table = Table::new(
        "dtmm-propagate",
        &[("x", "length"), ("u", "arb"), ("v", "arb"), ("du", "arb/length"), ("dv", "arb/length")],
    );
    let mut q = TransferMatrix4::identity(a);
    for (i, &x) in xs.iter().enumerate() {
        if i > 0 {
            q = dtmm::compose(&q, &dtmm::piecewise_propagate_aligned(&f, xs[i - 1], x, cfg.segments)?);
        }
        let s = dtmm::propagate(&q, &cfg.state);
        table.push(vec![x.into(), s.u.into(), s.v.into(), s.du.into(), s.dv.into()]);
    }
    Ok(table)
}
