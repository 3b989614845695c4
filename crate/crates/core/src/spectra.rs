//! Bound-state energies: closed forms for power-law, singular and walled
//! potentials, and a root-finding quantizer for any even confining profile.
//!
//! Two quantization conditions are supported. The algebraic-basis condition
//! sets `√(2ξ·∫_{−ξ}^{ξ} k²) = π(n + δ)` and the WKB condition sets
//! `∫_{−ξ}^{ξ} k = π(n + δ)`, with `δ = ½` for soft walls and `0` for hard ones.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::profiles::{KsqProfile, PhysicalScales, PotentialSpec};
use crate::roots;
use crate::{Result, WaveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    NewBases,
    Wkb,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizationRule {
    pub kind: RuleKind,
    pub phase_shift: f64,
}

impl QuantizationRule {
    pub fn new(kind: RuleKind, phase_shift: f64) -> Result<Self> {
        if phase_shift != 0.0 && phase_shift != 0.5 {
            return Err(WaveError::Config(format!("phase shift must be 0 or 1/2, got {phase_shift}")));
        }
        Ok(Self { kind, phase_shift })
    }

    pub fn new_bases() -> Self {
        Self { kind: RuleKind::NewBases, phase_shift: 0.5 }
    }

    pub fn wkb() -> Self {
        Self { kind: RuleKind::Wkb, phase_shift: 0.5 }
    }

    /// Same rule without the half-integer shift, for hard walls.
    pub fn unshifted(self) -> Self {
        Self { phase_shift: 0.0, ..self }
    }

    /// The conventional shift for a profile: none for hard walls, ½ otherwise.
    pub fn for_profile(kind: RuleKind, profile: &KsqProfile) -> Self {
        let shift = if matches!(profile.potential(), PotentialSpec::HardWall { .. }) { 0.0 } else { 0.5 };
        Self { kind, phase_shift: shift }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    QuantizationRoot,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub n: usize,
    pub energy: f64,
    pub method: Method,
}

/// Levels in ascending `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergySpectrum {
    pub levels: Vec<EnergyLevel>,
}

impl EnergySpectrum {
    pub fn new(mut levels: Vec<EnergyLevel>) -> Self {
        levels.sort_by_key(|l| l.n);
        Self { levels }
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        self.levels.iter().find(|l| l.n == n).map(|l| l.energy)
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonEntry {
    pub n: usize,
    pub energy: f64,
    pub reference: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub entries: Vec<ComparisonEntry>,
}

impl SpectrumComparison {
    pub fn max_rel_error(&self) -> f64 {
        self.entries.iter().map(|e| e.rel_error).fold(0.0, f64::max)
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(WaveError::Precondition(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Closed-form algebraic-basis spectrum of `V = U|x|^α`.
pub fn power_law_energy(u: f64, alpha: f64, n: usize, scales: PhysicalScales) -> Result<f64> {
    check_positive("U", u)?;
    check_positive("alpha", alpha)?;
    let PhysicalScales { mass, hbar } = scales;
    let base = PI * PI * hbar * hbar / (8.0 * mass) * (1.0 + 1.0 / alpha) * u.powf(2.0 / alpha);
    let half = n as f64 + 0.5;
    Ok(base.powf(alpha / (alpha + 2.0)) * half.powf(2.0 * alpha / (alpha + 2.0)))
}

/// WKB spectrum of the linear potential `U|x|`.
pub fn wkb_quarkonium_energy(u: f64, n: usize, scales: PhysicalScales) -> Result<f64> {
    check_positive("U", u)?;
    let PhysicalScales { mass, hbar } = scales;
    let base = 9.0 * PI * PI * hbar * hbar * u * u / (32.0 * mass);
    Ok(base.cbrt() * (n as f64 + 0.5).powf(2.0 / 3.0))
}

/// Particle in a box of width `2·half_width`; `n ≥ 1`.
pub fn infinite_well_energy(n: usize, scales: PhysicalScales, half_width: f64) -> Result<f64> {
    if n == 0 {
        return Err(WaveError::Precondition("box states are numbered from n = 1".into()));
    }
    check_positive("half_width", half_width)?;
    let PhysicalScales { mass, hbar } = scales;
    Ok(PI * PI * hbar * hbar * (n * n) as f64 / (8.0 * mass * half_width * half_width))
}

/// Closed-form algebraic-basis spectrum of `V = −U|x|^{−β}`.
pub fn singular_energy(u: f64, beta: f64, n: usize, scales: PhysicalScales) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(WaveError::Precondition(format!(
            "the ground state is bounded from below only for 0 < beta < 1, got {beta}"
        )));
    }
    check_positive("U", u)?;
    let PhysicalScales { mass, hbar } = scales;
    let base = 8.0 * beta * u.powf(2.0 / beta) * mass / (PI * PI * hbar * hbar * (1.0 - beta));
    let half = n as f64 + 0.5;
    Ok(-base.powf(beta / (2.0 - beta)) * half.powf(-2.0 * beta / (2.0 - beta)))
}

/// Exact oscillator levels `ħΩ(n + ½)`.
pub fn harmonic_exact_energy(omega: f64, n: usize, scales: PhysicalScales) -> Result<f64> {
    check_positive("omega", omega)?;
    Ok(scales.hbar * omega * (n as f64 + 0.5))
}

/// The algebraic-basis closed form for any potential class that has one.
/// Hard-wall levels are numbered from 1.
pub fn closed_form_energy(spec: &PotentialSpec, scales: PhysicalScales, n: usize) -> Result<f64> {
    match spec {
        PotentialSpec::PowerLaw { u, alpha } => power_law_energy(*u, *alpha, n, scales),
        PotentialSpec::Harmonic { omega } => {
            power_law_energy(0.5 * scales.mass * omega * omega, 2.0, n, scales)
        }
        PotentialSpec::SingularPowerLaw { u, beta } => singular_energy(*u, *beta, n, scales),
        PotentialSpec::HardWall { half_width } => infinite_well_energy(n, scales, *half_width),
        _ => Err(WaveError::Precondition("no closed-form spectrum for tabulated or piecewise profiles".into())),
    }
}

/// Left-hand side of the quantization condition at energy `E`.
pub fn quantization_phase(profile: &KsqProfile, kind: RuleKind, energy: f64) -> Result<f64> {
    let xi = profile.turning_point(energy)?.xi;
    match kind {
        RuleKind::NewBases => {
            let total = profile.integrate_ksq(energy, -xi, xi)?;
            Ok((2.0 * xi * total).max(0.0).sqrt())
        }
        RuleKind::Wkb => profile.integrate_k(energy, -xi, xi),
    }
}

fn is_singular(profile: &KsqProfile) -> bool {
    matches!(profile.potential(), PotentialSpec::SingularPowerLaw { .. })
}

/// Lowest potential value, reached on a grid node for the sampled profiles.
fn potential_floor(profile: &KsqProfile) -> Result<f64> {
    match profile.potential() {
        PotentialSpec::PiecewiseConstant { values, .. } => Ok(values.iter().copied().fold(f64::INFINITY, f64::min)),
        PotentialSpec::Tabulated { v, .. } => Ok(v.iter().copied().fold(f64::INFINITY, f64::min)),
        _ => Ok(0.0),
    }
}

fn initial_guess(profile: &KsqProfile, rule: QuantizationRule, n: usize, floor: f64) -> Result<f64> {
    let scales = PhysicalScales { mass: 0.5 * profile.coupling(), hbar: 1.0 };
    let closed = match profile.potential() {
        PotentialSpec::PowerLaw { u, alpha } => power_law_energy(*u, *alpha, n, scales).ok(),
        PotentialSpec::SingularPowerLaw { u, beta } => singular_energy(*u, *beta, n, scales).ok().map(|e| -e),
        PotentialSpec::HardWall { half_width } => infinite_well_energy(n.max(1), scales, *half_width).ok(),
        _ => None,
    };
    if let Some(t) = closed {
        return Ok(t);
    }
    let (lo, hi) = profile.domain();
    let x0 = 0.5 * (0.5 * (lo + hi) + hi);
    let t = profile.potential_at(x0)? - floor;
    let _ = rule;
    Ok(if t > 0.0 { t } else { 1.0 / profile.coupling() })
}

/// Root of the quantization condition for level `n`.
///
/// Energies are parametrized by `t = E − V_min > 0` (or `t = −E` for the
/// singular well) so that the residual is increasing in `t`; the bracket grows
/// geometrically from the closed-form or potential-based guess and Brent's
/// method polishes the root.
pub fn solve_quantization(profile: &KsqProfile, rule: QuantizationRule, n: usize) -> Result<EnergyLevel> {
    if !profile.is_even() {
        return Err(WaveError::Precondition("quantization needs an even potential".into()));
    }
    let target = PI * (n as f64 + rule.phase_shift);
    if target <= 0.0 {
        return Err(WaveError::Precondition("n = 0 without a phase shift has no bound state".into()));
    }
    let singular = is_singular(profile);
    let floor = if singular { 0.0 } else { potential_floor(profile)? };
    let energy_of = |t: f64| if singular { -t } else { floor + t };
    let residual = |t: f64| -> Result<f64> {
        let phase = quantization_phase(profile, rule.kind, energy_of(t)).map_err(|e| match e {
            WaveError::NoTurningPoint(msg) => WaveError::NoRoot(msg),
            other => other,
        })?;
        Ok(if singular { target - phase } else { phase - target })
    };
    let t0 = initial_guess(profile, rule, n, floor)?;
    let (lo, hi) = roots::expand_bracket(residual, t0, 2.0, 60)?;
    warn_if_non_monotone(&residual, lo, hi, n);
    let t = if lo == hi { lo } else { roots::brent(residual, lo, hi, 1e-13)? };
    Ok(EnergyLevel { n, energy: energy_of(t), method: Method::QuantizationRoot })
}

fn warn_if_non_monotone<F: Fn(f64) -> Result<f64>>(residual: &F, lo: f64, hi: f64, n: usize) {
    const SAMPLES: usize = 16;
    let values: Vec<(f64, f64)> = (0..=SAMPLES)
        .filter_map(|i| {
            let t = lo + (hi - lo) * i as f64 / SAMPLES as f64;
            residual(t).ok().map(|r| (t, r))
        })
        .collect();
    if values.windows(2).any(|w| w[1].1 < w[0].1) {
        let roots: Vec<f64> = values.windows(2).filter(|w| w[0].1 * w[1].1 <= 0.0).map(|w| w[0].0).collect();
        log::warn!("quantization phase is not monotone for n = {n} in [{lo}, {hi}]; sign changes near t = {roots:?}");
    }
}

/// Quantized levels for every `n` in `ns`, computed in parallel and returned
/// in the order given.
pub fn quantized_spectrum(profile: &KsqProfile, rule: QuantizationRule, ns: &[usize]) -> Result<EnergySpectrum> {
    let levels: Result<Vec<EnergyLevel>> = ns.par_iter().map(|&n| solve_quantization(profile, rule, n)).collect();
    Ok(EnergySpectrum { levels: levels? })
}

pub fn closed_form_spectrum(spec: &PotentialSpec, scales: PhysicalScales, ns: &[usize]) -> Result<EnergySpectrum> {
    let levels = ns
        .iter()
        .map(|&n| Ok(EnergyLevel { n, energy: closed_form_energy(spec, scales, n)?, method: Method::ClosedForm }))
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergySpectrum { levels })
}

/// Relative errors of `a` against the reference `b` on their common levels.
pub fn compare_spectra(a: &EnergySpectrum, b: &EnergySpectrum) -> SpectrumComparison {
    let entries = a
        .levels
        .iter()
        .filter_map(|la| {
            let reference = b.get(la.n)?;
            let rel_error = if la.energy == reference { 0.0 } else { (la.energy - reference).abs() / reference.abs() };
            Some(ComparisonEntry { n: la.n, energy: la.energy, reference, rel_error })
        })
        .collect();
    SpectrumComparison { entries }
}
