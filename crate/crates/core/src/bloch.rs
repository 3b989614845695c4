//! Bloch dispersion of one-dimensional periodic media.
//!
//! Three estimates of the Bloch wavenumber κ for a cell of period L:
//! the algebraic-basis relation `κ² = (1/L)∫₀ᴸ k²`, the WKB relation
//! `κ = (1/L)∫₀ᴸ k`, and the exact value from the trace of the one-period
//! transfer matrix. The first reproduces the long-wavelength (homogenized)
//! limit, the second does not.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::dtmm::{self, ComplexCoefficient, Mat2};
use crate::profiles::{KsqProfile, PotentialSpec};
use crate::{Result, WaveError};

pub const DEFAULT_SEGMENTS: usize = 1024;

/// One period `[x₀, x₀ + L)` of a periodic k² profile, evaluated at a fixed
/// energy. `drive` labels the point in a sweep (frequency or scale factor).
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicProfile {
    pub period: f64,
    pub cell: KsqProfile,
    pub energy: f64,
    pub drive: f64,
}

impl PeriodicProfile {
    /// The cell is the profile's whole (finite) domain.
    pub fn new(cell: KsqProfile, energy: f64) -> Result<Self> {
        let (lo, hi) = cell.domain();
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(WaveError::Config("a periodic cell needs a finite domain (piecewise or tabulated)".into()));
        }
        Ok(Self { period: hi - lo, cell, energy, drive: 1.0 })
    }

    /// Layer of wavenumber `k1` and length `a` followed by `k2` over `b`.
    pub fn two_layer(k1: f64, a: f64, k2: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(WaveError::Config(format!("layer lengths must be positive, got {a} and {b}")));
        }
        let spec = PotentialSpec::PiecewiseConstant { breakpoints: vec![0.0, a, a + b], values: vec![-k1 * k1, -k2 * k2] };
        Self::new(KsqProfile::with_coupling(spec, 1.0)?, 0.0)
    }

    /// The same cell with k² scaled by `s²`; `drive` becomes `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self { cell: self.cell.scaled(s), drive: s, ..self.clone() }
    }

    fn bounds(&self) -> (f64, f64) {
        let (lo, _) = self.cell.domain();
        (lo, lo + self.period)
    }

    fn mean_ksq(&self) -> Result<f64> {
        let (a, b) = self.bounds();
        Ok(self.cell.integrate_ksq(self.energy, a, b)? / self.period)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionPoint {
    pub drive: f64,
    pub kappa_re: f64,
    pub kappa_im: f64,
}

impl DispersionPoint {
    pub fn in_pass_band(&self) -> bool {
        self.kappa_im == 0.0
    }
}

/// `κ = √((1/L)∫k²)`; a negative mean gives a purely imaginary κ.
pub fn kappa_new(profile: &PeriodicProfile) -> Result<DispersionPoint> {
    let mean = profile.mean_ksq()?;
    let (re, im) = if mean >= 0.0 { (mean.sqrt(), 0.0) } else { (0.0, (-mean).sqrt()) };
    Ok(DispersionPoint { drive: profile.drive, kappa_re: re, kappa_im: im })
}

/// `κ = (1/L)∫k`; fails where k² < 0.
pub fn kappa_wkb(profile: &PeriodicProfile) -> Result<DispersionPoint> {
    let (a, b) = profile.bounds();
    let total = profile.cell.integrate_k(profile.energy, a, b)?;
    Ok(DispersionPoint { drive: profile.drive, kappa_re: total / profile.period, kappa_im: 0.0 })
}

/// Real one-period transfer matrix acting on `(u, u')`.
///
/// With `aligned` the segments are split at the cell's breakpoints, which
/// makes piecewise-constant cells exact; otherwise `n_segments` equal pieces
/// are used regardless of where the layers meet.
pub fn monodromy(profile: &PeriodicProfile, n_segments: usize, aligned: bool) -> Result<Mat2> {
    let (a, b) = profile.bounds();
    let f = ComplexCoefficient::from_profile(&profile.cell, profile.energy);
    let q = if aligned {
        dtmm::piecewise_propagate_aligned(&f, a, b, n_segments)?
    } else {
        dtmm::piecewise_propagate(&f, a, b, n_segments)?
    };
    Ok(q.real_part_2x2())
}

/// κ in the first Brillouin zone `[0, π/L]` from a monodromy trace; inside a
/// gap `kappa_re` sits on a zone edge and `kappa_im > 0`.
pub fn kappa_from_trace(trace: f64, period: f64, drive: f64) -> DispersionPoint {
    let half = 0.5 * trace;
    let (re, im) = if half.abs() <= 1.0 {
        (half.acos() / period, 0.0)
    } else if half > 1.0 {
        (0.0, half.acosh() / period)
    } else {
        (std::f64::consts::PI / period, (-half).acosh() / period)
    };
    DispersionPoint { drive, kappa_re: re, kappa_im: im }
}

pub fn kappa_exact(profile: &PeriodicProfile, n_segments: usize) -> Result<DispersionPoint> {
    let m = monodromy(profile, n_segments, true)?;
    Ok(kappa_from_trace(m[0][0] + m[1][1], profile.period, profile.drive))
}

/// `cos κL` for a two-layer cell, from the standard closed-form trace.
pub fn two_layer_cos_kl(k1: f64, a: f64, k2: f64, b: f64) -> f64 {
    (k1 * a).cos() * (k2 * b).cos() - (k1 * k1 + k2 * k2) / (2.0 * k1 * k2) * (k1 * a).sin() * (k2 * b).sin()
}

/// Relative errors `(new, wkb)` of the approximate κ against the exact one
/// after scaling k² by `drive_scale²`.
pub fn homogenization_error(profile: &PeriodicProfile, drive_scale: f64) -> Result<(f64, f64)> {
    let scaled = profile.scaled(drive_scale);
    let exact = kappa_exact(&scaled, DEFAULT_SEGMENTS)?;
    let new = kappa_new(&scaled)?;
    let wkb = kappa_wkb(&scaled)?;
    let reference = exact.kappa_re.hypot(exact.kappa_im);
    let err = |p: DispersionPoint| (p.kappa_re - exact.kappa_re).hypot(p.kappa_im - exact.kappa_im) / reference;
    Ok((err(new), err(wkb)))
}

/// A two-layer cell `(k1, a, k2, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoLayerCell {
    pub k1: f64,
    pub a: f64,
    pub k2: f64,
    pub b: f64,
}

impl TwoLayerCell {
    pub fn profile(&self) -> Result<PeriodicProfile> {
        PeriodicProfile::two_layer(self.k1, self.a, self.k2, self.b)
    }

    pub fn contrast(&self) -> f64 {
        self.k1.max(self.k2) / self.k1.min(self.k2)
    }
}

/// Reproducible random cells: lengths in [0.5, 1.5], wavenumbers in [0.5, 2]
/// with `max(k)/min(k) ≥ min_contrast`.
pub fn random_two_layer_cells(seed: u64, count: usize, min_contrast: f64) -> Vec<TwoLayerCell> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cells = Vec::with_capacity(count);
    while cells.len() < count {
        let cell = TwoLayerCell {
            k1: rng.gen_range(0.5..=2.0),
            a: rng.gen_range(0.5..=1.5),
            k2: rng.gen_range(0.5..=2.0),
            b: rng.gen_range(0.5..=1.5),
        };
        if cell.contrast() >= min_contrast {
            cells.push(cell);
        }
    }
    cells
}

/// Which estimate of κ a sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DispersionMethod {
    New,
    Wkb,
    Exact,
}

impl DispersionMethod {
    pub fn name(self) -> &'static str {
        match self {
            DispersionMethod::New => "new",
            DispersionMethod::Wkb => "wkb",
            DispersionMethod::Exact => "exact",
        }
    }
}

/// κ for every scale factor in `drives`, in the given order.
pub fn dispersion_sweep(
    profile: &PeriodicProfile,
    drives: &[f64],
    method: DispersionMethod,
    n_segments: usize,
) -> Result<Vec<DispersionPoint>> {
    drives
        .par_iter()
        .map(|&s| {
            let p = profile.scaled(s);
            match method {
                DispersionMethod::New => kappa_new(&p),
                DispersionMethod::Wkb => kappa_wkb(&p),
                DispersionMethod::Exact => kappa_exact(&p, n_segments),
            }
        })
        .collect()
}
