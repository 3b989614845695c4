//! Potential and permittivity profiles, the wavenumber function
//! `k²(x; E) = (2m/ħ²)(E − V(x))`, turning points, and the quadratures of `k²`
//! and `k` used by the bases, the quantizers and the Bloch dispersion.
//!
//! Everything here is immutable after construction and safe to share between
//! threads.

use serde::{Deserialize, Serialize};

use crate::quadrature;
use crate::{Result, WaveError};

/// Mass and reduced Planck constant. `normalized()` sets ħ²/2m = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalScales {
    pub mass: f64,
    pub hbar: f64,
}

impl PhysicalScales {
    pub fn new(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) || !(hbar > 0.0 && hbar.is_finite()) {
            return Err(WaveError::Config(format!(
                "scales must be positive (mass = {mass}, hbar = {hbar})"
            )));
        }
        Ok(Self { mass, hbar })
    }

    /// Atomic-style units with ħ = 1 and m = 1/2, so that ħ²/2m = 1.
    pub fn normalized() -> Self {
        Self { mass: 0.5, hbar: 1.0 }
    }

    /// The prefactor 2m/ħ² in k² = (2m/ħ²)(E − V).
    pub fn coupling(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

impl Default for PhysicalScales {
    fn default() -> Self {
        Self::normalized()
    }
}

/// Declarative description of a potential `V(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    /// `V = U|x|^α`.
    PowerLaw {
        #[serde(rename = "U")]
        u: f64,
        alpha: f64,
    },
    /// `V = −U|x|^{−β}` with `0 < β < 1`.
    #[serde(rename = "singular")]
    SingularPowerLaw {
        #[serde(rename = "U")]
        u: f64,
        beta: f64,
    },
    /// `V = ½mΩ²x²`.
    Harmonic { omega: f64 },
    /// Constant `values[i]` on `[breakpoints[i], breakpoints[i+1])`.
    #[serde(rename = "piecewise")]
    PiecewiseConstant { breakpoints: Vec<f64>, values: Vec<f64> },
    /// Linear interpolation of `(x[i], V[i])`.
    Tabulated {
        x: Vec<f64>,
        #[serde(rename = "V")]
        v: Vec<f64>,
    },
    /// Infinite walls at `±half_width`, zero potential in between.
    HardWall { half_width: f64 },
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(WaveError::Config(format!("{name} must be a positive finite number, got {v}")))
            }
        };
        let ascending = |name: &str, xs: &[f64]| {
            if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| w[1] <= w[0]) {
                Err(WaveError::Config(format!("{name} must be finite and strictly ascending")))
            } else {
                Ok(())
            }
        };
        match self {
            PotentialSpec::PowerLaw { u, alpha } => {
                positive("U", *u)?;
                positive("alpha", *alpha)
            }
            PotentialSpec::SingularPowerLaw { u, beta } => {
                positive("U", *u)?;
                if !(*beta > 0.0 && *beta < 1.0) {
                    return Err(WaveError::Config(format!(
                        "beta must lie in (0, 1) for an integrable singular well, got {beta}"
                    )));
                }
                Ok(())
            }
            PotentialSpec::Harmonic { omega } => positive("omega", *omega),
            PotentialSpec::PiecewiseConstant { breakpoints, values } => {
                ascending("breakpoints", breakpoints)?;
                if values.is_empty() || breakpoints.len() != values.len() + 1 {
                    return Err(WaveError::Config(format!(
                        "piecewise profile needs len(breakpoints) = len(values) + 1, got {} and {}",
                        breakpoints.len(),
                        values.len()
                    )));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(WaveError::Config("piecewise values must be finite".into()));
                }
                Ok(())
            }
            PotentialSpec::Tabulated { x, v } => {
                ascending("x", x)?;
                if x.len() < 2 || x.len() != v.len() {
                    return Err(WaveError::Config(format!(
                        "tabulated profile needs at least two points and matching lengths, got {} and {}",
                        x.len(),
                        v.len()
                    )));
                }
                if v.iter().any(|v| !v.is_finite()) {
                    return Err(WaveError::Config("tabulated values must be finite".into()));
                }
                Ok(())
            }
            PotentialSpec::HardWall { half_width } => positive("half_width", *half_width),
        }
    }

    /// Replace `Harmonic` by the equivalent power law `U = mΩ²/2, α = 2`.
    fn resolved(&self, scales: &PhysicalScales) -> PotentialSpec {
        match self {
            PotentialSpec::Harmonic { omega } => PotentialSpec::PowerLaw {
                u: 0.5 * scales.mass * omega * omega,
                alpha: 2.0,
            },
            other => other.clone(),
        }
    }

    /// The potential multiplied by −1, for piecewise and tabulated profiles.
    pub fn negated(&self) -> Result<PotentialSpec> {
        match self {
            PotentialSpec::PiecewiseConstant { breakpoints, values } => Ok(PotentialSpec::PiecewiseConstant {
                breakpoints: breakpoints.clone(),
                values: values.iter().map(|v| -v).collect(),
            }),
            PotentialSpec::Tabulated { x, v } => Ok(PotentialSpec::Tabulated {
                x: x.clone(),
                v: v.iter().map(|v| -v).collect(),
            }),
            _ => Err(WaveError::Precondition(
                "only piecewise and tabulated profiles can be negated".into(),
            )),
        }
    }

    /// Whether `V(−x) = V(x)` over the whole domain.
    pub fn is_even(&self) -> bool {
        let mirrored = |xs: &[f64]| {
            let n = xs.len();
            (0..n).all(|i| (xs[i] + xs[n - 1 - i]).abs() <= 1e-12 * (1.0 + xs[i].abs()))
        };
        let palindrome = |vs: &[f64]| {
            let n = vs.len();
            (0..n).all(|i| (vs[i] - vs[n - 1 - i]).abs() <= 1e-12 * (1.0 + vs[i].abs()))
        };
        match self {
            PotentialSpec::PiecewiseConstant { breakpoints, values } => {
                mirrored(breakpoints) && palindrome(values)
            }
            PotentialSpec::Tabulated { x, v } => mirrored(x) && palindrome(v),
            _ => true,
        }
    }

    /// Parse the JSON document accepted by the CLI and library loaders:
    /// `{"type": ..., <variant fields>, "scales": {"mass": .., "hbar": ..}}`.
    pub fn from_json(text: &str) -> Result<(PotentialSpec, PhysicalScales)> {
        let mut value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| WaveError::Config(format!("invalid JSON: {e}")))?;
        let scales = match value.as_object_mut().and_then(|o| o.remove("scales")) {
            Some(s) => {
                let s: PhysicalScales =
                    serde_json::from_value(s).map_err(|e| WaveError::Config(format!("invalid scales: {e}")))?;
                PhysicalScales::new(s.mass, s.hbar)?
            }
            None => PhysicalScales::normalized(),
        };
        let spec: PotentialSpec =
            serde_json::from_value(value).map_err(|e| WaveError::Config(format!("invalid potential: {e}")))?;
        spec.validate()?;
        Ok((spec, scales))
    }
}

/// An optical waveguide profile: `k² = (ω/c)²(ε(x) − N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalSpec {
    pub omega: f64,
    pub c: f64,
    /// Relative permittivity ε(x); piecewise or tabulated.
    pub epsilon: PotentialSpec,
    /// Normalized propagation constant.
    pub n_eff: f64,
}

impl OpticalSpec {
    /// Map onto a [`KsqProfile`] evaluated at the returned "energy": the
    /// permittivity plays the role of −V, the propagation constant that of −E,
    /// and (ω/c)² that of 2m/ħ².
    pub fn to_ksq(&self) -> Result<(KsqProfile, f64)> {
        if !(self.omega > 0.0) || !(self.c > 0.0) {
            return Err(WaveError::Config("omega and c must be positive".into()));
        }
        self.epsilon.validate()?;
        let profile = KsqProfile::with_coupling(self.epsilon.negated()?, (self.omega / self.c).powi(2))?;
        Ok((profile, -self.n_eff))
    }
}

/// The positive turning point ξ; even profiles have the pair ±ξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub xi: f64,
}

impl TurningPoints {
    pub fn pair(&self) -> (f64, f64) {
        (-self.xi, self.xi)
    }
}

/// The wavenumber function `k²(x; E) = coupling · (E − V(x))`.
#[derive(Debug, Clone, PartialEq)]
pub struct KsqProfile {
    potential: PotentialSpec,
    source: PotentialSpec,
    coupling: f64,
}

const TURNING_POINT_RTOL: f64 = 1e-12;

impl KsqProfile {
    pub fn new(spec: PotentialSpec, scales: PhysicalScales) -> Result<Self> {
        spec.validate()?;
        PhysicalScales::new(scales.mass, scales.hbar)?;
        Ok(Self {
            potential: spec.resolved(&scales),
            source: spec,
            coupling: scales.coupling(),
        })
    }

    /// Profile in normalized units (ħ²/2m = 1).
    pub fn normalized(spec: PotentialSpec) -> Result<Self> {
        Self::new(spec, PhysicalScales::normalized())
    }

    /// Profile with an explicit prefactor in place of 2m/ħ².
    pub fn with_coupling(spec: PotentialSpec, coupling: f64) -> Result<Self> {
        spec.validate()?;
        if matches!(spec, PotentialSpec::Harmonic { .. }) {
            return Err(WaveError::Config("harmonic profiles need physical scales".into()));
        }
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(WaveError::Config(format!("coupling must be positive, got {coupling}")));
        }
        Ok(Self { potential: spec.clone(), source: spec, coupling })
    }

    /// A constant wavenumber `k` on `[x_min, x_max]` (zero potential, E = k²
    /// in unit coupling). Evaluate with `E = 0`.
    pub fn constant(k_squared: f64, x_min: f64, x_max: f64) -> Result<Self> {
        Self::with_coupling(
            PotentialSpec::PiecewiseConstant { breakpoints: vec![x_min, x_max], values: vec![-k_squared] },
            1.0,
        )
    }

    /// Same profile with k² multiplied by `s²` (long-wavelength scaling).
    pub fn scaled(&self, s: f64) -> Self {
        Self { coupling: self.coupling * s * s, ..self.clone() }
    }

    /// The potential as given, before harmonic resolution.
    pub fn spec(&self) -> &PotentialSpec {
        &self.source
    }

    /// The potential actually evaluated (harmonic mapped to a power law).
    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn is_even(&self) -> bool {
        self.potential.is_even()
    }

    /// Closed interval on which the profile is defined.
    pub fn domain(&self) -> (f64, f64) {
        match &self.potential {
            PotentialSpec::PiecewiseConstant { breakpoints, .. } => {
                (breakpoints[0], *breakpoints.last().unwrap())
            }
            PotentialSpec::Tabulated { x, .. } => (x[0], *x.last().unwrap()),
            PotentialSpec::HardWall { half_width } => (-half_width, *half_width),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Interior points where k² is not smooth (or singular).
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.potential {
            PotentialSpec::PiecewiseConstant { breakpoints, .. } => breakpoints.clone(),
            PotentialSpec::Tabulated { x, .. } => x.clone(),
            PotentialSpec::SingularPowerLaw { .. } => vec![0.0],
            PotentialSpec::PowerLaw { alpha, .. } if alpha.fract() != 0.0 || *alpha % 2.0 != 0.0 => vec![0.0],
            _ => Vec::new(),
        }
    }

    pub fn is_singular_at(&self, x: f64) -> bool {
        x == 0.0 && matches!(self.potential, PotentialSpec::SingularPowerLaw { .. })
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x.is_nan() || x < lo || x > hi {
            return Err(WaveError::Domain { x, lo, hi });
        }
        Ok(())
    }

    /// V(x).
    pub fn potential_at(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(match &self.potential {
            PotentialSpec::PowerLaw { u, alpha } => u * x.abs().powf(*alpha),
            PotentialSpec::SingularPowerLaw { u, beta } => {
                if x == 0.0 {
                    return Err(WaveError::SingularPoint { x });
                }
                -u * x.abs().powf(-beta)
            }
            PotentialSpec::Harmonic { .. } => unreachable!("resolved at construction"),
            PotentialSpec::PiecewiseConstant { breakpoints, values } => {
                let idx = breakpoints.partition_point(|&b| b <= x).saturating_sub(1);
                values[idx.min(values.len() - 1)]
            }
            PotentialSpec::Tabulated { x: xs, v } => {
                let idx = xs.partition_point(|&b| b <= x).saturating_sub(1).min(xs.len() - 2);
                let t = (x - xs[idx]) / (xs[idx + 1] - xs[idx]);
                v[idx] + t * (v[idx + 1] - v[idx])
            }
            PotentialSpec::HardWall { .. } => 0.0,
        })
    }

    /// k²(x; E). Negative values mark the classically forbidden region.
    pub fn ksq_at(&self, energy: f64, x: f64) -> Result<f64> {
        Ok(self.coupling * (energy - self.potential_at(x)?))
    }

    /// Positive turning point ξ with k²(±ξ) = 0.
    pub fn turning_point(&self, energy: f64) -> Result<TurningPoints> {
        match &self.potential {
            PotentialSpec::PowerLaw { u, alpha } => {
                if !(energy > 0.0) {
                    return Err(WaveError::Precondition(format!(
                        "power-law turning points need E > 0, got {energy}"
                    )));
                }
                Ok(TurningPoints { xi: (energy / u).powf(1.0 / alpha) })
            }
            PotentialSpec::SingularPowerLaw { u, beta } => {
                if !(energy < 0.0) {
                    return Err(WaveError::Precondition(format!(
                        "singular-well turning points need E < 0, got {energy}"
                    )));
                }
                Ok(TurningPoints { xi: (-u / energy).powf(1.0 / beta) })
            }
            PotentialSpec::HardWall { half_width } => {
                if !(energy > 0.0) {
                    return Err(WaveError::Precondition(format!(
                        "hard-wall states need E > 0, got {energy}"
                    )));
                }
                Ok(TurningPoints { xi: *half_width })
            }
            PotentialSpec::Harmonic { .. } => unreachable!("resolved at construction"),
            PotentialSpec::PiecewiseConstant { .. } | PotentialSpec::Tabulated { .. } => {
                self.bisect_turning_point(energy)
            }
        }
    }

    /// Scan outward from the domain centre for the first sign change of k²,
    /// then bisect it to relative tolerance 1e-12 in x.
    fn bisect_turning_point(&self, energy: f64) -> Result<TurningPoints> {
        let (lo, hi) = self.domain();
        let center = 0.5 * (lo + hi);
        let ksq = |x: f64| self.ksq_at(energy, x);
        if ksq(center)? <= 0.0 {
            return Err(WaveError::NoTurningPoint(format!(
                "k² ≤ 0 at the domain centre x = {center} for E = {energy}"
            )));
        }
        let mut nodes: Vec<f64> = self.breakpoints().into_iter().filter(|&b| b > center).collect();
        if nodes.last() != Some(&hi) {
            nodes.push(hi);
        }
        let mut left = center;
        for &node in &nodes {
            // a breakpoint carries the value of the segment to its right, so a
            // jump into the forbidden region is caught at the node itself
            if ksq(node)? <= 0.0 {
                let (mut a, mut b) = (left, node);
                while (b - a) > TURNING_POINT_RTOL * b.abs().max(f64::MIN_POSITIVE) {
                    let mid = 0.5 * (a + b);
                    if mid <= a || mid >= b {
                        break;
                    }
                    if ksq(mid)? > 0.0 {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                return Ok(TurningPoints { xi: 0.5 * (a + b) });
            }
            left = node;
        }
        Err(WaveError::NoTurningPoint(format!(
            "k² stays positive up to the domain edge x = {hi} for E = {energy}"
        )))
    }

    /// ∫ₐᵇ V(x) dx in closed form where one exists.
    fn potential_integral(&self, a: f64, b: f64) -> Option<f64> {
        match &self.potential {
            PotentialSpec::PowerLaw { u, alpha } => {
                let anti = |x: f64| u * x.signum() * x.abs().powf(alpha + 1.0) / (alpha + 1.0);
                Some(anti(b) - anti(a))
            }
            PotentialSpec::SingularPowerLaw { u, beta } => {
                // odd antiderivative of −U|x|^{−β}; continuous through 0 for β < 1
                let anti = |x: f64| -u * x.signum() * x.abs().powf(1.0 - beta) / (1.0 - beta);
                Some(anti(b) - anti(a))
            }
            PotentialSpec::HardWall { .. } => Some(0.0),
            PotentialSpec::PiecewiseConstant { breakpoints, values } => {
                let mut total = 0.0;
                for (i, v) in values.iter().enumerate() {
                    let lo = breakpoints[i].max(a);
                    let hi = breakpoints[i + 1].min(b);
                    if hi > lo {
                        total += v * (hi - lo);
                    }
                }
                Some(total)
            }
            PotentialSpec::Tabulated { x, .. } => {
                // trapezoid of the linear interpolant is exact segment by segment
                let mut pts = vec![a];
                pts.extend(x.iter().copied().filter(|&t| t > a && t < b));
                pts.push(b);
                let mut total = 0.0;
                for w in pts.windows(2) {
                    let va = self.potential_at(w[0]).ok()?;
                    let vb = self.potential_at(w[1]).ok()?;
                    total += 0.5 * (va + vb) * (w[1] - w[0]);
                }
                Some(total)
            }
            PotentialSpec::Harmonic { .. } => None,
        }
    }

    /// ∫ₐᵇ k²(t; E) dt for `a ≤ b`, in closed form for every variant.
    pub fn integrate_ksq(&self, energy: f64, a: f64, b: f64) -> Result<f64> {
        if a > b {
            return Err(WaveError::Precondition(format!("integrate_ksq needs a ≤ b, got [{a}, {b}]")));
        }
        self.check_domain(a)?;
        self.check_domain(b)?;
        let v = self
            .potential_integral(a, b)
            .ok_or_else(|| WaveError::Integration("no closed form for this profile".into()))?;
        Ok(self.coupling * (energy * (b - a) - v))
    }

    /// ∫ₐᵇ k² by adaptive quadrature alone; the independent route used to
    /// cross-check the closed forms.
    pub fn integrate_ksq_adaptive(&self, energy: f64, a: f64, b: f64) -> Result<f64> {
        if a > b {
            return Err(WaveError::Precondition(format!("integrate_ksq needs a ≤ b, got [{a}, {b}]")));
        }
        self.check_domain(a)?;
        self.check_domain(b)?;
        let ksq = |x: f64| self.ksq_at(energy, x).unwrap_or(f64::NAN);
        let mut total = 0.0;
        for (lo, hi) in self.pieces(a, b) {
            let touches_singularity = self.is_singular_at(lo) || self.is_singular_at(hi);
            total += if touches_singularity {
                quadrature::tanh_sinh(ksq, lo, hi, 1e-13)?
            } else {
                quadrature::adaptive(ksq, lo, hi, &[], 1e-12)?
            };
        }
        Ok(total)
    }

    /// Signed accumulation ∫₀ˣ k²(t; E) dt, negative-oriented for x < 0.
    pub fn accumulated_ksq(&self, energy: f64, x: f64) -> Result<f64> {
        if x >= 0.0 {
            self.integrate_ksq(energy, 0.0, x)
        } else {
            self.integrate_ksq(energy, x, 0.0).map(|v| -v)
        }
    }

    /// [a, b] split at every interior breakpoint.
    fn pieces(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let mut nodes = vec![a];
        nodes.extend(self.breakpoints().into_iter().filter(|&t| t > a && t < b));
        nodes.push(b);
        nodes.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// ∫ₐᵇ k(t; E) dt with k = √k², tolerating square-root zeros at the
    /// endpoints. Fails if k² is negative anywhere inside.
    pub fn integrate_k(&self, energy: f64, a: f64, b: f64) -> Result<f64> {
        if a > b {
            return Err(WaveError::Precondition(format!("integrate_k needs a ≤ b, got [{a}, {b}]")));
        }
        self.check_domain(a)?;
        self.check_domain(b)?;
        self.integrate_root(energy, a, b, false)
    }

    /// ∫ₐᵇ √|k²| dt, without the allowed-region check. Used for the evanescent
    /// phase of the Airy-improved bases.
    pub fn integrate_abs_k(&self, energy: f64, a: f64, b: f64) -> Result<f64> {
        let (a, b, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
        self.check_domain(a)?;
        self.check_domain(b)?;
        Ok(sign * self.integrate_root(energy, a, b, true)?)
    }

    fn integrate_root(&self, energy: f64, a: f64, b: f64, absolute: bool) -> Result<f64> {
        // relative slack for k² rounding noise next to a turning point
        let scale = self.coupling * energy.abs().max(1e-300);
        let forbidden = std::cell::Cell::new(None::<(f64, f64)>);
        let integrand = |x: f64| match self.ksq_at(energy, x) {
            Ok(k2) if absolute => k2.abs().sqrt(),
            Ok(k2) if k2 >= 0.0 => k2.sqrt(),
            Ok(k2) => {
                if k2 < -1e-8 * scale && forbidden.get().is_none() {
                    forbidden.set(Some((x, k2)));
                }
                0.0
            }
            Err(_) => f64::NAN,
        };
        let mut total = 0.0;
        for (lo, hi) in self.pieces(a, b) {
            total += quadrature::tanh_sinh(integrand, lo, hi, 1e-13)?;
            if let Some((x, ksq)) = forbidden.get() {
                return Err(WaveError::ForbiddenRegion { x, ksq });
            }
        }
        Ok(total)
    }

    /// Signed accumulation ∫₀ˣ k(t; E) dt.
    pub fn accumulated_k(&self, energy: f64, x: f64) -> Result<f64> {
        if x >= 0.0 {
            self.integrate_k(energy, 0.0, x)
        } else {
            self.integrate_k(energy, x, 0.0).map(|v| -v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic() -> KsqProfile {
        KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 2.0 }).unwrap()
    }

    fn singular() -> KsqProfile {
        KsqProfile::normalized(PotentialSpec::SingularPowerLaw { u: 1.0, beta: 0.5 }).unwrap()
    }

    #[test]
    fn ksq_examples() {
        assert_eq!(quadratic().ksq_at(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(quadratic().ksq_at(1.0, 1.0).unwrap(), 0.0);
        // −E + x^{-1/2} with E = −1.17474 at x = 1/4
        let v = singular().ksq_at(-1.17474, 0.25).unwrap();
        assert!((v - 0.82526).abs() < 1e-12, "{v}");
    }

    #[test]
    fn ksq_errors() {
        assert!(matches!(singular().ksq_at(-1.0, 0.0), Err(WaveError::SingularPoint { .. })));
        let wall = KsqProfile::normalized(PotentialSpec::HardWall { half_width: 1.0 }).unwrap();
        assert!(matches!(wall.ksq_at(1.0, 1.5), Err(WaveError::Domain { .. })));
    }

    #[test]
    fn turning_point_examples() {
        assert_eq!(quadratic().turning_point(4.0).unwrap().xi, 2.0);
        let xi = singular().turning_point(-1.17474).unwrap().xi;
        assert!((xi - (1.0f64 / 1.17474).powi(2)).abs() < 1e-14);
        assert!((xi - 0.72466).abs() < 5e-5);
        let wall = KsqProfile::normalized(PotentialSpec::HardWall { half_width: 1.0 }).unwrap();
        assert_eq!(wall.turning_point(3.7).unwrap().xi, 1.0);
    }

    #[test]
    fn turning_point_preconditions() {
        assert!(matches!(quadratic().turning_point(-1.0), Err(WaveError::Precondition(_))));
        assert!(matches!(singular().turning_point(0.5), Err(WaveError::Precondition(_))));
    }

    #[test]
    fn singular_turning_point_agrees_with_bisection() {
        let p = singular();
        let e = -1.17474;
        let (mut a, mut b) = (0.1, 5.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if p.ksq_at(e, m).unwrap() > 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert!((p.turning_point(e).unwrap().xi - a).abs() < 1e-12);
    }

    #[test]
    fn tabulated_turning_point_by_bisection() {
        let xs: Vec<f64> = (0..=40).map(|i| -2.0 + 0.1 * i as f64).collect();
        let vs: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let p = KsqProfile::normalized(PotentialSpec::Tabulated { x: xs, v: vs }).unwrap();
        let tp = p.turning_point(1.21).unwrap();
        // the linear interpolant is exact at the node x = 1.1
        assert!((tp.xi - 1.1).abs() < 1e-11, "{}", tp.xi);
        assert!(matches!(p.turning_point(9.0), Err(WaveError::NoTurningPoint(_))));
    }

    #[test]
    fn integrate_ksq_examples() {
        let c = KsqProfile::constant(4.0, -10.0, 10.0).unwrap();
        assert_eq!(c.integrate_ksq(0.0, 0.0, 3.0).unwrap(), 12.0);
        assert!((quadratic().integrate_ksq(1.0, 0.0, 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((quadratic().integrate_ksq_adaptive(1.0, 0.0, 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((singular().integrate_ksq(-1.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let v = singular().integrate_ksq_adaptive(-1.0, 0.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn integrate_k_examples() {
        let c = KsqProfile::constant(4.0, -10.0, 10.0).unwrap();
        assert!((c.integrate_k(0.0, 0.0, 3.0).unwrap() - 6.0).abs() < 1e-12);
        let v = quadratic().integrate_k(1.0, -1.0, 1.0).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-10, "{v}");
        let linear = KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 1.0 }).unwrap();
        assert!((linear.integrate_k(1.0, 0.0, 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn integrate_k_rejects_forbidden_interior() {
        let r = quadratic().integrate_k(1.0, 0.0, 2.0);
        assert!(matches!(r, Err(WaveError::ForbiddenRegion { .. })), "{r:?}");
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let (spec, scales) =
            PotentialSpec::from_json(r#"{"type":"singular","U":1.0,"beta":0.5,"scales":{"mass":1.0,"hbar":2.0}}"#)
                .unwrap();
        assert_eq!(spec, PotentialSpec::SingularPowerLaw { u: 1.0, beta: 0.5 });
        assert_eq!(scales, PhysicalScales { mass: 1.0, hbar: 2.0 });
        assert!(PotentialSpec::from_json(r#"{"type":"singular","U":1.0,"beta":1.5}"#).is_err());
        assert!(PotentialSpec::from_json(r#"{"type":"harmonic","omega":1.0,"bogus":2}"#).is_err());
        let (spec, scales) = PotentialSpec::from_json(r#"{"type":"hard_wall","half_width":2}"#).unwrap();
        assert_eq!(spec, PotentialSpec::HardWall { half_width: 2.0 });
        assert_eq!(scales, PhysicalScales::normalized());
    }

    #[test]
    fn harmonic_resolves_with_mass() {
        let scales = PhysicalScales::new(2.0, 1.0).unwrap();
        let p = KsqProfile::new(PotentialSpec::Harmonic { omega: 3.0 }, scales).unwrap();
        // V = ½·2·9·x² = 9x², coupling = 4
        assert!((p.ksq_at(1.0, 0.5).unwrap() - 4.0 * (1.0 - 9.0 * 0.25)).abs() < 1e-14);
    }

    #[test]
    fn optical_mapping() {
        let spec = OpticalSpec {
            omega: 2.0,
            c: 1.0,
            epsilon: PotentialSpec::PiecewiseConstant { breakpoints: vec![0.0, 1.0, 2.0], values: vec![2.25, 1.0] },
            n_eff: 1.5,
        };
        let (p, e) = spec.to_ksq().unwrap();
        assert!((p.ksq_at(e, 0.5).unwrap() - 4.0 * (2.25 - 1.5)).abs() < 1e-14);
        assert!((p.ksq_at(e, 1.5).unwrap() - 4.0 * (1.0 - 1.5)).abs() < 1e-14);
    }
}
