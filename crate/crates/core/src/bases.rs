//! Basis pairs for `u'' + k²(x)u = 0` anchored at `x = 0`.
//!
//! The algebraic pair
//!
//! ```text
//! C(x) = cos √w,   S(x) = x · sinc √w,   w = x ∫₀ˣ k²(t) dt
//! ```
//!
//! is evaluated through entire functions of `w`, so it stays finite and smooth
//! where `k²` (and eventually `w`) changes sign. The WKB pair carries the
//! `1/√k` amplitude and diverges at turning points; the simple WKB pair drops
//! it. The Airy-improved pair is anchored at a chosen turning point.

use crate::profiles::KsqProfile;
use crate::special::{airy_ai, airy_bi};
use crate::{Result, WaveError};

/// Below this |w| the Taylor series replace the direct trigonometric forms.
const SERIES_THRESHOLD: f64 = 1e-4;

/// |k| below which the WKB amplitude is treated as divergent.
const WKB_ZERO_K: f64 = 1e-12;

/// `cos √w`, continued to `cosh √(−w)` for negative `w`.
pub fn cos_sqrt(w: f64) -> f64 {
    if w.abs() < SERIES_THRESHOLD {
        1.0 - w / 2.0 + w * w / 24.0 - w * w * w / 720.0
    } else if w > 0.0 {
        w.sqrt().cos()
    } else {
        (-w).sqrt().cosh()
    }
}

/// `sin √w / √w`, continued to `sinh √(−w) / √(−w)`; equal to 1 at `w = 0`.
pub fn sinc_sqrt(w: f64) -> f64 {
    if w.abs() < SERIES_THRESHOLD {
        1.0 - w / 6.0 + w * w / 120.0
    } else if w > 0.0 {
        let r = w.sqrt();
        r.sin() / r
    } else {
        let r = (-w).sqrt();
        r.sinh() / r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisKind {
    NewBases,
    Wkb,
    SimpleWkb,
    /// Anchored at the turning point `xi`.
    AiryImproved { xi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisEvaluation {
    pub c: f64,
    pub s: f64,
    pub kind: BasisKind,
    pub x: f64,
    /// False where the WKB amplitude diverges; `c` and `s` are then ±∞.
    pub finite: bool,
}

/// Evaluate the pair `(C, S)` of the given kind at `x` for energy `energy`.
pub fn eval_basis(kind: BasisKind, profile: &KsqProfile, energy: f64, x: f64) -> Result<BasisEvaluation> {
    let finite = |c: f64, s: f64| BasisEvaluation { c, s, kind, x, finite: true };
    match kind {
        BasisKind::NewBases => {
            let w = x * profile.accumulated_ksq(energy, x)?;
            Ok(finite(cos_sqrt(w), x * sinc_sqrt(w)))
        }
        BasisKind::SimpleWkb => {
            let phase = profile.accumulated_k(energy, x)?;
            Ok(finite(phase.cos(), phase.sin()))
        }
        BasisKind::Wkb => {
            if profile.is_singular_at(x) {
                // k → ∞ at the singular point, so the amplitude 1/√k vanishes
                return Ok(finite(0.0, 0.0));
            }
            let ksq = profile.ksq_at(energy, x)?;
            let phase = profile.accumulated_k(energy, x)?;
            let k = ksq.max(0.0).sqrt();
            if k < WKB_ZERO_K {
                let sentinel = |v: f64| if v < 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
                return Ok(BasisEvaluation {
                    c: sentinel(phase.cos()),
                    s: sentinel(phase.sin()),
                    kind,
                    x,
                    finite: false,
                });
            }
            let amplitude = 1.0 / k.sqrt();
            Ok(finite(amplitude * phase.cos(), amplitude * phase.sin()))
        }
        BasisKind::AiryImproved { xi } => {
            if profile.is_singular_at(x) {
                return Ok(finite(0.0, 0.0));
            }
            let ksq = profile.ksq_at(energy, x)?;
            if ksq.abs().sqrt() < WKB_ZERO_K || x == xi {
                let prefactor = airy_limit_prefactor(profile, energy, xi)?;
                return Ok(finite(prefactor * airy_ai(0.0), prefactor * airy_bi(0.0)));
            }
            let action = profile.integrate_abs_k(energy, x, xi)?.abs();
            let magnitude = (1.5 * action).powf(2.0 / 3.0);
            // negative argument in the allowed zone, positive in the forbidden zone
            let argument = if ksq > 0.0 { -magnitude } else { magnitude };
            let prefactor = action.powf(1.0 / 6.0) / ksq.abs().powf(0.25);
            Ok(finite(prefactor * airy_ai(argument), prefactor * airy_bi(argument)))
        }
    }
}

/// Limit of `[∫ₓ^ξ k]^{1/6} / √k` as `x → ξ`: `(2/3)^{1/6} |dk²/dx|^{-1/6}`.
fn airy_limit_prefactor(profile: &KsqProfile, energy: f64, xi: f64) -> Result<f64> {
    let h = 1e-6 * xi.abs().max(1.0);
    let (lo, hi) = profile.domain();
    let slope = if xi - h >= lo && xi + h <= hi {
        (profile.ksq_at(energy, xi + h)? - profile.ksq_at(energy, xi - h)?) / (2.0 * h)
    } else if xi - h >= lo {
        (profile.ksq_at(energy, xi)? - profile.ksq_at(energy, xi - h)?) / h
    } else {
        (profile.ksq_at(energy, xi + h)? - profile.ksq_at(energy, xi)?) / h
    };
    if slope == 0.0 {
        return Err(WaveError::Divergent { x: xi });
    }
    Ok((2.0f64 / 3.0).powf(1.0 / 6.0) * slope.abs().powf(-1.0 / 6.0))
}

/// `u(x) = C(x)·u(0) + S(x)·u'(0)`.
pub fn solution_from_ic(
    kind: BasisKind,
    profile: &KsqProfile,
    energy: f64,
    u0: f64,
    up0: f64,
    x: f64,
) -> Result<f64> {
    let basis = eval_basis(kind, profile, energy, x)?;
    if !basis.finite {
        return Err(WaveError::Divergent { x });
    }
    Ok(basis.c * u0 + basis.s * up0)
}

/// Fourth-order central differences `(dC/dx, dS/dx)`. The default step is
/// `1e-5 · max(1, |x|)`.
pub fn basis_derivative(
    kind: BasisKind,
    profile: &KsqProfile,
    energy: f64,
    x: f64,
    step: Option<f64>,
) -> Result<(f64, f64)> {
    let h = step.unwrap_or(1e-5 * x.abs().max(1.0));
    let at = |t: f64| -> Result<(f64, f64)> {
        let b = eval_basis(kind, profile, energy, t)?;
        if !b.finite {
            return Err(WaveError::Divergent { x: t });
        }
        Ok((b.c, b.s))
    };
    let (c_m2, s_m2) = at(x - 2.0 * h)?;
    let (c_m1, s_m1) = at(x - h)?;
    let (c_p1, s_p1) = at(x + h)?;
    let (c_p2, s_p2) = at(x + 2.0 * h)?;
    let d = |m2: f64, m1: f64, p1: f64, p2: f64| (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    Ok((d(c_m2, c_m1, c_p1, c_p2), d(s_m2, s_m1, s_p1, s_p2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::PotentialSpec;
    use std::f64::consts::PI;

    fn constant(k: f64) -> KsqProfile {
        KsqProfile::constant(k * k, -50.0, 50.0).unwrap()
    }

    #[test]
    fn cos_sqrt_examples() {
        assert_eq!(cos_sqrt(0.0), 1.0);
        assert!((cos_sqrt(PI * PI) + 1.0).abs() < 1e-15);
        assert!((cos_sqrt(-1.0) - 1f64.cosh()).abs() < 1e-15);
        assert!((cos_sqrt(-1.0) - 1.5430806).abs() < 1e-7);
    }

    #[test]
    fn sinc_sqrt_examples() {
        assert_eq!(sinc_sqrt(0.0), 1.0);
        assert!(sinc_sqrt(PI * PI).abs() < 1e-15);
        assert!((sinc_sqrt(-1.0) - 1f64.sinh()).abs() < 1e-15);
        assert!((sinc_sqrt(-1.0) - 1.1752012).abs() < 1e-7);
    }

    #[test]
    fn series_branches_meet_direct_branches() {
        for w in [SERIES_THRESHOLD, -SERIES_THRESHOLD] {
            let below = w * (1.0 - 1e-12);
            let direct_c = if w > 0.0 { w.sqrt().cos() } else { (-w).sqrt().cosh() };
            let direct_s = if w > 0.0 { w.sqrt().sin() / w.sqrt() } else { (-w).sqrt().sinh() / (-w).sqrt() };
            assert!((cos_sqrt(below) - direct_c).abs() < 1e-12);
            assert!((sinc_sqrt(below) - direct_s).abs() < 1e-12);
        }
    }

    #[test]
    fn new_bases_reduce_to_trigonometry_for_constant_k() {
        let k = 1.7;
        let p = constant(k);
        for x in [-3.0, -0.2, 0.0, 0.9, 4.4] {
            let b = eval_basis(BasisKind::NewBases, &p, 0.0, x).unwrap();
            assert!((b.c - (k * x).cos()).abs() < 1e-12);
            assert!((b.s - (k * x).sin() / k).abs() < 1e-12);
        }
    }

    #[test]
    fn wkb_with_unit_wavenumber() {
        let b = eval_basis(BasisKind::Wkb, &constant(1.0), 0.0, PI).unwrap();
        assert!((b.c + 1.0).abs() < 1e-10 && b.s.abs() < 1e-10);
    }

    #[test]
    fn wkb_flags_turning_point_and_forbidden_zone() {
        let p = KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 2.0 }).unwrap();
        let at_xi = eval_basis(BasisKind::Wkb, &p, 1.0, 1.0).unwrap();
        assert!(!at_xi.finite && at_xi.c.is_infinite());
        assert!(matches!(
            eval_basis(BasisKind::Wkb, &p, 1.0, 1.5),
            Err(WaveError::ForbiddenRegion { .. })
        ));
        assert!(matches!(
            solution_from_ic(BasisKind::Wkb, &p, 1.0, 1.0, 0.0, 1.0),
            Err(WaveError::Divergent { .. })
        ));
    }

    #[test]
    fn airy_pair_is_finite_on_both_sides_of_the_turning_point() {
        let p = KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 1.0 }).unwrap();
        let kind = BasisKind::AiryImproved { xi: 1.0 };
        let at = eval_basis(kind, &p, 1.0, 1.0).unwrap();
        let left = eval_basis(kind, &p, 1.0, 1.0 - 1e-7).unwrap();
        let right = eval_basis(kind, &p, 1.0, 1.0 + 1e-7).unwrap();
        assert!(at.finite && left.finite && right.finite);
        assert!((left.c - at.c).abs() < 1e-4 && (right.c - at.c).abs() < 1e-4);
        // for a linear potential the pair is exact: u = Ai(x − 1) up to a constant
        let scale = at.c / airy_ai(0.0);
        for x in [0.3, 0.95, 1.8] {
            let b = eval_basis(kind, &p, 1.0, x).unwrap();
            assert!((b.c - scale * airy_ai(x - 1.0)).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn solution_from_ic_examples() {
        let k = 2.5;
        let p = constant(k);
        assert!((solution_from_ic(BasisKind::NewBases, &p, 0.0, 1.0, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let u = solution_from_ic(BasisKind::NewBases, &p, 0.0, 0.0, 1.0, 0.8).unwrap();
        assert!((u - (k * 0.8).sin() / k).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_constant_k_cosine() {
        let k = 1.3;
        let p = constant(k);
        let (dc, ds) = basis_derivative(BasisKind::NewBases, &p, 0.0, 0.7, None).unwrap();
        assert!((dc + k * (k * 0.7).sin()).abs() < 1e-9);
        assert!((ds - (k * 0.7).cos()).abs() < 1e-9);
    }
}
