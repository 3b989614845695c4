//! Scalar root finding: bracket expansion and Brent's method.

use crate::{Result, WaveError};

/// Brent's method on a sign-changing bracket `[a, b]`.
///
/// Mixes bisection, secant and inverse quadratic interpolation. Stops when the
/// bracket is narrower than `rel_tol · |x|` (with a tiny absolute floor) or an
/// exact zero is hit.
pub fn brent<F>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(WaveError::NoRoot(format!(
            "f({a}) = {fa:e} and f({b}) = {fb:e} have the same sign"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..300 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs() + 1e-300;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(WaveError::NoRoot("Brent iteration budget exhausted".into()))
}

/// Find `t_lo < t_hi` (both positive) with `g(t_lo) < 0 < g(t_hi)` by geometric
/// expansion from `t0`, where `g` is increasing in `t`. Returns the bracket.
pub fn expand_bracket<F>(mut g: F, t0: f64, factor: f64, budget: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let g0 = g(t0)?;
    if g0 == 0.0 {
        return Ok((t0, t0));
    }
    let mut t = t0;
    if g0 < 0.0 {
        for _ in 0..budget {
            let next = t * factor;
            if g(next)? >= 0.0 {
                return Ok((t, next));
            }
            t = next;
        }
    } else {
        for _ in 0..budget {
            let next = t / factor;
            if g(next)? <= 0.0 {
                return Ok((next, t));
            }
            t = next;
        }
    }
    Err(WaveError::NoRoot(format!(
        "no sign change within {budget} expansions of factor {factor} from {t0}"
    )))
}
