//! Airy functions of the first and second kind.
//!
//! Power series near the origin, the exponentially damped integral
//! representation for `Ai` on the positive axis, and the standard asymptotic
//! expansions for large `|x|`. Relative accuracy is better than 1e-10 over the
//! ranges exercised by the tests.

use std::f64::consts::PI;

use crate::quadrature;

const AI0: f64 = 0.355_028_053_887_817_239_260_063_186_004;
const AIP0: f64 = 0.258_819_403_792_806_798_405_183_560_189;

/// Beyond this magnitude the asymptotic expansions take over.
const ASYMPTOTIC_FROM: f64 = 8.0;

/// The two Maclaurin series f(x), g(x) with Ai = c₁f − c₂g, Bi = √3(c₁f + c₂g).
fn series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut tf, mut tg) = (1.0, x);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 - 1.0) * k3);
        tg *= x3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        if tf.abs() <= 1e-17 * f.abs() && tg.abs() <= 1e-17 * g.abs().max(1e-300) {
            break;
        }
    }
    (f, g)
}

/// Coefficients u_k of the large-argument expansions, up to `n` terms.
fn asymptotic_coefficients(n: usize) -> Vec<f64> {
    let mut u = Vec::with_capacity(n);
    u.push(1.0);
    for k in 1..n {
        let kf = k as f64;
        let prev = u[k - 1];
        u.push(prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0)));
    }
    u
}

/// Σ sign^k u_k ζ^{-k}, truncated at the smallest term.
fn asymptotic_sum(zeta: f64, alternate: bool) -> f64 {
    let u = asymptotic_coefficients(40);
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for (k, uk) in u.iter().enumerate() {
        let term = uk / zeta.powi(k as i32);
        if term > last {
            break;
        }
        sum += if alternate && k % 2 == 1 { -term } else { term };
        if term < 1e-17 * sum.abs() {
            break;
        }
        last = term;
    }
    sum
}

/// The two oscillatory sums P, Q used for large negative arguments.
fn oscillatory_sums(zeta: f64) -> (f64, f64) {
    let u = asymptotic_coefficients(40);
    let (mut p, mut q) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    for (k, uk) in u.iter().enumerate() {
        let term = uk / zeta.powi(k as i32);
        if term > last || term < 1e-18 {
            break;
        }
        last = term;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
    }
    (p, q)
}

/// Airy function of the first kind.
pub fn airy_ai(x: f64) -> f64 {
    if x < -ASYMPTOTIC_FROM {
        let z = -x;
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        let (p, q) = oscillatory_sums(zeta);
        let phase = zeta + PI / 4.0;
        (phase.sin() * p - phase.cos() * q) / (PI.sqrt() * z.powf(0.25))
    } else if x <= 1.0 {
        let (f, g) = series(x);
        AI0 * f - AIP0 * g
    } else {
        // Ai(x) = e^{-ζ}/π ∫₀^∞ exp(-√x s²) cos(s³/3) ds
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let root = x.sqrt();
        let s_max = (42.0 / root).sqrt();
        let integrand = |s: f64| (-root * s * s).exp() * (s * s * s / 3.0).cos();
        let integral = quadrature::adaptive(integrand, 0.0, s_max, &[], 1e-15)
            .expect("smooth Gaussian-damped integrand");
        (-zeta).exp() / PI * integral
    }
}

/// Airy function of the second kind.
pub fn airy_bi(x: f64) -> f64 {
    if x < -ASYMPTOTIC_FROM {
        let z = -x;
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        let (p, q) = oscillatory_sums(zeta);
        let phase = zeta + PI / 4.0;
        (phase.cos() * p + phase.sin() * q) / (PI.sqrt() * z.powf(0.25))
    } else if x <= ASYMPTOTIC_FROM {
        let (f, g) = series(x);
        3f64.sqrt() * (AI0 * f + AIP0 * g)
    } else {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        zeta.exp() * asymptotic_sum(zeta, false) / (PI.sqrt() * x.powf(0.25))
    }
}
