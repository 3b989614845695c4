//! Differential transfer matrices for `y'' + f(x)y = 0` with complex
//! `f = g + ih` and `y = u + iv`.
//!
//! The state `{u, v, u', v'}` evolves under a 4×4 real kernel whose 2×2 blocks
//! are all of rotation form `[[p, −q], [q, p]]`, i.e. real images of complex
//! scalars. Every matrix function here is therefore evaluated on the complex
//! scalar and mapped back; a transfer matrix is stored as a complex 2×2 matrix
//! acting on `(y, y')` and exposed as its 4×4 real image on demand.
//!
//! Over one interval `[a, b]` of length `L` the unordered exponential is
//!
//! ```text
//! Q = [[cosh D, L·D⁻¹ sinh D], [(1/L)·D sinh D, cosh D]],   D² = L·B
//! ```
//!
//! with `B` the image of `−∫ₐᵇ f`. Composition over refined segments restores
//! the ordered product.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::profiles::KsqProfile;
use crate::quadrature;
use crate::{Result, WaveError};

/// A real 2×2 matrix, row-major.
pub type Mat2 = [[f64; 2]; 2];

/// A real 4×4 matrix, row-major.
pub type Mat4 = [[f64; 4]; 4];

/// Real 2×2 image `[[p, −q], [q, p]]` of the complex scalar `p + iq`.
pub fn rotation_block(z: Complex64) -> Mat2 {
    [[z.re, -z.im], [z.im, z.re]]
}

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `{u, v, u', v'}` with `y = u + iv`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateVector4 {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
}

impl StateVector4 {
    pub fn new(u: f64, v: f64, du: f64, dv: f64) -> Self {
        Self { u, v, du, dv }
    }

    pub fn y(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }

    pub fn dy(&self) -> Complex64 {
        Complex64::new(self.du, self.dv)
    }

    fn from_complex(y: Complex64, dy: Complex64) -> Self {
        Self { u: y.re, v: y.im, du: dy.re, dv: dy.im }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.u, self.v, self.du, self.dv]
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type Antiderivative = Arc<dyn Fn(f64, f64) -> Result<(f64, f64)> + Send + Sync>;

/// The coefficient `f(x) = g(x) + i·h(x)`.
#[derive(Clone)]
pub struct ComplexCoefficient {
    re: RealFn,
    im: RealFn,
    integral: Option<Antiderivative>,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for ComplexCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexCoefficient")
            .field("exact_integral", &self.integral.is_some())
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl ComplexCoefficient {
    pub fn new<G, H>(g: G, h: H) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { re: Arc::new(g), im: Arc::new(h), integral: None, breakpoints: Vec::new() }
    }

    /// Real coefficient (`h ≡ 0`).
    pub fn real<G>(g: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(g, |_| 0.0)
    }

    pub fn constant(g: f64, h: f64) -> Self {
        Self::new(move |_| g, move |_| h)
            .with_integral(move |a, b| Ok((g * (b - a), h * (b - a))))
    }

    /// `f = k²(x; E)` of a profile, with its closed-form integral and breakpoints.
    pub fn from_profile(profile: &KsqProfile, energy: f64) -> Self {
        let eval = profile.clone();
        let integ = profile.clone();
        let breaks = profile.breakpoints();
        let mut coefficient =
            Self::real(move |x| eval.ksq_at(energy, x).unwrap_or(f64::NAN)).with_integral(move |a, b| {
                if a <= b {
                    Ok((integ.integrate_ksq(energy, a, b)?, 0.0))
                } else {
                    Ok((-integ.integrate_ksq(energy, b, a)?, 0.0))
                }
            });
        coefficient.breakpoints = breaks;
        coefficient
    }

    /// Supply `(∫ₐᵇ g, ∫ₐᵇ h)` in closed form instead of quadrature.
    pub fn with_integral<I>(mut self, integral: I) -> Self
    where
        I: Fn(f64, f64) -> Result<(f64, f64)> + Send + Sync + 'static,
    {
        self.integral = Some(Arc::new(integral));
        self
    }

    /// Points where `f` is not smooth; piecewise propagation aligns to them.
    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = breakpoints;
        self
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        Complex64::new((self.re)(x), (self.im)(x))
    }
}

/// `G = ∫ₐᵇ g`, `H = ∫ₐᵇ h`; the block `B = −[[G, −H], [H, G]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccumulatedB {
    pub g: f64,
    pub h: f64,
}

impl AccumulatedB {
    /// The complex scalar −(G + iH) whose image is B.
    pub fn scalar(&self) -> Complex64 {
        -Complex64::new(self.g, self.h)
    }

    pub fn block(&self) -> Mat2 {
        rotation_block(self.scalar())
    }
}

pub fn accumulate_b(f: &ComplexCoefficient, a: f64, b: f64) -> Result<AccumulatedB> {
    if let Some(integral) = &f.integral {
        let (g, h) = integral(a, b)?;
        return Ok(AccumulatedB { g, h });
    }
    let g = quadrature::adaptive(|x| (f.re)(x), a, b, &f.breakpoints, quadrature::DEFAULT_TOL)?;
    let h = quadrature::adaptive(|x| (f.im)(x), a, b, &f.breakpoints, quadrature::DEFAULT_TOL)?;
    Ok(AccumulatedB { g, h })
}

/// Principal square root with the negative real axis mapped to `+i√|z|`.
fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = if z.im == 0.0 { Complex64::new(z.re, 0.0) } else { z };
    z.sqrt()
}

/// The matrix root `D` with `D² = x·B`, as its 2×2 real image.
pub fn matrix_d(b: &AccumulatedB, x: f64) -> Result<Mat2> {
    if x < 0.0 {
        return Err(WaveError::Precondition(format!("matrix_d needs x ≥ 0, got {x}")));
    }
    Ok(rotation_block(principal_sqrt(b.scalar() * x)))
}

/// cosh √z as an entire function of z.
fn cosh_sqrt(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 24.0 + z * z * z / 720.0
    } else {
        principal_sqrt(z).cosh()
    }
}

/// sinh √z / √z as an entire function of z.
fn sinhc_sqrt(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        Complex64::new(1.0, 0.0) + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0
    } else {
        let r = principal_sqrt(z);
        r.sinh() / r
    }
}

/// Transfer matrix over `[a, b]`, stored as the complex 2×2 matrix acting on
/// `(y, y')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix4 {
    pub a: f64,
    pub b: f64,
    m: [[Complex64; 2]; 2],
}

impl TransferMatrix4 {
    pub fn identity(at: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { a: at, b: at, m: [[one, zero], [zero, one]] }
    }

    pub fn from_complex(a: f64, b: f64, m: [[Complex64; 2]; 2]) -> Self {
        Self { a, b, m }
    }

    pub fn complex(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    /// The 4×4 real image acting on `{u, v, u', v'}`.
    pub fn real(&self) -> Mat4 {
        let mut out = [[0.0; 4]; 4];
        for (bi, row) in self.m.iter().enumerate() {
            for (bj, z) in row.iter().enumerate() {
                let block = rotation_block(*z);
                for i in 0..2 {
                    for j in 0..2 {
                        out[2 * bi + i][2 * bj + j] = block[i][j];
                    }
                }
            }
        }
        out
    }

    /// Determinant of the real image, `|det_ℂ Q|²`.
    pub fn det(&self) -> f64 {
        let d = self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0];
        d.norm_sqr()
    }

    /// Real 2×2 `(u, u')` block, meaningful when `f` is real.
    pub fn real_part_2x2(&self) -> Mat2 {
        [[self.m[0][0].re, self.m[0][1].re], [self.m[1][0].re, self.m[1][1].re]]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }
}

/// Single-interval unordered exponential over `[a, b]`.
pub fn transfer_q(f: &ComplexCoefficient, a: f64, b: f64) -> Result<TransferMatrix4> {
    if b < a {
        return Err(WaveError::Precondition(format!("transfer_q needs a ≤ b, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(TransferMatrix4::identity(a));
    }
    let len = b - a;
    let beta = accumulate_b(f, a, b)?.scalar();
    let z = beta * len;
    let c = cosh_sqrt(z);
    let s = sinhc_sqrt(z);
    Ok(TransferMatrix4 { a, b, m: [[c, s * len], [beta * s, c]] })
}

/// `C = cosh D`, `S = L·D⁻¹ sinh D`, `T = (1/L)·B·S` over `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CstBlocks {
    pub c: Mat2,
    pub s: Mat2,
    pub t: Mat2,
}

impl CstBlocks {
    /// Reassemble `[[C, S], [T, C]]`.
    pub fn assemble(&self) -> Mat4 {
        let mut out = [[0.0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.c[i][j];
                out[i][j + 2] = self.s[i][j];
                out[i + 2][j] = self.t[i][j];
                out[i + 2][j + 2] = self.c[i][j];
            }
        }
        out
    }
}

/// Blocks built from the matrix root `D` itself (not the entire-function
/// form used by [`transfer_q`]); the two routes must agree.
pub fn cst_blocks(f: &ComplexCoefficient, a: f64, b: f64) -> Result<CstBlocks> {
    if !(b > a) {
        return Err(WaveError::Precondition(format!("cst_blocks needs a < b, got [{a}, {b}]")));
    }
    let len = b - a;
    let acc = accumulate_b(f, a, b)?;
    let root = principal_sqrt(acc.scalar() * len);
    let (cosh_d, d_inv_sinh_d) = if root.norm() < 1e-8 {
        (Complex64::new(1.0, 0.0) + root * root / 2.0, Complex64::new(1.0, 0.0) + root * root / 6.0)
    } else {
        (root.cosh(), root.sinh() / root)
    };
    let c = rotation_block(cosh_d);
    let s = rotation_block(d_inv_sinh_d * len);
    let bs = mat2_mul(&acc.block(), &s);
    let t = [[bs[0][0] / len, bs[0][1] / len], [bs[1][0] / len, bs[1][1] / len]];
    Ok(CstBlocks { c, s, t })
}

/// `F(b) = Q·F(a)`.
pub fn propagate(q: &TransferMatrix4, state: &StateVector4) -> StateVector4 {
    let (y, dy) = (state.y(), state.dy());
    StateVector4::from_complex(q.m[0][0] * y + q.m[0][1] * dy, q.m[1][0] * y + q.m[1][1] * dy)
}

/// `Q_ac = Q_bc · Q_ab`.
pub fn compose(q_ab: &TransferMatrix4, q_bc: &TransferMatrix4) -> TransferMatrix4 {
    let (l, r) = (&q_bc.m, &q_ab.m);
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = l[i][0] * r[0][j] + l[i][1] * r[1][j];
        }
    }
    TransferMatrix4 { a: q_ab.a, b: q_bc.b, m }
}

/// `Q_ba = Q_ab⁻¹`.
pub fn invert(q: &TransferMatrix4) -> TransferMatrix4 {
    let m = &q.m;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    TransferMatrix4 {
        a: q.b,
        b: q.a,
        m: [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]],
    }
}

/// Product of `n_segments` equal single-interval transfer matrices over
/// `[a, b]`, applied right to left.
pub fn piecewise_propagate(f: &ComplexCoefficient, a: f64, b: f64, n_segments: usize) -> Result<TransferMatrix4> {
    if n_segments == 0 {
        return Err(WaveError::Precondition("piecewise_propagate needs at least one segment".into()));
    }
    let nodes: Vec<f64> = (0..=n_segments)
        .map(|i| if i == n_segments { b } else { a + (b - a) * i as f64 / n_segments as f64 })
        .collect();
    compose_over(f, &nodes)
}

/// Like [`piecewise_propagate`] but first splits `[a, b]` at the coefficient's
/// breakpoints, distributing segments in proportion to piece length (at least
/// one per piece). Exact for piecewise-constant coefficients.
pub fn piecewise_propagate_aligned(
    f: &ComplexCoefficient,
    a: f64,
    b: f64,
    n_segments: usize,
) -> Result<TransferMatrix4> {
    if n_segments == 0 {
        return Err(WaveError::Precondition("piecewise_propagate needs at least one segment".into()));
    }
    let mut cuts = vec![a];
    cuts.extend(f.breakpoints.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    let mut nodes = vec![a];
    for w in cuts.windows(2) {
        let share = ((w[1] - w[0]) / (b - a) * n_segments as f64).round().max(1.0) as usize;
        for i in 1..=share {
            nodes.push(if i == share { w[1] } else { w[0] + (w[1] - w[0]) * i as f64 / share as f64 });
        }
    }
    compose_over(f, &nodes)
}

fn compose_over(f: &ComplexCoefficient, nodes: &[f64]) -> Result<TransferMatrix4> {
    let mut total = TransferMatrix4::identity(nodes[0]);
    for w in nodes.windows(2) {
        total = compose(&total, &transfer_q(f, w[0], w[1])?);
    }
    Ok(total)
}
