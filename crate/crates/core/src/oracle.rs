//! Reference solutions: a Numerov shooting eigensolver for even potentials and
//! a fixed-step RK4 integrator for initial-value problems.
//!
//! Nothing here uses the approximate bases, so the results can judge them.

use crate::profiles::{KsqProfile, PhysicalScales, PotentialSpec};
use crate::{Result, WaveError};

/// Uniform grid `x_min + j·h`, `j = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

pub const MIN_GRID_POINTS: usize = 64;

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if n_points < MIN_GRID_POINTS {
            return Err(WaveError::Config(format!("grid needs at least {MIN_GRID_POINTS} points, got {n_points}")));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(WaveError::Config(format!("grid needs x_min < x_max, got [{x_min}, {x_max}]")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Half-line grid for parity reduction: `x_j = h/2 + j·h` ending at `x_max`,
    /// so the origin sits midway between the first point and its mirror image.
    pub fn half_line(x_max: f64, n_points: usize) -> Result<Self> {
        let h = x_max / (n_points as f64 - 0.5);
        Self::new(0.5 * h, x_max, n_points)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        if j + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + j as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.point(j)).collect()
    }

    fn is_half_line(&self) -> bool {
        (self.x_min - 0.5 * self.spacing()).abs() <= 1e-9 * self.spacing()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_level(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// A bound state on the half-line grid; the other half follows from parity.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleEigenresult {
    pub n: usize,
    pub energy: f64,
    pub grid: Grid,
    /// Samples at `grid.points()`, unit L² norm over the full line, positive
    /// at the innermost point (even) or just right of it (odd).
    pub wavefunction: Vec<f64>,
    /// Sign changes over the full line.
    pub node_count: usize,
    pub parity: Parity,
}

impl OracleEigenresult {
    /// `(x, u)` over the full line, ascending in x.
    pub fn full_line(&self) -> (Vec<f64>, Vec<f64>) {
        let xs = self.grid.points();
        let s = self.parity.sign();
        let mut x: Vec<f64> = xs.iter().rev().map(|&t| -t).collect();
        let mut u: Vec<f64> = self.wavefunction.iter().rev().map(|&w| s * w).collect();
        x.extend_from_slice(&xs);
        u.extend_from_slice(&self.wavefunction);
        (x, u)
    }

    /// Cubic interpolation of the full-line wavefunction; zero beyond the grid.
    pub fn sample(&self, x: f64) -> f64 {
        let s = if x < 0.0 { self.parity.sign() } else { 1.0 };
        let t = x.abs();
        if t > self.grid.x_max {
            return 0.0;
        }
        let h = self.grid.spacing();
        let pos = (t - self.grid.x_min) / h;
        let base = pos.floor() as isize - 1;
        let mut acc = 0.0;
        for i in 0..4 {
            let j = base + i;
            let mut weight = 1.0;
            for m in 0..4 {
                if m != i {
                    weight *= (pos - (base + m) as f64) / ((i - m) as f64);
                }
            }
            acc += weight * self.value_at_index(j);
        }
        s * acc
    }

    // index −1−j mirrors index j
    fn value_at_index(&self, j: isize) -> f64 {
        let len = self.wavefunction.len() as isize;
        if j >= len {
            0.0
        } else if j < 0 {
            self.parity.sign() * self.wavefunction[(-1 - j) as usize]
        } else {
            self.wavefunction[j as usize]
        }
    }
}

/// Relative width of the final bisection bracket on E.
const ENERGY_RTOL: f64 = 1e-14;
/// Decay required over the outermost 2% of the half-line.
const DECAY_TOL: f64 = 1e-6;
/// Points per local length scale in the automatic grid.
const POINTS_PER_SCALE: f64 = 2000.0;
const MAX_DOUBLINGS: usize = 10;

/// Frobenius solution of `u'' = −c(E + U x^{−β})u` on `x > 0`:
/// `u = Σ a_{p,q} x^{2p + q(2−β) + σ}` with `σ = 0` (u(0) = 1, u'(0) = 0) or
/// `σ = 1` (u(0) = 0, u'(0) = 1).
struct SingularSeries {
    terms: Vec<(f64, f64)>,
}

impl SingularSeries {
    const ORDER: usize = 40;

    /// Coefficients for use on `0 < x ≤ reach`; terms below 1e-18 there are dropped.
    fn new(coupling: f64, u: f64, beta: f64, energy: f64, parity: Parity, reach: f64) -> Self {
        let sigma = if parity == Parity::Even { 0.0 } else { 1.0 };
        let (ce, cu) = (coupling * energy, coupling * u);
        let m = Self::ORDER;
        let mut a = vec![vec![0.0; m]; m];
        let mut terms = Vec::with_capacity(m * m);
        for p in 0..m {
            for q in 0..m {
                let e = 2.0 * p as f64 + q as f64 * (2.0 - beta) + sigma;
                a[p][q] = if p == 0 && q == 0 {
                    1.0
                } else {
                    let from_e = if p > 0 { ce * a[p - 1][q] } else { 0.0 };
                    let from_u = if q > 0 { cu * a[p][q - 1] } else { 0.0 };
                    -(from_e + from_u) / (e * (e - 1.0))
                };
                if a[p][q] != 0.0 && (a[p][q] * reach.powf(e)).abs() > 1e-18 {
                    terms.push((a[p][q], e));
                }
            }
        }
        Self { terms }
    }

    fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(c, e)| c * x.powf(e)).sum()
    }
}

/// How the outward sweep starts: the parity ghost `u(−x₀) = ±u(x₀)`, or
/// exact values on the first few grid points.
enum Start<'a> {
    Ghost(Parity),
    Values(&'a [f64]),
}

/// Outward Numerov sweep; returns the samples (rescaled against overflow, so
/// only signs and ratios are meaningful) and the number of sign changes.
fn shoot(ksq: &[f64], h: f64, start: Start<'_>, keep: bool) -> (Vec<f64>, usize) {
    let c = h * h / 12.0;
    let n = ksq.len();
    let mut out = if keep { Vec::with_capacity(n) } else { Vec::new() };
    let mut nodes = 0;
    let mut last_sign = 0.0;
    let mut count = |v: f64, last_sign: &mut f64| {
        if v != 0.0 {
            if *last_sign != 0.0 && v.signum() != *last_sign {
                nodes += 1;
            }
            *last_sign = v.signum();
        }
    };
    // (u_{j−1}, k²_{j−1}, u_j) at the first Numerov step j
    let (mut prev, mut k_prev, mut cur, first) = match start {
        // the mirror point has the same k² by symmetry
        Start::Ghost(parity) => (parity.sign(), ksq[0], 1.0, 0),
        Start::Values(values) => {
            let j = values.len() - 1;
            for &v in &values[..j] {
                count(v, &mut last_sign);
                if keep {
                    out.push(v);
                }
            }
            (values[j - 1], ksq[j - 1], values[j], j)
        }
    };
    count(cur, &mut last_sign);
    if keep {
        out.push(cur);
    }
    for j in first..n - 1 {
        let (k_cur, k_next) = (ksq[j], ksq[j + 1]);
        let mut next = (2.0 * (1.0 - 5.0 * c * k_cur) * cur - (1.0 + c * k_prev) * prev) / (1.0 + c * k_next);
        if next.abs() > 1e150 {
            if keep {
                for v in out.iter_mut() {
                    *v *= 1e-150;
                }
            }
            next *= 1e-150;
            cur *= 1e-150;
        }
        count(next, &mut last_sign);
        prev = cur;
        cur = next;
        k_prev = k_cur;
        if keep {
            out.push(cur);
        }
    }
    (out, nodes)
}

/// Inward Numerov sweep from `u(x_max) = 0` down to index `stop`.
fn shoot_inward(ksq: &[f64], h: f64, stop: usize) -> Vec<f64> {
    let c = h * h / 12.0;
    let n = ksq.len();
    let mut u = vec![0.0; n];
    u[n - 2] = 1.0;
    let mut j = n - 2;
    while j > stop {
        let next = (2.0 * (1.0 - 5.0 * c * ksq[j]) * u[j] - (1.0 + c * ksq[j + 1]) * u[j + 1]) / (1.0 + c * ksq[j - 1]);
        u[j - 1] = next;
        if next.abs() > 1e150 {
            for v in u[j - 1..].iter_mut() {
                *v *= 1e-150;
            }
        }
        j -= 1;
    }
    u
}

fn profile_ksq(profile: &KsqProfile, energy: f64, xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter().map(|&x| profile.ksq_at(energy, x)).collect()
}

/// Natural length scale of the potential, used only to size the automatic grid.
fn length_scale(profile: &KsqProfile, n: usize) -> (f64, f64) {
    let c = profile.coupling();
    let m = (n + 1) as f64;
    match profile.potential() {
        PotentialSpec::PowerLaw { u, alpha } => {
            let ell = (u * c).powf(-1.0 / (alpha + 2.0));
            // (outer extent, local wavelength)
            (4.0 * ell * m.powf(2.0 / (alpha + 2.0)), ell * m.powf(-alpha / (alpha + 2.0)))
        }
        PotentialSpec::SingularPowerLaw { u, beta } => {
            let ell = (u * c).powf(-1.0 / (2.0 - beta));
            (4.0 * ell * m.powf(2.0 / (2.0 - beta)), ell)
        }
        _ => {
            let (_, hi) = profile.domain();
            (hi, hi / m)
        }
    }
}

fn has_fixed_walls(profile: &KsqProfile) -> bool {
    matches!(
        profile.potential(),
        PotentialSpec::HardWall { .. } | PotentialSpec::PiecewiseConstant { .. } | PotentialSpec::Tabulated { .. }
    )
}

/// n-th bound state of an even potential by parity-reduced Numerov shooting.
///
/// With `grid = None` the half-line extent starts from a scale estimate, is
/// widened to three turning-point distances, and is then doubled (at fixed
/// spacing) until the state has decayed by 1e-6 over the last 2% of the grid.
/// Walled and tabulated profiles use their own domain edge as the Dirichlet
/// boundary.
pub fn numerov_eigensolve(
    spec: &PotentialSpec,
    scales: PhysicalScales,
    grid: Option<&Grid>,
    n: usize,
) -> Result<OracleEigenresult> {
    let profile = KsqProfile::new(spec.clone(), scales)?;
    if !profile.is_even() {
        return Err(WaveError::Precondition("the shooting oracle needs an even potential".into()));
    }
    let walled = has_fixed_walls(&profile);
    if let Some(g) = grid {
        if !g.is_half_line() {
            return Err(WaveError::Config("oracle grids must be half-line grids (x_min = h/2)".into()));
        }
        return solve_on_grid(&profile, *g, n, !walled);
    }
    let (extent, wavelength) = length_scale(&profile, n);
    let h = wavelength / POINTS_PER_SCALE;
    if walled {
        let x_max = profile.domain().1;
        let points = ((x_max / h).ceil() as usize + 1).max(MIN_GRID_POINTS);
        return solve_on_grid(&profile, Grid::half_line(x_max, points)?, n, false);
    }
    let mut x_max = extent;
    let mut widened = false;
    for _ in 0..=MAX_DOUBLINGS {
        let points = ((x_max / h).ceil() as usize + 1).max(MIN_GRID_POINTS);
        let grid = Grid::half_line(x_max, points)?;
        match solve_on_grid(&profile, grid, n, true) {
            Ok(result) => {
                let xi = profile.turning_point(result.energy).map(|t| t.xi).unwrap_or(0.0);
                if !widened && x_max < 3.0 * xi {
                    x_max = 3.0 * xi;
                    widened = true;
                    continue;
                }
                log::debug!("oracle n={n}: E={} on {} points, x_max={x_max}", result.energy, points);
                return Ok(result);
            }
            Err(WaveError::Truncation(msg)) => {
                log::debug!("oracle n={n}: {msg}; doubling x_max from {x_max}");
                widened = true;
                x_max *= 2.0;
            }
            Err(e) => return Err(e),
        }
    }
    Err(WaveError::Truncation(format!(
        "state {n} did not decay within {MAX_DOUBLINGS} doublings of the grid (x_max = {x_max})"
    )))
}

/// Exact series values on the grid points near a singular origin, where the
/// Numerov stencil loses accuracy.
fn series_start(profile: &KsqProfile, energy: f64, xs: &[f64], parity: Parity) -> Option<Vec<f64>> {
    let PotentialSpec::SingularPowerLaw { u, beta } = *profile.potential() else {
        return None;
    };
    let c = profile.coupling();
    let reach = (0.1 / (c * u)).powf(1.0 / (2.0 - beta)).min((0.1 / (c * energy.abs()).max(1e-300)).sqrt());
    let last = xs.iter().take_while(|&&x| x <= reach).count().max(2).min(xs.len() - 1) - 1;
    let series = SingularSeries::new(c, u, beta, energy, parity, xs[last]);
    Some(xs[..=last].iter().map(|&x| series.eval(x)).collect())
}

fn solve_on_grid(profile: &KsqProfile, grid: Grid, n: usize, check_decay: bool) -> Result<OracleEigenresult> {
    let xs = grid.points();
    let h = grid.spacing();
    let parity = Parity::of_level(n);
    let target = n / 2;
    let potentials: Vec<f64> = xs.iter().map(|&x| profile.potential_at(x)).collect::<Result<_>>()?;
    let v_min = potentials.iter().copied().fold(f64::INFINITY, f64::min);
    let v_max = potentials.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // outward over the first `len` points
    let sweep = |e: f64, keep: bool, len: usize| -> Result<(Vec<f64>, usize)> {
        let ksq = profile_ksq(profile, e, &xs[..len])?;
        Ok(match series_start(profile, e, &xs[..len], parity) {
            Some(values) => shoot(&ksq, h, Start::Values(&values), keep),
            None => shoot(&ksq, h, Start::Ghost(parity), keep),
        })
    };
    let count = |e: f64| -> Result<usize> { Ok(sweep(e, false, xs.len())?.1) };

    let mut lo = v_min;
    if count(lo)? > target {
        return Err(WaveError::NoRoot(format!("state {n} lies below the potential minimum {v_min}")));
    }
    let mut span = (v_max - v_min).max(1.0 / profile.coupling());
    let mut hi = lo + span;
    let mut tries = 0;
    while count(hi)? <= target {
        tries += 1;
        if tries > 200 {
            return Err(WaveError::NoRoot(format!("no bracket for state {n} below E = {hi}")));
        }
        span *= 2.0;
        hi = lo + span;
    }
    while hi - lo > ENERGY_RTOL * hi.abs().max(lo.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count(mid)? > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let energy = 0.5 * (lo + hi);
    let ksq = profile_ksq(profile, energy, &xs)?;

    // outward to the outermost allowed point, inward from the wall, matched there
    let last_allowed = ksq.iter().rposition(|&k| k > 0.0).unwrap_or(0);
    let matching = last_allowed.clamp(1, xs.len() - 2);
    // stopping at the matching point keeps the growing tail from underflowing the interior
    let (outward, _) = sweep(energy, true, (matching + 2).min(xs.len()))?;
    let inward = shoot_inward(&ksq, h, matching.saturating_sub(1));
    let mut u = outward;
    u.resize(xs.len(), 0.0);
    if inward[matching] != 0.0 && u[matching] != 0.0 {
        let scale = u[matching] / inward[matching];
        for j in matching + 1..u.len() {
            u[j] = scale * inward[j];
        }
    }
    u[xs.len() - 1] = 0.0;

    let mut norm_sq: f64 = 2.0 * u.iter().map(|v| v * v).sum::<f64>() * h;
    if !(norm_sq > 0.0 && norm_sq.is_finite()) {
        return Err(WaveError::Accuracy(format!("degenerate wavefunction for state {n}")));
    }
    norm_sq = norm_sq.sqrt();
    let sign = if u[0] < 0.0 { -1.0 } else { 1.0 };
    for v in u.iter_mut() {
        *v *= sign / norm_sq;
    }

    if check_decay {
        let peak = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tail_start = xs.len() - (xs.len() / 50).max(1);
        let tail = u[tail_start..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if tail > DECAY_TOL * peak {
            return Err(WaveError::Truncation(format!(
                "state {n} has not decayed at x_max = {} (tail/peak = {:.3e}); widen the grid",
                grid.x_max,
                tail / peak
            )));
        }
    }

    let half_nodes = u.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    let node_count = 2 * half_nodes + usize::from(parity == Parity::Odd);
    Ok(OracleEigenresult { n, energy, grid, wavefunction: u, node_count, parity })
}

/// A sampled solution of `u'' + k²(x)u = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct IvpSolution {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
}

/// Relative drift of the Wronskian of the two fundamental solutions that
/// triggers an accuracy error.
pub const WRONSKIAN_DRIFT_TOL: f64 = 1e-6;

/// Classical RK4 for `u'' = −f(x)u`, stepping across `grid` from `x_min`.
///
/// Both fundamental solutions (1, 0) and (0, 1) are carried along and their
/// Wronskian, which is conserved exactly, is monitored.
pub fn integrate_ivp_fn<F>(f: F, grid: &Grid, u0: f64, up0: f64) -> Result<IvpSolution>
where
    F: Fn(f64) -> f64,
{
    let xs = grid.points();
    let h = grid.spacing();
    let rhs = |x: f64, s: [f64; 4]| {
        let k = f(x);
        [s[2], s[3], -k * s[0], -k * s[1]]
    };
    // (c, s, c', s')
    let mut state = [1.0, 0.0, 0.0, 1.0];
    let mut x = xs[0];
    let mut out = IvpSolution { x: xs.clone(), u: Vec::with_capacity(xs.len()), du: Vec::with_capacity(xs.len()) };
    out.u.push(u0);
    out.du.push(up0);
    for &x_next in &xs[1..] {
        let step = x_next - x;
        let add = |s: [f64; 4], d: [f64; 4], w: f64| [s[0] + w * d[0], s[1] + w * d[1], s[2] + w * d[2], s[3] + w * d[3]];
        let k1 = rhs(x, state);
        let k2 = rhs(x + 0.5 * step, add(state, k1, 0.5 * step));
        let k3 = rhs(x + 0.5 * step, add(state, k2, 0.5 * step));
        let k4 = rhs(x + step, add(state, k3, step));
        for i in 0..4 {
            state[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        x = x_next;
        if !state.iter().all(|v| v.is_finite()) {
            return Err(WaveError::Accuracy(format!("RK4 overflow at x = {x} with h = {h}")));
        }
        out.u.push(u0 * state[0] + up0 * state[1]);
        out.du.push(u0 * state[2] + up0 * state[3]);
    }
    let wronskian = state[0] * state[3] - state[1] * state[2];
    let scale = state.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if (wronskian - 1.0).abs() > WRONSKIAN_DRIFT_TOL * scale * scale {
        return Err(WaveError::Accuracy(format!(
            "Wronskian drifted to {wronskian:.9} over [{}, {}]; refine the grid (h = {h})",
            grid.x_min, grid.x_max
        )));
    }
    Ok(out)
}

/// [`integrate_ivp_fn`] with `f = k²(x; E)` from a profile.
pub fn integrate_ivp(profile: &KsqProfile, energy: f64, u0: f64, up0: f64, grid: &Grid) -> Result<IvpSolution> {
    for x in [grid.x_min, grid.x_max] {
        profile.ksq_at(energy, x)?;
    }
    if grid.x_min <= 0.0 && grid.x_max >= 0.0 && profile.is_singular_at(0.0) {
        return Err(WaveError::SingularPoint { x: 0.0 });
    }
    integrate_ivp_fn(|x| profile.ksq_at(energy, x).unwrap_or(f64::NAN), grid, u0, up0)
}

/// RK4 fundamental matrix `[[c, s], [c', s']]` of `u'' + f u = 0` over `[a, b]`.
pub fn fundamental_matrix<F>(f: F, a: f64, b: f64, steps: usize) -> Result<[[f64; 2]; 2]>
where
    F: Fn(f64) -> f64,
{
    let grid = Grid::new(a, b, (steps + 1).max(MIN_GRID_POINTS))?;
    let c = integrate_ivp_fn(&f, &grid, 1.0, 0.0)?;
    let s = integrate_ivp_fn(&f, &grid, 0.0, 1.0)?;
    let last = grid.n_points - 1;
    Ok([[c.u[last], s.u[last]], [c.du[last], s.du[last]]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic() -> PotentialSpec {
        PotentialSpec::Harmonic { omega: 1.0 }
    }

    #[test]
    fn grid_invariants() {
        assert!(Grid::new(0.0, 1.0, 10).is_err());
        assert!(Grid::new(1.0, 1.0, 100).is_err());
        let g = Grid::half_line(2.0, 100).unwrap();
        assert!((g.x_min - 0.5 * g.spacing()).abs() < 1e-15);
        assert_eq!(g.point(99), 2.0);
    }

    #[test]
    fn harmonic_ground_state() {
        let r = numerov_eigensolve(&harmonic(), PhysicalScales::normalized(), None, 0).unwrap();
        assert!((r.energy - 0.5).abs() < 1e-8 * 0.5, "E0 = {}", r.energy);
        assert_eq!(r.node_count, 0);
        assert_eq!(r.parity, Parity::Even);
    }

    #[test]
    fn hard_wall_ground_state() {
        let spec = PotentialSpec::HardWall { half_width: 1.0 };
        let r = numerov_eigensolve(&spec, PhysicalScales::normalized(), None, 0).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 4.0;
        assert!((r.energy - exact).abs() < 1e-8 * exact, "E = {}", r.energy);
    }

    #[test]
    fn odd_state_has_one_node() {
        let r = numerov_eigensolve(&harmonic(), PhysicalScales::normalized(), None, 1).unwrap();
        assert!((r.energy - 1.5).abs() < 1e-8 * 1.5);
        assert_eq!(r.node_count, 1);
        assert!(r.sample(-0.7) < 0.0 && r.sample(0.7) > 0.0);
    }

    #[test]
    fn sampling_matches_grid_values() {
        let r = numerov_eigensolve(&harmonic(), PhysicalScales::normalized(), None, 2).unwrap();
        let x = r.grid.point(37);
        assert!((r.sample(x) - r.wavefunction[37]).abs() < 1e-12);
        assert!((r.sample(-x) - r.wavefunction[37]).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_and_bad_grids() {
        let spec = PotentialSpec::PiecewiseConstant { breakpoints: vec![-1.0, 0.5, 1.0], values: vec![0.0, 1.0] };
        assert!(matches!(
            numerov_eigensolve(&spec, PhysicalScales::normalized(), None, 0),
            Err(WaveError::Precondition(_))
        ));
        let grid = Grid::new(0.0, 5.0, 1000).unwrap();
        assert!(matches!(
            numerov_eigensolve(&harmonic(), PhysicalScales::normalized(), Some(&grid), 0),
            Err(WaveError::Config(_))
        ));
    }

    #[test]
    fn explicit_grid_too_short_is_truncation() {
        let grid = Grid::half_line(1.5, 2000).unwrap();
        assert!(matches!(
            numerov_eigensolve(&harmonic(), PhysicalScales::normalized(), Some(&grid), 0),
            Err(WaveError::Truncation(_))
        ));
    }

    #[test]
    fn ivp_constant_k_is_cosine() {
        let k = 1.3;
        let grid = Grid::new(0.0, 2.0 * std::f64::consts::PI / k, 4001).unwrap();
        let sol = integrate_ivp_fn(|_| k * k, &grid, 1.0, 0.0).unwrap();
        for (x, u) in sol.x.iter().zip(&sol.u) {
            assert!((u - (k * x).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn ivp_coarse_grid_fails_accuracy() {
        let grid = Grid::new(0.0, 40.0, 64).unwrap();
        assert!(matches!(integrate_ivp_fn(|_| 25.0, &grid, 1.0, 0.0), Err(WaveError::Accuracy(_))));
    }
}
