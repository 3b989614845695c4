use nalgebra::Matrix4;
use num_complex::Complex64;
use proptest::prelude::*;

use wavebasis::bases::{self, BasisKind};
use wavebasis::dtmm::{self, ComplexCoefficient, StateVector4, TransferMatrix4};
use wavebasis::oracle;
use wavebasis::profiles::{KsqProfile, PotentialSpec};

fn to_na(m: &[[f64; 4]; 4]) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[i][j])
}

fn max_dev(a: &TransferMatrix4, b: &TransferMatrix4) -> f64 {
    (to_na(&a.real()) - to_na(&b.real())).amax()
}

/// exp(K) by scaling and squaring with a Taylor core.
fn expm(k: Matrix4<f64>) -> Matrix4<f64> {
    let norm = k.amax().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as i32) + 4;
    let scaled = k / 2f64.powi(squarings);
    let mut term = Matrix4::identity();
    let mut sum = Matrix4::identity();
    for j in 1..30 {
        term = term * scaled / j as f64;
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

#[test]
fn constant_negative_coefficient_matches_matrix_exponential() {
    // u'' − u = 0: the kernel has identity blocks off the diagonal
    let q = dtmm::transfer_q(&ComplexCoefficient::constant(-1.0, 0.0), 0.0, 1.0).unwrap();
    let mut k = Matrix4::zeros();
    k[(0, 2)] = 1.0;
    k[(1, 3)] = 1.0;
    k[(2, 0)] = 1.0;
    k[(3, 1)] = 1.0;
    let e = expm(k);
    assert!((to_na(&q.real()) - e).amax() < 1e-13);
    assert!((q.real()[0][0] - 1f64.cosh()).abs() < 1e-14);
}

#[test]
fn complex_constant_coefficient_matches_matrix_exponential() {
    let (g, h, len) = (2.5, -1.2, 0.9);
    let q = dtmm::transfer_q(&ComplexCoefficient::constant(g, h), 0.0, len).unwrap();
    // d/dx (u, v, u', v') with y'' = −(g + ih) y
    let mut k = Matrix4::zeros();
    k[(0, 2)] = 1.0;
    k[(1, 3)] = 1.0;
    k[(2, 0)] = -g;
    k[(2, 1)] = h;
    k[(3, 0)] = -h;
    k[(3, 1)] = -g;
    assert!((to_na(&q.real()) - expm(k * len)).amax() < 1e-12);
}

#[test]
fn airy_coefficient_against_rk_oracle() {
    let f = ComplexCoefficient::real(|x| -x);
    let reference = oracle::fundamental_matrix(|x| -x, 0.0, 2.0, 20_000).unwrap();
    let q = dtmm::piecewise_propagate(&f, 0.0, 2.0, 2048).unwrap().real();
    assert!((q[0][0] - reference[0][0]).abs() < 1e-6);
    assert!((q[0][2] - reference[0][1]).abs() < 1e-6);
    assert!((q[2][0] - reference[1][0]).abs() < 1e-6);
}

#[test]
fn refinement_is_second_order() {
    let f = ComplexCoefficient::real(|x| -x);
    let reference = oracle::fundamental_matrix(|x| -x, 0.0, 2.0, 20_000).unwrap()[0][0];
    let err = |n| (dtmm::piecewise_propagate(&f, 0.0, 2.0, n).unwrap().real()[0][0] - reference).abs();
    for n in [16, 32, 64] {
        assert!(err(n) / err(2 * n) >= 3.5, "n = {n}");
    }
}

#[test]
fn smooth_complex_coefficient_refinement_converges() {
    let f = ComplexCoefficient::new(|x| 1.0 + x.sin(), |x| 0.2 * x);
    let fine = dtmm::piecewise_propagate(&f, 0.0, 1.5, 4096).unwrap();
    let err = |n| max_dev(&dtmm::piecewise_propagate(&f, 0.0, 1.5, n).unwrap(), &fine);
    assert!(err(32) / err(64) >= 3.5);
}

#[test]
fn single_segment_equals_transfer_q() {
    let f = ComplexCoefficient::new(|x| x * x, |x| 1.0 - x);
    let a = dtmm::piecewise_propagate(&f, -0.5, 0.7, 1).unwrap();
    let b = dtmm::transfer_q(&f, -0.5, 0.7).unwrap();
    assert!(max_dev(&a, &b) == 0.0);
}

#[test]
fn compose_and_invert_examples() {
    let f = ComplexCoefficient::constant(2.0, 0.0);
    let q = dtmm::transfer_q(&f, 0.0, 0.6).unwrap();
    let id = dtmm::compose(&q, &dtmm::invert(&q));
    assert!(max_dev(&id, &TransferMatrix4::identity(0.0)) < 1e-10);
    let two = dtmm::compose(&q, &dtmm::transfer_q(&f, 0.6, 1.2).unwrap());
    assert!(max_dev(&two, &dtmm::transfer_q(&f, 0.0, 1.2).unwrap()) < 1e-10);
    assert!((two.det() - 1.0).abs() < 1e-10);
}

fn coefficient() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-4.0..4.0f64, -2.0..2.0f64, -3.0..3.0f64, -2.0..2.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_one((g0, g1, h0, h1) in coefficient(), a in -2.0..2.0f64, len in 0.01..3.0f64) {
        let f = ComplexCoefficient::new(move |x| g0 + g1 * x, move |x| h0 + h1 * x.cos());
        let q = dtmm::transfer_q(&f, a, a + len).unwrap();
        let det = to_na(&q.real()).determinant();
        prop_assert!((det - 1.0).abs() < 1e-10 * q.real().iter().flatten().fold(1.0f64, |m, v| m.max(v.abs())).powi(4));
    }

    #[test]
    fn blocks_are_rotation_images((g0, g1, h0, h1) in coefficient(), len in 0.01..2.0f64) {
        let f = ComplexCoefficient::new(move |x| g0 + g1 * x, move |x| h0 + h1 * x);
        let m = dtmm::piecewise_propagate(&f, 0.0, len, 4).unwrap().real();
        for bi in 0..2 {
            for bj in 0..2 {
                let (r, c) = (2 * bi, 2 * bj);
                prop_assert!((m[r][c] - m[r + 1][c + 1]).abs() < 1e-12 * (1.0 + m[r][c].abs()));
                prop_assert!((m[r][c + 1] + m[r + 1][c]).abs() < 1e-12 * (1.0 + m[r][c + 1].abs()));
            }
        }
    }

    #[test]
    fn cst_reassembly_matches_transfer_q((g0, g1, h0, h1) in coefficient(), a in -1.0..1.0f64, len in 0.05..2.0f64) {
        let f = ComplexCoefficient::new(move |x| g0 + g1 * x, move |x| h0 + h1 * x);
        let q = dtmm::transfer_q(&f, a, a + len).unwrap().real();
        let blocks = dtmm::cst_blocks(&f, a, a + len).unwrap().assemble();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((q[i][j] - blocks[i][j]).abs() < 1e-12 * (1.0 + q[i][j].abs()));
            }
        }
    }

    #[test]
    fn degenerate_interval_is_identity((g0, g1, h0, h1) in coefficient(), a in -3.0..3.0f64) {
        let f = ComplexCoefficient::new(move |x| g0 + g1 * x, move |x| h0 + h1 * x);
        let q = dtmm::transfer_q(&f, a, a).unwrap();
        prop_assert!(max_dev(&q, &TransferMatrix4::identity(a)) < 1e-12);
    }

    #[test]
    fn decomposition_and_inversion((g0, g1, h0, h1) in coefficient(), split in 0.1..0.9f64) {
        let f = ComplexCoefficient::new(move |x| g0 + g1 * x, move |x| h0 + h1 * x);
        let (a, b) = (0.0, 1.5);
        let mid = a + split * (b - a);
        let q1 = dtmm::piecewise_propagate(&f, a, mid, 3).unwrap();
        let q2 = dtmm::piecewise_propagate(&f, mid, b, 5).unwrap();
        let total = dtmm::compose(&q1, &q2);
        prop_assert!((total.det() - 1.0).abs() < 1e-10);
        let back = dtmm::compose(&total, &dtmm::invert(&total));
        prop_assert!(max_dev(&back, &TransferMatrix4::identity(a)) < 1e-10 * (1.0 + max_dev(&total, &TransferMatrix4::identity(a))).powi(2));
        let state = StateVector4::new(0.4, -0.1, 0.9, 0.2);
        let there = dtmm::propagate(&total, &state);
        let again = dtmm::propagate(&dtmm::invert(&total), &there);
        prop_assert!((again.u - state.u).abs() < 1e-9 && (again.dv - state.dv).abs() < 1e-9);
    }

    #[test]
    fn real_case_reduces_to_new_bases(u in 0.2..3.0f64, energy in 0.1..4.0f64, x in 0.05..2.5f64, u0 in -2.0..2.0f64, up0 in -2.0..2.0f64) {
        let profile = KsqProfile::normalized(PotentialSpec::PowerLaw { u, alpha: 2.0 }).unwrap();
        let f = ComplexCoefficient::from_profile(&profile, energy);
        let q = dtmm::transfer_q(&f, 0.0, x).unwrap();
        let s = dtmm::propagate(&q, &StateVector4::new(u0, 0.0, up0, 0.0));
        let expect = bases::solution_from_ic(BasisKind::NewBases, &profile, energy, u0, up0, x).unwrap();
        prop_assert!((s.u - expect).abs() < 1e-10 * (1.0 + expect.abs()));
        prop_assert!(s.v.abs() < 1e-14 && s.dv.abs() < 1e-14);
    }

    #[test]
    fn matrix_root_squares_back(g in -5.0..5.0f64, h in -5.0..5.0f64, x in 0.0..3.0f64) {
        let acc = dtmm::AccumulatedB { g, h };
        let d = dtmm::matrix_d(&acc, x).unwrap();
        let z = Complex64::new(d[0][0], d[1][0]);
        let target = acc.scalar() * x;
        prop_assert!((z * z - target).norm() < 1e-12 * (1.0 + target.norm()));
        prop_assert!(z.re >= 0.0);
    }
}
