//! The `compare --suite paper` report: every acceptance quantity with its
//! tolerance and a pass flag, as one JSON document.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};

use super::{wavefunction_comparison, RunConfig};
use crate::bases::{self, BasisKind};
use crate::bloch::{self, PeriodicProfile};
use crate::dtmm::{self, ComplexCoefficient, StateVector4, TransferMatrix4};
use crate::oracle;
use crate::profiles::{KsqProfile, PhysicalScales, PotentialSpec};
use crate::spectra::{self, QuantizationRule};
use crate::{Result, WaveError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub quantities: Value,
}

const NORM: PhysicalScales = PhysicalScales { mass: 0.5, hbar: 1.0 };

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn max_abs_diff(a: &TransferMatrix4, b: &TransferMatrix4) -> f64 {
    let (x, y) = (a.real(), b.real());
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((x[i][j] - y[i][j]).abs());
        }
    }
    worst
}

fn singular_closed_form() -> Result<CriterionResult> {
    let e0 = spectra::singular_energy(1.0, 0.5, 0, NORM)?;
    let e1 = spectra::singular_energy(1.0, 0.5, 1, NORM)?;
    let pass = (e0 + 1.17474).abs() <= 1e-4 && (e1 + 0.56475).abs() <= 1e-4;
    Ok(CriterionResult {
        id: 1,
        name: "closed-form singular spectrum".into(),
        pass,
        quantities: json!({"E0": e0, "E1": e1, "expected": [-1.17474, -0.56475], "abs_tol": 1e-4}),
    })
}

fn singular_oracle() -> Result<CriterionResult> {
    let spec = PotentialSpec::SingularPowerLaw { u: 1.0, beta: 0.5 };
    let mut pass = true;
    let mut levels = Vec::new();
    for (n, reference) in [(0usize, -1.6534), (1, -0.43804)] {
        let e = oracle::numerov_eigensolve(&spec, NORM, None, n)?.energy;
        let closed = spectra::singular_energy(1.0, 0.5, n, NORM)?;
        let err_pct = 100.0 * rel(closed, e);
        pass &= rel(e, reference) <= 0.01 && (err_pct - 28.9).abs() <= 1.0;
        levels.push(json!({"n": n, "E_oracle": e, "E_reference": reference, "E_closed_form": closed, "error_pct": err_pct}));
    }
    Ok(CriterionResult {
        id: 2,
        name: "oracle reproduces the singular-well values".into(),
        pass,
        quantities: json!({"levels": levels, "rel_tol": 0.01, "error_pct_target": 28.9, "error_pct_tol": 1.0}),
    })
}

fn harmonic() -> Result<CriterionResult> {
    let omega = 1.0;
    let u = 0.5 * NORM.mass * omega * omega;
    let target = (3.0 * PI * PI / 32.0).sqrt();
    let profile = KsqProfile::new(PotentialSpec::Harmonic { omega }, NORM)?;
    let (mut ratio_dev, mut err_pp, mut new_dev, mut wkb_dev) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 0..=5 {
        let closed = spectra::power_law_energy(u, 2.0, n, NORM)?;
        let exact = spectra::harmonic_exact_energy(omega, n, NORM)?;
        ratio_dev = ratio_dev.max((closed / exact - target).abs());
        err_pp = err_pp.max((100.0 * (1.0 - closed / exact) - 3.8).abs());
        new_dev = new_dev.max(rel(spectra::solve_quantization(&profile, QuantizationRule::new_bases(), n)?.energy, closed));
        wkb_dev = wkb_dev.max(rel(spectra::solve_quantization(&profile, QuantizationRule::wkb(), n)?.energy, exact));
    }
    Ok(CriterionResult {
        id: 3,
        name: "harmonic oscillator".into(),
        pass: ratio_dev <= 1e-12 && err_pp <= 0.1 && new_dev <= 1e-9 && wkb_dev <= 1e-9,
        quantities: json!({
            "ratio_target": target, "max_ratio_deviation": ratio_dev, "max_error_pp_from_3.8": err_pp,
            "max_rel_dev_new_rule": new_dev, "max_rel_dev_wkb_rule": wkb_dev,
        }),
    })
}

fn quarkonium() -> Result<CriterionResult> {
    let target = 2.0 / 9f64.cbrt();
    let mut dev = 0.0f64;
    for n in 0..=10 {
        let r = spectra::power_law_energy(1.0, 1.0, n, NORM)? / spectra::wkb_quarkonium_energy(1.0, n, NORM)?;
        dev = dev.max((r - target).abs());
    }
    let pct = 100.0 * (1.0 - target);
    Ok(CriterionResult {
        id: 4,
        name: "quarkonium ratio".into(),
        pass: dev <= 1e-12 && (pct - 3.8).abs() <= 0.1,
        quantities: json!({"ratio_target": target, "max_ratio_deviation": dev, "discrepancy_pct": pct}),
    })
}

fn infinite_well() -> Result<CriterionResult> {
    let spec = PotentialSpec::HardWall { half_width: 1.0 };
    let profile = KsqProfile::new(spec.clone(), NORM)?;
    let rule = QuantizationRule::new_bases().unshifted();
    let (mut rule_dev, mut oracle_dev) = (0.0f64, 0.0f64);
    for n in 1..=4 {
        let exact = spectra::infinite_well_energy(n, NORM, 1.0)?;
        rule_dev = rule_dev.max(rel(spectra::solve_quantization(&profile, rule, n)?.energy, exact));
        oracle_dev = oracle_dev.max(rel(oracle::numerov_eigensolve(&spec, NORM, None, n - 1)?.energy, exact));
    }
    Ok(CriterionResult {
        id: 5,
        name: "infinite-well limit".into(),
        pass: rule_dev <= 1e-9 && oracle_dev <= 1e-6,
        quantities: json!({"max_rel_dev_rule": rule_dev, "max_rel_dev_oracle": oracle_dev}),
    })
}

fn basis_checks() -> Result<CriterionResult> {
    let k = 1.7;
    let flat = KsqProfile::constant(k * k, -10.0, 10.0)?;
    let mut closed_dev = 0.0f64;
    for &x in &[-3.0, -0.4, 0.0, 0.9, 2.5, 7.0] {
        let b = bases::eval_basis(BasisKind::NewBases, &flat, 0.0, x)?;
        closed_dev = closed_dev.max((b.c - (k * x).cos()).abs()).max((b.s - (k * x).sin() / k).abs());
    }

    // V = x² at E = 1: turning points ±1
    let well = KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 2.0 })?;
    let energy = 1.0;
    let at0 = bases::eval_basis(BasisKind::NewBases, &well, energy, 0.0)?;
    let (dc0, ds0) = bases::basis_derivative(BasisKind::NewBases, &well, energy, 0.0, None)?;
    let ic_dev = (at0.c - 1.0).abs().max(at0.s.abs()).max(dc0.abs()).max((ds0 - 1.0).abs());

    let mut parity_dev = 0.0f64;
    for &x in &[0.3, 0.8, 1.0, 1.6, 2.4] {
        let p = bases::eval_basis(BasisKind::NewBases, &well, energy, x)?;
        let m = bases::eval_basis(BasisKind::NewBases, &well, energy, -x)?;
        parity_dev = parity_dev.max((p.c - m.c).abs()).max((p.s + m.s).abs());
    }

    let xi = well.turning_point(energy)?.xi;
    let step = 1e-6;
    let mut jump = 0.0f64;
    let mut prev = bases::eval_basis(BasisKind::NewBases, &well, energy, xi - 1000.0 * step)?;
    for j in -999..=1000 {
        let cur = bases::eval_basis(BasisKind::NewBases, &well, energy, xi + j as f64 * step)?;
        jump = jump.max((cur.c - prev.c).abs()).max((cur.s - prev.s).abs());
        prev = cur;
    }

    let wkb = bases::eval_basis(BasisKind::Wkb, &well, energy, xi)?;
    let divergence_flagged = !wkb.finite
        && matches!(
            bases::solution_from_ic(BasisKind::Wkb, &well, energy, 1.0, 0.0, xi),
            Err(WaveError::Divergent { .. })
        );

    Ok(CriterionResult {
        id: 6,
        name: "basis correctness".into(),
        pass: closed_dev <= 1e-12 && ic_dev <= 1e-8 && parity_dev <= 1e-10 && jump <= 1e-6 && divergence_flagged,
        quantities: json!({
            "constant_k_max_dev": closed_dev, "initial_condition_max_dev": ic_dev, "parity_max_dev": parity_dev,
            "max_jump_on_1e-6_scan": jump, "wkb_divergence_flagged": divergence_flagged,
        }),
    })
}

/// Max |Q(1,1) − RK| for `f = −x` on [0, 2] at each segment count.
pub fn airy_refinement_errors(segments: &[usize]) -> Result<(f64, Vec<f64>)> {
    let f = ComplexCoefficient::real(|x| -x).with_integral(|a, b| Ok((-(b * b - a * a) / 2.0, 0.0)));
    let reference = oracle::fundamental_matrix(|x| -x, 0.0, 2.0, 20_000)?[0][0];
    let errors = segments
        .iter()
        .map(|&n| Ok((dtmm::piecewise_propagate(&f, 0.0, 2.0, n)?.real()[0][0] - reference).abs()))
        .collect::<Result<Vec<_>>>()?;
    Ok((reference, errors))
}

fn dtmm_checks() -> Result<CriterionResult> {
    let coefficients = [
        ComplexCoefficient::new(|x| 1.0 + 0.5 * x, |x| 0.3 * x.sin()),
        ComplexCoefficient::new(|x| -2.0 + x * x, |_| -0.7),
        ComplexCoefficient::constant(4.0, 1.5),
    ];
    let mut det_dev = 0.0f64;
    let mut inverse_dev = 0.0f64;
    for f in &coefficients {
        let q = dtmm::transfer_q(f, 0.2, 1.4)?;
        det_dev = det_dev.max((q.det() - 1.0).abs());
        let round_trip = dtmm::compose(&q, &dtmm::invert(&q));
        inverse_dev = inverse_dev.max(max_abs_diff(&round_trip, &TransferMatrix4::identity(0.2)));
        let chained = dtmm::piecewise_propagate(f, 0.2, 1.4, 16)?;
        det_dev = det_dev.max((chained.det() - 1.0).abs());
    }

    let f0 = StateVector4::new(0.3, -0.2, 1.1, 0.4);
    let identity = dtmm::transfer_q(&coefficients[0], 0.7, 0.7)?;
    let projected = dtmm::propagate(&identity, &f0);
    let self_dev = max_abs_diff(&identity, &TransferMatrix4::identity(0.7))
        .max((projected.u - f0.u).abs())
        .max((projected.dv - f0.dv).abs());

    let c = &coefficients[2];
    let x = 0.8;
    let split = dtmm::compose(&dtmm::transfer_q(c, 0.0, x)?, &dtmm::transfer_q(c, x, 2.0 * x)?);
    let decomposition_dev = max_abs_diff(&split, &dtmm::transfer_q(c, 0.0, 2.0 * x)?);

    let well = KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 2.0 })?;
    let energy = 1.3;
    let f = ComplexCoefficient::from_profile(&well, energy);
    let mut reduction_dev = 0.0f64;
    for &x in &[0.4, 1.0, 1.9] {
        let q = dtmm::transfer_q(&f, 0.0, x)?;
        let (u0, up0) = (0.6, -1.2);
        let s = dtmm::propagate(&q, &StateVector4::new(u0, 0.0, up0, 0.0));
        let expect = bases::solution_from_ic(BasisKind::NewBases, &well, energy, u0, up0, x)?;
        reduction_dev = reduction_dev.max((s.u - expect).abs()).max(s.v.abs()).max(s.dv.abs());
    }

    let segments = [16, 32, 64, 128];
    let (_, errors) = airy_refinement_errors(&segments)?;
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let (_, fine) = airy_refinement_errors(&[2048])?;

    let pass = det_dev <= 1e-10
        && inverse_dev <= 1e-10
        && self_dev <= 1e-10
        && decomposition_dev <= 1e-10
        && reduction_dev <= 1e-10
        && ratios.iter().all(|&r| r >= 3.5)
        && fine[0] <= 1e-6;
    Ok(CriterionResult {
        id: 7,
        name: "transfer-matrix algebra".into(),
        pass,
        quantities: json!({
            "det_max_dev": det_dev, "inverse_max_dev": inverse_dev, "self_projection_max_dev": self_dev,
            "decomposition_max_dev": decomposition_dev, "real_reduction_max_dev": reduction_dev,
            "airy_segments": segments, "airy_errors": errors, "halving_ratios": ratios, "airy_error_2048": fine[0],
        }),
    })
}

/// Seed of the random two-layer cells in the homogenization check.
pub const CELL_SEED: u64 = 20_240_917;

fn bloch_checks() -> Result<CriterionResult> {
    let cells = bloch::random_two_layer_cells(CELL_SEED, 20, 1.5);
    let mut ordered = 0;
    let mut trace_dev = 0.0f64;
    let mut worst_margin = f64::INFINITY;
    for cell in &cells {
        let profile = cell.profile()?;
        let (e_new, e_wkb) = bloch::homogenization_error(&profile, 1e-2)?;
        if e_new < e_wkb {
            ordered += 1;
        }
        worst_margin = worst_margin.min(e_wkb - e_new);
        for s in [1e-2, 1.0] {
            trace_dev = trace_dev.max(trace_deviation(&profile, cell, s)?);
        }
    }
    Ok(CriterionResult {
        id: 8,
        name: "Bloch homogenization".into(),
        pass: ordered == cells.len() && trace_dev <= 1e-8,
        quantities: json!({
            "cells": cells.len(), "new_closer_than_wkb": ordered, "min_err_gap": worst_margin,
            "max_kappa_dev_vs_trace_formula": trace_dev, "seed": CELL_SEED,
        }),
    })
}

fn trace_deviation(profile: &PeriodicProfile, cell: &bloch::TwoLayerCell, s: f64) -> Result<f64> {
    let exact = bloch::kappa_exact(&profile.scaled(s), bloch::DEFAULT_SEGMENTS)?;
    let cos_kl = bloch::two_layer_cos_kl(s * cell.k1, cell.a, s * cell.k2, cell.b);
    let formula = bloch::kappa_from_trace(2.0 * cos_kl, profile.period, s);
    Ok((exact.kappa_re - formula.kappa_re).abs().max((exact.kappa_im - formula.kappa_im).abs()))
}

fn wavefunction_check() -> Result<CriterionResult> {
    let cfg = RunConfig {
        potential: Some(PotentialSpec::SingularPowerLaw { u: 1.0, beta: 0.5 }),
        ..RunConfig::default()
    };
    let cmp = wavefunction_comparison(&cfg)?;
    let get = |c: &str| cmp.rms_of(c).unwrap_or(f64::NAN);
    let (new, simple, improved) = (get("u_new_bases"), get("u_simple_wkb"), get("u_improved_wkb"));
    Ok(CriterionResult {
        id: 9,
        name: "wavefunction comparison".into(),
        pass: new < simple && new < improved,
        quantities: json!({
            "energy": cmp.energy_oracle, "turning_point": cmp.turning_point,
            "rms_new_bases": new, "rms_simple_wkb": simple, "rms_improved_wkb": improved,
            "rms_airy": get("u_airy"),
        }),
    })
}

/// All acceptance checks, in order.
pub fn paper_suite() -> Result<Vec<CriterionResult>> {
    let checks: [fn() -> Result<CriterionResult>; 9] = [
        singular_closed_form,
        singular_oracle,
        harmonic,
        quarkonium,
        infinite_well,
        basis_checks,
        dtmm_checks,
        bloch_checks,
        wavefunction_check,
    ];
    checks.iter().map(|c| c()).collect()
}

/// The report text and whether every check passed.
pub fn cmd_compare(suite: &str) -> Result<(String, bool)> {
    if suite != "paper" {
        return Err(WaveError::Config(format!("unknown suite {suite:?}; available: paper")));
    }
    let results = paper_suite()?;
    let all_pass = results.iter().all(|r| r.pass);
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "suite": suite,
        "all_pass": all_pass,
        "criteria": results,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    Ok((text, all_pass))
}
