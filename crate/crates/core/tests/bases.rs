use proptest::prelude::*;
use wavebasis::bases::{self, BasisKind};
use wavebasis::profiles::{KsqProfile, PotentialSpec};
use wavebasis::WaveError;

fn power_law(u: f64, alpha: f64) -> KsqProfile {
    KsqProfile::normalized(PotentialSpec::PowerLaw { u, alpha }).unwrap()
}

#[test]
fn initial_conditions_by_finite_differences() {
    for profile in [
        power_law(1.0, 2.0),
        power_law(0.5, 1.0),
        KsqProfile::normalized(PotentialSpec::SingularPowerLaw { u: 1.0, beta: 0.5 }).unwrap(),
    ] {
        for kind in [BasisKind::NewBases] {
            let b = bases::eval_basis(kind, &profile, -0.8, 0.0).unwrap();
            assert!((b.c - 1.0).abs() < 1e-8 && b.s.abs() < 1e-8);
            let (dc, ds) = bases::basis_derivative(kind, &profile, -0.8, 0.0, Some(1e-6)).unwrap();
            assert!(dc.abs() < 1e-8, "{dc}");
            assert!((ds - 1.0).abs() < 1e-8, "{ds}");
        }
    }
    let b = bases::eval_basis(BasisKind::SimpleWkb, &power_law(1.0, 2.0), 3.0, 0.0).unwrap();
    assert!((b.c - 1.0).abs() < 1e-15 && b.s.abs() < 1e-15);
}

#[test]
fn continuity_across_turning_point() {
    let profile = power_law(1.0, 2.0);
    let energy = 2.0;
    let xi = profile.turning_point(energy).unwrap().xi;
    let step = 1e-6;
    let mut prev = bases::eval_basis(BasisKind::NewBases, &profile, energy, xi - 500.0 * step).unwrap();
    let mut jump: f64 = 0.0;
    for i in -499..=500 {
        let cur = bases::eval_basis(BasisKind::NewBases, &profile, energy, xi + i as f64 * step).unwrap();
        jump = jump.max((cur.c - prev.c).abs()).max((cur.s - prev.s).abs());
        prev = cur;
    }
    assert!(jump <= 1e-6, "jump {jump}");
}

#[test]
fn wkb_divergence_at_turning_point() {
    let profile = power_law(1.0, 1.0);
    let energy = 1.5;
    let xi = profile.turning_point(energy).unwrap().xi;
    let b = bases::eval_basis(BasisKind::Wkb, &profile, energy, xi).unwrap();
    assert!(!b.finite);
    assert!(matches!(
        bases::solution_from_ic(BasisKind::Wkb, &profile, energy, 1.0, 0.0, xi),
        Err(WaveError::Divergent { .. })
    ));
    let near = bases::eval_basis(BasisKind::Wkb, &profile, energy, xi * (1.0 - 1e-10)).unwrap();
    let far = bases::eval_basis(BasisKind::Wkb, &profile, energy, 0.5 * xi).unwrap();
    assert!(near.c.abs().max(near.s.abs()) > 10.0 * far.c.abs().max(far.s.abs()));
    let nb = bases::eval_basis(BasisKind::NewBases, &profile, energy, xi).unwrap();
    assert!(nb.finite && nb.c.is_finite() && nb.s.is_finite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constant_k_closed_forms(k in 0.05..5.0f64, x in -6.0..6.0f64) {
        let p = KsqProfile::constant(k * k, -10.0, 10.0).unwrap();
        let nb = bases::eval_basis(BasisKind::NewBases, &p, 0.0, x).unwrap();
        prop_assert!((nb.c - (k * x).cos()).abs() < 1e-12);
        prop_assert!((nb.s - (k * x).sin() / k).abs() < 1e-12 * (1.0 + 1.0 / k));
        let sw = bases::eval_basis(BasisKind::SimpleWkb, &p, 0.0, x).unwrap();
        prop_assert!((sw.c - (k * x).cos()).abs() < 1e-10);
        prop_assert!((sw.s - (k * x).sin()).abs() < 1e-10);
        let w = bases::eval_basis(BasisKind::Wkb, &p, 0.0, x).unwrap();
        prop_assert!((w.c - (k * x).cos() / k.sqrt()).abs() < 1e-10 / k.sqrt());
    }

    #[test]
    fn constant_imaginary_k_closed_forms(kappa in 0.05..3.0f64, x in -4.0..4.0f64) {
        let p = KsqProfile::constant(-kappa * kappa, -10.0, 10.0).unwrap();
        let nb = bases::eval_basis(BasisKind::NewBases, &p, 0.0, x).unwrap();
        prop_assert!((nb.c - (kappa * x).cosh()).abs() < 1e-12 * (kappa * x).cosh());
        prop_assert!((nb.s - (kappa * x).sinh() / kappa).abs() < 1e-12 * (kappa * x).cosh() / kappa);
    }

    #[test]
    fn parity_identities(u in 0.2..4.0f64, alpha in 0.5..6.0f64, energy in -1.0..6.0f64, x in 0.0..3.0f64) {
        let p = power_law(u, alpha);
        let plus = bases::eval_basis(BasisKind::NewBases, &p, energy, x).unwrap();
        let minus = bases::eval_basis(BasisKind::NewBases, &p, energy, -x).unwrap();
        let scale = 1.0 + plus.c.abs() + plus.s.abs();
        prop_assert!((plus.c - minus.c).abs() < 1e-10 * scale);
        prop_assert!((plus.s + minus.s).abs() < 1e-10 * scale);
    }

    #[test]
    fn solution_is_linear_in_initial_data(u0 in -3.0..3.0f64, up0 in -3.0..3.0f64, x in -2.0..2.0f64) {
        let p = power_law(1.0, 2.0);
        let b = bases::eval_basis(BasisKind::NewBases, &p, 1.2, x).unwrap();
        let u = bases::solution_from_ic(BasisKind::NewBases, &p, 1.2, u0, up0, x).unwrap();
        prop_assert!((u - (b.c * u0 + b.s * up0)).abs() < 1e-14 * (1.0 + u.abs()));
    }

    #[test]
    fn cos_sqrt_and_sinc_sqrt_are_smooth_at_zero(w in -1e-3..1e-3f64) {
        let c = bases::cos_sqrt(w);
        let s = bases::sinc_sqrt(w);
        prop_assert!((c - (1.0 - w / 2.0 + w * w / 24.0)).abs() < 1e-11);
        prop_assert!((s - (1.0 - w / 6.0 + w * w / 120.0)).abs() < 1e-11);
    }
}
