//! The -|x|^(-1/2) well: closed-form levels against the shooting oracle,
//! and the ground state next to its algebraic-basis approximation.
//!
//! cargo run --release --example singular_well

use wavebasis::bases::{eval_basis, BasisKind};
use wavebasis::oracle::numerov_eigensolve;
use wavebasis::profiles::{KsqProfile, PhysicalScales, PotentialSpec};
use wavebasis::spectra::singular_energy;

fn main() -> wavebasis::Result<()> {
    let spec = PotentialSpec::SingularPowerLaw { u: 1.0, beta: 0.5 };
    let scales = PhysicalScales::normalized();
    for n in 0..3 {
        let closed = singular_energy(1.0, 0.5, n, scales)?;
        let exact = numerov_eigensolve(&spec, scales, None, n)?;
        println!(
            "n = {n}: closed form {closed:.6}, oracle {:.6}, error {:.1}%",
            exact.energy,
            100.0 * ((closed - exact.energy) / exact.energy).abs()
        );
    }

    let ground = numerov_eigensolve(&spec, scales, None, 0)?;
    let profile = KsqProfile::new(spec, scales)?;
    let xi = profile.turning_point(ground.energy)?.xi;
    // match amplitudes at the midpoint
    let mid = 0.5 * xi;
    let scale = ground.sample(mid) / eval_basis(BasisKind::NewBases, &profile, ground.energy, mid)?.c;
    println!("\n{:>8} {:>10} {:>10}", "x/xi", "oracle", "new");
    for i in 0..=10 {
        let x = xi * i as f64 / 10.0;
        let c = eval_basis(BasisKind::NewBases, &profile, ground.energy, x)?.c;
        println!("{:8.2} {:10.5} {:10.5}", x / xi, ground.sample(x), scale * c);
    }
    Ok(())
}
