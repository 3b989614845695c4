//! Tabulate the basis pairs across a turning point of the harmonic well.
//!
//! The algebraic pair stays smooth through x = xi; the WKB pair blows up there.
//!
//! cargo run --example basis_functions

use wavebasis::bases::{eval_basis, BasisKind};
use wavebasis::profiles::{KsqProfile, PotentialSpec};

fn main() -> wavebasis::Result<()> {
    let profile = KsqProfile::normalized(PotentialSpec::PowerLaw { u: 1.0, alpha: 2.0 })?;
    let energy = 2.0;
    let xi = profile.turning_point(energy)?.xi;
    println!("turning point xi = {xi:.6}");
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "x/xi", "C_new", "S_new", "C_wkb", "C_airy");
    for i in 0..=12 {
        let x = xi * i as f64 / 8.0;
        let new = eval_basis(BasisKind::NewBases, &profile, energy, x)?;
        let wkb = match eval_basis(BasisKind::Wkb, &profile, energy, x) {
            Ok(b) => format!("{:12.6}", b.c),
            Err(_) => format!("{:>12}", "forbidden"),
        };
        let airy = eval_basis(BasisKind::AiryImproved { xi }, &profile, energy, x)?;
        println!("{:8.3} {:12.6} {:12.6} {wkb} {:12.6}", x / xi, new.c, new.s, airy.c);
    }
    Ok(())
}
