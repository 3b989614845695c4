//! Closed-form spectra of power-law wells next to the exact and WKB values.
//!
//! cargo run --example closed_form_spectra

use wavebasis::profiles::PhysicalScales;
use wavebasis::spectra;

fn main() -> wavebasis::Result<()> {
    let scales = PhysicalScales::normalized();

    println!("harmonic well, U = 1 (Omega = 2):");
    println!("{:>3} {:>14} {:>14} {:>10}", "n", "algebraic", "exact", "ratio");
    for n in 0..5 {
        let e = spectra::power_law_energy(1.0, 2.0, n, scales)?;
        let exact = spectra::harmonic_exact_energy(2.0, n, scales)?;
        println!("{n:>3} {e:>14.8} {exact:>14.8} {:>10.6}", e / exact);
    }

    println!("\nlinear well U|x|:");
    println!("{:>3} {:>14} {:>14}", "n", "algebraic", "wkb");
    for n in 0..5 {
        let e = spectra::power_law_energy(1.0, 1.0, n, scales)?;
        let w = spectra::wkb_quarkonium_energy(1.0, n, scales)?;
        println!("{n:>3} {e:>14.8} {w:>14.8}");
    }

    Ok(())
}
