//! Dispersion of a two-layer periodic medium from the three estimates of the
//! Bloch wavenumber, plus the long-wavelength error over random cells.
//!
//! cargo run --example bloch_dispersion

use wavebasis::bloch::{self, DispersionMethod, PeriodicProfile, DEFAULT_SEGMENTS};

fn main() -> wavebasis::Result<()> {
    let cell = PeriodicProfile::two_layer(1.0, 1.0, 3.0, 1.0)?;
    let drives: Vec<f64> = (1..=10).map(|i| 0.1 * i as f64).collect();
    let sweep = |m| bloch::dispersion_sweep(&cell, &drives, m, DEFAULT_SEGMENTS);
    let (new, wkb, exact) = (sweep(DispersionMethod::New)?, sweep(DispersionMethod::Wkb)?, sweep(DispersionMethod::Exact)?);
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "drive", "new", "wkb", "exact", "exact_im");
    for i in 0..drives.len() {
        println!(
            "{:6.2} {:10.5} {:10.5} {:10.5} {:10.5}",
            drives[i], new[i].kappa_re, wkb[i].kappa_re, exact[i].kappa_re, exact[i].kappa_im
        );
    }

    println!("\nrelative error at drive 0.01:");
    for c in bloch::random_two_layer_cells(1, 5, 1.5) {
        let (e_new, e_wkb) = bloch::homogenization_error(&c.profile()?, 1e-2)?;
        println!("k = ({:.2}, {:.2})  new {e_new:.2e}  wkb {e_wkb:.2e}", c.k1, c.k2);
    }
    Ok(())
}
