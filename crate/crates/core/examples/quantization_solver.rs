//! Root-found quantization for profiles without a closed form: a tabulated
//! anharmonic well and a stepped (piecewise) well, checked against the oracle.
//!
//! cargo run --release --example quantization_solver

use wavebasis::oracle::numerov_eigensolve;
use wavebasis::profiles::{KsqProfile, PhysicalScales, PotentialSpec};
use wavebasis::spectra::{quantized_spectrum, QuantizationRule};

fn main() -> wavebasis::Result<()> {
    let xs: Vec<f64> = (0..=400).map(|i| -4.0 + 0.02 * i as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|x| x * x + 0.1 * x.powi(4)).collect();
    let stepped = PotentialSpec::PiecewiseConstant {
        breakpoints: vec![-3.0, -1.5, 1.5, 3.0],
        values: vec![20.0, 0.0, 20.0],
    };
    let scales = PhysicalScales::normalized();
    for (name, spec) in [("tabulated x^2 + 0.1x^4", PotentialSpec::Tabulated { x: xs, v: vs }), ("stepped", stepped)] {
        let profile = KsqProfile::new(spec.clone(), scales)?;
        let new = quantized_spectrum(&profile, QuantizationRule::new_bases(), &[0, 1, 2])?;
        let wkb = quantized_spectrum(&profile, QuantizationRule::wkb(), &[0, 1, 2])?;
        println!("{name}");
        for n in 0..3 {
            let exact = numerov_eigensolve(&spec, scales, None, n)?.energy;
            println!(
                "  n = {n}: new {:.5}  wkb {:.5}  oracle {exact:.5}",
                new.get(n).unwrap(),
                wkb.get(n).unwrap()
            );
        }
    }
    Ok(())
}
