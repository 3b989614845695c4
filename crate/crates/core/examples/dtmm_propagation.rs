//! Propagate a complex-coefficient equation u'' + (g + ih)u = 0 with
//! piecewise transfer matrices and watch the Airy case converge.
//!
//! cargo run --example dtmm_propagation

use wavebasis::dtmm::{piecewise_propagate, propagate, transfer_q, ComplexCoefficient, StateVector4};
use wavebasis::oracle::fundamental_matrix;

fn main() -> wavebasis::Result<()> {
    // lossy layer: constant coefficient, one matrix is exact
    let lossy = ComplexCoefficient::constant(4.0, 0.4);
    let q = transfer_q(&lossy, 0.0, 2.0)?;
    let out = propagate(&q, &StateVector4::new(1.0, 0.0, 0.0, 0.0));
    println!("lossy layer: u = {:.6} + {:.6}i, det = {:.3e}", out.u, out.v, q.det() - 1.0);

    // Airy coefficient f = -x against a fine Runge-Kutta fundamental matrix
    let airy = ComplexCoefficient::real(|x| -x);
    let reference = fundamental_matrix(|x| -x, 0.0, 2.0, 20_000)?;
    let mut last = f64::NAN;
    println!("{:>6} {:>12} {:>8}", "n", "error", "ratio");
    for n in [16, 32, 64, 128, 256, 512, 1024, 2048] {
        let m = piecewise_propagate(&airy, 0.0, 2.0, n)?.real();
        let err = (m[0][0] - reference[0][0]).abs();
        println!("{n:>6} {err:>12.3e} {:>8.3}", last / err);
        last = err;
    }
    Ok(())
}
