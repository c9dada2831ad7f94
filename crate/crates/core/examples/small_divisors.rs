//! Certified badly approximable parameters and the divisor scan.
use qpwave::diophantine::{cantor_params, min_divisor_scan, DivisorParams, Family};

fn main() -> qpwave::Result<()> {
    for family in [Family::Co, Family::Counter] {
        let cp = cantor_params(family, 100, 0.1, 2000)?;
        let scan = min_divisor_scan(&cp.params, 200)?;
        println!(
            "{family:?}: param {:.12} eps {:.6e} min|D| {:.6} at ({}, {}) pass {}",
            cp.params.param,
            cp.params.epsilon,
            scan.min_divisor,
            scan.witness_m,
            scan.witness_n,
            scan.pass()
        );
    }
    let rational = DivisorParams::from_xy(Family::Co, 3.0 / 157.0, 0.01, 0.1, 0.25)?;
    let scan = min_divisor_scan(&rational, 200)?;
    println!(
        "x = 3/157: min|D| {:.3e} at ({}, {}) pass {}",
        scan.min_divisor,
        scan.witness_m,
        scan.witness_n,
        scan.pass()
    );
    Ok(())
}
