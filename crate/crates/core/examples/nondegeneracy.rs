//! Smallest singular value of the linearised bifurcation map under refinement.
use qpwave::bifurcation::{build_green_basis, lemma4_kernel_check, DEFAULT_GREEN_GRID};
use qpwave::elliptic::EllipticProfile;

fn main() -> qpwave::Result<()> {
    let basis = build_green_basis(&EllipticProfile::calibrated(), DEFAULT_GREEN_GRID)?;
    let r = lemma4_kernel_check(&basis, 16)?;
    for (m, s) in r.modes.iter().zip(&r.smallest_singular_values) {
        println!("modes {m:>3}: sigma_min = {s:.10}");
    }
    println!(
        "relative variation {:.3e}, pass {}",
        r.singular_value_variation, r.pass
    );
    Ok(())
}
