//! The Green operator, its identities and the constants A0, B0, C0.
use qpwave::bifurcation::{build_green_basis, lemma3_verify, DEFAULT_GREEN_GRID};
use qpwave::elliptic::EllipticProfile;

fn main() -> qpwave::Result<()> {
    let basis = build_green_basis(&EllipticProfile::calibrated(), DEFAULT_GREEN_GRID)?;
    println!(
        "k = {:.15} (closed form {:.15})",
        basis.k_green(),
        basis.k_closed_form()
    );
    let r = lemma3_verify(&basis)?;
    for (name, res) in &r.identity_residuals {
        println!("{name:<14} {:.3e}", res.value);
    }
    println!("A0 = {:.12}  B0 = {:.12}  C0 = {:.12}", r.a0, r.b0, r.c0);
    for c in &r.flagged_ranges {
        println!(
            "published range for {} is ({}, {}); computed {:.6}",
            c.name, c.lo, c.hi, c.value
        );
    }
    Ok(())
}
