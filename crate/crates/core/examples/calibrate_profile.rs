//! Locate the calibrated modulus and print the profile constants.
use qpwave::elliptic::{find_m_bar, psi};

fn main() -> qpwave::Result<()> {
    let p = find_m_bar(1e-14)?;
    println!("m_bar       = {:.15}", p.m_bar);
    println!("psi(m_bar)  = {:.3e}", psi(p.m_bar)?);
    println!("omega_bar   = {:.15}", p.omega_bar);
    println!("v_bar^2     = {:.15}", p.v_bar_squared());
    println!("sigma_bar   = {:.15}", p.sigma_bar);
    println!("<beta^2>    = {:.15}", p.mean_beta_squared());
    for xi in [0.0, 0.5, 1.0, 1.5] {
        println!("beta({xi}) = {:+.15}", p.beta(xi));
    }
    Ok(())
}
