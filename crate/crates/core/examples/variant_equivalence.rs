//! The two families at matched lambda reduce to the same core iteration.
use qpwave::diophantine::{cantor_params, DivisorParams, Family};
use qpwave::elliptic::EllipticProfile;
use qpwave::fourier_field::SpaceWeights;
use qpwave::ls_solver::{solve_bifurcation, Coupling, LSConfig};

fn main() -> qpwave::Result<()> {
    let w = SpaceWeights::new(0.5, 2.0, 32)?;
    let profile = EllipticProfile::calibrated();
    let co = LSConfig::new(w, cantor_params(Family::Co, 200, 0.1, 2000)?.params)
        .with_coupling(Coupling::Reduced);
    let (lam, e) = (co.lambda(), 0.01);
    let a = (-2.0 + (4.0 + 4.0 * e * lam * (2.0 + e)).sqrt()) / (2.0 * e);
    let counter = LSConfig::new(
        w,
        DivisorParams::from_param(Family::Counter, a, e, 0.1, 0.25)?,
    )
    .with_coupling(Coupling::Reduced);
    let s1 = solve_bifurcation(&co, &profile)?;
    let s2 = solve_bifurcation(&counter, &profile)?;
    for (k, (p, q)) in s1.history.iter().zip(&s2.history).enumerate() {
        println!(
            "iterate {k}: |F| {:.3e} / {:.3e}, core difference {:.3e}",
            p.z_residual,
            q.z_residual,
            p.core.max_abs_diff(&q.core)
        );
    }
    Ok(())
}
