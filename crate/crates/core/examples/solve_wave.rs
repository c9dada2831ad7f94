//! Solve both families, sample the wave and check it by finite differences.
use qpwave::diophantine::{cantor_params, Family};
use qpwave::fourier_field::SpaceWeights;
use qpwave::ls_solver::{linspace, solve_full, wave_residual, LSConfig, Nonlinearity};

fn main() -> qpwave::Result<()> {
    let w = SpaceWeights::new(0.5, 2.0, 32)?;
    for family in [Family::Co, Family::Counter] {
        let cp = cantor_params(family, 200, 0.1, 2000)?;
        let cfg = LSConfig::new(w, cp.params).with_nonlinearity(Nonlinearity::monomial(5, 1.0)?);
        let sol = solve_full(&cfg)?;
        let d = &sol.diagnostics;
        println!(
            "{family:?}: eps {:.5} newton {} residual {:.3e} |p|/eps {:.4} dz ratio {:.4}",
            cfg.epsilon(),
            d.newton_steps,
            sol.residual_norm,
            d.p_over_epsilon,
            d.z_distance_ratio
        );
        let check = wave_residual(&sol, &linspace(0.0, 5.0, 6), &linspace(0.0, 6.0, 7), 0.005)?;
        println!(
            "  wave residual {:.3e} ({:.3e} of max |v^3|)",
            check.max_residual, check.relative
        );
        println!("  v(1, 0.5) = {:.12e}", sol.sample(1.0, 0.5));
    }
    Ok(())
}
