//! Largest epsilon on a geometric ladder for which the coupled solve still
//! converges, at several truncations.
use qpwave::diophantine::{DivisorParams, Family};
use qpwave::fourier_field::SpaceWeights;
use qpwave::ls_solver::{solve_full, LSConfig};

fn main() -> qpwave::Result<()> {
    for family in [Family::Co, Family::Counter] {
        let param = match family {
            Family::Co => 0.5,
            Family::Counter => 1.0,
        };
        for n in [8, 16, 32] {
            let w = SpaceWeights::new(0.5, 2.0, n)?;
            let mut reach = None;
            let mut eps = 0.01;
            while eps < 2.0 {
                let p = DivisorParams::from_param(family, param, eps, 0.1, 0.25)?;
                match solve_full(&LSConfig::new(w, p)) {
                    Ok(_) => reach = Some(eps),
                    Err(_) => break,
                }
                eps *= 1.25;
            }
            println!("{family:?} N = {n:>2}: largest converged epsilon {reach:?}");
        }
    }
    Ok(())
}
