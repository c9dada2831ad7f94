//! Weighted norms on the torus, truncated products and the algebra constant.
use qpwave::fourier_field::{algebra_constant, FourierField2, SpaceWeights, Subspace};

fn main() -> qpwave::Result<()> {
    let w = SpaceWeights::new(0.5, 2.0, 16)?;
    let u = FourierField2::from_fn(w, |m, n| 0.4 * (-(m.abs() + n.abs()) as f64).exp())?;
    let v = FourierField2::from_fn(w, |m, n| {
        if n == 0 {
            0.3 / (1 + m * m) as f64
        } else {
            0.0
        }
    })?;
    let uv = u.product(&v)?;
    let c = algebra_constant(w.s, 200)?;
    println!(
        "|u| = {:.6e}  |v| = {:.6e}  |uv| = {:.6e}",
        u.norm_sigma(),
        v.norm_sigma(),
        uv.norm_sigma()
    );
    println!(
        "algebra constant: partial {:.6} upper {:.6}",
        c.c_partial, c.c_upper
    );
    println!(
        "|uv| / (|u||v|) = {:.6}",
        uv.norm_sigma() / (u.norm_sigma() * v.norm_sigma())
    );
    for sub in Subspace::ALL {
        println!("{sub:?}: {:.6e}", u.project(sub).norm_sigma());
    }
    println!("u(1, 2) = {:.12}", u.eval(1.0, 2.0));
    Ok(())
}
