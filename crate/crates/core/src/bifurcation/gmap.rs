use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::green::GreenBasis;
use crate::error::{domain, usage, Result};
use crate::fourier_field::{Parity, PeriodicProfile1};

/// A point `(c, x, y)` of `Z`, or a value of `G`.
#[derive(Debug, Clone)]
pub struct ZTriple {
    pub c: f64,
    pub x: PeriodicProfile1,
    pub y: PeriodicProfile1,
}

impl ZTriple {
    pub fn max_abs(&self) -> f64 {
        self.c.abs().max(self.x.max_abs()).max(self.y.max_abs())
    }
}

fn check_lambda(op: &'static str, lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain(op, format!("lambda = {lambda} must be positive")));
    }
    Ok(())
}

fn check_profiles(op: &'static str, x: &PeriodicProfile1, y: &PeriodicProfile1) -> Result<()> {
    if x.parity() != Parity::Even || y.parity() != Parity::Even {
        return Err(usage(op, "x and y must be even"));
    }
    if x.grid_len() != y.grid_len() {
        return Err(usage(op, "x and y must share a grid"));
    }
    Ok(())
}

fn minus_mean(f: &PeriodicProfile1) -> PeriodicProfile1 {
    let mut c = f.coefficients().to_vec();
    c[0] = 0.0;
    PeriodicProfile1::from_coefficients(&c, f.parity(), f.grid_len()).expect("valid grid")
}

/// The three left-hand sides of the reduced bifurcation system
/// ```text
/// c³ + 3c(⟨x²⟩ + λ⟨y²⟩) + ⟨x³⟩ + λ^{3/2}⟨y³⟩
/// x'' + 3c²x + 3c(x² − ⟨x²⟩) + x³ − ⟨x³⟩ + 3λ⟨y²⟩x
/// y'' + 3c²y/λ + 3c(y² − ⟨y²⟩)/√λ + y³ − ⟨y³⟩ + 3⟨x²⟩y/λ
/// ```
pub fn g_eval(lambda: f64, c: f64, x: &PeriodicProfile1, y: &PeriodicProfile1) -> Result<ZTriple> {
    check_lambda("G_eval", lambda)?;
    check_profiles("G_eval", x, y)?;
    let x2 = x * x;
    let y2 = y * y;
    let x3 = &x2 * x;
    let y3 = &y2 * y;
    let (mx2, my2) = (x2.mean(), y2.mean());
    let sl = lambda.sqrt();
    let g1 = c.powi(3) + 3.0 * c * (mx2 + lambda * my2) + x3.mean() + lambda * sl * y3.mean();
    let g2 = &(&x.second_derivative() + &x.scale(3.0 * c * c + 3.0 * lambda * my2))
        + &(&minus_mean(&x2).scale(3.0 * c) + &minus_mean(&x3));
    let g3 = &(&y.second_derivative() + &y.scale((3.0 * c * c + 3.0 * mx2) / lambda))
        + &(&minus_mean(&y2).scale(3.0 * c / sl) + &minus_mean(&y3));
    Ok(ZTriple {
        c: g1,
        x: g2,
        y: g3,
    })
}

/// `∂_Z G(λ, c, x, y)[η, h, k]` from the analytic linearisation.
pub fn dzg_apply(
    lambda: f64,
    c: f64,
    x: &PeriodicProfile1,
    y: &PeriodicProfile1,
    eta: f64,
    h: &PeriodicProfile1,
    k: &PeriodicProfile1,
) -> Result<ZTriple> {
    check_lambda("dZG", lambda)?;
    check_profiles("dZG", x, y)?;
    check_profiles("dZG", h, k)?;
    let sl = lambda.sqrt();
    let x2 = x * x;
    let y2 = y * y;
    let xh = x * h;
    let yk = y * k;
    let x2h = &x2 * h;
    let y2k = &y2 * k;
    let (mx2, my2, mxh, myk) = (x2.mean(), y2.mean(), xh.mean(), yk.mean());
    let d1 = (3.0 * c * c + 3.0 * (mx2 + lambda * my2)) * eta
        + 6.0 * c * mxh
        + 6.0 * c * lambda * myk
        + 3.0 * x2h.mean()
        + 3.0 * lambda * sl * y2k.mean();
    let d2 = [
        h.second_derivative(),
        x.scale(6.0 * c * eta + 6.0 * lambda * myk),
        h.scale(3.0 * c * c + 3.0 * lambda * my2),
        minus_mean(&x2).scale(3.0 * eta),
        minus_mean(&xh).scale(6.0 * c),
        minus_mean(&x2h).scale(3.0),
    ];
    let d3 = [
        k.second_derivative(),
        y.scale((6.0 * c * eta + 6.0 * mxh) / lambda),
        k.scale((3.0 * c * c + 3.0 * mx2) / lambda),
        minus_mean(&y2).scale(3.0 * eta / sl),
        minus_mean(&yk).scale(6.0 * c / sl),
        minus_mean(&y2k).scale(3.0),
    ];
    let sum =
        |parts: &[PeriodicProfile1]| parts[1..].iter().fold(parts[0].clone(), |acc, p| &acc + p);
    Ok(ZTriple {
        c: d1,
        x: sum(&d2),
        y: sum(&d3),
    })
}

/// Galerkin matrix of `∂_Z G` on unknowns `(η, h₁…h_M, k₁…k_M)` where
/// `h = Σ_{j≥1} h_j cos(jφ)` has zero mean; rows are the matching cosine
/// coefficients of the output.
pub fn dzg_matrix(
    lambda: f64,
    c: f64,
    x: &PeriodicProfile1,
    y: &PeriodicProfile1,
    modes: usize,
) -> Result<DMatrix<f64>> {
    if modes < 8 {
        return Err(usage(
            "dZG_matrix",
            format!("modes = {modes} must be at least 8"),
        ));
    }
    let g = x.grid_len();
    if g / 2 <= 3 * modes {
        return Err(usage(
            "dZG_matrix",
            format!("grid {g} too coarse for {modes} modes"),
        ));
    }
    let dim = 1 + 2 * modes;
    let mut a = DMatrix::zeros(dim, dim);
    let zero = PeriodicProfile1::zero(Parity::Even, g)?;
    let unit = |j: usize| {
        let mut v = vec![0.0; j + 1];
        v[j] = 1.0;
        PeriodicProfile1::from_coefficients(&v, Parity::Even, g).expect("valid grid")
    };
    for col in 0..dim {
        let out = if col == 0 {
            dzg_apply(lambda, c, x, y, 1.0, &zero, &zero)?
        } else if col <= modes {
            dzg_apply(lambda, c, x, y, 0.0, &unit(col), &zero)?
        } else {
            dzg_apply(lambda, c, x, y, 0.0, &zero, &unit(col - modes))?
        };
        a[(0, col)] = out.c;
        for j in 1..=modes {
            a[(j, col)] = out.x.coefficient(j);
            a[(modes + j, col)] = out.y.coefficient(j);
        }
    }
    Ok(a)
}

/// Packs `(η, h, k)` into the Galerkin coordinate vector.
pub fn pack_z(eta: f64, h: &PeriodicProfile1, k: &PeriodicProfile1, modes: usize) -> DVector<f64> {
    let mut v = DVector::zeros(1 + 2 * modes);
    v[0] = eta;
    for j in 1..=modes {
        v[j] = h.coefficient(j);
        v[modes + j] = k.coefficient(j);
    }
    v
}

pub fn unpack_z(v: &DVector<f64>, modes: usize, grid: usize) -> Result<ZTriple> {
    let mut h = vec![0.0; modes + 1];
    let mut k = vec![0.0; modes + 1];
    for j in 1..=modes {
        h[j] = v[j];
        k[j] = v[modes + j];
    }
    Ok(ZTriple {
        c: v[0],
        x: PeriodicProfile1::from_coefficients(&h, Parity::Even, grid)?,
        y: PeriodicProfile1::from_coefficients(&k, Parity::Even, grid)?,
    })
}

/// Central-difference directional derivative of `G`.
pub fn dzg_finite_difference(
    lambda: f64,
    c: f64,
    x: &PeriodicProfile1,
    y: &PeriodicProfile1,
    dir: &ZTriple,
    step: f64,
) -> Result<ZTriple> {
    let plus = g_eval(
        lambda,
        c + step * dir.c,
        &(x + &dir.x.scale(step)),
        &(y + &dir.y.scale(step)),
    )?;
    let minus = g_eval(
        lambda,
        c - step * dir.c,
        &(x - &dir.x.scale(step)),
        &(y - &dir.y.scale(step)),
    )?;
    let s = 0.5 / step;
    Ok(ZTriple {
        c: (plus.c - minus.c) * s,
        x: (&plus.x - &minus.x).scale(s),
        y: (&plus.y - &minus.y).scale(s),
    })
}

pub fn smallest_singular_value(a: &DMatrix<f64>) -> f64 {
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(f64::INFINITY, |m, &s| m.min(s))
}

/// The injectivity argument for `∂_Z G(1, 0, β, β)` replayed numerically.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma4Report {
    pub avg_beta2_lbeta: f64,
    pub avg_beta_lbeta2: f64,
    pub avg_lbeta: f64,
    pub avg_beta_l1: f64,
    pub a0: f64,
    pub b0: f64,
    pub c0: f64,
    /// `⟨β²⟩ − 3⟨β²L[β²]⟩`
    pub h_path_coefficient: f64,
    /// `3⟨β²⟩⟨L[β²]⟩`
    pub h_path_closed_form: f64,
    /// Determinant of the system for `(⟨β²ρ⟩, ⟨βρ⟩)`.
    pub rho_system_det: f64,
    /// Determinant of the system for `(η, ⟨βh⟩, ⟨β²h⟩)`.
    pub h_system_det: f64,
    pub modes: Vec<usize>,
    pub smallest_singular_values: Vec<f64>,
    pub singular_value_variation: f64,
    pub singular_value_threshold: f64,
    pub pass: bool,
}

/// Threshold for the smallest singular value of the Galerkin matrices.
pub const SINGULAR_VALUE_THRESHOLD: f64 = 1e-3;

pub fn lemma4_kernel_check(basis: &GreenBasis, modes: usize) -> Result<Lemma4Report> {
    let beta = basis.beta().clone();
    let beta2 = &beta * &beta;
    let one = basis.constant(1.0);
    let l1 = basis.green_l(&one)?;
    let lb = basis.green_l(&beta)?;
    let lb2 = basis.green_l(&beta2)?;
    let avg = |a: &PeriodicProfile1, b: &PeriodicProfile1| a.mean_product(b).expect("same grid");
    let mb2 = beta2.mean();
    let a0 = 1.0 - 3.0 * avg(&beta2, &l1);
    let beta_lbeta = avg(&beta, &lb);
    let b0 = 1.0 - 6.0 * beta_lbeta;
    let c0 = 1.0 + 6.0 * beta_lbeta;
    let b2lb = avg(&beta2, &lb);
    let blb2 = avg(&beta, &lb2);
    let bl1 = avg(&beta, &l1);
    let b2lb2 = avg(&beta2, &lb2);
    let rho = nalgebra::Matrix2::new(a0, -6.0 * b2lb, -3.0 * bl1, b0);
    let hs = nalgebra::Matrix3::new(
        mb2,
        0.0,
        1.0,
        3.0 * blb2,
        c0,
        0.0,
        3.0 * b2lb2,
        6.0 * b2lb,
        1.0,
    );

    let ms = [modes, 2 * modes, 4 * modes];
    let mut svs = Vec::new();
    for &m in &ms {
        let a = dzg_matrix(1.0, 0.0, &beta, &beta, m)?;
        svs.push(smallest_singular_value(&a));
    }
    let lo = svs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = svs.iter().cloned().fold(0.0, f64::max);
    let variation = (hi - lo) / hi;
    let tol = 1e-8;
    let pass = b2lb.abs() < tol
        && blb2.abs() < tol
        && lb.mean().abs() < tol
        && bl1.abs() < tol
        && rho.determinant().abs() > 1e-3
        && hs.determinant().abs() > 1e-3
        && lo > SINGULAR_VALUE_THRESHOLD
        && variation < 0.05;
    Ok(Lemma4Report {
        avg_beta2_lbeta: b2lb,
        avg_beta_lbeta2: blb2,
        avg_lbeta: lb.mean(),
        avg_beta_l1: bl1,
        a0,
        b0,
        c0,
        h_path_coefficient: mb2 - 3.0 * b2lb2,
        h_path_closed_form: 3.0 * mb2 * lb2.mean(),
        rho_system_det: rho.determinant(),
        h_system_det: hs.determinant(),
        modes: ms.to_vec(),
        smallest_singular_values: svs,
        singular_value_variation: variation,
        singular_value_threshold: SINGULAR_VALUE_THRESHOLD,
        pass,
    })
}
