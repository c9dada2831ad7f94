use std::io::Write;

use serde::{Deserialize, Serialize};

use super::solver::{
    bifurcation_from, initial_guess, BifurcationSolution, LSConfig, System, ZPoint,
};
use crate::diophantine::Family;
use crate::elliptic::EllipticProfile;
use crate::error::{domain, usage, Result};
use crate::fourier_field::FourierField2;

/// Lower bound on `‖r‖_σ` and `‖s‖_σ` for an accepted solution; below it the
/// wave no longer depends on both phases.
pub const MIN_AXIS_NORM: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    pub newton_steps: usize,
    pub range_iterations: usize,
    pub contraction_factor: f64,
    /// `max |F|` of the projected equations at the returned point.
    pub z_residual: f64,
    /// `σ`-norm of the full residual at the starting point.
    pub initial_residual: f64,
    pub p_norm: f64,
    pub p_over_epsilon: f64,
    /// See [`z_distance`].
    pub z_distance: f64,
    /// `z_distance / (|param − param₀| + ε)`
    pub z_distance_ratio: f64,
    pub min_divisor: f64,
    /// `γ‖p‖ / (ε‖z‖³)`
    pub p_bound_ratio: f64,
    /// Norm of the discarded modes of `u³`.
    pub tail_norm: f64,
    pub r_norm: f64,
    pub s_norm: f64,
}

/// A converged solution `u = z + p` with the data needed to sample it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LSSolution {
    pub config: LSConfig,
    pub lambda: f64,
    pub z: ZPoint,
    pub u: FourierField2,
    pub residual_norm: f64,
    pub residual_max: f64,
    pub diagnostics: SolveDiagnostics,
}

impl LSSolution {
    pub fn family(&self) -> Family {
        self.config.family()
    }

    pub fn epsilon(&self) -> f64 {
        self.config.epsilon()
    }

    /// Full residual `−D∘u + ε(u³ − f_ε(u))` recomputed from stored data.
    pub fn recompute_residual(&self) -> Result<FourierField2> {
        System::new(&self.config)?.full_residual(&self.u)
    }

    /// The physical wave `v(t, x)`.
    pub fn sample(&self, t: f64, x: f64) -> f64 {
        sample_solution(self, t, x)
    }
}

/// `‖r − ρβ‖_σ + ‖s − ρβ‖_σ + |û₀₀|` with `ρ = 1` (co) or `√2` (counter).
pub fn z_distance(z: &ZPoint, cfg: &LSConfig, profile: &EllipticProfile) -> Result<f64> {
    let beta = profile.beta_cosine_coefficients(cfg.weights.n);
    let rho = cfg.reference_scale();
    let axis = |c: &[f64]| -> Result<f64> {
        let mut d = ZPoint::zero(cfg.weights.n);
        for j in 1..=cfg.weights.n {
            d.r[j] = c[j] - rho * beta[j];
        }
        Ok(d.to_field(&cfg.weights)?.norm_sigma())
    };
    Ok(axis(&z.r)? + axis(&z.s)? + z.u00.abs())
}

/// Solves the full equation `D∘u = ε(u³ − f_ε(u))`.
pub fn solve_full(cfg: &LSConfig) -> Result<LSSolution> {
    solve_full_with_profile(cfg, &EllipticProfile::calibrated())
}

fn assemble(
    sys: &System,
    profile: &EllipticProfile,
    bif: BifurcationSolution,
    initial_residual: f64,
) -> Result<LSSolution> {
    let cfg = &sys.cfg;
    let zf = bif.z.to_field(&cfg.weights)?;
    let u = zf.try_add(&bif.p)?;
    let res = sys.full_residual(&u)?;
    let (_, tail) = sys.nonlinear(&u)?;
    let eps = cfg.epsilon();
    let p_norm = bif.p.norm_sigma();
    let zn = zf.norm_sigma();
    let dz = z_distance(&bif.z, cfg, profile)?;
    let axis = |c: &[f64]| {
        let mut f = ZPoint::zero(cfg.weights.n);
        f.r = c.to_vec();
        f.to_field(&cfg.weights).map(|x| x.norm_sigma())
    };
    let diagnostics = SolveDiagnostics {
        newton_steps: bif.newton_steps,
        range_iterations: bif.range_iterations,
        contraction_factor: bif.contraction_factor,
        z_residual: bif.z_residual,
        initial_residual,
        p_norm,
        p_over_epsilon: p_norm / eps,
        z_distance: dz,
        z_distance_ratio: dz / cfg.distance_to_bifurcation(),
        min_divisor: sys.min_p_divisor,
        p_bound_ratio: if zn > 0.0 {
            cfg.params.gamma * p_norm / (eps * zn.powi(3))
        } else {
            0.0
        },
        tail_norm: tail,
        r_norm: axis(&bif.z.r)?,
        s_norm: axis(&bif.z.s)?,
    };
    if !(diagnostics.r_norm > MIN_AXIS_NORM && diagnostics.s_norm > MIN_AXIS_NORM) {
        return Err(domain(
            "solve_full",
            format!(
                "degenerate solution: |r| = {}, |s| = {} (both must exceed {MIN_AXIS_NORM})",
                diagnostics.r_norm, diagnostics.s_norm
            ),
        ));
    }
    Ok(LSSolution {
        config: cfg.clone(),
        lambda: cfg.lambda(),
        z: bif.z,
        u,
        residual_norm: res.norm_sigma(),
        residual_max: res.max_abs(),
        diagnostics,
    })
}

/// [`solve_full`] using a caller-supplied profile for the starting point.
pub fn solve_full_with_profile(cfg: &LSConfig, profile: &EllipticProfile) -> Result<LSSolution> {
    let sys = System::new(cfg)?;
    let z0 = initial_guess(cfg, profile);
    let initial_residual = sys.full_residual(&z0.to_field(&cfg.weights)?)?.norm_sigma();
    let bif = bifurcation_from(&sys, z0)?;
    assemble(&sys, profile, bif, initial_residual)
}

/// `(φ₁, φ₂)` and the amplitude for the wave at `(t, x)`.
fn phases(sol: &LSSolution, t: f64, x: f64) -> (f64, f64, f64) {
    let (eps, p) = (sol.epsilon(), sol.config.params.param);
    match sol.family() {
        Family::Co => (eps * t, (1.0 + p * eps * eps) * t + x, eps),
        Family::Counter => ((1.0 + eps) * t + x, (1.0 + p * eps) * t - x, eps.sqrt()),
    }
}

/// `v = εu(εt, (1+bε²)t + x)` (co) or `v = √ε u((1+ε)t + x, (1+aε)t − x)`
/// (counter).
pub fn sample_solution(sol: &LSSolution, t: f64, x: f64) -> f64 {
    let (a, b, amp) = phases(sol, t, x);
    amp * sol.u.eval(a, b)
}

/// Samples on the tensor grid `ts × xs`, rows `(t, x, v)`.
pub fn sample_grid(sol: &LSSolution, ts: &[f64], xs: &[f64]) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(ts.len() * xs.len());
    for &t in ts {
        for &x in xs {
            out.push([t, x, sample_solution(sol, t, x)]);
        }
    }
    out
}

/// `n` equispaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub fn write_csv<W: Write>(mut w: W, rows: &[[f64; 3]]) -> Result<()> {
    let io = |e: std::io::Error| usage("write_csv", e.to_string());
    writeln!(w, "t,x,v").map_err(io)?;
    for r in rows {
        writeln!(w, "{:.15e},{:.15e},{:.15e}", r[0], r[1], r[2]).map_err(io)?;
    }
    Ok(())
}

/// `max |v/A − ρβ(φ₁) − ρβ(φ₂)|` over the grid, with `A = ε` and `ρ = 1` (co)
/// or `A = √ε` and `ρ = √2` (counter): the distance from the leading-order
/// profile.
pub fn leading_order_deviation(
    sol: &LSSolution,
    profile: &EllipticProfile,
    ts: &[f64],
    xs: &[f64],
) -> f64 {
    let rho = sol.config.reference_scale();
    let mut worst = 0.0_f64;
    for &t in ts {
        for &x in xs {
            let (a, b, _) = phases(sol, t, x);
            let d = sol.u.eval(a, b) - rho * (profile.beta(a) + profile.beta(b));
            worst = worst.max(d.abs());
        }
    }
    worst
}

/// Finite-difference check of `v_tt − v_xx + v³ − f(v)` at the sample points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveCheck {
    pub points: usize,
    pub step: f64,
    pub max_residual: f64,
    pub max_cubic: f64,
    /// `max_residual / max_cubic`
    pub relative: f64,
}

pub fn wave_residual(sol: &LSSolution, ts: &[f64], xs: &[f64], h: f64) -> Result<WaveCheck> {
    if !(h > 0.0) {
        return Err(usage("wave_residual", "step must be positive"));
    }
    let f = &sol.config.nonlinearity;
    let v = |t: f64, x: f64| sample_solution(sol, t, x);
    let (mut worst, mut cubic) = (0.0_f64, 0.0_f64);
    for &t in ts {
        for &x in xs {
            let c = v(t, x);
            let vtt = (v(t + h, x) - 2.0 * c + v(t - h, x)) / (h * h);
            let vxx = (v(t, x + h) - 2.0 * c + v(t, x - h)) / (h * h);
            worst = worst.max((vtt - vxx + c.powi(3) - f.eval(c)).abs());
            cubic = cubic.max(c.powi(3).abs());
        }
    }
    Ok(WaveCheck {
        points: ts.len() * xs.len(),
        step: h,
        max_residual: worst,
        max_cubic: cubic,
        relative: if cubic > 0.0 {
            worst / cubic
        } else {
            f64::INFINITY
        },
    })
}
