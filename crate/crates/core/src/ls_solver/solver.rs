use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::nonlinearity::{rescale_f, Nonlinearity};
use crate::diophantine::{DivisorParams, Family};
use crate::elliptic::EllipticProfile;
use crate::error::{domain, usage, Error, Result};
use crate::fourier_field::{FourierField2, SpaceWeights, Subspace};

/// Whether the range equation feeds back into the bifurcation equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    /// Solve the coupled system (`μ = ε`).
    #[default]
    Full,
    /// Bifurcation equation alone with `p = 0` (`μ = 0`).
    Reduced,
}

fn default_contraction_tol() -> f64 {
    1e-15
}
fn default_newton_tol() -> f64 {
    1e-14
}
fn default_max_outer() -> usize {
    50
}
fn default_max_range_iters() -> usize {
    400
}

/// Solver configuration. The operator family is taken from `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LSConfig {
    pub weights: SpaceWeights,
    pub params: DivisorParams,
    #[serde(default = "Nonlinearity::zero")]
    pub nonlinearity: Nonlinearity,
    #[serde(default = "default_contraction_tol")]
    pub contraction_tol: f64,
    #[serde(default = "default_newton_tol")]
    pub newton_tol: f64,
    #[serde(default = "default_max_outer")]
    pub max_outer: usize,
    #[serde(default = "default_max_range_iters")]
    pub max_range_iters: usize,
    #[serde(default)]
    pub coupling: Coupling,
}

impl LSConfig {
    pub fn new(weights: SpaceWeights, params: DivisorParams) -> Self {
        Self {
            weights,
            params,
            nonlinearity: Nonlinearity::zero(),
            contraction_tol: default_contraction_tol(),
            newton_tol: default_newton_tol(),
            max_outer: default_max_outer(),
            max_range_iters: default_max_range_iters(),
            coupling: Coupling::Full,
        }
    }

    pub fn with_nonlinearity(mut self, f: Nonlinearity) -> Self {
        self.nonlinearity = f;
        self
    }

    pub fn with_coupling(mut self, c: Coupling) -> Self {
        self.coupling = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        if !(self.params.epsilon > 0.0 && self.params.epsilon.is_finite()) {
            return Err(domain(
                "LSConfig",
                format!("epsilon = {} must be positive", self.params.epsilon),
            ));
        }
        if !(self.contraction_tol > 0.0 && self.newton_tol > 0.0) {
            return Err(usage("LSConfig", "tolerances must be positive"));
        }
        if self.max_outer == 0 || self.max_range_iters == 0 {
            return Err(usage("LSConfig", "iteration caps must be positive"));
        }
        if !(self.kappa2() > 0.0 && self.kappa1() > 0.0) {
            return Err(domain("LSConfig", "lambda must be positive"));
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.params.family
    }

    pub fn epsilon(&self) -> f64 {
        self.params.epsilon
    }

    /// Coefficient of `r''`: `1` (co) or `2+ε` (counter).
    pub fn kappa1(&self) -> f64 {
        match self.family() {
            Family::Co => 1.0,
            Family::Counter => 2.0 + self.epsilon(),
        }
    }

    /// Coefficient of `s''`: `b(2+bε²)` (co) or `a(2+aε)` (counter).
    pub fn kappa2(&self) -> f64 {
        let (p, e) = (self.params.param, self.epsilon());
        match self.family() {
            Family::Co => p * (2.0 + p * e * e),
            Family::Counter => p * (2.0 + p * e),
        }
    }

    /// `λ` of the rescaled core system.
    pub fn lambda(&self) -> f64 {
        self.kappa2() / self.kappa1()
    }

    /// The point `(b, ε) = (1/2, 0)` or `(a, ε) = (1, 0)` the family
    /// bifurcates from, as `|param − param₀| + ε`.
    pub fn distance_to_bifurcation(&self) -> f64 {
        let p0 = match self.family() {
            Family::Co => 0.5,
            Family::Counter => 1.0,
        };
        (self.params.param - p0).abs() + self.epsilon()
    }

    /// Scale of the limiting profile: `β` (co) or `√2 β` (counter).
    pub fn reference_scale(&self) -> f64 {
        match self.family() {
            Family::Co => 1.0,
            Family::Counter => 2f64.sqrt(),
        }
    }
}

/// A point of `Z = C × Q₁ × Q₂` in cosine coordinates:
/// `u00 + Σ_{j≥1} r_j cos(jφ₁) + Σ_{j≥1} s_j cos(jφ₂)`. Index 0 of `r`, `s`
/// is unused and kept at zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZPoint {
    pub u00: f64,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
}

impl ZPoint {
    pub fn zero(n: usize) -> Self {
        Self {
            u00: 0.0,
            r: vec![0.0; n + 1],
            s: vec![0.0; n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.r.len() - 1
    }

    pub fn to_field(&self, weights: &SpaceWeights) -> Result<FourierField2> {
        let mut f = FourierField2::zeros(*weights)?;
        f.set(0, 0, self.u00);
        f.set_axis_cosines(Subspace::Q1, &self.r);
        f.set_axis_cosines(Subspace::Q2, &self.s);
        Ok(f)
    }

    pub fn from_field(u: &FourierField2) -> Self {
        Self {
            u00: u.get(0, 0),
            r: u.axis_cosines(Subspace::Q1),
            s: u.axis_cosines(Subspace::Q2),
        }
    }

    fn to_vector(&self) -> DVector<f64> {
        let n = self.n();
        let mut v = DVector::zeros(1 + 2 * n);
        v[0] = self.u00;
        for j in 1..=n {
            v[j] = self.r[j];
            v[n + j] = self.s[j];
        }
        v
    }

    fn add_vector(&mut self, d: &DVector<f64>) {
        let n = self.n();
        self.u00 += d[0];
        for j in 1..=n {
            self.r[j] += d[j];
            self.s[j] += d[n + j];
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.to_vector() - &other.to_vector()).amax()
    }
}

/// A point of the rescaled core system `G(λ, c, x, y) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorePoint {
    pub lambda: f64,
    pub c: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl CorePoint {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = (self.c - other.c).abs();
        for (a, b) in self
            .x
            .iter()
            .zip(&other.x)
            .chain(self.y.iter().zip(&other.y))
        {
            d = d.max((a - b).abs());
        }
        d
    }
}

/// `(û₀₀, r, s) ↦ (c, x, y)`: `r = x`, `s = √κ₂ y`, `û₀₀ = c` (co);
/// `r = √κ₁ x`, `û₀₀ = √κ₁ c`, `s = √κ₂ y` (counter).
pub fn rescale_to_core(z: &ZPoint, cfg: &LSConfig) -> CorePoint {
    let (a1, a2) = (cfg.kappa1().sqrt(), cfg.kappa2().sqrt());
    let (cu, cx) = match cfg.family() {
        Family::Co => (1.0, 1.0),
        Family::Counter => (a1, a1),
    };
    CorePoint {
        lambda: cfg.lambda(),
        c: z.u00 / cu,
        x: z.r.iter().map(|v| v / cx).collect(),
        y: z.s.iter().map(|v| v / a2).collect(),
    }
}

pub fn core_to_z(core: &CorePoint, cfg: &LSConfig) -> ZPoint {
    let (a1, a2) = (cfg.kappa1().sqrt(), cfg.kappa2().sqrt());
    let (cu, cx) = match cfg.family() {
        Family::Co => (1.0, 1.0),
        Family::Counter => (a1, a1),
    };
    ZPoint {
        u00: core.c * cu,
        r: core.x.iter().map(|v| v * cx).collect(),
        s: core.y.iter().map(|v| v * a2).collect(),
    }
}

/// Starting point: the image of `(0, β, β)` under the inverse rescaling.
pub fn initial_guess(cfg: &LSConfig, profile: &EllipticProfile) -> ZPoint {
    let n = cfg.weights.n;
    let beta = profile.beta_cosine_coefficients(n);
    let mut b = beta.clone();
    b[0] = 0.0;
    core_to_z(
        &CorePoint {
            lambda: cfg.lambda(),
            c: 0.0,
            x: b.clone(),
            y: b,
        },
        cfg,
    )
}

/// Precomputed pieces shared by the range and bifurcation solves.
pub(crate) struct System {
    pub cfg: LSConfig,
    pub f_eps: Nonlinearity,
    /// `D(m,n)` on the truncation square, same layout as the field.
    pub divisors: FourierField2,
    pub min_p_divisor: f64,
}

impl System {
    pub fn new(cfg: &LSConfig) -> Result<Self> {
        cfg.validate()?;
        let f_eps = rescale_f(&cfg.nonlinearity, cfg.epsilon(), cfg.family())?;
        let divisors = FourierField2::from_fn(cfg.weights, |m, n| cfg.params.divisor(m, n))?;
        let min_p_divisor = divisors
            .iter()
            .filter(|&(m, n, _)| m != 0 && n != 0)
            .fold(f64::INFINITY, |a, (_, _, d)| a.min(d.abs()));
        Ok(Self {
            cfg: cfg.clone(),
            f_eps,
            divisors,
            min_p_divisor,
        })
    }

    /// `u³ − f_ε(u)` and the truncated tail norm of `u³`.
    pub fn nonlinear(&self, u: &FourierField2) -> Result<(FourierField2, f64)> {
        let u2 = u.product(u)?;
        let u3 = u2.product_with_tail(u)?;
        let g = if self.f_eps.is_zero() {
            u3.field
        } else {
            u3.field.try_sub(&self.f_eps.eval_field(u)?)?
        };
        Ok((g, u3.tail_norm))
    }

    /// `3u² − f_ε'(u)`
    pub fn nonlinear_derivative(&self, u: &FourierField2) -> Result<FourierField2> {
        let u2 = u.product(u)?.scale(3.0);
        if self.f_eps.is_zero() {
            Ok(u2)
        } else {
            u2.try_sub(&self.f_eps.derivative_field(u)?)
        }
    }

    /// `−D∘u + ε(u³ − f_ε(u))`
    pub fn full_residual(&self, u: &FourierField2) -> Result<FourierField2> {
        let (g, _) = self.nonlinear(u)?;
        let eps = self.cfg.epsilon();
        let du = u.multiplier(|m, n| self.divisors.get(m, n));
        g.scale(eps).try_sub(&du)
    }
}

/// Output of the range fixed point.
#[derive(Debug, Clone, Serialize)]
pub struct RangeSolution {
    pub p: FourierField2,
    pub iterations: usize,
    /// Largest observed ratio of successive update norms.
    pub contraction_factor: f64,
    pub last_update: f64,
    pub min_divisor: f64,
    /// `γ‖p‖ / (ε‖z‖³)`
    pub bound_ratio: f64,
}

/// Fixed point of `p ↦ εΠ_P[(z+p)³ − f_ε(z+p)] / D` on the `P` modes.
pub fn solve_range(z: &ZPoint, cfg: &LSConfig) -> Result<RangeSolution> {
    let sys = System::new(cfg)?;
    let zf = z.to_field(&cfg.weights)?;
    range_fixed_point(&sys, &zf, None)
}

pub(crate) fn range_fixed_point(
    sys: &System,
    z: &FourierField2,
    warm: Option<&FourierField2>,
) -> Result<RangeSolution> {
    let cfg = &sys.cfg;
    if !(sys.min_p_divisor > cfg.params.gamma) {
        return Err(usage(
            "solve_range",
            format!(
                "min |D| = {} on the P modes does not exceed gamma = {}",
                sys.min_p_divisor, cfg.params.gamma
            ),
        ));
    }
    let eps = cfg.epsilon();
    let mut p = match warm {
        Some(w) => w.clone(),
        None => FourierField2::zeros(cfg.weights)?,
    };
    let znorm = z.norm_sigma();
    let mut factor: f64 = 0.0;
    let mut prev = f64::INFINITY;
    let mut it = 0;
    let mut last;
    loop {
        it += 1;
        let u = z.try_add(&p)?;
        let (g, _) = sys.nonlinear(&u)?;
        let next = g.project(Subspace::P).multiplier(|m, n| {
            if m != 0 && n != 0 {
                eps / sys.divisors.get(m, n)
            } else {
                0.0
            }
        });
        let delta = next.try_sub(&p)?.norm_sigma();
        p = next;
        last = delta;
        let scale = p.norm_sigma().max(1e-300);
        let noise = 1e-13 * scale.max(znorm * eps);
        if prev.is_finite() && prev > noise {
            factor = factor.max(delta / prev);
        }
        if delta <= cfg.contraction_tol * scale.max(1.0) || delta == 0.0 {
            break;
        }
        if delta <= noise && delta >= prev {
            break;
        }
        if factor >= 1.0 && delta > noise {
            return Err(Error::NoConvergence {
                op: "solve_range",
                iterations: it,
                residual: delta,
                factor,
            });
        }
        if it >= cfg.max_range_iters {
            return Err(Error::NoConvergence {
                op: "solve_range",
                iterations: it,
                residual: delta,
                factor,
            });
        }
        prev = delta;
    }
    let pn = p.norm_sigma();
    let bound_ratio = if znorm > 0.0 {
        cfg.params.gamma * pn / (eps * znorm.powi(3))
    } else {
        0.0
    };
    Ok(RangeSolution {
        p,
        iterations: it,
        contraction_factor: factor,
        last_update: last,
        min_divisor: sys.min_p_divisor,
        bound_ratio,
    })
}

/// One outer step of the bifurcation solve.
#[derive(Debug, Clone, Serialize)]
pub struct IterRecord {
    /// `max |F|` of the projected equations before the step.
    pub z_residual: f64,
    pub step: f64,
    pub range_iterations: usize,
    pub core: CorePoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct BifurcationSolution {
    pub z: ZPoint,
    pub p: FourierField2,
    pub newton_steps: usize,
    pub z_residual: f64,
    pub contraction_factor: f64,
    pub range_iterations: usize,
    pub history: Vec<IterRecord>,
}

fn z_equations(sys: &System, z: &FourierField2, g: &FourierField2) -> DVector<f64> {
    let n = sys.cfg.weights.n;
    let (k1, k2) = (sys.cfg.kappa1(), sys.cfg.kappa2());
    let mut f = DVector::zeros(1 + 2 * n);
    f[0] = g.get(0, 0);
    for j in 1..=n {
        let jj = (j * j) as f64;
        let ji = j as i64;
        f[j] = -k1 * jj * z.get(ji, 0) + g.get(ji, 0);
        f[n + j] = -k2 * jj * z.get(0, ji) + g.get(0, ji);
    }
    f
}

fn z_jacobian(sys: &System, gp: &FourierField2) -> DMatrix<f64> {
    let n = sys.cfg.weights.n;
    let (k1, k2) = (sys.cfg.kappa1(), sys.cfg.kappa2());
    let dim = 1 + 2 * n;
    let rows: Vec<(i64, i64)> = std::iter::once((0, 0))
        .chain((1..=n as i64).map(|i| (i, 0)))
        .chain((1..=n as i64).map(|i| (0, i)))
        .collect();
    let mut jac = DMatrix::zeros(dim, dim);
    for (ri, &(km, kn)) in rows.iter().enumerate() {
        jac[(ri, 0)] = gp.get(km, kn);
        for j in 1..=n as i64 {
            jac[(ri, j as usize)] = 0.5 * (gp.get(km - j, kn) + gp.get(km + j, kn));
            jac[(ri, n + j as usize)] = 0.5 * (gp.get(km, kn - j) + gp.get(km, kn + j));
        }
    }
    for j in 1..=n {
        let jj = (j * j) as f64;
        jac[(j, j)] -= 0.5 * k1 * jj;
        jac[(n + j, n + j)] -= 0.5 * k2 * jj;
    }
    jac
}

/// Newton on the projected `C`, `Q₁`, `Q₂` equations, alternating with the
/// range fixed point (skipped under [`Coupling::Reduced`]).
pub fn solve_bifurcation(cfg: &LSConfig, profile: &EllipticProfile) -> Result<BifurcationSolution> {
    let sys = System::new(cfg)?;
    let z0 = initial_guess(cfg, profile);
    bifurcation_from(&sys, z0)
}

pub(crate) fn bifurcation_from(sys: &System, mut z: ZPoint) -> Result<BifurcationSolution> {
    let cfg = &sys.cfg;
    let mut p = FourierField2::zeros(cfg.weights)?;
    let mut history = Vec::new();
    let mut factor: f64 = 0.0;
    let mut range_total = 0;
    let mut first_res = None;
    for outer in 0..cfg.max_outer {
        let zf = z.to_field(&cfg.weights)?;
        let mut range_its = 0;
        if cfg.coupling == Coupling::Full {
            let rs = range_fixed_point(sys, &zf, Some(&p))?;
            factor = factor.max(rs.contraction_factor);
            range_its = rs.iterations;
            range_total += rs.iterations;
            p = rs.p;
        }
        let u = zf.try_add(&p)?;
        let (g, _) = sys.nonlinear(&u)?;
        let f = z_equations(sys, &zf, &g);
        let res = f.amax();
        if !res.is_finite() {
            return Err(Error::NoConvergence {
                op: "solve_bifurcation",
                iterations: outer,
                residual: res,
                factor,
            });
        }
        let f0 = *first_res.get_or_insert(res);
        if res > 1e6 * f0.max(1e-300) {
            return Err(Error::NoConvergence {
                op: "solve_bifurcation",
                iterations: outer,
                residual: res,
                factor,
            });
        }
        let core = rescale_to_core(&z, cfg);
        if res < cfg.newton_tol {
            history.push(IterRecord {
                z_residual: res,
                step: 0.0,
                range_iterations: range_its,
                core,
            });
            return Ok(BifurcationSolution {
                z,
                p,
                newton_steps: outer,
                z_residual: res,
                contraction_factor: factor,
                range_iterations: range_total,
                history,
            });
        }
        let gp = sys.nonlinear_derivative(&u)?;
        let jac = z_jacobian(sys, &gp);
        let delta = jac.lu().solve(&(-&f)).ok_or_else(|| {
            usage(
                "solve_bifurcation",
                "singular Jacobian of the bifurcation equation",
            )
        })?;
        history.push(IterRecord {
            z_residual: res,
            step: delta.amax(),
            range_iterations: range_its,
            core,
        });
        z.add_vector(&delta);
    }
    Err(Error::NoConvergence {
        op: "solve_bifurcation",
        iterations: cfg.max_outer,
        residual: history.last().map_or(f64::NAN, |h| h.z_residual),
        factor,
    })
}
