use std::f64::consts::PI;

use serde::Serialize;

use crate::elliptic::EllipticProfile;
use crate::error::{usage, Result};
use crate::fourier_field::{grid_points, Parity, PeriodicProfile1};

/// Default sampling grid for the Green operator.
pub const DEFAULT_GREEN_GRID: usize = 2048;

/// Homogeneous solutions of `w'' + (3β² + 3⟨β²⟩)w = 0` and the Green
/// operator built from them.
///
/// `ū = sn·dn(Ω̄ξ)/Ω̄` is odd and periodic. `v̄` is even but not periodic; it
/// is held as `v̄(ξ) = v_per(ξ) − s·ξ·ū(ξ)` with `v_per` even periodic and
/// `s = V̄²k/(2π)`.
#[derive(Debug, Clone)]
pub struct GreenBasis {
    pub profile: EllipticProfile,
    pub grid: usize,
    beta: PeriodicProfile1,
    u_bar: PeriodicProfile1,
    v_per: PeriodicProfile1,
    secular_rate: f64,
    k_green: f64,
    potential: PeriodicProfile1,
    mean_sn2_dn2: f64,
}

/// Samples of `v̄` on `[0, 4π)` at spacing `2π/grid`.
#[derive(Debug, Clone, Serialize)]
pub struct VBarSamples {
    pub xi: Vec<f64>,
    pub v: Vec<f64>,
    pub v_prime: Vec<f64>,
}

pub fn build_green_basis(profile: &EllipticProfile, grid: usize) -> Result<GreenBasis> {
    if !profile.is_calibrated() {
        return Err(usage(
            "build_green_basis",
            format!("profile with m = {} is not calibrated", profile.m_bar),
        ));
    }
    if grid < 1024 || !grid.is_power_of_two() {
        return Err(usage(
            "build_green_basis",
            format!("grid {grid} must be a power of two >= 1024"),
        ));
    }
    let p = *profile;
    let om = p.omega_bar;
    let jac: Vec<_> = grid_points(grid).map(|xi| p.jacobi(om * xi)).collect();
    let beta = PeriodicProfile1::from_coefficients(
        &p.beta_cosine_coefficients(grid / 2),
        Parity::Even,
        grid,
    )?;
    let u_bar = PeriodicProfile1::from_samples(
        jac.iter().map(|j| j.sn * j.dn / om).collect(),
        Parity::Odd,
    )?;
    let q = PeriodicProfile1::from_samples(
        jac.iter().map(|j| (j.sn * j.sn) / (j.dn * j.dn)).collect(),
        Parity::Even,
    )?;
    let cn = PeriodicProfile1::from_samples(jac.iter().map(|j| j.cn).collect(), Parity::Even)?;
    let c = (2.0 * p.m_bar - 1.0) / 2.0;
    let iq = q.antiderivative();
    let k_green = 2.0 * PI * (1.0 + c * iq.rate);
    let v2 = p.v_bar_squared();
    let secular_rate = v2 * k_green / (2.0 * PI);
    // v̄ = cn − V̄²ū[ξ + c I(ξ)], I = ⟨q⟩ξ + I_per
    let v_per = &cn - &(&u_bar * &iq.periodic).scale(v2 * c);
    let b2 = &beta * &beta;
    let potential = b2
        .scale(3.0)
        .try_add(&PeriodicProfile1::constant(3.0 * b2.mean(), grid)?)?;
    Ok(GreenBasis {
        profile: p,
        grid,
        beta,
        u_bar,
        v_per,
        secular_rate,
        k_green,
        potential,
        mean_sn2_dn2: iq.rate,
    })
}

impl GreenBasis {
    pub fn beta(&self) -> &PeriodicProfile1 {
        &self.beta
    }

    pub fn u_bar(&self) -> &PeriodicProfile1 {
        &self.u_bar
    }

    /// Periodic part of `v̄`.
    pub fn v_periodic(&self) -> &PeriodicProfile1 {
        &self.v_per
    }

    /// `V̄²k/(2π)`
    pub fn secular_rate(&self) -> f64 {
        self.secular_rate
    }

    pub fn k_green(&self) -> f64 {
        self.k_green
    }

    /// `2π(−1+16m̄−16m̄²)/(12m̄(1−m̄))`
    pub fn k_closed_form(&self) -> f64 {
        let m = self.profile.m_bar;
        2.0 * PI * (-1.0 + 16.0 * m - 16.0 * m * m) / (12.0 * m * (1.0 - m))
    }

    /// `⟨sn²/dn²(Ω̄·)⟩`
    pub fn mean_sn2_over_dn2(&self) -> f64 {
        self.mean_sn2_dn2
    }

    /// `3β² + 3⟨β²⟩`
    pub fn potential(&self) -> &PeriodicProfile1 {
        &self.potential
    }

    pub fn constant(&self, value: f64) -> PeriodicProfile1 {
        PeriodicProfile1::constant(value, self.grid).expect("grid validated at construction")
    }

    pub fn u_bar_at(&self, xi: f64) -> f64 {
        self.u_bar.eval(xi)
    }

    pub fn v_bar_at(&self, xi: f64) -> f64 {
        self.v_per.eval(xi) - self.secular_rate * xi * self.u_bar.eval(xi)
    }

    /// `v̄` and `v̄'` sampled on `[0, 4π)`.
    pub fn v_bar_samples(&self) -> VBarSamples {
        let g = self.grid;
        let dv = self.v_per.derivative();
        let du = self.u_bar.derivative();
        let h = 2.0 * PI / g as f64;
        let mut out = VBarSamples {
            xi: Vec::with_capacity(2 * g),
            v: Vec::with_capacity(2 * g),
            v_prime: Vec::with_capacity(2 * g),
        };
        for i in 0..2 * g {
            let xi = i as f64 * h;
            let j = i % g;
            let (u, up) = (self.u_bar.samples()[j], du.samples()[j]);
            out.xi.push(xi);
            out.v
                .push(self.v_per.samples()[j] - self.secular_rate * xi * u);
            out.v_prime
                .push(dv.samples()[j] - self.secular_rate * (u + xi * up));
        }
        out
    }

    /// `(1/2π)∫₀^{2π} ξ g(ξ) dξ` for periodic `g`.
    pub fn mean_xi_times(&self, g: &PeriodicProfile1) -> f64 {
        let ad = g.antiderivative();
        PI * ad.rate - ad.periodic.mean()
    }

    /// `⟨h v̄⟩` over `[0, 2π]`; `v̄` is not periodic so this is the plain
    /// average over the first period.
    pub fn mean_with_v_bar(&self, h: &PeriodicProfile1) -> f64 {
        let a = h.mean_product(&self.v_per).expect("same grid");
        a - self.secular_rate * self.mean_xi_times(&(h * &self.u_bar))
    }

    /// The Green operator: the unique even periodic `w` with
    /// `w'' + (3β² + 3⟨β²⟩)w = h`.
    pub fn green_l(&self, h: &PeriodicProfile1) -> Result<PeriodicProfile1> {
        if h.parity() != Parity::Even {
            return Err(usage("green_L", "input must be even"));
        }
        let h = if h.grid_len() == self.grid {
            h.clone()
        } else {
            h.resampled(self.grid)?
        };
        let s = self.secular_rate;
        // C = ∫₀^ξ hū (even, periodic)
        let cu = (&h * &self.u_bar).antiderivative().periodic;
        // ∫₀^ξ h v_per = aξ + E₁
        let hv = (&h * &self.v_per).antiderivative();
        // ∫₀^ξ C = c̄ξ + E₂
        let cc = cu.antiderivative();
        let b = (hv.rate + s * cc.rate) / s;
        // secular terms cancel identically
        let first = &hv.periodic + &cc.periodic.scale(s);
        let second = &self.constant(b) - &cu;
        Ok(&(&first * &self.u_bar) + &(&second * &self.v_per))
    }

    /// `w'' + (3β² + 3⟨β²⟩)w`
    pub fn apply_operator(&self, w: &PeriodicProfile1) -> PeriodicProfile1 {
        &w.second_derivative() + &(&self.potential * w)
    }

    /// `‖L[h]'' + (3β²+3⟨β²⟩)L[h] − h‖_∞`
    pub fn green_residual(&self, h: &PeriodicProfile1) -> Result<f64> {
        let w = self.green_l(h)?;
        Ok((&self.apply_operator(&w) - &h.resampled(self.grid)?).max_abs())
    }

    /// Smooth deterministic even test functions for exchange-rule checks.
    pub fn test_profile(&self, seed: usize) -> PeriodicProfile1 {
        let c: Vec<f64> = (0..24)
            .map(|j| {
                let phase = 1.37 * (seed as f64 + 1.0) * (j as f64 + 0.5) + 0.4 * seed as f64;
                phase.sin() * (-0.45 * j as f64).exp()
            })
            .collect();
        PeriodicProfile1::from_coefficients(&c, Parity::Even, self.grid).expect("valid grid")
    }
}
