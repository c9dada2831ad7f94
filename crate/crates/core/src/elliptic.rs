//! Complete elliptic integrals, Jacobi elliptic functions and the
//! calibrated elliptic profile `β(ξ) = V·cn(Ωξ, m)`.
//!
//! Everything uses the parameter convention `m = k²`.
//!
//! `K` and `E` come from the arithmetic-geometric mean; the Jacobi functions
//! from the descending Landen (AGM) recurrence with argument reduction
//! modulo `2K`, so accuracy does not degrade over many periods.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};

const AGM_MAX_ITER: usize = 40;

/// `K(m)`, `E(m)` and `K(1 - m)` evaluated together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticPair {
    pub m: f64,
    pub k: f64,
    pub e: f64,
    pub k_prime: f64,
}

impl EllipticPair {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0 && m < 1.0) {
            return Err(domain(
                "EllipticPair::new",
                format!("m = {m} not in (0, 1)"),
            ));
        }
        let (k, e) = agm_k_e(m);
        let (k_prime, _) = agm_k_e(1.0 - m);
        Ok(Self { m, k, e, k_prime })
    }
}

/// AGM evaluation of `(K(m), E(m))` for `0 <= m < 1`.
///
/// `E = K · (1 - Σ 2^(n-1) c_n²)` with `c_0² = m`.
fn agm_k_e(m: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    let mut sum = 0.5 * m;
    let mut pow2 = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        let a_next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = a_next;
        pow2 *= 2.0;
        sum += pow2 * c * c;
        if c.abs() <= 1e-17 * a {
            break;
        }
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}

/// Complete elliptic integral of the first kind,
/// `K(m) = ∫₀^{π/2} dθ / √(1 - m sin²θ)`, for `0 <= m < 1`.
pub fn complete_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(domain("complete_k", format!("m = {m} not in [0, 1)")));
    }
    if m == 0.0 {
        return Ok(PI / 2.0);
    }
    Ok(agm_k_e(m).0)
}

/// Complete elliptic integral of the second kind,
/// `E(m) = ∫₀^{π/2} √(1 - m sin²θ) dθ`, for `0 <= m <= 1`.
pub fn complete_e(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(domain("complete_e", format!("m = {m} not in [0, 1]")));
    }
    if m == 0.0 {
        return Ok(PI / 2.0);
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    Ok(agm_k_e(m).1)
}

/// Values of the Jacobi amplitude and the three Jacobi functions at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub am: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Jacobi amplitude `am(ξ, m)` and `sn`, `cn`, `dn` for `0 < m < 1`.
pub fn jacobi(xi: f64, m: f64) -> Result<Jacobi> {
    if !(m > 0.0 && m < 1.0) {
        return Err(domain("jacobi", format!("m = {m} not in (0, 1)")));
    }
    if !xi.is_finite() {
        return Err(domain("jacobi", format!("xi = {xi} is not finite")));
    }
    let k = agm_k_e(m).0;
    Ok(jacobi_with_period(xi, m, k))
}

/// Same as [`jacobi`] with `K(m)` supplied by the caller. Used in hot loops
/// where `m` is fixed.
pub(crate) fn jacobi_with_period(xi: f64, m: f64, k: f64) -> Jacobi {
    // am(u + 2jK) = am(u) + jπ
    let half_periods = (xi / (2.0 * k)).round();
    let u = xi - 2.0 * k * half_periods;
    let phi = landen_amplitude(u, m);
    let sign = if (half_periods as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let (s, c) = phi.sin_cos();
    Jacobi {
        am: phi + PI * half_periods,
        sn: sign * s,
        cn: sign * c,
        dn: (1.0 - m * s * s).sqrt(),
    }
}

/// Descending Landen transformation for the amplitude on `|u| <= K`.
fn landen_amplitude(u: f64, m: f64) -> f64 {
    let mut a = [0.0_f64; AGM_MAX_ITER + 1];
    let mut c = [0.0_f64; AGM_MAX_ITER + 1];
    a[0] = 1.0;
    let mut b = (1.0 - m).sqrt();
    c[0] = m.sqrt();
    let mut n = 0;
    while n < AGM_MAX_ITER && c[n].abs() > 1e-16 {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    phi
}

/// `ψ(m) = E(m) + (8m - 7)/6 · K(m)`. Its unique root in `(0, 1/2)` fixes
/// the profile modulus.
pub fn psi(m: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&m) {
        return Err(domain("psi", format!("m = {m} not in [0, 1/2]")));
    }
    Ok(complete_e(m)? + (8.0 * m - 7.0) / 6.0 * complete_k(m)?)
}

/// Derivative of [`psi`], from `dK/dm = (E - (1-m)K) / (2m(1-m))` and
/// `dE/dm = (E - K) / (2m)`.
pub fn psi_prime(m: f64) -> Result<f64> {
    if !(m > 0.0 && m <= 0.5) {
        return Err(domain("psi_prime", format!("m = {m} not in (0, 1/2]")));
    }
    let (k, e) = agm_k_e(m);
    let dk = (e - (1.0 - m) * k) / (2.0 * m * (1.0 - m));
    let de = (e - k) / (2.0 * m);
    Ok(de + 8.0 / 6.0 * k + (8.0 * m - 7.0) / 6.0 * dk)
}

/// The calibrated profile `β(ξ) = V̄ cn(Ω̄ξ, m̄)`: 2π-periodic, even, and a
/// solution of `β'' + β³ + 3⟨β²⟩β = 0` with `⟨β⟩ = ⟨β³⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticProfile {
    pub m_bar: f64,
    pub omega_bar: f64,
    pub v_bar: f64,
    /// Width of the strip of analyticity, `K(1 - m̄)/Ω̄`.
    pub sigma_bar: f64,
    /// `K(m̄)`, cached for evaluation.
    pub k: f64,
    /// `E(m̄)`.
    pub e: f64,
    /// `K(1 - m̄)`.
    pub k_prime: f64,
}

/// Root of `ψ` on `[0, 1/2]` with `|ψ(m̄)| < tol` (or bracket width at
/// machine resolution), followed by the derived profile constants.
pub fn find_m_bar(tol: f64) -> Result<EllipticProfile> {
    if !(tol > 0.0) {
        return Err(domain(
            "find_m_bar",
            format!("tol = {tol} must be positive"),
        ));
    }
    // ψ(0) = -π/12 < 0 < ψ(1/2) and ψ' > 0 on [0, 1/2].
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if psi(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut m = 0.5 * (lo + hi);
    let polished = m - psi(m)? / psi_prime(m)?;
    if polished > lo - 1e-14 && polished < hi + 1e-14 && psi(polished)?.abs() <= psi(m)?.abs() {
        m = polished;
    }
    let residual = psi(m)?.abs();
    if residual >= tol && hi - lo > f64::EPSILON {
        return Err(domain(
            "find_m_bar",
            format!("|psi(m)| = {residual:e} above tolerance {tol:e}"),
        ));
    }
    EllipticProfile::from_modulus(m)
}

impl EllipticProfile {
    /// Profile at the root of `ψ` to full double precision.
    pub fn calibrated() -> Self {
        find_m_bar(1e-13).expect("ψ has a bracketed simple root on [0, 1/2]")
    }

    /// Constants for an arbitrary modulus: `Ω = 2K(m)/π`, `V² = 2mΩ²`,
    /// `σ = K(1-m)/Ω`. Only the root of `ψ` gives a solution of the
    /// profile equation; see [`EllipticProfile::is_calibrated`].
    pub fn from_modulus(m: f64) -> Result<Self> {
        let pair = EllipticPair::new(m)?;
        let omega_bar = 2.0 * pair.k / PI;
        let v_bar = (2.0 * m).sqrt() * omega_bar;
        Ok(Self {
            m_bar: m,
            omega_bar,
            v_bar,
            sigma_bar: pair.k_prime / omega_bar,
            k: pair.k,
            e: pair.e,
            k_prime: pair.k_prime,
        })
    }

    pub fn is_calibrated(&self) -> bool {
        self.m_bar > 0.0 && self.m_bar < 0.5 && psi(self.m_bar).is_ok_and(|v| v.abs() < 1e-10)
    }

    pub fn v_bar_squared(&self) -> f64 {
        self.v_bar * self.v_bar
    }

    /// `⟨cn²(·, m)⟩ = [E - (1-m)K] / (mK)` over a period.
    pub fn mean_cn_squared(&self) -> f64 {
        (self.e - (1.0 - self.m_bar) * self.k) / (self.m_bar * self.k)
    }

    /// `⟨β²⟩` on `[0, 2π]`.
    pub fn mean_beta_squared(&self) -> f64 {
        self.v_bar_squared() * self.mean_cn_squared()
    }

    pub fn jacobi(&self, u: f64) -> Jacobi {
        jacobi_with_period(u, self.m_bar, self.k)
    }

    /// `β(ξ) = V̄ cn(Ω̄ξ, m̄)`.
    pub fn beta(&self, xi: f64) -> f64 {
        self.v_bar * self.jacobi(self.omega_bar * xi).cn
    }

    /// `β'(ξ) = -V̄ Ω̄ sn dn`.
    pub fn beta_prime(&self, xi: f64) -> f64 {
        let j = self.jacobi(self.omega_bar * xi);
        -self.v_bar * self.omega_bar * j.sn * j.dn
    }

    /// Cosine coefficients `a_j` of `β = Σ a_j cos(jξ)` for `j = 0..=n`,
    /// from the nome expansion of `cn`. Only odd `j` are non-zero and
    /// `a_j = V̄π / (√m̄ K cosh(jσ̄))`, so every coefficient carries full
    /// relative precision, however small.
    pub fn beta_cosine_coefficients(&self, n: usize) -> Vec<f64> {
        let scale = self.v_bar * PI / (self.m_bar.sqrt() * self.k);
        (0..=n)
            .map(|j| {
                if j % 2 == 1 {
                    scale / (j as f64 * self.sigma_bar).cosh()
                } else {
                    0.0
                }
            })
            .collect()
    }
}

/// Evaluates [`EllipticProfile::beta`]; exists to mirror the operation list.
pub fn beta_eval(xi: f64, profile: &EllipticProfile) -> f64 {
    profile.beta(xi)
}
