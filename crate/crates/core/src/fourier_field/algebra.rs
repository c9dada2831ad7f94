use serde::Serialize;

use crate::error::{domain, Result};

/// The algebra constant `c = 2^s (Σ_{k∈ℤ²} 1/(1+|k|^{2s}))^{1/2}` from a
/// partial sum over `|k₁|, |k₂| ≤ K` plus a bound on the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraConstant {
    pub s: f64,
    pub k_sum: usize,
    /// Partial sum of `Σ 1/(1+|k|^{2s})`.
    pub partial_sum: f64,
    /// Upper bound on the omitted terms.
    pub tail_bound: f64,
    /// `2^s √partial_sum`, a lower estimate of `c`.
    pub c_partial: f64,
    /// `2^s √(partial_sum + tail_bound)`, an upper bound for `c`.
    pub c_upper: f64,
}

impl AlgebraConstant {
    pub fn c_squared_partial(&self) -> f64 {
        self.c_partial * self.c_partial
    }
}

/// Partial sum with the shell bound
/// `Σ_{|k|∞>K} |k|^{−2s} ≤ Σ_{r>K} 8r·r^{−2s} ≤ 8K^{2−2s}/(2s−2)`.
pub fn algebra_constant(s: f64, k_sum: usize) -> Result<AlgebraConstant> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(domain("algebra_constant", format!("s = {s} must exceed 1")));
    }
    if k_sum < 1 {
        return Err(domain("algebra_constant", "K_sum must be at least 1"));
    }
    let kk = k_sum as i64;
    // sum shell by shell from the outside so small terms are added first
    let mut partial = 0.0;
    for r in (1..=kk).rev() {
        let mut shell = 0.0;
        for a in -r..=r {
            for &(x, y) in &[(a, r), (a, -r)] {
                shell += term(x, y, s);
            }
        }
        for b in -(r - 1)..=(r - 1) {
            for &(x, y) in &[(r, b), (-r, b)] {
                shell += term(x, y, s);
            }
        }
        partial += shell;
    }
    partial += 1.0;
    let tail = 8.0 * (k_sum as f64).powf(2.0 - 2.0 * s) / (2.0 * s - 2.0);
    let two_s = 2f64.powf(s);
    Ok(AlgebraConstant {
        s,
        k_sum,
        partial_sum: partial,
        tail_bound: tail,
        c_partial: two_s * partial.sqrt(),
        c_upper: two_s * (partial + tail).sqrt(),
    })
}

fn term(x: i64, y: i64, s: f64) -> f64 {
    let r2 = (x * x + y * y) as f64;
    1.0 / (1.0 + r2.powf(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_checked() {
        assert!(algebra_constant(1.0, 10).is_err());
        assert!(algebra_constant(2.0, 0).is_err());
    }

    #[test]
    fn monotone_and_bracketing() {
        let mut prev = 0.0;
        let big = algebra_constant(2.0, 400).unwrap();
        for k in [1, 2, 5, 10, 50, 100] {
            let a = algebra_constant(2.0, k).unwrap();
            assert!(a.c_partial > prev);
            assert!(a.c_partial >= 4.0);
            assert!(a.c_upper >= big.c_partial);
            prev = a.c_partial;
        }
    }

    #[test]
    fn brute_force_oracle() {
        let s = 2.0;
        let k = 30i64;
        let mut sum = 0.0;
        for x in -k..=k {
            for y in -k..=k {
                sum += term(x, y, s);
            }
        }
        let a = algebra_constant(s, k as usize).unwrap();
        assert!((a.partial_sum - sum).abs() < 1e-13);
    }
}
