use serde::{Deserialize, Serialize};

use crate::diophantine::Family;
use crate::error::{domain, usage, Result};
use crate::fourier_field::FourierField2;

/// A polynomial `f(v) = Σ_{d≥4} a_d v^d`; `coefficients[d] = a_d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Nonlinearity {
    coefficients: Vec<f64>,
}

impl TryFrom<Vec<f64>> for Nonlinearity {
    type Error = crate::Error;
    fn try_from(c: Vec<f64>) -> Result<Self> {
        Self::new(c)
    }
}

impl From<Nonlinearity> for Vec<f64> {
    fn from(n: Nonlinearity) -> Vec<f64> {
        n.coefficients
    }
}

impl Nonlinearity {
    pub fn new(mut coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.iter().take(4).any(|&c| c != 0.0) {
            return Err(usage(
                "Nonlinearity",
                "coefficients of v^0..v^3 must vanish",
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(domain("Nonlinearity", "coefficients must be finite"));
        }
        while coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        Ok(Self { coefficients })
    }

    pub fn zero() -> Self {
        Self {
            coefficients: Vec::new(),
        }
    }

    /// `f(v) = coeff·v^d`, `d ≥ 4`.
    pub fn monomial(d: usize, coeff: f64) -> Result<Self> {
        if d < 4 {
            return Err(usage(
                "Nonlinearity::monomial",
                format!("degree {d} must be at least 4"),
            ));
        }
        let mut c = vec![0.0; d + 1];
        c[d] = coeff;
        Self::new(c)
    }

    /// The shipped choices: `0`, `v⁴` and `v⁵`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "zero" => Ok(Self::zero()),
            "v4" => Self::monomial(4, 1.0),
            "v5" => Self::monomial(5, 1.0),
            _ => Err(usage(
                "Nonlinearity::preset",
                format!("unknown preset {name:?}; expected zero, v4 or v5"),
            )),
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * v + c)
    }

    pub fn derivative_at(&self, v: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (d, &c)| acc * v + d as f64 * c)
    }

    /// `f(u)` with products truncated to the field's bound.
    pub fn eval_field(&self, u: &FourierField2) -> Result<FourierField2> {
        horner(&self.coefficients, u)
    }

    /// `f'(u)`
    pub fn derivative_field(&self, u: &FourierField2) -> Result<FourierField2> {
        let d: Vec<f64> = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        horner(&d, u)
    }
}

fn horner(c: &[f64], u: &FourierField2) -> Result<FourierField2> {
    let mut acc = FourierField2::zeros(*u.weights())?;
    let Some(first) = c.iter().position(|&a| a != 0.0) else {
        return Ok(acc);
    };
    for &a in c[first..].iter().rev() {
        acc = acc.product(u)?;
        acc.add_to(0, 0, a);
    }
    // multiply by u^first
    for _ in 0..first {
        acc = acc.product(u)?;
    }
    Ok(acc)
}

/// `f_ε(u) = ε⁻³ f(εu)` for the co-propagating form and
/// `ε^{−3/2} f(√ε u)` for the counter-propagating one.
pub fn rescale_f(f: &Nonlinearity, epsilon: f64, family: Family) -> Result<Nonlinearity> {
    if epsilon == 0.0 || !epsilon.is_finite() {
        return Err(domain("rescale_f", "epsilon must be finite and nonzero"));
    }
    if family == Family::Counter && epsilon < 0.0 {
        return Err(domain(
            "rescale_f",
            "the counter-propagating scaling needs epsilon > 0",
        ));
    }
    let c = f
        .coefficients
        .iter()
        .enumerate()
        .map(|(d, &a)| {
            if a == 0.0 {
                return 0.0;
            }
            let e = d as f64 - 3.0;
            match family {
                Family::Co => a * epsilon.powf(e),
                Family::Counter => a * epsilon.sqrt().powf(e),
            }
        })
        .collect();
    Nonlinearity::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier_field::SpaceWeights;

    #[test]
    fn scaling() {
        assert!(rescale_f(&Nonlinearity::zero(), 0.1, Family::Co)
            .unwrap()
            .is_zero());
        let f4 = Nonlinearity::monomial(4, 1.0).unwrap();
        assert!((rescale_f(&f4, 0.1, Family::Co).unwrap().coefficients()[4] - 0.1).abs() < 1e-16);
        let f5 = Nonlinearity::monomial(5, 1.0).unwrap();
        assert!(
            (rescale_f(&f5, 0.01, Family::Counter)
                .unwrap()
                .coefficients()[5]
                - 0.01)
                .abs()
                < 1e-16
        );
        assert!(rescale_f(&f4, 0.0, Family::Co).is_err());
        assert!(Nonlinearity::new(vec![0.0, 0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn field_evaluation_matches_pointwise() {
        let w = SpaceWeights::new(0.5, 2.0, 12).unwrap();
        let u = FourierField2::from_fn(w, |m, n| 0.3 * (-((m * m + n * n) as f64)).exp()).unwrap();
        let f = Nonlinearity::new(vec![0.0, 0.0, 0.0, 0.0, 1.0, -0.5]).unwrap();
        let fu = f.eval_field(&u).unwrap();
        let du = f.derivative_field(&u).unwrap();
        for &(a, b) in &[(0.0, 0.0), (0.3, 1.9), (4.0, 2.2)] {
            let v = u.eval(a, b);
            assert!((fu.eval(a, b) - f.eval(v)).abs() < 1e-12);
            assert!((du.eval(a, b) - f.derivative_at(v)).abs() < 1e-12);
        }
    }
}
