use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `f = a₀ + Σ a_j cos(jξ)`
    Even,
    /// `f = Σ b_j sin(jξ)`
    Odd,
}

impl Parity {
    fn times(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A 2π-periodic function of one variable with definite parity, held both as
/// samples on the grid `ξ_i = 2πi/G` and as cosine (even) or sine (odd)
/// coefficients `0..=G/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicProfile1 {
    parity: Parity,
    samples: Vec<f64>,
    coeffs: Vec<f64>,
}

/// `∫₀^ξ f = rate·ξ + periodic(ξ)`, with `periodic(0) = 0`.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    pub rate: f64,
    pub periodic: PeriodicProfile1,
}

fn check_grid(op: &'static str, grid: usize) -> Result<()> {
    if grid < 8 || !grid.is_power_of_two() {
        return Err(usage(
            op,
            format!("grid size {grid} must be a power of two >= 8"),
        ));
    }
    Ok(())
}

pub(crate) fn grid_points(grid: usize) -> impl Iterator<Item = f64> {
    let h = 2.0 * PI / grid as f64;
    (0..grid).map(move |i| i as f64 * h)
}

impl PeriodicProfile1 {
    /// Samples on the uniform grid; the coefficients are obtained by a real
    /// DFT and the part of the wrong parity is discarded.
    pub fn from_samples(samples: Vec<f64>, parity: Parity) -> Result<Self> {
        check_grid("PeriodicProfile1::from_samples", samples.len())?;
        let coeffs = analyse(&samples, parity);
        let samples = synthesise(&coeffs, parity, samples.len());
        Ok(Self {
            parity,
            samples,
            coeffs,
        })
    }

    /// Coefficients `c[0..]`, zero-padded (or truncated) to `grid/2 + 1`.
    /// Given coefficients are kept bit-for-bit.
    pub fn from_coefficients(coeffs: &[f64], parity: Parity, grid: usize) -> Result<Self> {
        check_grid("PeriodicProfile1::from_coefficients", grid)?;
        let mut c = vec![0.0; grid / 2 + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        if parity == Parity::Odd {
            c[0] = 0.0;
            c[grid / 2] = 0.0;
        }
        let samples = synthesise(&c, parity, grid);
        Ok(Self {
            parity,
            samples,
            coeffs: c,
        })
    }

    pub fn from_fn(f: impl Fn(f64) -> f64, parity: Parity, grid: usize) -> Result<Self> {
        check_grid("PeriodicProfile1::from_fn", grid)?;
        Self::from_samples(grid_points(grid).map(f).collect(), parity)
    }

    pub fn zero(parity: Parity, grid: usize) -> Result<Self> {
        Self::from_coefficients(&[], parity, grid)
    }

    pub fn constant(value: f64, grid: usize) -> Result<Self> {
        Self::from_coefficients(&[value], Parity::Even, grid)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn grid_len(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `j`, zero beyond the stored range.
    pub fn coefficient(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    /// Average over a period.
    pub fn mean(&self) -> f64 {
        match self.parity {
            Parity::Even => self.coeffs[0],
            Parity::Odd => 0.0,
        }
    }

    /// Evaluation anywhere by summing the series.
    pub fn eval(&self, xi: f64) -> f64 {
        let g2 = self.grid_len() / 2;
        let mut acc = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let phase = j as f64 * xi;
            acc += match self.parity {
                Parity::Even => c * phase.cos(),
                Parity::Odd if j < g2 => c * phase.sin(),
                Parity::Odd => 0.0,
            };
        }
        acc
    }

    /// First derivative by exact differentiation of the series.
    pub fn derivative(&self) -> Self {
        let g = self.grid_len();
        let mut c = vec![0.0; g / 2 + 1];
        let parity = match self.parity {
            Parity::Even => {
                for j in 1..g / 2 {
                    c[j] = -(j as f64) * self.coeffs[j];
                }
                Parity::Odd
            }
            Parity::Odd => {
                for j in 1..g / 2 {
                    c[j] = j as f64 * self.coeffs[j];
                }
                Parity::Even
            }
        };
        Self::from_coefficients(&c, parity, g).expect("grid already validated")
    }

    pub fn second_derivative(&self) -> Self {
        let g = self.grid_len();
        let c: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| -((j * j) as f64) * a)
            .collect();
        Self::from_coefficients(&c, self.parity, g).expect("grid already validated")
    }

    pub fn antiderivative(&self) -> Antiderivative {
        let g = self.grid_len();
        let mut c = vec![0.0; g / 2 + 1];
        match self.parity {
            Parity::Even => {
                for j in 1..g / 2 {
                    c[j] = self.coeffs[j] / j as f64;
                }
                Antiderivative {
                    rate: self.coeffs[0],
                    periodic: Self::from_coefficients(&c, Parity::Odd, g).expect("valid grid"),
                }
            }
            Parity::Odd => {
                let mut constant = 0.0;
                for j in 1..g / 2 {
                    let bj = self.coeffs[j] / j as f64;
                    c[j] = -bj;
                    constant += bj;
                }
                c[0] = constant;
                Antiderivative {
                    rate: 0.0,
                    periodic: Self::from_coefficients(&c, Parity::Even, g).expect("valid grid"),
                }
            }
        }
    }

    /// Keeps coefficients `0..=n`.
    pub fn truncated(&self, n: usize) -> Self {
        let c: Vec<f64> = self.coeffs.iter().take(n + 1).copied().collect();
        Self::from_coefficients(&c, self.parity, self.grid_len()).expect("valid grid")
    }

    /// Same function sampled on another grid (coefficients truncated or
    /// zero-padded).
    pub fn resampled(&self, grid: usize) -> Result<Self> {
        Self::from_coefficients(&self.coeffs, self.parity, grid)
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map_coefficients(|c| c * factor)
    }

    fn map_coefficients(&self, f: impl Fn(f64) -> f64) -> Self {
        let c: Vec<f64> = self.coeffs.iter().map(|&c| f(c)).collect();
        Self::from_coefficients(&c, self.parity, self.grid_len()).expect("valid grid")
    }

    /// Pointwise map on the samples; the result is projected back to the
    /// requested parity.
    pub fn map_samples(&self, parity: Parity, f: impl Fn(f64) -> f64) -> Self {
        Self::from_samples(self.samples.iter().map(|&v| f(v)).collect(), parity)
            .expect("valid grid")
    }

    /// Pointwise product on the grid.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_grid("PeriodicProfile1::mul", other)?;
        let parity = self.parity.times(other.parity);
        let s = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b)
            .collect();
        Self::from_samples(s, parity)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_grid("PeriodicProfile1::add", other)?;
        if self.parity != other.parity {
            return Err(usage("PeriodicProfile1::add", "parities differ"));
        }
        let c: Vec<f64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_coefficients(&c, self.parity, self.grid_len())
    }

    /// Average of the product, `⟨f g⟩`.
    pub fn mean_product(&self, other: &Self) -> Result<f64> {
        self.check_same_grid("PeriodicProfile1::mean_product", other)?;
        let g = self.grid_len() as f64;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / g)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest disagreement between the stored samples and the synthesised
    /// series.
    pub fn representation_mismatch(&self) -> f64 {
        let s = synthesise(&self.coeffs, self.parity, self.grid_len());
        s.iter()
            .zip(&self.samples)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    fn check_same_grid(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.grid_len() != other.grid_len() {
            return Err(usage(
                op,
                format!(
                    "grid sizes differ ({} vs {})",
                    self.grid_len(),
                    other.grid_len()
                ),
            ));
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr for &PeriodicProfile1 {
            type Output = PeriodicProfile1;
            fn $method(self, rhs: &PeriodicProfile1) -> PeriodicProfile1 {
                self.$inner(rhs).expect("profiles on the same grid")
            }
        }
    };
}

binop!(Mul, mul, try_mul);
binop!(Add, add, try_add);

impl Sub for &PeriodicProfile1 {
    type Output = PeriodicProfile1;
    fn sub(self, rhs: &PeriodicProfile1) -> PeriodicProfile1 {
        self.try_add(&rhs.scale(-1.0))
            .expect("profiles on the same grid")
    }
}

fn analyse(samples: &[f64], parity: Parity) -> Vec<f64> {
    let g = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(g).process(&mut buf);
    let inv = 1.0 / g as f64;
    let mut c = vec![0.0; g / 2 + 1];
    match parity {
        Parity::Even => {
            c[0] = buf[0].re * inv;
            for j in 1..g / 2 {
                c[j] = 2.0 * buf[j].re * inv;
            }
            c[g / 2] = buf[g / 2].re * inv;
        }
        Parity::Odd => {
            for j in 1..g / 2 {
                c[j] = -2.0 * buf[j].im * inv;
            }
        }
    }
    c
}

fn synthesise(coeffs: &[f64], parity: Parity, g: usize) -> Vec<f64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); g];
    match parity {
        Parity::Even => {
            buf[0] = Complex64::new(coeffs[0], 0.0);
            for j in 1..g / 2 {
                let h = Complex64::new(0.5 * coeffs[j], 0.0);
                buf[j] = h;
                buf[g - j] = h;
            }
            buf[g / 2] = Complex64::new(coeffs[g / 2], 0.0);
        }
        Parity::Odd => {
            for j in 1..g / 2 {
                let h = 0.5 * coeffs[j];
                buf[j] = Complex64::new(0.0, -h);
                buf[g - j] = Complex64::new(0.0, h);
            }
        }
    }
    FftPlanner::new().plan_fft_inverse(g).process(&mut buf);
    buf.into_iter().map(|z| z.re).collect()
}
