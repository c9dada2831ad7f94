use std::fmt;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::profile::{Parity, PeriodicProfile1};
use crate::error::{domain, usage, Result};

/// Weights of the truncated space: analyticity width `sigma`, Sobolev
/// exponent `s` and truncation bound `n` on `|m|, |n|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceWeights {
    pub sigma: f64,
    pub s: f64,
    pub n: usize,
}

impl SpaceWeights {
    pub fn new(sigma: f64, s: f64, n: usize) -> Result<Self> {
        let w = Self { sigma, s, n };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(domain(
                "SpaceWeights",
                format!("sigma = {} must be positive", self.sigma),
            ));
        }
        if !(self.s > 1.0 && self.s.is_finite()) {
            return Err(domain(
                "SpaceWeights",
                format!("s = {} must exceed 1", self.s),
            ));
        }
        if self.n < 1 {
            return Err(domain(
                "SpaceWeights",
                "truncation bound must be at least 1",
            ));
        }
        Ok(())
    }

    /// `ln([1 + (m²+n²)^s] e^{2σ√(m²+n²)})`
    pub fn log_weight(&self, m: i64, n: i64) -> f64 {
        let r2 = (m * m + n * n) as f64;
        (1.0 + r2.powf(self.s)).ln() + 2.0 * self.sigma * r2.sqrt()
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..*self }
    }

    /// Same `sigma`, `s`, `n` up to bitwise equality.
    fn compatible(&self, other: &Self) -> bool {
        self.sigma.to_bits() == other.sigma.to_bits()
            && self.s.to_bits() == other.s.to_bits()
            && self.n == other.n
    }
}

/// The four blocks of the index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subspace {
    /// `(0, 0)`
    C,
    /// `(m, 0)`, `m ≠ 0`
    Q1,
    /// `(0, n)`, `n ≠ 0`
    Q2,
    /// `m ≠ 0` and `n ≠ 0`
    P,
}

impl Subspace {
    pub const ALL: [Subspace; 4] = [Subspace::C, Subspace::Q1, Subspace::Q2, Subspace::P];

    pub fn of(m: i64, n: i64) -> Subspace {
        match (m == 0, n == 0) {
            (true, true) => Subspace::C,
            (false, true) => Subspace::Q1,
            (true, false) => Subspace::Q2,
            (false, false) => Subspace::P,
        }
    }
}

/// A real even function on the 2-torus, `u(φ) = Σ û_{mn} e^{i(mφ₁+nφ₂)}`,
/// truncated to `|m|, |n| ≤ N`. Coefficients are real with
/// `û_{m,n} = û_{−m,−n}`.
#[derive(Clone, PartialEq)]
pub struct FourierField2 {
    weights: SpaceWeights,
    coeffs: Vec<f64>,
}

/// The four components of a field.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub u00: f64,
    /// Function of `φ₁` alone; cosine coefficients `a_j = 2û_{j,0}`.
    pub r: PeriodicProfile1,
    /// Function of `φ₂` alone; cosine coefficients `a_j = 2û_{0,j}`.
    pub s: PeriodicProfile1,
    pub p: FourierField2,
}

/// A product truncated to `N` together with the `‖·‖_σ` norm of the part
/// that was cut off.
#[derive(Debug, Clone)]
pub struct Product {
    pub field: FourierField2,
    pub tail_norm: f64,
}

impl fmt::Debug for FourierField2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierField2")
            .field("weights", &self.weights)
            .field("nonzero", &self.nonzero().count())
            .finish()
    }
}

impl FourierField2 {
    pub fn zeros(weights: SpaceWeights) -> Result<Self> {
        weights.validate()?;
        let side = 2 * weights.n + 1;
        Ok(Self {
            weights,
            coeffs: vec![0.0; side * side],
        })
    }

    pub fn constant(weights: SpaceWeights, value: f64) -> Result<Self> {
        let mut u = Self::zeros(weights)?;
        u.set(0, 0, value);
        Ok(u)
    }

    /// Builds a field from `f(m, n)`, evaluated on one representative of each
    /// pair `±(m, n)` and mirrored onto the other.
    pub fn from_fn(weights: SpaceWeights, mut f: impl FnMut(i64, i64) -> f64) -> Result<Self> {
        let mut u = Self::zeros(weights)?;
        let n = weights.n as i64;
        for m in -n..=n {
            for k in -n..=n {
                if (m, k) >= (0, 0) {
                    let v = f(m, k);
                    u.set(m, k, v);
                }
            }
        }
        Ok(u)
    }

    /// Row-major coefficients on `[−N,N]²`; rejected unless symmetric.
    pub fn from_dense(weights: SpaceWeights, coeffs: Vec<f64>) -> Result<Self> {
        weights.validate()?;
        let side = 2 * weights.n + 1;
        if coeffs.len() != side * side {
            return Err(usage(
                "FourierField2::from_dense",
                format!(
                    "expected {} coefficients, got {}",
                    side * side,
                    coeffs.len()
                ),
            ));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(domain(
                "FourierField2::from_dense",
                format!("non-finite coefficient {bad}"),
            ));
        }
        let u = Self { weights, coeffs };
        for (m, n, c) in u.iter() {
            if c != u.get(-m, -n) {
                return Err(usage(
                    "FourierField2::from_dense",
                    format!("coefficients at ({m},{n}) and ({},{}) differ", -m, -n),
                ));
            }
        }
        Ok(u)
    }

    pub fn weights(&self) -> &SpaceWeights {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.n
    }

    pub fn dense(&self) -> &[f64] {
        &self.coeffs
    }

    fn index(&self, m: i64, n: i64) -> usize {
        let big = self.weights.n as i64;
        let side = 2 * big + 1;
        ((m + big) * side + (n + big)) as usize
    }

    fn in_range(&self, m: i64, n: i64) -> bool {
        let big = self.weights.n as i64;
        m.abs() <= big && n.abs() <= big
    }

    /// `û_{mn}`, zero outside the truncation square.
    pub fn get(&self, m: i64, n: i64) -> f64 {
        if self.in_range(m, n) {
            self.coeffs[self.index(m, n)]
        } else {
            0.0
        }
    }

    /// Sets `û_{m,n}` and `û_{−m,−n}`.
    ///
    /// # Panics
    /// If `(m, n)` lies outside the truncation square.
    pub fn set(&mut self, m: i64, n: i64, value: f64) {
        assert!(self.in_range(m, n), "index ({m},{n}) outside truncation");
        let i = self.index(m, n);
        let j = self.index(-m, -n);
        self.coeffs[i] = value;
        self.coeffs[j] = value;
    }

    pub fn add_to(&mut self, m: i64, n: i64, delta: f64) {
        let v = self.get(m, n) + delta;
        self.set(m, n, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        let big = self.weights.n as i64;
        let side = (2 * big + 1) as usize;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| ((i / side) as i64 - big, (i % side) as i64 - big, c))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        self.iter().filter(|t| t.2 != 0.0)
    }

    /// `‖u‖_σ² = Σ |û_{mn}|² [1+(m²+n²)^s] e^{2σ√(m²+n²)}`
    pub fn norm_sigma_squared(&self) -> f64 {
        weighted_sum(&self.weights, self.nonzero())
    }

    pub fn norm_sigma(&self) -> f64 {
        self.norm_sigma_squared().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            weights: self.weights,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|c| c * factor)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        self.check_compatible(op, other)?;
        Ok(Self {
            weights: self.weights,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "FourierField2::add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "FourierField2::sub", |a, b| a - b)
    }

    /// Coefficientwise multiplication (a Fourier multiplier).
    pub fn multiplier(&self, f: impl Fn(i64, i64) -> f64) -> Self {
        let mut out = self.clone();
        for (i, (m, n, c)) in self.iter().enumerate() {
            out.coeffs[i] = c * f(m, n);
        }
        out
    }

    fn check_compatible(&self, op: &'static str, other: &Self) -> Result<()> {
        if !self.weights.compatible(&other.weights) {
            return Err(usage(
                op,
                format!("weights differ: {:?} vs {:?}", self.weights, other.weights),
            ));
        }
        Ok(())
    }

    /// Truncates or zero-pads to a new bound.
    pub fn with_truncation(&self, n: usize) -> Result<Self> {
        let mut out = Self::zeros(self.weights.with_n(n))?;
        let big = n as i64;
        for (m, k, c) in self.nonzero() {
            if m.abs() <= big && k.abs() <= big {
                let i = out.index(m, k);
                out.coeffs[i] = c;
            }
        }
        Ok(out)
    }

    pub fn with_weights(&self, weights: SpaceWeights) -> Result<Self> {
        let mut out = self.with_truncation(weights.n)?;
        weights.validate()?;
        out.weights = weights;
        Ok(out)
    }

    /// Convolution on the doubled index range, truncated back to `N`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        Ok(self.product_with_tail(other)?.field)
    }

    /// As [`product`](Self::product), also reporting the norm of the part
    /// beyond `N`.
    pub fn product_with_tail(&self, other: &Self) -> Result<Product> {
        self.check_compatible("FourierField2::product", other)?;
        let big = self.weights.n as i64;
        let side = (2 * big + 1) as usize;
        let wide = 4 * big + 1;
        let wside = wide as usize;
        let mut acc = vec![0.0; wside * wside];
        for (km, kn, vk) in other.nonzero() {
            for lm in -big..=big {
                let urow = &self.coeffs[((lm + big) as usize) * side..][..side];
                let jm = lm + km + 2 * big;
                let start = jm as usize * wside + (kn + big) as usize;
                let out = &mut acc[start..start + side];
                for (o, u) in out.iter_mut().zip(urow) {
                    *o += vk * u;
                }
            }
        }
        let mut field = Self::zeros(self.weights)?;
        let mut tail = Vec::new();
        for (i, &c) in acc.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let m = (i / wside) as i64 - 2 * big;
            let n = (i % wside) as i64 - 2 * big;
            if m.abs() <= big && n.abs() <= big {
                let j = field.index(m, n);
                field.coeffs[j] = c;
            } else {
                tail.push((m, n, c));
            }
        }
        field.resymmetrise();
        let tail_norm = weighted_sum(&self.weights, tail.into_iter()).sqrt();
        Ok(Product { field, tail_norm })
    }

    /// Transform-based product; must agree with [`product`](Self::product).
    pub fn product_fft(&self, other: &Self) -> Result<Self> {
        self.check_compatible("FourierField2::product_fft", other)?;
        let big = self.weights.n as i64;
        let p = (4 * big as usize + 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(p);
        let inv = planner.plan_fft_inverse(p);
        let load = |u: &Self| {
            let mut buf = vec![Complex64::new(0.0, 0.0); p * p];
            for (m, n, c) in u.nonzero() {
                let i = m.rem_euclid(p as i64) as usize;
                let j = n.rem_euclid(p as i64) as usize;
                buf[i * p + j] = Complex64::new(c, 0.0);
            }
            buf
        };
        let mut a = load(self);
        let mut b = load(other);
        fft2(&mut a, p, fwd.as_ref());
        fft2(&mut b, p, fwd.as_ref());
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y;
        }
        fft2(&mut a, p, inv.as_ref());
        let scale = 1.0 / (p * p) as f64;
        let mut out = Self::zeros(self.weights)?;
        for m in -big..=big {
            for n in -big..=big {
                let i = m.rem_euclid(p as i64) as usize;
                let j = n.rem_euclid(p as i64) as usize;
                let k = out.index(m, n);
                out.coeffs[k] = a[i * p + j].re * scale;
            }
        }
        out.resymmetrise();
        Ok(out)
    }

    /// Averages each coefficient with its mirror, removing rounding asymmetry.
    fn resymmetrise(&mut self) {
        let big = self.weights.n as i64;
        for m in -big..=big {
            for n in -big..=big {
                if (m, n) > (0, 0) {
                    let v = 0.5 * (self.get(m, n) + self.get(-m, -n));
                    self.set(m, n, v);
                }
            }
        }
    }

    /// Coefficient masking onto one block.
    pub fn project(&self, subspace: Subspace) -> Self {
        let mut out = self.clone();
        for (i, (m, n, _)) in self.iter().enumerate() {
            if Subspace::of(m, n) != subspace {
                out.coeffs[i] = 0.0;
            }
        }
        out
    }

    /// Splits into `û₀₀ + r(φ₁) + s(φ₂) + p(φ)`. The one-variable parts are
    /// sampled on `grid` points.
    pub fn decompose(&self, grid: usize) -> Result<Decomposition> {
        let big = self.weights.n as i64;
        let mut rc = vec![0.0; big as usize + 1];
        let mut sc = vec![0.0; big as usize + 1];
        for j in 1..=big {
            rc[j as usize] = 2.0 * self.get(j, 0);
            sc[j as usize] = 2.0 * self.get(0, j);
        }
        if grid / 2 < big as usize {
            return Err(usage(
                "FourierField2::decompose",
                format!("grid {grid} cannot hold {big} modes"),
            ));
        }
        Ok(Decomposition {
            u00: self.get(0, 0),
            r: PeriodicProfile1::from_coefficients(&rc, Parity::Even, grid)?,
            s: PeriodicProfile1::from_coefficients(&sc, Parity::Even, grid)?,
            p: self.project(Subspace::P),
        })
    }

    /// Inverse of [`decompose`](Self::decompose); one-variable modes beyond
    /// `N` are dropped.
    pub fn compose(weights: SpaceWeights, d: &Decomposition) -> Result<Self> {
        let mut out = if d.p.weights.compatible(&weights) {
            d.p.project(Subspace::P)
        } else {
            return Err(usage("FourierField2::compose", "p has different weights"));
        };
        if d.r.mean() != 0.0 || d.s.mean() != 0.0 {
            return Err(usage(
                "FourierField2::compose",
                "r and s must have zero mean",
            ));
        }
        out.set(0, 0, d.u00);
        for j in 1..=weights.n as i64 {
            out.set(j, 0, 0.5 * d.r.coefficient(j as usize));
            out.set(0, j, 0.5 * d.s.coefficient(j as usize));
        }
        Ok(out)
    }

    /// Field from cosine coefficients of `r(φ₁)` and `s(φ₂)` (index 0 ignored).
    pub fn set_axis_cosines(&mut self, sub: Subspace, cosines: &[f64]) {
        let big = self.weights.n as i64;
        for j in 1..=big.min(cosines.len() as i64 - 1) {
            let v = 0.5 * cosines[j as usize];
            match sub {
                Subspace::Q1 => self.set(j, 0, v),
                Subspace::Q2 => self.set(0, j, v),
                _ => panic!("axis cosines only exist on Q1 and Q2"),
            }
        }
    }

    /// Cosine coefficients `a_j = 2û_{j,0}` (Q1) or `2û_{0,j}` (Q2), `j = 0..=N`
    /// with `a_0 = 0`.
    pub fn axis_cosines(&self, sub: Subspace) -> Vec<f64> {
        let big = self.weights.n as i64;
        let mut a = vec![0.0; big as usize + 1];
        for j in 1..=big {
            a[j as usize] = 2.0
                * match sub {
                    Subspace::Q1 => self.get(j, 0),
                    Subspace::Q2 => self.get(0, j),
                    _ => panic!("axis cosines only exist on Q1 and Q2"),
                };
        }
        a
    }

    /// `u(φ₁, φ₂) = Σ û_{mn} cos(mφ₁ + nφ₂)`.
    pub fn eval(&self, phi1: f64, phi2: f64) -> f64 {
        let big = self.weights.n;
        let table = |phi: f64| -> Vec<(f64, f64)> {
            (0..=big)
                .map(|k| {
                    let (s, c) = (k as f64 * phi).sin_cos();
                    (c, s)
                })
                .collect()
        };
        let (t1, t2) = (table(phi1), table(phi2));
        let mut sum = 0.0;
        for (m, n, c) in self.nonzero() {
            let (c1, s1) = t1[m.unsigned_abs() as usize];
            let (c2, s2) = t2[n.unsigned_abs() as usize];
            let s1 = if m < 0 { -s1 } else { s1 };
            let s2 = if n < 0 { -s2 } else { s2 };
            sum += c * (c1 * c2 - s1 * s2);
        }
        sum
    }

    /// Values on the `g × g` grid `(2πi/g, 2πj/g)`, row-major in `i`.
    pub fn to_grid(&self, g: usize) -> Vec<f64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); g * g];
        for (m, n, c) in self.nonzero() {
            let i = m.rem_euclid(g as i64) as usize;
            let j = n.rem_euclid(g as i64) as usize;
            buf[i * g + j] += Complex64::new(c, 0.0);
        }
        let mut planner = FftPlanner::new();
        let inv = planner.plan_fft_inverse(g);
        fft2(&mut buf, g, inv.as_ref());
        buf.into_iter().map(|z| z.re).collect()
    }
}

fn weighted_sum(w: &SpaceWeights, terms: impl Iterator<Item = (i64, i64, f64)>) -> f64 {
    terms
        .filter(|t| t.2 != 0.0)
        .map(|(m, n, c)| (2.0 * c.abs().ln() + w.log_weight(m, n)).exp())
        .sum()
}

fn fft2(buf: &mut [Complex64], p: usize, fft: &dyn rustfft::Fft<f64>) {
    for row in buf.chunks_mut(p) {
        fft.process(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); p];
    for j in 0..p {
        for i in 0..p {
            col[i] = buf[i * p + j];
        }
        fft.process(&mut col);
        for i in 0..p {
            buf[i * p + j] = col[i];
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    weights: SpaceWeights,
    coefficients: Vec<(i64, i64, f64)>,
}

impl Serialize for FourierField2 {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        FieldJson {
            weights: self.weights,
            coefficients: self.nonzero().collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FourierField2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = FieldJson::deserialize(de)?;
        let mut u = Self::zeros(raw.weights).map_err(serde::de::Error::custom)?;
        for (m, n, c) in raw.coefficients {
            if !u.in_range(m, n) {
                return Err(serde::de::Error::custom(format!(
                    "index ({m},{n}) outside truncation"
                )));
            }
            let i = u.index(m, n);
            u.coeffs[i] = c;
        }
        Self::from_dense(raw.weights, u.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn w(n: usize) -> SpaceWeights {
        SpaceWeights::new(0.5, 2.0, n).unwrap()
    }

    #[test]
    fn weights_validated() {
        assert!(SpaceWeights::new(0.0, 2.0, 4).is_err());
        assert!(SpaceWeights::new(0.5, 1.0, 4).is_err());
        assert!(SpaceWeights::new(0.5, 2.0, 0).is_err());
    }

    #[test]
    fn simple_norms() {
        let one = FourierField2::constant(w(4), 1.0).unwrap();
        assert!((one.norm_sigma() - 1.0).abs() < 1e-15);
        let mut c = FourierField2::zeros(w(4)).unwrap();
        c.set(1, 0, 1.0);
        assert!((c.norm_sigma() - 2.0 * 0.5f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn square_of_cosine() {
        let mut c = FourierField2::zeros(w(4)).unwrap();
        c.set(1, 0, 1.0);
        let sq = c.product(&c).unwrap();
        assert_eq!(sq.get(0, 0), 2.0);
        assert_eq!(sq.get(2, 0), 1.0);
        assert_eq!(sq.get(-2, 0), 1.0);
        assert_eq!(sq.nonzero().count(), 3);
    }

    #[test]
    fn mismatched_weights_rejected() {
        let a = FourierField2::constant(w(4), 1.0).unwrap();
        let b = FourierField2::constant(w(5), 1.0).unwrap();
        assert!(matches!(a.product(&b), Err(crate::Error::Usage { .. })));
    }

    #[test]
    fn tail_is_reported() {
        let mut c = FourierField2::zeros(w(2)).unwrap();
        c.set(2, 0, 1.0);
        let p = c.product_with_tail(&c).unwrap();
        // modes (±4, 0) fall outside
        let expect = (2.0 * (1.0 + 256.0) * (8.0 * 0.5f64).exp()).sqrt();
        assert!((p.tail_norm - expect).abs() < 1e-12 * expect);
        assert_eq!(p.field.get(0, 0), 2.0);
    }

    #[test]
    fn decomposition_of_axis_cosines() {
        let mut u = FourierField2::zeros(w(4)).unwrap();
        u.set(1, 0, 1.0);
        u.set(0, 1, 1.0);
        let d = u.decompose(32).unwrap();
        assert_eq!(d.u00, 0.0);
        assert!((d.r.eval(0.3) - 2.0 * 0.3f64.cos()).abs() < 1e-15);
        assert!((d.s.eval(PI / 3.0) - 1.0).abs() < 1e-15);
        assert_eq!(d.p.nonzero().count(), 0);
        let back = FourierField2::compose(w(4), &d).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn grid_matches_eval() {
        let u =
            FourierField2::from_fn(w(3), |m, n| 1.0 / (1.0 + (m * m + 2 * n * n) as f64)).unwrap();
        let g = u.to_grid(16);
        let h = 2.0 * PI / 16.0;
        for &(i, j) in &[(0usize, 0usize), (3, 5), (15, 1)] {
            let e = u.eval(i as f64 * h, j as f64 * h);
            assert!((g[i * 16 + j] - e).abs() < 1e-13);
        }
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let u = FourierField2::from_fn(w(3), |m, n| (m + 2 * n) as f64 * 0.1).unwrap();
        let s = serde_json::to_string(&u).unwrap();
        let v: FourierField2 = serde_json::from_str(&s).unwrap();
        assert_eq!(u, v);
        let bad = r#"{"weights":{"sigma":0.5,"s":2.0,"n":2},"coefficients":[[1,0,1.0]]}"#;
        assert!(serde_json::from_str::<FourierField2>(bad).is_err());
    }
}
