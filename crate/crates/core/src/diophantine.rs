//! Badly approximable numbers, the divisors of the two linear wave operators
//! and certified parameter pairs for which every divisor is bounded away
//! from zero.

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};

/// Default half-width of the box `(−δ, δ)` holding `x` and `y`.
pub const DEFAULT_DELTA: f64 = 0.25;

/// Default `n_max` for membership scans.
pub const DEFAULT_BTILDE_SCAN: i64 = 10_000;

const MIN_CF_DEPTH: usize = 20;
const EVAL_CF_DEPTH: usize = 96;

/// Outcome of a finite scan of `|m + n x| > γ/|n|` over `0 < n ≤ n_max`,
/// `m ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BtildeReport {
    pub x: f64,
    pub gamma: f64,
    pub n_max: i64,
    pub pass: bool,
    pub worst_m: i64,
    pub worst_n: i64,
    /// `min |n|·|m + n x|` over the scan.
    pub worst_quality: f64,
    /// `min |n|·|n x|` (the excluded `m = 0` terms), reported only.
    pub m_zero_quality: f64,
}

/// Scans the defining inequality of the badly approximable set.
pub fn in_btilde(x: f64, gamma: f64, n_max: i64) -> Result<BtildeReport> {
    if !(gamma > 0.0 && gamma < 0.25) {
        return Err(domain(
            "in_btilde",
            format!("gamma = {gamma} not in (0, 1/4)"),
        ));
    }
    if n_max < 1 {
        return Err(domain("in_btilde", "n_max must be at least 1"));
    }
    if !x.is_finite() {
        return Err(domain("in_btilde", "x must be finite"));
    }
    let mut worst = (f64::INFINITY, 0i64, 0i64);
    let mut m_zero = f64::INFINITY;
    // n < 0 mirrors n > 0 under m → −m
    for n in 1..=n_max {
        let nx = n as f64 * x;
        m_zero = m_zero.min(n as f64 * nx.abs());
        let f = (-nx).floor() as i64;
        for m in [f - 1, f, f + 1, f + 2] {
            if m == 0 {
                continue;
            }
            let q = n as f64 * (m as f64 + nx).abs();
            if q < worst.0 {
                worst = (q, m, n);
            }
        }
    }
    Ok(BtildeReport {
        x,
        gamma,
        n_max,
        pass: worst.0 > gamma,
        worst_m: worst.1,
        worst_n: worst.2,
        worst_quality: worst.0,
        m_zero_quality: m_zero,
    })
}

/// An eventually periodic continued fraction `[0; head…, period, period, …]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuedFraction {
    pub head: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(head: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(usage("ContinuedFraction", "period must be non-empty"));
        }
        if head.iter().chain(&period).any(|&a| a == 0) {
            return Err(usage(
                "ContinuedFraction",
                "partial quotients must be at least 1",
            ));
        }
        Ok(Self { head, period })
    }

    /// `a_j` for `j ≥ 1`.
    pub fn quotient(&self, j: usize) -> u64 {
        assert!(j >= 1);
        let i = j - 1;
        if i < self.head.len() {
            self.head[i]
        } else {
            self.period[(i - self.head.len()) % self.period.len()]
        }
    }

    pub fn quotients(&self, depth: usize) -> Vec<u64> {
        (1..=depth).map(|j| self.quotient(j)).collect()
    }

    /// Largest `a_j` over `j ≥ 2`.
    pub fn tail_bound(&self) -> u64 {
        let end = self.head.len() + self.period.len() + 1;
        (2..=end).map(|j| self.quotient(j)).max().unwrap_or(0)
    }

    /// Backward evaluation over enough terms to reach machine precision.
    pub fn value(&self) -> f64 {
        let depth = EVAL_CF_DEPTH.max(self.head.len() + 4 * self.period.len());
        let mut x = 0.0;
        for j in (1..=depth).rev() {
            x = 1.0 / (self.quotient(j) as f64 + x);
        }
        x
    }
}

/// A certified element of the badly approximable set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadNumber {
    pub value: f64,
    pub gamma: f64,
    /// `[a₁, a₂, …]` up to the recorded depth.
    pub cf: Vec<u64>,
    /// Largest `|n|` verified by direct scan.
    pub scan_depth: i64,
    pub scan: BtildeReport,
}

/// Builds the number `[0; a₁, a₂, …]` and certifies it. `a₁` is free; every
/// later quotient must satisfy `a_j < γ⁻¹ − 2`.
pub fn cf_bad_number(cf: &ContinuedFraction, gamma: f64, scan_depth: i64) -> Result<BadNumber> {
    if !(gamma > 0.0 && gamma < 0.25) {
        return Err(domain(
            "cf_bad_number",
            format!("gamma = {gamma} not in (0, 1/4)"),
        ));
    }
    let bound = 1.0 / gamma - 2.0;
    let depth = MIN_CF_DEPTH.max(cf.head.len() + cf.period.len() + 1);
    for j in 2..=depth {
        let a = cf.quotient(j);
        if a as f64 >= bound {
            return Err(usage(
                "cf_bad_number",
                format!("a_{j} = {a} violates a_j < 1/gamma - 2 = {bound}"),
            ));
        }
    }
    let value = cf.value();
    let scan = in_btilde(value, gamma, scan_depth)?;
    if !scan.pass {
        return Err(usage(
            "cf_bad_number",
            format!(
                "scan failed at (m, n) = ({}, {}) with quality {}",
                scan.worst_m, scan.worst_n, scan.worst_quality
            ),
        ));
    }
    Ok(BadNumber {
        value,
        gamma,
        cf: cf.quotients(depth),
        scan_depth,
        scan,
    })
}

/// `D_{b,ε}(m,n) = εm² + 2(1+bε²)mn + bε(2+bε²)n²`
pub fn eigen_d_be(b: f64, epsilon: f64, m: i64, n: i64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let be2 = b * epsilon * epsilon;
    epsilon * m * m + 2.0 * (1.0 + be2) * m * n + b * epsilon * (2.0 + be2) * n * n
}

/// `(2+bε²)(xm+n)(m+bεn)` with `x = ε/(2+bε²)`.
pub fn eigen_d_be_factored(b: f64, epsilon: f64, m: i64, n: i64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let pre = 2.0 + b * epsilon * epsilon;
    let x = epsilon / pre;
    pre * (x * m + n) * (m + b * epsilon * n)
}

/// `D_{a,ε}(m,n) = ε(2+ε)m² + aε(2+aε)n² + 2(2+(a+1)ε+aε²)mn`
pub fn eigen_d_ae(a: f64, epsilon: f64, m: i64, n: i64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let e = epsilon;
    e * (2.0 + e) * m * m
        + a * e * (2.0 + a * e) * n * n
        + 2.0 * (2.0 + (a + 1.0) * e + a * e * e) * m * n
}

/// `(2+ε)(2+aε)(m + aεn/(2+ε))(εm/(2+aε) + n)`
pub fn eigen_d_ae_factored(a: f64, epsilon: f64, m: i64, n: i64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let (p1, p2) = (2.0 + epsilon, 2.0 + a * epsilon);
    p1 * p2 * (m + a * epsilon * n / p1) * (epsilon * m / p2 + n)
}

/// `(b, ε)` from the frequencies `ω₁ = 1+ε+bε²`, `ω₂ = 1+bε²`.
pub fn omega_to_be(omega1: f64, omega2: f64) -> Result<(f64, f64)> {
    let epsilon = omega1 - omega2;
    if epsilon == 0.0 || !epsilon.is_finite() {
        return Err(domain("omega_to_be", "omega1 and omega2 must differ"));
    }
    Ok(((omega2 - 1.0) / (epsilon * epsilon), epsilon))
}

pub fn be_to_omega(b: f64, epsilon: f64) -> (f64, f64) {
    let be2 = b * epsilon * epsilon;
    (1.0 + epsilon + be2, 1.0 + be2)
}

/// The two operator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `ω₁ = 1+ε+bε²`, `ω₂ = 1+bε²`; divisors `D_{b,ε}`.
    Co,
    /// Waves travelling in opposite directions; divisors `D_{a,ε}`.
    Counter,
}

/// A parameter pair together with the badly approximable coordinates
/// `(x, y)` that control its divisors.
///
/// For [`Family::Co`], `param` is `b`, `x = ε/(2+bε²)`, `y = bε`, and
/// `D_{b,ε}(m,n) = (2+bε²)(xm+n)(m+yn)`.
/// For [`Family::Counter`], `param` is `a`, `x = aε/(2+ε)`, `y = ε/(2+aε)`,
/// and `D_{a,ε}(m,n) = (2+ε)(2+aε)(m+xn)(ym+n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorParams {
    pub family: Family,
    pub param: f64,
    pub epsilon: f64,
    pub gamma: f64,
    pub x: f64,
    pub y: f64,
    pub delta: f64,
}

impl DivisorParams {
    /// From `(x, y)` without membership checks.
    pub fn from_xy(family: Family, x: f64, y: f64, gamma: f64, delta: f64) -> Result<Self> {
        if x == 0.0 || !x.is_finite() || !y.is_finite() {
            return Err(domain(
                "DivisorParams::from_xy",
                "x must be finite and nonzero",
            ));
        }
        let xy = 1.0 - x * y;
        if xy == 0.0 {
            return Err(domain("DivisorParams::from_xy", "xy = 1"));
        }
        let (param, epsilon) = match family {
            Family::Co => (y * xy / (2.0 * x), 2.0 * x / xy),
            Family::Counter => {
                if y == 0.0 || 1.0 + x == 0.0 {
                    return Err(domain(
                        "DivisorParams::from_xy",
                        "y must be nonzero and x ≠ −1",
                    ));
                }
                (x * (1.0 + y) / (y * (1.0 + x)), 2.0 * y * (1.0 + x) / xy)
            }
        };
        Ok(Self {
            family,
            param,
            epsilon,
            gamma,
            x,
            y,
            delta,
        })
    }

    /// From `(b, ε)` or `(a, ε)`.
    pub fn from_param(
        family: Family,
        param: f64,
        epsilon: f64,
        gamma: f64,
        delta: f64,
    ) -> Result<Self> {
        if epsilon == 0.0 || !epsilon.is_finite() || !param.is_finite() {
            return Err(domain(
                "DivisorParams::from_param",
                "epsilon must be finite and nonzero",
            ));
        }
        let (x, y) = forward_map(family, param, epsilon);
        Ok(Self {
            family,
            param,
            epsilon,
            gamma,
            x,
            y,
            delta,
        })
    }

    /// `max(|Δparam|, |Δε|)` after mapping `(param, ε) → (x, y) → (param, ε)`.
    pub fn roundtrip_error(&self) -> f64 {
        let (x, y) = forward_map(self.family, self.param, self.epsilon);
        match Self::from_xy(self.family, x, y, self.gamma, self.delta) {
            Ok(p) => (p.param - self.param)
                .abs()
                .max((p.epsilon - self.epsilon).abs()),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn divisor(&self, m: i64, n: i64) -> f64 {
        match self.family {
            Family::Co => eigen_d_be(self.param, self.epsilon, m, n),
            Family::Counter => eigen_d_ae(self.param, self.epsilon, m, n),
        }
    }

    /// The constant factor in front of the two linear factors.
    pub fn prefactor(&self) -> f64 {
        let e = self.epsilon;
        match self.family {
            Family::Co => 2.0 + self.param * e * e,
            Family::Counter => (2.0 + e) * (2.0 + self.param * e),
        }
    }

    /// Indices `(m', n')` with `D(m,n) = prefactor·(m'+n'x)(m'y+n')`.
    pub fn index_map(&self, m: i64, n: i64) -> (i64, i64) {
        match self.family {
            Family::Co => (n, m),
            Family::Counter => (m, n),
        }
    }

    /// `γ(1−δ−δ²)`
    pub fn product_bound(&self) -> f64 {
        self.gamma * (1.0 - self.delta - self.delta * self.delta)
    }

    /// The lower bound on `|D|` implied by the product bound and the prefactor.
    pub fn sharp_bound(&self) -> f64 {
        let pre = match self.family {
            Family::Co => 2.0 / (1.0 + self.delta * self.delta),
            Family::Counter => self.prefactor().abs(),
        };
        self.product_bound() * pre
    }

    /// `ω₁, ω₂` of the co-propagating family.
    pub fn frequencies(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::Co => Some(be_to_omega(self.param, self.epsilon)),
            Family::Counter => None,
        }
    }
}

fn forward_map(family: Family, param: f64, epsilon: f64) -> (f64, f64) {
    match family {
        Family::Co => (epsilon / (2.0 + param * epsilon * epsilon), param * epsilon),
        Family::Counter => (
            param * epsilon / (2.0 + epsilon),
            epsilon / (2.0 + param * epsilon),
        ),
    }
}

/// A certified parameter pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedParams {
    pub params: DivisorParams,
    pub x: BadNumber,
    pub y: BadNumber,
    /// The side condition `1/x − y ∉ ℚ` is not checkable in floating point;
    /// it holds by construction for all but countably many `y`.
    pub irrationality_assumed: bool,
}

/// Parameters from two certified coordinates.
pub fn make_params(
    family: Family,
    x: &BadNumber,
    y: &BadNumber,
    delta: f64,
) -> Result<CertifiedParams> {
    if x.value == 0.0 {
        return Err(domain("make_params", "x must be nonzero"));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(domain(
            "make_params",
            format!("delta = {delta} not in (0, 1/2)"),
        ));
    }
    if x.value.abs() >= delta || y.value.abs() >= delta {
        return Err(domain(
            "make_params",
            format!(
                "|x| = {}, |y| = {} must lie below delta = {delta}",
                x.value.abs(),
                y.value.abs()
            ),
        ));
    }
    let gamma = x.gamma.min(y.gamma);
    let params = DivisorParams::from_xy(family, x.value, y.value, gamma, delta)?;
    Ok(CertifiedParams {
        params,
        x: x.clone(),
        y: y.clone(),
        irrationality_assumed: true,
    })
}

/// The standard family of certified pairs accumulating at the bifurcation
/// point: `x = [0; a₁, 1, 1, …]`, `y = [0; a₁, 2, 2, …]`.
pub fn cantor_params(
    family: Family,
    a1: u64,
    gamma: f64,
    scan_depth: i64,
) -> Result<CertifiedParams> {
    let x = cf_bad_number(
        &ContinuedFraction::new(vec![a1], vec![1])?,
        gamma,
        scan_depth,
    )?;
    let y = cf_bad_number(
        &ContinuedFraction::new(vec![a1], vec![2])?,
        gamma,
        scan_depth,
    )?;
    make_params(family, &x, &y, DEFAULT_DELTA)
}

/// Which branch of the four-case argument a divisor falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProofCase {
    BothLarge,
    FirstSmall,
    SecondSmall,
    BothSmall,
}

impl ProofCase {
    fn index(self) -> usize {
        self as usize
    }
}

/// Classifies `(m', n')` and returns the case with its lower bound on
/// `|(m'+n'x)(m'y+n')|`.
pub fn classify(x: f64, y: f64, gamma: f64, delta: f64, m: i64, n: i64) -> (ProofCase, f64, f64) {
    let a = (m as f64 + n as f64 * x).abs();
    let b = (m as f64 * y + n as f64).abs();
    let one_minus = 1.0 - x * y;
    let (case, bound) = match (a >= 1.0, b >= 1.0) {
        (true, true) => (ProofCase::BothLarge, 1.0),
        (false, true) => (
            ProofCase::FirstSmall,
            gamma * (one_minus - y.abs() / n.abs() as f64),
        ),
        (true, false) => (
            ProofCase::SecondSmall,
            gamma * (one_minus - x.abs() / m.abs() as f64),
        ),
        (false, false) => (ProofCase::BothSmall, gamma * (1.0 - delta)),
    };
    (case, bound, a * b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisorScan {
    pub family: Family,
    pub gamma: f64,
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    pub epsilon: f64,
    pub n_max: i64,
    pub min_divisor: f64,
    pub witness_m: i64,
    pub witness_n: i64,
    /// Counts for cases 1 to 4.
    pub case_histogram: [u64; 4],
    /// Scanned pairs violating their per-case bound.
    pub case_violations: u64,
    /// `min |(m'+n'x)(m'y+n')|` over the scan.
    pub min_index_product: f64,
    pub product_bound: f64,
    pub sharp_bound: f64,
    /// `min |D| > γ`.
    pub above_gamma: bool,
    /// `min |D| > sharp_bound`.
    pub above_sharp_bound: bool,
}

impl DivisorScan {
    pub fn pass(&self) -> bool {
        self.above_gamma && self.above_sharp_bound && self.case_violations == 0
    }
}

/// Minimum of `|D(m,n)|` over `0 < |m|, |n| ≤ n_max`, with the case analysis
/// checked at every pair. Ties go to the lexicographically smallest `(m, n)`.
pub fn min_divisor_scan(params: &DivisorParams, n_max: i64) -> Result<DivisorScan> {
    if n_max < 1 {
        return Err(domain("min_divisor_scan", "n_max must be at least 1"));
    }
    let mut best = (f64::INFINITY, 0i64, 0i64);
    let mut min_prod = f64::INFINITY;
    let mut hist = [0u64; 4];
    let mut violations = 0u64;
    for m in -n_max..=n_max {
        if m == 0 {
            continue;
        }
        for n in -n_max..=n_max {
            if n == 0 {
                continue;
            }
            let d = params.divisor(m, n).abs();
            if d < best.0 {
                best = (d, m, n);
            }
            let (mp, np) = params.index_map(m, n);
            let (case, bound, prod) =
                classify(params.x, params.y, params.gamma, params.delta, mp, np);
            hist[case.index()] += 1;
            if prod <= bound {
                violations += 1;
            }
            min_prod = min_prod.min(prod);
        }
    }
    let (b, a) = match params.family {
        Family::Co => (Some(params.param), None),
        Family::Counter => (None, Some(params.param)),
    };
    let sharp = params.sharp_bound();
    Ok(DivisorScan {
        family: params.family,
        gamma: params.gamma,
        delta: params.delta,
        b,
        a,
        epsilon: params.epsilon,
        n_max,
        min_divisor: best.0,
        witness_m: best.1,
        witness_n: best.2,
        case_histogram: hist,
        case_violations: violations,
        min_index_product: min_prod,
        product_bound: params.product_bound(),
        sharp_bound: sharp,
        above_gamma: best.0 > params.gamma,
        above_sharp_bound: best.0 > sharp,
    })
}
