/// Frozen bound on `‖p‖_σ / ε` for the default weights (`σ = ½`, `s = 2`)
/// along the certified parameter families. Observed: 1.26 (co), 1.78
/// (counter).
pub const RANGE_CONSTANT: f64 = 2.0;

/// Frozen bound on `(‖r − ρβ‖ + ‖s − ρβ‖ + |û₀₀|) / (|param − param₀| + ε)`
/// for `|param − param₀| ≤ 0.05`, `ε ≤ 0.02`. Observed: 0.233 (co) and 0.674
/// (counter) along the certified families, where `ε` dominates; up to 4.5
/// (co, `b = 0.45`) and 3.0 (counter, `a = 1.05`) when the offset dominates.
pub const Z_DISTANCE_CONSTANT: f64 = 5.0;

/// Frozen bound on the sup-norm leading-order deviation over the same
/// distance. Observed: at most 0.16 (co), 0.48 (counter).
pub const LEADING_ORDER_CONSTANT: f64 = 1.0;

/// Largest admissible ratio max/min of a scaling ratio across the sweep.
pub const SWEEP_SPREAD: f64 = 2.0;
