use qpwave::diophantine::{cantor_params, DivisorParams, Family};
use qpwave::elliptic::EllipticProfile;
use qpwave::fourier_field::SpaceWeights;
use qpwave::ls_solver::{
    leading_order_deviation, linspace, rescale_f, sample_solution, solve_full, solve_range,
    LSConfig, LSSolution, Nonlinearity, ZPoint, LEADING_ORDER_CONSTANT, MIN_AXIS_NORM,
    RANGE_CONSTANT, Z_DISTANCE_CONSTANT,
};

fn weights(n: usize) -> SpaceWeights {
    SpaceWeights::new(0.5, 2.0, n).unwrap()
}

fn sweep(family: Family, n: usize) -> Vec<(LSConfig, LSSolution)> {
    [100, 200, 400]
        .into_iter()
        .map(|a1| {
            let cfg = LSConfig::new(
                weights(n),
                cantor_params(family, a1, 0.1, 500).unwrap().params,
            );
            let sol = solve_full(&cfg).unwrap();
            (cfg, sol)
        })
        .collect()
}

#[test]
fn contraction_improves_as_epsilon_shrinks() {
    for family in [Family::Co, Family::Counter] {
        let runs = sweep(family, 24);
        for w in runs.windows(2) {
            let (a, b) = (&w[0].1.diagnostics, &w[1].1.diagnostics);
            assert!(a.contraction_factor < 1.0 && b.contraction_factor < a.contraction_factor);
        }
    }
}

#[test]
fn starting_residual_halves_with_epsilon() {
    for family in [Family::Co, Family::Counter] {
        let runs = sweep(family, 24);
        for w in runs.windows(2) {
            let ratio = w[0].1.diagnostics.initial_residual / w[1].1.diagnostics.initial_residual;
            let predicted = w[0].0.epsilon() / w[1].0.epsilon();
            assert!(
                ratio >= 0.95 * predicted,
                "{family:?}: {ratio} vs {predicted}"
            );
        }
    }
}

#[test]
fn scaling_ratios_stay_below_frozen_constants() {
    let p = EllipticProfile::calibrated();
    for family in [Family::Co, Family::Counter] {
        for (cfg, sol) in sweep(family, 24) {
            let d = &sol.diagnostics;
            assert!(d.p_over_epsilon <= RANGE_CONSTANT);
            assert!(d.z_distance_ratio <= Z_DISTANCE_CONSTANT);
            assert!(d.r_norm > MIN_AXIS_NORM && d.s_norm > MIN_AXIS_NORM);
            let lo =
                leading_order_deviation(&sol, &p, &linspace(0.0, 30.0, 16), &linspace(0.0, 6.0, 9));
            assert!(lo <= LEADING_ORDER_CONSTANT * cfg.distance_to_bifurcation());
        }
    }
}

#[test]
fn off_family_parameters() {
    for (family, param) in [(Family::Co, 0.495), (Family::Counter, 1.01)] {
        let cfg = LSConfig::new(
            weights(24),
            DivisorParams::from_param(family, param, 0.01, 0.1, 0.25).unwrap(),
        );
        let sol = solve_full(&cfg).unwrap();
        assert!(sol.residual_norm < 1e-8);
        assert!(sol.diagnostics.z_distance_ratio <= Z_DISTANCE_CONSTANT);
    }
}

#[test]
fn doubling_truncation_leaves_bifurcation_part_unchanged() {
    let params = cantor_params(Family::Co, 200, 0.1, 500).unwrap().params;
    let a = solve_full(&LSConfig::new(weights(16), params)).unwrap();
    let b = solve_full(&LSConfig::new(weights(32), params)).unwrap();
    let mut diff = (a.z.u00 - b.z.u00).powi(2);
    for j in 1..=32 {
        let g = |v: &[f64]| v.get(j).copied().unwrap_or(0.0);
        diff += (g(&a.z.r) - g(&b.z.r)).powi(2) + (g(&a.z.s) - g(&b.z.s)).powi(2);
    }
    assert!(diff.sqrt() < 1e-6);
}

#[test]
fn stored_solution_reproduces_its_residual() {
    let cfg = LSConfig::new(
        weights(16),
        cantor_params(Family::Counter, 200, 0.1, 500)
            .unwrap()
            .params,
    )
    .with_nonlinearity(Nonlinearity::preset("v5").unwrap());
    let sol = solve_full(&cfg).unwrap();
    let text = serde_json::to_string(&sol).unwrap();
    let back: LSSolution = serde_json::from_str(&text).unwrap();
    let r = back.recompute_residual().unwrap().norm_sigma();
    assert!((r - sol.residual_norm).abs() <= 1e-12 * sol.residual_norm.max(f64::MIN_POSITIVE));
    assert!(
        (sample_solution(&back, 0.0, 0.0) - cfg.epsilon().sqrt() * back.u.eval(0.0, 0.0)).abs()
            < 1e-15
    );
}

#[test]
fn sampling_at_origin() {
    let cfg = LSConfig::new(
        weights(16),
        cantor_params(Family::Co, 200, 0.1, 500).unwrap().params,
    );
    let sol = solve_full(&cfg).unwrap();
    assert_eq!(
        sample_solution(&sol, 0.0, 0.0),
        cfg.epsilon() * sol.u.eval(0.0, 0.0)
    );
}

#[test]
fn range_solution_limits() {
    let p = EllipticProfile::calibrated();
    let cfg = LSConfig::new(
        weights(16),
        cantor_params(Family::Co, 200, 0.1, 500).unwrap().params,
    );
    let zero = solve_range(&ZPoint::zero(16), &cfg).unwrap();
    assert_eq!(zero.p.max_abs(), 0.0);
    // p is linear in ε as ε → 0
    let z = qpwave::ls_solver::initial_guess(&cfg, &p);
    let norms: Vec<f64> = [1e-3, 1e-4]
        .iter()
        .map(|&e| {
            let c = LSConfig::new(
                weights(16),
                DivisorParams::from_param(Family::Co, 0.5, e, 0.1, 0.25).unwrap(),
            );
            solve_range(&z, &c).unwrap().p.norm_sigma() / e
        })
        .collect();
    assert!((norms[0] / norms[1] - 1.0).abs() < 0.01);
}

#[test]
fn nonlinearity_rescaling() {
    let v4 = rescale_f(&Nonlinearity::preset("v4").unwrap(), 0.01, Family::Co).unwrap();
    assert!((v4.coefficients()[4] - 0.01).abs() < 1e-18);
    let v5 = rescale_f(&Nonlinearity::preset("v5").unwrap(), 0.01, Family::Counter).unwrap();
    assert!((v5.coefficients()[5] - 0.01).abs() < 1e-17);
    assert!(Nonlinearity::preset("v3").is_err());
}

#[test]
fn configuration_is_validated() {
    let mut cfg = LSConfig::new(
        weights(8),
        cantor_params(Family::Co, 200, 0.1, 500).unwrap().params,
    );
    cfg.params.epsilon = -0.01;
    assert!(solve_full(&cfg).is_err());
    let mut json: serde_json::Value = serde_json::to_value(LSConfig::new(
        weights(8),
        cantor_params(Family::Co, 200, 0.1, 500).unwrap().params,
    ))
    .unwrap();
    assert!(serde_json::from_value::<LSConfig>(json.clone()).is_ok());
    json["extra"] = serde_json::json!(1);
    assert!(serde_json::from_value::<LSConfig>(json).is_err());
}
