//! Cross-checks of library routines against independent test-side methods.

use std::f64::consts::PI;

use qpwave::bifurcation::{build_green_basis, GreenBasis, DEFAULT_GREEN_GRID};
use qpwave::diophantine::{cantor_params, eigen_d_ae, eigen_d_be, DivisorParams, Family};
use qpwave::elliptic::{complete_e, complete_k, jacobi, EllipticProfile};
use qpwave::fourier_field::{FourierField2, Parity, PeriodicProfile1, SpaceWeights};
use qpwave::ls_solver::{solve_full, LSConfig, Nonlinearity};

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            left + right + diff / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[test]
fn complete_integrals_match_quadrature() {
    for i in 1..=9 {
        let m = i as f64 / 10.0;
        let k = adaptive_simpson(
            &|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(),
            0.0,
            PI / 2.0,
            1e-14,
        );
        let e = adaptive_simpson(
            &|t: f64| (1.0 - m * t.sin().powi(2)).sqrt(),
            0.0,
            PI / 2.0,
            1e-14,
        );
        assert!((complete_k(m).unwrap() - k).abs() < 1e-11, "K({m})");
        assert!((complete_e(m).unwrap() - e).abs() < 1e-11, "E({m})");
    }
}

#[test]
fn amplitude_inverts_incomplete_integral() {
    // sn(u) = sin φ where u = ∫₀^φ dθ/√(1 − m sin²θ)
    for &m in &[0.05, 0.2034, 0.5, 0.9] {
        for &phi in &[0.1, 0.7, 1.3, 2.9] {
            let u = adaptive_simpson(
                &|t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(),
                0.0,
                phi,
                1e-14,
            );
            let j = jacobi(u, m).unwrap();
            assert!((j.sn - phi.sin()).abs() < 1e-11);
            assert!((j.cn - phi.cos()).abs() < 1e-11);
        }
    }
}

fn basis() -> GreenBasis {
    build_green_basis(&EllipticProfile::calibrated(), DEFAULT_GREEN_GRID).unwrap()
}

/// Integrates `w'' = h − Vw` with RK4 on `[0, π]`; returns `(w, w')` at the
/// nodes.
fn rk4(
    v: &dyn Fn(f64) -> f64,
    h: &dyn Fn(f64) -> f64,
    w0: f64,
    d0: f64,
    steps: usize,
) -> Vec<(f64, f64)> {
    let dx = PI / steps as f64;
    let rhs = |x: f64, w: f64| h(x) - v(x) * w;
    let (mut w, mut d) = (w0, d0);
    let mut out = vec![(w, d)];
    for i in 0..steps {
        let x = i as f64 * dx;
        let (k1w, k1d) = (d, rhs(x, w));
        let (k2w, k2d) = (d + 0.5 * dx * k1d, rhs(x + 0.5 * dx, w + 0.5 * dx * k1w));
        let (k3w, k3d) = (d + 0.5 * dx * k2d, rhs(x + 0.5 * dx, w + 0.5 * dx * k2w));
        let (k4w, k4d) = (d + dx * k3d, rhs(x + dx, w + dx * k3w));
        w += dx / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        d += dx / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        out.push((w, d));
    }
    out
}

#[test]
fn green_operator_matches_shooting() {
    // even periodic w has w'(0) = w'(π) = 0; shoot from w'(0) = 0 and fix the
    // free multiple of the even homogeneous solution by w'(π) = 0
    let b = basis();
    let p = b.profile;
    let mb2 = p.mean_beta_squared();
    let pot = move |x: f64| 3.0 * p.beta(x).powi(2) + 3.0 * mb2;
    let steps = 4096;
    let hom = rk4(&pot, &|_| 0.0, 1.0, 0.0, steps);
    let inputs: Vec<(PeriodicProfile1, Box<dyn Fn(f64) -> f64>)> = vec![
        (b.constant(1.0), Box::new(|_| 1.0)),
        (b.beta().clone(), Box::new(move |x| p.beta(x))),
        (
            {
                let bt = b.beta();
                bt * bt
            },
            Box::new(move |x| p.beta(x).powi(2)),
        ),
        (
            PeriodicProfile1::from_fn(
                |x| (2.0 * x).cos() + 0.3 * (5.0 * x).cos(),
                Parity::Even,
                DEFAULT_GREEN_GRID,
            )
            .unwrap(),
            Box::new(|x: f64| (2.0 * x).cos() + 0.3 * (5.0 * x).cos()),
        ),
    ];
    for (hp, hf) in &inputs {
        let part = rk4(&pot, hf.as_ref(), 0.0, 0.0, steps);
        let alpha = -part[steps].1 / hom[steps].1;
        let lh = b.green_l(hp).unwrap();
        let mut worst = 0.0_f64;
        for i in (0..=steps).step_by(32) {
            let x = PI * i as f64 / steps as f64;
            let w = part[i].0 + alpha * hom[i].0;
            worst = worst.max((lh.eval(x) - w).abs());
        }
        assert!(worst < 1e-9, "shooting mismatch {worst:e}");
    }
}

#[test]
fn green_constant_matches_richardson_trapezoid() {
    // k = 2π(1 + c⟨sn²/dn²⟩), c = (2m̄ − 1)/2, with the mean by trapezoid and
    // one Richardson step
    let b = basis();
    let p = b.profile;
    let q = |n: usize| {
        let h = 4.0 * p.k / n as f64;
        (0..n)
            .map(|i| {
                let j = jacobi(i as f64 * h, p.m_bar).unwrap();
                (j.sn / j.dn).powi(2)
            })
            .sum::<f64>()
            / n as f64
    };
    let (coarse, fine) = (q(64), q(128));
    let mean = fine + (fine - coarse) / 3.0;
    let k = 2.0 * PI * (1.0 + (2.0 * p.m_bar - 1.0) / 2.0 * mean);
    assert!((k - b.k_green()).abs() < 1e-10);
    assert!((k - b.k_closed_form()).abs() < 1e-10);
}

#[test]
fn homogeneous_solutions_solve_the_linearised_equation() {
    let b = basis();
    let u = b.u_bar();
    assert_eq!(u.parity(), Parity::Odd);
    assert!(b.apply_operator(u).max_abs() < 1e-7);
    // v̄ = v_per − sξū ⇒ v̄'' + Vv̄ = v_per'' + Vv_per − 2sū'
    let r = &b.apply_operator(b.v_periodic()) - &u.derivative().scale(2.0 * b.secular_rate());
    assert!(r.max_abs() < 1e-7);
}

#[test]
fn fft_product_matches_direct_convolution() {
    let w = SpaceWeights::new(0.3, 2.0, 10).unwrap();
    let u = FourierField2::from_fn(w, |m, n| {
        ((m * 3 + n * 7) as f64).sin() * (-0.2 * (m * m + n * n) as f64).exp()
    })
    .unwrap();
    let v = FourierField2::from_fn(w, |m, n| {
        ((m - 2 * n) as f64).cos() / (1.0 + (m.abs() + n.abs()) as f64)
    })
    .unwrap();
    let a = u.product(&v).unwrap();
    let b = u.product_fft(&v).unwrap();
    assert!(a.try_sub(&b).unwrap().max_abs() < 1e-13);
    // brute force one coefficient from the definition
    let (km, kn) = (3i64, -2i64);
    let mut c = 0.0;
    for jm in -10..=10i64 {
        for jn in -10..=10i64 {
            c += u.get(jm, jn) * v.get(km - jm, kn - jn);
        }
    }
    assert!((a.get(km, kn) - c).abs() < 1e-14);
}

#[test]
fn field_grid_values_match_series() {
    let w = SpaceWeights::new(0.5, 2.0, 6).unwrap();
    let u = FourierField2::from_fn(w, |m, n| 1.0 / (1.0 + (m * m + 2 * n * n) as f64)).unwrap();
    let g = 16;
    let grid = u.to_grid(g);
    for i in 0..g {
        for j in 0..g {
            let (a, b) = (
                2.0 * PI * i as f64 / g as f64,
                2.0 * PI * j as f64 / g as f64,
            );
            assert!((grid[i * g + j] - u.eval(a, b)).abs() < 1e-12);
        }
    }
}

#[test]
fn frequency_inverse_matches_newton() {
    // invert (param, ε) ↦ (x, y) by Newton with a numerical Jacobian
    for family in [Family::Co, Family::Counter] {
        let cp = cantor_params(family, 150, 0.1, 500).unwrap().params;
        let fwd = |p: f64, e: f64| {
            let d = DivisorParams::from_param(family, p, e, 0.1, 0.25).unwrap();
            (d.x, d.y)
        };
        let (mut p, mut e) = match family {
            Family::Co => (0.5, 0.01),
            Family::Counter => (1.0, 0.01),
        };
        for _ in 0..30 {
            let (fx, fy) = fwd(p, e);
            let (rx, ry) = (fx - cp.x, fy - cp.y);
            if rx.abs().max(ry.abs()) < 1e-17 {
                break;
            }
            let h = 1e-7;
            let (xp, yp) = fwd(p + h, e);
            let (xe, ye) = fwd(p, e + h);
            let j = [
                [(xp - fx) / h, (xe - fx) / h],
                [(yp - fy) / h, (ye - fy) / h],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            p -= (j[1][1] * rx - j[0][1] * ry) / det;
            e -= (-j[1][0] * rx + j[0][0] * ry) / det;
        }
        assert!((p - cp.param).abs() < 1e-10, "{family:?}");
        assert!((e - cp.epsilon).abs() < 1e-12, "{family:?}");
    }
}

#[test]
fn divisor_scan_agrees_with_brute_force() {
    for family in [Family::Co, Family::Counter] {
        let cp = cantor_params(family, 120, 0.1, 500).unwrap().params;
        let scan = qpwave::diophantine::min_divisor_scan(&cp, 60).unwrap();
        let mut best = f64::INFINITY;
        for m in -60..=60i64 {
            for n in -60..=60i64 {
                if m == 0 || n == 0 {
                    continue;
                }
                let d = match family {
                    Family::Co => eigen_d_be(cp.param, cp.epsilon, m, n),
                    Family::Counter => eigen_d_ae(cp.param, cp.epsilon, m, n),
                };
                best = best.min(d.abs());
            }
        }
        assert!((scan.min_divisor - best).abs() < 1e-15);
    }
}

#[test]
fn residual_vanishes_on_a_fine_collocation_grid() {
    // evaluate −D∘u + ε(u³ − f_ε(u)) pointwise on the torus instead of in
    // coefficient space: apply D by spectral differentiation of u's grid
    // values and cube the grid values directly
    let cp = cantor_params(Family::Co, 200, 0.1, 500).unwrap().params;
    let w = SpaceWeights::new(0.5, 2.0, 20).unwrap();
    let f = Nonlinearity::monomial(4, 1.0).unwrap();
    let sol = solve_full(&LSConfig::new(w, cp).with_nonlinearity(f.clone())).unwrap();
    let e = cp.epsilon;
    let feps = qpwave::ls_solver::rescale_f(&f, e, Family::Co).unwrap();
    let du = sol.u.multiplier(|m, n| cp.divisor(m, n));
    let g = 128;
    let ug = sol.u.to_grid(g);
    let dg = du.to_grid(g);
    let mut worst = 0.0_f64;
    for (u, d) in ug.iter().zip(&dg) {
        worst = worst.max((-d + e * (u.powi(3) - feps.eval(*u))).abs());
    }
    assert!(worst < 1e-10, "{worst:e}");
}
