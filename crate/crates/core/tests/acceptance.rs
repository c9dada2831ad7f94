//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
//! its measured values and wall time; the test fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use qpwave::bifurcation::{
    build_green_basis, lemma3_verify, lemma4_kernel_check, GreenBasis, DEFAULT_GREEN_GRID,
};
use qpwave::diophantine::{
    cantor_params, cf_bad_number, make_params, min_divisor_scan, ContinuedFraction, DivisorParams,
    Family,
};
use qpwave::elliptic::{find_m_bar, psi, EllipticProfile};
use qpwave::fourier_field::{algebra_constant, FourierField2, SpaceWeights};
use qpwave::ls_solver::{
    linspace, solve_bifurcation, solve_full, wave_residual, Coupling, LSConfig, Nonlinearity,
    RANGE_CONSTANT, SWEEP_SPREAD, Z_DISTANCE_CONSTANT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    let in_time = dt <= limit;
    let pass = out.pass && in_time;
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(
        stdout,
        "[{}] {id:>2} {name}: {} ({:.3} s, limit {} s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        dt.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn basis() -> GreenBasis {
    build_green_basis(&EllipticProfile::calibrated(), DEFAULT_GREEN_GRID).unwrap()
}

fn c1_calibration() -> Outcome {
    let p = find_m_bar(1e-14).unwrap();
    let r = psi(p.m_bar).unwrap();
    let pass = p.m_bar > 0.20
        && p.m_bar < 0.21
        && r.abs() < 1e-12
        && p.omega_bar > 1.05
        && p.omega_bar < 1.06
        && p.sigma_bar > 2.10
        && p.sigma_bar < 2.16
        && p.v_bar_squared() > 0.44
        && p.v_bar_squared() < 0.48;
    Outcome {
        pass,
        detail: format!(
            "m={:.12} psi={:.1e} Omega={:.10} sigma={:.10} V2={:.10}",
            p.m_bar,
            r,
            p.omega_bar,
            p.sigma_bar,
            p.v_bar_squared()
        ),
    }
}

fn c2_profile_ode() -> Outcome {
    let p = find_m_bar(1e-14).unwrap();
    let g = 1024;
    let mb2 = p.mean_beta_squared();
    let (mut worst, mut s1, mut s3) = (0.0_f64, 0.0, 0.0);
    for i in 0..g {
        let xi = 2.0 * std::f64::consts::PI * i as f64 / g as f64;
        let j = p.jacobi(p.omega_bar * xi);
        let b = p.v_bar * j.cn;
        // cn'' = cn(2m − 1 − 2m cn²)
        let b2 = p.v_bar
            * p.omega_bar.powi(2)
            * j.cn
            * (2.0 * p.m_bar - 1.0 - 2.0 * p.m_bar * j.cn * j.cn);
        worst = worst.max((b2 + b.powi(3) + 3.0 * mb2 * b).abs());
        s1 += b;
        s3 += b.powi(3);
    }
    let (m1, m3) = (s1 / g as f64, s3 / g as f64);
    Outcome {
        pass: worst < 1e-8 && m1.abs() < 1e-10 && m3.abs() < 1e-10,
        detail: format!("max residual {worst:.2e}, <beta> {m1:.1e}, <beta^3> {m3:.1e}"),
    }
}

/// RK4 on `w'' = −(3β² + 3⟨β²⟩)w`.
fn rk4_linearised(
    p: &EllipticProfile,
    w0: f64,
    dw0: f64,
    xi_end: f64,
    steps: usize,
) -> Vec<(f64, f64)> {
    let mb2 = p.mean_beta_squared();
    let pot = |xi: f64| 3.0 * p.beta(xi).powi(2) + 3.0 * mb2;
    let h = xi_end / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let (mut w, mut dw) = (w0, dw0);
    out.push((w, dw));
    for i in 0..steps {
        let x = i as f64 * h;
        let (k1w, k1d) = (dw, -pot(x) * w);
        let (k2w, k2d) = (dw + 0.5 * h * k1d, -pot(x + 0.5 * h) * (w + 0.5 * h * k1w));
        let (k3w, k3d) = (dw + 0.5 * h * k2d, -pot(x + 0.5 * h) * (w + 0.5 * h * k2w));
        let (k4w, k4d) = (dw + h * k3d, -pot(x + h) * (w + h * k3w));
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        dw += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        out.push((w, dw));
    }
    out
}

fn c3_green_constants() -> Outcome {
    let b = basis();
    let p = b.profile;
    let k = b.k_green();
    let dk = (k - b.k_closed_form()).abs();
    let samples = b.v_bar_samples();
    let du = b.u_bar().derivative();
    let g = b.grid;
    let mut wronskian = 0.0_f64;
    let mut monodromy = 0.0_f64;
    for i in 0..g {
        let (u, up) = (b.u_bar().samples()[i], du.samples()[i]);
        for j in [i, i + g] {
            wronskian = wronskian.max((up * samples.v[j] - u * samples.v_prime[j] - 1.0).abs());
        }
        monodromy =
            monodromy.max((samples.v[i + g] - samples.v[i] + p.v_bar_squared() * k * u).abs());
    }
    // independent route: time-stepping the linearised equation over two periods
    let steps = 2 * 4096;
    let traj = rk4_linearised(&p, 1.0, 0.0, 4.0 * std::f64::consts::PI, steps);
    let mut oracle = 0.0_f64;
    for i in (0..steps / 2).step_by(64) {
        let xi = 4.0 * std::f64::consts::PI * i as f64 / steps as f64;
        let jump = traj[i + steps / 2].0 - traj[i].0;
        oracle = oracle.max((jump + p.v_bar_squared() * k * b.u_bar_at(xi)).abs());
        oracle = oracle.max((traj[i].0 - b.v_bar_at(xi)).abs());
    }
    Outcome {
        pass: dk < 1e-8 && k > 0.0 && wronskian < 1e-9 && monodromy < 1e-9 && oracle < 1e-9,
        detail: format!(
            "k={k:.12} |dk|={dk:.1e} wronskian {wronskian:.1e} monodromy {monodromy:.1e} rk4 {oracle:.1e}"
        ),
    }
}

fn c4_lemma3() -> Outcome {
    let r = lemma3_verify(&basis()).unwrap();
    let identities = (1..=12)
        .map(|i| r.identity_residuals[&format!("L.{i}")].value.abs())
        .fold(0.0, f64::max);
    let l8 = r
        .avg_beta2_lbeta
        .abs()
        .max(r.avg_beta_lbeta2.abs())
        .max(r.avg_lbeta.abs())
        .max(r.avg_beta_l1.abs());
    let h = 3.0 * r.mean_beta2 * r.avg_l1;
    let pass = identities < 1e-7
        && r.b0 > -1.0
        && r.b0 < -0.9
        && r.c0 > 2.9
        && r.c0 < 3.0
        && h > 0.4
        && h < 0.5
        && l8 < 1e-8;
    Outcome {
        pass,
        detail: format!(
            "max identity {identities:.1e}, B0={:.10} C0={:.10} 3<b2><L1>={h:.10} vanishing means {l8:.1e}",
            r.b0, r.c0
        ),
    }
}

fn c5_nondegeneracy() -> Outcome {
    let r = lemma4_kernel_check(&basis(), 16).unwrap();
    let at = |m: usize| r.smallest_singular_values[r.modes.iter().position(|&x| x == m).unwrap()];
    let (s32, s64) = (at(32), at(64));
    let var = (s32 - s64).abs() / s32.max(s64);
    Outcome {
        pass: s32 > 1e-3 && s64 > 1e-3 && var < 0.05,
        detail: format!("sigma_min(32)={s32:.10} sigma_min(64)={s64:.10} variation {var:.1e}"),
    }
}

fn c6_diophantine() -> Outcome {
    let gamma = 0.1;
    let x = cf_bad_number(
        &ContinuedFraction::new(vec![], vec![5]).unwrap(),
        gamma,
        2000,
    )
    .unwrap();
    let mut lines = Vec::new();
    let mut pass = ((29f64.sqrt() - 5.0) / 2.0 - x.value).abs() < 1e-15;
    let mut check = |label: &str, params: &DivisorParams| {
        let scan = min_divisor_scan(params, 200).unwrap();
        let (mp, np) = params.index_map(scan.witness_m, scan.witness_n);
        let at_witness =
            ((mp as f64 + np as f64 * params.x) * (mp as f64 * params.y + np as f64)).abs();
        let ok = scan.min_divisor > gamma && at_witness >= params.product_bound() && scan.pass();
        pass &= ok;
        lines.push(format!("{label} min|D|={:.4}", scan.min_divisor));
    };
    for family in [Family::Co, Family::Counter] {
        let sym = make_params(family, &x, &x, 0.25).unwrap();
        check(&format!("{family:?} x=y"), &sym.params);
        check(
            &format!("{family:?} cantor"),
            &cantor_params(family, 100, gamma, 2000).unwrap().params,
        );
    }
    // every rational x = p/q with q ≤ 200 has a vanishing divisor in range
    let y = cantor_params(Family::Co, 100, gamma, 2000)
        .unwrap()
        .params
        .y;
    let mut rationals = 0;
    let mut caught = 0;
    for q in 5..=200i64 {
        for p in [1, q / 5] {
            if p < 1 || num_gcd(p, q) != 1 || p as f64 / q as f64 >= 0.25 {
                continue;
            }
            for family in [Family::Co, Family::Counter] {
                let params =
                    DivisorParams::from_xy(family, p as f64 / q as f64, y, gamma, 0.25).unwrap();
                rationals += 1;
                if !min_divisor_scan(&params, 200).unwrap().pass() {
                    caught += 1;
                }
            }
        }
    }
    pass &= caught == rationals;
    lines.push(format!("rationals failing {caught}/{rationals}"));
    Outcome {
        pass,
        detail: lines.join(", "),
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn c7_algebra() -> Outcome {
    let w = SpaceWeights::new(0.5, 2.0, 16).unwrap();
    let c = algebra_constant(2.0, 400).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0;
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let decay: f64 = rng.gen_range(0.3..2.0);
        let mut field = || {
            let vals: Vec<f64> = (0..(33 * 33)).map(|_| rng.gen_range(-1.0..1.0)).collect();
            FourierField2::from_fn(w, |m, n| {
                vals[((m + 16) * 33 + (n + 16)) as usize]
                    * (-decay * (m.abs() + n.abs()) as f64).exp()
            })
            .unwrap()
        };
        let (u, v) = (field(), field());
        let prod = u.product_with_tail(&v).unwrap();
        let full = (prod.field.norm_sigma_squared() + prod.tail_norm.powi(2)).sqrt();
        let ratio = full / (u.norm_sigma() * v.norm_sigma());
        worst = worst.max(ratio / c.c_upper);
        if ratio > c.c_upper {
            violations += 1;
        }
    }
    Outcome {
        pass: violations == 0,
        detail: format!(
            "violations {violations}/100, c_upper={:.6}, worst ratio/c {worst:.3}",
            c.c_upper
        ),
    }
}

fn c8_end_to_end() -> Outcome {
    let w = SpaceWeights::new(0.5, 2.0, 32).unwrap();
    let mut p_ratios = Vec::new();
    let mut z_ratios = Vec::new();
    let mut residual_at_001 = f64::INFINITY;
    let mut lines = Vec::new();
    for a1 in [100, 200, 400] {
        let cp = cantor_params(Family::Co, a1, 0.1, 2000).unwrap();
        let cfg = LSConfig::new(w, cp.params);
        let sol = solve_full(&cfg).unwrap();
        let d = &sol.diagnostics;
        if (cfg.epsilon() - 0.01).abs() < 0.001 {
            residual_at_001 = sol.residual_norm;
        }
        p_ratios.push(d.p_over_epsilon);
        z_ratios.push(d.z_distance_ratio);
        lines.push(format!(
            "eps={:.5} b={:.6} res={:.1e} |p|/eps={:.4} dz={:.4}",
            cfg.epsilon(),
            cfg.params.param,
            sol.residual_norm,
            d.p_over_epsilon,
            d.z_distance_ratio
        ));
    }
    let bounded = |v: &[f64], c: f64| {
        let (lo, hi) = v
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(a, b), &x| (a.min(x), b.max(x)));
        hi <= c && hi / lo <= SWEEP_SPREAD
    };
    Outcome {
        pass: residual_at_001 < 1e-8
            && bounded(&p_ratios, RANGE_CONSTANT)
            && bounded(&z_ratios, Z_DISTANCE_CONSTANT),
        detail: lines.join("; "),
    }
}

fn c9_wave_oracle() -> Outcome {
    let w = SpaceWeights::new(0.5, 2.0, 32).unwrap();
    let ts = linspace(0.0, 5.0, 11);
    let xs = linspace(0.0, 2.0 * std::f64::consts::PI, 13);
    let mut worst = 0.0_f64;
    let mut lines = Vec::new();
    for family in [Family::Co, Family::Counter] {
        for (fname, f) in [
            ("0", Nonlinearity::zero()),
            ("v^5", Nonlinearity::monomial(5, 1.0).unwrap()),
        ] {
            let cp = cantor_params(family, 200, 0.1, 2000).unwrap();
            let sol = solve_full(&LSConfig::new(w, cp.params).with_nonlinearity(f)).unwrap();
            let chk = wave_residual(&sol, &ts, &xs, 0.005).unwrap();
            worst = worst.max(chk.max_residual);
            lines.push(format!("{family:?} f={fname}: {:.1e}", chk.max_residual));
        }
    }
    Outcome {
        pass: worst < 1e-4,
        detail: lines.join(", "),
    }
}

fn c10_equivalence() -> Outcome {
    let w = SpaceWeights::new(0.5, 2.0, 32).unwrap();
    let profile = EllipticProfile::calibrated();
    let mut worst = 0.0_f64;
    let mut steps = 0;
    for a1 in [100, 200] {
        let co = LSConfig::new(w, cantor_params(Family::Co, a1, 0.1, 2000).unwrap().params)
            .with_coupling(Coupling::Reduced);
        let (lam, e) = (co.lambda(), 0.01);
        let a = (-2.0 + (4.0 + 4.0 * e * lam * (2.0 + e)).sqrt()) / (2.0 * e);
        let counter = LSConfig::new(
            w,
            DivisorParams::from_param(Family::Counter, a, e, 0.1, 0.25).unwrap(),
        )
        .with_coupling(Coupling::Reduced);
        worst = worst.max((co.lambda() - counter.lambda()).abs());
        let s1 = solve_bifurcation(&co, &profile).unwrap();
        let s2 = solve_bifurcation(&counter, &profile).unwrap();
        steps += s1.history.len();
        if s1.history.len() != s2.history.len() {
            worst = f64::INFINITY;
        }
        for (p, q) in s1.history.iter().zip(&s2.history) {
            worst = worst.max(p.core.max_abs_diff(&q.core));
        }
    }
    Outcome {
        pass: worst < 1e-8,
        detail: format!("max difference of rescaled iterates {worst:.1e} over {steps} iterates"),
    }
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "calibration", s(1), c1_calibration),
        criterion(2, "profile equation", s(1), c2_profile_ode),
        criterion(3, "Green constants", s(5), c3_green_constants),
        criterion(4, "Green identities", s(10), c4_lemma3),
        criterion(5, "nondegeneracy", s(10), c5_nondegeneracy),
        criterion(6, "small divisors", s(5), c6_diophantine),
        criterion(7, "algebra property", s(10), c7_algebra),
        criterion(8, "end-to-end solve", s(120), c8_end_to_end),
        criterion(9, "finite-difference oracle", s(30), c9_wave_oracle),
        criterion(10, "variant equivalence", s(120), c10_equivalence),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    let _ = writeln!(
        std::io::stdout(),
        "acceptance: {passed}/{} criteria pass",
        results.len()
    );
    assert_eq!(passed, results.len());
}
