use corrwish::ensemble::Beta;
use corrwish::quadrature::GaussLegendre;
use corrwish::tracywidom::{airy, default_solution, fredholm_f2_oracle, tw_cdf, tw_distribution, PainleveSolution};

/// `K_ν(z) = ∫_0^∞ exp(-z cosh u) cosh(νu) du`.
fn bessel_k(nu: f64, z: f64) -> f64 {
    GaussLegendre::new(30).composite(0.0, 8.0, 64, |u| (-z * u.cosh()).exp() * (nu * u).cosh())
}

#[test]
fn airy_matches_bessel_integral() {
    use std::f64::consts::PI;
    for x in [0.5f64, 1.0, 2.0, 5.0, 9.0] {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let ai = (x / 3.0).sqrt() / PI * bessel_k(1.0 / 3.0, zeta);
        let aip = -x / (PI * 3f64.sqrt()) * bessel_k(2.0 / 3.0, zeta);
        let (a, ap) = airy(x).unwrap();
        assert!((a - ai).abs() < 1e-10, "Ai({x}) = {a}, integral {ai}");
        assert!((ap - aip).abs() < 1e-10, "Ai'({x}) = {ap}, integral {aip}");
    }
}

#[test]
fn airy_at_origin() {
    let (a, ap) = airy(0.0).unwrap();
    assert!((a - 0.3550280539).abs() < 1e-10);
    assert!((ap + 0.2588194038).abs() < 1e-10);
    assert!(airy(15.5).is_err());
}

/// Plain RK4 from the Airy data at `s_max`, down to `s_end`.
fn rk4_painleve(s_max: f64, s_end: f64, h: f64) -> Vec<(f64, f64)> {
    let f = |s: f64, q: f64, dq: f64| (dq, s * q + 2.0 * q * q * q);
    let (mut q, mut dq) = airy(s_max).unwrap();
    let mut s = s_max;
    let mut out = vec![(s, q)];
    let steps = ((s_max - s_end) / h).round() as usize;
    let h = -h;
    for _ in 0..steps {
        let (k1q, k1d) = f(s, q, dq);
        let (k2q, k2d) = f(s + h / 2.0, q + h / 2.0 * k1q, dq + h / 2.0 * k1d);
        let (k3q, k3d) = f(s + h / 2.0, q + h / 2.0 * k2q, dq + h / 2.0 * k2d);
        let (k4q, k4d) = f(s + h, q + h * k3q, dq + h * k3d);
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        dq += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        s += h;
        out.push((s, q));
    }
    out
}

#[test]
fn painleve_agrees_with_independent_rk4_on_stable_stretch() {
    let sol = default_solution();
    for (s, q) in rk4_painleve(sol.s_max, -3.0, 1e-3).into_iter().step_by(250) {
        let p = sol.at(s).q;
        assert!((p - q).abs() <= 1e-7 * q.abs().max(1e-3), "s = {s}: {p} vs rk4 {q}");
    }
}

#[test]
fn painleve_examples() {
    let sol = default_solution();
    assert!((sol.at(0.0).q - 0.3670615).abs() < 1e-6);
    let (ai8, _) = airy(8.0).unwrap();
    assert!((sol.at(8.0).q / ai8 - 1.0).abs() < 1e-8);
    let rel = (sol.at(-6.0).q / 3f64.sqrt() - 1.0).abs();
    assert!(rel <= 2e-2, "q(-6) deviates by {rel}");
    assert!(sol.q.iter().all(|&q| q > 0.0));
    let left = sol.q[sol.q.len() - 1] / (-sol.s_min() / 2.0).sqrt();
    assert!((left - 1.0).abs() <= 1e-3);
    assert!((PainleveSolution::left_asymptotic(-1e4) / 5000f64.sqrt() - 1.0).abs() < 1e-9);
}

#[test]
fn fredholm_route_agrees_with_painleve() {
    let mut chi = -8.0;
    while chi <= 4.0 {
        let f = fredholm_f2_oracle(chi, 60).value;
        assert!((tw_cdf(Beta::Complex, chi) - f).abs() <= 1e-6, "chi = {chi}");
        chi += 0.25;
    }
    let d = (fredholm_f2_oracle(-4.0, 30).value - fredholm_f2_oracle(-4.0, 60).value).abs();
    assert!(d <= 1e-8, "order 30 vs 60 differ by {d}");
    assert!(1.0 - fredholm_f2_oracle(6.0, 40).value < 1e-6);
}

#[test]
fn pdf_is_derivative_of_cdf() {
    for beta in Beta::ALL {
        let d = tw_distribution(beta);
        let h = d.chi_grid[1] - d.chi_grid[0];
        let worst = (1..d.chi_grid.len() - 1)
            .map(|i| ((d.cdf_table[i + 1] - d.cdf_table[i - 1]) / (2.0 * h) - d.pdf_table[i]).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-4, "beta {beta}: {worst}");
    }
}

#[test]
fn cdf_is_monotone_on_fine_grid() {
    for beta in Beta::ALL {
        let d = tw_distribution(beta);
        let mut prev = 0.0;
        for i in 0..=1600 {
            let v = d.cdf(-10.0 + 0.01 * i as f64);
            assert!(v >= prev, "beta {beta}");
            prev = v;
        }
    }
}

#[test]
fn means_interlace() {
    let m: Vec<f64> = Beta::ALL.iter().map(|&b| tw_distribution(b).mean()).collect();
    assert!(m[2] < m[1] && m[1] < m[0] && m[0] < 0.0, "{m:?}");
}

#[test]
fn real_variance() {
    assert!((tw_distribution(Beta::Real).variance() - 1.607).abs() < 2e-3);
}

#[test]
fn f2_mode_matches_fredholm_route() {
    let d = tw_distribution(Beta::Complex);
    let i = (0..d.pdf_table.len()).max_by(|&a, &b| d.pdf_table[a].total_cmp(&d.pdf_table[b])).unwrap();
    let table_mode = d.chi_grid[i];
    let h = 1e-3;
    let density = |x: f64| (fredholm_f2_oracle(x + h, 40).value - fredholm_f2_oracle(x - h, 40).value) / (2.0 * h);
    let fredholm_mode = (0..=300).map(|k| -2.5 + 0.005 * k as f64).max_by(|&a, &b| density(a).total_cmp(&density(b))).unwrap();
    assert!((table_mode - fredholm_mode).abs() <= 0.02, "{table_mode} vs {fredholm_mode}");
}
