//! Independent reference computations checked against the library.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use qudit_walk::limit::konno::{f_tau, f_tau_series, konno_mu};
use qudit_walk::limit::weight::{weight_matrix_direct, weight_matrix_second, weight_matrix_top_recursive};
use qudit_walk::limit::{LimitDensity, LimitSpec};
use qudit_walk::walk::{evolve, position_distribution, pseudovelocity_moment};
use qudit_walk::wigner::{gamma_coeff_direct, gamma_range, rotation_matrix, small_d};
use qudit_walk::{EulerAngles, HalfInt, Qudit};

fn h(d: i32) -> HalfInt {
    HalfInt::from_doubled(d)
}

fn binom(n: i32, k: i32) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The element formula summed literally over `l1, l2, k1, k2`.
fn literal_entry(j: HalfInt, m: HalfInt, m1: HalfInt, m2: HalfInt, x: f64, beta: f64, gamma: f64) -> Complex64 {
    let tau = (beta / 2.0).tan();
    let j2 = j.doubled();
    let mut acc = 0.0;
    for l1 in gamma_range(j, m1, m) {
        for l2 in gamma_range(j, m2, m) {
            let g = gamma_coeff_direct(j, m1, m, l1).unwrap() * gamma_coeff_direct(j, m2, m, l2).unwrap();
            let a = j2 - m.int_diff(m1) - (l1 + l2);
            let b = m.int_diff(m2) + (l1 + l2);
            assert!(a >= 0 && b >= 0, "negative binomial top");
            for k1 in 0..=a {
                for k2 in 0..=b {
                    let sign = if k1 % 2 == 0 { 1.0 } else { -1.0 };
                    acc += g * binom(a, k1) * binom(b, k2) * sign * x.powi(k1 + k2);
                }
            }
        }
    }
    let d = m2.int_diff(m1);
    Complex64::from_polar(1.0, -(d as f64) * gamma) * (acc * f_tau_series(d as u32, tau, x) / 2f64.powi(j2 - 1))
}

/// Full matrix from the literal formula, completed through hermiticity and
/// the reflection `M_{-m2,-m1}(x) = (-1)^(m1+m2+2m) M_{m1 m2}(-x)`.
fn literal_matrix(j: HalfInt, m: HalfInt, x: f64, beta: f64, gamma: f64) -> Vec<Vec<Complex64>> {
    let comps: Vec<HalfInt> = j.components().collect();
    let in_region = |m1: HalfInt, m2: HalfInt| m1.doubled() <= m2.doubled() && m1.doubled() >= -m2.doubled();
    let entry = |m1: HalfInt, m2: HalfInt, x: f64| -> Option<Complex64> {
        if in_region(m1, m2) {
            Some(literal_entry(j, m, m1, m2, x, beta, gamma))
        } else if in_region(m2, m1) {
            Some(literal_entry(j, m, m2, m1, x, beta, gamma).conj())
        } else {
            None
        }
    };
    comps
        .iter()
        .map(|&m1| {
            comps
                .iter()
                .map(|&m2| {
                    entry(m1, m2, x).unwrap_or_else(|| {
                        let e = (m1.doubled() + m2.doubled()) / 2 + m.doubled();
                        let s = if e.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                        entry(-m2, -m1, -x).expect("reflection lands in a known sector") * s
                    })
                })
                .collect()
        })
        .collect()
}

#[test]
fn direct_weights_match_the_literal_sum() {
    for j2 in 1..=7 {
        let j = h(j2);
        for m in j.components().filter(|m| m.doubled() >= 0) {
            for &(x, beta, gamma) in &[(0.37, 1.1, 0.4), (-0.8, 2.7, -1.3), (0.0, 0.3, PI)] {
                let got = weight_matrix_direct(j, m, x, beta, gamma).unwrap();
                let want = literal_matrix(j, m, x, beta, gamma);
                let scale = got.max_abs().max(1.0);
                for a in 0..j.dim() {
                    for b in 0..j.dim() {
                        let diff = (got.entries[(a, b)] - want[a][b]).norm();
                        assert!(diff < 1e-12 * scale, "j={j} m={m} x={x} ({a},{b}) diff={diff:e}");
                    }
                }
            }
        }
    }
}

/// The three small matrices written out by hand.
fn fixture(j2: i32, x: f64, beta: f64, gamma: f64) -> Vec<Vec<Complex64>> {
    let tau = (beta / 2.0).tan();
    let f1 = tau * x;
    let f2 = (2.0 * tau * tau + 1.0) * x * x - 1.0;
    let f3 = (4.0 * tau.powi(3) + 3.0 * tau) * x.powi(3) - 3.0 * tau * x;
    let e = |k: f64| Complex64::from_polar(1.0, k * gamma);
    let r = |v: f64| Complex64::new(v, 0.0);
    let (p, q) = (1.0 - x, 1.0 + x);
    let s2 = 2f64.sqrt() / 2.0;
    let s3 = 3f64.sqrt() / 4.0;
    match j2 {
        1 => vec![vec![r(p), e(1.0) * f1], vec![e(-1.0) * f1, r(q)]],
        2 => vec![
            vec![r(0.5 * p * p), e(1.0) * (s2 * p * f1), e(2.0) * (0.5 * f2)],
            vec![e(-1.0) * (s2 * p * f1), r(p * q), e(1.0) * (s2 * q * f1)],
            vec![e(-2.0) * (0.5 * f2), e(-1.0) * (s2 * q * f1), r(0.5 * q * q)],
        ],
        3 => vec![
            vec![
                r(0.25 * p.powi(3)),
                e(1.0) * (s3 * p * p * f1),
                e(2.0) * (s3 * p * f2),
                e(3.0) * (0.25 * f3),
            ],
            vec![
                e(-1.0) * (s3 * p * p * f1),
                r(0.75 * p * p * q),
                e(1.0) * (0.75 * p * q * f1),
                e(2.0) * (s3 * q * f2),
            ],
            vec![
                e(-2.0) * (s3 * p * f2),
                e(-1.0) * (0.75 * p * q * f1),
                r(0.75 * p * q * q),
                e(1.0) * (s3 * q * q * f1),
            ],
            vec![
                e(-3.0) * (0.25 * f3),
                e(-2.0) * (s3 * q * f2),
                e(-1.0) * (s3 * q * q * f1),
                r(0.25 * q.powi(3)),
            ],
        ],
        _ => unreachable!(),
    }
}

#[test]
fn small_spin_fixtures() {
    for j2 in 1..=3 {
        for &beta in &[PI / 10.0, FRAC_PI_2, 2.2] {
            for &gamma in &[0.0, PI, 0.7] {
                for i in 0..21 {
                    let x = -1.0 + 0.1 * i as f64;
                    let want = fixture(j2, x, beta, gamma);
                    let d = weight_matrix_direct(h(j2), h(j2), x, beta, gamma).unwrap();
                    let r = weight_matrix_top_recursive(h(j2), x, beta, gamma).unwrap();
                    for a in 0..=j2 as usize {
                        for b in 0..=j2 as usize {
                            assert!((d.entries[(a, b)] - want[a][b]).norm() < 1e-12);
                            assert!((r.entries[(a, b)] - want[a][b]).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn second_channel_recurrence_matches_direct() {
    for j2 in [2, 3, 4, 7, 10] {
        let j = h(j2);
        for x in [-0.7, -0.2, 0.0, 0.45, 0.9] {
            let top = weight_matrix_direct(j, j, x, 1.3, 0.8).unwrap();
            let sec = weight_matrix_second(j, x, &top).unwrap();
            let direct = weight_matrix_direct(j, h(j2 - 2), x, 1.3, 0.8).unwrap();
            assert!(sec.max_entry_diff(&direct) < 1e-10 * direct.max_abs().max(1.0), "j={j} x={x}");
        }
    }
}

#[test]
fn konno_density_is_normalised() {
    // after x = a sin(t) the integrand is smooth and pi-periodic, so the
    // midpoint rule converges geometrically and never touches |x| = a
    let n = 4000;
    for a in [0.3, FRAC_1_SQRT_2, 0.95] {
        let h = PI / n as f64;
        let total: f64 = (0..n)
            .map(|i| {
                let t = -FRAC_PI_2 + (i as f64 + 0.5) * h;
                konno_mu(a * t.sin(), a).unwrap() * a * t.cos() * h
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-8, "a={a} {total}");
    }
}

#[test]
fn f_tau_series_and_power_form_agree() {
    for order in 0..=14 {
        for &tau in &[0.2, 1.0, 2.5] {
            for &x in &[-0.9, -0.35, 0.0, 0.5, 1.0] {
                let a = f_tau(order, tau, x);
                let b = f_tau_series(order, tau, x);
                let scale = (1.0 + tau * tau).powf(order as f64 / 2.0);
                assert!((a - b).abs() < 1e-12 * scale.max(1.0), "order={order} tau={tau} x={x}");
            }
        }
    }
}

#[test]
fn top_channel_recursion_reaches_fifty_states() {
    let j = h(49);
    for x in [-0.9, -0.5, 0.0, 0.3, 0.9] {
        let d = weight_matrix_direct(j, j, x, FRAC_PI_2, 0.4).unwrap();
        let r = weight_matrix_top_recursive(j, x, FRAC_PI_2, 0.4).unwrap();
        assert!(d.max_entry_diff(&r) <= 1e-6 * d.max_abs(), "x={x}");
    }
}

#[test]
fn small_d_rows_are_orthonormal() {
    for j2 in [1, 4, 9, 20, 35, 49] {
        let d = small_d(h(j2), 1.9);
        let prod = &d * d.transpose();
        let n = j2 as usize + 1;
        for a in 0..n {
            for b in 0..n {
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((prod[(a, b)] - target).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn coin_unitarity_for_all_spins() {
    // splitmix64 for reproducible angle triples
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    };
    for j2 in 1..=49 {
        for _ in 0..10 {
            let angles = EulerAngles::new(2.0 * PI * next(), PI * next(), 2.0 * PI * next()).unwrap();
            let coin = rotation_matrix(h(j2), angles);
            assert!(coin.unitarity_defect() < 1e-12, "j2={j2} {angles:?}");
        }
    }
}

#[test]
fn spin_half_second_moment_converges() {
    let q = Qudit::symmetric(h(1));
    let dist = position_distribution(&evolve(&q, EulerAngles::beta_only(FRAC_PI_2), 100));
    let m2 = pseudovelocity_moment(&dist, 100, 2).unwrap();
    assert!((m2 - (1.0 - FRAC_1_SQRT_2)).abs() < 0.01, "{m2}");
}

#[test]
fn limit_second_moment_of_konno_density() {
    for a in [0.3, 0.8] {
        let beta = 2.0 * f64::acos(a);
        let spec = LimitSpec::new(Qudit::symmetric(h(1)), beta, 0.0).unwrap();
        let m2 = LimitDensity::new(spec).unwrap().limit_moment(2).unwrap();
        assert!((m2 - (1.0 - (1.0 - a * a).sqrt())).abs() < 1e-10);
    }
}

#[test]
fn point_mass_matches_simulated_central_mass() {
    let q = Qudit::symmetric(h(2));
    let spec = LimitSpec::new(q.clone(), FRAC_PI_2, 0.0).unwrap();
    let density = LimitDensity::new(spec).unwrap();
    let delta = density.delta_mass().unwrap();
    assert!(delta > 0.0 && delta < 1.0);

    let t = 400;
    let dist = position_distribution(&evolve(&q, EulerAngles::beta_only(FRAC_PI_2), t));
    let window = 0.1;
    let simulated: f64 = dist
        .points
        .iter()
        .filter(|&&(x, _)| (x as f64 / t as f64).abs() < window)
        .map(|&(_, p)| p)
        .sum();
    let continuous = qudit_walk::limit::quadrature::GaussLegendre::new(64)
        .integrate(-window, window, |v| density.nu_continuous(v).unwrap());
    assert!((simulated - (delta + continuous)).abs() < 0.02, "{simulated} vs {}", delta + continuous);
}
