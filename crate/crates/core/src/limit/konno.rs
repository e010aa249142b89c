use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Konno's density `sqrt(1-a^2) / (pi (1-x^2) sqrt(a^2-x^2))` on `|x| < |a|`.
pub fn konno_mu(x: f64, a: f64) -> Result<f64> {
    if a.is_nan() || a.abs() > 1.0 {
        return Err(WalkError::domain(format!("Konno density needs |a| <= 1, got {a}")));
    }
    Ok(konno_mu_unchecked(x, a))
}

pub(crate) fn konno_mu_unchecked(x: f64, a: f64) -> f64 {
    if x.abs() >= a.abs() {
        return 0.0;
    }
    (1.0 - a * a).sqrt() / (std::f64::consts::PI * (1.0 - x * x) * (a * a - x * x).sqrt())
}

fn cpowi(mut base: Complex64, mut exp: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// The polynomial `f_tau^(order)(x)`.
///
/// Evaluated through `f = [(u + i w)^a + (u - i w)^a] / 2` with `u = tau x`
/// and `w^2 = 1 - x^2 (1 + tau^2)`, which equals the binomial triple sum
/// (see [`f_tau_series`]) without its cancellation.
pub fn f_tau(order: u32, tau: f64, x: f64) -> f64 {
    let u = tau * x;
    let w2 = 1.0 - x * x * (1.0 + tau * tau);
    if w2 >= 0.0 {
        cpowi(Complex64::new(u, w2.sqrt()), order).re
    } else {
        let r = (-w2).sqrt();
        0.5 * ((u + r).powi(order as i32) + (u - r).powi(order as i32))
    }
}

/// `f_tau^(order)(x)` summed term by term from its triple binomial series.
///
/// Exact for small orders; loses digits to cancellation as the order and
/// `tau` grow.
pub fn f_tau_series(order: u32, tau: f64, x: f64) -> f64 {
    let a = order as i32;
    let mut sum = 0.0;
    for k0 in 0..=a / 2 {
        for k1 in 0..=k0 {
            for k2 in 0..=k1 {
                let coeff = binomial(a, 2 * k0) * binomial(k0, k1) * binomial(k1, k2);
                let sign = if (k0 + k1) % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * coeff * tau.powi(a - 2 * (k0 - k2)) * x.powi(a - 2 * (k0 - k1));
            }
        }
    }
    sum
}

fn binomial(n: i32, k: i32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
