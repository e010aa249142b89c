//! Wigner rotation matrices used as quantum coins.
//!
//! Rows and columns are indexed by `m = j, j-1, ..., -j` (row `i` holds
//! `m = j - i`), the convention shared by every module of this crate.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::precision::{dd_div, dd_powers, factorial, factorial_dd, ln_factorial, TrackedSum, MAX_FACTORIAL};

/// Above this many states the scalar coefficient switches to log-gamma.
const DIRECT_FACTORIAL_STATES: usize = 30;

/// Euler angles in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(WalkError::domain("Euler angles must be finite"));
        }
        Ok(EulerAngles { alpha, beta, gamma })
    }

    pub fn beta_only(beta: f64) -> Self {
        EulerAngles {
            alpha: 0.0,
            beta,
            gamma: 0.0,
        }
    }
}

/// A `(2j+1) x (2j+1)` unitary coin.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinMatrix {
    pub j: HalfInt,
    pub entries: DMatrix<Complex64>,
}

impl CoinMatrix {
    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn get(&self, m: HalfInt, mp: HalfInt) -> Complex64 {
        self.entries[(self.j.index_of(m), self.j.index_of(mp))]
    }

    /// `max |(R^dagger R - I)_{ab}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let prod = self.entries.adjoint() * &self.entries;
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((prod[(a, b)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Inclusive range of `l` for which every factorial argument of
/// `Gamma(j, m, mp, l)` is non-negative.
pub fn gamma_range(j: HalfInt, m: HalfInt, mp: HalfInt) -> std::ops::RangeInclusive<i32> {
    let lo = 0.max(m.int_diff(mp));
    let hi = j.int_diff(mp).min(j.int_diff(-m));
    lo..=hi
}

struct GammaArgs {
    numer: [usize; 4],
    denom: [usize; 4],
    negative: bool,
}

fn gamma_args(j: HalfInt, m: HalfInt, mp: HalfInt, ell: i32) -> Result<GammaArgs> {
    if !m.is_component_of(j) || !mp.is_component_of(j) {
        return Err(WalkError::domain(format!(
            "Gamma({j}, {m}, {mp}, {ell}): m and m' must be components of j"
        )));
    }
    let denom = [j.int_diff(mp) - ell, j.int_diff(-m) - ell, ell, ell + mp.int_diff(m)];
    if denom.iter().any(|&a| a < 0) {
        return Err(WalkError::domain(format!(
            "Gamma({j}, {m}, {mp}, {ell}): negative factorial argument"
        )));
    }
    let numer = [j.int_diff(-m), j.int_diff(m), j.int_diff(-mp), j.int_diff(mp)];
    if j.doubled() as usize > MAX_FACTORIAL {
        return Err(WalkError::domain(format!("j = {j} is too large")));
    }
    Ok(GammaArgs {
        numer: numer.map(|a| a as usize),
        denom: denom.map(|a| a as usize),
        negative: ell % 2 != 0,
    })
}

/// `Gamma(j, m, m', l)` evaluated from plain factorials.
pub fn gamma_coeff_direct(j: HalfInt, m: HalfInt, mp: HalfInt, ell: i32) -> Result<f64> {
    let a = gamma_args(j, m, mp, ell)?;
    let num = (factorial(a.numer[0]) * factorial(a.numer[1])).sqrt()
        * (factorial(a.numer[2]) * factorial(a.numer[3])).sqrt();
    let den: f64 = a.denom.iter().map(|&k| factorial(k)).product();
    let v = num / den;
    Ok(if a.negative { -v } else { v })
}

/// `Gamma(j, m, m', l)` evaluated as `sign * exp(log magnitude)`.
pub fn gamma_coeff_log(j: HalfInt, m: HalfInt, mp: HalfInt, ell: i32) -> Result<f64> {
    let a = gamma_args(j, m, mp, ell)?;
    let ln = 0.5 * a.numer.iter().map(|&k| ln_factorial(k)).sum::<f64>()
        - a.denom.iter().map(|&k| ln_factorial(k)).sum::<f64>();
    let v = ln.exp();
    Ok(if a.negative { -v } else { v })
}

/// The Wigner coefficient `Gamma(j, m, m', l)`.
///
/// Uses plain factorials up to 30 states and the log-gamma path beyond.
pub fn gamma_coeff(j: HalfInt, m: HalfInt, mp: HalfInt, ell: i32) -> Result<f64> {
    if j.dim() > DIRECT_FACTORIAL_STATES {
        gamma_coeff_log(j, m, mp, ell)
    } else {
        gamma_coeff_direct(j, m, mp, ell)
    }
}

/// `Gamma(j, m, m', l)` in double-double, for use inside alternating sums.
pub(crate) fn gamma_coeff_dd(j: HalfInt, m: HalfInt, mp: HalfInt, ell: i32) -> Result<TwoFloat> {
    let a = gamma_args(j, m, mp, ell)?;
    let num = (factorial_dd(a.numer[0]) * factorial_dd(a.numer[1])).sqrt()
        * (factorial_dd(a.numer[2]) * factorial_dd(a.numer[3])).sqrt();
    let den = a
        .denom
        .iter()
        .fold(TwoFloat::from(1.0), |acc, &k| acc * factorial_dd(k));
    let v = dd_div(num, den);
    Ok(if a.negative { -v } else { v })
}

/// The real matrix `r^(j)(beta)`.
pub fn small_d(j: HalfInt, beta: f64) -> DMatrix<f64> {
    let n = j.dim();
    let j2 = j.doubled();
    let (s, c) = (beta / 2.0).sin_cos();
    let cpow = dd_powers(TwoFloat::from(c), j2 as usize);
    let spow = dd_powers(TwoFloat::from(s), j2 as usize);
    DMatrix::from_fn(n, n, |a, b| {
        let m = j.component_at(a);
        let mp = j.component_at(b);
        let mut acc = TrackedSum::default();
        for ell in gamma_range(j, m, mp) {
            let g = gamma_coeff_dd(j, m, mp, ell).expect("l within gamma_range");
            let ec = j2 + m.int_diff(mp) - 2 * ell;
            let es = 2 * ell + mp.int_diff(m);
            acc.add(g * cpow[ec as usize] * spow[es as usize]);
        }
        acc.value()
    })
}

/// The coin `R^(j)(alpha, beta, gamma)` with entries
/// `exp(-i alpha m) r_{m m'}(beta) exp(-i gamma m')`.
pub fn rotation_matrix(j: HalfInt, angles: EulerAngles) -> CoinMatrix {
    let d = small_d(j, angles.beta);
    let n = j.dim();
    let phase = |angle: f64, m: HalfInt| Complex64::from_polar(1.0, -angle * m.value());
    let entries = DMatrix::from_fn(n, n, |a, b| {
        let m = j.component_at(a);
        let mp = j.component_at(b);
        phase(angles.alpha, m) * d[(a, b)] * phase(angles.gamma, mp)
    });
    CoinMatrix { j, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn h(d: i32) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_coeff(h(1), h(1), h(1), 0).unwrap(), 1.0);
        assert_eq!(gamma_coeff(h(1), h(1), h(-1), 1).unwrap(), -1.0);
        assert_eq!(gamma_coeff(h(2), h(0), h(0), 1).unwrap(), -1.0);
    }

    #[test]
    fn gamma_rejects_negative_arguments() {
        assert!(gamma_coeff(h(1), h(1), h(1), 1).is_err());
        assert!(gamma_coeff(h(2), h(1), h(0), 0).is_err());
        assert!(gamma_coeff(h(1), h(3), h(1), 0).is_err());
    }

    #[test]
    fn log_and_direct_paths_agree() {
        for j2 in 1..=19 {
            let j = h(j2);
            for m in j.components() {
                for mp in j.components() {
                    for ell in gamma_range(j, m, mp) {
                        let a = gamma_coeff_direct(j, m, mp, ell).unwrap();
                        let b = gamma_coeff_log(j, m, mp, ell).unwrap();
                        assert!((a - b).abs() <= 1e-10 * a.abs(), "{j} {m} {mp} {ell}");
                    }
                }
            }
        }
    }

    #[test]
    fn spin_half_small_d() {
        let beta = 0.83;
        let d = small_d(h(1), beta);
        let (s, c) = (beta / 2.0).sin_cos();
        let expected = [[c, -s], [s, c]];
        for a in 0..2 {
            for b in 0..2 {
                assert!((d[(a, b)] - expected[a][b]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn spin_one_centre_is_cos_beta() {
        for beta in [0.1, 1.0, 2.5] {
            let d = small_d(h(2), beta);
            assert!((d[(1, 1)] - f64::cos(beta)).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_beta_is_identity() {
        for j2 in 1..=12 {
            let d = small_d(h(j2), 0.0);
            assert_eq!(d, DMatrix::identity(j2 as usize + 1, j2 as usize + 1));
        }
    }

    #[test]
    fn phases_dress_small_d() {
        let (alpha, beta, gamma) = (0.4, 1.1, -0.7);
        let coin = rotation_matrix(h(1), EulerAngles::new(alpha, beta, gamma).unwrap());
        let expected = Complex64::from_polar((beta / 2.0).cos(), -(alpha + gamma) / 2.0);
        assert!((coin.get(h(1), h(1)) - expected).norm() < 1e-15);

        let plain = rotation_matrix(h(1), EulerAngles::beta_only(beta));
        let d = small_d(h(1), beta);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(plain.entries[(a, b)], Complex64::new(d[(a, b)], 0.0));
            }
        }
    }

    #[test]
    fn large_spin_coins_stay_unitary() {
        for j2 in [5, 24, 49] {
            for (alpha, beta, gamma) in [(0.3, FRAC_PI_2, PI), (1.7, 2.9, 0.2), (0.0, 0.05, 0.0)] {
                let coin = rotation_matrix(h(j2), EulerAngles::new(alpha, beta, gamma).unwrap());
                assert!(coin.unitarity_defect() < 1e-12, "j2={j2} beta={beta}");
            }
        }
    }
}
