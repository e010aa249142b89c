//! Large-`j` structure of the limit density for the symmetric preset qudit
//! with `alpha = gamma = 0`: curvature at the origin, the critical `j`
//! beyond which the centre turns concave, the pike weights `H(m)` and the
//! rescaled densities.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::limit::weight::{weight_matrix_direct, weight_scalar};
use crate::limit::LimitDensity;
use crate::precision::{factorial, ln_binomial, MAX_FACTORIAL};
use crate::qudit::Qudit;

/// Threshold below which `|H|` counts as zero.
pub const H_ZERO_THRESHOLD: f64 = 1e-8;

fn check_open_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta < PI) {
        return Err(WalkError::domain(format!("needs 0 < beta < pi, got {beta}")));
    }
    Ok(())
}

fn check_channel(j: HalfInt, m: HalfInt) -> Result<()> {
    if m.doubled() <= 0 || !m.is_component_of(j) {
        return Err(WalkError::domain(format!("needs 0 < m <= j with j - m integral, got j = {j}, m = {m}")));
    }
    if j.doubled() as usize > MAX_FACTORIAL {
        return Err(WalkError::domain(format!("j = {j} is too large")));
    }
    Ok(())
}

/// `(2j)! / (2^(2j-1) (j+m)! (j-m)!)`.
fn central_weight(j: HalfInt, m: HalfInt) -> f64 {
    let n = j.doubled() as usize;
    let k = j.int_diff(-m) as usize;
    (ln_binomial(n, k) - (n as f64 - 1.0) * LN_2).exp()
}

/// Second derivative of the limit density at `v = 0`, closed form.
///
/// ```text
/// sqrt(1-c^2)/(pi c) sum_{0<m<=j} 1/(8m^3) [2 + 1/c^2 + 2(2m^2 - j)] (2j)!/(2^(2j-1)(j+m)!(j-m)!)
/// ```
/// with `c = cos(beta/2)`.
pub fn d2_at_origin(j: HalfInt, beta: f64) -> Result<f64> {
    check_open_beta(beta)?;
    let c = (beta / 2.0).cos();
    let pre = (1.0 - c * c).sqrt() / (PI * c);
    let jv = j.value();
    let mut acc = 0.0;
    for m in j.positive_components() {
        let mv = m.value();
        let bracket = 2.0 + 1.0 / (c * c) + 2.0 * (2.0 * mv * mv - jv);
        acc += bracket * central_weight(j, m) / (8.0 * mv.powi(3));
    }
    Ok(pre * acc)
}

/// `(nu(h) - 2 nu(0) + nu(-h)) / h^2`.
pub fn d2_finite_difference(density: &LimitDensity, h: f64) -> Result<f64> {
    let f0 = density.nu_continuous(0.0)?;
    let fp = density.nu_continuous(h)?;
    let fm = density.nu_continuous(-h)?;
    Ok((fp - 2.0 * f0 + fm) / (h * h))
}

/// Which `j` values a convexity scan visits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanParity {
    /// `2j + 1` even (half-odd `j`), no point mass at the origin.
    #[default]
    EvenStates,
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub beta: f64,
    pub parity: ScanParity,
    /// `(j, d2)` sorted by `j`.
    pub rows: Vec<(HalfInt, f64)>,
    /// Smallest scanned `j` from which every scanned value is negative.
    pub j_critical: Option<HalfInt>,
}

pub fn critical_j(beta: f64, j_max: HalfInt, parity: ScanParity) -> Result<ConvexityReport> {
    check_open_beta(beta)?;
    if j_max.doubled() < 1 {
        return Err(WalkError::domain(format!("j_max must be at least 1/2, got {j_max}")));
    }
    let step = match parity {
        ScanParity::EvenStates => 2,
        ScanParity::All => 1,
    };
    let rows = (1..=j_max.doubled())
        .step_by(step)
        .map(|d| {
            let j = HalfInt::from_doubled(d);
            d2_at_origin(j, beta).map(|v| (j, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut j_critical = None;
    for &(j, v) in rows.iter().rev() {
        if v < 0.0 {
            j_critical = Some(j);
        } else {
            break;
        }
    }
    Ok(ConvexityReport {
        beta,
        parity,
        rows,
        j_critical,
    })
}

fn ln_pow(base: f64, exp: i32) -> f64 {
    if exp == 0 {
        0.0
    } else {
        exp as f64 * base.ln()
    }
}

/// `H(m)`: the channel-`m` weight of the symmetric preset qudit evaluated at
/// the pike position `x = cos(beta/2)`.
///
/// Summing the parity-restricted double series in closed form gives
/// `C(2j, j+m) 2^(-2j) [(1-c)^(j+m)(1+c)^(j-m) + (1+c)^(j+m)(1-c)^(j-m)]`,
/// evaluated here in the log domain. Every term is non-negative.
pub fn h_function(j: HalfInt, beta: f64, m: HalfInt) -> Result<f64> {
    check_channel(j, m)?;
    let c = (beta / 2.0).cos();
    let (p, q) = (j.int_diff(-m), j.int_diff(m));
    let base = ln_binomial(j.doubled() as usize, p as usize) - j.doubled() as f64 * LN_2;
    let t1 = base + ln_pow(1.0 - c, p) + ln_pow(1.0 + c, q);
    let t2 = base + ln_pow(1.0 + c, p) + ln_pow(1.0 - c, q);
    Ok(t1.exp() + t2.exp())
}

/// `H(m)` from its double series over `k1 <= j+m`, `k2 <= j-m` with
/// `k1 + k2` even, summed term by term.
pub fn h_function_double_sum(j: HalfInt, beta: f64, m: HalfInt) -> Result<f64> {
    check_channel(j, m)?;
    let c = (beta / 2.0).cos();
    let (p, q) = (j.int_diff(-m), j.int_diff(m));
    let mut acc = 0.0;
    for k1 in 0..=p {
        for k2 in 0..=q {
            if (k1 + k2) % 2 != 0 {
                continue;
            }
            let sign = if k1 % 2 == 0 { 1.0 } else { -1.0 };
            let den = factorial(k1 as usize)
                * factorial((p - k1) as usize)
                * factorial(k2 as usize)
                * factorial((q - k2) as usize);
            acc += sign * c.powi(k1 + k2) / den;
        }
    }
    Ok(factorial(j.doubled() as usize) / 2f64.powi(j.doubled() - 1) * acc)
}

/// `(closed form, weight-matrix quadratic form)` for `H(m)`.
pub fn h_function_consistency(j: HalfInt, beta: f64, m: HalfInt) -> Result<(f64, f64)> {
    let closed = h_function(j, beta, m)?;
    let c = (beta / 2.0).cos();
    let mat = weight_matrix_direct(j, m, c, beta, 0.0)?;
    let via = weight_scalar(&mat, &Qudit::symmetric(j))?;
    Ok((closed, via))
}

/// `H(m)` for every channel, `m` ascending.
pub fn h_table(j: HalfInt, beta: f64) -> Result<Vec<(HalfInt, f64)>> {
    let mut ms: Vec<HalfInt> = j.positive_components().collect();
    ms.reverse();
    ms.into_iter().map(|m| h_function(j, beta, m).map(|h| (m, h))).collect()
}

/// Largest `m` such that `|H(m')| < threshold` for every channel `m' <= m`;
/// `None` when the smallest channel already exceeds the threshold.
pub fn h_zero_region(j: HalfInt, beta: f64, threshold: f64) -> Result<Option<HalfInt>> {
    let mut upper = None;
    for (m, h) in h_table(j, beta)? {
        if h.abs() < threshold {
            upper = Some(m);
        } else {
            break;
        }
    }
    Ok(upper)
}

/// `sigma_j = sqrt(2) j`.
pub fn sigma(j: HalfInt) -> f64 {
    SQRT_2 * j.value()
}

/// `(m / sigma_j, sigma_j H(m))` for every channel, `m` ascending.
pub fn h_scaled(j: HalfInt, beta: f64) -> Result<Vec<(f64, f64)>> {
    let s = sigma(j);
    Ok(h_table(j, beta)?
        .into_iter()
        .map(|(m, h)| (m.value() / s, s * h))
        .collect())
}

/// Density of `X / (2j cos(beta/2))`, continuous part: `2ja nu(2jau)`.
pub fn rescaled_density(density: &LimitDensity, u: f64) -> Result<f64> {
    let reach = density.spec().reach();
    if reach == 0.0 {
        return Err(WalkError::Degenerate(
            "rescaling needs cos(beta/2) > 0".into(),
        ));
    }
    if u.abs() >= 1.0 {
        return Ok(0.0);
    }
    Ok(reach * density.nu_continuous(reach * u)?)
}

/// `r`-th moment of the rescaled variable, point mass included.
pub fn rescaled_moment(density: &LimitDensity, r: u32) -> Result<f64> {
    let reach = density.spec().reach();
    if reach == 0.0 {
        return Err(WalkError::Degenerate(
            "rescaling needs cos(beta/2) > 0".into(),
        ));
    }
    Ok(density.limit_moment(r)? / reach.powi(r as i32))
}
