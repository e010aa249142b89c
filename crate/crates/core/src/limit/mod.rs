//! The long-time limit density of `X_t / t`: a superposition of scaled Konno
//! densities, one channel per `0 < m <= j`, plus a point mass at the origin
//! when `2j + 1` is odd.

pub mod konno;
pub mod quadrature;
pub mod weight;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::qudit::Qudit;
use crate::walk::Bins;
use konno::konno_mu_unchecked;
use quadrature::{bin_rule, channel_rule};
use weight::WeightKernel;

/// Parameters of a limit density. `alpha` plays no role here.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitSpec {
    pub j: HalfInt,
    pub beta: f64,
    pub gamma: f64,
    /// `cos(beta/2)`, exactly 0 at `beta = pi`.
    pub a: f64,
    pub qudit: Qudit,
}

/// Coin angles at which the Konno channels carry no mass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Degeneracy {
    /// `beta = 0`: diagonal coin, the walker moves ballistically.
    DiagonalCoin,
    /// `beta = pi`: the channel supports shrink to a point.
    AntiDiagonalCoin,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::DiagonalCoin => write!(f, "beta = 0 (diagonal coin)"),
            Degeneracy::AntiDiagonalCoin => write!(f, "beta = pi (anti-diagonal coin)"),
        }
    }
}

impl LimitSpec {
    pub fn new(qudit: Qudit, beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&beta) {
            return Err(WalkError::domain(format!("limit density needs 0 <= beta <= pi, got {beta}")));
        }
        if !gamma.is_finite() {
            return Err(WalkError::domain("gamma must be finite"));
        }
        let a = if beta == PI { 0.0 } else { (beta / 2.0).cos() };
        Ok(LimitSpec {
            j: qudit.j(),
            beta,
            gamma,
            a,
            qudit,
        })
    }

    /// `m = j, j-1, ...` down to the smallest positive value.
    pub fn channels(&self) -> Vec<HalfInt> {
        self.j.positive_components().collect()
    }

    pub fn has_delta(&self) -> bool {
        self.j.is_integer()
    }

    pub fn degeneracy(&self) -> Option<Degeneracy> {
        if self.beta == 0.0 {
            Some(Degeneracy::DiagonalCoin)
        } else if self.a == 0.0 {
            Some(Degeneracy::AntiDiagonalCoin)
        } else {
            None
        }
    }

    /// Support half-width `2ja`.
    pub fn reach(&self) -> f64 {
        2.0 * self.j.value() * self.a
    }
}

/// Evaluator for one [`LimitSpec`], holding the per-channel coefficient tables.
#[derive(Clone, Debug)]
pub struct LimitDensity {
    spec: LimitSpec,
    kernels: Vec<WeightKernel>,
}

impl LimitDensity {
    pub fn new(spec: LimitSpec) -> Result<Self> {
        let kernels = spec
            .channels()
            .into_iter()
            .map(|m| WeightKernel::new(spec.j, m, spec.beta, spec.gamma))
            .collect::<Result<_>>()?;
        Ok(LimitDensity { spec, kernels })
    }

    pub fn spec(&self) -> &LimitSpec {
        &self.spec
    }

    pub fn channels(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.kernels.iter().map(|k| k.m())
    }

    /// `M^(j,m)(x)` for the spec's qudit, channel `m`.
    pub fn channel_weight(&self, m: HalfInt, x: f64) -> Result<f64> {
        let k = self
            .kernels
            .iter()
            .find(|k| k.m() == m)
            .ok_or_else(|| WalkError::domain(format!("no channel m = {m} for j = {}", self.spec.j)))?;
        k.scalar(x, &self.spec.qudit)
    }

    /// The continuous part `sum_m mu(v/2m; a) M^(j,m)(v/2m) / 2m`.
    pub fn nu_continuous(&self, v: f64) -> Result<f64> {
        let a = self.spec.a;
        let mut acc = 0.0;
        for k in &self.kernels {
            let two_m = k.m().doubled() as f64;
            let x = v / two_m;
            let mu = konno_mu_unchecked(x, a);
            if mu == 0.0 {
                continue;
            }
            acc += mu * k.scalar(x, &self.spec.qudit)? / two_m;
        }
        Ok(acc)
    }

    /// Channel integrand after `x = a sin(theta)`:
    /// `sqrt(1-a^2) M(x) / (pi (1 - x^2))`.
    fn integrand(&self, k: &WeightKernel, theta: f64) -> Result<(f64, f64)> {
        let a = self.spec.a;
        let x = a * theta.sin();
        let g = (1.0 - a * a).sqrt() / (PI * (1.0 - x * x)) * k.scalar(x, &self.spec.qudit)?;
        Ok((x, g))
    }

    fn continuous_moment(&self, r: u32) -> Result<f64> {
        if self.spec.degeneracy().is_some() {
            return Ok(0.0);
        }
        let mut total = 0.0;
        for k in &self.kernels {
            let two_m = k.m().doubled() as f64;
            let mut acc = 0.0;
            for (theta, w) in channel_rule().mapped(-FRAC_PI_2, FRAC_PI_2) {
                let (x, g) = self.integrand(k, theta)?;
                acc += w * (two_m * x).powi(r as i32) * g;
            }
            total += acc;
        }
        Ok(total)
    }

    /// `int nu_continuous`.
    pub fn continuous_mass(&self) -> Result<f64> {
        self.continuous_moment(0)
    }

    /// The point mass at `v = 0`, taken as the normalisation deficit of the
    /// continuous part.
    pub fn delta_mass(&self) -> Result<f64> {
        if !self.spec.has_delta() {
            if let Some(d) = self.spec.degeneracy() {
                return Err(WalkError::Degenerate(format!(
                    "{d}: the limit density of a {}-state walk has no continuous part",
                    self.spec.j.dim()
                )));
            }
            return Ok(0.0);
        }
        let deficit = 1.0 - self.continuous_mass()?;
        if !(-1e-8..=1.0 + 1e-8).contains(&deficit) {
            return Err(WalkError::Numerical(format!(
                "normalisation deficit {deficit:e} lies outside [0, 1]"
            )));
        }
        Ok(deficit.clamp(0.0, 1.0))
    }

    /// `int v^r nu(v) dv`, the point mass included.
    pub fn limit_moment(&self, r: u32) -> Result<f64> {
        let delta = self.delta_mass()?;
        let cont = self.continuous_moment(r)?;
        Ok(if r == 0 { cont + delta } else { cont })
    }

    /// Limit probability of each bin, the point mass included.
    pub fn bin_masses(&self, bins: &Bins) -> Result<Vec<f64>> {
        let delta = self.delta_mass()?;
        let mut masses = vec![0.0; bins.count];
        if self.spec.degeneracy().is_none() {
            for k in &self.kernels {
                let reach = k.m().doubled() as f64 * self.spec.a;
                for (b, mass) in masses.iter_mut().enumerate() {
                    let (lo, hi) = bins.edges(b);
                    let (lo, hi) = (lo.max(-reach), hi.min(reach));
                    if lo >= hi {
                        continue;
                    }
                    let t0 = (lo / reach).clamp(-1.0, 1.0).asin();
                    let t1 = (hi / reach).clamp(-1.0, 1.0).asin();
                    let mut acc = 0.0;
                    for (theta, w) in bin_rule().mapped(t0, t1) {
                        acc += w * self.integrand(k, theta)?.1;
                    }
                    *mass += acc;
                }
            }
        }
        if delta > 0.0 {
            let k = bins
                .index(0.0)
                .ok_or_else(|| WalkError::domain("bins do not cover the origin"))?;
            masses[k] += delta;
        }
        Ok(masses)
    }
}

pub fn nu_continuous(spec: &LimitSpec, v: f64) -> Result<f64> {
    LimitDensity::new(spec.clone())?.nu_continuous(v)
}

pub fn delta_mass(spec: &LimitSpec) -> Result<f64> {
    LimitDensity::new(spec.clone())?.delta_mass()
}

pub fn limit_moment(spec: &LimitSpec, r: u32) -> Result<f64> {
    LimitDensity::new(spec.clone())?.limit_moment(r)
}
