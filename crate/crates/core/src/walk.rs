//! Time evolution of the `(2j+1)`-component walk on the integer lattice.

use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::qudit::Qudit;
use crate::wigner::{rotation_matrix, CoinMatrix, EulerAngles};

/// Amplitudes `psi_m(x, t)` on the reachable window `-2jt <= x <= 2jt`.
///
/// Only sites with `x = -2jt + 2k` can be occupied, so storage is dense over
/// `k = 0 ..= 2jt` with `2j + 1` components per site.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveField {
    j: HalfInt,
    t: u32,
    amps: Vec<Complex64>,
}

impl WaveField {
    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Leftmost stored site, `-2jt`.
    pub fn lo(&self) -> i64 {
        -(self.j.doubled() as i64) * self.t as i64
    }

    pub fn sites(&self) -> usize {
        self.amps.len() / self.j.dim()
    }

    pub fn position(&self, k: usize) -> i64 {
        self.lo() + 2 * k as i64
    }

    /// Component vector at stored site `k`.
    pub fn site(&self, k: usize) -> &[Complex64] {
        let n = self.j.dim();
        &self.amps[k * n..(k + 1) * n]
    }

    /// Amplitude vector at lattice position `x`, if `x` is a stored site.
    pub fn at(&self, x: i64) -> Option<&[Complex64]> {
        let off = x - self.lo();
        if off < 0 || off % 2 != 0 {
            return None;
        }
        let k = (off / 2) as usize;
        (k < self.sites()).then(|| self.site(k))
    }

    pub fn total_probability(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `Psi(x, 0) = qudit * delta_{x,0}`.
pub fn initial_state(qudit: &Qudit) -> WaveField {
    WaveField {
        j: qudit.j(),
        t: 0,
        amps: qudit.amplitudes().iter().copied().collect(),
    }
}

/// One step: mix components with `coin` at every site, then shift
/// component `m` by `-2m`.
pub fn step(field: &WaveField, coin: &CoinMatrix) -> Result<WaveField> {
    if coin.j != field.j {
        return Err(WalkError::usage(format!(
            "coin has j = {} but field has j = {}",
            coin.j, field.j
        )));
    }
    let n = field.j.dim();
    let old_sites = field.sites();
    let new_sites = old_sites + field.j.doubled() as usize;
    let zero = Complex64::new(0.0, 0.0);

    let mut mixed = vec![zero; old_sites * n];
    for k in 0..old_sites {
        let src = field.site(k);
        let dst = &mut mixed[k * n..(k + 1) * n];
        for (a, out) in dst.iter_mut().enumerate() {
            let mut acc = zero;
            for (b, z) in src.iter().enumerate() {
                acc += coin.entries[(a, b)] * z;
            }
            *out = acc;
        }
    }

    // component i (m = j - i) at new site k reads mixed site k - i
    let mut amps = vec![zero; new_sites * n];
    for k in 0..new_sites {
        for i in 0..n {
            if let Some(src) = k.checked_sub(i).filter(|&s| s < old_sites) {
                amps[k * n + i] = mixed[src * n + i];
            }
        }
    }
    Ok(WaveField {
        j: field.j,
        t: field.t + 1,
        amps,
    })
}

/// Apply `t` steps of the coin `R(angles)` starting from `qudit` at the origin.
pub fn evolve(qudit: &Qudit, angles: EulerAngles, t: u32) -> WaveField {
    let coin = rotation_matrix(qudit.j(), angles);
    let mut field = initial_state(qudit);
    for _ in 0..t {
        field = step(&field, &coin).expect("coin built for the qudit's j");
    }
    field
}

/// Position probabilities `P(x, t)`, sorted by `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    pub points: Vec<(i64, f64)>,
}

impl Distribution {
    pub fn total(&self) -> f64 {
        self.points.iter().map(|&(_, p)| p).sum()
    }

    pub fn prob(&self, x: i64) -> f64 {
        self.points
            .binary_search_by_key(&x, |&(y, _)| y)
            .map(|i| self.points[i].1)
            .unwrap_or(0.0)
    }
}

pub fn position_distribution(field: &WaveField) -> Distribution {
    let points = (0..field.sites())
        .map(|k| {
            let p = field.site(k).iter().map(|z| z.norm_sqr()).sum();
            (field.position(k), p)
        })
        .collect();
    Distribution { points }
}

/// `<(X_t / t)^r> = sum_x (x/t)^r P(x, t)`.
pub fn pseudovelocity_moment(dist: &Distribution, t: u32, r: u32) -> Result<f64> {
    if t == 0 {
        return Err(WalkError::domain("pseudovelocity is undefined at t = 0"));
    }
    let t = t as f64;
    Ok(dist
        .points
        .iter()
        .map(|&(x, p)| (x as f64 / t).powi(r as i32) * p)
        .sum())
}

/// Uniform bins on the pseudovelocity axis, symmetric about 0 with an odd
/// bin count so that `v = 0` sits at the centre of the middle bin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bins {
    pub lo: f64,
    pub width: f64,
    pub count: usize,
}

impl Bins {
    /// Smallest symmetric odd grid of `width`-bins covering `[-half, half]`.
    pub fn symmetric(half: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(WalkError::domain(format!("bin width must be positive, got {width}")));
        }
        if !(half >= 0.0 && half.is_finite()) {
            return Err(WalkError::domain(format!("bin range must be finite, got {half}")));
        }
        let side = (half / width - 0.5).max(0.0).ceil() as usize;
        let count = 2 * side + 1;
        Ok(Bins {
            lo: -(count as f64) * width / 2.0,
            width,
            count,
        })
    }

    pub fn center(&self, k: usize) -> f64 {
        self.lo + (k as f64 + 0.5) * self.width
    }

    pub fn edges(&self, k: usize) -> (f64, f64) {
        let a = self.lo + k as f64 * self.width;
        (a, a + self.width)
    }

    pub fn index(&self, v: f64) -> Option<usize> {
        let k = ((v - self.lo) / self.width).floor();
        if k < 0.0 {
            return None;
        }
        let k = k as usize;
        if k < self.count {
            Some(k)
        } else if v <= self.lo + self.count as f64 * self.width {
            Some(self.count - 1)
        } else {
            None
        }
    }
}

/// Binned pseudovelocity histogram.
#[derive(Clone, Debug, PartialEq)]
pub struct BinnedDensity {
    pub bins: Bins,
    /// Probability mass per bin.
    pub masses: Vec<f64>,
}

impl BinnedDensity {
    /// `(bin centre, mass / width)` pairs.
    pub fn densities(&self) -> Vec<(f64, f64)> {
        self.masses
            .iter()
            .enumerate()
            .map(|(k, &p)| (self.bins.center(k), p / self.bins.width))
            .collect()
    }
}

/// Half-width of the bin range used for a `(j, beta)` comparison:
/// `2j cos(beta/2) + 1`.
pub fn comparison_half_range(j: HalfInt, beta: f64) -> f64 {
    2.0 * j.value() * (beta / 2.0).cos().abs() + 1.0
}

/// Histogram of `x / t` weighted by `P(x, t)`.
///
/// Bins cover `[-half, half]`, widened if needed so that every occupied site
/// lands in a bin.
pub fn binned_density(dist: &Distribution, t: u32, bin_width: f64, half: f64) -> Result<BinnedDensity> {
    if t == 0 {
        return Err(WalkError::domain("pseudovelocity is undefined at t = 0"));
    }
    let tf = t as f64;
    let reach = dist
        .points
        .iter()
        .filter(|&&(_, p)| p > 0.0)
        .map(|&(x, _)| (x as f64 / tf).abs())
        .fold(half, f64::max);
    let bins = Bins::symmetric(reach, bin_width)?;
    let mut masses = vec![0.0; bins.count];
    for &(x, p) in dist.points.iter().filter(|&&(_, p)| p > 0.0) {
        let k = bins
            .index(x as f64 / tf)
            .expect("bin range covers every occupied site");
        masses[k] += p;
    }
    Ok(BinnedDensity { bins, masses })
}
