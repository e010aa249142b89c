//! Finite-time simulation against the limit density.

use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::limit::{LimitDensity, LimitSpec};
use crate::qudit::Qudit;
use crate::walk::{
    binned_density, comparison_half_range, evolve, position_distribution, pseudovelocity_moment, Bins,
};
use crate::wigner::EulerAngles;

/// Default histogram width on the pseudovelocity axis.
pub const DEFAULT_BIN_WIDTH: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub r: u32,
    pub simulated: f64,
    pub limit: f64,
    pub abs_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub t: u32,
    pub bin_width: f64,
    pub moments: Vec<MomentRow>,
    /// `sum_bins |simulated mass - limit mass|`.
    pub l1_distance: f64,
    pub delta_mass: f64,
}

/// Per-bin masses of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct BinComparison {
    pub bins: Bins,
    pub simulated: Vec<f64>,
    pub limit: Vec<f64>,
}

impl BinComparison {
    pub fn l1(&self) -> f64 {
        self.simulated
            .iter()
            .zip(&self.limit)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

/// Run the walk to time `t` and set its moments (r = 1..=4) and histogram
/// against the limit density of the same coin and qudit.
pub fn compare(qudit: &Qudit, angles: EulerAngles, t: u32, bin_width: f64) -> Result<(ComparisonReport, BinComparison)> {
    if t == 0 {
        return Err(WalkError::domain("comparison needs t >= 1"));
    }
    let spec = LimitSpec::new(qudit.clone(), angles.beta, angles.gamma)?;
    if let Some(d) = spec.degeneracy() {
        return Err(WalkError::Degenerate(format!(
            "{d}: the limit has no continuous density to compare with"
        )));
    }
    let density = LimitDensity::new(spec)?;
    let dist = position_distribution(&evolve(qudit, angles, t));

    let mut moments = Vec::with_capacity(4);
    for r in 1..=4 {
        let simulated = pseudovelocity_moment(&dist, t, r)?;
        let limit = density.limit_moment(r)?;
        moments.push(MomentRow {
            r,
            simulated,
            limit,
            abs_error: (simulated - limit).abs(),
        });
    }

    let half = comparison_half_range(qudit.j(), angles.beta);
    let sim = binned_density(&dist, t, bin_width, half)?;
    let limit = density.bin_masses(&sim.bins)?;
    let bins = BinComparison {
        bins: sim.bins,
        simulated: sim.masses,
        limit,
    };
    let report = ComparisonReport {
        t,
        bin_width,
        moments,
        l1_distance: bins.l1(),
        delta_mass: density.delta_mass()?,
    };
    Ok((report, bins))
}
