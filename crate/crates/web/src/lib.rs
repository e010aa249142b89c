//! Browser bindings: a simulated distribution, the limit density and the
//! pike-weight / curvature tables, each returned as a pair of arrays.

use qudit_walk::analysis::{critical_j, h_table, ScanParity};
use qudit_walk::io::parse::Grid;
use qudit_walk::walk::{evolve, position_distribution};
use qudit_walk::{EulerAngles, HalfInt, LimitDensity, LimitSpec, Qudit, Result, WalkError};
use wasm_bindgen::prelude::*;

/// `xs` against `ys`, plus the point mass at the origin where one exists.
#[wasm_bindgen]
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Curve {
    xs: Vec<f64>,
    ys: Vec<f64>,
    point_mass: f64,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ys(&self) -> Vec<f64> {
        self.ys.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn point_mass(&self) -> f64 {
        self.point_mass
    }
}

impl Curve {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }
}

fn spin(states: u32) -> Result<HalfInt> {
    if !(2..=130).contains(&states) {
        return Err(WalkError::Domain(format!("number of states must be in 2..=130, got {states}")));
    }
    Ok(HalfInt::from_doubled(states as i32 - 1))
}

/// Position distribution of the symmetric preset qudit after `t` steps,
/// on the pseudovelocity axis `x / t` (density per unit velocity).
pub fn distribution(states: u32, beta: f64, gamma: f64, t: u32) -> Result<Curve> {
    let j = spin(states)?;
    if t == 0 || t > 2000 {
        return Err(WalkError::Domain(format!("t must be in 1..=2000, got {t}")));
    }
    let angles = EulerAngles::new(0.0, beta, gamma)?;
    let dist = position_distribution(&evolve(&Qudit::preset("paper-sym", j)?, angles, t));
    let tf = t as f64;
    // neighbouring sites on the same sublattice are 2 apart
    let (xs, ys) = dist.points.iter().map(|&(x, p)| (x as f64 / tf, p * tf / 2.0)).unzip();
    Ok(Curve { xs, ys, point_mass: 0.0 })
}

/// Continuous part of the limit density on `n` points of `[lo, hi]`.
pub fn density(states: u32, beta: f64, gamma: f64, lo: f64, hi: f64, n: usize) -> Result<Curve> {
    let j = spin(states)?;
    if !(2..=20_000).contains(&n) || lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(WalkError::Domain(format!("grid needs lo < hi and 2..=20000 points, got {lo}:{hi}:{n}")));
    }
    let spec = LimitSpec::new(Qudit::preset("paper-sym", j)?, beta, gamma)?;
    if let Some(d) = spec.degeneracy() {
        return Err(WalkError::Degenerate(d.to_string()));
    }
    let limit = LimitDensity::new(spec)?;
    let xs = Grid { lo, hi, n }.points();
    let ys = xs.iter().map(|&v| limit.nu_continuous(v)).collect::<Result<_>>()?;
    Ok(Curve {
        xs,
        ys,
        point_mass: limit.delta_mass()?,
    })
}

/// `H(m)` for every channel `m > 0`.
pub fn pike_weights(states: u32, beta: f64) -> Result<Curve> {
    let (xs, ys) = h_table(spin(states)?, beta)?.into_iter().map(|(m, h)| (m.value(), h)).unzip();
    Ok(Curve { xs, ys, point_mass: 0.0 })
}

/// Curvature of the limit density at the origin against the number of
/// states, even numbers of states up to `max_states`.
pub fn curvature(beta: f64, max_states: u32) -> Result<Curve> {
    let report = critical_j(beta, spin(max_states)?, ScanParity::EvenStates)?;
    let (xs, ys) = report.rows.iter().map(|&(j, d2)| (j.dim() as f64, d2)).unzip();
    Ok(Curve { xs, ys, point_mass: 0.0 })
}

fn js(e: WalkError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = simulate)]
pub fn simulate_js(states: u32, beta: f64, gamma: f64, t: u32) -> std::result::Result<Curve, JsError> {
    distribution(states, beta, gamma, t).map_err(js)
}

#[wasm_bindgen(js_name = limitDensity)]
pub fn density_js(states: u32, beta: f64, gamma: f64, lo: f64, hi: f64, n: usize) -> std::result::Result<Curve, JsError> {
    density(states, beta, gamma, lo, hi, n).map_err(js)
}

#[wasm_bindgen(js_name = pikeWeights)]
pub fn pike_weights_js(states: u32, beta: f64) -> std::result::Result<Curve, JsError> {
    pike_weights(states, beta).map_err(js)
}

#[wasm_bindgen(js_name = curvature)]
pub fn curvature_js(beta: f64, max_states: u32) -> std::result::Result<Curve, JsError> {
    curvature(beta, max_states).map_err(js)
}
