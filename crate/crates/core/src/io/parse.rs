//! Parsers for command-line values.

use std::f64::consts::PI;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::qudit::{Qudit, PRESETS};

/// An angle as typed plus its value in radians.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Angle {
    pub text: String,
    pub radians: f64,
}

impl FromStr for Angle {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Angle {
            text: s.trim().to_string(),
            radians: parse_angle(s)?,
        })
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| WalkError::usage(format!("cannot read {whole:?} as an angle")))
}

/// Radians from `1.25`, `pi`, `-pi/3`, `22pi/25`, `3*pi/4` or `pi*2`.
///
/// A rational multiple `p pi / q` is evaluated as `(p * pi) / q`, so equal
/// fractions typed differently give the same `f64`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || WalkError::usage(format!("cannot read {s:?} as an angle"));
    if t.is_empty() {
        return Err(bad());
    }
    let lower = t.to_ascii_lowercase();
    let Some(at) = lower.find("pi") else {
        let v: f64 = t.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    };
    let (head, tail) = (&lower[..at], &lower[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let num: i64 = match head {
        "" | "+" => 1,
        "-" => -1,
        h => parse_int(h, s)?,
    };
    let (mul, den) = match tail.split_once('/') {
        Some((m, d)) => (m, parse_int(d, s)?),
        None => (tail, 1),
    };
    let mul: i64 = match mul {
        "" => 1,
        m => parse_int(m.strip_prefix('*').ok_or_else(bad)?, s)?,
    };
    if den == 0 {
        return Err(bad());
    }
    let p = num.checked_mul(mul).ok_or_else(bad)?;
    let gcd = gcd(p.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
    let (p, q) = (p / gcd * den.signum(), den.abs() / gcd);
    Ok(p as f64 * PI / q as f64)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `j` from `"11/2"`, `"5"` or `"5.5"`; must be at least 1/2.
pub fn parse_j(s: &str) -> Result<HalfInt> {
    let j: HalfInt = s
        .parse()
        .map_err(|_| WalkError::usage(format!("cannot read {s:?} as a half-integer j")))?;
    HalfInt::spin(j.doubled()).map_err(|_| WalkError::usage(format!("j must be at least 1/2, got {s}")))
}

/// Evenly spaced points, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| if i + 1 == self.n { self.hi } else { self.lo + i as f64 * step })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = WalkError;

    /// `lo:hi:n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || WalkError::usage(format!("grid must look like lo:hi:n, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(bad());
        };
        let lo = parse_angle(lo).map_err(|_| bad())?;
        let hi = parse_angle(hi).map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n == 0 || hi < lo || (n > 1 && hi == lo) {
            return Err(bad());
        }
        Ok(Grid { lo, hi, n })
    }
}

/// Comma-separated list, e.g. `10,20,50`.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let out: Option<Vec<T>> = s.split(',').map(|p| p.trim().parse().ok()).collect();
    match out {
        Some(v) if !v.is_empty() => Ok(v),
        _ => Err(WalkError::usage(format!("cannot read {s:?} as a comma-separated list"))),
    }
}

/// `j` from a number of states `2j + 1 >= 2`.
pub fn j_from_states(states: usize) -> Result<HalfInt> {
    HalfInt::from_states(states).map_err(|_| WalkError::usage(format!("need at least 2 states, got {states}")))
}

/// Where a qudit came from, for manifests.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuditSource {
    Preset { name: String },
    File { path: String },
}

/// Read `re,im` pairs, one component per line from `q_j` down to `q_{-j}`.
///
/// Blank lines and lines starting with `#` are skipped; a lone number is a
/// real component.
pub fn read_qudit_file(path: &Path) -> Result<Qudit> {
    let text = std::fs::read_to_string(path)?;
    let mut amps = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || WalkError::Input(format!("{}:{}: expected `re,im`, got {line:?}", path.display(), no + 1));
        let mut fields = line.split(',').map(str::trim);
        let re: f64 = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let im: f64 = match fields.next() {
            Some(f) => f.parse().map_err(|_| bad())?,
            None => 0.0,
        };
        if fields.next().is_some() {
            return Err(bad());
        }
        amps.push(Complex64::new(re, im));
    }
    Qudit::new(amps)
}

/// A preset name (needs `j`) or the path of a qudit file (`j` optional but
/// must match the file when given).
pub fn resolve_qudit(spec: &str, j: Option<HalfInt>) -> Result<(Qudit, QuditSource)> {
    if PRESETS.contains(&spec) {
        let j = j.ok_or_else(|| WalkError::usage(format!("--j is required with preset {spec:?}")))?;
        let q = Qudit::preset(spec, j)?;
        return Ok((q, QuditSource::Preset { name: spec.to_string() }));
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(WalkError::Input(format!(
            "--qudit {spec:?} is neither a preset ({}) nor a readable file",
            PRESETS.join(", ")
        )));
    }
    let q = read_qudit_file(path)?;
    if let Some(j) = j {
        if j != q.j() {
            return Err(WalkError::Input(format!(
                "qudit file has {} components but --j {j} needs {}",
                q.dim(),
                j.dim()
            )));
        }
    }
    Ok((q, QuditSource::File { path: spec.to_string() }))
}
