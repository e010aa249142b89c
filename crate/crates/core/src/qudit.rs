//! Initial internal states of the walker.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;

/// A unit vector with `2j + 1` complex components; entry `i` holds `q_{j-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Qudit {
    j: HalfInt,
    amplitudes: DVector<Complex64>,
}

/// Named initial states understood by [`Qudit::preset`].
pub const PRESETS: [&str; 4] = ["up", "paper-sym", "fig1b", "center"];

impl Qudit {
    /// Normalises `amplitudes`; the length fixes `j`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(WalkError::Input(format!(
                "a qudit needs at least 2 components, got {}",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(WalkError::Input("qudit has non-finite components".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(WalkError::Input("cannot normalise the zero vector".into()));
        }
        let j = HalfInt::from_states(amplitudes.len())?;
        let amplitudes = DVector::from_iterator(amplitudes.len(), amplitudes.into_iter().map(|z| z / norm));
        Ok(Qudit { j, amplitudes })
    }

    /// `(1, 0, ..., 0)`: all weight on `m = j`.
    pub fn up(j: HalfInt) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); j.dim()];
        v[0] = Complex64::new(1.0, 0.0);
        Qudit::new(v).expect("unit vector")
    }

    /// `(q, 0, ..., 0, conj q)` with `q = (1 + i)/2`.
    pub fn symmetric(j: HalfInt) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); j.dim()];
        v[0] = Complex64::new(0.5, 0.5);
        v[j.dim() - 1] = Complex64::new(0.5, -0.5);
        Qudit::new(v).expect("unit vector")
    }

    /// The twelve-component asymmetric state `(1+i, 0, 1+i, 1, i, i, 1+i, i, i, 1+i, i, 1+i)`,
    /// normalised.
    pub fn asymmetric_twelve() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let v = vec![one + i, zero, one + i, one, i, i, one + i, i, i, one + i, i, one + i];
        Qudit::new(v).expect("non-zero vector")
    }

    /// All weight on `m = 0`; integer `j` only.
    pub fn center(j: HalfInt) -> Result<Self> {
        if !j.is_integer() {
            return Err(WalkError::Input(format!("preset 'center' needs integer j, got {j}")));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); j.dim()];
        v[j.index_of(HalfInt::from_int(0))] = Complex64::new(1.0, 0.0);
        Qudit::new(v)
    }

    pub fn preset(name: &str, j: HalfInt) -> Result<Self> {
        match name {
            "up" => Ok(Qudit::up(j)),
            "paper-sym" => Ok(Qudit::symmetric(j)),
            "fig1b" => {
                if j.dim() != 12 {
                    return Err(WalkError::Input(format!(
                        "preset 'fig1b' has 12 components but j = {j} needs {}",
                        j.dim()
                    )));
                }
                Ok(Qudit::asymmetric_twelve())
            }
            "center" => Qudit::center(j),
            other => Err(WalkError::Input(format!(
                "unknown qudit preset {other:?} (known: {})",
                PRESETS.join(", ")
            ))),
        }
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn component(&self, m: HalfInt) -> Complex64 {
        self.amplitudes[self.j.index_of(m)]
    }

    /// `true` when `q_{-m} = conj(q_m)` for every `m`.
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (self.amplitudes[n - 1 - i] - self.amplitudes[i].conj()).norm() <= tol)
    }
}
