//! Exact half-integers stored as doubled integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// A half-integer `value = doubled / 2`.
///
/// Used both for the walk label `j` (1/2, 1, 3/2, ...) and for the component
/// labels `m` with `|m| <= j`. All index arithmetic happens on the doubled
/// integer so parity checks stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_doubled(doubled: i32) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    /// A walk label `j >= 1/2`.
    pub fn spin(doubled: i32) -> Result<Self> {
        if doubled < 1 {
            return Err(WalkError::domain(format!(
                "j must be at least 1/2, got {}",
                HalfInt(doubled)
            )));
        }
        Ok(HalfInt(doubled))
    }

    /// The walk label whose model has `states = 2j + 1` components.
    pub fn from_states(states: usize) -> Result<Self> {
        if states < 2 {
            return Err(WalkError::domain(format!(
                "number of states 2j+1 must be at least 2, got {states}"
            )));
        }
        Self::spin(states as i32 - 1)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Number of components `2j + 1`.
    pub fn dim(self) -> usize {
        (self.0 + 1) as usize
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// `true` when `self` is a valid component label `m` for spin `j`:
    /// `|m| <= j` and `j - m` integral.
    pub fn is_component_of(self, j: HalfInt) -> bool {
        self.0.abs() <= j.0 && (j.0 - self.0).rem_euclid(2) == 0
    }

    /// The integer `self - other`; panics in debug builds when the difference
    /// is not integral.
    pub fn int_diff(self, other: HalfInt) -> i32 {
        debug_assert!((self.0 - other.0) % 2 == 0, "{self} - {other} is not an integer");
        (self.0 - other.0) / 2
    }

    /// Component labels `j, j-1, ..., -j` in matrix-row order.
    pub fn components(self) -> impl DoubleEndedIterator<Item = HalfInt> + ExactSizeIterator {
        let j2 = self.0;
        (0..j2 + 1).map(move |i| HalfInt(j2 - 2 * i))
    }

    /// Positive labels `m = j, j-1, ...` with `0 < m <= j`.
    pub fn positive_components(self) -> impl Iterator<Item = HalfInt> {
        self.components().filter(|m| m.0 > 0)
    }

    /// Matrix row index of component `m` (row `i` holds `m = j - i`).
    pub fn index_of(self, m: HalfInt) -> usize {
        debug_assert!(m.is_component_of(self));
        ((self.0 - m.0) / 2) as usize
    }

    /// Component label held by matrix row `i`.
    pub fn component_at(self, i: usize) -> HalfInt {
        HalfInt(self.0 - 2 * i as i32)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = WalkError;

    /// Accepts `"n/2"`, an integer, or a decimal ending in `.5` / `.0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || WalkError::usage(format!("cannot parse half-integer from {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "2" => Ok(HalfInt(num)),
                "1" => Ok(HalfInt(2 * num)),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<i32>() {
            return Ok(HalfInt(2 * n));
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let doubled = 2.0 * v;
        if doubled.fract() != 0.0 || !doubled.is_finite() {
            return Err(bad());
        }
        Ok(HalfInt(doubled as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!("11/2".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(11));
        assert_eq!("3".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(6));
        assert_eq!("2.5".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(5));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.25".parse::<HalfInt>().is_err());
        assert!("abc".parse::<HalfInt>().is_err());
    }

    #[test]
    fn component_labels_run_downward() {
        let j = HalfInt::from_doubled(3);
        let ms: Vec<i32> = j.components().map(|m| m.doubled()).collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
        assert_eq!(j.index_of(HalfInt::from_doubled(-1)), 2);
        assert_eq!(j.component_at(3), HalfInt::from_doubled(-3));
        assert_eq!(j.positive_components().count(), 2);
        assert_eq!(HalfInt::from_int(2).positive_components().count(), 2);
    }

    #[test]
    fn component_validity_checks_parity() {
        let j = HalfInt::from_int(1);
        assert!(HalfInt::from_int(0).is_component_of(j));
        assert!(!HalfInt::from_doubled(1).is_component_of(j));
        assert!(!HalfInt::from_int(2).is_component_of(j));
    }

    #[test]
    fn spin_rejects_zero() {
        assert!(HalfInt::spin(0).is_err());
        assert_eq!(HalfInt::from_states(12).unwrap(), HalfInt::from_doubled(11));
        assert_eq!(format!("{}", HalfInt::from_doubled(11)), "11/2");
        assert_eq!(format!("{}", HalfInt::from_doubled(4)), "2");
    }
}
