//! Factorials and extended-precision accumulation for the alternating
//! factorial sums behind the coin and weight matrices.

use std::sync::OnceLock;

use twofloat::TwoFloat;

/// Largest `n` for which `n!` is finite in `f64`.
pub const MAX_FACTORIAL: usize = 170;

fn dd_table() -> &'static [TwoFloat] {
    static TABLE: OnceLock<Vec<TwoFloat>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(MAX_FACTORIAL + 1);
        let mut acc = TwoFloat::from(1.0);
        t.push(acc);
        for n in 1..=MAX_FACTORIAL {
            acc *= n as f64;
            t.push(acc);
        }
        t
    })
}

fn ln_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // ln n! accumulated in double-double and rounded once
        let mut t = Vec::with_capacity(4 * MAX_FACTORIAL);
        let mut acc = TwoFloat::from(0.0);
        t.push(0.0);
        for n in 1..4 * MAX_FACTORIAL {
            acc += TwoFloat::from(n as f64).ln();
            t.push(f64::from(acc));
        }
        t
    })
}

/// `n!` in double-double precision. `n` must not exceed [`MAX_FACTORIAL`].
pub fn factorial_dd(n: usize) -> TwoFloat {
    dd_table()[n]
}

/// `n!` as `f64`.
pub fn factorial(n: usize) -> f64 {
    f64::from(dd_table()[n])
}

/// `ln n!`.
pub fn ln_factorial(n: usize) -> f64 {
    let t = ln_table();
    if n < t.len() {
        t[n]
    } else {
        // Stirling series; far beyond any table use in this crate
        let x = n as f64 + 1.0;
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
    }
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Integer powers `base^0 ..= base^max` in double-double.
pub fn dd_powers(base: TwoFloat, max: usize) -> Vec<TwoFloat> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = TwoFloat::from(1.0);
    out.push(acc);
    for _ in 0..max {
        acc *= base;
        out.push(acc);
    }
    out
}

/// `a / b` to double-double accuracy.
///
/// `TwoFloat`'s own quotient is good to about one `f64` ulp only; two residual
/// corrections restore the low word.
pub fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

/// Nearest `f64` to a double-double value.
pub fn dd_to_f64(x: TwoFloat) -> f64 {
    x.hi() + x.lo()
}

/// Double-double accumulator that also records `sum |term|` so callers can
/// report how much cancellation a sum suffered.
#[derive(Clone, Copy, Debug)]
pub struct TrackedSum {
    sum: TwoFloat,
    magnitude: f64,
}

impl Default for TrackedSum {
    fn default() -> Self {
        TrackedSum {
            sum: TwoFloat::from(0.0),
            magnitude: 0.0,
        }
    }
}

impl TrackedSum {
    pub fn add(&mut self, term: TwoFloat) {
        self.sum += term;
        self.magnitude += dd_to_f64(term).abs();
    }

    pub fn value(&self) -> f64 {
        dd_to_f64(self.sum)
    }

    pub fn value_dd(&self) -> TwoFloat {
        self.sum
    }

    /// `sum |term| / |sum|`; 1 when there was no cancellation, infinite when
    /// the sum vanished exactly but terms did not.
    pub fn cancellation_ratio(&self) -> f64 {
        let v = self.value().abs();
        if self.magnitude == 0.0 {
            1.0
        } else if v == 0.0 {
            f64::INFINITY
        } else {
            (self.magnitude / v).max(1.0)
        }
    }
}
