//! Hermitian weight matrices `M^(j,m)(x)` whose quadratic forms weight each
//! scaled Konno channel of the limit density.

use nalgebra::DMatrix;
use num_complex::Complex64;
use twofloat::TwoFloat;

use super::konno::f_tau;
use crate::error::{Result, WalkError};
use crate::half_int::HalfInt;
use crate::precision::{dd_powers, TrackedSum, MAX_FACTORIAL};
use crate::qudit::Qudit;
use crate::wigner::{gamma_coeff_dd, gamma_range};

/// Cancellation ratios above this mark a matrix as ill-conditioned.
pub const CANCELLATION_FLAG: f64 = 1e10;

/// `M^(j,m)(x)` evaluated at one point, indexed like the coin
/// (row `i` holds `m1 = j - i`).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMatrix {
    pub j: HalfInt,
    pub m: HalfInt,
    pub x: f64,
    pub entries: DMatrix<Complex64>,
    /// `max |term products| / max |entry|` over the factorial sums that
    /// produced the entries; 1 for matrices built without such sums.
    pub cancellation: f64,
}

impl WeightMatrix {
    pub fn get(&self, m1: HalfInt, m2: HalfInt) -> Complex64 {
        self.entries[(self.j.index_of(m1), self.j.index_of(m2))]
    }

    pub fn is_ill_conditioned(&self) -> bool {
        self.cancellation > CANCELLATION_FLAG
    }

    /// `max |M_{m1 m2} - conj(M_{m2 m1})|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.entries.nrows();
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                worst = worst.max((self.entries[(a, b)] - self.entries[(b, a)].conj()).norm());
            }
        }
        worst
    }

    /// `max |M_{-m2,-m1}(x) - (-1)^(m1+m2+2m) M_{m1 m2}(-x)|`, with `reflected`
    /// the same matrix evaluated at `-x`.
    pub fn reflection_defect(&self, reflected: &WeightMatrix) -> f64 {
        let n = self.entries.nrows();
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let m1 = self.j.component_at(a);
                let m2 = self.j.component_at(b);
                let s = reflection_sign(m1, m2, self.m);
                let lhs = self.entries[(n - 1 - b, n - 1 - a)];
                worst = worst.max((lhs - reflected.entries[(a, b)] * s).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn max_entry_diff(&self, other: &WeightMatrix) -> f64 {
        (&self.entries - &other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `(-1)^(m1 + m2 + 2m)`.
fn reflection_sign(m1: HalfInt, m2: HalfInt, m: HalfInt) -> f64 {
    let e = (m1.doubled() + m2.doubled()) / 2 + m.doubled();
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Entries with `m2 >= |m1|` come from the explicit formula, entries with
/// `m1 >= |m2|` from hermiticity, the rest from the index reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sector {
    Formula,
    Adjoint,
    Reflected,
}

fn sector(m1: HalfInt, m2: HalfInt) -> Sector {
    if m2.doubled() >= m1.doubled().abs() {
        Sector::Formula
    } else if m1.doubled() >= m2.doubled().abs() {
        Sector::Adjoint
    } else {
        Sector::Reflected
    }
}

/// Fill a full matrix from a function giving formula-sector entries at `x`
/// and at `-x`.
fn complete<F>(j: HalfInt, m: HalfInt, mut formula: F) -> DMatrix<Complex64>
where
    F: FnMut(HalfInt, HalfInt, bool) -> Complex64,
{
    let n = j.dim();
    let mut direct = |m1: HalfInt, m2: HalfInt, negated: bool| match sector(m1, m2) {
        Sector::Formula => formula(m1, m2, negated),
        Sector::Adjoint => formula(m2, m1, negated).conj(),
        Sector::Reflected => unreachable!("reflection resolves in one step"),
    };
    DMatrix::from_fn(n, n, |a, b| {
        let m1 = j.component_at(a);
        let m2 = j.component_at(b);
        match sector(m1, m2) {
            Sector::Reflected => direct(-m2, -m1, true) * reflection_sign(m1, m2, m),
            _ => direct(m1, m2, false),
        }
    })
}

fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.doubled() < 1 || j.doubled() as usize > MAX_FACTORIAL {
        return Err(WalkError::domain(format!("unsupported j = {j}")));
    }
    if m.doubled() < 0 || !m.is_component_of(j) {
        return Err(WalkError::domain(format!(
            "weight matrix needs 0 <= m <= j with j - m integral, got j = {j}, m = {m}"
        )));
    }
    Ok(())
}

/// Pre-tabulated coefficients for repeated evaluation of `M^(j,m)(x)` from
/// the explicit element formula.
///
/// The formula's inner binomial sums are summed in closed form,
/// `sum_k C(A,k)(-x)^k = (1-x)^A`, after which the double sum over
/// `(l1, l2)` splits into a product of two single sums
///
/// ```text
/// P(m1) = sum_l Gamma(j,m1,m,l) (1-x)^(j+m1-l) (1+x)^l
/// Q(m2) = sum_l Gamma(j,m2,m,l) (1-x)^(j-m-l)  (1+x)^(l+m-m2)
/// M_{m1 m2} = 2^(1-2j) P(m1) Q(m2) f_tau^(m2-m1)(x) exp(-i (m2-m1) gamma)
/// ```
///
/// Both sums alternate in sign; they are accumulated in double-double.
#[derive(Clone, Debug)]
pub struct WeightKernel {
    j: HalfInt,
    m: HalfInt,
    tau: f64,
    gamma: f64,
    /// For each row `i`, the pairs `(l, Gamma(j, j-i, m, l))`.
    coeffs: Vec<Vec<(i32, TwoFloat)>>,
}

struct Factors {
    p: Vec<f64>,
    q: Vec<f64>,
    p_mag: Vec<f64>,
    q_mag: Vec<f64>,
    f: Vec<f64>,
}

impl WeightKernel {
    pub fn new(j: HalfInt, m: HalfInt, beta: f64, gamma: f64) -> Result<Self> {
        check_pair(j, m)?;
        let coeffs = j
            .components()
            .map(|mp| {
                gamma_range(j, mp, m)
                    .map(|ell| (ell, gamma_coeff_dd(j, mp, m, ell).expect("l within range")))
                    .collect()
            })
            .collect();
        Ok(WeightKernel {
            j,
            m,
            tau: (beta / 2.0).tan(),
            gamma,
            coeffs,
        })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }

    fn factors(&self, x: f64) -> Factors {
        let j = self.j;
        let n = j.dim();
        let j2 = j.doubled() as usize;
        let minus = dd_powers(TwoFloat::new_sub(1.0, x), j2);
        let plus = dd_powers(TwoFloat::new_add(1.0, x), j2);
        let mut p = Vec::with_capacity(n);
        let mut q = Vec::with_capacity(n);
        let mut p_mag = Vec::with_capacity(n);
        let mut q_mag = Vec::with_capacity(n);
        for (i, row) in self.coeffs.iter().enumerate() {
            let mp = j.component_at(i);
            let mut sp = TrackedSum::default();
            let mut sq = TrackedSum::default();
            for &(ell, g) in row {
                let e1 = (j.int_diff(-mp) - ell) as usize;
                sp.add(g * minus[e1] * plus[ell as usize]);
                let e2 = (j.int_diff(self.m) - ell) as usize;
                let e3 = (ell + self.m.int_diff(mp)) as usize;
                sq.add(g * minus[e2] * plus[e3]);
            }
            p.push(sp.value());
            q.push(sq.value());
            p_mag.push(sp.value().abs() * sp.cancellation_ratio());
            q_mag.push(sq.value().abs() * sq.cancellation_ratio());
        }
        let f = (0..=j2 as u32).map(|a| f_tau(a, self.tau, x)).collect();
        Factors { p, q, p_mag, q_mag, f }
    }

    /// Evaluate the full matrix at `x`.
    pub fn matrix(&self, x: f64) -> WeightMatrix {
        let j = self.j;
        let at = [self.factors(x), self.factors(-x)];
        let scale = 2f64.powi(1 - j.doubled());
        let mut term_mag = 0.0_f64;
        let entries = complete(j, self.m, |m1, m2, negated| {
            let fac = &at[negated as usize];
            let (a, b) = (j.index_of(m1), j.index_of(m2));
            let diff = m2.int_diff(m1);
            let fa = fac.f[diff as usize];
            term_mag = term_mag.max(scale * fac.p_mag[a] * fac.q_mag[b] * fa.abs());
            let v = scale * fac.p[a] * fac.q[b] * fa;
            Complex64::from_polar(1.0, -(diff as f64) * self.gamma) * v
        });
        let max_abs = entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let cancellation = if term_mag == 0.0 {
            1.0
        } else if max_abs == 0.0 {
            f64::INFINITY
        } else {
            (term_mag / max_abs).max(1.0)
        };
        WeightMatrix {
            j,
            m: self.m,
            x,
            entries,
            cancellation,
        }
    }

    /// `phi^dagger M(x) phi`.
    pub fn scalar(&self, x: f64, qudit: &Qudit) -> Result<f64> {
        weight_scalar(&self.matrix(x), qudit)
    }
}

/// `M^(j,m)(x)` from the explicit element formula completed by hermiticity
/// and index reflection.
pub fn weight_matrix_direct(j: HalfInt, m: HalfInt, x: f64, beta: f64, gamma: f64) -> Result<WeightMatrix> {
    Ok(WeightKernel::new(j, m, beta, gamma)?.matrix(x))
}

fn spin_half_base(x: f64, tau: f64, gamma: f64) -> DMatrix<Complex64> {
    let off = Complex64::from_polar(tau * x, gamma);
    DMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(1.0 - x, 0.0), off, off.conj(), Complex64::new(1.0 + x, 0.0)],
    )
}

/// `M^(j,j)(x)` built by climbing the recurrence from `j = 1/2`:
///
/// `M^(j,j)_{m1 m2} = c/2 (1-x) M^(j-1/2,j-1/2)_{m1-1/2, m2-1/2}` for `m1 != -j`,
/// with the boundary entry `M_{-j,j} = 2^(1-2j) f_tau^(2j)(x) exp(-2ij gamma)`
/// and `c = 2j / sqrt((j+m1)(j+m2))`.
pub fn weight_matrix_top_recursive(j: HalfInt, x: f64, beta: f64, gamma: f64) -> Result<WeightMatrix> {
    check_pair(j, j)?;
    let tau = (beta / 2.0).tan();
    // levels at +x and -x climb together; reflection needs both
    let mut level = [spin_half_base(x, tau, gamma), spin_half_base(-x, tau, gamma)];
    for j2 in 2..=j.doubled() {
        let jj = HalfInt::from_doubled(j2);
        let jv = jj.value();
        let boundary = |xs: f64| {
            Complex64::from_polar(1.0, -2.0 * jv * gamma) * 2f64.powi(1 - j2) * f_tau(j2 as u32, tau, xs)
        };
        let prev = &level;
        let next = complete(jj, jj, |m1, m2, negated| {
            let xs = if negated { -x } else { x };
            if m1 == -jj {
                debug_assert_eq!(m2, jj);
                boundary(xs)
            } else {
                let c = 2.0 * jv / ((jv + m1.value()) * (jv + m2.value())).sqrt();
                // the row of m1 - 1/2 at level j - 1/2 has the same index
                let (a, b) = (jj.index_of(m1), jj.index_of(m2));
                prev[negated as usize][(a, b)] * (0.5 * c * (1.0 - xs))
            }
        });
        let next_neg = complete(jj, jj, |m1, m2, negated| {
            // same recursion seen from -x: swap the roles of the two levels
            let xs = if negated { x } else { -x };
            if m1 == -jj {
                boundary(xs)
            } else {
                let c = 2.0 * jv / ((jv + m1.value()) * (jv + m2.value())).sqrt();
                let (a, b) = (jj.index_of(m1), jj.index_of(m2));
                prev[(!negated) as usize][(a, b)] * (0.5 * c * (1.0 - xs))
            }
        });
        level = [next, next_neg];
    }
    let [entries, _] = level;
    Ok(WeightMatrix {
        j,
        m: j,
        x,
        entries,
        cancellation: 1.0,
    })
}

/// `M^(j,j-1)(x) = 2 (jx + m1)(jx + m2) / (j (1-x)(1+x)) * M^(j,j)(x)`.
pub fn weight_matrix_second(j: HalfInt, x: f64, top: &WeightMatrix) -> Result<WeightMatrix> {
    if j.doubled() < 2 {
        return Err(WalkError::domain(format!("m = j - 1 needs j >= 1, got j = {j}")));
    }
    if top.j != j || top.m != j {
        return Err(WalkError::usage(format!(
            "expected M^({j},{j}), got M^({},{})",
            top.j, top.m
        )));
    }
    if (x.abs() - 1.0).abs() == 0.0 || x.abs() > 1.0 {
        return Err(WalkError::domain(format!("recurrence is singular at x = {x}")));
    }
    let jv = j.value();
    let denom = jv * (1.0 - x) * (1.0 + x);
    let n = j.dim();
    let entries = DMatrix::from_fn(n, n, |a, b| {
        let m1 = j.component_at(a).value();
        let m2 = j.component_at(b).value();
        top.entries[(a, b)] * (2.0 * (jv * x + m1) * (jv * x + m2) / denom)
    });
    Ok(WeightMatrix {
        j,
        m: HalfInt::from_doubled(j.doubled() - 2),
        x,
        entries,
        cancellation: top.cancellation,
    })
}

/// The real quadratic form `phi^dagger M phi`.
pub fn weight_scalar(mat: &WeightMatrix, qudit: &Qudit) -> Result<f64> {
    if qudit.j() != mat.j {
        return Err(WalkError::usage(format!(
            "qudit has {} components but the weight matrix is {}x{}",
            qudit.dim(),
            mat.j.dim(),
            mat.j.dim()
        )));
    }
    let phi = qudit.amplitudes();
    let form = phi.dotc(&(&mat.entries * phi));
    if form.im.abs() >= 1e-10 * form.re.abs().max(1.0) {
        return Err(WalkError::Numerical(format!(
            "quadratic form has imaginary part {:e}",
            form.im
        )));
    }
    Ok(form.re)
}
