//! Discrete-time quantum walks on the line with `(2j+1)`-component internal
//! states and Wigner rotation coins, together with the exact long-time limit
//! density of the pseudovelocity `X_t / t`.

pub mod analysis;
pub mod error;
pub mod half_int;
pub mod io;
pub mod limit;
pub mod precision;
pub mod qudit;
pub mod walk;
pub mod wigner;

pub use error::{Result, WalkError};
pub use half_int::HalfInt;
pub use limit::{LimitDensity, LimitSpec};
pub use qudit::Qudit;
pub use wigner::{CoinMatrix, EulerAngles};
