//! Scalar abstraction shared by the numeric core.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point type the core can run on (`f32` or `f64`).
///
/// Tolerances are part of the trait because they depend on precision: the
/// metric checks and the simplex pivoting thresholds for `f32` would be
/// meaningless at the `f64` values.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Absolute slack allowed on the triangle inequality and symmetry checks.
    fn metric_tol() -> Self;
    /// Entries below this magnitude are treated as zero when pivoting.
    fn pivot_tol() -> Self;
    /// Feasibility slack for the simplex phase-one objective.
    fn feas_tol() -> Self;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any float")
    }
}

impl Scalar for f64 {
    fn metric_tol() -> Self {
        1e-12
    }
    fn pivot_tol() -> Self {
        1e-11
    }
    fn feas_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn metric_tol() -> Self {
        1e-5
    }
    fn pivot_tol() -> Self {
        1e-6
    }
    fn feas_tol() -> Self {
        1e-5
    }
}
