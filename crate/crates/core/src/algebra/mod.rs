//! Exact arithmetic: rationals, `Q[t]/(m)` with dynamic splitting, dense
//! univariate and sparse bivariate polynomials, truncated Laurent series.

pub mod field;
pub mod laurent;
pub mod linalg;
pub mod poly2;
pub mod primitive;
pub mod rational;
pub mod upoly;

use core::fmt::Debug;

use crate::error::Result;

/// Coefficient ring for [`upoly::UPoly`]. Zero tests and inversion may fail
/// with a split when the ring is a product of fields.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// True only for the literal zero representation.
    fn is_zero_repr(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times_int(&self, n: i64) -> Self;
    fn test_zero(&self) -> Result<bool>;
    fn inverse(&self) -> Result<Self>;
}
