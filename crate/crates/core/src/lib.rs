//! Exact reduction of singularities of holomorphic foliation germs in the plane.
//!
//! A germ is given by a polynomial 1-form `A dx + B dy` with coefficients in
//! `Q` or a finite extension `Q[t]/(m)`. The crate blows it up until every
//! singular point is reduced, classifies the reduced points, checks the
//! Camacho-Sad formula on the exceptional divisor, and detects dead branches,
//! initial components and strong presentability. The [`numerics`] module lifts
//! paths into leaves with an adaptive Runge-Kutta integrator.
//!
//! Orientation: the dual vector field of `A dx + B dy` is `B d/dx - A d/dy`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod analysis;
pub mod blowup;
pub mod error;
pub mod families;
pub mod form;
pub mod localtypes;
pub mod numerics;

pub use algebra::field::{FieldElem, FieldRef, NumberField, SplitEvent};
pub use algebra::laurent::LaurentSeries;
pub use algebra::poly2::Poly2;
pub use algebra::rational::{rat, Rational};
pub use algebra::upoly::UPoly;
pub use error::{Error, Result};
pub use form::{DiffForm, LinearData};
