//! Roughness of a planar curve: how far its tangent strays from the circular
//! direction `i gamma`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::cform::C64;
use crate::error::{Error, Result};

/// `{{theta}}` is `|theta|` below `pi/2` and infinite otherwise; the infinite
/// case is a flag rather than a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Roughness {
    Finite(f64),
    Infinite,
}

impl Roughness {
    pub fn is_infinite(self) -> bool {
        matches!(self, Roughness::Infinite)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Roughness::Finite(v) => Some(v),
            Roughness::Infinite => None,
        }
    }

    /// `self <= other + slack`, with the infinite value above every number.
    pub fn at_most(self, other: Roughness, slack: f64) -> bool {
        match (self, other) {
            (_, Roughness::Infinite) => true,
            (Roughness::Infinite, Roughness::Finite(_)) => false,
            (Roughness::Finite(a), Roughness::Finite(b)) => a <= b + slack,
        }
    }

    fn max(self, other: Roughness) -> Roughness {
        if self.at_most(other, 0.0) { other } else { self }
    }
}

const EDGE: f64 = 1e-12;

/// Angles `arg(gamma'/(i gamma))` at every sample, with derivatives from
/// central differences (one-sided at the ends of an open curve).
pub fn tangent_angles(pts: &[C64], closed: bool) -> Result<Vec<f64>> {
    let n = pts.len();
    if n < 3 {
        return Err(Error::InvalidArgument("need at least 3 samples".into()));
    }
    if pts.iter().any(|p| p.norm() == 0.0) {
        return Err(Error::InvalidArgument("curve passes through 0".into()));
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let d = if closed {
            pts[(j + 1) % n] - pts[(j + n - 1) % n]
        } else if j == 0 {
            pts[1] - pts[0]
        } else if j == n - 1 {
            pts[n - 1] - pts[n - 2]
        } else {
            pts[j + 1] - pts[j - 1]
        };
        if d.norm() == 0.0 {
            return Err(Error::InvalidArgument(alloc::format!("repeated sample at {j}")));
        }
        out.push((d / (C64::new(0.0, 1.0) * pts[j])).arg());
    }
    Ok(out)
}

/// Roughness of the curve in the orientation it is sampled in.
pub fn roughness(pts: &[C64], closed: bool) -> Result<Roughness> {
    let mut worst = Roughness::Finite(0.0);
    for theta in tangent_angles(pts, closed)? {
        if theta.abs() >= PI / 2.0 - EDGE {
            return Ok(Roughness::Infinite);
        }
        worst = worst.max(Roughness::Finite(theta.abs()));
    }
    Ok(worst)
}

/// Smaller of the roughness of both orientations.
pub fn roughness_unoriented(pts: &[C64], closed: bool) -> Result<Roughness> {
    let forward = roughness(pts, closed)?;
    let rev: Vec<C64> = pts.iter().rev().copied().collect();
    let backward = roughness(&rev, closed)?;
    Ok(if forward.at_most(backward, 0.0) { forward } else { backward })
}
