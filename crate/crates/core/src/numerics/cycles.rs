//! Explicit tangent paths of the model saddle-node `x^2 dy - y dx`: the paths
//! `Gamma_c` and the cycle `gamma_c` on the pull-back by `(x, y) -> (x, 1 - y^2)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::cform::{CForm, CPoly, C64};
use super::lift::{lift_tangent, LiftOptions, LiftStatus, Projection, TangentPiece};
use super::path::{derivative, winding_number};
use crate::error::{Error, Result};

fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `exp(z) - 1` without cancellation for small `z`.
pub fn cexpm1(z: C64) -> C64 {
    let s = libm::sin(z.im / 2.0);
    c64(
        libm::expm1(z.re) * libm::cos(z.im) - 2.0 * s * s,
        libm::exp(z.re) * libm::sin(z.im),
    )
}

pub fn model_form() -> CForm {
    CForm::prepared_saddle_node(1, c64(0.0, 0.0), &CPoly::default())
}

/// `(y^2 - 1) dx - 2 y x^2 dy`
pub fn pullback_form() -> CForm {
    CForm::new(
        CPoly::from_real(&[(0, 2, 1.0), (0, 0, -1.0)]),
        CPoly::from_real(&[(2, 1, -2.0)]),
    )
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!("c = {c} is not in (0, 1)")))
    }
}

/// `Gamma_c(t) = (c e^{it}, exp(-(1 + e^{-it}) / c))` with its velocity,
/// optionally with each coordinate scaled.
pub fn gamma_c(c: f64, t: f64, x_scale: f64, y_scale: f64) -> [C64; 4] {
    let e = C64::from_polar(1.0, t);
    let x = e * c;
    let y = (-(c64(1.0, 0.0) + e.inv()) / c).exp();
    let dx = x * c64(0.0, 1.0);
    let dy = y * c64(0.0, 1.0) * e.inv() / c;
    [x * x_scale, y * y_scale, dx * x_scale, dy * y_scale]
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaReport {
    pub c: f64,
    pub start: (C64, C64),
    pub end: (C64, C64),
    pub endpoint_error: f64,
    pub max_residual: f64,
    /// `max |y e^{1/x} - e^{-1/c}|`
    pub max_h0_deviation: f64,
    pub samples: usize,
}

/// Check a (possibly perturbed) `Gamma_c` against the model.
pub fn gamma_c_check(c: f64, samples: usize, x_scale: f64, y_scale: f64) -> Result<GammaReport> {
    check_c(c)?;
    let form = model_form();
    let h0 = libm::exp(-1.0 / c);
    let target = (c64(-c, 0.0), c64(1.0, 0.0));
    let mut max_residual: f64 = 0.0;
    let mut max_h0: f64 = 0.0;
    for j in 0..samples {
        let t = -PI + 2.0 * PI * j as f64 / (samples - 1) as f64;
        let [x, y, dx, dy] = gamma_c(c, t, x_scale, y_scale);
        max_residual = max_residual.max(form.residual(x, y, dx, dy));
        max_h0 = max_h0.max((y * x.inv().exp() - h0).norm());
    }
    let [x0, y0, ..] = gamma_c(c, -PI, x_scale, y_scale);
    let [x1, y1, ..] = gamma_c(c, PI, x_scale, y_scale);
    let err = |x: C64, y: C64| (x - target.0).norm().max((y - target.1).norm());
    Ok(GammaReport {
        c,
        start: (x0, y0),
        end: (x1, y1),
        endpoint_error: err(x0, y0).max(err(x1, y1)),
        max_residual,
        max_h0_deviation: max_h0,
        samples,
    })
}

pub fn gamma_c_verify(c: f64, samples: usize) -> Result<GammaReport> {
    gamma_c_check(c, samples, 1.0, 1.0)
}

/// Point of `gamma_c` at `T` in `[0, 2 pi]`: the lift `Gamma_c^-(s)` for
/// `T <= pi`, then `Gamma_c^+` back, with `s = pi sin(tau)` so that the
/// square root stays smooth where it vanishes. Also returns `y^2 / (2 pi
/// sin^2(u/2))` whose square root is taken.
fn psi_point(c: f64, t: f64) -> (C64, C64, C64) {
    let (tau, sign) = if t <= PI { (t - PI / 2.0, -1.0) } else { (1.5 * PI - t, 1.0) };
    let s = PI * libm::sin(tau);
    let x = C64::from_polar(c, s);
    let u = PI / 2.0 - tau.abs();
    let su = libm::sin(u / 2.0);
    let beta = 2.0 * PI * su * su;
    let dir = if tau >= 0.0 { 1.0 } else { -1.0 };
    let g = if beta == 0.0 {
        c64(0.0, -dir / c)
    } else {
        // 1 + e^{-is} = -(e^{+-i beta} - 1)
        let e = -cexpm1(c64(0.0, dir * beta));
        let w = -cexpm1(-e / c);
        w / beta
    };
    let y = g.sqrt() * (sign * libm::sqrt(2.0 * PI) * su);
    (x, y, g)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiReport {
    pub c: f64,
    /// Distance between the two ends of the parametrized cycle.
    pub curve_gap: f64,
    pub max_residual: f64,
    pub lift_status: LiftStatus,
    /// Distance between the lifted end point and the start.
    pub closure_error: f64,
    pub winding_x0: Option<i64>,
    pub winding_y_plus1: Option<i64>,
    pub winding_y_minus1: Option<i64>,
    /// `None`: the cycle meets `{y = 0}` (at `(-c, 0)`).
    pub winding_y0: Option<i64>,
    pub samples: usize,
}

pub fn psi_cycle_points(c: f64, samples: usize) -> Result<Vec<(C64, C64)>> {
    check_c(c)?;
    let mut pts = Vec::with_capacity(samples);
    let mut prev_g: Option<C64> = None;
    for j in 0..samples {
        let t = 2.0 * PI * j as f64 / (samples - 1) as f64;
        let (x, y, g) = psi_point(c, t);
        if let Some(p) = prev_g {
            let crosses = (p.re < 0.0 || g.re < 0.0) && p.im * g.im < 0.0;
            if crosses {
                return Err(Error::Reparameterize);
            }
        }
        prev_g = Some(g);
        pts.push((x, y));
    }
    Ok(pts)
}

pub fn psi_cycle_verify(c: f64, samples: usize, opts: &LiftOptions) -> Result<PsiReport> {
    let pts = psi_cycle_points(c, samples)?;
    let form = pullback_form();
    let curve = |t: f64| {
        let (x, y, _) = psi_point(c, t);
        (x, y)
    };
    let h = 1e-5;
    let mut max_residual: f64 = 0.0;
    for j in 0..samples {
        let t = 2.0 * PI * j as f64 / (samples - 1) as f64;
        let (x, y) = curve(t);
        let dx = derivative(&|s| curve(s).0, t, h);
        let dy = derivative(&|s| curve(s).1, t, h);
        max_residual = max_residual.max(form.residual(x, y, dx, dy));
    }
    let w = 0.5;
    let pieces = [
        TangentPiece { projection: Projection::Y, from: 0.0, to: w },
        TangentPiece { projection: Projection::X, from: w, to: PI - w },
        TangentPiece { projection: Projection::Y, from: PI - w, to: PI + w },
        TangentPiece { projection: Projection::X, from: PI + w, to: 2.0 * PI - w },
        TangentPiece { projection: Projection::Y, from: 2.0 * PI - w, to: 2.0 * PI },
    ];
    let lift = lift_tangent(&form, &curve, &pieces, opts);
    let start = curve(0.0);
    let closure_error = (lift.end.0 - start.0).norm().max((lift.end.1 - start.1).norm());
    let end = curve(2.0 * PI);
    let xs: Vec<C64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<C64> = pts.iter().map(|p| p.1).collect();
    Ok(PsiReport {
        c,
        curve_gap: (end.0 - start.0).norm().max((end.1 - start.1).norm()),
        max_residual,
        lift_status: lift.status,
        closure_error,
        winding_x0: winding_number(&xs, c64(0.0, 0.0)),
        winding_y_plus1: winding_number(&ys, c64(1.0, 0.0)),
        winding_y_minus1: winding_number(&ys, c64(-1.0, 0.0)),
        winding_y0: winding_number(&ys, c64(0.0, 0.0)),
        samples,
    })
}
