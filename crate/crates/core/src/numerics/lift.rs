//! Lifting paths of the `x`-plane into leaves: `y' = -(A/B)(x, y) x'`.

use alloc::vec::Vec;

use super::cform::{CForm, C64};
use super::ode::{dopri5, Halt, Tolerances};
use super::path::{derivative, CPath};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftOptions {
    pub tol: Tolerances,
    /// Transversality fails when `|B| <= guard * (|A| + |B|)` termwise.
    pub guard: f64,
    pub y_bound: Option<f64>,
    pub x_bound: Option<f64>,
    pub max_steps: usize,
    pub record: bool,
}

impl Default for LiftOptions {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            guard: 1e-12,
            y_bound: None,
            x_bound: None,
            max_steps: 200_000,
            record: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftStatus {
    Complete,
    LeftDomain,
    TransversalityFailure,
    /// Step size underflow or step budget exhausted.
    IntegrationFailure,
}

impl LiftStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftStatus::Complete => "complete",
            LiftStatus::LeftDomain => "left-domain",
            LiftStatus::TransversalityFailure => "transversality-failure",
            LiftStatus::IntegrationFailure => "integration-failure",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftSample {
    pub t: f64,
    pub x: C64,
    pub y: C64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult {
    pub samples: Vec<LiftSample>,
    pub status: LiftStatus,
    pub max_form_residual: f64,
    pub final_t: f64,
    pub final_y: C64,
    pub error_estimate: f64,
}

struct Transversality;

fn slope(form: &CForm, x: C64, y: C64, guard: f64) -> Result<C64, Transversality> {
    let b = form.b.eval(x, y);
    let scale = form.a.magnitude(x, y) + form.b.magnitude(x, y);
    if b.norm() <= guard * scale || scale == 0.0 {
        return Err(Transversality);
    }
    Ok(-form.a.eval(x, y) / b)
}

fn piece_start(form: &CForm, piece: &super::path::Piece, y: C64, guard: f64) -> Option<(f64, C64, C64)> {
    let (x, dx) = piece.eval(0.0);
    slope(form, x, y, guard).ok().map(|m| (0.0, y, m * dx))
}

/// Largest `|y|` on the cubic Hermite interpolant between two accepted
/// steps, so that a bound on `|y|` is not skipped over between them.
fn hermite_peak(a: (f64, C64, C64), b: (f64, C64, C64)) -> f64 {
    let h = b.0 - a.0;
    let at = |u: f64| {
        let (u2, u3) = (u * u, u * u * u);
        (a.1 * (2.0 * u3 - 3.0 * u2 + 1.0)
            + a.2 * (h * (u3 - 2.0 * u2 + u))
            + b.1 * (-2.0 * u3 + 3.0 * u2)
            + b.2 * (h * (u3 - u2)))
            .norm()
    };
    const N: usize = 8;
    let (mut best, mut best_u) = (a.1.norm().max(b.1.norm()), 0.0);
    for j in 1..N {
        let u = j as f64 / N as f64;
        let v = at(u);
        if v > best {
            best = v;
            best_u = u;
        }
    }
    if best_u == 0.0 {
        return best;
    }
    let (mut lo, mut hi) = (best_u - 1.0 / N as f64, best_u + 1.0 / N as f64);
    for _ in 0..30 {
        let (m1, m2) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
        if at(m1) < at(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    best.max(at(0.5 * (lo + hi)))
}

/// Lift `path` starting from `(path.start(), y0)`.
pub fn lift_path(form: &CForm, path: &CPath, y0: C64, opts: &LiftOptions) -> LiftResult {
    let mut res = LiftResult {
        samples: Vec::new(),
        status: LiftStatus::Complete,
        max_form_residual: 0.0,
        final_t: 0.0,
        final_y: y0,
        error_estimate: 0.0,
    };
    let x0 = path.start();
    if opts.record {
        res.samples.push(LiftSample { t: 0.0, x: x0, y: y0 });
    }
    if slope(form, x0, y0, opts.guard).is_err() {
        res.status = LiftStatus::TransversalityFailure;
        return res;
    }
    let mut y = y0;
    for (i, piece) in path.pieces.iter().enumerate() {
        let base = i as f64;
        let mut left = false;
        let mut residual: f64 = 0.0;
        let mut samples = Vec::new();
        let mut prev = piece_start(form, piece, y, opts.guard);
        let out = dopri5(
            |s, y| {
                let (x, dx) = piece.eval(s);
                Ok::<C64, Transversality>(slope(form, x, y, opts.guard)? * dx)
            },
            0.0,
            1.0,
            y,
            opts.tol,
            opts.max_steps,
            |s, y| {
                let (x, dx) = piece.eval(s);
                let dy = match slope(form, x, y, opts.guard) {
                    Ok(m) => {
                        residual = residual.max(form.residual(x, y, dx, m * dx));
                        Some(m * dx)
                    }
                    Err(_) => None,
                };
                if opts.record {
                    samples.push(LiftSample { t: base + s, x, y });
                }
                let peak = match (prev, dy) {
                    (Some(p), Some(dy)) => hermite_peak(p, (s, y, dy)),
                    _ => y.norm(),
                };
                if let Some(dy) = dy {
                    prev = Some((s, y, dy));
                }
                let out_y = opts.y_bound.is_some_and(|r| peak >= r);
                let out_x = opts.x_bound.is_some_and(|r| x.norm() >= r);
                left = out_x || out_y;
                !left
            },
        );
        res.samples.extend(samples);
        res.max_form_residual = res.max_form_residual.max(residual);
        match out {
            Err(Transversality) => {
                res.status = LiftStatus::TransversalityFailure;
                if let Some(s) = res.samples.last() {
                    res.final_t = s.t;
                    res.final_y = s.y;
                }
                return res;
            }
            Ok(o) => {
                y = o.y;
                res.final_t = base + o.t;
                res.final_y = o.y;
                res.error_estimate += o.error_sum;
                match o.halt {
                    Halt::Completed => {}
                    Halt::Stopped => {
                        res.status = LiftStatus::LeftDomain;
                        return res;
                    }
                    Halt::MaxSteps | Halt::StepUnderflow => {
                        res.status = if left { LiftStatus::LeftDomain } else { LiftStatus::IntegrationFailure };
                        return res;
                    }
                }
            }
        }
    }
    res
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolonomyPoint {
    pub y0: C64,
    pub y1: C64,
    pub status: LiftStatus,
    pub error_estimate: f64,
}

/// Holonomy of a closed path on the transversal `{x = x(0)}`.
pub fn holonomy(form: &CForm, loop_: &CPath, grid: &[C64], opts: &LiftOptions) -> Vec<HolonomyPoint> {
    let opts = LiftOptions { record: false, ..*opts };
    grid.iter()
        .map(|&y0| {
            let r = lift_path(form, loop_, y0, &opts);
            HolonomyPoint { y0, y1: r.final_y, status: r.status, error_estimate: r.error_estimate }
        })
        .collect()
}

/// `n` points evenly spread on the circle `|y| = radius`.
pub fn circle_grid(radius: f64, n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(radius, 2.0 * core::f64::consts::PI * (j as f64 + 0.5) / n as f64))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Follow the `x` coordinate of the curve, solve for `y`.
    X,
    /// Follow `y`, solve for `x`.
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPiece {
    pub projection: Projection,
    pub from: f64,
    pub to: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentLift {
    pub points: Vec<LiftSample>,
    pub status: LiftStatus,
    pub end: (C64, C64),
}

/// Lift a curve `t -> (x(t), y(t))` through consecutive pieces, each following
/// one coordinate of the curve (shifted to the current lifted point) and
/// solving for the other one.
pub fn lift_tangent(
    form: &CForm,
    curve: &dyn Fn(f64) -> (C64, C64),
    pieces: &[TangentPiece],
    opts: &LiftOptions,
) -> TangentLift {
    let swapped = form.swap();
    let (mut x, mut y) = curve(pieces[0].from);
    let mut points = alloc::vec![LiftSample { t: pieces[0].from, x, y }];
    for p in pieces {
        let h = 1e-5 * (p.to - p.from).abs();
        let (along, other, w): (fn((C64, C64)) -> C64, C64, &CForm) = match p.projection {
            Projection::X => (|c| c.0, y, form),
            Projection::Y => (|c| c.1, x, &swapped),
        };
        let offset = match p.projection {
            Projection::X => x - curve(p.from).0,
            Projection::Y => y - curve(p.from).1,
        };
        let base = |t: f64| along(curve(t)) + offset;
        let out = dopri5(
            |t, v| {
                let u = base(t);
                let du = derivative(&|s| along(curve(s)), t, h);
                Ok::<C64, Transversality>(slope(w, u, v, opts.guard)? * du)
            },
            p.from,
            p.to,
            other,
            opts.tol,
            opts.max_steps,
            |t, v| {
                let u = base(t);
                let (px, py) = match p.projection {
                    Projection::X => (u, v),
                    Projection::Y => (v, u),
                };
                points.push(LiftSample { t, x: px, y: py });
                true
            },
        );
        match out {
            Ok(o) if o.halt == Halt::Completed => {
                let u = base(p.to);
                (x, y) = match p.projection {
                    Projection::X => (u, o.y),
                    Projection::Y => (o.y, u),
                };
            }
            Ok(_) => {
                return TangentLift { points, status: LiftStatus::IntegrationFailure, end: (x, y) };
            }
            Err(Transversality) => {
                return TangentLift { points, status: LiftStatus::TransversalityFailure, end: (x, y) };
            }
        }
    }
    TangentLift { points, status: LiftStatus::Complete, end: (x, y) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::cform::CPoly;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn model_sn() -> CForm {
        CForm::prepared_saddle_node(1, c(0.0, 0.0), &CPoly::default())
    }

    fn euler() -> CForm {
        CForm::new(CPoly::from_real(&[(0, 1, -1.0), (1, 0, -1.0)]), CPoly::from_real(&[(2, 0, 1.0)]))
    }

    #[test]
    fn linear_monodromy() {
        // lambda x dy - y dx lifted over |x| = 1/2: y -> y exp(2 i pi / lambda)
        let lambda = -2.0 / 3.0;
        let w = CForm::prepared_nondegenerate(c(lambda, 0.0), &CPoly::default());
        let r = lift_path(&w, &CPath::circle(0.5, 0.0, 1), c(0.1, 0.0), &LiftOptions::default());
        assert_eq!(r.status, LiftStatus::Complete);
        let expect = c(0.1, 0.0) * C64::from_polar(1.0, 2.0 * PI / lambda);
        assert!((r.final_y - expect).norm() < 1e-8);
        // along {x = 0}: x -> x exp(2 i pi lambda)
        let s = lift_path(&w.swap(), &CPath::circle(0.5, 0.0, 1), c(0.1, 0.0), &LiftOptions::default());
        let expect = c(0.1, 0.0) * C64::from_polar(1.0, 2.0 * PI * lambda);
        assert!((s.final_y - expect).norm() < 1e-8);
    }

    #[test]
    fn model_strong_holonomy_is_identity() {
        let w = model_sn();
        for turns in [1, 2] {
            let r = lift_path(&w, &CPath::circle(0.2, 0.0, turns), c(0.05, 0.0), &LiftOptions::default());
            assert_eq!(r.status, LiftStatus::Complete);
            assert!((r.final_y - c(0.05, 0.0)).norm() < 1e-8, "{turns}: {}", r.final_y);
        }
    }

    #[test]
    fn euler_translation() {
        let r = lift_path(&euler(), &CPath::circle(0.2, 0.0, 1), c(0.01, 0.0), &LiftOptions::default());
        let expect = c(0.01, 0.0) + c(0.0, 2.0 * PI * libm::exp(-5.0));
        assert!((r.final_y - expect).norm() < 1e-6);
    }

    #[test]
    fn conservation_of_first_integral() {
        // y exp(1/x) along the lift of the model
        let w = model_sn();
        let r = lift_path(&w, &CPath::circle(0.3, 0.4, 1), c(0.02, 0.01), &LiftOptions::default());
        let h = |s: &LiftSample| s.y * (C64::new(1.0, 0.0) / s.x).exp();
        let h0 = h(&r.samples[0]);
        for s in &r.samples {
            assert!((h(s) - h0).norm() < 1e-9 * h0.norm().max(1.0));
        }
    }

    #[test]
    fn transversality_failure_at_start() {
        let w = model_sn();
        let p = CPath::new(alloc::vec![super::super::path::Piece::Segment { from: c(0.0, 0.0), to: c(0.1, 0.0) }]);
        let r = lift_path(&w, &p, c(0.1, 0.0), &LiftOptions::default());
        assert_eq!(r.status, LiftStatus::TransversalityFailure);
    }

    #[test]
    fn leaves_domain() {
        let w = model_sn();
        let opts = LiftOptions { y_bound: Some(0.1), ..LiftOptions::default() };
        // |y| grows like exp(-2 cos t) around |x| = 1/2 from x = 1/2
        let r = lift_path(&w, &CPath::circle(0.5, 0.0, 1), c(0.05, 0.0), &opts);
        assert_eq!(r.status, LiftStatus::LeftDomain);
        assert!(r.final_t < 1.0);
    }

    #[test]
    fn reversal_returns() {
        let w = euler();
        let p = CPath::circle_in_arcs(0.25, 0.3, 3);
        let opts = LiftOptions::default();
        let f = lift_path(&w, &p, c(0.02, -0.01), &opts);
        let b = lift_path(&w, &p.reversed(), f.final_y, &opts);
        assert!((b.final_y - c(0.02, -0.01)).norm() < 1e-9);
    }

    #[test]
    fn tangent_lift_switches_projection() {
        // leaves x y = 1/10 of -(y dx + x dy)... here x dy + y dx
        let w = CForm::new(CPoly::from_real(&[(0, 1, 1.0)]), CPoly::from_real(&[(1, 0, 1.0)]));
        let curve = |t: f64| {
            let x = C64::from_polar(0.5, t);
            (x, C64::new(0.1, 0.0) / x)
        };
        let pieces = [
            TangentPiece { projection: Projection::X, from: 0.0, to: 2.0 },
            TangentPiece { projection: Projection::Y, from: 2.0, to: 4.0 },
            TangentPiece { projection: Projection::X, from: 4.0, to: 2.0 * PI },
        ];
        let r = lift_tangent(&w, &curve, &pieces, &LiftOptions::default());
        assert_eq!(r.status, LiftStatus::Complete);
        let (x, y) = curve(0.0);
        assert!((r.end.0 - x).norm() < 1e-9 && (r.end.1 - y).norm() < 1e-9);
    }
}
