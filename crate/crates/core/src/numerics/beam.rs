//! Stability beams: rays along which `|y|` must decrease on lifted paths.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::cform::{CForm, CPoly, C64};
use super::lift::{lift_path, LiftOptions, LiftStatus};
use super::path::{CPath, Piece};
use crate::error::{Error, Result};

/// Prepared forms for which beams are defined; `R` vanishes on `{x = 0}` for
/// the non-degenerate case and the weak separatrix is `{y = 0}` for the
/// saddle-node case.
#[derive(Clone, Debug, PartialEq)]
pub enum BeamModel {
    /// `lambda x dy - y (1 + R) dx`
    NonDegenerate { lambda: C64, r: CPoly },
    /// `x^(k+1) dy - y (1 + R) dx`
    SaddleNode { k: u32, r: CPoly },
}

impl BeamModel {
    pub fn form(&self) -> CForm {
        match self {
            BeamModel::NonDegenerate { lambda, r } => CForm::prepared_nondegenerate(*lambda, r),
            BeamModel::SaddleNode { k, r } => CForm::prepared_saddle_node(*k, C64::new(0.0, 0.0), r),
        }
    }

    fn r(&self) -> &CPoly {
        match self {
            BeamModel::NonDegenerate { r, .. } | BeamModel::SaddleNode { r, .. } => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BeamSpec {
    pub model: BeamModel,
    /// Base point in `z = log x`.
    pub z_star: C64,
    pub y_star: C64,
    pub delta: f64,
    pub n_rays: usize,
    pub t_max: f64,
    /// Polydisk `|x| < rho, |y| < r`.
    pub rho: f64,
    pub r: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub ray: usize,
    pub t: f64,
    pub before: f64,
    pub after: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayVerdict {
    pub theta: C64,
    pub monotone: bool,
    pub exit: LiftStatus,
    pub t_end: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BeamReport {
    pub delta: f64,
    /// Bound on `sup |R|` over the polydisk.
    pub m: f64,
    pub rays: Vec<RayVerdict>,
    pub violations: Vec<Violation>,
}

/// `theta_j = exp(i(-delta + (2j + 1) delta / n))`, strictly inside the beam.
pub fn ray_directions(delta: f64, n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(1.0, -delta + (2 * j + 1) as f64 * delta / n as f64))
        .collect()
}

/// Ray `t -> z_theta(t)`, `t` in `[0, t_max]`, as a path in `x`.
pub fn ray(model: &BeamModel, z_star: C64, theta: C64, t_max: f64) -> Piece {
    match model {
        BeamModel::NonDegenerate { lambda, .. } => Piece::LogSegment {
            from: z_star,
            to: z_star - theta * (lambda / lambda.norm()) * t_max,
        },
        BeamModel::SaddleNode { k, .. } => {
            let k = *k as f64;
            let ekz = (z_star * k).exp();
            Piece::Sampled(Arc::new(move |s| {
                let t = s * t_max;
                let z = z_star - (C64::new(1.0, 0.0) + theta * ekz * (k * t)).ln() / k;
                let x = z.exp();
                let dz = -theta * (z * k).exp();
                (x, x * dz * t_max)
            }))
        }
    }
}

/// Lift every sampled ray from `(z*, y*)` and record each increase of `|y|`
/// between consecutive accepted steps.
pub fn beam_verify(spec: &BeamSpec, opts: &LiftOptions) -> Result<BeamReport> {
    let m = spec.model.r().sup_on_polydisk(spec.rho, spec.r);
    if m >= 1.0 {
        return Err(Error::InvalidArgument(alloc::format!("sup |R| = {m} is not below 1")));
    }
    if spec.delta > libm::acos(m) + 1e-12 || spec.delta <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "opening {} exceeds arccos M = {}",
            spec.delta,
            libm::acos(m)
        )));
    }
    if spec.z_star.re >= libm::log(spec.rho) || spec.y_star.norm() >= spec.r {
        return Err(Error::InvalidArgument("base point outside the polydisk".into()));
    }
    let form = spec.model.form();
    let opts = LiftOptions {
        y_bound: Some(spec.r),
        x_bound: Some(spec.rho),
        record: true,
        ..*opts
    };
    let mut rays = Vec::new();
    let mut violations = Vec::new();
    for (j, theta) in ray_directions(spec.delta, spec.n_rays).into_iter().enumerate() {
        let path = CPath::new(alloc::vec![ray(&spec.model, spec.z_star, theta, spec.t_max)]);
        let res = lift_path(&form, &path, spec.y_star, &opts);
        let mut monotone = true;
        for w in res.samples.windows(2) {
            let (a, b) = (w[0].y.norm(), w[1].y.norm());
            if b > a * (1.0 + 1e-12) {
                monotone = false;
                violations.push(Violation { ray: j, t: w[1].t * spec.t_max, before: a, after: b });
            }
        }
        rays.push(RayVerdict {
            theta,
            monotone,
            exit: res.status,
            t_end: res.final_t * spec.t_max,
            steps: res.samples.len(),
        });
    }
    Ok(BeamReport { delta: spec.delta, m, rays, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::path::derivative;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spec(model: BeamModel, z: f64, delta: f64) -> BeamSpec {
        BeamSpec {
            model,
            z_star: c(z, 0.0),
            y_star: c(0.5, 0.2),
            delta,
            n_rays: 24,
            t_max: 10.0,
            rho: 1.0,
            r: 1.0,
        }
    }

    #[test]
    fn directions_inside() {
        let d = ray_directions(0.5, 4);
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|t| t.arg().abs() < 0.5));
        assert!((d[0].arg() + 0.375).abs() < 1e-15);
    }

    #[test]
    fn saddle_node_ray_solves_equation() {
        let model = BeamModel::SaddleNode { k: 2, r: CPoly::default() };
        let theta = C64::from_polar(1.0, 0.7);
        let p = ray(&model, c(-1.0, 0.3), theta, 3.0);
        // z' = -theta exp(2 z) with z = log x along the piece
        let z = |s: f64| {
            let (x, _) = p.eval(s);
            x.ln()
        };
        let s = 0.4;
        let dz = derivative(&z, s, 1e-4) / 3.0;
        assert!((dz + theta * (z(s) * 2.0).exp()).norm() < 1e-9);
        let (x, dx) = p.eval(s);
        assert!((dx - derivative(&|u| p.eval(u).0, s, 1e-4)).norm() < 1e-8 * x.norm().max(1.0));
    }

    #[test]
    fn hyperbolic_beam() {
        let s = spec(BeamModel::NonDegenerate { lambda: c(-1.0, 1.0), r: CPoly::default() }, -0.7, PI / 2.0 - 0.01);
        let r = beam_verify(&s, &LiftOptions::default()).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.rays.len(), 24);
    }

    #[test]
    fn perturbed_saddle_beam() {
        let model = BeamModel::NonDegenerate { lambda: c(-1.0, 0.0), r: CPoly::from_real(&[(1, 0, 0.5)]) };
        let r = beam_verify(&spec(model, -0.7, PI / 3.0), &LiftOptions::default()).unwrap();
        assert!((r.m - 0.5).abs() < 1e-15);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn model_saddle_node_beam() {
        let model = BeamModel::SaddleNode { k: 1, r: CPoly::default() };
        let r = beam_verify(&spec(model, libm::log(0.3), PI / 3.0), &LiftOptions::default()).unwrap();
        assert!(r.violations.is_empty());
    }

    #[test]
    fn backward_ray_grows() {
        // leaves x y = const: |y| increases as |x| decreases
        let form = BeamModel::NonDegenerate { lambda: c(-1.0, 0.0), r: CPoly::default() }.form();
        let path = CPath::new(alloc::vec![Piece::LogSegment { from: c(-0.7, 0.0), to: c(-3.0, 0.0) }]);
        let res = lift_path(&form, &path, c(0.1, 0.0), &LiftOptions::default());
        assert!(res.final_y.norm() > 0.1);
    }

    #[test]
    fn opening_too_wide() {
        let model = BeamModel::NonDegenerate { lambda: c(-1.0, 0.0), r: CPoly::from_real(&[(1, 0, 0.5)]) };
        assert!(beam_verify(&spec(model, -0.7, 1.1), &LiftOptions::default()).is_err());
    }
}
