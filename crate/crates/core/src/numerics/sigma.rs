//! The holonomy domain `Sigma`: initial values `y0` over `x = rho` whose lift
//! around `|x| = rho` stays in `|y| < r`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::cform::{CForm, C64};
use super::lift::{lift_path, LiftOptions, LiftStatus};
use super::ode::Tolerances;
use super::path::CPath;
use super::roughness::{roughness, Roughness};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaOptions {
    pub grid: usize,
    pub directions: usize,
    pub bisection_steps: usize,
    pub lift: LiftOptions,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        Self {
            grid: 200,
            directions: 128,
            bisection_steps: 40,
            lift: LiftOptions {
                tol: Tolerances { rtol: 1e-8, ..Tolerances::default() },
                record: false,
                ..LiftOptions::default()
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaReport {
    pub rho: f64,
    pub r: f64,
    /// Row-major membership, `grid[i * n + j]` at `y0 = (x_j, y_i)`.
    pub grid: Vec<bool>,
    pub n: usize,
    /// The grid covers `[-extent, extent]^2`.
    pub extent: f64,
    pub contains_zero: bool,
    /// 4-connected components of the membership grid.
    pub components: usize,
    /// Boundary points, one per direction, counterclockwise.
    pub boundary: Vec<C64>,
    pub roughness: Roughness,
}

pub fn is_member(form: &CForm, rho: f64, r: f64, y0: C64, opts: &LiftOptions) -> bool {
    if y0.norm() >= r {
        return false;
    }
    let opts = LiftOptions { y_bound: Some(r), ..*opts };
    lift_path(form, &CPath::circle(rho, 0.0, 1), y0, &opts).status == LiftStatus::Complete
}

fn count_components(grid: &[bool], n: usize) -> usize {
    let mut seen = vec![false; grid.len()];
    let mut count = 0;
    for start in 0..grid.len() {
        if !grid[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k / n, k % n);
            let mut next = Vec::with_capacity(4);
            if i > 0 {
                next.push(k - n);
            }
            if i + 1 < n {
                next.push(k + n);
            }
            if j > 0 {
                next.push(k - 1);
            }
            if j + 1 < n {
                next.push(k + 1);
            }
            for m in next {
                if grid[m] && !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
    }
    count
}

/// Scan `Sigma` for the loop `|x| = rho`. The boundary is found by bisection
/// along rays from 0, and the grid is sized to the largest boundary radius.
pub fn sigma_domain(form: &CForm, rho: f64, r: f64, opts: &SigmaOptions) -> Result<SigmaReport> {
    if rho <= 0.0 || r <= 0.0 || opts.grid < 2 || opts.directions < 3 {
        return Err(Error::InvalidArgument("sigma_domain needs rho, r > 0 and a non-trivial grid".into()));
    }
    let member = |y0: C64| is_member(form, rho, r, y0, &opts.lift);
    let contains_zero = member(C64::new(0.0, 0.0));
    let mut boundary = Vec::with_capacity(opts.directions);
    for d in 0..opts.directions {
        let dir = C64::from_polar(1.0, 2.0 * PI * d as f64 / opts.directions as f64);
        let (mut lo, mut hi) = (0.0, r);
        for _ in 0..opts.bisection_steps {
            let mid = 0.5 * (lo + hi);
            if member(dir * mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        boundary.push(dir * lo);
    }
    let r_max = boundary.iter().map(|b| b.norm()).fold(0.0, f64::max);
    let extent = if r_max > 0.0 { 1.1 * r_max } else { r };
    let n = opts.grid;
    let step = 2.0 * extent / (n - 1) as f64;
    let mut grid = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            grid.push(member(C64::new(-extent + j as f64 * step, -extent + i as f64 * step)));
        }
    }
    let components = count_components(&grid, n);
    let roughness = if boundary.iter().any(|b| b.norm() == 0.0) {
        Roughness::Infinite
    } else {
        roughness(&boundary, true)?
    };
    Ok(SigmaReport { rho, r, grid, n, extent, contains_zero, components, boundary, roughness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::cform::CPoly;

    fn small() -> SigmaOptions {
        SigmaOptions { grid: 24, directions: 32, bisection_steps: 30, ..SigmaOptions::default() }
    }

    #[test]
    fn model_saddle_node_disk() {
        let w = CForm::prepared_saddle_node(1, C64::new(0.0, 0.0), &CPoly::default());
        let rep = sigma_domain(&w, 0.5, 0.1, &small()).unwrap();
        assert!(rep.contains_zero);
        assert_eq!(rep.components, 1);
        // |y| grows by e^{2/rho} at x = -rho
        let expected = 0.1 * libm::exp(-4.0);
        for b in &rep.boundary {
            assert!((b.norm() - expected).abs() < 1e-6 * expected + 1e-9, "{}", b.norm());
        }
        assert!(rep.roughness.value().unwrap() < 1e-3);
    }

    #[test]
    fn linear_saddle_full_disk() {
        let w = CForm::prepared_nondegenerate(C64::new(-1.0, 0.0), &CPoly::default());
        let rep = sigma_domain(&w, 0.5, 0.2, &small()).unwrap();
        for b in &rep.boundary {
            assert!((b.norm() - 0.2).abs() < 1e-6);
        }
        assert_eq!(rep.components, 1);
    }

    #[test]
    fn components_counted() {
        let g = [true, false, true, true, false, false, false, true, true];
        assert_eq!(count_components(&g, 3), 3);
    }
}
