//! Small dense linear algebra over `Q`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Rational>>;

pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Solve `m x = b` for square nonsingular `m`.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or(Error::DivisionByZero)?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in c..=n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`; returns
/// coefficients from degree 0 upward.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    // Newton divided differences.
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut coeffs = alloc::vec![Rational::zero(); n];
    // Horner on the Newton form.
    for i in (0..n).rev() {
        // coeffs := coeffs * (X - x_i) + dd[i]
        let mut next = alloc::vec![Rational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}
