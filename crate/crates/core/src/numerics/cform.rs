use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::poly2::Poly2;
use crate::algebra::rational::to_f64;
use crate::error::{Error, Result};
use crate::form::DiffForm;

pub type C64 = Complex64;

/// Complex polynomial in `x, y` as a list of `(i, j, c)` for `c x^i y^j`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CPoly {
    pub terms: Vec<(u32, u32, C64)>,
}

impl CPoly {
    pub fn new(terms: Vec<(u32, u32, C64)>) -> Self {
        Self { terms }
    }

    pub fn from_real(terms: &[(u32, u32, f64)]) -> Self {
        Self::new(terms.iter().map(|&(i, j, c)| (i, j, C64::new(c, 0.0))).collect())
    }

    pub fn from_poly2(p: &Poly2) -> Result<Self> {
        let mut terms = Vec::new();
        for (&(i, j), c) in p.terms() {
            let q = c.as_rational().ok_or(Error::NotRational)?;
            terms.push((i, j, C64::new(to_f64(&q), 0.0)));
        }
        Ok(Self { terms })
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        self.terms
            .iter()
            .fold(C64::new(0.0, 0.0), |acc, &(i, j, c)| acc + c * x.powu(i) * y.powu(j))
    }

    /// Sum of `|c| |x|^i |y|^j`, the natural size of the value.
    pub fn magnitude(&self, x: C64, y: C64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        self.terms
            .iter()
            .map(|&(i, j, c)| c.norm() * libm::pow(ax, i as f64) * libm::pow(ay, j as f64))
            .sum()
    }

    pub fn swap(&self) -> Self {
        Self::new(self.terms.iter().map(|&(i, j, c)| (j, i, c)).collect())
    }

    pub fn sup_on_polydisk(&self, rho: f64, r: f64) -> f64 {
        self.terms
            .iter()
            .fold(0.0, |m, &(i, j, c)| m + c.norm() * libm::pow(rho, i as f64) * libm::pow(r, j as f64))
    }
}

/// `A dx + B dy` with complex floating coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CForm {
    pub a: CPoly,
    pub b: CPoly,
}

impl CForm {
    pub fn new(a: CPoly, b: CPoly) -> Self {
        Self { a, b }
    }

    /// Rational forms only.
    pub fn from_form(w: &DiffForm) -> Result<Self> {
        Ok(Self::new(CPoly::from_poly2(w.a())?, CPoly::from_poly2(w.b())?))
    }

    /// The same foliation with the roles of `x` and `y` exchanged.
    pub fn swap(&self) -> Self {
        Self::new(self.b.swap(), self.a.swap())
    }

    /// `lambda x dy - y (1 + R) dx`
    pub fn prepared_nondegenerate(lambda: C64, r: &CPoly) -> Self {
        let mut a = alloc::vec![(0, 1, C64::new(-1.0, 0.0))];
        a.extend(r.terms.iter().map(|&(i, j, c)| (i, j + 1, -c)));
        Self::new(CPoly::new(a), CPoly::new(alloc::vec![(1, 0, lambda)]))
    }

    /// `x^(k+1) dy - y (1 + mu x^k + R) dx`
    pub fn prepared_saddle_node(k: u32, mu: C64, r: &CPoly) -> Self {
        let mut a = alloc::vec![(0, 1, C64::new(-1.0, 0.0))];
        if mu.norm() > 0.0 {
            a.push((k, 1, -mu));
        }
        a.extend(r.terms.iter().map(|&(i, j, c)| (i, j + 1, -c)));
        Self::new(CPoly::new(a), CPoly::new(alloc::vec![(k + 1, 0, C64::new(1.0, 0.0))]))
    }

    /// `|A dx + B dy| / (|A||dx| + |B||dy|)` along a tangent vector.
    pub fn residual(&self, x: C64, y: C64, dx: C64, dy: C64) -> f64 {
        let a = self.a.eval(x, y);
        let b = self.b.eval(x, y);
        let scale = a.norm() * dx.norm() + b.norm() * dy.norm();
        if scale == 0.0 {
            return 0.0;
        }
        (a * dx + b * dy).norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::NumberField;

    #[test]
    fn eval_and_swap() {
        let p = CPoly::from_real(&[(2, 0, 1.0), (0, 1, -3.0)]);
        let v = p.eval(C64::new(0.0, 1.0), C64::new(2.0, 0.0));
        assert_eq!(v, C64::new(-7.0, 0.0));
        assert_eq!(p.swap().eval(C64::new(2.0, 0.0), C64::new(0.0, 1.0)), v);
    }

    #[test]
    fn from_exact_form() {
        let q = NumberField::rationals();
        let w = DiffForm::new(
            Poly2::from_int_terms(&q, &[(0, 1, -1)]),
            Poly2::from_int_terms(&q, &[(2, 0, 1)]),
        )
        .unwrap();
        let c = CForm::from_form(&w).unwrap();
        assert_eq!(c, CForm::prepared_saddle_node(1, C64::new(0.0, 0.0), &CPoly::default()));
    }

    #[test]
    fn residual_of_tangent_vector() {
        let w = CForm::prepared_nondegenerate(C64::new(-1.0, 0.0), &CPoly::default());
        // leaves x y = const
        let (x, y) = (C64::new(0.3, 0.1), C64::new(0.2, -0.4));
        assert!(w.residual(x, y, x, -y) < 1e-15);
        assert!(w.residual(x, y, x, y) > 0.1);
    }
}
