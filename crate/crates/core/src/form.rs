//! Polynomial 1-forms `A dx + B dy` and their dual vector fields
//! `B d/dx - A d/dy`.

use core::fmt;

use crate::algebra::field::{FieldElem, FieldRef, NumberField};
use crate::algebra::poly2::Poly2;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm {
    a: Poly2,
    b: Poly2,
}

/// Jacobian of the dual vector field at the origin,
/// `[[B_x, B_y], [-A_x, -A_y]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearData {
    pub matrix: [[FieldElem; 2]; 2],
    pub trace: FieldElem,
    pub det: FieldElem,
}

impl LinearData {
    pub fn from_matrix(m: [[FieldElem; 2]; 2]) -> Self {
        let trace = &m[0][0] + &m[1][1];
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        Self {
            matrix: m,
            trace,
            det,
        }
    }

    pub fn field(&self) -> &FieldRef {
        self.trace.field()
    }

    /// True when the matrix is zero on every branch.
    pub fn is_zero(&self) -> Result<bool> {
        for row in &self.matrix {
            for e in row {
                if !e.test_zero()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl DiffForm {
    pub fn new(a: Poly2, b: Poly2) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroForm);
        }
        if !NumberField::same(a.field(), b.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Poly2 {
        &self.a
    }

    pub fn b(&self) -> &Poly2 {
        &self.b
    }

    pub fn field(&self) -> &FieldRef {
        self.a.field()
    }

    /// `(B, -A)`, the components of the dual vector field.
    pub fn vector_field(&self) -> (Poly2, Poly2) {
        (self.b.clone(), -&self.a)
    }

    /// Divide by `gcd(A, B)`; returns the primitive form and the cofactor.
    pub fn normalize_primitive(&self) -> Result<(DiffForm, Poly2)> {
        let g = self.a.gcd(&self.b)?;
        if g.total_degree() == Some(0) {
            return Ok((self.clone(), Poly2::one(self.field())));
        }
        let a = self.a.div_exact(&g)?.expect("gcd divides");
        let b = self.b.div_exact(&g)?.expect("gcd divides");
        Ok((DiffForm { a, b }, g))
    }

    pub fn is_singular_at_origin(&self) -> Result<bool> {
        Ok(self.a.constant_term().test_zero()? && self.b.constant_term().test_zero()?)
    }

    pub fn linear_part(&self) -> Result<LinearData> {
        if !self.is_singular_at_origin()? {
            return Err(Error::RegularPoint);
        }
        Ok(LinearData::from_matrix([
            [self.b.coeff(1, 0), self.b.coeff(0, 1)],
            [-&self.a.coeff(1, 0), -&self.a.coeff(0, 1)],
        ]))
    }

    /// `min(ord A, ord B)`.
    pub fn multiplicity(&self) -> u32 {
        match (self.a.ord(), self.b.ord()) {
            (Some(p), Some(q)) => p.min(q),
            (Some(p), None) | (None, Some(p)) => p,
            (None, None) => 0,
        }
    }

    /// `v(f) = B f_x - A f_y` lies in `(f)`.
    pub fn is_invariant_curve(&self, f: &Poly2) -> Result<bool> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let vf = &(&self.b * &f.dx()) - &(&self.a * &f.dy());
        Ok(vf.div_exact(f)?.is_some())
    }

    /// Pull back along `(x, y) = (u(X, Y), v(X, Y))`.
    pub fn pullback(&self, u: &Poly2, v: &Poly2) -> DiffForm {
        let a = self.a.subst(u, v);
        let b = self.b.subst(u, v);
        DiffForm {
            a: &(&a * &u.dx()) + &(&b * &v.dx()),
            b: &(&a * &u.dy()) + &(&b * &v.dy()),
        }
    }

    /// The form in coordinates centred at `(p, q)`.
    pub fn translate_origin(&self, p: &FieldElem, q: &FieldElem) -> DiffForm {
        DiffForm {
            a: self.a.translate(p, q),
            b: self.b.translate(p, q),
        }
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap(&self) -> DiffForm {
        DiffForm {
            a: self.b.swap(),
            b: self.a.swap(),
        }
    }

    pub fn scale(&self, c: &Poly2) -> DiffForm {
        DiffForm {
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    pub fn div_monomial(&self, i: u32, j: u32) -> Option<DiffForm> {
        Some(DiffForm {
            a: self.a.div_monomial(i, j)?,
            b: self.b.div_monomial(i, j)?,
        })
    }

    pub fn reduce_into(&self, field: &FieldRef) -> DiffForm {
        DiffForm {
            a: self.a.reduce_into(field),
            b: self.b.reduce_into(field),
        }
    }

    pub fn map_generator(&self, image: &FieldElem) -> DiffForm {
        DiffForm {
            a: self.a.map_generator(image),
            b: self.b.map_generator(image),
        }
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.a, self.b)
    }
}
