//! Truncated Laurent series in one variable with explicit precision.

use alloc::vec::Vec;

use super::field::{FieldElem, FieldRef};
use super::poly2::XPoly;
use crate::error::{Error, Result};

/// `sum_{e >= start} c_e x^e`, with every exponent `>= trunc` unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    field: FieldRef,
    start: i64,
    coeffs: Vec<FieldElem>,
    trunc: i64,
}

impl LaurentSeries {
    /// `x^shift * p`, known below `trunc`.
    pub fn from_poly(field: &FieldRef, p: &XPoly, shift: i64, trunc: i64) -> Result<Self> {
        if trunc <= shift {
            return Err(Error::InsufficientPrecision {
                needed: shift + 1,
                have: trunc,
            });
        }
        let len = (trunc - shift) as usize;
        let coeffs = (0..len)
            .map(|i| p.coeff(i).cloned().unwrap_or_else(|| field.zero()))
            .collect();
        Ok(Self {
            field: field.clone(),
            start: shift,
            coeffs,
            trunc,
        })
    }

    /// Build from explicit `(exponent, coefficient)` pairs.
    pub fn from_terms(field: &FieldRef, terms: &[(i64, FieldElem)], trunc: i64) -> Result<Self> {
        let start = terms.iter().map(|t| t.0).min().unwrap_or(trunc - 1).min(trunc - 1);
        if trunc <= start {
            return Err(Error::InsufficientPrecision {
                needed: start + 1,
                have: trunc,
            });
        }
        let mut coeffs = alloc::vec![field.zero(); (trunc - start) as usize];
        for (e, c) in terms {
            if *e < trunc {
                let k = (e - start) as usize;
                coeffs[k] = &coeffs[k] + c;
            }
        }
        Ok(Self {
            field: field.clone(),
            start,
            coeffs,
            trunc,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn coeff(&self, e: i64) -> Result<FieldElem> {
        if e >= self.trunc {
            return Err(Error::InsufficientPrecision {
                needed: e + 1,
                have: self.trunc,
            });
        }
        if e < self.start {
            return Ok(self.field.zero());
        }
        Ok(self.coeffs[(e - self.start) as usize].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let start = self.start.min(o.start);
        let trunc = self.trunc.min(o.trunc);
        let len = (trunc - start).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let e = start + i as i64;
                &self.coeff(e).expect("below truncation") + &o.coeff(e).expect("below truncation")
            })
            .collect();
        Self {
            field: self.field.clone(),
            start,
            coeffs,
            trunc,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &FieldElem) -> Self {
        Self {
            field: self.field.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let start = self.start + o.start;
        let trunc = (self.start + o.trunc).min(o.start + self.trunc);
        let len = (trunc - start).max(0) as usize;
        let mut coeffs = alloc::vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self {
            field: self.field.clone(),
            start,
            coeffs,
            trunc,
        }
    }

    /// Lowest exponent with a nonzero coefficient, or `None` if every known
    /// coefficient vanishes. Zero tests may split the field.
    pub fn valuation(&self) -> Result<Option<i64>> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.test_zero()? {
                return Ok(Some(self.start + i as i64));
            }
        }
        Ok(None)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation()?.ok_or(Error::InsufficientPrecision {
            needed: self.trunc + 1,
            have: self.trunc,
        })?;
        let off = (v - self.start) as usize;
        let u = &self.coeffs[off..];
        let len = u.len();
        let c0inv = u[0].inv()?;
        let mut w: Vec<FieldElem> = Vec::with_capacity(len);
        w.push(c0inv.clone());
        for n in 1..len {
            let mut s = self.field.zero();
            for k in 1..=n {
                s = &s + &(&u[k] * &w[n - k]);
            }
            w.push(-&(&s * &c0inv));
        }
        Ok(Self {
            field: self.field.clone(),
            start: -v,
            coeffs: w,
            trunc: self.trunc - 2 * v,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Coefficient of `x^{-1}`.
    pub fn residue(&self) -> Result<FieldElem> {
        if self.trunc <= -1 {
            return Err(Error::InsufficientPrecision {
                needed: 0,
                have: self.trunc,
            });
        }
        self.coeff(-1)
    }

    /// Order of the pole at 0 (0 when the series is holomorphic).
    pub fn pole_order(&self) -> Result<i64> {
        match self.valuation()? {
            Some(v) => Ok((-v).max(0)),
            None => Err(Error::InsufficientPrecision {
                needed: self.trunc + 1,
                have: self.trunc,
            }),
        }
    }
}
