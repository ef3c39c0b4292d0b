//! Dense univariate polynomials over a [`Coeff`] ring.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{divisors, lcm_denominators, Rational};
use super::Coeff;
use crate::error::{Error, Result};

/// Coefficients are stored from degree 0 upward; no trailing literal zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_repr()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(alloc::vec![c])
    }

    /// `c * X^n`
    pub fn monomial(c: C, n: usize) -> Self {
        let mut v = alloc::vec![c.zero_like(); n];
        v.push(c);
        Self::new(v)
    }

    /// `X - a`
    pub fn linear_root(a: &C) -> Self {
        Self::new(alloc::vec![a.negated(), a.one_like()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    /// Lowest index with a nonzero representation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_repr())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.negated()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = alloc::vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_repr() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Self::new(v)
    }

    /// Product truncated below degree `n`.
    pub fn mul_trunc(&self, o: &Self, n: usize) -> Self {
        if self.is_zero() || o.is_zero() || n == 0 {
            return Self::zero();
        }
        let z = self.coeffs[0].zero_like();
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(n);
        let mut v = alloc::vec![z; len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero_repr() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Self::new(v)
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiply by `X^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = alloc::vec![self.coeffs[0].zero_like(); n];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Drop leading coefficients that test as zero; may split.
    pub fn normalized(&self) -> Result<Self> {
        let mut v = self.coeffs.clone();
        while let Some(c) = v.last() {
            if c.test_zero()? {
                v.pop();
            } else {
                break;
            }
        }
        Ok(Self::new(v))
    }

    pub fn monic(&self) -> Result<Self> {
        let p = self.normalized()?;
        match p.lead() {
            None => Ok(p),
            Some(l) => {
                let inv = l.inverse()?;
                Ok(p.scale(&inv))
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let d = d.normalized()?;
        let Some(dl) = d.lead() else {
            return Err(Error::DivisionByZero);
        };
        let dinv = dl.inverse()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let z = dl.zero_like();
        let mut q = alloc::vec![z; r.len() - dd];
        for k in (0..r.len() - dd).rev() {
            let c = r[k + dd].times(&dinv);
            if c.is_zero_repr() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].minus(&c.times(b));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let mut a = self.normalized()?;
        let mut b = o.normalized()?;
        while !b.is_zero() {
            let r = a.rem(&b)?.normalized()?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        let p = self.normalized()?;
        if p.degree().unwrap_or(0) == 0 {
            return p.monic();
        }
        let g = p.gcd(&p.derivative())?;
        let (q, _) = p.div_rem(&g)?;
        q.monic()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = match self.coeffs.first() {
            Some(c) => Self::constant(c.one_like()),
            None => return Self::zero(),
        };
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p(q(X))`
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(c.clone()));
        }
        acc
    }
}

impl UPoly<Rational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&n| super::rational::int(n)).collect())
    }

    /// Integer polynomial with the same roots.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = lcm_denominators(self.coeffs.iter());
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false),
        }
    }
}

/// Rational roots with multiplicities, plus the squarefree monic residual
/// carrying the remaining roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit {
    pub roots: Vec<(Rational, usize)>,
    pub residual: UPoly<Rational>,
}

pub fn rational_roots(p: &UPoly<Rational>) -> Result<RootSplit> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rest = p.clone();
    let mut roots = Vec::new();
    let zero_mult = rest.valuation().unwrap_or(0);
    if zero_mult > 0 {
        rest = UPoly::new(rest.coeffs[zero_mult..].to_vec());
        roots.push((Rational::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) > 0 {
        let ints = rest.primitive_integer();
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        let ps = divisors(&a0)?;
        let qs = divisors(&an)?;
        let mut cands: Vec<Rational> = Vec::new();
        for pp in &ps {
            for qq in &qs {
                for s in [1i64, -1] {
                    let c = Rational::new(pp * BigInt::from(s), qq.clone());
                    if !cands.contains(&c) {
                        cands.push(c);
                    }
                }
            }
        }
        cands.sort();
        for c in cands {
            let lin = UPoly::linear_root(&c);
            let mut m = 0;
            loop {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                let (q, r) = rest.div_rem(&lin)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                roots.push((c, m));
            }
        }
    }
    let residual = if rest.degree().unwrap_or(0) == 0 {
        UPoly::constant(Rational::one())
    } else {
        rest.squarefree_part()?
    };
    Ok(RootSplit { roots, residual })
}

impl<C: Coeff + fmt::Display> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_repr() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}
