//! `Q[t]/(m)` with `m` monic and squarefree but possibly reducible.
//!
//! Zero tests and inversion follow dynamic evaluation: when an element shares
//! a nontrivial factor with the modulus the operation returns
//! [`Error::Split`] and the caller continues on both factors.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::linalg;
use super::rational::Rational;
use super::upoly::UPoly;
use super::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SplitEvent {
    pub parent: UPoly<Rational>,
    pub factors: (UPoly<Rational>, UPoly<Rational>),
}

#[derive(Debug)]
pub struct NumberField {
    modulus: UPoly<Rational>,
    history: Vec<SplitEvent>,
    power_traces: Vec<Rational>,
}

pub type FieldRef = Arc<NumberField>;

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus
    }
}

impl NumberField {
    pub fn rationals() -> FieldRef {
        Self::build(UPoly::from_ints(&[0, 1]), Vec::new())
    }

    pub fn new(modulus: UPoly<Rational>) -> Result<FieldRef> {
        let m = modulus.monic()?;
        match m.degree() {
            None | Some(0) => {
                return Err(Error::InvalidArgument("modulus of degree 0".into()));
            }
            _ => {}
        }
        if !m.is_squarefree() {
            return Err(Error::InvalidArgument("modulus is not squarefree".into()));
        }
        Ok(Self::build(m, Vec::new()))
    }

    fn build(modulus: UPoly<Rational>, history: Vec<SplitEvent>) -> FieldRef {
        let power_traces = newton_power_sums(&modulus);
        Arc::new(Self {
            modulus,
            history,
            power_traces,
        })
    }

    pub fn modulus(&self) -> &UPoly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn history(&self) -> &[SplitEvent] {
        &self.history
    }

    pub fn same(a: &FieldRef, b: &FieldRef) -> bool {
        Arc::ptr_eq(a, b) || a.modulus == b.modulus
    }

    /// The two branch fields of a split of this field's modulus.
    pub fn branch(self: &FieldRef, ev: &SplitEvent) -> (FieldRef, FieldRef) {
        debug_assert_eq!(ev.parent, self.modulus);
        let mk = |f: &UPoly<Rational>| {
            let mut h = self.history.clone();
            h.push(ev.clone());
            Self::build(f.clone(), h)
        };
        (mk(&ev.factors.0), mk(&ev.factors.1))
    }

    pub fn elem(self: &FieldRef, coeffs: UPoly<Rational>) -> FieldElem {
        let coeffs = if coeffs.degree().unwrap_or(0) >= self.degree() {
            coeffs.rem(&self.modulus).expect("monic modulus")
        } else {
            coeffs
        };
        FieldElem {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_rational(self: &FieldRef, q: Rational) -> FieldElem {
        self.elem(UPoly::constant(q))
    }

    pub fn from_int(self: &FieldRef, n: i64) -> FieldElem {
        self.from_rational(super::rational::int(n))
    }

    pub fn zero(self: &FieldRef) -> FieldElem {
        self.elem(UPoly::zero())
    }

    pub fn one(self: &FieldRef) -> FieldElem {
        self.from_int(1)
    }

    /// The class of `t`.
    pub fn generator(self: &FieldRef) -> FieldElem {
        self.elem(UPoly::from_ints(&[0, 1]))
    }

    /// `Tr(t^i)` for `i < 2 deg - 1`.
    fn power_trace(&self, i: usize) -> Rational {
        self.power_traces[i].clone()
    }
}

/// Power sums of the roots of a monic polynomial, `p_0 .. p_{2n-2}`.
fn newton_power_sums(m: &UPoly<Rational>) -> Vec<Rational> {
    let n = m.degree().unwrap_or(0);
    let c = m.coeffs();
    // e-coefficients: m = X^n + c_{n-1} X^{n-1} + ... ; a_k = c_{n-k}
    let a = |k: usize| -> Rational {
        if k <= n {
            c[n - k].clone()
        } else {
            Rational::zero()
        }
    };
    let len = (2 * n).max(2) - 1;
    let mut p: Vec<Rational> = Vec::with_capacity(len);
    p.push(Rational::from_integer(n.into()));
    for k in 1..len {
        let mut s = Rational::zero();
        for i in 1..k {
            if i > n {
                break;
            }
            s += a(i) * &p[k - i];
        }
        if k <= n {
            s += a(k) * Rational::from_integer(k.into());
        }
        p.push(-s);
    }
    p
}

#[derive(Clone)]
pub struct FieldElem {
    field: FieldRef,
    coeffs: UPoly<Rational>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            write!(f, "{self}")
        } else {
            write!(f, "[{}] mod ({})", self, self.field.modulus)
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        NumberField::same(&self.field, &o.field) && self.coeffs == o.coeffs
    }
}

impl FieldElem {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &UPoly<Rational> {
        &self.coeffs
    }

    pub fn coeff_vec(&self) -> Vec<Rational> {
        (0..self.field.degree())
            .map(|i| self.coeffs.coeff(i).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeffs.coeffs()[0].clone()),
            _ => None,
        }
    }

    fn check(&self, o: &Self) {
        debug_assert!(
            NumberField::same(&self.field, &o.field),
            "field mismatch: {:?} vs {:?}",
            self.field.modulus,
            o.field.modulus
        );
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = &self.field.modulus;
        let (g, s) = ext_gcd(&self.coeffs, m)?;
        if g.degree() == Some(0) {
            return Ok(self.field.elem(s));
        }
        Err(Error::Split(split_event(m, &g)?))
    }

    /// Exact zero test on every branch; splits when the element is a zero divisor.
    pub fn test_zero(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        if self.coeffs.degree() == Some(0) {
            return Ok(false);
        }
        let m = &self.field.modulus;
        let g = self.coeffs.gcd(m)?;
        if g.degree() == Some(0) {
            return Ok(false);
        }
        Err(Error::Split(split_event(m, &g)?))
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: u32) -> FieldElem {
        let mut acc = self.field.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        let mut s = Rational::zero();
        for (i, c) in self.coeffs.coeffs().iter().enumerate() {
            s += c * self.field.power_trace(i);
        }
        s
    }

    /// Matrix of multiplication by `self` on the basis `1, t, .., t^{n-1}`;
    /// column `j` holds `self * t^j`.
    pub fn mult_matrix(&self) -> linalg::Matrix {
        let n = self.field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut basis = self.field.one();
        let t = self.field.generator();
        for _ in 0..n {
            cols.push((self * &basis).coeff_vec());
            basis = &basis * &t;
        }
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    pub fn norm(&self) -> Rational {
        linalg::det(&self.mult_matrix())
    }

    /// Characteristic polynomial of multiplication by `self`, from traces of
    /// powers via Newton's identities.
    pub fn charpoly(&self) -> UPoly<Rational> {
        let n = self.field.degree();
        let mut p = Vec::with_capacity(n + 1);
        let mut pw = self.field.one();
        p.push(Rational::from_integer(n.into()));
        for _ in 1..=n {
            pw = &pw * self;
            p.push(pw.trace());
        }
        // e_k from power sums
        let mut e = alloc::vec![Rational::one()];
        for k in 1..=n {
            let mut s = Rational::zero();
            for i in 1..=k {
                let term = &e[k - i] * &p[i];
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            e.push(s / Rational::from_integer(k.into()));
        }
        // X^n - e1 X^{n-1} + e2 X^{n-2} - ...
        let mut c = alloc::vec![Rational::zero(); n + 1];
        for (k, ek) in e.iter().enumerate() {
            let v = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
            c[n - k] = v;
        }
        UPoly::new(c)
    }

    /// Reduce into a field whose modulus divides this one's.
    pub fn reduce_into(&self, target: &FieldRef) -> FieldElem {
        target.elem(self.coeffs.rem(&target.modulus).expect("monic modulus"))
    }

    /// Image under the homomorphism sending `t` to `image`.
    pub fn map_generator(&self, image: &FieldElem) -> FieldElem {
        let mut acc = image.field.zero();
        for c in self.coeffs.coeffs().iter().rev() {
            acc = &(&acc * image) + &image.field.from_rational(c.clone());
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            coeffs: self.coeffs.scale(q),
        }
    }
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s a = g mod m`.
fn ext_gcd(a: &UPoly<Rational>, m: &UPoly<Rational>) -> Result<(UPoly<Rational>, UPoly<Rational>)> {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut s0, mut s1) = (UPoly::<Rational>::zero(), UPoly::constant(Rational::one()));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let l = r0.lead().ok_or(Error::DivisionByZero)?.recip();
    Ok((r0.scale(&l), s0.scale(&l)))
}

fn split_event(m: &UPoly<Rational>, g: &UPoly<Rational>) -> Result<SplitEvent> {
    let (q, r) = m.div_rem(g)?;
    debug_assert!(r.is_zero());
    Ok(SplitEvent {
        parent: m.clone(),
        factors: (g.monic()?, q.monic()?),
    })
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        self.check(o);
        FieldElem {
            field: self.field.clone(),
            coeffs: self.coeffs.add(&o.coeffs),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        self.check(o);
        FieldElem {
            field: self.field.clone(),
            coeffs: self.coeffs.sub(&o.coeffs),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        self.check(o);
        self.field.elem(self.coeffs.mul(&o.coeffs))
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            coeffs: self.coeffs.neg(),
        }
    }
}

impl Coeff for FieldElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero_repr(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times_int(&self, n: i64) -> Self {
        self.scale(&super::rational::int(n))
    }
    fn test_zero(&self) -> Result<bool> {
        FieldElem::test_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        write!(f, "{}", self.coeffs)
    }
}
