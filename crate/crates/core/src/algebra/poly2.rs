//! Sparse bivariate polynomials over a number field.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::field::{FieldElem, FieldRef, NumberField};
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::Result;

pub type XPoly = UPoly<FieldElem>;

/// Exponent pairs `(i, j)` for `x^i y^j`, iterated in lexicographic order.
#[derive(Clone, PartialEq)]
pub struct Poly2 {
    field: FieldRef,
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly2 {
    pub fn zero(field: &FieldRef) -> Self {
        Self {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: FieldElem, i: u32, j: u32) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::constant(field.one())
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::monomial(field.one(), 1, 0)
    }

    pub fn y(field: &FieldRef) -> Self {
        Self::monomial(field.one(), 0, 1)
    }

    /// Build from `(i, j, coefficient)` triples; repeated exponents add up.
    pub fn from_terms(field: &FieldRef, terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = Self::zero(field);
        for (i, j, c) in terms {
            p.add_term(i, j, field.from_rational(c));
        }
        p
    }

    pub fn from_int_terms(field: &FieldRef, terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(
            field,
            terms.iter().map(|&(i, j, c)| (i, j, super::rational::int(c))),
        )
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &FieldElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(0, 0)
    }

    fn add_term(&mut self, i: u32, j: u32, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(e) => {
                let s = &*e + &c;
                if s.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut p = Self::zero(&self.field);
        for (&(i, j), a) in &self.terms {
            p.add_term(i, j, a * c);
        }
        p
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&self.field.from_rational(q.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Lowest total degree of a term.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Terms of total degree `< d`.
    pub fn truncate_total(&self, d: u32) -> Self {
        Self {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j < d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn dx(&self) -> Self {
        let mut p = Self::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                p.add_term(i - 1, j, c.scale(&super::rational::int(i as i64)));
            }
        }
        p
    }

    pub fn dy(&self) -> Self {
        let mut p = Self::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                p.add_term(i, j - 1, c.scale(&super::rational::int(j as i64)));
            }
        }
        p
    }

    pub fn swap(&self) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    /// Composition `p(u, v)`.
    pub fn subst(&self, u: &Poly2, v: &Poly2) -> Poly2 {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut up = Vec::with_capacity(dx + 1);
        up.push(Poly2::one(&self.field));
        for k in 1..=dx {
            up.push(&up[k - 1] * u);
        }
        let mut vp = Vec::with_capacity(dy + 1);
        vp.push(Poly2::one(&self.field));
        for k in 1..=dy {
            vp.push(&vp[k - 1] * v);
        }
        let mut acc = Poly2::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&up[i as usize] * &vp[j as usize]).scale(c);
        }
        acc
    }

    /// `p(x + a, y + b)`
    pub fn translate(&self, a: &FieldElem, b: &FieldElem) -> Poly2 {
        let u = &Poly2::x(&self.field) + &Poly2::constant(a.clone());
        let v = &Poly2::y(&self.field) + &Poly2::constant(b.clone());
        self.subst(&u, &v)
    }

    /// Divide by `x^a y^b` when every term allows it.
    pub fn div_monomial(&self, a: u32, b: u32) -> Option<Poly2> {
        let mut terms = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            if i < a || j < b {
                return None;
            }
            terms.insert((i - a, j - b), c.clone());
        }
        Some(Poly2 {
            field: self.field.clone(),
            terms,
        })
    }

    /// Largest `(a, b)` with `x^a y^b` dividing every term.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (a, b)
    }

    pub fn map_coeffs(&self, field: &FieldRef, f: impl Fn(&FieldElem) -> FieldElem) -> Poly2 {
        let mut p = Poly2::zero(field);
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j, f(c));
        }
        p
    }

    pub fn reduce_into(&self, field: &FieldRef) -> Poly2 {
        self.map_coeffs(field, |c| c.reduce_into(field))
    }

    pub fn map_generator(&self, image: &FieldElem) -> Poly2 {
        self.map_coeffs(image.field(), |c| c.map_generator(image))
    }

    /// Restriction to `y = 0` as a polynomial in `x`.
    pub fn at_y0(&self) -> XPoly {
        self.coeffs_in_y().into_iter().next().unwrap_or_else(UPoly::zero)
    }

    /// Restriction to `x = 0` as a polynomial in `y`.
    pub fn at_x0(&self) -> XPoly {
        self.swap().at_y0()
    }

    /// `self = sum_j c_j(x) y^j`.
    pub fn coeffs_in_y(&self) -> Vec<XPoly> {
        let dy = match self.degree_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let dx = self.degree_x().unwrap_or(0) as usize;
        let mut rows = alloc::vec![alloc::vec![self.field.zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    pub fn from_coeffs_in_y(field: &FieldRef, rows: &[XPoly]) -> Poly2 {
        let mut p = Poly2::zero(field);
        for (j, r) in rows.iter().enumerate() {
            for (i, c) in r.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// `p(x, s(x)) mod x^n`.
    pub fn eval_y_series(&self, s: &XPoly, n: usize) -> XPoly {
        let rows = self.coeffs_in_y();
        let mut acc = UPoly::zero();
        for r in rows.iter().rev() {
            acc = acc.mul_trunc(s, n).add(&r.truncate(n));
        }
        acc
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly2) -> Result<Option<Poly2>> {
        let d = d.normalized_lead()?;
        let Some((&(di, dj), dl)) = d.terms.iter().next_back() else {
            return Err(crate::error::Error::DivisionByZero);
        };
        let dinv = dl.inv()?;
        let mut r = self.clone();
        let mut q = Poly2::zero(&self.field);
        loop {
            r = r.normalized_lead()?;
            let Some((&(ri, rj), rl)) = r.terms.iter().next_back() else {
                return Ok(Some(q));
            };
            if ri < di || rj < dj {
                return Ok(None);
            }
            let t = Poly2::monomial(rl * &dinv, ri - di, rj - dj);
            r = &r - &(&t * &d);
            q = &q + &t;
        }
    }

    /// Drop lex-leading coefficients that vanish on every branch.
    fn normalized_lead(&self) -> Result<Poly2> {
        let mut p = self.clone();
        while let Some((&k, c)) = p.terms.iter().next_back() {
            if c.test_zero()? {
                p.terms.remove(&k);
            } else {
                break;
            }
        }
        Ok(p)
    }

    /// Scale so the lex-leading coefficient is 1.
    pub fn make_monic(&self) -> Result<Poly2> {
        let p = self.normalized_lead()?;
        match p.terms.iter().next_back() {
            None => Ok(p),
            Some((_, c)) => {
                let inv = c.inv()?;
                Ok(p.scale(&inv))
            }
        }
    }

    /// Monic gcd (lex-leading coefficient 1).
    pub fn gcd(&self, o: &Poly2) -> Result<Poly2> {
        if self.is_zero() {
            return o.make_monic();
        }
        if o.is_zero() {
            return self.make_monic();
        }
        let (a1, b1) = self.monomial_content();
        let (a2, b2) = o.monomial_content();
        let (ma, mb) = (a1.min(a2), b1.min(b2));
        let p = self.div_monomial(a1, b1).expect("content");
        let q = o.div_monomial(a2, b2).expect("content");
        let mono = Poly2::monomial(self.field.one(), ma, mb);
        if !p.constant_term().test_zero()? || !q.constant_term().test_zero()? {
            return Ok(mono);
        }
        let field = self.field.clone();
        let rp = p.coeffs_in_y();
        let rq = q.coeffs_in_y();
        let cp = content(&rp)?;
        let cq = content(&rq)?;
        let c = cp.gcd(&cq)?;
        let mut f = primitive(&rp, &cp)?;
        let mut g = primitive(&rq, &cq)?;
        if f.len() < g.len() {
            core::mem::swap(&mut f, &mut g);
        }
        while !g.is_empty() {
            let r = prem(&f, &g)?;
            f = g;
            g = if r.is_empty() {
                r
            } else {
                let cr = content(&r)?;
                primitive(&r, &cr)?
            };
        }
        let h = if f.len() <= 1 {
            Poly2::one(&field)
        } else {
            Poly2::from_coeffs_in_y(&field, &f)
        };
        let cpoly = Poly2::from_coeffs_in_y(&field, &[c]);
        (&(&h * &cpoly) * &mono).make_monic()
    }
}

fn trim_rec(v: &mut Vec<XPoly>) -> Result<()> {
    while let Some(last) = v.last() {
        if last.normalized()?.is_zero() {
            v.pop();
        } else {
            break;
        }
    }
    Ok(())
}

fn content(rows: &[XPoly]) -> Result<XPoly> {
    let mut g = UPoly::zero();
    for r in rows {
        g = g.gcd(r)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

fn primitive(rows: &[XPoly], c: &XPoly) -> Result<Vec<XPoly>> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        out.push(r.div_rem(c)?.0);
    }
    trim_rec(&mut out)?;
    Ok(out)
}

/// Pseudo-remainder in `K[x][y]`; `g` must be trimmed.
fn prem(f: &[XPoly], g: &[XPoly]) -> Result<Vec<XPoly>> {
    let dg = g.len() - 1;
    let lc = g[dg].normalized()?;
    let mut r: Vec<XPoly> = f.to_vec();
    trim_rec(&mut r)?;
    while r.len() > dg {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - dg;
        let mut next: Vec<XPoly> = r.iter().map(|c| c.mul(&lc)).collect();
        for (k, gk) in g.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&gk.mul(&lr));
        }
        next.pop();
        r = next;
        trim_rec(&mut r)?;
    }
    Ok(r)
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, -c);
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        debug_assert!(NumberField::same(&self.field, &o.field));
        let mut p = Poly2::zero(&self.field);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (v, e) in [("x", i), ("y", j)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Renders in the same syntax the expression parser accepts (for rational
/// coefficients), highest total degree first.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mono = i + j > 0;
            match c.as_rational() {
                Some(q) => {
                    let neg = q.is_negative();
                    let a = q.abs();
                    match (n, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if !mono {
                        write!(f, "{a}")?;
                    } else if !a.is_one() {
                        if a.is_integer() {
                            write!(f, "{a}*")?;
                        } else {
                            write!(f, "({a})*")?;
                        }
                    }
                }
                None => {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "[{c}]")?;
                    if mono {
                        write!(f, "*")?;
                    }
                }
            }
            if mono {
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}
