use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Coeff;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Square root in `Q` when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
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
        self * BigInt::from(n)
    }
    fn test_zero(&self) -> Result<bool> {
        Ok(self.is_zero())
    }
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Positive divisors of `n`, by trial division.
pub(crate) fn divisors(n: &BigInt) -> Result<alloc::vec::Vec<BigInt>> {
    let n = n.abs();
    let Some(mut m) = n.to_u64() else {
        return Err(Error::Unsupported(alloc::format!(
            "rational root search with coefficient {n}"
        )));
    };
    let mut primes: alloc::vec::Vec<(u64, u32)> = alloc::vec::Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut out = alloc::vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = alloc::vec::Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

pub(crate) fn lcm_denominators<'a>(qs: impl Iterator<Item = &'a Rational>) -> BigInt {
    qs.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
