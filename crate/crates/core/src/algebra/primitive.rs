//! Adjoining the roots of a polynomial over `K = Q[t]/(m)` by a primitive
//! element, so that every point lives in a single-generator field.

use alloc::vec::Vec;

use super::field::{FieldElem, FieldRef, NumberField};
use super::linalg::interpolate;
use super::poly2::XPoly;
use super::rational::{int, Rational};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// One branch of `K[v]/(r)`: a field `L`, the image of `t` in `L`, and the
/// class of `v`.
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub field: FieldRef,
    pub generator_image: FieldElem,
    pub root: FieldElem,
}

/// `r` must be squarefree with invertible leading coefficient; splits of `K`
/// met while normalizing are returned to the caller.
pub fn adjoin_roots(r: &XPoly) -> Result<Vec<Adjoined>> {
    let r = r.monic()?;
    let Some(lead) = r.lead() else {
        return Err(Error::ZeroPolynomial);
    };
    let k = lead.field().clone();
    if r.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if k.is_rational() {
        let rq: UPoly<Rational> = r.map(|c| c.as_rational().expect("rational field"));
        let l = NumberField::new(rq)?;
        return Ok(alloc::vec![Adjoined {
            generator_image: l.from_rational(-k.modulus().coeffs()[0].clone()),
            root: l.generator(),
            field: l,
        }]);
    }
    let n = k.degree();
    let d = r.degree().unwrap();
    for step in 1..64i64 {
        let c = if step % 2 == 1 { (step + 1) / 2 } else { -step / 2 };
        let shift = UPoly::new(alloc::vec![&k.generator().scale(&int(-c)), &k.one()].into_iter().cloned().collect());
        let rc = r.compose(&shift);
        let xs: Vec<Rational> = (0..=(n * d) as i64).map(int).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| rc.eval(&k.from_rational(x.clone())).norm())
            .collect();
        let mpoly = UPoly::new(interpolate(&xs, &ys));
        if !mpoly.is_squarefree() {
            continue;
        }
        let l = NumberField::new(mpoly)?;
        match separate(&k, &r, c, &l)? {
            Some(v) => return Ok(v),
            None => continue,
        }
    }
    Err(Error::Unsupported("no separating primitive element found".into()))
}

/// For each branch of `l`, recover `t` as `gcd(m(X), r(s - cX))`.
fn separate(k: &FieldRef, r: &XPoly, c: i64, l: &FieldRef) -> Result<Option<Vec<Adjoined>>> {
    let mut work = alloc::vec![l.clone()];
    let mut out = Vec::new();
    while let Some(f) = work.pop() {
        match recover(k, r, c, &f) {
            Ok(Some(a)) => out.push(a),
            Ok(None) => return Ok(None),
            Err(Error::Split(ev)) if ev.parent == *f.modulus() => {
                let (a, b) = f.branch(&ev);
                work.push(b);
                work.push(a);
            }
            Err(e) => return Err(e),
        }
    }
    out.reverse();
    Ok(Some(out))
}

fn recover(k: &FieldRef, r: &XPoly, c: i64, f: &FieldRef) -> Result<Option<Adjoined>> {
    let lift = |e: &FieldElem| -> XPoly { e.coeffs().map(|q| f.from_rational(q.clone())) };
    let m: XPoly = k.modulus().map(|q| f.from_rational(q.clone()));
    let s_minus_cx = UPoly::new(alloc::vec![f.generator(), f.from_int(-c)]);
    let mut g: XPoly = UPoly::zero();
    for coef in r.coeffs().iter().rev() {
        g = g.mul(&s_minus_cx).add(&lift(coef));
    }
    let h = m.gcd(&g)?;
    if h.degree() != Some(1) {
        return Ok(None);
    }
    let t = -&h.coeffs()[0];
    let root = &f.generator() - &t.scale(&int(c));
    Ok(Some(Adjoined {
        field: f.clone(),
        generator_image: t,
        root,
    }))
}
