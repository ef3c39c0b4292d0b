//! Classification of a singular point at the origin: eigenvalue ratio,
//! saddle-node invariants `(k, mu)`, separatrix jets and Camacho-Sad indices.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::algebra::field::FieldElem;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly2::{Poly2, XPoly};
use crate::algebra::rational::{rational_sqrt, Rational};
use crate::algebra::upoly::{rational_roots, UPoly};
use crate::error::{Error, Result};
use crate::form::{DiffForm, LinearData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioKind {
    RationalPositive,
    RationalNegative,
    IrrationalRealPositive,
    IrrationalRealNegative,
    NonReal,
    /// `s` is not rational on any branch of an extension field, so neither
    /// is the ratio; sign and reality depend on the embedding.
    AlgebraicConjugates,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RatioValue {
    /// `lambda` and `1/lambda`.
    Rational(Rational, Rational),
    /// Roots of `X^2 - s X + 1`.
    Quadratic(FieldElem),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioVerdict {
    /// `trace^2 / det - 2 = lambda + 1/lambda`
    pub s: FieldElem,
    pub kind: RatioKind,
    pub value: RatioValue,
    /// Set for negative real ratios: whether the point is linearizable is not
    /// decided from finite jets.
    pub linearizability_undecided: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonReducedReason {
    NilpotentLinearPart,
    ZeroLinearPart,
    PositiveRationalRatio,
}

/// Camacho-Sad index of the separatrix tangent to `tangent`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatrixCs {
    pub tangent: [FieldElem; 2],
    pub cs: FieldElem,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CsPair {
    Named([SeparatrixCs; 2]),
    /// Eigenvalues not in the base field: the two indices are the roots of
    /// `X^2 - s X + 1`.
    Unresolved(FieldElem),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SingClass {
    Regular,
    ReducedNonDegenerate { ratio: RatioVerdict, cs: CsPair },
    SaddleNode { k: u32, mu: FieldElem },
    NonReduced { reason: NonReducedReason },
}

impl SingClass {
    pub fn is_reduced(&self) -> bool {
        matches!(
            self,
            SingClass::ReducedNonDegenerate { .. } | SingClass::SaddleNode { .. }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Strong,
    Weak,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparatrixJet {
    /// Tangent vector of the separatrix at 0.
    pub tangent: [FieldElem; 2],
    /// True when the curve is a graph `x = s(y)`; otherwise `y = s(x)`.
    pub over_y: bool,
    /// `s` including its linear term, exact modulo degree `order + 1`.
    pub jet: XPoly,
    pub order: usize,
}

/// Jet order policy: start at `initial` (default `2k + 8` with `k = 1`) and
/// double on insufficient precision up to `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetOrder {
    pub initial: usize,
    pub cap: usize,
}

impl Default for JetOrder {
    fn default() -> Self {
        Self {
            initial: 10,
            cap: 640,
        }
    }
}

impl JetOrder {
    pub fn run<T>(&self, mut f: impl FnMut(usize) -> Result<T>) -> Result<T> {
        let mut n = self.initial.max(1);
        loop {
            match f(n) {
                Err(Error::InsufficientPrecision { .. }) if n < self.cap => n = (2 * n).min(self.cap),
                r => return r,
            }
        }
    }
}

pub fn ratio_decide(l: &LinearData) -> Result<RatioVerdict> {
    if l.det.test_zero()? {
        return Err(Error::InvalidArgument("det = 0: use the saddle-node path".into()));
    }
    let two = l.field().from_int(2);
    let s = &(&l.trace * &l.trace).div(&l.det)? - &two;
    let Some(sq) = rational_value(&s)? else {
        return Ok(RatioVerdict {
            s: s.clone(),
            kind: RatioKind::AlgebraicConjugates,
            value: RatioValue::Quadratic(s),
            linearizability_undecided: false,
        });
    };
    let disc = &sq * &sq - Rational::from_integer(4.into());
    let positive = sq.is_positive();
    let (kind, value) = match rational_sqrt(&disc) {
        Some(r) => {
            let two = Rational::from_integer(2.into());
            let lam = (&sq + &r) / &two;
            let inv = (&sq - &r) / &two;
            let kind = if positive {
                RatioKind::RationalPositive
            } else {
                RatioKind::RationalNegative
            };
            (kind, RatioValue::Rational(lam, inv))
        }
        None if disc.is_negative() => (RatioKind::NonReal, RatioValue::Quadratic(s.clone())),
        None if positive => (
            RatioKind::IrrationalRealPositive,
            RatioValue::Quadratic(s.clone()),
        ),
        None => (
            RatioKind::IrrationalRealNegative,
            RatioValue::Quadratic(s.clone()),
        ),
    };
    Ok(RatioVerdict {
        s,
        linearizability_undecided: matches!(
            kind,
            RatioKind::RationalNegative | RatioKind::IrrationalRealNegative
        ),
        kind,
        value,
    })
}

/// The rational value of `e` if it has one on the current branch. A rational
/// conjugate on only some branches forces a split.
fn rational_value(e: &FieldElem) -> Result<Option<Rational>> {
    if let Some(q) = e.as_rational() {
        return Ok(Some(q));
    }
    let cp = e.charpoly();
    for (q, _) in rational_roots(&cp)?.roots {
        let d = e - &e.field().from_rational(q);
        d.test_zero()?;
    }
    Ok(None)
}

/// Kernel vector of a singular 2x2 matrix.
fn kernel(m: &[[FieldElem; 2]; 2]) -> Result<[FieldElem; 2]> {
    if !m[0][0].test_zero()? || !m[0][1].test_zero()? {
        Ok([m[0][1].clone(), -&m[0][0]])
    } else {
        Ok([m[1][1].clone(), -&m[1][0]])
    }
}

fn shifted(l: &LinearData, ev: &FieldElem) -> [[FieldElem; 2]; 2] {
    let m = &l.matrix;
    [
        [&m[0][0] - ev, m[0][1].clone()],
        [m[1][0].clone(), &m[1][1] - ev],
    ]
}

pub fn eigenvector(l: &LinearData, ev: &FieldElem) -> Result<[FieldElem; 2]> {
    kernel(&shifted(l, ev))
}

/// Eigenvalues when they lie in the base field.
pub fn eigenvalues(l: &LinearData) -> Result<Option<[FieldElem; 2]>> {
    let m = &l.matrix;
    if m[1][0].test_zero()? || m[0][1].test_zero()? {
        return Ok(Some([m[0][0].clone(), m[1][1].clone()]));
    }
    let disc = &(&l.trace * &l.trace) - &l.det.scale(&Rational::from_integer(4.into()));
    let Some(d) = rational_value(&disc)? else {
        return Ok(None);
    };
    let Some(r) = rational_sqrt(&d) else {
        return Ok(None);
    };
    let f = l.field();
    let half = Rational::new(1.into(), 2.into());
    let r = f.from_rational(r);
    Ok(Some([
        (&l.trace + &r).scale(&half),
        (&l.trace - &r).scale(&half),
    ]))
}

/// Camacho-Sad indices of the two separatrices of a non-degenerate point.
pub fn cs_pair(l: &LinearData) -> Result<CsPair> {
    let two = l.field().from_int(2);
    match eigenvalues(l)? {
        Some([a, b]) => {
            let ea = eigenvector(l, &a)?;
            let eb = eigenvector(l, &b)?;
            Ok(CsPair::Named([
                SeparatrixCs {
                    tangent: ea,
                    cs: b.div(&a)?,
                },
                SeparatrixCs {
                    tangent: eb,
                    cs: a.div(&b)?,
                },
            ]))
        }
        None => Ok(CsPair::Unresolved(
            &(&l.trace * &l.trace).div(&l.det)? - &two,
        )),
    }
}

pub fn classify(w: &DiffForm, jets: JetOrder) -> Result<SingClass> {
    if !w.is_singular_at_origin()? {
        return Ok(SingClass::Regular);
    }
    let l = w.linear_part()?;
    if l.is_zero()? {
        return Ok(SingClass::NonReduced {
            reason: NonReducedReason::ZeroLinearPart,
        });
    }
    if l.det.test_zero()? {
        if l.trace.test_zero()? {
            return Ok(SingClass::NonReduced {
                reason: NonReducedReason::NilpotentLinearPart,
            });
        }
        let (k, mu) = jets.run(|n| saddle_node_invariants(w, n))?;
        return Ok(SingClass::SaddleNode { k, mu });
    }
    let ratio = ratio_decide(&l)?;
    if ratio.kind == RatioKind::RationalPositive {
        return Ok(SingClass::NonReduced {
            reason: NonReducedReason::PositiveRationalRatio,
        });
    }
    let cs = cs_pair(&l)?;
    Ok(SingClass::ReducedNonDegenerate { ratio, cs })
}

/// Strong (eigenvalue = trace) or weak (kernel) eigenvector of a saddle-node.
pub fn saddle_node_direction(l: &LinearData, d: Direction) -> Result<[FieldElem; 2]> {
    match d {
        Direction::Weak => kernel(&l.matrix),
        Direction::Strong => eigenvector(l, &l.trace),
    }
}

/// Term-by-term jet of the separatrix tangent to `tangent`, to order `n`.
pub fn separatrix_jet(w: &DiffForm, tangent: &[FieldElem; 2], n: usize) -> Result<SeparatrixJet> {
    let over_y = tangent[0].test_zero()?;
    let (form, e) = if over_y {
        (w.swap(), [tangent[1].clone(), tangent[0].clone()])
    } else {
        (w.clone(), tangent.clone())
    };
    let f = form.field().clone();
    let c1 = e[1].div(&e[0])?;
    let a = form.a();
    let b = form.b();
    let ay = a.coeff(0, 1);
    let beta = &b.coeff(1, 0) + &(&c1 * &b.coeff(0, 1));
    let base = &ay + &(&c1 * &b.coeff(0, 1));
    let mut s = UPoly::new(alloc::vec![f.zero(), c1]);
    for m in 2..=n {
        let e_m = invariance_defect(a, b, &s, m + 1)
            .coeff(m)
            .cloned()
            .unwrap_or_else(|| f.zero());
        let gamma = &base + &beta.scale(&Rational::from_integer(m.into()));
        if gamma.test_zero()? {
            if e_m.test_zero()? {
                continue;
            }
            return Err(Error::UnexpectedResonance { order: m });
        }
        let am = -&e_m.div(&gamma)?;
        s = s.add(&UPoly::monomial(am, m));
    }
    Ok(SeparatrixJet {
        tangent: tangent.clone(),
        over_y,
        jet: s,
        order: n,
    })
}

/// `A(x, s) + B(x, s) s'` modulo `x^len`.
fn invariance_defect(a: &Poly2, b: &Poly2, s: &XPoly, len: usize) -> XPoly {
    let av = a.eval_y_series(s, len);
    let bv = b.eval_y_series(s, len);
    av.add(&bv.mul_trunc(&s.derivative(), len))
}

/// `d/dy(-A/B)` along `y = s(x)` as a Laurent series, from data exact modulo
/// `x^{n+1}`.
fn variation_series(w: &DiffForm, s: &XPoly, n: usize) -> Result<LaurentSeries> {
    let f = w.field().clone();
    let (a, b) = (w.a(), w.b());
    let num = (&(a * &b.dy()) - &(&a.dy() * b)).eval_y_series(s, n + 1);
    let den = b.eval_y_series(s, n + 1);
    let num = LaurentSeries::from_poly(&f, &num, 0, n as i64 + 1)?;
    let den = LaurentSeries::from_poly(&f, &den, 0, n as i64 + 1)?;
    let inv = den.inv()?;
    Ok(num.mul(&inv).mul(&inv))
}

/// `(k, mu)` from the weak separatrix: `k + 1` is the pole order of the
/// variation along it and `mu` its residue.
pub fn saddle_node_invariants(w: &DiffForm, n: usize) -> Result<(u32, FieldElem)> {
    let l = w.linear_part()?;
    if l.trace.test_zero()? {
        return Err(Error::NotElementary);
    }
    if !l.det.test_zero()? {
        return Err(Error::InvalidArgument("no zero eigenvalue".into()));
    }
    let weak = saddle_node_direction(&l, Direction::Weak)?;
    let jet = separatrix_jet(w, &weak, n)?;
    let form = if jet.over_y { w.swap() } else { w.clone() };
    let a = variation_series(&form, &jet.jet, n)?;
    let pole = a.pole_order()?;
    if pole < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "variation along the weak separatrix has pole order {pole}"
        )));
    }
    let mu = a.residue()?;
    Ok((pole as u32 - 1, mu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    /// `{x = 0}`, tangent `(0, 1)`
    X,
    /// `{y = 0}`, tangent `(1, 0)`
    Y,
}

impl Axis {
    pub fn tangent(self, w: &DiffForm) -> [FieldElem; 2] {
        let f = w.field();
        match self {
            Axis::X => [f.zero(), f.one()],
            Axis::Y => [f.one(), f.zero()],
        }
    }

    pub fn polynomial(self, w: &DiffForm) -> Poly2 {
        match self {
            Axis::X => Poly2::x(w.field()),
            Axis::Y => Poly2::y(w.field()),
        }
    }
}

/// Camacho-Sad index along the invariant axis `{y = 0}`: the residue of
/// `d/dy(-A/B)(x, 0)`, using data exact modulo `x^{n+1}`.
pub fn cs_index(w: &DiffForm, n: usize) -> Result<FieldElem> {
    for c in w.a().at_y0().coeffs() {
        if !c.test_zero()? {
            return Err(Error::NotInvariant);
        }
    }
    if w.b().at_y0().normalized()?.is_zero() {
        return Err(Error::InvalidArgument("{y = 0} consists of singular points".into()));
    }
    let s = UPoly::zero();
    variation_series(w, &s, n)?.residue()
}

/// [`cs_index`] along either coordinate axis with a precision that makes the
/// result exact for polynomial data.
pub fn cs_along_axis(w: &DiffForm, axis: Axis) -> Result<FieldElem> {
    let form = match axis {
        Axis::Y => w.clone(),
        Axis::X => w.swap(),
    };
    let d = form.a().total_degree().unwrap_or(0).max(form.b().total_degree().unwrap_or(0));
    let n = 3 * d as usize + 3;
    cs_index(&form, n)
}

/// Camacho-Sad index along an invariant axis from the eigenvalues: the
/// transverse eigenvalue over the tangent one, or `mu` when the axis is the
/// weak separatrix of a saddle-node.
pub fn cs_from_linear_part(w: &DiffForm, axis: Axis, jets: JetOrder) -> Result<FieldElem> {
    let l = w.linear_part()?;
    let (tan, tr) = match axis {
        Axis::Y => (&l.matrix[0][0], &l.matrix[1][1]),
        Axis::X => (&l.matrix[1][1], &l.matrix[0][0]),
    };
    if tan.test_zero()? {
        let (_, mu) = jets.run(|n| saddle_node_invariants(w, n))?;
        return Ok(mu);
    }
    tr.div(tan)
}

/// True when `v` is a multiple of `u`.
pub fn parallel(u: &[FieldElem; 2], v: &[FieldElem; 2]) -> Result<bool> {
    (&(&u[0] * &v[1]) - &(&u[1] * &v[0])).test_zero()
}

/// Pairs of `(tangent, is_strong)` for saddle-nodes, used by reports.
pub fn saddle_node_directions(w: &DiffForm) -> Result<Vec<([FieldElem; 2], Direction)>> {
    let l = w.linear_part()?;
    Ok(alloc::vec![
        (saddle_node_direction(&l, Direction::Strong)?, Direction::Strong),
        (saddle_node_direction(&l, Direction::Weak)?, Direction::Weak),
    ])
}

impl RatioVerdict {
    /// The unordered pair `{lambda, 1/lambda}` when rational.
    pub fn rational_pair(&self) -> Option<(Rational, Rational)> {
        match &self.value {
            RatioValue::Rational(a, b) => {
                if a <= b {
                    Some((a.clone(), b.clone()))
                } else {
                    Some((b.clone(), a.clone()))
                }
            }
            RatioValue::Quadratic(_) => None,
        }
    }
}
