//! Example families with known reductions.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::field::NumberField;
use crate::algebra::poly2::Poly2;
use crate::algebra::rational::{int, rat, Rational};
use crate::blowup::{
    reduce, DivisorComponent, Host, ReduceOptions, ReductionTree, SingularPoint, TraceEnd,
};
use crate::error::{Error, Result};
use crate::form::DiffForm;
use crate::localtypes::Axis;

fn q_form(a: &[(u32, u32, i64)], b: &[(u32, u32, i64)]) -> DiffForm {
    let k = NumberField::rationals();
    DiffForm::new(Poly2::from_int_terms(&k, a), Poly2::from_int_terms(&k, b)).expect("nonzero form")
}

/// `lambda x dy - y dx`
pub fn linear(lambda: &Rational) -> Result<DiffForm> {
    let k = NumberField::rationals();
    DiffForm::new(
        Poly2::from_int_terms(&k, &[(0, 1, -1)]),
        Poly2::from_terms(&k, [(1, 0, lambda.clone())]),
    )
}

/// `x^(k+1) dy - y (1 + mu x^k) dx`
pub fn model_saddle_node(k: u32, mu: &Rational) -> Result<DiffForm> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let q = NumberField::rationals();
    DiffForm::new(
        Poly2::from_terms(&q, [(0, 1, int(-1)), (k, 1, -mu.clone())]),
        Poly2::from_int_terms(&q, &[(k + 1, 0, 1)]),
    )
}

/// `(x - y) dx + x dy`
pub fn omega_1() -> DiffForm {
    q_form(&[(1, 0, 1), (0, 1, -1)], &[(1, 0, 1)])
}

/// Euler's equation `x^2 dy - (y + x) dx`.
pub fn euler() -> DiffForm {
    q_form(&[(0, 1, -1), (1, 0, -1)], &[(2, 0, 1)])
}

/// `(y^2 - 1) dx - 2 y x^2 dy`, the pull-back of `x^2 dy - y dx` by
/// `(x, y) -> (x, 1 - y^2)`. Regular at the origin.
pub fn psi_pullback() -> DiffForm {
    q_form(&[(0, 2, 1), (0, 0, -1)], &[(2, 1, -2)])
}

/// `x dy - y dx`
pub fn radial() -> DiffForm {
    q_form(&[(0, 1, -1)], &[(1, 0, 1)])
}

/// `d(x (y^2 - 2 x^2))`: singular points of the reduction at `v^2 = 2`.
pub fn sqrt2_example() -> DiffForm {
    q_form(&[(0, 2, 1), (2, 0, -6)], &[(1, 1, 2)])
}

/// Logarithmic form of `(y^2 - 2x^2)(y^2 - 3x^2)^2`; its tangent cone splits
/// the quartic extension on the way.
pub fn split_example() -> DiffForm {
    let k = NumberField::rationals();
    let g = Poly2::from_int_terms(&k, &[(0, 2, 1), (2, 0, -2)]);
    let h = Poly2::from_int_terms(&k, &[(0, 2, 1), (2, 0, -3)]);
    let two = rat(2, 1);
    let a = &(&h * &g.dx()) + &(&g * &h.dx()).scale_rational(&two);
    let b = &(&h * &g.dy()) + &(&g * &h.dy()).scale_rational(&two);
    DiffForm::new(a, b).expect("nonzero form")
}

/// `d(y^2 - x^3)`
pub fn cusp() -> DiffForm {
    q_form(&[(2, 0, -3)], &[(0, 1, 2)])
}

/// A named form with the reduction options it is meant to be run with.
#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub name: String,
    pub form: DiffForm,
    pub options: ReduceOptions,
}

impl CorpusCase {
    fn new(name: &str, form: DiffForm) -> Self {
        Self { name: name.into(), form, options: ReduceOptions::default() }
    }
}

/// Every form of the built-in corpus that has a singular point at 0.
pub fn algebraic_corpus() -> Vec<CorpusCase> {
    let mut out = alloc::vec![
        CorpusCase::new("omega_1", omega_1()),
        CorpusCase::new("euler", euler()),
        CorpusCase::new("linear lambda=-2/3", linear(&rat(-2, 3)).expect("form")),
        CorpusCase::new("linear lambda=3/2", linear(&rat(3, 2)).expect("form")),
        CorpusCase::new("model_sn k=1 mu=-1", model_saddle_node(1, &rat(-1, 1)).expect("form")),
        CorpusCase::new("model_sn k=2 mu=1/3", model_saddle_node(2, &rat(1, 3)).expect("form")),
        CorpusCase::new("radial", radial()),
        CorpusCase::new("sqrt2", sqrt2_example()),
        CorpusCase::new("split", split_example()),
        CorpusCase::new("cusp", cusp()),
    ];
    for n in 1..=5 {
        out.push(CorpusCase::new(&alloc::format!("omega_n n={n}"), omega_n(n).expect("n > 0")));
    }
    let mut blown = CorpusCase::new("blown model_sn", model_saddle_node(1, &rat(0, 1)).expect("form"));
    blown.options.force_initial_blowup = true;
    out.push(blown);
    out
}

/// `(x/n - y^n) dx + n x y^(n-1) dy`, reduced in `n` blow-ups to a single
/// dead branch.
pub fn omega_n(n: u32) -> Result<DiffForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let k = NumberField::rationals();
    let a = Poly2::from_terms(&k, [(1, 0, rat(1, n as i64)), (0, n, int(-1))]);
    let b = Poly2::from_terms(&k, [(1, n - 1, int(n as i64))]);
    DiffForm::new(a, b)
}

/// A hub component of self-intersection `-1 - sum n_j` carrying one copy of
/// the reduction of each `omega_{n_j}`, attached through the strict transform
/// of `{x = 0}`, and one resonant saddle with CS index equal to the
/// self-intersection.
///
/// Only the combinatorics and the local forms are modelled; the hub is not
/// obtained by reducing a global form.
pub fn hub_construction(ns: &[u32]) -> Result<ReductionTree> {
    let q = NumberField::rationals();
    let hub = 1;
    let chern = -1 - ns.iter().map(|&n| n as i64).sum::<i64>();
    let mut components = alloc::vec![DivisorComponent {
        id: hub,
        birth_step: 1,
        self_intersection: chern,
        dicritical: false,
        field: q.clone(),
    }];
    let mut corners = Vec::new();
    let mut points = Vec::new();
    let mut offset = 1;
    for &n in ns {
        let t = reduce(&omega_n(n)?, &ReduceOptions::default())?;
        let sn = t
            .separatrices
            .iter()
            .find(|s| s.label == "x=0")
            .and_then(|s| match s.ends.first() {
                Some(TraceEnd::Singular(p)) => Some(*p),
                _ => None,
            })
            .ok_or(Error::NotInvariant)?;
        for c in &t.components {
            let mut c = c.clone();
            c.id += offset;
            c.birth_step += offset;
            components.push(c);
        }
        for &(a, b) in &t.corners {
            corners.push((a + offset, b + offset));
        }
        for p in &t.points {
            let mut hosts: Vec<Host> = p
                .hosts
                .iter()
                .map(|h| Host { component: h.component + offset, ..h.clone() })
                .collect();
            if p.id == sn {
                let axis = match hosts[0].axis {
                    Axis::X => Axis::Y,
                    Axis::Y => Axis::X,
                };
                hosts.push(Host { component: hub, axis, generator_image: q.generator() });
                corners.push((hub, hosts[0].component));
            }
            let id = points.len();
            points.push(SingularPoint::new(id, hosts, None, p.local_form.clone(), &|_| false, t.jets)?);
        }
        offset += t.components.len();
    }
    // c x dy - y dx with the hub as {x = 0}
    let saddle = DiffForm::new(
        Poly2::from_int_terms(&q, &[(0, 1, -1)]),
        Poly2::from_int_terms(&q, &[(1, 0, chern)]),
    )?;
    let hosts = alloc::vec![Host { component: hub, axis: Axis::X, generator_image: q.generator() }];
    let id = points.len();
    points.push(SingularPoint::new(id, hosts, None, saddle, &|_| false, Default::default())?);
    Ok(ReductionTree::from_parts(components, corners, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{branch_report, cs_check, initial_component_audit, strongly_presentable, AuditStatus};

    #[test]
    fn corpus_reduces() {
        for c in algebraic_corpus() {
            let t = reduce(&c.form, &c.options).unwrap();
            assert!(t.is_tree(), "{}", c.name);
            assert!(cs_check(&t).unwrap().passed(), "{}", c.name);
        }
    }

    #[test]
    fn model_forms_classify() {
        use crate::localtypes::{classify, SingClass};
        match classify(&model_saddle_node(2, &rat(1, 3)).unwrap(), Default::default()).unwrap() {
            SingClass::SaddleNode { k, mu } => assert_eq!((k, mu.as_rational()), (2, Some(rat(1, 3)))),
            c => panic!("{c:?}"),
        }
        match classify(&euler(), Default::default()).unwrap() {
            SingClass::SaddleNode { k, mu } => assert_eq!((k, mu.as_rational()), (1, Some(rat(0, 1)))),
            c => panic!("{c:?}"),
        }
        assert!(!psi_pullback().is_singular_at_origin().unwrap());
    }

    #[test]
    fn omega_zero_rejected() {
        assert!(omega_n(0).is_err());
    }

    #[test]
    fn hub_with_two_branches() {
        let t = hub_construction(&[1, 2]).unwrap();
        assert!(t.is_tree());
        assert_eq!(t.components.len(), 4);
        assert_eq!(t.component(1).unwrap().self_intersection, -4);
        let r = branch_report(&t);
        assert_eq!(r.branches.len(), 2);
        assert!(r.branches.iter().all(|b| b.attached_to == Some(1)));
        assert_eq!(r.initial_components, alloc::vec![1]);
        assert!(cs_check(&t).unwrap().passed());
        assert!(!strongly_presentable(&t).strongly_presentable);
        assert_eq!(initial_component_audit(&t).status, AuditStatus::NotApplicable);
    }

    #[test]
    fn hub_with_one_branch_is_not_initial() {
        let t = hub_construction(&[2]).unwrap();
        assert!(branch_report(&t).initial_components.is_empty());
    }
}
