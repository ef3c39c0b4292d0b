use std::f64::consts::PI;

use foliate_core::algebra::field::NumberField;
use foliate_core::algebra::rational::rat;
use foliate_core::algebra::upoly::UPoly;
use foliate_core::blowup::{blowup_point, charts_coherent, reduce};
use foliate_core::families::{algebraic_corpus, euler, linear, model_saddle_node};
use foliate_core::localtypes::{classify, RatioKind, SingClass};
use foliate_core::numerics::{lift_path, CForm, CPath, LiftOptions, LiftStatus, Piece, C64};
use foliate_core::{DiffForm, FieldElem, FieldRef, LaurentSeries, Poly2, Rational};
use proptest::prelude::*;

fn q() -> FieldRef {
    NumberField::rationals()
}

fn sqrt2() -> FieldRef {
    NumberField::new(UPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)])).unwrap()
}

fn small_poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6)
        .prop_map(|t| Poly2::from_int_terms(&q(), &t))
}

fn substitution() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..2, 0u32..2, -3i64..=3), 0..4)
        .prop_map(|t| Poly2::from_int_terms(&q(), &t))
}

fn elem(k: &FieldRef) -> impl Strategy<Value = FieldElem> {
    let k = k.clone();
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5)
        .prop_map(move |(a, b, c, d)| k.elem(UPoly::new(vec![rat(a, b), rat(c, d)])))
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn subst_composes(
        p in small_poly(),
        u in substitution(),
        v in substitution(),
        s in substitution(),
        t in substitution(),
    ) {
        let lhs = p.subst(&u, &v).subst(&s, &t);
        let rhs = p.subst(&u.subst(&s, &t), &v.subst(&s, &t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_field_axioms(a in elem(&sqrt2()), b in elem(&sqrt2()), c in elem(&sqrt2())) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn residue_is_linear(
        f in prop::collection::vec(-6i64..=6, 1..6),
        g in prop::collection::vec(-6i64..=6, 1..6),
        s in -4i64..=4,
    ) {
        let k = q();
        let series = |c: &[i64]| {
            let terms: Vec<(i64, FieldElem)> =
                c.iter().enumerate().map(|(i, &v)| (i as i64 - 3, k.from_int(v))).collect();
            LaurentSeries::from_terms(&k, &terms, 4).unwrap()
        };
        let (a, b) = (series(&f), series(&g));
        let lhs = a.add(&b.scale(&k.from_int(s))).residue().unwrap();
        let rhs = &a.residue().unwrap() + &(&b.residue().unwrap() * &k.from_int(s));
        prop_assert_eq!(lhs, rhs);
    }
}

/// Data of a classification that does not depend on linear coordinates.
#[derive(Debug, PartialEq)]
enum Invariant {
    Regular,
    Ratio(FieldElem, RatioKind),
    SaddleNode(u32, FieldElem),
    NonReduced,
}

fn invariant(w: &DiffForm) -> Invariant {
    match classify(w, Default::default()).unwrap() {
        SingClass::Regular => Invariant::Regular,
        SingClass::ReducedNonDegenerate { ratio, .. } => Invariant::Ratio(ratio.s, ratio.kind),
        SingClass::SaddleNode { k, mu } => Invariant::SaddleNode(k, mu),
        SingClass::NonReduced { .. } => Invariant::NonReduced,
    }
}

fn gl2() -> impl Strategy<Value = [Rational; 4]> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4, 1i64..=3)
        .prop_filter("invertible", |(a, b, c, d, _)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d, e)| [rat(a, e), rat(b, 1), rat(c, 1), rat(d, e)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn classification_is_linear_invariant(m in gl2()) {
        let k = q();
        let u = Poly2::from_terms(&k, [(1, 0, m[0].clone()), (0, 1, m[1].clone())]);
        let v = Poly2::from_terms(&k, [(1, 0, m[2].clone()), (0, 1, m[3].clone())]);
        let forms = [
            foliate_core::families::omega_1(),
            euler(),
            linear(&rat(-2, 3)).unwrap(),
            linear(&rat(3, 2)).unwrap(),
            model_saddle_node(2, &rat(1, 3)).unwrap(),
            model_saddle_node(1, &rat(-1, 1)).unwrap(),
        ];
        for w in forms {
            let moved = w.pullback(&u, &v);
            prop_assert_eq!(invariant(&moved), invariant(&w), "{:?}", m);
        }
    }
}

#[test]
fn charts_agree_on_corpus() {
    for case in algebraic_corpus() {
        let b = blowup_point(&case.form).unwrap();
        assert!(charts_coherent(&b).unwrap(), "{}", case.name);
        let t = reduce(&case.form, &case.options).unwrap();
        for p in &t.points {
            if let Ok(b) = blowup_point(&p.local_form) {
                assert!(charts_coherent(&b).unwrap(), "{} point {}", case.name, p.id);
            }
        }
    }
}

#[test]
fn trees_are_trees() {
    for case in algebraic_corpus() {
        let t = reduce(&case.form, &case.options).unwrap();
        assert!(t.is_tree(), "{}", case.name);
        assert_eq!(t.corners.len() + 1, t.components.len().max(1), "{}", case.name);
        assert_eq!(t.components.len(), t.steps.len(), "{}", case.name);
        if t.components.iter().all(|c| !c.dicritical) {
            let corner_points = t.points.iter().filter(|p| p.is_corner()).count();
            assert_eq!(corner_points, t.corners.len(), "{}", case.name);
        }
    }
}

fn numeric_forms() -> Vec<CForm> {
    vec![
        CForm::from_form(&linear(&rat(-2, 3)).unwrap()).unwrap(),
        CForm::from_form(&model_saddle_node(1, &rat(0, 1)).unwrap()).unwrap(),
        CForm::from_form(&model_saddle_node(2, &rat(1, 3)).unwrap()).unwrap(),
        CForm::from_form(&euler()).unwrap(),
    ]
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifting_back_returns(
        which in 0usize..4,
        radius in 0.2f64..0.6,
        from in 0.0f64..(2.0 * PI),
        sweep in -4.0f64..4.0,
        y0 in (-0.05f64..0.05, -0.05f64..0.05),
    ) {
        let w = &numeric_forms()[which];
        let opts = LiftOptions::default();
        let path = CPath::new(vec![
            Piece::Arc { radius, from_angle: from, to_angle: from + sweep },
            Piece::Segment { from: C64::from_polar(radius, from + sweep), to: C64::from_polar(radius * 1.3, from + sweep + 0.2) },
        ]);
        let y0 = c(y0.0, y0.1);
        let there = lift_path(w, &path, y0, &opts);
        prop_assume!(there.status == LiftStatus::Complete);
        // absolute errors at the smallest |y| come back amplified by the spread
        let sizes = there.samples.iter().map(|s| s.y.norm());
        let spread = sizes.clone().fold(0.0, f64::max) / sizes.fold(f64::INFINITY, f64::min);
        prop_assume!(spread < 1e4);
        let back = lift_path(w, &path.reversed(), there.final_y, &opts);
        prop_assert_eq!(back.status, LiftStatus::Complete);
        let scale = y0.norm().max(there.final_y.norm());
        let tol = 10.0 * (opts.tol.atol + opts.tol.rtol * scale);
        prop_assert!((back.final_y - y0).norm() < tol.max(10.0 * there.error_estimate), "{} vs {}", back.final_y, y0);
    }

    #[test]
    fn halving_tolerance_stays_within_estimate(
        which in 0usize..4,
        radius in 0.2f64..0.6,
        y0 in (-0.05f64..0.05, -0.05f64..0.05),
    ) {
        let w = &numeric_forms()[which];
        let opts = LiftOptions::default();
        let fine = LiftOptions { tol: opts.tol.scaled(0.5), ..opts };
        let path = CPath::circle(radius, 0.3, 1);
        let y0 = c(y0.0, y0.1);
        let a = lift_path(w, &path, y0, &opts);
        let b = lift_path(w, &path, y0, &fine);
        prop_assume!(a.status == LiftStatus::Complete && b.status == LiftStatus::Complete);
        prop_assert!((a.final_y - b.final_y).norm() <= a.error_estimate.max(1e-15), "{} > {}", (a.final_y - b.final_y).norm(), a.error_estimate);
    }
}

#[test]
fn two_loop_parametrizations_agree() {
    let opts = LiftOptions::default();
    for w in numeric_forms() {
        let a = lift_path(&w, &CPath::circle(0.4, 0.0, 1), c(0.02, 0.01), &opts);
        let b = lift_path(&w, &CPath::circle_in_arcs(0.4, 0.0, 7), c(0.02, 0.01), &opts);
        assert!((a.final_y - b.final_y).norm() < 10.0 * (opts.tol.atol + opts.tol.rtol * 0.05).max(a.error_estimate));
    }
}
