use foliate::cases::Case;
use foliate::parse::{parse_form, render};
use foliate_core::families::algebraic_corpus;
use foliate_core::{rat, DiffForm, NumberField, Poly2};
use proptest::prelude::*;

#[test]
fn corpus_forms_round_trip() {
    let mut forms: Vec<DiffForm> = algebraic_corpus().into_iter().map(|c| c.form).collect();
    for case in Case::catalog() {
        if let Some(w) = case.form().unwrap() {
            forms.push(w);
        }
    }
    for w in forms {
        let text = render(&w).expect("corpus forms are rational");
        assert_eq!(parse_form(&text).unwrap(), w, "{text}");
    }
}

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..4, 0u32..4, -9i64..10, 1i64..5), 0..5).prop_map(|ts| {
        let k = NumberField::rationals();
        Poly2::from_terms(&k, ts.into_iter().map(|(i, j, p, q)| (i, j, rat(p, q))))
    })
}

proptest! {
    #[test]
    fn random_forms_round_trip(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let w = DiffForm::new(a, b).unwrap();
        let text = render(&w).unwrap();
        prop_assert_eq!(parse_form(&text).unwrap(), w);
    }
}
