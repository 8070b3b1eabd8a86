//! Property tests for the scalar ring, jets and deformation invariants.

use paraco_core::catalog::entry;
use paraco_core::curvature::curvature_of;
use paraco_core::deformations::{composition_check, d_homothetic_deform, invariant_i0, DParams};
use paraco_core::nullity::nullity_fit;
use paraco_core::parser::parse_field;
use paraco_core::structure::{analyze_structure, verify_axioms, Structure};
use paraco_core::symbolic::{rat, Context, Ctx, Jet, JetSpace, Rational, Scalar, ScalarField};
use proptest::prelude::*;

const MONOMIALS: [&str; 6] = ["1", "x", "y", "x^2", "x*y", "y^2"];

fn ctx() -> Ctx {
    Context::coordinates(&["x", "y"])
}

fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec(-3i64..=3, MONOMIALS.len()).prop_map(|c| {
        let terms: Vec<String> = c
            .iter()
            .zip(MONOMIALS)
            .filter(|(k, _)| **k != 0)
            .map(|(k, m)| format!("({k})*{m}"))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    })
}

/// A rational function whose denominator has no real zeros.
fn field() -> impl Strategy<Value = ScalarField> {
    (poly_text(), 0i64..3).prop_map(|(p, d)| {
        let den = ["1", "1 + x^2", "2 + x^2 + y^2"][d as usize];
        parse_field(&format!("({p})/({den})"), &ctx()).unwrap()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in field(), b in field(), c in field()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn leibniz_rule(a in field(), b in field(), i in 0usize..2) {
        let lhs = (&a * &b).partial(i);
        let rhs = &(&a.partial(i) * &b) + &(&a * &b.partial(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_parse_round_trip(a in field()) {
        prop_assert_eq!(parse_field(&a.render(), &ctx()).unwrap(), a);
    }

    #[test]
    fn jets_agree_with_fields(a in field(), b in field(), x in small_rational(), y in small_rational()) {
        let p = vec![x, y];
        let space = JetSpace::new(p.clone(), 2);
        let ja = Jet::<Rational>::from_field(&space, &a).unwrap();
        let jb = Jet::<Rational>::from_field(&space, &b).unwrap();
        let prod = &a * &b;
        prop_assert_eq!(Scalar::mul(&ja, &jb).value().clone(), prod.eval(&p).unwrap());
        for i in 0..2 {
            let d = Scalar::partial(&Scalar::mul(&ja, &jb), i);
            prop_assert_eq!(d.value().clone(), prod.partial(i).eval(&p).unwrap());
            let dd = Scalar::partial(&d, 1 - i);
            prop_assert_eq!(dd.value().clone(), prod.partial(i).partial(1 - i).eval(&p).unwrap());
        }
    }
}

fn example_e() -> Structure {
    Structure::from_definition(&entry("example_e").unwrap().definition).unwrap()
}

fn gamma() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn beta() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("β ≠ 0", |b| *b != rat(0, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn deformation_preserves_axioms_and_i0(g in gamma(), b in beta()) {
        let s = example_e();
        let an = analyze_structure(&s).unwrap();
        let k = nullity_fit(&s, &an, &curvature_of(&s)).kmn().unwrap();
        let i0 = invariant_i0(&k, &an.alpha).unwrap();

        let st = d_homothetic_deform(&s, &DParams::constant(g, b.clone(), &s)).unwrap();
        prop_assert!(verify_axioms(&st).ok);
        let ant = analyze_structure(&st).unwrap();
        prop_assert_eq!(ant.alpha.constant_value(), Some(an.alpha.constant_value().unwrap() / b));
        let kt = nullity_fit(&st, &ant, &curvature_of(&st)).kmn().unwrap();
        prop_assert_eq!(invariant_i0(&kt, &ant.alpha).unwrap(), i0);
    }

    #[test]
    fn deformations_compose(g1 in gamma(), b1 in beta(), g2 in gamma(), b2 in beta()) {
        let s = example_e();
        let c = composition_check(&s, &DParams::constant(g1, b1, &s), &DParams::constant(g2, b2, &s)).unwrap();
        prop_assert!(c.passed(), "{:?}", c);
    }
}
