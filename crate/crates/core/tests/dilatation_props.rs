use proptest::prelude::*;
use sibling_core::dilatation::{
    dilatation, entropy_direction, euler_poincare_check, lambda_shape_root, mg_dilatation,
};
use sibling_core::filling::CohomologyClass;
use sibling_core::traintrack::{alexander_specialization, lambda_polynomial, specialize};

fn valid(a: i64, b: i64) -> Option<CohomologyClass> {
    CohomologyClass::new(a, b).ok().filter(|p| p.is_hyperbolic())
}

#[test]
fn monotone_in_b_for_fixed_a() {
    for a in 2..=60 {
        let lambdas: Vec<f64> = (1..a).filter_map(|b| valid(a, b)).map(|p| dilatation(&p).unwrap().lambda).collect();
        for w in lambdas.windows(2) {
            assert!(w[1] > w[0], "a = {a}: {lambdas:?}");
        }
    }
}

#[test]
fn homogeneity_of_largest_root() {
    for (a, b) in [(2, 1), (3, 1), (3, 2)] {
        let base = lambda_shape_root(a, b).unwrap().lambda;
        for c in [2, 3] {
            let scaled = lambda_shape_root(c * a, c * b).unwrap().lambda;
            assert!((scaled - base.powf(1.0 / c as f64)).abs() < 1e-9, "({a},{b}) c = {c}");
        }
    }
}

#[test]
fn prong_identity_for_a_up_to_500() {
    for a in 1..=500 {
        for b in 0..a {
            if let Some(phi) = valid(a, b) {
                assert!(euler_poincare_check(&phi), "{phi}");
            }
        }
    }
}

#[test]
fn hironaka_chain_for_g_3_mod_5() {
    for g in (8..=203).filter(|g| g % 5 == 3) {
        let eps = lambda_shape_root(g + 1, 3).unwrap().lambda;
        let mid = lambda_shape_root(g, 1).unwrap().lambda;
        let lambda = mg_dilatation(g).unwrap().result.lambda;
        assert!(eps <= mid && mid < lambda, "g = {g}: {eps} {mid} {lambda}");
    }
}

#[test]
fn specialization_matches_lambda_shape() {
    for a in 2..80 {
        for b in 1..a {
            if let Some(phi) = valid(a, b) {
                assert_eq!(specialize(&phi), lambda_polynomial(a, b));
            }
        }
    }
}

fn orientable_class() -> impl Strategy<Value = CohomologyClass> {
    (2i64..200, 1i64..100).prop_filter_map("valid orientable class", |(k, j)| {
        let a = 2 * k + 1;
        let b = (2 * j) % a;
        valid(a, b).filter(|p| p.is_orientable())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lambda_is_reciprocal(a in 2i64..300, b in 1i64..300) {
        prop_assume!(b < a);
        let Some(phi) = valid(a, b) else { return Ok(()) };
        let p = specialize(&phi);
        prop_assert_eq!(p.reciprocal().shift(2 * a), p);
    }

    #[test]
    fn alexander_relation(phi in orientable_class()) {
        let p = specialize(&phi);
        prop_assert!(p.negate_variable().eq_up_to_unit(&alexander_specialization(&phi)));
    }

    #[test]
    fn z_is_even(s in -0.95f64..0.95) {
        prop_assert!((entropy_direction(s).unwrap() - entropy_direction(-s).unwrap()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn z_is_concave(mut s in prop::array::uniform3(-0.95f64..0.95)) {
        s.sort_by(f64::total_cmp);
        prop_assume!(s[2] - s[0] > 1e-6);
        let z = s.map(|x| entropy_direction(x).unwrap());
        let w = (s[1] - s[0]) / (s[2] - s[0]);
        prop_assert!(z[1] >= (1.0 - w) * z[0] + w * z[2] - 1e-9);
    }
}
