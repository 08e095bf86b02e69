use num_integer::Integer;
use proptest::prelude::*;
use rayon::prelude::*;
use sibling_core::filling::{closed_form_mg, scan_mg, select_mg, CohomologyClass, EpsilonTriple};

fn canonical_classes(max_a: i64) -> impl Iterator<Item = CohomologyClass> {
    (1..=max_a).flat_map(|a| (0..a).filter_map(move |b| CohomologyClass::new(a, b).ok()))
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn eps_splits_over_cusps() {
    for phi in canonical_classes(1000) {
        let e = phi.epsilons();
        assert_eq!(e.eps, e.eps1 + e.eps2, "{phi}");
    }
}

#[test]
fn unreduced_gcd_is_power_of_five() {
    for phi in canonical_classes(1000) {
        let f = phi.filling();
        let e = phi.epsilons();
        for k in 0..2 {
            let s = f.unreduced[k];
            assert_eq!(s.p.gcd(&s.q), 5i64.pow(u32::from(e.cusp(k + 1))), "{phi}");
            assert_eq!(f.d[k], 5i64.pow(u32::from(e.cusp(k + 1))));
        }
    }
}

#[test]
fn euler_characteristic_for_a_up_to_500() {
    for phi in canonical_classes(500) {
        assert!(phi.euler_check(), "{phi}");
    }
}

#[test]
fn mg_b_is_one_or_prime() {
    let mut max_b = 0;
    for g in 3..=10_000 {
        let b = select_mg(g).unwrap().phi.b();
        assert!(b == 1 || is_prime(b), "g = {g}, b = {b}");
        max_b = max_b.max(b);
    }
    println!("largest b for g <= 10^4: {max_b}");
}

#[test]
fn scan_matches_closed_form() {
    (3..=100_000i64).into_par_iter().for_each(|g| {
        assert_eq!(scan_mg(g).unwrap().phi, closed_form_mg(g).unwrap(), "g = {g}");
    });
}

proptest! {
    #[test]
    fn reduction_lands_in_canonical_cone(a in -400i64..400, b in -400i64..400) {
        prop_assume!(a.gcd(&b) == 1);
        let (phi, _) = CohomologyClass::reduce(a, b).unwrap();
        prop_assert!(phi.a() >= 1 && 0 <= phi.b() && phi.b() < phi.a());
        prop_assert_eq!(phi.a() * phi.a() + phi.b() * phi.b(), a * a + b * b);
        prop_assert_eq!(EpsilonTriple::of(a, b).eps, phi.epsilons().eps);
    }

    #[test]
    fn genus_matches_family(g in 3i64..2000) {
        let en = sibling_core::filling::enumerate_classes(g).unwrap();
        for c in &en.classes {
            prop_assert_eq!(c.phi.genus(), g);
        }
    }
}
