use proptest::prelude::*;

use gcover_core::divisor::{BasisLabel, DivisorClass};
use gcover_core::group::{ConjClassId, FiniteGroup};
use gcover_core::grr::bernoulli_poly;
use gcover_core::kodaira::{residual, solve_slope};
use gcover_core::monodromy::{
    count_homs_brute, count_homs_frobenius, count_transfer, count_with_image_class, exact_image_counts, CoverCountQuery,
};
use gcover_core::pencil::min_b_prime;
use gcover_core::rational::{parse_pq, q, qi, to_pq, Q};

const CUTOFF: u64 = 100_000_000;

fn group() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("S3"), Just("mu2"), Just("mu3"), Just("mu4")]
}

fn ratio() -> impl Strategy<Value = Q> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn label() -> impl Strategy<Value = BasisLabel> {
    prop_oneof![
        Just(BasisLabel::Lambda),
        Just(BasisLabel::Kappa1),
        Just(BasisLabel::DeltaPrime(0)),
        Just(BasisLabel::Delta0C2),
        Just(BasisLabel::Delta0C3),
        (1u32..4).prop_map(BasisLabel::DeltaPrime),
        (1u32..4).prop_map(BasisLabel::DeltaIC3),
    ]
}

fn class() -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec((label(), ratio()), 0..6).prop_map(|t| DivisorClass::from_terms(9, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_methods_agree(name in group(), genus in 1u32..=2, raw in prop::collection::vec(0usize..3, 0..=2)) {
        let g = FiniteGroup::builtin(name).unwrap();
        let marks: Vec<ConjClassId> = raw.iter().map(|&c| ConjClassId(c % g.num_classes())).collect();
        let q = CoverCountQuery::new(genus).marks(marks);
        let brute = count_homs_brute(&g, &q, CUTOFF).unwrap().count;
        prop_assert_eq!(&brute, &count_homs_frobenius(&g, &q).unwrap().count);
        prop_assert_eq!(&brute, &count_with_image_class(&g, &q).unwrap().count);
        prop_assert_eq!(&brute, &count_transfer(&g, &q).unwrap().count);
    }

    #[test]
    fn image_restricted_counts_agree(genus in 1u32..=2, raw in prop::collection::vec(0usize..3, 0..=2),
                                     h in 0usize..4, conj in any::<bool>()) {
        let g = FiniteGroup::s3();
        let marks: Vec<ConjClassId> = raw.into_iter().map(ConjClassId).collect();
        let h = gcover_core::group::SubgroupClassId(h);
        let q = CoverCountQuery::new(genus).marks(marks).image(h).up_to_conjugation(conj);
        match count_homs_brute(&g, &q, CUTOFF) {
            Ok(b) => {
                prop_assert_eq!(&b.count, &count_with_image_class(&g, &q).unwrap().count);
                prop_assert_eq!(&b.count, &count_transfer(&g, &q).unwrap().count);
            }
            // a trivial image with nontrivial marks is rejected up front
            Err(e) => prop_assert_eq!(e.code(), "InvalidArgument"),
        }
    }

    #[test]
    fn marks_permute_and_invert(genus in 1u32..=2, raw in prop::collection::vec(0usize..3, 1..=3)) {
        let g = FiniteGroup::s3();
        let marks: Vec<ConjClassId> = raw.into_iter().map(ConjClassId).collect();
        let base = count_transfer(&g, &CoverCountQuery::new(genus).marks(marks.clone())).unwrap().count;
        let mut rev = marks.clone();
        rev.reverse();
        prop_assert_eq!(&base, &count_transfer(&g, &CoverCountQuery::new(genus).marks(rev)).unwrap().count);
        let inv: Vec<ConjClassId> = marks.iter().map(|&c| g.inverse_class(c)).collect();
        prop_assert_eq!(&base, &count_transfer(&g, &CoverCountQuery::new(genus).marks(inv)).unwrap().count);
    }

    #[test]
    fn exact_images_partition_total(name in group(), genus in 1u32..=3) {
        let g = FiniteGroup::builtin(name).unwrap();
        let parts = exact_image_counts(&g, genus, &[]).unwrap();
        let total: num_bigint::BigUint = parts.iter().sum();
        prop_assert_eq!(total, count_transfer(&g, &CoverCountQuery::new(genus)).unwrap().count);
    }

    #[test]
    fn kappa_substitution_is_linear(a in class(), b in class(), x in ratio()) {
        let lhs = a.plus(&b.scale(&x)).unwrap().kappa1_substitution();
        let rhs = a.kappa1_substitution().plus(&b.kappa1_substitution().scale(&x)).unwrap();
        prop_assert_eq!(lhs.coeff(&BasisLabel::Kappa1), qi(0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_json_reparses(a in class()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: DivisorClass = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pq_strings_are_exact(x in ratio()) {
        prop_assert_eq!(parse_pq(&to_pq(&x)).unwrap(), x);
    }

    #[test]
    fn bernoulli_reflection(d in 0u32..10, x in ratio()) {
        // B_d(1 - x) = (-1)^d B_d(x)
        let b = bernoulli_poly(d);
        let sign = if d % 2 == 0 { qi(1) } else { qi(-1) };
        prop_assert_eq!(b.eval(&(qi(1) - &x)), sign * b.eval(&x));
    }

    #[test]
    fn b_prime_bound_decreases_in_a(i in 1u32..20, a in 0i64..13) {
        let lo = min_b_prime(i, &qi(a), &qi(2), &qi(3)).unwrap();
        let hi = min_b_prime(i, &qi(a + 1), &qi(2), &qi(3)).unwrap();
        prop_assert!(hi < lo);
    }

    #[test]
    fn smaller_slopes_stay_effective(i in 2u32..80, num in 0i64..=100) {
        // every s in [0, s_max] leaves a coefficientwise effective residual
        let s_max = solve_slope(i).unwrap().s_max;
        let s = &s_max * q(num, 100);
        let e = residual(i, &s).unwrap();
        prop_assert!(e.terms().all(|(_, c)| *c >= qi(0)));
    }
}

#[test]
fn raabe_multiplication() {
    // sum_{k<r} B_2(k/r) = B_2 / r
    let b2 = bernoulli_poly(2);
    for r in 1..=6i64 {
        let s: Q = (0..r).map(|k| b2.eval(&q(k, r))).sum();
        assert_eq!(s, q(1, 6) / qi(r));
    }
}

#[test]
fn binding_constraint_is_the_n_node() {
    for i in 1..=200i64 {
        assert!(q(3 * i, 4 * i - 2) < q(2 * i, 2 * i - 1));
    }
}
