//! Property tests over random braid closures and random matrices.

mod support;

use eqkh::coeff::BaseRing;
use eqkh::complex::{matrix_identities, CubeComplex, Reduction};
use eqkh::diagram::moves::{add_kink, braid_closure, rotate_labels};
use eqkh::diagram::{parse_pd, LinkDiagram};
use eqkh::frobenius::{identity_suite, Theory, TheoryKind};
use eqkh::homology::{homology, homology_via_snf};
use eqkh::lee::s_invariant;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A braid word on 2 or 3 strands with at most `len` letters.
fn braid(len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=3).prop_flat_map(move |n| {
        let letter = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        (Just(n), prop::collection::vec(letter, 1..=len))
    })
}

fn closure((n, word): &(usize, Vec<i32>)) -> LinkDiagram {
    braid_closure(*n, word).unwrap()
}

fn is_knot(d: &LinkDiagram) -> bool {
    d.num_components() == 1
}

fn s(d: &LinkDiagram, b: BaseRing) -> i32 {
    s_invariant(d, b).unwrap().s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_agrees_with_determinant_divisors_over_z(seed in any::<u64>()) {
        let m = support::random_int_matrix(&mut ChaCha8Rng::seed_from_u64(seed));
        support::check_int(&m).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn snf_agrees_with_determinant_divisors_over_qh(seed in any::<u64>()) {
        let m = support::random_poly_matrix(&mut ChaCha8Rng::seed_from_u64(seed));
        support::check_poly(&m).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn pd_round_trip(b in braid(6), k in 0usize..8) {
        let d = rotate_labels(&closure(&b), k).unwrap();
        let again = parse_pd(&d.to_pd()).unwrap();
        prop_assert_eq!(again.to_pd(), d.to_pd());
        prop_assert_eq!(again.writhe(), d.writhe());
        prop_assert_eq!(again.num_components(), d.num_components());
    }

    #[test]
    fn mirror_negates(b in braid(5)) {
        let d = closure(&b);
        let m = d.mirror();
        prop_assert_eq!(m.writhe(), -d.writhe());
        prop_assert_eq!(m.mirror().to_pd(), d.to_pd());
        if is_knot(&d) {
            prop_assert_eq!(s(&m, BaseRing::Rationals), -s(&d, BaseRing::Rationals));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_is_diagram_invariant(b in braid(5), k in 0usize..6, sign: bool, under: bool, char2: bool) {
        let d = closure(&b);
        prop_assume!(is_knot(&d));
        let base = if char2 { BaseRing::Prime(2) } else { BaseRing::Rationals };
        let want = s(&d, base);
        prop_assert_eq!(s(&rotate_labels(&d, k).unwrap(), base), want);
        let arc = d.arc_labels()[k % d.arc_labels().len()];
        prop_assert_eq!(s(&add_kink(&d, arc, sign, under).unwrap(), base), want);
    }

    #[test]
    fn s_agrees_across_characteristics_for_two_strands(n in 1usize..=3) {
        // torus knots T(2, 2k+1): s = 2k
        let d = braid_closure(2, &vec![1; 2 * n + 1]).unwrap();
        prop_assert_eq!(s(&d, BaseRing::Rationals), 2 * n as i32);
        prop_assert_eq!(s(&d, BaseRing::Prime(2)), 2 * n as i32);
    }

    #[test]
    fn persistence_and_snf_agree(b in braid(4), field in 0usize..3) {
        let base = [BaseRing::Rationals, BaseRing::Prime(2), BaseRing::Prime(3)][field];
        let th = Theory::new(TheoryKind::U1, base).unwrap();
        let c = CubeComplex::build(&closure(&b), &th, Reduction::Unreduced).unwrap();
        prop_assert_eq!(homology(&c).unwrap().module, homology_via_snf(&c).unwrap().module);
    }

    #[test]
    fn chain_identities_hold(b in braid(4), kind in 0usize..3) {
        let (k, base) = [
            (TheoryKind::U1, BaseRing::Integers),
            (TheoryKind::U1xU1, BaseRing::Integers),
            (TheoryKind::U2, BaseRing::Integers),
        ][kind];
        let th = Theory::new(k, base).unwrap();
        let c = CubeComplex::build(&closure(&b), &th, Reduction::Unreduced).unwrap();
        for check in matrix_identities(&c).unwrap() {
            prop_assert!(check.passed(), "{:?}", check);
        }
    }

    #[test]
    fn algebra_identities_hold_for_any_seed(seed in any::<u64>()) {
        for r in identity_suite(seed, 4).unwrap() {
            prop_assert!(r.passed(), "{:?}", r);
        }
    }
}
