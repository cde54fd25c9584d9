//! Property tests for the structural invariants.

use eiscomb_core::field::FieldModel;
use eiscomb_core::gamma::{local_value, AbelianFactor, PiRational};
use eiscomb_core::signature::graded_sign_oracle_check;
use eiscomb_core::rational::Half;
use eiscomb_core::weight::Weight;
use eiscomb_core::weyl::Kappa;
use num::rational::BigRational;
use num::BigInt;
use proptest::prelude::*;

fn sorted_desc(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

proptest! {
    /// a/d coordinates invert back to b coordinates.
    #[test]
    fn coordinate_round_trip(b in prop::collection::vec(-50i64..50, 1..8)) {
        let model = FieldModel::imaginary_quadratic();
        let b = sorted_desc(b);
        let n = b.len();
        let w = Weight::from_tuples(&model, &[b.clone(), vec![0; n]]).unwrap();
        for (label, t) in w.b_to_a() {
            let back = Weight::a_to_b(n, &t).unwrap();
            prop_assert_eq!(back.as_slice(), w.component(&label).unwrap());
        }
    }

    /// Tate twists and duals preserve dominance, and duals preserve strong
    /// purity up to negation of the purity weight.
    #[test]
    fn twist_and_dual_preserve_structure(
        b in prop::collection::vec(-20i64..20, 1..6),
        w in -20i64..20,
        m in -10i64..10,
    ) {
        let model = FieldModel::imaginary_quadratic();
        let b = sorted_desc(b);
        let c: Vec<i64> = b.iter().rev().map(|&x| w - x).collect();
        let mu = Weight::from_tuples(&model, &[b, c]).unwrap();
        prop_assert_eq!(mu.is_strongly_pure(&model), Some(w));
        // strong purity implies algebraicity
        prop_assert!(mu.is_algebraic(&model));
        prop_assert!(mu.tate_twist(m).is_dominant());
        prop_assert_eq!(mu.tate_twist(m).is_strongly_pure(&model), Some(w + 2 * m));
        prop_assert!(mu.dual().is_dominant());
        prop_assert_eq!(mu.dual().is_strongly_pure(&model), Some(-w));
    }

    /// Purity is invariant under swapping the two members of each pair.
    #[test]
    fn purity_invariant_under_pair_swap(
        (b, c) in (1usize..6).prop_flat_map(|n| (
            prop::collection::vec(-20i64..20, n),
            prop::collection::vec(-20i64..20, n),
        )),
    ) {
        let model = FieldModel::imaginary_quadratic();
        let (b, c) = (sorted_desc(b), sorted_desc(c));
        let mu = Weight::from_tuples(&model, &[b.clone(), c.clone()]).unwrap();
        let swapped = Weight::from_tuples(&model, &[c, b]).unwrap();
        let conj = model.distinguished_conjugation();
        prop_assert_eq!(
            mu.purity_weight(&model, conj),
            swapped.purity_weight(&model, conj)
        );
    }

    /// κ round-trips through its permutation; dual is an involution with
    /// complementary length.
    #[test]
    fn kappa_round_trip(total in 2usize..10, seed in 0u64..1_000_000) {
        let n = 1 + (seed as usize) % (total - 1);
        let all = Kappa::enumerate(n, total - n);
        let kappa = &all[(seed as usize / 7) % all.len()];
        prop_assert_eq!(&Kappa::from_perm(&kappa.to_perm(), n).unwrap(), kappa);
        prop_assert_eq!(&kappa.dual().dual(), kappa);
        prop_assert_eq!(kappa.length() + kappa.dual().length(), n * (total - n));
    }

    /// Finite × finite is never a pole; multiplication is commutative and
    /// associative; division inverts multiplication.
    #[test]
    fn pi_rational_arithmetic(
        n1 in 1i64..200, d1 in 1i64..200, p1 in -6i64..6,
        n2 in 1i64..200, d2 in 1i64..200, p2 in -6i64..6,
        n3 in 1i64..200, d3 in 1i64..200, p3 in -6i64..6,
        s1 in prop::bool::ANY, s2 in prop::bool::ANY,
    ) {
        let mk = |n: i64, d: i64, p: i64, neg: bool| {
            let q = BigRational::new(BigInt::from(if neg { -n } else { n }), BigInt::from(d));
            PiRational::finite(q, p)
        };
        let a = mk(n1, d1, p1, s1);
        let b = mk(n2, d2, p2, s2);
        let c = mk(n3, d3, p3, false);
        prop_assert!(!a.mul(&b).is_pole());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }

    /// The symmetry L(s, z^α z̄^β) = L(s, z^β z̄^α) of local values.
    #[test]
    fn local_value_symmetry(a2 in -12i64..12, b2 in -12i64..12, s2 in -12i64..12) {
        let f1 = AbelianFactor::new(Half::from_twice(a2), Half::from_twice(b2));
        let f2 = AbelianFactor::new(Half::from_twice(b2), Half::from_twice(a2));
        // keep the parities compatible so s + e is a half-integer of the
        // supported classes on both sides
        let s = Half::from_twice(2 * s2);
        prop_assert_eq!(local_value(&f1, s).ok(), local_value(&f2, s).ok());
    }

    /// Koszul sign against the explicit wedge-reordering oracle.
    #[test]
    fn graded_sign_matches_oracle(
        degrees in prop::collection::vec(0usize..5, 1..7),
        seed in 0u64..1_000_000,
    ) {
        prop_assert!(graded_sign_oracle_check(&degrees, seed));
    }
}
