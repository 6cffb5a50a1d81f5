//! Property tests for the structural invariants of the exact kernel and
//! the cochain machinery.

use mrbld::cochain::{increasing_tuples, Cochain};
use mrbld::linalg::{vec_is_zero, Matrix, Rational};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::fraction(p, q))
}

fn arb_matrix(max_dim: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(arb_rational(), r * c)
            .prop_map(move |data| Matrix::from_fn(r, c, |i, j| data[i * c + j].clone()))
    })
}

proptest! {
    #[test]
    fn nullspace_vectors_are_exact_kernel_elements(m in arb_matrix(5)) {
        for x in m.nullspace_basis() {
            prop_assert!(vec_is_zero(&m.mul_vec(&x)));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in arb_matrix(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_idempotent(m in arb_matrix(5)) {
        let (reduced, pivots) = m.rref();
        let (again, pivots_again) = reduced.rref();
        prop_assert_eq!(reduced, again);
        prop_assert_eq!(pivots, pivots_again);
    }

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in arb_matrix(5)) {
        prop_assert_eq!(m.rank() + m.nullspace_basis().len(), m.cols());
    }

    #[test]
    fn rational_string_form_round_trips(p in -1000i64..=1000, q in 1i64..=1000) {
        let r = Rational::fraction(p, q);
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(r, back);
    }
}

fn arb_cochain(degree: usize, source_dim: usize, target_dim: usize) -> impl Strategy<Value = Cochain> {
    let count = mrbld::cochain::binomial(source_dim, degree) * target_dim;
    proptest::collection::vec(arb_rational(), count).prop_map(move |coords| {
        Cochain::from_coords(degree, source_dim, target_dim, &coords)
    })
}

proptest! {
    #[test]
    fn cochain_evaluation_alternates_under_swaps(
        f in arb_cochain(3, 4, 2),
        a in 0usize..4, b in 0usize..4, c in 0usize..4,
    ) {
        let straight = f.eval_basis(&[a, b, c]);
        let swapped = f.eval_basis(&[b, a, c]);
        let negated: Vec<Rational> = straight.iter().map(|x| -x).collect();
        prop_assert_eq!(swapped, negated);
    }

    #[test]
    fn cochain_evaluation_vanishes_on_repeats(
        f in arb_cochain(2, 4, 2),
        a in 0usize..4,
    ) {
        prop_assert!(vec_is_zero(&f.eval_basis(&[a, a])));
    }

    #[test]
    fn vector_evaluation_agrees_with_basis_evaluation(f in arb_cochain(2, 3, 2)) {
        let basis = |i: usize| Matrix::identity(3).column(i);
        for t in increasing_tuples(3, 2) {
            prop_assert_eq!(
                f.eval_vectors(&[basis(t[0]), basis(t[1])]),
                f.eval_basis(&t)
            );
        }
    }
}
