//! Randomized invariants over small languages and partitions.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn entropy_chain_holds(x in instance()) {
        entropy_chain(&x)?;
    }

    #[test]
    fn information_is_ordered(x in instance()) {
        information_ordering(&x)?;
    }

    #[test]
    fn mutual_information_is_nonnegative_and_symmetric(x in instance()) {
        mi_nonnegative_symmetric(&x)?;
    }

    #[test]
    fn projection_commutes(x in instance()) {
        projection_commutes_with_shuffle(&x)?;
    }

    #[test]
    fn refinement_never_loses_information(x in instance()) {
        refinement_monotone(&x)?;
    }

    #[test]
    fn factored_entropy_identity(x in instance()) {
        factored_entropy_matches_explicit(&x)?;
    }

    #[test]
    fn shuffle_preserves_mass_and_is_idempotent(x in instance()) {
        let s = x.language.shuffle();
        prop_assert!((s.total_mass() - 1.0).abs() <= TOL);
        prop_assert!(s.shuffle().max_abs_diff(&s) <= TOL);
    }

    #[test]
    fn projection_preserves_mass(x in instance()) {
        let p = x.language.project(&x.first).unwrap();
        prop_assert!((p.total_mass() - 1.0).abs() <= TOL);
    }
}
