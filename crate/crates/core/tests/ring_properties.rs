mod common;

use common::ring_props;
use common::{laurent1, laurent2, unit_monomial2};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in laurent2(), b in laurent2(), c in laurent2()) {
        ring_props::axioms(&a, &b, &c)?;
    }

    #[test]
    fn gcd_divides_both(a in laurent2(), b in laurent2(), c in laurent2()) {
        ring_props::gcd_divides(&a, &b, &c)?;
    }

    #[test]
    fn canonical_form(a in laurent2(), u in unit_monomial2()) {
        ring_props::canonical_idempotent(&a, &u)?;
    }

    #[test]
    fn one_variable_ring(a in laurent1(), b in laurent1()) {
        ring_props::one_variable(&a, &b)?;
    }

    #[test]
    fn specialization_is_a_homomorphism(a in laurent2(), b in laurent2(), su in 1i64..101, sv in 1i64..101) {
        ring_props::specialization(&a, &b, su, sv)?;
    }
}
