mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn leibniz_rule(a in series(), b in series()) {
        leibniz(&a, &b)?;
    }

    #[test]
    fn pow_rational_additivity(f in unit_series(), x in rational(7, 5), y in rational(7, 5)) {
        pow_additivity(&f, &x, &y)?;
    }

    #[test]
    fn eta_conjugation_identity(f in series(), k in rational(12, 2), l in rational(12, 5)) {
        eta_conjugation(&f, &k, &l)?;
    }

    #[test]
    fn weighted_operator_at_zero(s in rational(300, 5)) {
        weighted_zero_is_flat(&s)?;
    }
}

#[test]
fn eta_power_anchor() {
    assert!(eta24_prefix());
}
