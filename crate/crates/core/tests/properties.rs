use proptest::prelude::*;

mod common;
use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn state_surfaces((d, masks) in diagram_with_masks()) {
        check_state_surfaces(&d, &masks)?;
    }

    #[test]
    fn twist_invariance((d, masks) in diagram_with_masks()) {
        check_twist(&d, &masks)?;
    }

    #[test]
    fn normalization_idempotent(ws in wedges()) {
        check_normalization(&ws)?;
    }

    #[test]
    fn mirror_antisymmetry(d in diagrams()) {
        check_mirror(&d)?;
    }
}
