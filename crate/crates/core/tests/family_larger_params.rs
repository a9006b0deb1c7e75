//! The closed form matches the transform for every admitted (p, k) pair,
//! including the ones beyond the headline acceptance fields.

use walsh_forge_core::family::{self, FamilyParams};

#[test]
fn theorem1_holds_for_7_1() {
    let params = FamilyParams::new(7, 1).unwrap();
    assert_eq!(params.d0(), 386);
    assert_eq!(params.s(), -1);
    let ctx = params.build_ctx().unwrap();
    let v = family::verify_theorem1(&ctx, params).unwrap();
    assert!(v.pass, "counterexamples: {:?}", v.counterexamples);
}
