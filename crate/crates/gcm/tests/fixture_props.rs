use gcm::fixture::IdentityFixture;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn any_nonzero_perturbation_breaks_the_identity(index in 0usize..25, delta in -50i64..50) {
        prop_assume!(delta != 0);
        let f = IdentityFixture::example().perturbed(index, delta).unwrap();
        prop_assert!(!f.verify(24, 2048).unwrap());
    }

    #[test]
    fn json_round_trip_preserves_the_identity(scale in 1i64..6) {
        let mut f = IdentityFixture::example();
        for t in &mut f.terms {
            let c: i64 = t.coeff.parse().unwrap();
            t.coeff = format!("{}/{}", c * scale, scale);
        }
        let text = serde_json::to_string(&f).unwrap();
        let back = IdentityFixture::parse(&text).unwrap();
        prop_assert!(back.verify(24, 2048).unwrap());
    }
}
