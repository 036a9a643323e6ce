//! Codec properties beyond the exhaustive small ranges of the unit tests.

use forge_core::bits::Bits;
use forge_core::seq::{decode_seq, encode_seq, num_to_str, pair, project, seq_get, str_to_num, tuple_k, unpair};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big() -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u32>(), 0..5).prop_map(BigUint::new)
}

proptest! {
    #[test]
    fn unpair_inverts_pair_on_large_values(x in big(), y in big()) {
        prop_assert_eq!(unpair(&pair(&x, &y)), (x, y));
    }

    #[test]
    fn pair_is_monotone_in_each_argument(x in big(), y in big()) {
        prop_assert!(pair(&(&x + 1u32), &y) > pair(&x, &y));
        prop_assert!(pair(&x, &(&y + 1u32)) > pair(&x, &y));
    }

    #[test]
    fn projections_recover_tuples(xs in prop::collection::vec(big(), 1..6)) {
        let code = tuple_k(&xs).unwrap();
        for (i, x) in xs.iter().enumerate() {
            prop_assert_eq!(&project(&code, i, xs.len()).unwrap(), x);
        }
    }

    #[test]
    fn sequences_roundtrip_and_pad_with_zero(xs in prop::collection::vec(big(), 0..8)) {
        let code = encode_seq(&xs);
        prop_assert_eq!(&decode_seq(&code).unwrap(), &xs);
        prop_assert_eq!(seq_get(&code, xs.len()).unwrap(), BigUint::default());
    }

    #[test]
    fn non_canonical_codes_never_decode_to_another_sequence(n in big()) {
        // whatever decodes must re-encode to the same number
        if let Ok(xs) = decode_seq(&n) {
            prop_assert_eq!(encode_seq(&xs), n);
        }
    }

    #[test]
    fn long_strings_roundtrip(v in prop::collection::vec(any::<bool>(), 0..40)) {
        let x = Bits::from_bools(v);
        let code = str_to_num(&x, 40).unwrap();
        prop_assert_eq!(num_to_str(&code, x.len()).unwrap(), x);
    }
}
