use gammaprod_core::{farey, farey_bruteforce, ArithmeticFunctionTable, FareyIter};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn recurrence_matches_enumeration(order in 2u64..=150) {
        prop_assert_eq!(farey(order).unwrap(), farey_bruteforce(order).unwrap());
    }

    #[test]
    fn farey_is_symmetric(order in 2u64..=400) {
        let f = farey(order).unwrap();
        let mirrored: Vec<_> = f.iter().rev().map(|r| r.complement().unwrap()).collect();
        prop_assert_eq!(f.elements, mirrored);
    }
}

/// Cardinality and the neighbour determinant `bc - ad = 1`, with the virtual
/// endpoints 0/1 and 1/1, for every order up to 1000.
#[test]
fn cardinality_and_neighbour_determinant() {
    let table = ArithmeticFunctionTable::new(1000).unwrap();
    let mut expected = 0u64;
    for order in 2..=1000u64 {
        expected += table.phi(order);
        let mut prev = (0u64, 1u64);
        let mut count = 0u64;
        for (c, d) in FareyIter::new(order).unwrap() {
            let (a, b) = prev;
            assert_eq!(b * c - a * d, 1, "order {order} at {c}/{d}");
            assert!(d <= order);
            prev = (c, d);
            count += 1;
        }
        let (a, b) = prev;
        assert_eq!(b - a, 1, "order {order} closing pair");
        assert_eq!(count, expected, "|F_{order}|");
    }
}
