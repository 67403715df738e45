use gammaprod_core::{cyclotomic_poly, divisors, phi, poly_divexact, poly_mul, IntPolynomial};
use proptest::prelude::*;

#[test]
fn product_over_divisors_is_x_pow_n_minus_one() {
    for n in 1..=200u64 {
        let mut product = IntPolynomial::from_i64(&[1]);
        for d in divisors(n).unwrap() {
            product = poly_mul(&product, &cyclotomic_poly(d).unwrap());
        }
        assert_eq!(product, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
    }
}

#[test]
fn degree_and_palindromes() {
    for n in 1..=2000u64 {
        let p = cyclotomic_poly(n).unwrap();
        assert_eq!(p.degree(), Some(phi(n).unwrap() as usize), "deg Φ_{n}");
        assert!(p.is_monic());
        if n >= 2 {
            assert!(p.is_palindromic(), "Φ_{n}");
        }
    }
}

fn poly_strategy(max_len: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-50i64..50, 0..max_len).prop_map(|c| IntPolynomial::from_i64(&c))
}

proptest! {
    #[test]
    fn multiply_then_divide_recovers(a in poly_strategy(12), mut b in prop::collection::vec(-9i64..9, 0..8)) {
        b.push(1);
        let b = IntPolynomial::from_i64(&b);
        prop_assert_eq!(poly_divexact(&poly_mul(&a, &b), &b).unwrap(), a);
    }

    #[test]
    fn multiplication_commutes(a in poly_strategy(10), b in poly_strategy(10)) {
        prop_assert_eq!(poly_mul(&a, &b), poly_mul(&b, &a));
    }
}
