use gammaprod_core::numeric::{pow2, PrecisionContext};
use gammaprod_core::{lngamma_rational, lngamma_stirling, lngamma_weierstrass, sin_pi_rational, Rational};
use proptest::prelude::*;
use rug::float::Constant;
use rug::Float;

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn abs_diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec().max(b.prec()), a - b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn recurrence_shifts_by_ln_x(num in 1u64..100_000, den in 1u64..1000) {
        prop_assume!(num < 100 * den);
        let c = ctx(192);
        let r = Rational::reduce(num, den).unwrap();
        let x = Float::with_val(c.working_bits(), r.as_rug());
        let x1 = Float::with_val(c.working_bits(), &x + 1u32);
        let lhs = lngamma_stirling(&x1, &c).unwrap() - lngamma_stirling(&x, &c).unwrap();
        let ln_x = Float::with_val(c.working_bits(), x.ln_ref());
        prop_assert!(abs_diff(&lhs, &ln_x) <= pow2(8 - 192), "x = {}", r);
    }

    #[test]
    fn raising_precision_moves_result_within_bound(num in 1u64..5000, den in 1u64..200) {
        let c = ctx(128);
        let r = Rational::reduce(num, den).unwrap();
        let low = lngamma_rational(&r, &c).unwrap();
        let high = lngamma_rational(&r, &c.raised(64)).unwrap();
        prop_assert!(abs_diff(&low, &high) <= pow2(8 - 128));
    }

    #[test]
    fn sin_pi_is_odd_periodic(num in 0u64..10_000, den in 1u64..500) {
        let c = ctx(128);
        let r = Rational::reduce(num, den).unwrap();
        let shifted = Rational::from_integers(r.numer().clone() + r.denom() * rug::Integer::from(2), r.denom().clone()).unwrap();
        let a = sin_pi_rational(&r, &c);
        let b = sin_pi_rational(&shifted, &c);
        prop_assert!(abs_diff(&a, &b) <= pow2(4 - 128));
        let direct = (Float::with_val(300, Constant::Pi) * r.as_rug()).sin();
        prop_assert!(abs_diff(&a, &direct) <= pow2(4 - 128));
    }
}

#[test]
fn reflection_formula_for_denominators_up_to_100() {
    let c = ctx(256);
    let bits = c.working_bits();
    let ln_pi = Float::with_val(bits, Constant::Pi).ln();
    let tol = pow2(10 - 256);
    for n in 2..=100u64 {
        for k in 1..n {
            let r = Rational::reduce(k, n).unwrap();
            let s = r.complement().unwrap();
            let mut residual = lngamma_rational(&r, &c).unwrap() + lngamma_rational(&s, &c).unwrap();
            residual -= &ln_pi;
            residual += sin_pi_rational(&r, &c).ln();
            assert!(residual.abs() <= tol, "k/n = {k}/{n}");
        }
    }
}

#[test]
fn weierstrass_oracle_sampled() {
    let c = ctx(96);
    for (k, n) in [(1, 7), (3, 10), (5, 11), (1, 50), (49, 50)] {
        let r = Rational::reduce(k, n).unwrap();
        let w = lngamma_weierstrass(&r, 5_000, &c).unwrap();
        let s = lngamma_rational(&r, &c).unwrap();
        let bound = Float::with_val(96, &w.tail_bound + pow2(8 - 96));
        assert!(abs_diff(&w.value, &s) <= bound, "{k}/{n}");
        // the estimate is much tighter than the reported bound
        assert!(abs_diff(&w.value, &s) * 100u32 <= w.tail_bound);
    }
}

#[test]
fn concurrent_evaluation_matches_serial() {
    let c = ctx(160);
    let serial: Vec<Float> = (1..=40u64)
        .map(|k| lngamma_rational(&Rational::reduce(k, 41).unwrap(), &c).unwrap())
        .collect();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            std::thread::spawn(move || {
                (1..=40u64)
                    .map(|k| lngamma_rational(&Rational::reduce(k, 41).unwrap(), &c).unwrap())
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), serial);
    }
}
