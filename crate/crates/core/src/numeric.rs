//! Multiprecision substrate: precision policy, Bernoulli numbers, and the
//! log-Gamma evaluators.
//!
//! Two independent evaluators live here. [`lngamma_stirling`] shifts the
//! argument up to a precision-dependent threshold and sums the Stirling
//! series; it is the production path. [`lngamma_weierstrass`] truncates the
//! Weierstrass product and is only meant as a low-precision cross-check.
//!
//! All arithmetic is carried at `prec_bits + guard_bits`. Returned values keep
//! the guard bits; error bounds are stated at `prec_bits`, and rounding to
//! `prec_bits` happens only when a value is rendered.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::float::Constant;
use rug::{Float, Integer};

use crate::error::{domain, Error, Result};
use crate::sequences::Rational;

/// Arbitrary-precision binary floating point value.
pub type BigFloat = Float;

pub const MIN_PREC_BITS: u32 = 64;
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// Bits of working precision for `digits` decimal digits: `ceil(digits * 3.3219) + 16`.
// The truncated constant is part of the conversion rule, not an approximation of log2(10).
#[allow(clippy::approx_constant)]
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * 3.3219).ceil() as u32 + 16
}

/// Working precision and guard policy for every floating point operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    prec_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub fn new(prec_bits: u32) -> Result<Self> {
        Self::with_guard(prec_bits, DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(prec_bits: u32, guard_bits: u32) -> Result<Self> {
        if prec_bits < MIN_PREC_BITS {
            return Err(Error::PrecisionTooLow(prec_bits));
        }
        Ok(Self { prec_bits, guard_bits })
    }

    pub fn from_digits(digits: u32) -> Result<Self> {
        Self::new(digits_to_bits(digits))
    }

    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Bits carried internally.
    pub fn working_bits(&self) -> u32 {
        self.prec_bits + self.guard_bits
    }

    /// Decimal digits that `prec_bits` resolves.
    pub fn decimal_digits(&self) -> usize {
        (f64::from(self.prec_bits) * std::f64::consts::LOG10_2).floor() as usize
    }

    /// Rounds a working value to the reporting precision.
    pub fn report(&self, x: &Float) -> Float {
        Float::with_val(self.prec_bits, x)
    }

    /// Builds a context for the same reporting precision at a higher value.
    pub fn raised(&self, extra_bits: u32) -> Self {
        Self {
            prec_bits: self.prec_bits + extra_bits,
            guard_bits: self.guard_bits,
        }
    }
}

/// `2^exp` at 64 bits.
pub fn pow2(exp: i32) -> Float {
    Float::with_val(64, Float::i_exp(1, exp))
}

pub(crate) fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub(crate) fn ln_two_pi(bits: u32) -> Float {
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    two_pi.ln()
}

pub(crate) fn ln_u64(n: u64, bits: u32) -> Float {
    Float::with_val(bits, n).ln()
}

pub(crate) fn ln_integer(n: &Integer, bits: u32) -> Float {
    Float::with_val(bits, n).ln()
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

fn bernoulli_table() -> &'static RwLock<Vec<rug::Rational>> {
    static TABLE: OnceLock<RwLock<Vec<rug::Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![rug::Rational::from(1)]))
}

/// Exact Bernoulli number `B_{two_j}` (with `B_1 = -1/2` convention internally).
///
/// Computed by the recurrence `sum_{k=0}^{m} C(m+1, k) B_k = 0` and cached for
/// the life of the process.
pub fn bernoulli(two_j: u64) -> Result<rug::Rational> {
    if two_j < 2 || two_j % 2 != 0 {
        return Err(Error::BernoulliIndex(two_j));
    }
    let m = usize::try_from(two_j).map_err(|_| Error::BernoulliIndex(two_j))?;
    {
        let table = bernoulli_table().read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(m) {
            return Ok(b.clone());
        }
    }
    let mut table = bernoulli_table().write().expect("bernoulli table poisoned");
    while table.len() <= m {
        let next = table.len();
        let mut acc = rug::Rational::new();
        for (k, b) in table.iter().enumerate() {
            if *b.numer() == 0 {
                continue;
            }
            let binom = Integer::from(Integer::binomial_u(next as u32 + 1, k as u32));
            acc += b * rug::Rational::from(binom);
        }
        table.push(-acc / rug::Rational::from(next as u64 + 1));
    }
    Ok(table[m].clone())
}

// ---------------------------------------------------------------------------
// Stirling series

/// Shift threshold for `total_bits` of working precision: the argument is
/// raised to at least this value before the asymptotic series is summed.
pub fn stirling_threshold(total_bits: u32) -> u32 {
    let scaled = (0.12 * f64::from(total_bits)).ceil() as u32 + 5;
    scaled.max(10)
}

struct StirlingTable {
    half_ln_two_pi: Float,
    /// `B_{2j} / (2j (2j - 1))` for `j = 1, 2, ...`.
    coeffs: Vec<Float>,
}

fn stirling_cache() -> &'static RwLock<HashMap<u32, Arc<StirlingTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<StirlingTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn stirling_table(bits: u32, min_terms: usize) -> Result<Arc<StirlingTable>> {
    if let Some(t) = stirling_cache().read().expect("stirling cache poisoned").get(&bits) {
        if t.coeffs.len() >= min_terms {
            return Ok(Arc::clone(t));
        }
    }
    let mut coeffs = Vec::with_capacity(min_terms);
    for j in 1..=min_terms as u64 {
        let b = bernoulli(2 * j)?;
        let c = b / rug::Rational::from(2 * j * (2 * j - 1));
        coeffs.push(Float::with_val(bits, &c));
    }
    let table = Arc::new(StirlingTable {
        half_ln_two_pi: ln_two_pi(bits) / 2u32,
        coeffs,
    });
    let mut cache = stirling_cache().write().expect("stirling cache poisoned");
    let entry = cache.entry(bits).or_insert_with(|| Arc::clone(&table));
    if entry.coeffs.len() < table.coeffs.len() {
        *entry = Arc::clone(&table);
    }
    Ok(Arc::clone(entry))
}

/// `ln Γ(x)` carried at `bits` of precision, without final rounding.
pub(crate) fn ln_gamma_bits(x: &Float, bits: u32) -> Result<Float> {
    if !x.is_finite() || *x <= 0 {
        return Err(domain("lngamma argument", x, "x > 0"));
    }
    let sigma = stirling_threshold(bits);
    let max_terms = 4 * sigma as usize;

    let mut z = Float::with_val(bits, x);
    let mut shift_product = Float::with_val(bits, 1);
    let mut shifted = false;
    while z < sigma {
        shift_product *= &z;
        z += 1u32;
        shifted = true;
    }

    let mut table = stirling_table(bits, sigma as usize)?;
    let ln_z = Float::with_val(bits, z.ln_ref());
    let mut sum = Float::with_val(bits, &z - 0.5f64) * &ln_z;
    sum -= &z;
    sum += &table.half_ln_two_pi;

    let tolerance = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let z_inv = Float::with_val(bits, 1u32) / &z;
    let z_inv_sq = Float::with_val(bits, z_inv.square_ref());
    let mut power = z_inv;
    let mut prev_mag: Option<Float> = None;
    let mut j = 0;
    loop {
        if j == max_terms {
            return Err(Error::SeriesDiverged {
                term: j,
                argument: z.to_string_radix(10, Some(20)),
            });
        }
        if j == table.coeffs.len() {
            table = stirling_table(bits, (2 * j).min(max_terms))?;
        }
        let term = Float::with_val(bits, &table.coeffs[j] * &power);
        let mag = Float::with_val(bits, term.abs_ref());
        if mag < tolerance {
            sum += term;
            break;
        }
        if prev_mag.as_ref().is_some_and(|p| mag > *p) {
            return Err(Error::SeriesDiverged {
                term: j + 1,
                argument: z.to_string_radix(10, Some(20)),
            });
        }
        sum += term;
        prev_mag = Some(mag);
        power *= &z_inv_sq;
        j += 1;
    }

    if shifted {
        sum -= shift_product.ln();
    }
    Ok(sum)
}

/// `ln Γ(x)` for real `x > 0`, with absolute error at most `2^(8 - prec_bits)`.
pub fn lngamma_stirling(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    ln_gamma_bits(x, ctx.working_bits())
}

/// Converts a rational to a float at `bits`.
pub(crate) fn rational_to_float(r: &Rational, bits: u32) -> Float {
    Float::with_val(bits, r.as_rug())
}

pub(crate) fn ln_gamma_rational_bits(r: &Rational, bits: u32) -> Result<Float> {
    if r.is_zero() {
        return Err(domain("lngamma argument", r, "r > 0"));
    }
    // Small integers: Γ(k) = (k - 1)! exactly, so ln Γ(1) = ln Γ(2) = 0.
    if *r.denom() == 1 {
        if let Some(k) = r.numer().to_u32().filter(|&k| k <= EXACT_FACTORIAL_MAX) {
            let fact = Integer::from(Integer::factorial(k - 1));
            return Ok(Float::with_val(bits, &fact).ln());
        }
    }
    ln_gamma_bits(&rational_to_float(r, bits), bits)
}

const EXACT_FACTORIAL_MAX: u32 = 1000;

/// `ln Γ(k/n)` for a positive rational.
pub fn lngamma_rational(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    ln_gamma_rational_bits(r, ctx.working_bits())
}

// ---------------------------------------------------------------------------
// Weierstrass oracle

/// A truncated series value together with a bound on its truncation error.
#[derive(Clone, Debug)]
pub struct TailEstimate {
    pub value: Float,
    pub tail_bound: Float,
}

/// `ln Γ(r)` for `0 < r <= 1` from the truncated Weierstrass product
///
/// `-γ z - ln z + sum_{j=1}^{J} (z/j - ln(1 + z/j))`,
///
/// with the tail estimate `z²/(2J)` added. The returned `tail_bound = z²/J`
/// dominates the remaining truncation error.
pub fn lngamma_weierstrass(r: &Rational, terms: u64, ctx: &PrecisionContext) -> Result<TailEstimate> {
    if terms < 10 {
        return Err(domain("Weierstrass term count", terms, "J >= 10"));
    }
    let bits = ctx.working_bits();
    let one = Rational::integer(1);
    if r.is_zero() || *r > one {
        return Err(domain("Weierstrass argument", r, "0 < r <= 1"));
    }
    let z = rational_to_float(r, bits);

    // sum z/j is z * H_J; sum ln(1 + z/j) is ln of the running product.
    let mut harmonic = Float::with_val(bits, 0);
    let mut product = Float::with_val(bits, 1);
    for j in 1..=terms {
        harmonic += Float::with_val(bits, 1u32) / j;
        product *= Float::with_val(bits, &z + j);
        product /= j;
    }
    let euler = Float::with_val(bits, Constant::Euler);
    let z_sq = Float::with_val(bits, z.square_ref());

    let mut value = Float::with_val(bits, &harmonic - &euler) * &z;
    value -= Float::with_val(bits, z.ln_ref());
    value -= product.ln();
    value += Float::with_val(bits, &z_sq / (2 * terms));

    Ok(TailEstimate {
        value,
        tail_bound: Float::with_val(ctx.prec_bits(), z_sq / terms),
    })
}

// ---------------------------------------------------------------------------
// Sine at rational multiples of pi

/// `sin(π r)` carried at `bits`.
///
/// `r` is reduced modulo 2 and folded into `[0, 1/2]` in exact arithmetic, so
/// multiples of `1/2` are returned exactly.
pub(crate) fn sin_pi_bits(r: &Rational, bits: u32) -> Float {
    let den = r.denom();
    let period = Integer::from(den * 2u32);
    let mut t = Integer::from(r.numer() % &period);
    let mut negative = false;
    if t >= *den {
        t -= den;
        negative = true;
    }
    if Integer::from(&t * 2u32) > *den {
        t = Integer::from(den - &t);
    }
    let value = if t == 0 {
        Float::with_val(bits, 0)
    } else if Integer::from(&t * 2u32) == *den {
        Float::with_val(bits, 1)
    } else {
        let frac = rug::Rational::from((t, den.clone()));
        (pi(bits) * frac).sin()
    };
    if negative {
        -value
    } else {
        value
    }
}

/// `sin(π r)` for rational `r`, absolute error at most `2^(4 - prec_bits)`.
pub fn sin_pi_rational(r: &Rational, ctx: &PrecisionContext) -> Float {
    sin_pi_bits(r, ctx.working_bits())
}

/// `ln(2 sin(π r))` for `0 < r < 1`, carried at `bits`.
pub(crate) fn ln_two_sin_pi_bits(r: &Rational, bits: u32) -> Float {
    (sin_pi_bits(r, bits) * 2u32).ln()
}
