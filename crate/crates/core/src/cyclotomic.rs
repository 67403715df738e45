//! Dense integer polynomials and cyclotomic polynomials `Φ_n`.
//!
//! `Φ_n` is obtained by exact division, `Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d`,
//! with every computed `Φ_d` memoized process-wide.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, OnceLock, RwLock};

use rug::Integer;

use crate::error::{check_bound, domain, Error, Result};
use crate::numbertheory::divisors;

/// Largest `n` accepted by [`cyclotomic_poly`].
pub const CYCLOTOMIC_MAX: u64 = 10_000;

/// Integer polynomial, `coeffs[i]` being the coefficient of `x^i`. The
/// leading coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Integer::new(); n + 1];
        coeffs[0] -= 1;
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == 1)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Value at `x = 1`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> Integer {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending powers, e.g. `x^4 - x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let magnitude = Integer::from(c.abs_ref());
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = i == 0 || magnitude != 1;
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        poly_mul(self, rhs)
    }
}

/// Exact product.
pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() || b.is_zero() {
        return IntPolynomial::zero();
    }
    let mut out = vec![Integer::new(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntPolynomial::new(out)
}

/// Exact quotient `a / b` for monic `b`; fails if the remainder is nonzero.
pub fn poly_divexact(a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
    if !b.is_monic() {
        return Err(Error::InexactDivision("divisor is not monic"));
    }
    let db = b.coeffs.len() - 1;
    if a.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    let da = a.coeffs.len() - 1;
    if da < db {
        return Err(Error::InexactDivision("nonzero remainder"));
    }
    let support: Vec<(usize, &Integer)> = b.coeffs[..db].iter().enumerate().filter(|(_, c)| **c != 0).collect();
    let mut rem = a.coeffs.clone();
    let mut quot = vec![Integer::new(); da - db + 1];
    for i in (0..=da - db).rev() {
        let q = std::mem::take(&mut rem[i + db]);
        if q == 0 {
            continue;
        }
        for &(j, c) in &support {
            rem[i + j] -= &q * c;
        }
        quot[i] = q;
    }
    if rem[..db].iter().any(|c| *c != 0) {
        return Err(Error::InexactDivision("nonzero remainder"));
    }
    Ok(IntPolynomial::new(quot))
}

fn memo() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, `1 <= n <= 10^4`.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<IntPolynomial>> {
    if n == 0 {
        return Err(domain("cyclotomic index", n, "n >= 1"));
    }
    check_bound("cyclotomic index", n, CYCLOTOMIC_MAX)?;
    if let Some(p) = memo().read().expect("cyclotomic memo poisoned").get(&n) {
        return Ok(Arc::clone(p));
    }
    let mut poly = IntPolynomial::x_pow_minus_one(n as usize);
    // Larger divisors first: each division then shrinks the dividend the most.
    for d in divisors(n)?.into_iter().rev().skip(1) {
        poly = poly_divexact(&poly, &*cyclotomic_poly(d)?)?;
    }
    let poly = Arc::new(poly);
    memo()
        .write()
        .expect("cyclotomic memo poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    Ok(poly)
}

/// `Φ_n(1)` for `n >= 2`: `p` when `n = p^r`, otherwise 1.
pub fn cyclotomic_at_one(n: u64) -> Result<Integer> {
    if n < 2 {
        return Err(domain("cyclotomic index", n, "n >= 2"));
    }
    Ok(cyclotomic_poly(n)?.eval_at_one())
}
