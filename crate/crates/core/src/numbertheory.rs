//! Exact arithmetic functions: factorization, totient, Möbius, von Mangoldt,
//! divisor enumeration and Möbius inversion, plus `lcm[1..N]` and Chebyshev's
//! `ψ(N)`.
//!
//! Logarithms of integers are represented exactly by [`LogVector`], an integer
//! combination `Σ c_p log p`, so identities between divisor sums of logs can be
//! checked without floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use rug::{Float, Integer};

use crate::error::{check_bound, domain, Error, Result};
use crate::numeric::ln_u64;

/// Largest integer accepted by [`factorize`].
pub const FACTORIZE_MAX: u64 = 1 << 63;
/// Largest `N` accepted by [`lcm_upto`] and [`chebyshev_psi`].
pub const LCM_MAX: u64 = 100_000;
/// Largest sieve size for [`ArithmeticFunctionTable`].
pub const TABLE_MAX: u64 = 1_000_000;

/// Prime factorization with strictly increasing primes and positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The factored integer.
    pub fn value(&self) -> Integer {
        self.pairs
            .iter()
            .map(|&(p, e)| Integer::from(Integer::u_pow_u(p as u32, e)))
            .product()
    }

    /// `Some(p)` when the factored integer is `p^r`, `r >= 1`.
    pub fn prime_power_base(&self) -> Option<u64> {
        match self.pairs.as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }
}

// Increments of the 2-3-5 wheel starting at 7.
const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(domain("n", n, "n >= 1"));
    }
    check_bound("n", n, FACTORIZE_MAX)
}

/// Factorizes `1 <= n <= 2^63` by trial division over a 2-3-5 wheel.
pub fn factorize(n: u64) -> Result<Factorization> {
    check_positive(n)?;
    let mut pairs = Vec::new();
    let mut m = n;
    let mut take = |m: &mut u64, p: u64| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    for p in [2, 3, 5] {
        take(&mut m, p);
    }
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= m {
        take(&mut m, p);
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(Factorization { pairs })
}

/// Euler's totient.
pub fn phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .pairs
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product())
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    Ok(mobius_of(&factorize(n)?))
}

fn mobius_of(f: &Factorization) -> i8 {
    if f.pairs.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.pairs.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Von Mangoldt function as an exact log: `log p` for `n = p^r`, else zero.
pub fn mangoldt(n: u64) -> Result<LogVector> {
    Ok(match factorize(n)?.prime_power_base() {
        Some(p) => LogVector::log_prime(p),
        None => LogVector::zero(),
    })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in &f.pairs {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Squarefree divisors of `n` with their Möbius signs; divisors with `μ = 0` are omitted.
fn signed_squarefree_divisors(n: u64) -> Result<Vec<(u64, i8)>> {
    let f = factorize(n)?;
    let mut out = vec![(1u64, 1i8)];
    for &(p, _) in &f.pairs {
        let len = out.len();
        for i in 0..len {
            let (d, s) = out[i];
            out.push((d * p, -s));
        }
    }
    out.sort_unstable_by_key(|&(d, _)| d);
    Ok(out)
}

/// Möbius inversion: `Σ_{d | n} μ(d) · f(n/d)`.
///
/// Works over any additive group; only divisors with `μ(d) != 0` are visited,
/// and `f(n)` (the `d = 1` term) seeds the accumulator, so no zero element is
/// required.
pub fn mobius_invert<G, E, F>(n: u64, mut f: F) -> std::result::Result<G, E>
where
    G: AddAssign + SubAssign,
    F: FnMut(u64) -> std::result::Result<G, E>,
    E: From<Error>,
{
    let mut terms = signed_squarefree_divisors(n)?.into_iter();
    let (_, _) = terms.next().expect("1 divides every n");
    let mut acc = f(n)?;
    for (d, sign) in terms {
        let value = f(n / d)?;
        if sign > 0 {
            acc += value;
        } else {
            acc -= value;
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// LogVector

/// Exact integer combination of prime logarithms, `Σ c_p log p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogVector {
    coeffs: BTreeMap<u64, i64>,
}

impl LogVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `log p` for a prime `p` (not checked).
    pub fn log_prime(p: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p, 1);
        Self { coeffs }
    }

    /// `log n`, via factorization.
    pub fn log_of(n: u64) -> Result<Self> {
        Ok(Self::from(&factorize(n)?))
    }

    /// `log n` for a big integer whose prime factors are all at most `bound`.
    pub fn log_of_smooth(n: &Integer, bound: u64) -> Result<Self> {
        if *n <= 0 {
            return Err(domain("n", n, "n >= 1"));
        }
        let mut m = n.clone();
        let mut out = Self::zero();
        for p in primes_upto(bound) {
            let mut e = 0i64;
            while m.is_divisible_u(p as u32) {
                m.div_exact_u_mut(p as u32);
                e += 1;
            }
            if e != 0 {
                out.coeffs.insert(p, e);
            }
            if m == 1 {
                break;
            }
        }
        if m != 1 {
            return Err(Error::NotSmooth(n.to_string(), bound));
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: u64) -> i64 {
        self.coeffs.get(&p).copied().unwrap_or(0)
    }

    /// Nonzero `(p, c_p)` pairs in increasing `p`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn add_term(&mut self, p: u64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(p).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&p, &c)| (p, c * k)).collect(),
        }
    }

    /// `Σ c_p ln p` at `bits` of precision.
    pub fn to_float(&self, bits: u32) -> Float {
        let mut acc = Float::with_val(bits, 0);
        for (p, c) in self.iter() {
            acc += ln_u64(p, bits) * c;
        }
        acc
    }

    /// `exp` of the vector as an exact integer, defined when every coefficient
    /// is non-negative.
    pub fn exp_integer(&self) -> Option<Integer> {
        let mut acc = Integer::from(1);
        for (p, c) in self.iter() {
            let e = u32::try_from(c).ok()?;
            acc *= Integer::from(Integer::u_pow_u(u32::try_from(p).ok()?, e));
        }
        Some(acc)
    }
}

impl From<&Factorization> for LogVector {
    fn from(f: &Factorization) -> Self {
        Self {
            coeffs: f.pairs.iter().map(|&(p, e)| (p, i64::from(e))).collect(),
        }
    }
}

impl fmt::Display for LogVector {
    /// Renders as `log p · c` terms joined by ` + `; the zero vector is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "log {p} · {c}")?;
        }
        Ok(())
    }
}

impl AddAssign<&LogVector> for LogVector {
    fn add_assign(&mut self, rhs: &LogVector) {
        for (p, c) in rhs.iter() {
            self.add_term(p, c);
        }
    }
}

impl SubAssign<&LogVector> for LogVector {
    fn sub_assign(&mut self, rhs: &LogVector) {
        for (p, c) in rhs.iter() {
            self.add_term(p, -c);
        }
    }
}

impl AddAssign for LogVector {
    fn add_assign(&mut self, rhs: LogVector) {
        *self += &rhs;
    }
}

impl SubAssign for LogVector {
    fn sub_assign(&mut self, rhs: LogVector) {
        *self -= &rhs;
    }
}

impl Add for LogVector {
    type Output = LogVector;
    fn add(mut self, rhs: LogVector) -> LogVector {
        self += &rhs;
        self
    }
}

impl Sub for LogVector {
    type Output = LogVector;
    fn sub(mut self, rhs: LogVector) -> LogVector {
        self -= &rhs;
        self
    }
}

impl Neg for LogVector {
    type Output = LogVector;
    fn neg(self) -> LogVector {
        self.scaled(-1)
    }
}

// ---------------------------------------------------------------------------
// Sieved tables

/// Primes `p <= n`, ascending.
pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// φ, μ and Λ for every `1 <= n <= n_max`, from a linear sieve.
#[derive(Clone, Debug)]
pub struct ArithmeticFunctionTable {
    n_max: u64,
    phi: Vec<u64>,
    mu: Vec<i8>,
    // Prime base of n when n is a prime power, 0 otherwise. Λ(n) = log of this.
    prime_power_base: Vec<u64>,
}

impl ArithmeticFunctionTable {
    pub fn new(n_max: u64) -> Result<Self> {
        check_positive(n_max)?;
        check_bound("table size", n_max, TABLE_MAX)?;
        let size = n_max as usize + 1;
        let mut phi = vec![0u64; size];
        let mut mu = vec![0i8; size];
        let mut spf = vec![0u64; size];
        let mut base = vec![0u64; size];
        let mut primes = Vec::new();
        phi[1] = 1;
        mu[1] = 1;
        for i in 2..size {
            if spf[i] == 0 {
                spf[i] = i as u64;
                phi[i] = i as u64 - 1;
                mu[i] = -1;
                primes.push(i as u64);
            }
            for &p in &primes {
                let j = i * p as usize;
                if p > spf[i] || j >= size {
                    break;
                }
                spf[j] = p;
                if p == spf[i] {
                    phi[j] = phi[i] * p;
                    mu[j] = 0;
                } else {
                    phi[j] = phi[i] * (p - 1);
                    mu[j] = -mu[i];
                }
            }
            // i is a prime power exactly when dividing out its smallest prime
            // leaves 1 or another power of that prime.
            let p = spf[i];
            let rest = i as u64 / p;
            if rest == 1 || base[rest as usize] == p {
                base[i] = p;
            }
        }
        Ok(Self {
            n_max,
            phi,
            mu,
            prime_power_base: base,
        })
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize]
    }

    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    pub fn mangoldt(&self, n: u64) -> LogVector {
        match self.prime_power_base[n as usize] {
            0 => LogVector::zero(),
            p => LogVector::log_prime(p),
        }
    }
}

// ---------------------------------------------------------------------------
// lcm and Chebyshev ψ

fn check_lcm_bound(n: u64) -> Result<()> {
    check_positive(n)?;
    check_bound("N", n, LCM_MAX)
}

/// `lcm[1, ..., N]` as `Π_{p <= N} p^⌊log_p N⌋`.
///
/// Debug builds cross-check the result against [`lcm_upto_iterated`].
pub fn lcm_upto(n: u64) -> Result<Integer> {
    check_lcm_bound(n)?;
    let mut acc = Integer::from(1);
    for p in primes_upto(n) {
        let mut pk = p;
        while pk <= n / p {
            pk *= p;
        }
        acc *= pk;
    }
    debug_assert_eq!(acc, lcm_upto_iterated(n)?);
    Ok(acc)
}

/// `lcm[1, ..., N]` by iterated `lcm(a, b) = a b / gcd(a, b)`.
pub fn lcm_upto_iterated(n: u64) -> Result<Integer> {
    check_lcm_bound(n)?;
    let mut acc = Integer::from(1);
    for k in 2..=n {
        acc.lcm_u_mut(k as u32);
    }
    Ok(acc)
}

/// Chebyshev `ψ(N) = Σ_{n <= N} Λ(n)` as an exact log.
pub fn chebyshev_psi(n: u64) -> Result<LogVector> {
    check_lcm_bound(n)?;
    let table = ArithmeticFunctionTable::new(n)?;
    let mut acc = LogVector::zero();
    for k in 1..=n {
        acc += table.mangoldt(k);
    }
    Ok(acc)
}
