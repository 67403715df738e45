//! Left- and right-hand sides of the Gamma product identities, evaluated in
//! the log domain and packaged as [`VerificationRecord`]s.
//!
//! Products are never formed directly: every side is a sum of logarithms
//! carried at the context's working precision. A record passes when
//! `abs_err <= m · 2^(16 - prec_bits)`, `m` being the number of `ln Γ` or
//! `ln sin` summands, and every exact sub-check attached to it holds.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::cyclotomic_at_one;
use crate::error::{check_bound, domain, Error, Result};
use crate::numbertheory::{chebyshev_psi, lcm_upto, mangoldt, mobius_invert, phi, LogVector, LCM_MAX};
use crate::numeric::{ln_gamma_rational_bits, ln_integer, ln_two_pi, ln_two_sin_pi_bits, ln_u64, pi, PrecisionContext};
use crate::sequences::{coprime_residues, FareyIter, Rational};

/// Default upper bound for identities indexed by a denominator `n`.
pub const N_CAP: u64 = 512;
/// Default upper bound for identities indexed by a Farey order `N`.
pub const FAREY_CAP: u64 = 300;
/// Upper bound for the geometric-mean check, whose cost is linear in `n`.
pub const GEOMETRIC_MEAN_CAP: u64 = 100_000;

/// Which parameter family an identity is indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParameterKind {
    /// A denominator `n` (`--n-min`/`--n-max`).
    Denominator,
    /// A Farey order or lcm range `N` (`--N`).
    Order,
}

/// The fixed catalog of verifiable identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    Eq1,
    Theorem1Direct,
    Theorem1Inversion,
    Midpoint,
    FareyProduct,
    PsiLcm,
    SineLcm,
    SineCyclotomic,
    GeometricMean,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::Eq1,
        IdentityId::Theorem1Direct,
        IdentityId::Theorem1Inversion,
        IdentityId::Midpoint,
        IdentityId::FareyProduct,
        IdentityId::PsiLcm,
        IdentityId::SineLcm,
        IdentityId::SineCyclotomic,
        IdentityId::GeometricMean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Eq1 => "eq1",
            IdentityId::Theorem1Direct => "theorem1_direct",
            IdentityId::Theorem1Inversion => "theorem1_inversion",
            IdentityId::Midpoint => "midpoint",
            IdentityId::FareyProduct => "farey_product",
            IdentityId::PsiLcm => "psi_lcm",
            IdentityId::SineLcm => "sine_lcm",
            IdentityId::SineCyclotomic => "sine_cyclotomic",
            IdentityId::GeometricMean => "geometric_mean",
        }
    }

    pub fn parameter_kind(self) -> ParameterKind {
        match self {
            IdentityId::FareyProduct | IdentityId::PsiLcm | IdentityId::SineLcm => ParameterKind::Order,
            _ => ParameterKind::Denominator,
        }
    }

    /// Inclusive parameter range accepted by the check.
    pub fn domain(self) -> (u64, u64) {
        match self {
            IdentityId::Eq1 | IdentityId::Midpoint => (1, N_CAP),
            IdentityId::Theorem1Direct | IdentityId::Theorem1Inversion | IdentityId::SineCyclotomic => (2, N_CAP),
            IdentityId::GeometricMean => (1, GEOMETRIC_MEAN_CAP),
            IdentityId::FareyProduct | IdentityId::SineLcm => (2, FAREY_CAP),
            IdentityId::PsiLcm => (1, LCM_MAX),
        }
    }

    pub fn run(self, parameter: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
        match self {
            IdentityId::Eq1 => eq1_check(parameter, ctx),
            IdentityId::Theorem1Direct => theorem1_direct(parameter, ctx),
            IdentityId::Theorem1Inversion => theorem1_inversion(parameter, ctx),
            IdentityId::Midpoint => midpoint_check(parameter, ctx),
            IdentityId::FareyProduct => farey_product_check(parameter, ctx),
            IdentityId::PsiLcm => psi_lcm_check(parameter, ctx),
            IdentityId::SineLcm => sine_lcm_check(parameter, ctx),
            IdentityId::SineCyclotomic => sine_cyclotomic_check(parameter, ctx),
            IdentityId::GeometricMean => geometric_mean_check(parameter, ctx),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    /// Accepts catalog names; `theorem1` is shorthand for `theorem1_direct`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "theorem1" {
            return Ok(IdentityId::Theorem1Direct);
        }
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| domain("identity", s, "a catalog identity name"))
    }
}

/// Outcome of one identity check at one parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub identity_id: IdentityId,
    pub parameter: u64,
    pub prec_bits: u32,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub pass: bool,
    pub elapsed_ms: u64,
    pub tolerance: String,
}

impl VerificationRecord {
    pub fn abs_err_f64(&self) -> f64 {
        self.abs_err.parse().unwrap_or(f64::INFINITY)
    }

    pub fn rel_err_f64(&self) -> f64 {
        self.rel_err.parse().unwrap_or(f64::INFINITY)
    }
}

const ERR_DIGITS: usize = 6;

fn render(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

/// `m · 2^(16 - prec_bits)`.
pub fn tolerance(prec_bits: u32, terms: u64) -> Float {
    let unit = Float::with_val(64, Float::i_exp(1, 16 - prec_bits as i32));
    unit * terms.max(1)
}

/// Accumulates the pieces of one record.
struct Check {
    id: IdentityId,
    parameter: u64,
    ctx: PrecisionContext,
    start: Instant,
    terms: u64,
    exact_ok: bool,
    extra_errs: Vec<Float>,
}

impl Check {
    fn new(id: IdentityId, parameter: u64, ctx: &PrecisionContext) -> Result<Self> {
        let (lo, hi) = id.domain();
        if parameter < lo {
            return Err(domain("parameter", parameter, "at least the identity's minimum"));
        }
        check_bound("parameter", parameter, hi)?;
        Ok(Self {
            id,
            parameter,
            ctx: *ctx,
            start: Instant::now(),
            terms: 1,
            exact_ok: true,
            extra_errs: Vec::new(),
        })
    }

    fn bits(&self) -> u32 {
        self.ctx.working_bits()
    }

    /// Records an auxiliary comparison whose residual also counts towards `abs_err`.
    fn also_compare(&mut self, a: &Float, b: &Float) {
        self.extra_errs.push(Float::with_val(self.bits(), a - b).abs());
    }

    fn finish(self, lhs: &Float, rhs: &Float) -> VerificationRecord {
        let bits = self.bits();
        let mut abs_err = Float::with_val(bits, lhs - rhs).abs();
        for e in &self.extra_errs {
            if *e > abs_err {
                abs_err.clone_from(e);
            }
        }
        let tol = tolerance(self.ctx.prec_bits(), self.terms);
        self.build(lhs, rhs, abs_err, tol)
    }

    fn build(self, lhs: &Float, rhs: &Float, abs_err: Float, tol: Float) -> VerificationRecord {
        let bits = self.bits();
        let rel_err = if rhs.is_zero() {
            abs_err.clone()
        } else {
            Float::with_val(bits, &abs_err / rhs).abs()
        };
        let digits = self.ctx.decimal_digits();
        VerificationRecord {
            identity_id: self.id,
            parameter: self.parameter,
            prec_bits: self.ctx.prec_bits(),
            lhs: render(&self.ctx.report(lhs), digits),
            rhs: render(&self.ctx.report(rhs), digits),
            abs_err: render(&abs_err, ERR_DIGITS),
            rel_err: render(&rel_err, ERR_DIGITS),
            pass: self.exact_ok && abs_err <= tol,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            tolerance: render(&tol, ERR_DIGITS),
        }
    }
}

/// `Σ ln Γ(k/n)` over `1 <= k <= n`, `gcd(k, n) = 1`, with the summand count.
pub(crate) fn coprime_lngamma_sum(n: u64, bits: u32) -> Result<(Float, u64)> {
    let mut acc = Float::with_val(bits, 0);
    let mut count = 0;
    for k in coprime_residues(n) {
        acc += ln_gamma_rational_bits(&Rational::reduce(k, n)?, bits)?;
        count += 1;
    }
    Ok((acc, count))
}

/// `ln Π_{(k,n)=1} Γ(k/n)` by direct summation; 0 for `n = 1` (`Γ(1) = 1`).
pub fn coprime_gamma_log(n: u64, ctx: &PrecisionContext) -> Result<Float> {
    if n == 0 {
        return Err(domain("n", n, "n >= 1"));
    }
    if n == 1 {
        return Ok(Float::with_val(ctx.working_bits(), 0));
    }
    coprime_lngamma_sum(n, ctx.working_bits()).map(|(v, _)| v)
}

/// `ln Π_{k=1}^{n} Γ(k/n)` by direct summation.
pub fn full_gamma_log(n: u64, ctx: &PrecisionContext) -> Result<Float> {
    if n == 0 {
        return Err(domain("n", n, "n >= 1"));
    }
    let bits = ctx.working_bits();
    let mut acc = Float::with_val(bits, 0);
    for k in 1..=n {
        acc += ln_gamma_rational_bits(&Rational::reduce(k, n)?, bits)?;
    }
    Ok(acc)
}

/// `F(m) = ((m - 1)/2) ln 2π - ½ ln m`, the log of `Π_{k=1}^{m} Γ(k/m)`.
fn full_product_log(m: u64, bits: u32, ln_2pi: &Float) -> Float {
    let mut v = Float::with_val(bits, ln_2pi * (m - 1)) / 2u32;
    v -= ln_u64(m, bits) / 2u32;
    v
}

/// `(φ(n)/2) ln 2π - ½ Λ(n)`.
fn theorem1_closed_form(n: u64, bits: u32) -> Result<Float> {
    let mut v = Float::with_val(bits, ln_two_pi(bits) * phi(n)?) / 2u32;
    v -= mangoldt(n)?.to_float(bits) / 2u32;
    Ok(v)
}

/// `Π_{k=1}^{n} Γ(k/n) = (2π)^((n-1)/2) n^(-1/2)`.
pub fn eq1_check(n: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::Eq1, n, ctx)?;
    let bits = check.bits();
    let mut lhs = Float::with_val(bits, 0);
    for k in 1..=n {
        lhs += ln_gamma_rational_bits(&Rational::reduce(k, n)?, bits)?;
    }
    let rhs = full_product_log(n, bits, &ln_two_pi(bits));
    check.terms = n;
    Ok(check.finish(&lhs, &rhs))
}

/// `Π_{(k,n)=1} Γ(k/n) = (2π)^(φ(n)/2) / exp(Λ(n)/2)`, by direct summation.
///
/// Also confirms exactly that `Φ_n(1)` equals `exp(Λ(n))`, the integer behind
/// the prime-power correction factor.
pub fn theorem1_direct(n: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::Theorem1Direct, n, ctx)?;
    let bits = check.bits();
    let (lhs, terms) = coprime_lngamma_sum(n, bits)?;
    let rhs = theorem1_closed_form(n, bits)?;
    check.terms = terms;
    check.exact_ok = mangoldt(n)?.exp_integer() == Some(cyclotomic_at_one(n)?);
    Ok(check.finish(&lhs, &rhs))
}

/// The same product obtained by Möbius inversion of the full products,
/// `R(n) = Σ_{d | n} μ(d) F(n/d)`, which needs no Gamma evaluations.
///
/// `lhs` is the inverted value and `rhs` the closed form; the residual
/// against the direct Gamma sum is folded into `abs_err`.
pub fn theorem1_inversion(n: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::Theorem1Inversion, n, ctx)?;
    let bits = check.bits();
    let ln_2pi = ln_two_pi(bits);
    let inverted: Float = mobius_invert::<_, Error, _>(n, |m| Ok(full_product_log(m, bits, &ln_2pi)))?;
    let (direct, terms) = coprime_lngamma_sum(n, bits)?;
    let closed = theorem1_closed_form(n, bits)?;
    check.terms = terms;
    check.also_compare(&inverted, &direct);
    Ok(check.finish(&inverted, &closed))
}

fn midpoint_lngamma_sum(n: u64, bits: u32) -> Result<Float> {
    let mut acc = Float::with_val(bits, 0);
    for k in 1..=n {
        acc += ln_gamma_rational_bits(&Rational::reduce(2 * k - 1, 2 * n)?, bits)?;
    }
    Ok(acc)
}

/// `Π_{k=1}^{n} Γ((2k-1)/(2n)) = (2π)^(n/2) / √2`.
pub fn midpoint_check(n: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::Midpoint, n, ctx)?;
    let bits = check.bits();
    let lhs = midpoint_lngamma_sum(n, bits)?;
    let mut rhs = Float::with_val(bits, ln_two_pi(bits) * n) / 2u32;
    rhs -= ln_u64(2, bits) / 2u32;
    check.terms = n;
    Ok(check.finish(&lhs, &rhs))
}

/// Deviation of the midpoint Riemann mean of `ln Γ` on `(0, 1]` from
/// `½ ln 2π`, compared with its exact value `-(ln 2)/(2n)`.
pub fn geometric_mean_check(n: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::GeometricMean, n, ctx)?;
    let bits = check.bits();
    let mut lhs = midpoint_lngamma_sum(n, bits)? / n;
    lhs -= ln_two_pi(bits) / 2u32;
    let rhs = -(ln_u64(2, bits) / (2 * n));
    check.terms = n;
    Ok(check.finish(&lhs, &rhs))
}

/// `Π_{r ∈ F_N} Γ(r)/√(2π) = lcm[1..N]^(-1/2)`.
///
/// The right side is `-½ ψ(N)`; its agreement with `-½ ln lcm[1..N]` is
/// checked exactly on prime exponent vectors before any float is formed.
pub fn farey_product_check(order: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::FareyProduct, order, ctx)?;
    let bits = check.bits();
    let psi = chebyshev_psi(order)?;
    check.exact_ok = LogVector::log_of_smooth(&lcm_upto(order)?, order)? == psi;

    let mut lhs = Float::with_val(bits, 0);
    let mut count = 0u64;
    for (k, n) in FareyIter::new(order)? {
        lhs += ln_gamma_rational_bits(&Rational::reduce(k, n)?, bits)?;
        count += 1;
    }
    lhs -= Float::with_val(bits, ln_two_pi(bits) * count) / 2u32;
    let rhs = -(psi.to_float(bits) / 2u32);
    check.terms = count;
    Ok(check.finish(&lhs, &rhs))
}

/// `Σ_{n <= N} Λ(n) = ln lcm[1..N]`, compared exactly as prime exponent vectors.
pub fn psi_lcm_check(order: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let check = Check::new(IdentityId::PsiLcm, order, ctx)?;
    let bits = check.bits();
    let lcm = lcm_upto(order)?;
    let lcm_vector = LogVector::log_of_smooth(&lcm, order)?;
    let psi = chebyshev_psi(order)?;
    let lhs = ln_integer(&lcm, bits);
    let rhs = psi.to_float(bits);
    let (abs_err, exact) = if lcm_vector == psi {
        (Float::with_val(bits, 0), true)
    } else {
        ((lcm_vector - psi).to_float(bits).abs(), false)
    };
    let mut check = check;
    check.exact_ok = exact;
    Ok(check.build(&lhs, &rhs, abs_err, Float::with_val(64, 0)))
}

/// `lcm[1..N] = ½ (Π_{r ∈ F_N, r <= 1/2} 2 sin πr)²`, in logs.
pub fn sine_lcm_check(order: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::SineLcm, order, ctx)?;
    let bits = check.bits();
    let lhs = ln_integer(&lcm_upto(order)?, bits);
    let mut sum = Float::with_val(bits, 0);
    let mut count = 0u64;
    for (k, n) in FareyIter::new(order)?.take_while(|&(k, n)| 2 * k <= n) {
        sum += ln_two_sin_pi_bits(&Rational::reduce(k, n)?, bits);
        count += 1;
    }
    let rhs = sum * 2u32 - ln_u64(2, bits);
    check.terms = count;
    Ok(check.finish(&lhs, &rhs))
}

/// `Π_{(k,n)=1, k<n} 2 sin(πk/n) = Φ_n(1)`.
///
/// Also checks the reflection-formula link to the Gamma product:
/// `2 R(n) = φ(n) ln π + φ(n) ln 2 - Σ ln(2 sin(πk/n))`.
pub fn sine_cyclotomic_check(n: u64, ctx: &PrecisionContext) -> Result<VerificationRecord> {
    let mut check = Check::new(IdentityId::SineCyclotomic, n, ctx)?;
    let bits = check.bits();
    let mut log_sines = Float::with_val(bits, 0);
    let mut count = 0u64;
    for k in coprime_residues(n) {
        log_sines += ln_two_sin_pi_bits(&Rational::reduce(k, n)?, bits);
        count += 1;
    }
    let rhs = ln_integer(&cyclotomic_at_one(n)?, bits);

    let (gamma_sum, _) = coprime_lngamma_sum(n, bits)?;
    let twice_gamma = gamma_sum * 2u32;
    let mut via_reflection = Float::with_val(bits, pi(bits).ln() + ln_u64(2, bits)) * count;
    via_reflection -= &log_sines;
    check.also_compare(&twice_gamma, &via_reflection);
    check.terms = 2 * count;
    Ok(check.finish(&log_sines, &rhs))
}
