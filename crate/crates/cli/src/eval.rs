use gammaprod_core::numeric::lngamma_rational;
use gammaprod_core::Rational;
use rug::{Float, Integer};

use crate::config::{self, CliError};
use crate::PrecisionArgs;

/// Parses `k/n` or `k`. Malformed text is a usage error; a well-formed but
/// non-positive value (or zero denominator) is a domain error.
pub fn parse_positive(text: &str) -> Result<Rational, CliError> {
    let int = |t: &str| {
        t.trim()
            .parse::<Integer>()
            .map_err(|_| CliError::Usage(format!("{text:?} is not a rational k/n")))
    };
    let (k, n) = match text.trim().split_once('/') {
        Some((k, n)) => (int(k)?, int(n)?),
        None => (int(text)?, Integer::from(1)),
    };
    if n == 0 {
        return Err(CliError::Domain(format!("{text}: zero denominator")));
    }
    if (k.cmp0() as i8) * (n.cmp0() as i8) <= 0 {
        return Err(CliError::Domain(format!(
            "{text}: Γ is evaluated only at positive rationals"
        )));
    }
    Rational::from_integers(k.abs(), n.abs()).map_err(|e| CliError::Domain(e.to_string()))
}

pub fn run(text: &str, precision: &PrecisionArgs) -> Result<(), CliError> {
    let ctx = config::precision(precision)?;
    let x = parse_positive(text)?;
    let ln = lngamma_rational(&x, &ctx).map_err(|e| CliError::Domain(e.to_string()))?;
    let digits = ctx.decimal_digits();
    let show = |v: &Float| ctx.report(v).to_string_radix(10, Some(digits));

    println!("x        = {x}");
    println!("prec     = {} bits", ctx.prec_bits());
    println!("ln Γ(x)  = {}", show(&ln));
    let gamma = ln.exp();
    if gamma.is_finite() {
        println!("Γ(x)     = {}", show(&gamma));
    } else {
        println!("Γ(x)     exceeds the floating-point exponent range; only ln Γ(x) is shown");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_classifies_errors() {
        assert_eq!(parse_positive("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_positive("7").unwrap().to_string(), "7/1");
        assert_eq!(parse_positive("-2/-3").unwrap().to_string(), "2/3");
        for bad in ["abc", "1/x", "", "1/2/3"] {
            assert_eq!(parse_positive(bad).unwrap_err().exit_code(), 2, "{bad}");
        }
        for bad in ["0", "0/5", "-1/2", "1/0", "3/-4"] {
            assert_eq!(parse_positive(bad).unwrap_err().exit_code(), 3, "{bad}");
        }
    }
}
