use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};

use fvsub::exactalg::rational::{self, Rational};
use fvsub::exactalg::{IsolatedRoot, Polynomial};

use crate::CliError;

/// Exact value of `p/q`, `12`, `0.001` or `1e-12`.
pub fn parse_exact(text: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("not a number: {text:?}"));
    let s = text.trim();
    if s.contains('/') {
        return rational::parse_rational(s).map_err(|_| bad());
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['-', '+']).is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(digits, Pow::pow(&ten, (-scale) as u32))
    };
    Ok(value)
}

pub fn tolerance(arg: &Option<String>) -> Result<Rational, CliError> {
    let tol = match arg {
        Some(t) => parse_exact(t)?,
        None => fvsub::exactalg::roots::default_tolerance(),
    };
    if !tol.is_positive() || tol >= Rational::one() {
        return Err(CliError::Usage("tolerance must lie in (0, 1)".into()));
    }
    Ok(tol)
}

pub fn coeff_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

/// Root midpoint rounded half away from zero to five decimals, repeated
/// by multiplicity.
pub fn rounded_roots(roots: &[IsolatedRoot]) -> Vec<String> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(rational::round_decimal(&r.midpoint(), 5), r.multiplicity))
        .collect()
}

pub fn csv_root_rows(d: usize, kind: char, roots: &[IsolatedRoot]) -> Vec<String> {
    roots
        .iter()
        .map(|r| format!("{d},{kind},{},{},{}", r.lo, r.hi, rational::round_decimal(&r.midpoint(), 12)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fvsub::exactalg::rational::{int, rat};

    #[test]
    fn exact_numbers() {
        assert_eq!(parse_exact("1e-12").unwrap(), rational::pow10_neg(12));
        assert_eq!(parse_exact("0.001").unwrap(), rat(1, 1000));
        assert_eq!(parse_exact("2.5E-1").unwrap(), rat(1, 4));
        assert_eq!(parse_exact("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_exact("-4").unwrap(), int(-4));
        assert_eq!(parse_exact("1e3").unwrap(), int(1000));
        for bad in ["", "e5", "1.2.3", "abc", "1/0", "."] {
            assert!(parse_exact(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn tolerance_range() {
        assert!(tolerance(&Some("0".into())).is_err());
        assert!(tolerance(&Some("2".into())).is_err());
        assert_eq!(tolerance(&None).unwrap(), rational::pow10_neg(12));
    }
}
