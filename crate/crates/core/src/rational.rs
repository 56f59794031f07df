//! Exact rational arithmetic for densities and exponents.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator.
pub type Rational = Ratio<i64>;

/// Builds `num/den`, rejecting a zero denominator.
pub fn ratio(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::domain("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Parses `a/b` or a plain integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::domain(format!("not a rational number: `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => text.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("5/8").unwrap(), Rational::new(5, 8));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn stays_reduced() {
        let r = Rational::new(12, -22);
        assert_eq!((*r.numer(), *r.denom()), (-6, 11));
    }
}
