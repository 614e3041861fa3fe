//! Small helpers around `BigRational`.
//!
//! The crate-wide convention for serializing rationals is the reduced form
//! with a positive denominator, printed as `"num"` when the denominator is 1
//! and `"num/den"` otherwise. `BigRational`'s canonical representation
//! already guarantees this, so formatting is just `Display`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rational from an `i64`.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `num/den`; panics on a zero denominator (internal use only).
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `1 / 2^p`.
pub fn two_pow_neg(p: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2u32).pow(p))
}

/// Parse `"num"` or `"num/den"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().map_err(|_| bad())?,
            d.trim().parse::<BigInt>().map_err(|_| bad())?,
        ),
        None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parse a whole vector of rational literals.
pub fn parse_rational_vec(items: &[String]) -> Result<Vec<BigRational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

/// Render in the crate-wide exact format.
pub fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// `|q|` as a rational.
pub fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3", "10/4"] {
            let q = parse_rational(s).unwrap();
            let back = parse_rational(&rational_string(&q)).unwrap();
            assert_eq!(q, back);
        }
        // reduced, positive denominator
        assert_eq!(rational_string(&parse_rational("10/4").unwrap()), "5/2");
        assert_eq!(rational_string(&parse_rational("3/-6").unwrap()), "-1/2");
        assert_eq!(rational_string(&parse_rational("4/2").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "x", "1/0", "1/2/3", "1.5"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn frac_part_is_in_unit_interval() {
        assert_eq!(frac_part(&ratio(7, 3)), ratio(1, 3));
        assert_eq!(frac_part(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(frac_part(&rat(5)), rat(0));
    }
}
