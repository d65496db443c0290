//! Exact rationals for invariant values such as `(q/2)·Δ''(1)` or `sign/8`.

use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

/// Reduced fraction with positive denominator.
pub type Rational = Ratio<i64>;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Ratio::new(numer, denom)
}

pub fn integer(n: i64) -> Rational {
    Ratio::from_integer(n)
}

/// Integer value if the denominator is 1.
pub fn as_integer(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer())
}

/// Parity of an integral rational, `None` for non-integers.
pub fn parity(r: &Rational) -> Option<u8> {
    as_integer(r).map(|n| n.mod_floor(&2) as u8)
}

/// Render as `"n"` or `"n/d"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let r = rational(6, -8);
        assert_eq!((*r.numer(), *r.denom()), (-3, 4));
        assert_eq!(format_rational(&r), "-3/4");
        assert_eq!(parse_rational("-3/4").unwrap(), r);
        assert_eq!(parse_rational("5").unwrap(), integer(5));
    }

    #[test]
    fn parity_of_negative_odd() {
        assert_eq!(parity(&integer(-1)), Some(1));
        assert_eq!(parity(&rational(1, 2)), None);
    }
}
