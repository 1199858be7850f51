//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps values in lowest
//! terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, normalized. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn inv_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`. The result is normalized, so `2/4` parses to `1/2`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Nearest double together with an upper bound on the conversion error.
pub fn to_f64_with_error(r: &Rational) -> (f64, f64) {
    let value = r.to_f64().unwrap_or(f64::NAN);
    let exact = r.numer().to_f64().is_some_and(|n| n.abs() < 9.0e15)
        && r.denom().to_f64().is_some_and(|d| d == 1.0);
    let err = if exact { 0.0 } else { value.abs() * f64::EPSILON };
    (value, err)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64_with_error(&int(3)), (3.0, 0.0));
        let (v, e) = to_f64_with_error(&rat(1, 3));
        assert!((v - 1.0 / 3.0).abs() <= e + f64::EPSILON);
    }
}
