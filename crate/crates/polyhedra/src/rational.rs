//! Exact rationals and the helpers the rest of the crate needs around them.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `7`, `-3/4` or a decimal such as `0.2`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let whole_val = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_abs).ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_val = BigInt::from_str(frac).ok()?;
        let magnitude = Rational::new(whole_val * &scale + frac_val, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(text).ok().map(Rational::from_integer)
}

/// `num/den` rendering used on every serialization boundary; integers keep
/// an explicit `/1`.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Scales a rational vector to the primitive integer vector pointing in the
/// same direction.
pub(crate) fn primitive_from_rationals(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
