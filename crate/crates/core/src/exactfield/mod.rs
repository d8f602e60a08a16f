//! Exact arithmetic in Q(sqrt 13) and the small amount of linear algebra the
//! rest of the crate needs.

pub mod linalg;
mod qf13;

pub use linalg::{in_span, nullspace, rank, rref, solve, Matrix};
pub use qf13::QF13;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational in canonical form (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

/// Parses `p`, `p/q` or a terminating decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !ip_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(n, d);
        return Some(if negative { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-0.125"), Some(Rational::new((-1).into(), 8.into())));
        assert_eq!(parse_rational("4"), Some(Rational::from_integer(4.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1."), None);
    }

    #[test]
    fn rational_squares() {
        let r = Rational::new(49.into(), 9.into());
        assert_eq!(rational_sqrt(&r), Some(Rational::new(7.into(), 3.into())));
        assert_eq!(rational_sqrt(&Rational::new(2.into(), 1.into())), None);
    }

    #[test]
    fn canonical_form_is_stable() {
        let r = Rational::new(6.into(), (-4).into());
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let again = Rational::new(r.numer().clone(), r.denom().clone());
        assert_eq!(again, r);
    }
}
