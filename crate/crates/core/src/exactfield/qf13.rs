use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_sqrt, Rational};
use crate::error::{G2Error, Result};

/// Nearest double to the square root of 13.
const SQRT13_F64: f64 = 3.605_551_275_463_989_3;

/// An element `rat + irr * sqrt(13)` of the real quadratic field Q(sqrt 13).
///
/// Both coefficients are kept in lowest terms by `BigRational`, so structural
/// equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QF13 {
    rat: Rational,
    irr: Rational,
}

impl QF13 {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        QF13 { rat, irr }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QF13 {
            rat,
            irr: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `n / d` as a rational element. Panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `(a/b) + (c/d) sqrt(13)` from machine integers.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        QF13 {
            rat: Rational::new(BigInt::from(a), BigInt::from(b)),
            irr: Rational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn sqrt13() -> Self {
        QF13 {
            rat: Rational::zero(),
            irr: Rational::one(),
        }
    }

    /// `sqrt(13) - 2`.
    pub fn alpha() -> Self {
        Self::from_parts(-2, 1, 1, 1)
    }

    /// `sqrt(13) + 2`.
    pub fn beta() -> Self {
        Self::from_parts(2, 1, 1, 1)
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn irr(&self) -> &Rational {
        &self.irr
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Galois conjugate `rat - irr * sqrt(13)`.
    pub fn conj(&self) -> Self {
        QF13 {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
        }
    }

    /// Field norm `rat^2 - 13 irr^2`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_integer(13.into()) * &self.irr * &self.irr
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(G2Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QF13 {
            rat: &self.rat / &n,
            irr: -(&self.irr / &n),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QF13::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn sign(&self) -> i32 {
        let s1 = rational_sign(&self.rat);
        let s2 = rational_sign(&self.irr);
        if s2 == 0 {
            return s1;
        }
        if s1 == 0 || s1 == s2 {
            return s2;
        }
        let lhs = &self.rat * &self.rat;
        let rhs = Rational::from_integer(13.into()) * &self.irr * &self.irr;
        if lhs > rhs {
            s1
        } else {
            s2
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Nearest-ish double. Cancellation between the two parts is avoided by
    /// rewriting through the conjugate, which keeps the error within a few ulp.
    pub fn to_f64(&self) -> Result<f64> {
        let s1 = rational_sign(&self.rat);
        let s2 = rational_sign(&self.irr);
        let value = if s1 * s2 >= 0 {
            rational_to_f64(&self.rat)? + rational_to_f64(&self.irr)? * SQRT13_F64
        } else {
            let n = rational_to_f64(&self.norm())?;
            let d = rational_to_f64(&self.rat)? - rational_to_f64(&self.irr)? * SQRT13_F64;
            n / d
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(G2Error::FloatOverflow(self.to_string()))
        }
    }

    /// Lossy conversion for contexts that already guarantee a finite value.
    pub fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Square root inside the field, when it exists.
    pub fn sqrt(&self) -> Option<Self> {
        match self.sign() {
            -1 => return None,
            0 => return Some(QF13::zero()),
            _ => {}
        }
        if self.irr.is_zero() {
            if let Some(r) = rational_sqrt(&self.rat) {
                return Some(QF13::from_rational(r));
            }
            let thirteen = Rational::from_integer(13.into());
            return rational_sqrt(&(&self.rat / &thirteen)).map(|d| QF13::new(Rational::zero(), d));
        }
        // (c + d sqrt13)^2 = (c^2 + 13 d^2) + 2cd sqrt13, so c^2 is a root of
        // t^2 - rat t + 13 irr^2 / 4 = 0.
        let disc = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(2.into());
        for c2 in [(&self.rat + &disc) / &two, (&self.rat - &disc) / &two] {
            if c2.is_negative() {
                continue;
            }
            if let Some(c) = rational_sqrt(&c2) {
                if c.is_zero() {
                    continue;
                }
                let d = &self.irr / (&two * &c);
                let cand = QF13::new(c, d);
                if cand.square() == *self {
                    return Some(if cand.is_negative() { -cand } else { cand });
                }
            }
        }
        None
    }

    /// Canonical textual form `p/q + r/s*sqrt13`.
    pub fn to_text(&self) -> String {
        format!(
            "{} {} {}*sqrt13",
            fmt_rational(&self.rat),
            if self.irr.is_negative() { "-" } else { "+" },
            fmt_rational(&self.irr.abs())
        )
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn rational_to_f64(r: &Rational) -> Result<f64> {
    match r.to_f64() {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(G2Error::FloatOverflow(fmt_rational(r))),
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Zero for QF13 {
    fn zero() -> Self {
        QF13 {
            rat: Rational::zero(),
            irr: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for QF13 {
    fn one() -> Self {
        QF13::from_int(1)
    }
}

impl From<i64> for QF13 {
    fn from(n: i64) -> Self {
        QF13::from_int(n)
    }
}

impl From<Rational> for QF13 {
    fn from(r: Rational) -> Self {
        QF13::from_rational(r)
    }
}

impl PartialOrd for QF13 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QF13 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

fn add_ref(a: &QF13, b: &QF13) -> QF13 {
    QF13 {
        rat: &a.rat + &b.rat,
        irr: &a.irr + &b.irr,
    }
}

fn sub_ref(a: &QF13, b: &QF13) -> QF13 {
    QF13 {
        rat: &a.rat - &b.rat,
        irr: &a.irr - &b.irr,
    }
}

fn mul_ref(a: &QF13, b: &QF13) -> QF13 {
    match (a.irr.is_zero(), b.irr.is_zero()) {
        (true, true) => QF13::from_rational(&a.rat * &b.rat),
        (true, false) => QF13 {
            rat: &a.rat * &b.rat,
            irr: &a.rat * &b.irr,
        },
        (false, true) => QF13 {
            rat: &a.rat * &b.rat,
            irr: &a.irr * &b.rat,
        },
        (false, false) => {
            let thirteen = Rational::from_integer(13.into());
            QF13 {
                rat: &a.rat * &b.rat + thirteen * &a.irr * &b.irr,
                irr: &a.rat * &b.irr + &a.irr * &b.rat,
            }
        }
    }
}

fn div_ref(a: &QF13, b: &QF13) -> QF13 {
    a.checked_div(b).expect("QF13 division by zero")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&QF13> for &QF13 {
            type Output = QF13;
            fn $method(self, rhs: &QF13) -> QF13 {
                $f(self, rhs)
            }
        }
        impl $tr<QF13> for QF13 {
            type Output = QF13;
            fn $method(self, rhs: QF13) -> QF13 {
                $f(&self, &rhs)
            }
        }
        impl $tr<&QF13> for QF13 {
            type Output = QF13;
            fn $method(self, rhs: &QF13) -> QF13 {
                $f(&self, rhs)
            }
        }
        impl $tr<QF13> for &QF13 {
            type Output = QF13;
            fn $method(self, rhs: QF13) -> QF13 {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for QF13 {
    type Output = QF13;
    fn neg(self) -> QF13 {
        QF13 {
            rat: -self.rat,
            irr: -self.irr,
        }
    }
}

impl Neg for &QF13 {
    type Output = QF13;
    fn neg(self) -> QF13 {
        -self.clone()
    }
}

impl AddAssign<&QF13> for QF13 {
    fn add_assign(&mut self, rhs: &QF13) {
        self.rat += &rhs.rat;
        self.irr += &rhs.irr;
    }
}

impl AddAssign<QF13> for QF13 {
    fn add_assign(&mut self, rhs: QF13) {
        *self += &rhs;
    }
}

impl SubAssign<&QF13> for QF13 {
    fn sub_assign(&mut self, rhs: &QF13) {
        self.rat -= &rhs.rat;
        self.irr -= &rhs.irr;
    }
}

impl SubAssign<QF13> for QF13 {
    fn sub_assign(&mut self, rhs: QF13) {
        *self -= &rhs;
    }
}

impl MulAssign<&QF13> for QF13 {
    fn mul_assign(&mut self, rhs: &QF13) {
        *self = mul_ref(self, rhs);
    }
}

impl std::iter::Sum for QF13 {
    fn sum<I: Iterator<Item = QF13>>(iter: I) -> QF13 {
        iter.fold(QF13::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for QF13 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.rat)),
            (true, false) => write!(f, "{}*sqrt13", fmt_rational(&self.irr)),
            (false, false) => write!(
                f,
                "{} {} {}*sqrt13",
                fmt_rational(&self.rat),
                if self.irr.is_negative() { "-" } else { "+" },
                fmt_rational(&self.irr.abs())
            ),
        }
    }
}

impl fmt::Debug for QF13 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QF13({})", self)
    }
}

impl FromStr for QF13 {
    type Err = G2Error;

    /// Accepts sums of terms such as `3/2`, `-sqrt13`, `2*sqrt13`,
    /// `1/4*sqrt13`, `0.5`, e.g. `1+2*sqrt13` or `7/2 - 1/3*sqrt13`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(G2Error::parse(s, "empty input"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && prev != b'e' && prev != b'E' && prev != b'*' && prev != b'/' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = QF13::zero();
        for term in terms {
            acc += parse_term(term).map_err(|reason| G2Error::parse(s, reason))?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> std::result::Result<QF13, String> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'+') => (1, &term[1..]),
        Some(b'-') => (-1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err("dangling sign".into());
    }
    let value = if let Some(pos) = body.find("sqrt13") {
        let before = &body[..pos];
        let after = &body[pos + "sqrt13".len()..];
        let coeff = if before.is_empty() {
            Rational::one()
        } else {
            let c = before
                .strip_suffix('*')
                .ok_or_else(|| format!("expected `*` before sqrt13 in `{term}`"))?;
            parse_rational(c).ok_or_else(|| format!("bad coefficient `{c}`"))?
        };
        let coeff = if after.is_empty() {
            coeff
        } else {
            let d = after
                .strip_prefix('/')
                .ok_or_else(|| format!("unexpected `{after}` after sqrt13"))?;
            let d = parse_rational(d).ok_or_else(|| format!("bad divisor `{d}`"))?;
            if d.is_zero() {
                return Err("division by zero".into());
            }
            coeff / d
        };
        QF13::new(Rational::zero(), coeff)
    } else {
        QF13::from_rational(parse_rational(body).ok_or_else(|| format!("bad rational `{body}`"))?)
    };
    Ok(if sign < 0 { -value } else { value })
}

impl Serialize for QF13 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QF13", 2)?;
        st.serialize_field("exact", &self.to_text())?;
        st.serialize_field("value", &self.to_f64().ok())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QF13 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl<'de> Visitor<'de> for QVisitor {
            type Value = QF13;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a string `p/q + r/s*sqrt13` or an object with an `exact` field")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<QF13, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<QF13, A::Error> {
                let mut exact: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    if key == "exact" {
                        exact = Some(map.next_value()?);
                    } else {
                        map.next_value::<de::IgnoredAny>()?;
                    }
                }
                let exact = exact.ok_or_else(|| de::Error::missing_field("exact"))?;
                exact.parse().map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_any(QVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QF13 {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_beta_product_is_nine() {
        assert_eq!(QF13::alpha() * QF13::beta(), QF13::from_int(9));
    }

    #[test]
    fn z_coefficient_times_sqrt13() {
        let c = QF13::from_parts(0, 1, 3, 26);
        assert_eq!(c * QF13::sqrt13(), QF13::frac(3, 2));
    }

    #[test]
    fn signs() {
        assert_eq!(QF13::alpha().sign(), 1);
        assert_eq!(QF13::zero().sign(), 0);
        assert_eq!(q("7/2 - sqrt13").sign(), -1);
        assert_eq!(q("-7/2 + sqrt13").sign(), 1);
        assert_eq!(q("-4 + sqrt13").sign(), -1);
    }

    #[test]
    fn float_conversion() {
        assert!((QF13::alpha().to_f64().unwrap() - 1.605_551_275_5).abs() < 1e-9);
        assert_eq!(QF13::zero().to_f64().unwrap(), 0.0);
        let q1 = QF13::beta() * QF13::frac(2, 9);
        assert!((q1.to_f64().unwrap() - 1.245_678_061_214_22).abs() < 1e-12);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(1));
        assert!(QF13::from_rational(big).to_f64().is_err());
    }

    #[test]
    fn parsing_forms() {
        assert_eq!(q("3/2"), QF13::frac(3, 2));
        assert_eq!(q("1+2*sqrt13"), QF13::from_parts(1, 1, 2, 1));
        assert_eq!(q("-2 + sqrt13"), QF13::alpha());
        assert_eq!(q("sqrt13/13"), QF13::from_parts(0, 1, 1, 13));
        assert_eq!(q("0.25"), QF13::frac(1, 4));
        assert_eq!(q("-3/4*sqrt13"), QF13::from_parts(0, 1, -3, 4));
        assert!("".parse::<QF13>().is_err());
        assert!("1+".parse::<QF13>().is_err());
        assert!("abc".parse::<QF13>().is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "5/7", "-1/3*sqrt13", "2 - 1/9*sqrt13", "-17/81 + 4/81*sqrt13"] {
            let v = q(s);
            assert_eq!(q(&v.to_text()), v);
            assert_eq!(q(&v.to_string()), v);
        }
    }

    #[test]
    fn field_square_roots() {
        assert_eq!(QF13::frac(52, 9).sqrt(), Some(QF13::from_parts(0, 1, 2, 3)));
        assert_eq!(QF13::from_int(4).sqrt(), Some(QF13::from_int(2)));
        assert_eq!(QF13::alpha().square().sqrt(), Some(QF13::alpha()));
        assert_eq!(QF13::from_int(2).sqrt(), None);
        assert_eq!(QF13::from_int(-1).sqrt(), None);
    }
}
