//! The Ricci flow in metric parameters and in the rescaled coordinates
//! `(x, y, z)`.

use std::sync::OnceLock;

use crate::error::{G2Error, Result};
use crate::exactfield::QF13;

use super::poly::{FastField, Poly, PolyField};

fn q(n: i64, d: i64) -> QF13 {
    QF13::frac(n, d)
}

/// The polynomial field
///
/// ```text
/// x' = x (-x^2/2 + x/alpha - y^2/4)
/// y' = y (-x^2/4 + y/beta  - y^2/2)
/// z' = -z (x^2 + y^2) / 4
/// ```
///
/// in the rescaled time `tau` with `t = z tau`.
pub fn poly_field() -> &'static PolyField {
    static FIELD: OnceLock<PolyField> = OnceLock::new();
    FIELD.get_or_init(|| {
        let (x, y, z) = (Poly::var(0), Poly::var(1), Poly::var(2));
        let x2 = &x * &x;
        let y2 = &y * &y;
        let inv_a = QF13::alpha().inv().expect("alpha != 0");
        let inv_b = QF13::beta().inv().expect("beta != 0");
        let a = &(&x2.scale(&q(-1, 2)) + &x.scale(&inv_a)) + &y2.scale(&q(-1, 4));
        let b = &(&x2.scale(&q(-1, 4)) + &y.scale(&inv_b)) + &y2.scale(&q(-1, 2));
        let c = (&x2 + &y2).scale(&q(-1, 4));
        [&x * &a, &y * &b, &z * &c]
    })
}

fn fast_poly_field() -> &'static FastField {
    static FAST: OnceLock<FastField> = OnceLock::new();
    FAST.get_or_init(|| FastField::new(poly_field()))
}

pub fn poly_field_exact(s: &[QF13; 3]) -> [QF13; 3] {
    let f = poly_field();
    std::array::from_fn(|i| f[i].eval(s))
}

pub fn poly_field_at(s: &[f64; 3]) -> [f64; 3] {
    fast_poly_field().eval(s)
}

/// The field in the original time `t`: the polynomial field divided by `z`.
pub fn main_eq_at(s: &[f64; 3]) -> Result<[f64; 3]> {
    if s[2] <= 0.0 {
        return Err(G2Error::domain("the unscaled system requires z > 0"));
    }
    let p = poly_field_at(s);
    Ok(p.map(|v| v / s[2]))
}

pub fn main_eq_exact(s: &[QF13; 3]) -> Result<[QF13; 3]> {
    if !s[2].is_positive() {
        return Err(G2Error::domain("the unscaled system requires z > 0"));
    }
    let p = poly_field_exact(s);
    let mut out: [QF13; 3] = Default::default();
    for (o, v) in out.iter_mut().zip(p) {
        *o = v.checked_div(&s[2])?;
    }
    Ok(out)
}

fn require_positive_exact(v: &[QF13; 3], what: &str) -> Result<()> {
    if v.iter().all(QF13::is_positive) {
        Ok(())
    } else {
        Err(G2Error::domain(format!("{what} coordinates must be positive")))
    }
}

fn require_positive(v: &[f64; 3], what: &str) -> Result<()> {
    if v.iter().all(|c| *c > 0.0 && c.is_finite()) {
        Ok(())
    } else {
        Err(G2Error::domain(format!("{what} coordinates must be positive and finite")))
    }
}

/// Right-hand side of the flow in the metric parameters:
///
/// ```text
/// mu1' = -((alpha mu1/mu2)^2 + (beta mu1/mu3)^2) / 272
/// mu2' = alpha^2 mu1 / (272 mu2) - 1
/// mu3' = beta^2 mu1 / (272 mu3) - 1
/// ```
pub fn mu_field_exact(mu: &[QF13; 3]) -> Result<[QF13; 3]> {
    require_positive_exact(mu, "metric")?;
    let a = QF13::alpha();
    let b = QF13::beta();
    let c = q(1, 272);
    let one = QF13::from_int(1);
    let r2 = (&a * &mu[0]).checked_div(&mu[1])?;
    let r3 = (&b * &mu[0]).checked_div(&mu[2])?;
    Ok([
        -(&c * &(r2.square() + r3.square())),
        &c * &(&a * &r2) - &one,
        &c * &(&b * &r3) - &one,
    ])
}

pub fn mu_field(mu: &[f64; 3]) -> Result<[f64; 3]> {
    require_positive(mu, "metric")?;
    let (a, b) = (alpha_f64(), beta_f64());
    let r2 = a * mu[0] / mu[1];
    let r3 = b * mu[0] / mu[2];
    Ok([
        -(r2 * r2 + r3 * r3) / 272.0,
        a * r2 / 272.0 - 1.0,
        b * r3 / 272.0 - 1.0,
    ])
}

pub fn alpha_f64() -> f64 {
    13f64.sqrt() - 2.0
}

pub fn beta_f64() -> f64 {
    13f64.sqrt() + 2.0
}

/// `x = alpha mu1/(68 mu2)`, `y = beta mu1/(68 mu3)`, `z = mu1/68`.
pub fn mu_to_xyz_exact(mu: &[QF13; 3]) -> Result<[QF13; 3]> {
    require_positive_exact(mu, "metric")?;
    let c = QF13::from_int(68);
    Ok([
        (QF13::alpha() * &mu[0]).checked_div(&(&c * &mu[1]))?,
        (QF13::beta() * &mu[0]).checked_div(&(&c * &mu[2]))?,
        mu[0].checked_div(&c)?,
    ])
}

/// `mu1 = 68 z`, `mu2 = alpha z / x`, `mu3 = beta z / y`.
pub fn xyz_to_mu_exact(s: &[QF13; 3]) -> Result<[QF13; 3]> {
    require_positive_exact(s, "xyz")?;
    Ok([
        QF13::from_int(68) * &s[2],
        (QF13::alpha() * &s[2]).checked_div(&s[0])?,
        (QF13::beta() * &s[2]).checked_div(&s[1])?,
    ])
}

pub fn mu_to_xyz(mu: &[f64; 3]) -> Result<[f64; 3]> {
    require_positive(mu, "metric")?;
    Ok([
        alpha_f64() * mu[0] / (68.0 * mu[1]),
        beta_f64() * mu[0] / (68.0 * mu[2]),
        mu[0] / 68.0,
    ])
}

pub fn xyz_to_mu(s: &[f64; 3]) -> Result<[f64; 3]> {
    require_positive(s, "xyz")?;
    Ok([68.0 * s[2], alpha_f64() * s[2] / s[0], beta_f64() * s[2] / s[1]])
}
