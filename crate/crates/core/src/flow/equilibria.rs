//! Equilibria of the polynomial field and their linearizations.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{G2Error, Result};
use crate::exactfield::QF13;

use super::eigen::{eigen_exact, eigen_f64, quadratic_roots_exact, EigenData};
use super::field::{alpha_f64, beta_f64, poly_field};
use super::poly::{jacobian, Poly, PolyField};
use super::Frame;

#[derive(Clone, Debug, Serialize)]
pub struct Equilibrium {
    pub label: String,
    pub frame: Frame,
    pub point: [f64; 3],
    pub exact_point: Option<[QF13; 3]>,
    /// Name of the free coordinate for one-parameter families of equilibria;
    /// `point` then holds the representative at the chosen parameter value.
    pub family_parameter: Option<String>,
    pub residual: f64,
    pub eigen: EigenData,
}

/// Roots in Q(sqrt 13) of a polynomial in the single variable `var`. Fails
/// when other variables occur or when the roots leave the field.
pub fn univariate_roots(p: &Poly, var: usize) -> Result<Vec<QF13>> {
    if p.is_zero() {
        return Err(G2Error::domain("every value is a root of the zero polynomial"));
    }
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut coeffs = vec![QF13::zero(); deg + 1];
    for (m, c) in p.terms() {
        if (0..3).any(|i| i != var && m[i] > 0) {
            return Err(G2Error::domain("polynomial is not univariate"));
        }
        coeffs[m[var] as usize] = c.clone();
    }
    let mut roots = Vec::new();
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if low > 0 {
        roots.push(QF13::zero());
    }
    let rest = &coeffs[low..];
    match rest.len() - 1 {
        0 => {}
        1 => roots.push(-(rest[0].checked_div(&rest[1])?)),
        2 => {
            let b = rest[1].checked_div(&rest[2])?;
            let c = rest[0].checked_div(&rest[2])?;
            let disc = b.square() - QF13::from_int(4) * &c;
            if disc.is_negative() {
                // no real roots
            } else {
                let [r1, r2] = quadratic_roots_exact(&b, &c)
                    .ok_or_else(|| G2Error::domain("roots are not in Q(sqrt 13)"))?;
                roots.push(r1.clone());
                if r2 != r1 {
                    roots.push(r2);
                }
            }
        }
        _ => return Err(G2Error::domain("degree too high for exact root isolation")),
    }
    roots.sort();
    Ok(roots)
}

/// Exact linearization at an exact equilibrium.
pub fn linearize_exact(field: &PolyField, point: &[QF13; 3]) -> Result<EigenData> {
    if field.iter().any(|c| !c.eval(point).is_zero()) {
        return Err(G2Error::domain("point is not an equilibrium"));
    }
    let jac = jacobian(field);
    let j: [[QF13; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| jac[r][c].eval(point)));
    Ok(eigen_exact(&j))
}

/// Numerical linearization of a polynomial frame at a float point whose
/// residual is below `1e-10`.
pub fn linearize(frame: Frame, point: &[f64; 3]) -> Result<EigenData> {
    let field = frame
        .polynomial_field()
        .ok_or_else(|| G2Error::domain(format!("frame {frame} has no polynomial field")))?;
    let residual = residual_norm(field, point);
    if residual >= 1e-10 {
        return Err(G2Error::domain(format!(
            "point is not an equilibrium (residual {residual:e})"
        )));
    }
    let jac = jacobian(field);
    let j: [[f64; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| jac[r][c].eval_f64(point)));
    Ok(eigen_f64(&j))
}

pub fn residual_norm(field: &PolyField, point: &[f64; 3]) -> f64 {
    field.iter().map(|c| c.eval_f64(point).powi(2)).sum::<f64>().sqrt()
}

/// The interior equilibrium of the invariant plane `z = 0`, solving
///
/// ```text
/// -x^2/2 + x/alpha - y^2/4 = 0
/// -x^2/4 + y/beta  - y^2/2 = 0
/// ```
///
/// by Newton's method from `guess`.
pub fn q3_newton(guess: [f64; 2], tol: f64, max_iter: usize) -> Result<[f64; 2]> {
    let (ia, ib) = (1.0 / alpha_f64(), 1.0 / beta_f64());
    let [mut x, mut y] = guess;
    for _ in 0..max_iter {
        let f1 = -0.5 * x * x + ia * x - 0.25 * y * y;
        let f2 = -0.25 * x * x + ib * y - 0.5 * y * y;
        let (j11, j12) = (-x + ia, -0.5 * y);
        let (j21, j22) = (-0.5 * x, ib - y);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 {
            break;
        }
        let dx = (f1 * j22 - f2 * j12) / det;
        let dy = (j11 * f2 - j21 * f1) / det;
        x -= dx;
        y -= dy;
        if dx.abs().max(dy.abs()) < tol {
            return Ok([x, y]);
        }
    }
    Err(G2Error::NoConvergence(max_iter))
}

pub const Q3_GUESS: [f64; 2] = [0.05, 0.35];

pub fn q3_point() -> Result<[f64; 2]> {
    q3_newton(Q3_GUESS, 1e-12, 50)
}

fn exact_equilibrium(label: &str, frame: Frame, field: &PolyField, p: [QF13; 3], family: Option<&str>) -> Result<Equilibrium> {
    let eigen = linearize_exact(field, &p)?;
    Ok(Equilibrium {
        label: label.into(),
        frame,
        point: p.clone().map(|c| c.to_f64_lossy()),
        exact_point: Some(p),
        family_parameter: family.map(String::from),
        residual: 0.0,
        eigen,
    })
}

/// Equilibria of the polynomial field with nonnegative coordinates: `q1`
/// and `q2` on the coordinate axes (exact), `q3` on the plane `z = 0`
/// (Newton) and the `z`-axis family `q4`, represented at `z = z_param`.
pub fn finite_equilibria(z_param: &QF13) -> Result<Vec<Equilibrium>> {
    let field = poly_field();
    let zero = QF13::zero();
    let axis_root = |var: usize| -> Result<QF13> {
        let mut p = field[var].clone();
        for other in 0..3 {
            if other != var {
                p = p.substitute(other, &zero);
            }
        }
        univariate_roots(&p, var)?
            .into_iter()
            .find(QF13::is_positive)
            .ok_or_else(|| G2Error::domain("no positive root on the axis"))
    };
    let q1 = axis_root(0)?;
    let q2 = axis_root(1)?;
    let mut out = vec![
        exact_equilibrium("q1", Frame::Xyz, field, [q1, zero.clone(), zero.clone()], None)?,
        exact_equilibrium("q2", Frame::Xyz, field, [zero.clone(), q2, zero.clone()], None)?,
    ];
    let [x3, y3] = q3_point()?;
    let p3 = [x3, y3, 0.0];
    out.push(Equilibrium {
        label: "q3".into(),
        frame: Frame::Xyz,
        point: p3,
        exact_point: None,
        family_parameter: None,
        residual: residual_norm(field, &p3),
        eigen: linearize(Frame::Xyz, &p3)?,
    });
    out.push(exact_equilibrium(
        "q4",
        Frame::Xyz,
        field,
        [zero.clone(), zero, z_param.clone()],
        Some("z"),
    )?);
    Ok(out)
}

pub(crate) fn exact_chart_equilibrium(
    label: &str,
    frame: Frame,
    field: &PolyField,
    p: [QF13; 3],
    family: Option<&str>,
) -> Result<Equilibrium> {
    exact_equilibrium(label, frame, field, p, family)
}
