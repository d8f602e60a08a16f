//! The blow-up chart `kappa1` of the `z`-axis and the Poincare charts
//! `U1, U2, U3` at infinity, derived symbolically from the polynomial field.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{G2Error, Result};
use crate::exactfield::QF13;

use super::equilibria::{exact_chart_equilibrium, univariate_roots, Equilibrium};
use super::field::poly_field;
use super::poly::{FastField, Monomial, Poly, PolyField};
use super::Frame;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Chart {
    Kappa1,
    U1,
    U2,
    U3,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::Kappa1, Chart::U1, Chart::U2, Chart::U3];

    pub fn variables(self) -> [&'static str; 3] {
        match self {
            Chart::Kappa1 => ["x1", "r1", "z1"],
            _ => ["z1", "z2", "z3"],
        }
    }

    pub fn frame(self) -> Frame {
        match self {
            Chart::Kappa1 => Frame::Kappa1,
            Chart::U1 => Frame::U1,
            Chart::U2 => Frame::U2,
            Chart::U3 => Frame::U3,
        }
    }

    fn index(self) -> usize {
        match self {
            Chart::Kappa1 => 0,
            Chart::U1 => 0,
            Chart::U2 => 1,
            Chart::U3 => 2,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::Kappa1 => "kappa1",
            Chart::U1 => "U1",
            Chart::U2 => "U2",
            Chart::U3 => "U3",
        };
        f.write_str(s)
    }
}

impl FromStr for Chart {
    type Err = G2Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kappa1" | "k1" => Ok(Chart::Kappa1),
            "u1" => Ok(Chart::U1),
            "u2" => Ok(Chart::U2),
            "u3" => Ok(Chart::U3),
            _ => Err(G2Error::parse(s, "expected one of kappa1, U1, U2, U3")),
        }
    }
}

/// Blow-up `x = r1 x1, y = r1, z = z1`, desingularized by dividing by `r1`:
///
/// ```text
/// x1' = (P1 - x1 P2) / r1^2,   r1' = P2 / r1,   z1' = P3 / r1
/// ```
fn derive_kappa1(field: &PolyField) -> PolyField {
    let (x1, r1, z1) = (Poly::var(0), Poly::var(1), Poly::var(2));
    let sub = [&r1 * &x1, r1.clone(), z1];
    let p: [Poly; 3] = std::array::from_fn(|i| field[i].compose(&sub));
    let num = &p[0] - &(&x1 * &p[1]);
    [
        num.div_monomial(&[0, 2, 0]).expect("divisible by r1^2"),
        p[1].div_monomial(&[0, 1, 0]).expect("divisible by r1"),
        p[2].div_monomial(&[0, 1, 0]).expect("divisible by r1"),
    ]
}

/// Poincare chart `U_{k+1}`: the coordinate `k` becomes `1/z3` and the other
/// two become `z1/z3, z2/z3` in order. With `Q = z3^3 P(...)`, the chart field
/// is `(Q_a - z1 Q_k, Q_b - z2 Q_k, -z3 Q_k)`, where `a < b` are the remaining
/// coordinates. This is the compactified field up to the positive factor
/// `1 / Delta(z)^2`.
fn derive_poincare(field: &PolyField, k: usize) -> PolyField {
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    // numerator monomial of each original variable in chart variables
    let mut num: [Monomial; 3] = [[0; 3]; 3];
    num[others[0]] = [1, 0, 0];
    num[others[1]] = [0, 1, 0];
    let q: [Poly; 3] = std::array::from_fn(|i| {
        Poly::from_terms(field[i].terms().map(|(m, c)| {
            let d: u32 = m.iter().sum();
            assert!(d <= 3, "the Poincare construction expects degree <= 3");
            let mut e = [0u32, 0, 3 - d];
            for (v, &pw) in m.iter().enumerate() {
                for j in 0..3 {
                    e[j] += num[v][j] * pw;
                }
            }
            (e, c.clone())
        }))
    });
    let (z1, z2, z3) = (Poly::var(0), Poly::var(1), Poly::var(2));
    [
        &q[others[0]] - &(&z1 * &q[k]),
        &q[others[1]] - &(&z2 * &q[k]),
        -(&z3 * &q[k]),
    ]
}

pub fn derive_chart(chart: Chart, field: &PolyField) -> PolyField {
    match chart {
        Chart::Kappa1 => derive_kappa1(field),
        other => derive_poincare(field, other.index()),
    }
}

struct ChartCache {
    exact: PolyField,
    fast: FastField,
}

fn cache(chart: Chart) -> &'static ChartCache {
    static CACHE: OnceLock<[ChartCache; 4]> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        Chart::ALL.map(|c| {
            let exact = derive_chart(c, poly_field());
            let fast = FastField::new(&exact);
            ChartCache { exact, fast }
        })
    });
    &all[Chart::ALL.iter().position(|c| *c == chart).expect("known chart")]
}

/// The chart system derived from the polynomial field.
pub fn chart_system(chart: Chart) -> &'static PolyField {
    &cache(chart).exact
}

pub fn chart_field(chart: Chart, s: &[f64; 3]) -> [f64; 3] {
    cache(chart).fast.eval(s)
}

pub fn chart_field_exact(chart: Chart, s: &[QF13; 3]) -> [QF13; 3] {
    let f = chart_system(chart);
    std::array::from_fn(|i| f[i].eval(s))
}

/// Point in `(x, y, z)` represented by chart coordinates, when finite.
pub fn chart_to_xyz(chart: Chart, s: &[f64; 3]) -> Option<[f64; 3]> {
    match chart {
        Chart::Kappa1 => Some([s[1] * s[0], s[1], s[2]]),
        _ if s[2] == 0.0 => None,
        other => {
            let k = other.index();
            let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
            let mut p = [0.0; 3];
            p[k] = 1.0 / s[2];
            p[others[0]] = s[0] / s[2];
            p[others[1]] = s[1] / s[2];
            Some(p)
        }
    }
}

/// `pi(x) = x / sqrt(1 + |x|^2)`, mapping `R^3` onto the open unit ball.
pub fn disk_projection(p: &[f64; 3]) -> [f64; 3] {
    let d = (1.0 + p.iter().map(|c| c * c).sum::<f64>()).sqrt();
    p.map(|c| c / d)
}

fn restricted(p: &Poly, var: usize) -> Poly {
    p.substitute(var, &QF13::zero())
}

/// Equilibria on the distinguished invariant plane of each chart: `r1 = 0`
/// for `kappa1` (a family parametrized by `z1 = z_star`) and the sphere at
/// infinity `z3 = 0` for the Poincare charts.
pub fn chart_equilibria(chart: Chart, z_star: &QF13) -> Result<Vec<Equilibrium>> {
    let field = chart_system(chart);
    let frame = chart.frame();
    let zero = QF13::zero();
    match chart {
        Chart::Kappa1 => {
            if !z_star.is_positive() {
                return Err(G2Error::domain("z1* must be positive"));
            }
            let mut p0 = restricted(&field[0], 1);
            p0 = p0.substitute(2, z_star);
            let roots = univariate_roots(&p0, 0)?;
            roots
                .into_iter()
                .map(|x1| {
                    let label = if x1.is_zero() { "p-" } else { "p+" };
                    exact_chart_equilibrium(label, frame, field, [x1, zero.clone(), z_star.clone()], Some("z1"))
                })
                .collect()
        }
        _ => {
            let r1 = univariate_roots(&restricted(&field[0], 2), 0)?;
            let r2 = univariate_roots(&restricted(&field[1], 2), 1)?;
            let mut pts: Vec<[QF13; 3]> = Vec::new();
            for a in &r1 {
                for b in &r2 {
                    let p = [a.clone(), b.clone(), zero.clone()];
                    if field.iter().all(|c| c.eval(&p).is_zero()) {
                        pts.push(p);
                    }
                }
            }
            // nonzero points first, in decreasing order, then the origin
            pts.sort_by(|a, b| {
                let za = a.iter().all(Zero::is_zero);
                let zb = b.iter().all(Zero::is_zero);
                za.cmp(&zb).then_with(|| b.cmp(a))
            });
            let mut k = 0;
            pts.into_iter()
                .map(|p| {
                    let label = if p.iter().all(Zero::is_zero) {
                        "origin".to_string()
                    } else {
                        k += 1;
                        format!("p{k}")
                    };
                    exact_chart_equilibrium(&label, frame, field, p, None)
                })
                .collect()
        }
    }
}

/// `z1* (alpha^2 + beta^2) / (4 beta)`, the slope in the generalized
/// eigenvector `(0, 1, -slope)` at `p+`.
pub fn kappa1_generalized_slope(z_star: &QF13) -> QF13 {
    let num = z_star * &(QF13::alpha().square() + QF13::beta().square());
    num.checked_div(&(QF13::from_int(4) * QF13::beta())).expect("beta != 0")
}

/// One for each chart variable: convenient for tests.
pub fn unit_point() -> [QF13; 3] {
    [QF13::one(), QF13::one(), QF13::one()]
}
