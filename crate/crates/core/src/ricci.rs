//! Ricci tensor of invariant metrics on the flag manifold of `alpha2`.
//!
//! Two independent computations are provided: the closed-form components and
//! a direct evaluation of the general formula for the Ricci tensor of a
//! naturally split homogeneous metric, summed over the unnormalized orthogonal
//! basis of `m`. The second one never takes square roots.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{G2Error, Result};
use crate::exactfield::QF13;
use crate::flags::{flag_data, FlagData};
use crate::g2core::{FlagId, KVector};
use crate::metrics::{metric_is_valid, MetricParams, TangentVector};

/// Ricci components on the three modules, each relative to a
/// `(.,.)`-unit vector of the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RicciComponents {
    pub ric1: QF13,
    pub ric2: QF13,
    pub ric3: QF13,
}

impl RicciComponents {
    pub fn as_array(&self) -> [QF13; 3] {
        [self.ric1.clone(), self.ric2.clone(), self.ric3.clone()]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            self.ric1.to_f64_lossy(),
            self.ric2.to_f64_lossy(),
            self.ric3.to_f64_lossy(),
        ]
    }
}

fn check_alpha2(p: &MetricParams) -> Result<()> {
    if p.theta != FlagId::Alpha2 {
        return Err(G2Error::domain("the Ricci tensor is only available on the alpha2 flag"));
    }
    let rep = metric_is_valid(p);
    if !rep.valid {
        return Err(G2Error::InvalidMetric(rep.violations.join("; ")));
    }
    Ok(())
}

/// Closed-form components:
///
/// ```text
/// Ric1 = ((alpha mu1 / mu2)^2 + (beta mu1 / mu3)^2) / 544
/// Ric2 = 1/2 - alpha^2 mu1 / (544 mu2)
/// Ric3 = 1/2 - beta^2 mu1 / (544 mu3)
/// ```
///
/// with `alpha = sqrt13 - 2` and `beta = sqrt13 + 2`.
pub fn ricci_closed(p: &MetricParams) -> Result<RicciComponents> {
    check_alpha2(p)?;
    let (m1, m2, m3) = (&p.diag[0], &p.diag[1], &p.diag[2]);
    let a2 = QF13::alpha().square();
    let b2 = QF13::beta().square();
    let c = QF13::frac(1, 544);
    let half = QF13::frac(1, 2);
    let r2 = m1.checked_div(m2)?;
    let r3 = m1.checked_div(m3)?;
    Ok(RicciComponents {
        ric1: &c * &(&a2 * &r2.square() + &b2 * &r3.square()),
        ric2: &half - &(&c * &a2 * &r2),
        ric3: &half - &(&c * &b2 * &r3),
    })
}

/// Metric data along the basis: `g_i = <b_i, b_i> = mu_{m(i)} (b_i, b_i)`.
struct Weights<'a> {
    data: &'a FlagData,
    g: Vec<QF13>,
}

impl<'a> Weights<'a> {
    fn new(data: &'a FlagData, p: &MetricParams) -> Self {
        let g = (0..data.dim_m())
            .map(|i| &p.diag[data.module_of(i)] * &data.basis[i].norm2)
            .collect();
        Weights { data, g }
    }

    /// Coefficients of `v_m` along the basis.
    fn coords(&self, v: &KVector) -> Vec<QF13> {
        self.data.project_coords(v)
    }

    /// `<u_m, v_m>` for the metric.
    fn inner(&self, u: &KVector, v: &KVector) -> QF13 {
        let cu = self.coords(u);
        let cv = self.coords(v);
        cu.iter()
            .zip(&cv)
            .zip(&self.g)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), g)| a * b * g)
            .sum()
    }

    fn b(&self, i: usize) -> &KVector {
        &self.data.basis[i].vector
    }
}

fn u_map(w: &Weights, u: &KVector, v: &KVector) -> Result<Vec<QF13>> {
    let n = w.data.dim_m();
    let half = QF13::frac(1, 2);
    (0..n)
        .map(|l| {
            let bl = w.b(l);
            let s = w.inner(&bl.bracket(u), v) + w.inner(&bl.bracket(v), u);
            (&half * &s).checked_div(&w.g[l])
        })
        .collect()
}

/// `U(u, v)` defined by `2 <U(u,v), w> = <[w,u]_m, v> + <[w,v]_m, u>` for all
/// `w` in `m`.
pub fn u_bilinear(p: &MetricParams, u: &TangentVector, v: &TangentVector) -> Result<TangentVector> {
    check_alpha2(p)?;
    let data = flag_data(FlagId::Alpha2);
    let w = Weights::new(&data, p);
    let coeffs = u_map(&w, &u.to_kvector(), &v.to_kvector())?;
    TangentVector::new(FlagId::Alpha2, coeffs)
}

/// Full Ricci tensor `Ric(b_i, b_j)` on the unnormalized basis of `m`.
///
/// With `X_i = b_i / sqrt(g_i)` orthonormal, the sums of the general formula
/// become rational expressions in the `g_i`:
///
/// ```text
/// Ric(X,Y) = -1/2 sum_i <[X,b_i]_m, [Y,b_i]_m> / g_i + 1/2 (X,Y)
///            + 1/4 sum_{i,j} <[b_i,b_j]_m, X> <[b_i,b_j]_m, Y> / (g_i g_j)
///            - 1/2 (<[Z,X]_m, Y> + <[Z,Y]_m, X>),   Z = sum_i U(b_i,b_i) / g_i
/// ```
pub fn ricci_tensor(p: &MetricParams) -> Result<Vec<Vec<QF13>>> {
    check_alpha2(p)?;
    let data = flag_data(FlagId::Alpha2);
    let w = Weights::new(&data, p);
    let n = data.dim_m();
    let basis: Vec<KVector> = (0..n).map(|i| w.b(i).clone()).collect();

    // brackets [b_i, b_j]_m
    let br: Vec<Vec<KVector>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| data.project_to_m(&a.bracket(b))).collect())
        .collect();

    let mut z = vec![QF13::zero(); n];
    for (i, bi) in basis.iter().enumerate() {
        let u = u_map(&w, bi, bi)?;
        for (zl, ul) in z.iter_mut().zip(u) {
            *zl += ul.checked_div(&w.g[i])?;
        }
    }
    let zv = data.vector_from_coords(&z);

    let half = QF13::frac(1, 2);
    let quarter = QF13::frac(1, 4);
    let mut ric = vec![vec![QF13::zero(); n]; n];
    for k in 0..n {
        for l in k..n {
            let (x, y) = (&basis[k], &basis[l]);
            let mut t1 = QF13::zero();
            for i in 0..n {
                let s = w.inner(&br[k][i], &br[l][i]);
                if !s.is_zero() {
                    t1 += s.checked_div(&w.g[i])?;
                }
            }
            let t2 = x.inner(y);
            let mut t3 = QF13::zero();
            for i in 0..n {
                for j in 0..n {
                    let a = w.inner(&br[i][j], x);
                    let b = w.inner(&br[i][j], y);
                    if !a.is_zero() && !b.is_zero() {
                        t3 += (a * b).checked_div(&(&w.g[i] * &w.g[j]))?;
                    }
                }
            }
            let t4 = w.inner(&zv.bracket(x), y) + w.inner(&zv.bracket(y), x);
            let value = -(&half * &t1) + &half * &t2 + &quarter * &t3 - &half * &t4;
            ric[k][l] = value.clone();
            ric[l][k] = value;
        }
    }
    Ok(ric)
}

/// Ricci components per basis direction, `Ric(b_k, b_k) / (b_k, b_k)`.
pub fn ricci_besse_directions(p: &MetricParams) -> Result<Vec<QF13>> {
    let ric = ricci_tensor(p)?;
    let data = flag_data(FlagId::Alpha2);
    (0..data.dim_m())
        .map(|k| ric[k][k].checked_div(&data.basis[k].norm2))
        .collect()
}

/// Ricci components from the general formula, one direction per module.
pub fn ricci_besse(p: &MetricParams) -> Result<RicciComponents> {
    let d = ricci_besse_directions(p)?;
    let data = flag_data(FlagId::Alpha2);
    let first = |i: usize| d[data.module_range(i).start].clone();
    Ok(RicciComponents {
        ric1: first(0),
        ric2: first(1),
        ric3: first(2),
    })
}
