//! Eigen-data of 3x3 Jacobians.
//!
//! Exact Jacobians go through the characteristic polynomial over Q(sqrt 13):
//! repeated roots are isolated with a gcd against the derivative, candidate
//! roots on the diagonal are tested exactly, and quadratic factors are solved
//! in the field when the discriminant is a square there. Only what is left
//! falls back to the floating-point cubic solver.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactfield::{nullspace, QF13};

/// Real parts below this magnitude count as zero for classification.
pub const ZERO_REAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Attractor,
    Source,
    Saddle,
    Nonhyperbolic,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stability::Attractor => "attractor",
            Stability::Source => "source",
            Stability::Saddle => "saddle",
            Stability::Nonhyperbolic => "nonhyperbolic",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigen {
    pub re: f64,
    pub im: f64,
    /// The eigenvalue in closed form, when it lies in Q(sqrt 13).
    pub exact: Option<QF13>,
    /// Unit eigenvector (real eigenvalues only; `None` for missing vectors of
    /// defective eigenvalues).
    pub vector: Option<[f64; 3]>,
    /// Exact eigenvector scaled so that its first nonzero entry is 1.
    pub exact_vector: Option<[QF13; 3]>,
}

impl Eigen {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenData {
    pub jacobian: [[f64; 3]; 3],
    pub eigen: Vec<Eigen>,
    /// Generalized eigenvectors completing the eigenvectors of defective
    /// eigenvalues to a basis of their generalized eigenspaces.
    pub generalized: Vec<[QF13; 3]>,
    pub classification: Stability,
}

impl EigenData {
    pub fn values(&self) -> Vec<Complex64> {
        self.eigen.iter().map(Eigen::value).collect()
    }
}

pub fn classify(values: &[Complex64]) -> Stability {
    if values.iter().any(|v| v.re.abs() < ZERO_REAL_TOL) {
        Stability::Nonhyperbolic
    } else if values.iter().all(|v| v.re < 0.0) {
        Stability::Attractor
    } else if values.iter().all(|v| v.re > 0.0) {
        Stability::Source
    } else {
        Stability::Saddle
    }
}

/// Roots of the monic cubic `t^3 + a t^2 + b t + c`.
pub fn cubic_roots(a: f64, b: f64, c: f64) -> [Complex64; 3] {
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let polish = |mut t: f64| {
        for _ in 0..3 {
            let f = ((t + a) * t + b) * t + c;
            let df = (3.0 * t + 2.0 * a) * t + b;
            if df == 0.0 {
                break;
            }
            t -= f / df;
        }
        t
    };
    if disc > 0.0 {
        let s = disc.sqrt();
        let r = polish((-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() + shift);
        // deflate: t^2 + (a + r) t + (b + r (a + r))
        let bb = a + r;
        let cc = b + r * bb;
        let d = bb * bb / 4.0 - cc;
        let re = -bb / 2.0;
        let im = (-d).max(0.0).sqrt();
        [Complex64::new(r, 0.0), Complex64::new(re, -im), Complex64::new(re, im)]
    } else {
        let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
        let arg = if m == 0.0 {
            0.0
        } else {
            (3.0 * q / (p * m)).clamp(-1.0, 1.0)
        };
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        std::array::from_fn(|k| Complex64::new(polish(m * (theta - tau * k as f64).cos() + shift), 0.0))
    }
}

fn sort_values(v: &mut [Complex64]) {
    v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

fn normalize_f64(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    let mut u = v.map(|c| c / n);
    if let Some(first) = u.iter().find(|c| c.abs() > 1e-12) {
        if *first < 0.0 {
            u = u.map(|c| -c);
        }
    }
    // avoid printing negative zeros
    u.map(|c| if c == 0.0 { 0.0 } else { c })
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Null vector of `J - lambda I` for a simple real eigenvalue.
fn float_eigenvector(j: &[[f64; 3]; 3], lambda: f64) -> Option<[f64; 3]> {
    let m: [[f64; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| j[r][c] - if r == c { lambda } else { 0.0 }));
    let candidates = [cross(&m[0], &m[1]), cross(&m[0], &m[2]), cross(&m[1], &m[2])];
    let best = candidates
        .into_iter()
        .max_by(|a, b| norm(a).total_cmp(&norm(b)))
        .expect("three candidates");
    if norm(&best) > 1e-300 {
        return Some(normalize_f64(best));
    }
    // rank <= 1: any vector orthogonal to a nonzero row
    let row = m.iter().find(|r| norm(r) > 0.0)?;
    let e = if row[0].abs() < 0.9 * norm(row) { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    Some(normalize_f64(cross(row, &e)))
}

fn norm(v: &[f64; 3]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Eigen-data of a floating-point Jacobian.
pub fn eigen_f64(j: &[[f64; 3]; 3]) -> EigenData {
    let tr = j[0][0] + j[1][1] + j[2][2];
    let minors = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2] - j[0][2] * j[2][0]
        + j[1][1] * j[2][2]
        - j[1][2] * j[2][1];
    let det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    let mut values = cubic_roots(-tr, minors, -det).to_vec();
    sort_values(&mut values);
    let eigen = values
        .iter()
        .map(|v| Eigen {
            re: v.re,
            im: v.im,
            exact: None,
            vector: if v.im == 0.0 { float_eigenvector(j, v.re) } else { None },
            exact_vector: None,
        })
        .collect();
    EigenData {
        jacobian: *j,
        eigen,
        generalized: vec![],
        classification: classify(&values),
    }
}

// Univariate polynomials over Q(sqrt 13), coefficients in ascending order.
type UPoly = Vec<QF13>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn upoly_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty").checked_div(&lb).expect("nonzero");
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn upoly_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        a = a.iter().map(|c| c.checked_div(&l).expect("nonzero")).collect();
    }
    a
}

fn upoly_eval(p: &UPoly, t: &QF13) -> QF13 {
    p.iter().rev().fold(QF13::zero(), |acc, c| acc * t + c)
}

/// Divides by `(t - r)`, assuming `r` is a root.
fn deflate(p: &UPoly, r: &QF13) -> UPoly {
    let n = p.len() - 1;
    let mut q = vec![QF13::zero(); n];
    let mut carry = QF13::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &(&carry * r);
        q[i] = carry.clone();
    }
    q
}

/// Real roots of the monic quadratic `t^2 + b t + c` in Q(sqrt 13), if the
/// discriminant is a square there.
pub fn quadratic_roots_exact(b: &QF13, c: &QF13) -> Option<[QF13; 2]> {
    let disc = b.square() - QF13::from_int(4) * c;
    let s = disc.sqrt()?;
    let half = QF13::frac(1, 2);
    Some([&half * &(-b - &s), &half * &(-b + &s)])
}

/// Characteristic polynomial `det(t I - J)` in ascending coefficients.
pub fn char_poly_exact(j: &[[QF13; 3]; 3]) -> [QF13; 4] {
    let tr = &(&j[0][0] + &j[1][1]) + &j[2][2];
    let m = |a: usize, b: usize| &j[a][a] * &j[b][b] - &j[a][b] * &j[b][a];
    let minors = m(0, 1) + m(0, 2) + m(1, 2);
    let det = &j[0][0] * &(&j[1][1] * &j[2][2] - &j[1][2] * &j[2][1])
        - &j[0][1] * &(&j[1][0] * &j[2][2] - &j[1][2] * &j[2][0])
        + &j[0][2] * &(&j[1][0] * &j[2][1] - &j[1][1] * &j[2][0]);
    [-det, minors, -tr, QF13::one()]
}

/// Exact roots with multiplicity where possible; `None` entries are left for
/// the numerical solver.
fn exact_roots(j: &[[QF13; 3]; 3]) -> Vec<QF13> {
    let p: UPoly = char_poly_exact(j).to_vec();
    let dp: UPoly = vec![p[1].clone(), &p[2] * &QF13::from_int(2), &p[3] * &QF13::from_int(3)];
    let g = upoly_gcd(&p, &dp);
    let c2 = &p[2];
    match g.len() {
        3 => {
            let r = -(c2.checked_div(&QF13::from_int(3)).expect("nonzero"));
            return vec![r.clone(), r.clone(), r];
        }
        2 => {
            let r = -g[0].clone();
            let s = -c2 - &(&r * &QF13::from_int(2));
            return vec![r.clone(), r, s];
        }
        _ => {}
    }
    // squarefree: look for a root among zero and the diagonal entries
    let mut candidates = vec![QF13::zero()];
    candidates.extend((0..3).map(|i| j[i][i].clone()));
    for r in candidates {
        if upoly_eval(&p, &r).is_zero() {
            let q = deflate(&p, &r);
            if let Some([a, b]) = quadratic_roots_exact(&q[1], &q[0]) {
                return vec![r, a, b];
            }
            return vec![r];
        }
    }
    vec![]
}

fn to_f64_vec(v: &[QF13]) -> [f64; 3] {
    normalize_f64([v[0].to_f64_lossy(), v[1].to_f64_lossy(), v[2].to_f64_lossy()])
}

fn scale_first_one(v: &[QF13]) -> [QF13; 3] {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero vector").clone();
    std::array::from_fn(|i| v[i].checked_div(&lead).expect("nonzero"))
}

fn shifted(j: &[[QF13; 3]; 3], r: &QF13) -> Vec<Vec<QF13>> {
    (0..3)
        .map(|a| (0..3).map(|b| if a == b { &j[a][b] - r } else { j[a][b].clone() }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<QF13>], b: &[Vec<QF13>]) -> Vec<Vec<QF13>> {
    (0..3)
        .map(|r| (0..3).map(|c| (0..3).map(|k| &a[r][k] * &b[k][c]).sum()).collect())
        .collect()
}

/// Eigen-data of an exact Jacobian.
pub fn eigen_exact(j: &[[QF13; 3]; 3]) -> EigenData {
    let jf: [[f64; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| j[r][c].to_f64_lossy()));
    let roots = exact_roots(j);
    let mut numeric = eigen_f64(&jf);
    if roots.is_empty() {
        return numeric;
    }
    let mut eigen: Vec<Eigen> = Vec::new();
    let mut generalized = Vec::new();
    let mut distinct: Vec<(QF13, usize)> = Vec::new();
    for r in &roots {
        match distinct.iter_mut().find(|(v, _)| v == r) {
            Some(e) => e.1 += 1,
            None => distinct.push((r.clone(), 1)),
        }
    }
    for (r, mult) in &distinct {
        let a = shifted(j, r);
        let kernel = nullspace(&a, 3);
        for k in 0..*mult {
            let v = kernel.get(k);
            eigen.push(Eigen {
                re: r.to_f64_lossy(),
                im: 0.0,
                exact: Some(r.clone()),
                vector: v.map(|v| to_f64_vec(v)),
                exact_vector: v.map(|v| scale_first_one(v)),
            });
        }
        if kernel.len() < *mult {
            let mut power = a.clone();
            for _ in 1..*mult {
                power = mat_mul(&power, &a);
            }
            let mut span: Vec<Vec<QF13>> = kernel.clone();
            for v in nullspace(&power, 3) {
                let mut trial = span.clone();
                trial.push(v.clone());
                if crate::exactfield::rank(&trial) > span.len() {
                    generalized.push(scale_first_one(&v));
                    span = trial;
                }
            }
        }
    }
    if roots.len() < 3 {
        // one exact root; the other two from the numerical solver
        let r = roots[0].to_f64_lossy();
        let mut rest: Vec<Eigen> = numeric.eigen.drain(..).collect();
        let idx = rest
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.re - r).abs().total_cmp(&(b.1.re - r).abs()))
            .map(|(i, _)| i)
            .expect("three eigenvalues");
        rest.remove(idx);
        eigen.extend(rest);
    }
    eigen.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let values: Vec<Complex64> = eigen.iter().map(Eigen::value).collect();
    EigenData {
        jacobian: jf,
        classification: classify(&values),
        eigen,
        generalized,
    }
}
