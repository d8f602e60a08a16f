//! Invariant metrics on the three flag manifolds, geodesic-orbit metrics and
//! equigeodesic vectors.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{G2Error, Result};
use crate::exactfield::{Matrix, QF13};
use crate::flags::{flag_data, FlagData};
use crate::g2core::{FlagId, KVector};
use crate::sampling::Lcg;

/// Parameters of an invariant metric. `diag` holds the `mu` values
/// (six for the full flag, three otherwise) and `offdiag` the coupling
/// parameters between equivalent modules (three, one, or none).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricParams {
    pub theta: FlagId,
    pub diag: Vec<QF13>,
    pub offdiag: Vec<QF13>,
}

fn expected_lengths(theta: FlagId) -> (usize, usize) {
    match theta {
        FlagId::Empty => (6, 3),
        FlagId::Alpha1 => (3, 1),
        FlagId::Alpha2 => (3, 0),
    }
}

impl MetricParams {
    /// Unvalidated parameters; see [`metric_is_valid`].
    pub fn new(theta: FlagId, diag: Vec<QF13>, offdiag: Vec<QF13>) -> Self {
        MetricParams { theta, diag, offdiag }
    }

    /// Parameters that are checked against the positivity bounds.
    pub fn validated(theta: FlagId, diag: Vec<QF13>, offdiag: Vec<QF13>) -> Result<Self> {
        let p = MetricParams::new(theta, diag, offdiag);
        let rep = metric_is_valid(&p);
        if rep.valid {
            Ok(p)
        } else {
            Err(G2Error::InvalidMetric(rep.violations.join("; ")))
        }
    }

    /// Metric on the flag of `alpha2` with parameters `(mu1, mu2, mu3)`.
    pub fn alpha2(mu: [QF13; 3]) -> Self {
        MetricParams::new(FlagId::Alpha2, mu.to_vec(), vec![])
    }

    /// `c * A`.
    pub fn scaled(&self, c: &QF13) -> Self {
        MetricParams {
            theta: self.theta,
            diag: self.diag.iter().map(|x| x * c).collect(),
            offdiag: self.offdiag.iter().map(|x| x * c).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<String>,
    /// Eigenvalues of `[A]` (numerical evaluation of the closed forms).
    pub eigenvalues: Vec<f64>,
}

fn block_eigenvalues(m1: &QF13, m2: &QF13, a: &QF13) -> [f64; 2] {
    let (x, y, a) = (m1.to_f64_lossy(), m2.to_f64_lossy(), a.to_f64_lossy());
    let r = ((x - y).powi(2) + 4.0 * a * a).sqrt();
    [(x + y - r) / 2.0, (x + y + r) / 2.0]
}

/// Exact check of the positivity conditions of an invariant metric.
pub fn metric_is_valid(p: &MetricParams) -> ValidityReport {
    let mut violations = Vec::new();
    let (nd, no) = expected_lengths(p.theta);
    if p.diag.len() != nd || p.offdiag.len() != no {
        violations.push(format!(
            "expected {nd} diagonal and {no} off-diagonal parameters, got {} and {}",
            p.diag.len(),
            p.offdiag.len()
        ));
        return ValidityReport {
            valid: false,
            violations,
            eigenvalues: vec![],
        };
    }
    for (i, m) in p.diag.iter().enumerate() {
        if !m.is_positive() {
            violations.push(format!("mu{} = {} must be positive", i + 1, m));
        }
    }
    let mut eigenvalues = Vec::new();
    match p.theta {
        FlagId::Empty => {
            for k in 0..3 {
                let (m1, m2, a) = (&p.diag[2 * k], &p.diag[2 * k + 1], &p.offdiag[k]);
                if (m1 * m2 - a * a).sign() <= 0 {
                    violations.push(format!(
                        "a{}^2 < mu{} mu{} fails",
                        k + 1,
                        2 * k + 1,
                        2 * k + 2
                    ));
                }
                eigenvalues.extend(block_eigenvalues(m1, m2, a));
            }
        }
        FlagId::Alpha1 => {
            let (m1, m2, m3, a) = (&p.diag[0], &p.diag[1], &p.diag[2], &p.offdiag[0]);
            if (m2 * m3 - a * a).sign() <= 0 {
                violations.push("a^2 < mu2 mu3 fails".into());
            }
            eigenvalues.push(m1.to_f64_lossy());
            let e = block_eigenvalues(m2, m3, a);
            eigenvalues.extend([e[0], e[0], e[1], e[1]]);
        }
        FlagId::Alpha2 => {
            let d: Vec<f64> = p.diag.iter().map(QF13::to_f64_lossy).collect();
            eigenvalues.extend([d[0], d[1], d[1], d[2], d[2]]);
        }
    }
    ValidityReport {
        valid: violations.is_empty(),
        violations,
        eigenvalues,
    }
}

/// `[A]` in the ordered basis of the tangent space.
pub fn metric_matrix(p: &MetricParams) -> Result<Matrix> {
    let rep = metric_is_valid(p);
    if !rep.valid {
        return Err(G2Error::InvalidMetric(rep.violations.join("; ")));
    }
    let n = match p.theta {
        FlagId::Empty => 6,
        _ => 5,
    };
    let mut m: Matrix = vec![vec![QF13::zero(); n]; n];
    match p.theta {
        FlagId::Empty => {
            for k in 0..3 {
                m[2 * k][2 * k] = p.diag[2 * k].clone();
                m[2 * k + 1][2 * k + 1] = p.diag[2 * k + 1].clone();
                m[2 * k][2 * k + 1] = p.offdiag[k].clone();
                m[2 * k + 1][2 * k] = p.offdiag[k].clone();
            }
        }
        FlagId::Alpha1 => {
            m[0][0] = p.diag[0].clone();
            for i in 1..3 {
                m[i][i] = p.diag[1].clone();
                m[i + 2][i + 2] = p.diag[2].clone();
                m[i][i + 2] = p.offdiag[0].clone();
                m[i + 2][i] = p.offdiag[0].clone();
            }
        }
        FlagId::Alpha2 => {
            let d = [0, 1, 1, 2, 2];
            for (i, &k) in d.iter().enumerate() {
                m[i][i] = p.diag[k].clone();
            }
        }
    }
    Ok(m)
}

/// A tangent vector at the origin, in coordinates of the ordered basis of
/// `m` (unnormalized generators for the flag of `alpha2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentVector {
    pub theta: FlagId,
    pub coeffs: Vec<QF13>,
}

impl TangentVector {
    pub fn new(theta: FlagId, coeffs: Vec<QF13>) -> Result<Self> {
        let n = flag_data(theta).dim_m();
        if coeffs.len() != n {
            return Err(G2Error::domain(format!(
                "tangent vectors of {theta} have {n} coordinates, got {}",
                coeffs.len()
            )));
        }
        Ok(TangentVector { theta, coeffs })
    }

    pub fn from_kvector(theta: FlagId, v: &KVector) -> Result<Self> {
        let coeffs = flag_data(theta).coords_in_basis(v)?;
        Ok(TangentVector { theta, coeffs })
    }

    pub fn to_kvector(&self) -> KVector {
        flag_data(self.theta).vector_from_coords(&self.coeffs)
    }

    pub fn scale(&self, c: &QF13) -> Self {
        TangentVector {
            theta: self.theta,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// `A X` as a tangent vector. Off-diagonal entries only couple generators of
/// equal norm, so the matrix acts directly on the (possibly unnormalized)
/// coordinates.
pub fn apply_metric(p: &MetricParams, x: &TangentVector) -> Result<TangentVector> {
    if p.theta != x.theta {
        return Err(G2Error::domain("metric and vector live on different flags"));
    }
    let m = metric_matrix(p)?;
    let coeffs = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(&x.coeffs)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    Ok(TangentVector {
        theta: x.theta,
        coeffs,
    })
}

/// Closed-form geodesic-orbit test.
///
/// * full flag: all `mu` equal and off-diagonal pattern `(a, -a, a)`;
/// * `alpha1`: `mu2 = mu3 = mu` and `a^2 = mu (mu - mu1)`;
/// * `alpha2`: `mu1 ((2 + sqrt13)^2 mu2 + (2 - sqrt13)^2 mu3) = 34 mu2 mu3`.
///
/// For `alpha1` the boundary case `a = 0, mu1 = mu` (the normal metric) is
/// included: it is geodesic orbit since `[X, mu X] = 0`.
pub fn is_go_closed_form(p: &MetricParams) -> bool {
    let d = &p.diag;
    let o = &p.offdiag;
    match p.theta {
        FlagId::Empty => {
            d.iter().all(|m| *m == d[0]) && o[1] == -&o[0] && o[2] == o[0]
        }
        FlagId::Alpha1 => d[1] == d[2] && &o[0] * &o[0] == &d[1] * &(&d[1] - &d[0]),
        FlagId::Alpha2 => {
            let b2 = QF13::beta().square();
            let a2 = QF13::alpha().square();
            &d[0] * &(&b2 * &d[1] + &a2 * &d[2]) == QF13::from_int(34) * &d[1] * &d[2]
        }
    }
}

/// A solution `Z = lambda k` (with `k` the isotropy generator) of
/// `[Z + X, A X] = 0` in `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoWitness {
    pub z: KVector,
    pub lambda: Option<QF13>,
}

/// Solves `[Z + X, A X] = 0` for `Z` in the isotropy algebra; `None` when the
/// linear system is inconsistent.
pub fn go_witness(p: &MetricParams, x: &TangentVector) -> Result<Option<GoWitness>> {
    let data = flag_data(p.theta);
    let xv = x.to_kvector();
    let axv = apply_metric(p, x)?.to_kvector();
    let r0 = xv.bracket(&axv);
    match data.isotropy.first() {
        None => Ok(r0.is_zero().then(|| GoWitness {
            z: KVector::zero(),
            lambda: None,
        })),
        Some(k) => {
            let r1 = k.bracket(&axv);
            let lambda = match r1.coords.iter().position(|c| !c.is_zero()) {
                None => QF13::zero(),
                Some(i) => -(r0.coords[i].checked_div(&r1.coords[i])?),
            };
            let residual = &r0 + &r1.scale(&lambda);
            Ok(residual.is_zero().then(|| GoWitness {
                z: k.scale(&lambda),
                lambda: Some(lambda),
            }))
        }
    }
}

/// `lambda = 9 x1 (mu2 - mu3) / ((2 + sqrt13)^2 mu2 + (2 - sqrt13)^2 mu3)`,
/// the witness coefficient for geodesic-orbit metrics on the flag of `alpha2`.
pub fn go_lambda_alpha2(p: &MetricParams, x: &TangentVector) -> Result<QF13> {
    if p.theta != FlagId::Alpha2 || x.theta != FlagId::Alpha2 {
        return Err(G2Error::domain("the witness formula applies to the alpha2 flag only"));
    }
    let (m2, m3) = (&p.diag[1], &p.diag[2]);
    let den = QF13::beta().square() * m2 + QF13::alpha().square() * m3;
    (QF13::from_int(9) * &x.coeffs[0] * (m2 - m3)).checked_div(&den)
}

/// Closed-form equigeodesic test.
pub fn is_equigeodesic_closed_form(x: &TangentVector) -> bool {
    let c = &x.coeffs;
    let nz = |i: usize| !c[i].is_zero();
    match x.theta {
        FlagId::Empty => {
            let support: Vec<usize> = (0..6).filter(|&i| nz(i)).collect();
            support.iter().all(|&i| i / 2 == support.first().map_or(0, |s| s / 2))
        }
        FlagId::Alpha1 => {
            // basis (Z3, W2, W3, Z2, -Z1)
            let (z3, w2, w3, z2) = (&c[0], &c[1], &c[2], &c[3]);
            let z1 = -&c[4];
            let on_z3_line = (1..5).all(|i| !nz(i));
            let planar = z3.is_zero() && (w2 * &z1 + w3 * z2).is_zero();
            on_z3_line || planar
        }
        FlagId::Alpha2 => c[0].is_zero() || (1..5).all(|i| !nz(i)),
    }
}

/// Bracket equations `[X, T_i^j(X_i) + T_j^i(X_j)]_m = 0` over all module
/// pairs; the diagonal `i = j` gives `2 [X, X_i]_m`.
pub fn equigeodesic_check(x: &TangentVector) -> bool {
    let data = flag_data(x.theta);
    equigeodesic_residuals(&data, x).iter().all(KVector::is_zero)
}

fn equigeodesic_residuals(data: &FlagData, x: &TangentVector) -> Vec<KVector> {
    let xv = data.vector_from_coords(&x.coeffs);
    let n = data.modules.len();
    let comps: Vec<KVector> = (0..n).map(|i| data.module_component(i, &xv)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let tij = data.apply_t(i, j, &comps[i]);
            let tji = data.apply_t(j, i, &comps[j]);
            let arg = &tij + &tji;
            if arg.is_zero() {
                continue;
            }
            out.push(data.project_to_m(&xv.bracket(&arg)));
        }
    }
    out
}

/// Random metric satisfying the positivity bounds.
pub fn sample_valid_params(theta: FlagId, rng: &mut Lcg) -> MetricParams {
    let mu = |rng: &mut Lcg| rng.positive_rational(12, 4);
    let frac_in_unit = |rng: &mut Lcg| {
        let d = rng.int_in(2, 9);
        QF13::frac(rng.int_in(-(d - 1), d - 1), d)
    };
    match theta {
        FlagId::Empty => {
            let diag: Vec<QF13> = (0..6).map(|_| mu(rng)).collect();
            let offdiag = (0..3)
                .map(|k| {
                    let m = std::cmp::min(diag[2 * k].clone(), diag[2 * k + 1].clone());
                    frac_in_unit(rng) * m
                })
                .collect();
            MetricParams::new(theta, diag, offdiag)
        }
        FlagId::Alpha1 => {
            let diag: Vec<QF13> = (0..3).map(|_| mu(rng)).collect();
            let m = std::cmp::min(diag[1].clone(), diag[2].clone());
            let a = frac_in_unit(rng) * m;
            MetricParams::new(theta, diag, vec![a])
        }
        FlagId::Alpha2 => MetricParams::new(theta, (0..3).map(|_| mu(rng)).collect(), vec![]),
    }
}

/// Random member of the geodesic-orbit family.
pub fn sample_go_params(theta: FlagId, rng: &mut Lcg) -> MetricParams {
    let mu = rng.positive_rational(12, 4);
    let d = rng.int_in(2, 9);
    let t = QF13::frac(rng.int_in(-(d - 1), d - 1), d);
    match theta {
        FlagId::Empty => {
            let a = &t * &mu;
            MetricParams::new(theta, vec![mu; 6], vec![a.clone(), -&a, a])
        }
        FlagId::Alpha1 => {
            let a = &t * &mu;
            let mu1 = &mu - &(&a * &a).checked_div(&mu).expect("mu > 0");
            MetricParams::new(theta, vec![mu1, mu.clone(), mu], vec![a])
        }
        FlagId::Alpha2 => {
            let mu2 = mu;
            let mu3 = rng.positive_rational(12, 4);
            let den = QF13::beta().square() * &mu2 + QF13::alpha().square() * &mu3;
            let mu1 = (QF13::from_int(34) * &mu2 * &mu3).checked_div(&den).expect("positive");
            MetricParams::new(theta, vec![mu1, mu2, mu3], vec![])
        }
    }
}

/// Random tangent vector with small rational coordinates, some of them zero.
pub fn sample_tangent_vector(theta: FlagId, rng: &mut Lcg) -> TangentVector {
    let n = flag_data(theta).dim_m();
    let mut coeffs: Vec<QF13> = (0..n).map(|_| rng.sparse_rational(6, 3, 1, 3)).collect();
    // Bias towards the special families so both verdicts occur.
    match rng.int_in(0, 5) {
        0 => {
            // confine to a random module pair / the planar families
            let keep = rng.int_in(0, n as i64 - 1) as usize;
            for (i, c) in coeffs.iter_mut().enumerate() {
                if theta == FlagId::Empty && i / 2 != keep / 2 {
                    *c = QF13::zero();
                }
                if theta != FlagId::Empty && (i == 0) != (keep == 0) {
                    *c = QF13::zero();
                }
            }
        }
        1 if theta == FlagId::Alpha1 => {
            // z3 = 0 and w2 z1 + w3 z2 = 0 with z1 = -c4
            coeffs[0] = QF13::zero();
            if !coeffs[3].is_zero() {
                // w3 = -w2 z1 / z2 = w2 c4 / z2
                coeffs[2] = (&coeffs[1] * &coeffs[4]).checked_div(&coeffs[3]).expect("nonzero");
            } else if !coeffs[1].is_zero() {
                coeffs[4] = QF13::zero();
            }
        }
        _ => {}
    }
    if coeffs.iter().all(Zero::is_zero) {
        coeffs[0] = QF13::one();
    }
    TangentVector { theta, coeffs }
}

/// Outcome of [`go_oracle`].
#[derive(Clone, Debug, Serialize)]
pub struct GoOracleReport {
    /// No sampled vector lacks a witness.
    pub passed: bool,
    pub tested: usize,
    /// First sampled vector without a witness.
    pub counterexample: Option<TangentVector>,
}

/// Geodesic-orbit test by direct search for witnesses: every basis vector,
/// every sum of two basis vectors and `random` further vectors drawn from
/// `rng`. A failure is a proof that the metric is not geodesic orbit.
pub fn go_oracle(p: &MetricParams, random: usize, rng: &mut Lcg) -> Result<GoOracleReport> {
    let n = flag_data(p.theta).dim_m();
    let unit = |i: usize| (0..n).map(|j| if i == j { QF13::one() } else { QF13::zero() }).collect::<Vec<_>>();
    let mut samples: Vec<Vec<QF13>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            samples.push(unit(i).into_iter().zip(unit(j)).map(|(a, b)| a + b).collect());
        }
    }
    samples.extend((0..random).map(|_| sample_tangent_vector(p.theta, rng).coeffs));
    let tested = samples.len();
    for c in samples {
        let x = TangentVector::new(p.theta, c)?;
        if go_witness(p, &x)?.is_none() {
            return Ok(GoOracleReport {
                passed: false,
                tested,
                counterexample: Some(x),
            });
        }
    }
    Ok(GoOracleReport {
        passed: true,
        tested,
        counterexample: None,
    })
}
