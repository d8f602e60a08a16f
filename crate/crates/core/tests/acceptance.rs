//! Acceptance suite: one test per criterion, tolerances pinned below.

use std::time::{Duration, Instant};

use g2flag::flags::{equivariance_check, flag_data, module_invariance_check};
use g2flag::flow::charts::derive_chart;
use g2flag::flow::field::{alpha_f64, beta_f64, mu_to_xyz, poly_field, xyz_to_mu};
use g2flag::flow::poly::lie_derivative;
use g2flag::flow::{
    chart_equilibria, chart_system, collapse_diagnostics, darboux_search, darboux_verify, finite_equilibria,
    integrate, Chart, DarbouxPair, Frame, Poly, PolyField, Stability,
};
use g2flag::g2core::{compact_basis, g2_bracket, jacobiator, standard_basis, xy_coords};
use g2flag::metrics::{
    apply_metric, equigeodesic_check, go_lambda_alpha2, go_oracle, go_witness, is_equigeodesic_closed_form,
    is_go_closed_form, sample_go_params, sample_tangent_vector, sample_valid_params, MetricParams, TangentVector,
};
use g2flag::ricci::{ricci_besse, ricci_closed, u_bilinear};
use g2flag::sampling::Lcg;
use g2flag::{FlagId, G2Element, KVector, QF13};
use num_traits::{One, Zero};

const CRIT1_MAX_RUNTIME: Duration = Duration::from_secs(10);
const CRIT3_METRICS_PER_THETA: usize = 200;
const CRIT3_RANDOM_VECTORS: usize = 50;
const CRIT3_LAMBDA_SAMPLES: usize = 50;
const CRIT4_VECTORS_PER_THETA: usize = 1000;
const CRIT5_SAMPLES: usize = 100;
const CRIT6_CLOSED_FORM_TOL: f64 = 1e-12;
const CRIT6_Q3_POINT_TOL: f64 = 5e-6;
const CRIT6_Q3_EIGEN_TOL: f64 = 1e-4;
const CRIT6_Q1_EIGEN_TOL: f64 = 1e-10;
const CRIT8_EIGEN_TOL: f64 = 1e-10;
const CRIT9_RUNS: usize = 20;
const CRIT9_TAU_END: f64 = 2000.0;
const CRIT9_REL_TOL: f64 = 1e-9;
const CRIT9_COLLAPSE_RATIO: f64 = 1e-3;
const CRIT9_LIMIT_TOL: f64 = 1e-6;
const CRIT9_MAX_RUNTIME: Duration = Duration::from_secs(60);

fn verdict(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn q(n: i64, d: i64) -> QF13 {
    QF13::frac(n, d)
}

fn inv_alpha() -> QF13 {
    QF13::alpha().inv().unwrap()
}

fn inv_beta() -> QF13 {
    QF13::beta().inv().unwrap()
}

// ---------------------------------------------------------------------------
// criterion 1

/// `X1 = E21 - E12, X2 = E31 - E13, X3 = E32 - E23, Y_i = e_i - eps_i`.
fn xs_ys() -> Vec<G2Element> {
    let x = |i, j| &G2Element::e_mat(i, j) - &G2Element::e_mat(j, i);
    let y = |i| &G2Element::e_vec(i) - &G2Element::eps(i);
    vec![x(1, 0), x(2, 0), x(2, 1), y(0), y(1), y(2)]
}

fn combo(basis: &[G2Element], terms: &[(QF13, usize)]) -> G2Element {
    terms.iter().fold(G2Element::zero(), |acc, (c, i)| &acc + &basis[*i].scale(c))
}

/// Minus the Killing form of `k`, from the adjoint action on `X1..Y3`.
fn neg_killing(u: usize, v: usize) -> QF13 {
    let b = compact_basis();
    let ad = |a: usize| -> Vec<[QF13; 6]> { b.iter().map(|e| xy_coords(&g2_bracket(&b[a], e)).unwrap()).collect() };
    let (au, av) = (ad(u), ad(v));
    // tr(ad u ad v) = sum_{i,j} (ad u)_{ij} (ad v)_{ji}; column i of ad a is ad(a)[i]
    let mut tr = QF13::zero();
    for i in 0..6 {
        for j in 0..6 {
            tr += &au[j][i] * &av[i][j];
        }
    }
    -tr
}

#[test]
fn criterion_01_exact_algebra() {
    let start = Instant::now();
    let mut problems = Vec::new();

    let basis = standard_basis();
    let mut jacobi_failures = 0;
    for a in &basis {
        for b in &basis {
            for c in &basis {
                if !jacobiator(a, b, c).is_zero() {
                    jacobi_failures += 1;
                }
            }
        }
    }
    if jacobi_failures > 0 {
        problems.push(format!("Jacobi fails on {jacobi_failures} of {} triples", basis.len().pow(3)));
    }

    let k = xs_ys();
    let (x1, x2, x3, y1, y2, y3) = (0, 1, 2, 3, 4, 5);
    let one = QF13::one;
    let printed_xy: Vec<(usize, usize, Vec<(QF13, usize)>)> = vec![
        (x1, x2, vec![(one(), x3)]),
        (x2, x3, vec![(one(), x1)]),
        (x3, y3, vec![(-one(), y2)]),
        (x1, x3, vec![(-one(), x2)]),
        (x2, y1, vec![(one(), y3)]),
        (y1, y2, vec![(one(), x1), (q(4, 3), y3)]),
        (x1, y1, vec![(one(), y2)]),
        (x2, y3, vec![(-one(), y1)]),
        (y1, y3, vec![(one(), x2), (q(-4, 3), y2)]),
        (x1, y2, vec![(-one(), y1)]),
        (x3, y2, vec![(one(), y3)]),
        (y2, y3, vec![(one(), x3), (q(4, 3), y1)]),
    ];
    for (i, j, rhs) in &printed_xy {
        if g2_bracket(&k[*i], &k[*j]) != combo(&k, rhs) {
            problems.push(format!("XY relation ({i}, {j}) not reproduced"));
        }
    }

    let wz: Vec<KVector> = (1..=3).map(KVector::w).chain((1..=3).map(KVector::z)).collect();
    let (w1, w2, w3, z1, z2, z3) = (0, 1, 2, 3, 4, 5);
    let h = || q(1, 2);
    let printed_wz: Vec<(usize, usize, QF13, usize)> = vec![
        (w1, w2, h(), w3),
        (w2, w3, h(), w1),
        (w3, z3, -h(), z2),
        (w1, w3, -h(), w2),
        (w2, z1, h(), z3),
        (z1, z2, h(), w1),
        (w1, z1, h(), z2),
        (w2, z3, -h(), z1),
        (z1, z3, h(), w2),
        (w1, z2, -h(), z1),
        (w3, z2, h(), z3),
        (z2, z3, h(), w3),
    ];
    for (i, j, c, r) in &printed_wz {
        if wz[*i].bracket(&wz[*j]) != wz[*r].scale(c) {
            problems.push(format!("WZ relation ({i}, {j}) not reproduced"));
        }
    }

    for (u, v, want) in [(x1, x1, q(4, 1)), (y1, y1, q(68, 9)), (x1, y3, q(8, 3))] {
        let got = neg_killing(u, v);
        if got != want {
            problems.push(format!("Killing ({u}, {v}) = {got}, expected {want}"));
        }
    }

    let elapsed = start.elapsed();
    if elapsed >= CRIT1_MAX_RUNTIME {
        problems.push(format!("runtime {elapsed:?}"));
    }
    verdict(1, problems.is_empty(), &format!("{problems:?} in {elapsed:?}"));
}

// ---------------------------------------------------------------------------
// criterion 2

#[test]
fn criterion_02_flag_decompositions() {
    let mut problems = Vec::new();
    for (theta, dims) in [
        (FlagId::Empty, vec![1, 1, 1, 1, 1, 1]),
        (FlagId::Alpha1, vec![1, 2, 2]),
        (FlagId::Alpha2, vec![1, 2, 2]),
    ] {
        let data = flag_data(theta);
        if data.dims != dims {
            problems.push(format!("{theta}: dims {:?}", data.dims));
        }
        let inv = module_invariance_check(&data);
        if !inv.passed() {
            problems.push(format!("{theta}: invariance {:?}", inv.violations));
        }
        let eq = equivariance_check(&data);
        if !eq.passed() {
            problems.push(format!("{theta}: equivariance {:?}", eq.violations));
        }
    }
    verdict(2, problems.is_empty(), &format!("{problems:?}"));
}

// ---------------------------------------------------------------------------
// criterion 3

#[test]
fn criterion_03_geodesic_orbit_classification() {
    let mut rng = Lcg::new(3);
    let mut problems = Vec::new();
    for theta in FlagId::ALL {
        let (mut go_true, mut go_false) = (0, 0);
        for i in 0..CRIT3_METRICS_PER_THETA {
            let p = if i % 2 == 0 {
                sample_go_params(theta, &mut rng)
            } else {
                sample_valid_params(theta, &mut rng)
            };
            let closed = is_go_closed_form(&p);
            let oracle = go_oracle(&p, CRIT3_RANDOM_VECTORS, &mut rng).unwrap();
            if closed {
                go_true += 1;
            } else {
                go_false += 1;
            }
            if closed != oracle.passed {
                problems.push(format!("{theta}: closed form {closed}, oracle {} on {:?}", oracle.passed, p));
            }
        }
        if go_true == 0 || go_false == 0 {
            problems.push(format!("{theta}: degenerate corpus ({go_true} g.o., {go_false} not)"));
        }
    }

    let k = flag_data(FlagId::Alpha2).isotropy[0].clone();
    for _ in 0..CRIT3_LAMBDA_SAMPLES {
        let p = sample_go_params(FlagId::Alpha2, &mut rng);
        let x = sample_tangent_vector(FlagId::Alpha2, &mut rng);
        let lambda = go_lambda_alpha2(&p, &x).unwrap();
        let (xv, axv) = (x.to_kvector(), apply_metric(&p, &x).unwrap().to_kvector());
        let residual = (&k.scale(&lambda) + &xv).bracket(&axv);
        if !residual.is_zero() {
            problems.push(format!("formula lambda {lambda} is not a witness for {:?}", x.coeffs));
        }
        let solved = go_witness(&p, &x).unwrap().and_then(|w| w.lambda);
        let unique = !k.bracket(&axv).is_zero();
        if unique && solved.as_ref() != Some(&lambda) {
            problems.push(format!("solved lambda {solved:?} differs from formula {lambda}"));
        }
    }
    verdict(3, problems.is_empty(), &format!("{problems:?}"));
}

// ---------------------------------------------------------------------------
// criterion 4

#[test]
fn criterion_04_equigeodesics() {
    let mut rng = Lcg::new(4);
    let mut problems = Vec::new();
    for theta in FlagId::ALL {
        let (mut yes, mut no) = (0, 0);
        for _ in 0..CRIT4_VECTORS_PER_THETA {
            let x = sample_tangent_vector(theta, &mut rng);
            let closed = is_equigeodesic_closed_form(&x);
            if closed {
                yes += 1;
            } else {
                no += 1;
            }
            if closed != equigeodesic_check(&x) {
                problems.push(format!("{theta}: disagreement on {:?}", x.coeffs));
            }
        }
        if yes == 0 || no == 0 {
            problems.push(format!("{theta}: degenerate corpus ({yes} equigeodesic, {no} not)"));
        }
    }
    verdict(4, problems.is_empty(), &format!("{problems:?}"));
}

// ---------------------------------------------------------------------------
// criterion 5

#[test]
fn criterion_05_ricci() {
    let mut rng = Lcg::new(5);
    let mut mismatches = 0;
    let mut u_nonzero = 0;
    let unit = |i: usize| {
        let c = (0..5).map(|j| if i == j { QF13::one() } else { QF13::zero() }).collect();
        TangentVector::new(FlagId::Alpha2, c).unwrap()
    };
    for _ in 0..CRIT5_SAMPLES {
        let mu = [(); 3].map(|_| rng.positive_rational(12, 4));
        let p = MetricParams::alpha2(mu);
        if ricci_besse(&p).unwrap() != ricci_closed(&p).unwrap() {
            mismatches += 1;
        }
        for i in 0..5 {
            for j in 0..5 {
                if !u_bilinear(&p, &unit(i), &unit(j)).unwrap().is_zero() {
                    u_nonzero += 1;
                }
            }
        }
    }
    verdict(
        5,
        mismatches == 0 && u_nonzero == 0,
        &format!(
            "besse != closed on {mismatches}/{CRIT5_SAMPLES} samples; U nonzero on {u_nonzero}/{} basis pairs",
            CRIT5_SAMPLES * 25
        ),
    );
}

// ---------------------------------------------------------------------------
// criterion 6

fn sorted_re(vals: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = vals.into_iter().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn close_all(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn criterion_06_flow_equilibria() {
    let eqs = finite_equilibria(&QF13::one()).unwrap();
    let get = |l: &str| eqs.iter().find(|e| e.label == l).unwrap_or_else(|| panic!("{l} missing"));
    let (a, b) = (alpha_f64(), beta_f64());
    let mut problems = Vec::new();

    let q1 = get("q1");
    let q2 = get("q2");
    if !close_all(&q1.point, &[2.0 / a, 0.0, 0.0], CRIT6_CLOSED_FORM_TOL) {
        problems.push(format!("q1 = {:?}", q1.point));
    }
    if !close_all(&q2.point, &[0.0, 2.0 / b, 0.0], CRIT6_CLOSED_FORM_TOL) {
        problems.push(format!("q2 = {:?}", q2.point));
    }
    let q3 = get("q3");
    if !close_all(&q3.point, &[0.0521831, 0.352931, 0.0], CRIT6_Q3_POINT_TOL) {
        problems.push(format!("q3 = {:?}", q3.point));
    }
    let q3_eig = sorted_re(q3.eigen.eigen.iter().map(|e| e.re));
    if !close_all(&q3_eig, &[-0.0625182, -0.0318209, 0.0306973], CRIT6_Q3_EIGEN_TOL) {
        problems.push(format!("q3 eigenvalues {q3_eig:?}"));
    }
    let q1_eig = sorted_re(q1.eigen.eigen.iter().map(|e| e.re));
    let want = sorted_re([-2.0 / (a * a), -1.0 / (a * a), -1.0 / (a * a)]);
    if !close_all(&q1_eig, &want, CRIT6_Q1_EIGEN_TOL) {
        problems.push(format!("q1 eigenvalues {q1_eig:?} vs {want:?}"));
    }
    verdict(6, problems.is_empty(), &format!("{problems:?}"));
}

// ---------------------------------------------------------------------------
// criteria 7 and 8: printed systems

fn var(i: usize) -> Poly {
    Poly::var(i)
}

fn c(v: QF13) -> Poly {
    Poly::constant(v)
}

fn qp(n: i64, d: i64) -> Poly {
    c(q(n, d))
}

/// The rescaled system as printed.
fn printed_main() -> PolyField {
    let (x, y, z) = (var(0), var(1), var(2));
    [
        &x * &(&(&qp(-1, 2) * &(&x * &x)) + &(&(&c(inv_alpha()) * &x) - &(&qp(1, 4) * &(&y * &y)))),
        &y * &(&(&qp(-1, 4) * &(&x * &x)) + &(&(&c(inv_beta()) * &y) - &(&qp(1, 2) * &(&y * &y)))),
        &(&qp(-1, 4) * &z) * &(&(&x * &x) + &(&y * &y)),
    ]
}

/// The printed table of quadratic Darboux polynomials.
fn printed_table() -> Vec<DarbouxPair> {
    let (x, y, z) = (var(0), var(1), var(2));
    let (xx, yy) = (&x * &x, &y * &y);
    let (ia, ib) = (c(inv_alpha()), c(inv_beta()));
    let two = qp(2, 1);
    let lin = |a: &Poly, b: &Poly, rest: Poly| &(&(a * &xx) + &(b * &yy)) + &rest;
    vec![
        DarbouxPair::new(&z * &z, lin(&qp(-1, 2), &qp(-1, 2), Poly::zero())),
        DarbouxPair::new(xx.clone(), lin(&qp(-1, 1), &qp(-1, 2), &(&two * &x) * &ia)),
        DarbouxPair::new(yy.clone(), lin(&qp(-1, 2), &qp(-1, 1), &(&two * &y) * &ib)),
        DarbouxPair::new(&x * &y, lin(&qp(-3, 4), &qp(-3, 4), &(&x * &ia) + &(&y * &ib))),
        DarbouxPair::new(&x * &z, lin(&qp(-3, 4), &qp(-1, 2), &x * &ia)),
        DarbouxPair::new(&y * &z, lin(&qp(-1, 2), &qp(-3, 4), &y * &ib)),
    ]
}

/// Cofactors of the coordinate planes, read off the printed system.
fn coordinate_planes() -> Vec<DarbouxPair> {
    let (x, y, z) = (var(0), var(1), var(2));
    let m = printed_main();
    vec![
        DarbouxPair::new(x.clone(), m[0].div_exact(&x).unwrap()),
        DarbouxPair::new(y.clone(), m[1].div_exact(&y).unwrap()),
        DarbouxPair::new(z.clone(), m[2].div_exact(&z).unwrap()),
    ]
}

#[test]
fn criterion_07_darboux() {
    let mut problems = Vec::new();
    let main = printed_main();
    if *poly_field() != main {
        problems.push("polynomial field differs from the printed system".to_string());
    }
    let mut expected = printed_table();
    expected.extend(coordinate_planes());
    for p in &expected {
        if lie_derivative(&p.f, &main) != &p.k * &p.f {
            problems.push(format!("printed pair fails the identity: {p}"));
        }
    }
    let search = darboux_search(2).unwrap();
    if search.pairs.len() != expected.len() || !expected.iter().all(|p| search.pairs.contains(p)) {
        problems.push(format!("search returned {:?}", search.pairs.iter().map(ToString::to_string).collect::<Vec<_>>()));
    }
    if !search.pairs.iter().all(darboux_verify) {
        problems.push("a returned pair fails verification".into());
    }
    if !search.complete {
        problems.push("search not complete".into());
    }
    verdict(7, problems.is_empty(), &format!("{problems:?}"));
}

fn printed_chart(chart: Chart) -> PolyField {
    let (z1, z2, z3) = (var(0), var(1), var(2));
    let (ia, ib) = (c(inv_alpha()), c(inv_beta()));
    match chart {
        Chart::Kappa1 => {
            let (x1, r1) = (var(0), var(1));
            let one = qp(1, 1);
            [
                &x1 * &(&(&(&(&r1 * &qp(1, 4)) * &(&one - &(&x1 * &x1))) - &ib) + &(&x1 * &ia)),
                -(&r1 * &(&(&(&qp(1, 4) * &(&qp(2, 1) + &(&x1 * &x1))) * &r1) - &ib)),
                &(&(&r1 * &z3) * &qp(-1, 4)) * &(&one + &(&x1 * &x1)),
            ]
        }
        Chart::U1 | Chart::U2 => {
            let (a, b) = if chart == Chart::U1 { (ia, ib) } else { (ib, ia) };
            let quarter = qp(1, 4);
            [
                &z1 * &(&(&(&quarter * &(&qp(1, 1) - &(&z1 * &z1))) - &(&z3 * &a)) + &(&(&z1 * &z3) * &b)),
                &z2 * &(&quarter - &(&z3 * &a)),
                &(&z3 * &quarter) * &(&(&qp(2, 1) + &(&z1 * &z1)) - &(&(&qp(4, 1) * &z3) * &a)),
            ]
        }
        Chart::U3 => [
            &(&z1 * &z1) * &(&(&z1 * &qp(-1, 4)) + &(&z3 * &ia)),
            -(&(&z2 * &z2) * &(&(&z2 * &qp(1, 4)) - &(&z3 * &ib))),
            &(&z3 * &qp(1, 4)) * &(&(&z1 * &z1) + &(&z2 * &z2)),
        ],
    }
}

fn eig_multiset(e: &g2flag::flow::Equilibrium) -> Vec<f64> {
    sorted_re(e.eigen.eigen.iter().map(|v| v.re))
}

#[test]
fn criterion_08_charts() {
    let mut problems = Vec::new();
    for chart in Chart::ALL {
        let derived = derive_chart(chart, poly_field());
        if derived != printed_chart(chart) || *chart_system(chart) != derived {
            problems.push(format!("{chart}: derived system differs from the printed one"));
        }
    }
    let ib = 1.0 / beta_f64();
    let z_star = QF13::one();
    let kappa = chart_equilibria(Chart::Kappa1, &z_star).unwrap();
    for (label, want) in [("p+", [0.0, ib, ib]), ("p-", [-ib, 0.0, ib])] {
        match kappa.iter().find(|e| e.label == label) {
            Some(e) if close_all(&eig_multiset(e), &want, CRIT8_EIGEN_TOL) => {}
            other => problems.push(format!("kappa1 {label}: {:?}", other.map(eig_multiset))),
        }
    }
    for chart in [Chart::U1, Chart::U2] {
        let eqs = chart_equilibria(chart, &z_star).unwrap();
        if eqs.len() != 3 {
            problems.push(format!("{chart}: {} equilibria on the sphere at infinity", eqs.len()));
        }
        for e in &eqs {
            let want = if e.label == "origin" { [0.25, 0.25, 0.5] } else { [-0.5, 0.25, 0.75] };
            if !close_all(&eig_multiset(e), &want, CRIT8_EIGEN_TOL) {
                problems.push(format!("{chart} {}: {:?}", e.label, eig_multiset(e)));
            }
        }
        let origin_source = eqs.iter().any(|e| e.label == "origin" && e.eigen.classification == Stability::Source);
        let saddles = eqs.iter().filter(|e| e.eigen.classification == Stability::Saddle).count();
        if !origin_source || saddles != 2 {
            problems.push(format!("{chart}: wrong stability types"));
        }
    }
    let u3 = chart_equilibria(Chart::U3, &z_star).unwrap();
    if u3.len() != 1 || u3[0].eigen.jacobian.iter().flatten().any(|v| *v != 0.0) {
        problems.push("U3: expected a single equilibrium with zero linear part".into());
    }
    verdict(8, problems.is_empty(), &format!("{problems:?}"));
}

// ---------------------------------------------------------------------------
// criterion 9

#[test]
fn criterion_09_collapse() {
    let start = Instant::now();
    let mut rng = Lcg::new(9);
    let mut problems = Vec::new();
    let mut basins = [0usize; 3];
    for run in 0..CRIT9_RUNS {
        let mu = [(); 3].map(|_| rng.f64_in(0.1, 10.0));
        let init = mu_to_xyz(&mu).unwrap();
        let traj = integrate(Frame::Xyz, init, CRIT9_TAU_END, CRIT9_REL_TOL).unwrap();
        let zs: Vec<f64> = traj.states.iter().map(|s| s[2]).collect();
        if !zs.windows(2).all(|w| w[1] < w[0]) {
            problems.push(format!("run {run}: z not strictly decreasing"));
        }
        let report = collapse_diagnostics(&traj).unwrap();
        let near_attractor = matches!(report.nearest.as_str(), "q1" | "q2") && report.nearest_distance < CRIT9_LIMIT_TOL;
        let near_saddle = report.nearest == "q3";
        if !(near_attractor || near_saddle) {
            problems.push(format!("run {run}: ends at {:?}", report.terminal_xyz));
        }
        let final_mu = xyz_to_mu(&traj.last().1).unwrap_or(report.terminal_mu);
        let fell = |i: usize| final_mu[i] < CRIT9_COLLAPSE_RATIO * mu[i];
        match report.nearest.as_str() {
            "q1" => {
                basins[0] += 1;
                if !(fell(0) && fell(1)) {
                    problems.push(format!("run {run}: q1 basin but mu = {final_mu:?} from {mu:?}"));
                }
            }
            "q2" => {
                basins[1] += 1;
                if !(fell(0) && fell(2)) {
                    problems.push(format!("run {run}: q2 basin but mu = {final_mu:?} from {mu:?}"));
                }
            }
            _ => basins[2] += 1,
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= CRIT9_MAX_RUNTIME {
        problems.push(format!("runtime {elapsed:?}"));
    }
    verdict(9, problems.is_empty(), &format!("{problems:?}; basins q1/q2/q3 = {basins:?} in {elapsed:?}"));
}

// ---------------------------------------------------------------------------
// criterion 10

/// Stand-in for the phase portraits: invariant coordinate planes, the
/// attractor/saddle structure of the finite equilibria and monotone `z`.
#[test]
fn criterion_10_phase_portrait_substitute() {
    let mut problems = Vec::new();
    for p in coordinate_planes() {
        if !darboux_verify(&p) {
            problems.push(format!("plane {} is not invariant", p.f));
        }
    }
    let eqs = finite_equilibria(&QF13::one()).unwrap();
    for (label, want) in [
        ("q1", Stability::Attractor),
        ("q2", Stability::Attractor),
        ("q3", Stability::Saddle),
        ("q4", Stability::Nonhyperbolic),
    ] {
        match eqs.iter().find(|e| e.label == label) {
            Some(e) if e.eigen.classification == want => {}
            other => problems.push(format!("{label}: {:?}", other.map(|e| e.eigen.classification))),
        }
    }
    // dz/dtau = -z (x^2 + y^2) / 4 <= 0 on the closed octant
    let mut rng = Lcg::new(10);
    for _ in 0..1000 {
        let s = [(); 3].map(|_| rng.f64_in(0.0, 5.0));
        if poly_field()[2].eval_f64(&s) > 0.0 {
            problems.push(format!("z increases at {s:?}"));
        }
    }
    verdict(10, problems.is_empty(), &format!("{problems:?}"));
}
