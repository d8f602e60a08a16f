//! The exact self-check suite: algebra identities, flag structure, Darboux
//! table and chart derivations. Every check is an exact computation.

use num_traits::Zero;
use serde::Serialize;

use crate::exactfield::{in_span, QF13};
use crate::flags::{derived_isotropy, equivariance_check, flag_data, module_invariance_check};
use crate::flow::charts::{derive_chart, Chart};
use crate::flow::darboux::{darboux_search, darboux_verify, DarbouxPair};
use crate::flow::field::poly_field;
use crate::flow::poly::{Monomial, Poly, PolyField};
use crate::g2core::{
    compact_basis, g2_bracket, jacobiator, killing_form, standard_basis, xy_coords, Coords6, FlagId, KVector,
};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of elementary identities tested.
    pub checks: usize,
    pub failures: usize,
    /// The first few failures.
    pub detail: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            checks: 0,
            failures: 0,
            detail: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.detail.len() < 20 {
                self.detail.push(what());
            }
        }
    }
}

fn q(n: i64, d: i64) -> QF13 {
    QF13::frac(n, d)
}

/// `[a, [b, c]] + cyclic = 0` on all ordered triples of the standard basis.
pub fn check_jacobi() -> CheckResult {
    let mut r = CheckResult::new("jacobi");
    let basis = standard_basis();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            for (k, c) in basis.iter().enumerate() {
                r.record(jacobiator(a, b, c).is_zero(), || format!("Jacobi fails on ({i}, {j}, {k})"));
            }
        }
    }
    r
}

/// Jacobi identity inside `k`, on all ordered triples of `W1..Z3`.
pub fn check_jacobi_k() -> CheckResult {
    let mut r = CheckResult::new("jacobi-k");
    let ws: Vec<KVector> = (1..=3).map(KVector::w).chain((1..=3).map(KVector::z)).collect();
    for (i, a) in ws.iter().enumerate() {
        for (j, b) in ws.iter().enumerate() {
            for (k, c) in ws.iter().enumerate() {
                let s = &(&a.bracket(&b.bracket(c)) + &b.bracket(&c.bracket(a))) + &c.bracket(&a.bracket(b));
                r.record(s.is_zero(), || format!("Jacobi fails in k on ({i}, {j}, {k})"));
            }
        }
    }
    r
}

/// `(i, j, [(coefficient, index)])` with indices `0..3` for `X1..X3` (or
/// `W1..W3`) and `3..6` for `Y1..Y3` (or `Z1..Z3`).
type Relation = (usize, usize, &'static [(i64, i64, usize)]);

const XY_RELATIONS: [Relation; 12] = [
    (0, 1, &[(1, 1, 2)]),
    (0, 2, &[(-1, 1, 1)]),
    (0, 3, &[(1, 1, 4)]),
    (0, 4, &[(-1, 1, 3)]),
    (1, 2, &[(1, 1, 0)]),
    (1, 3, &[(1, 1, 5)]),
    (1, 5, &[(-1, 1, 3)]),
    (2, 4, &[(1, 1, 5)]),
    (2, 5, &[(-1, 1, 4)]),
    (3, 4, &[(1, 1, 0), (4, 3, 5)]),
    (3, 5, &[(1, 1, 1), (-4, 3, 4)]),
    (4, 5, &[(1, 1, 2), (4, 3, 3)]),
];

const WZ_RELATIONS: [Relation; 12] = [
    (0, 1, &[(1, 2, 2)]),
    (0, 2, &[(-1, 2, 1)]),
    (0, 3, &[(1, 2, 4)]),
    (0, 4, &[(-1, 2, 3)]),
    (1, 2, &[(1, 2, 0)]),
    (1, 3, &[(1, 2, 5)]),
    (1, 5, &[(-1, 2, 3)]),
    (2, 4, &[(1, 2, 5)]),
    (2, 5, &[(-1, 2, 4)]),
    (3, 4, &[(1, 2, 0)]),
    (3, 5, &[(1, 2, 1)]),
    (4, 5, &[(1, 2, 2)]),
];

fn relation_rhs(terms: &[(i64, i64, usize)]) -> Coords6 {
    let mut c: Coords6 = std::array::from_fn(|_| QF13::zero());
    for &(n, d, i) in terms {
        c[i] = q(n, d);
    }
    c
}

/// The bracket table of `k` in the basis `X1, X2, X3, Y1, Y2, Y3`, computed
/// with the bracket of `g2`; pairs absent from the table bracket to zero.
pub fn check_xy_brackets() -> CheckResult {
    let mut r = CheckResult::new("brackets-xy");
    let basis = compact_basis();
    let names = ["X1", "X2", "X3", "Y1", "Y2", "Y3"];
    for i in 0..6 {
        for j in i + 1..6 {
            let got = xy_coords(&g2_bracket(&basis[i], &basis[j]));
            let want = XY_RELATIONS
                .iter()
                .find(|rel| rel.0 == i && rel.1 == j)
                .map(|rel| relation_rhs(rel.2))
                .unwrap_or_else(|| std::array::from_fn(|_| QF13::zero()));
            r.record(got.as_ref().map_or(false, |g| *g == want), || {
                format!("[{}, {}] = {:?}", names[i], names[j], got)
            });
        }
    }
    r
}

/// The bracket table of `k` in the orthonormal basis `W1, W2, W3, Z1, Z2, Z3`.
pub fn check_wz_brackets() -> CheckResult {
    let mut r = CheckResult::new("brackets-wz");
    let names = ["W1", "W2", "W3", "Z1", "Z2", "Z3"];
    let e = |i: usize| if i < 3 { KVector::w(i + 1) } else { KVector::z(i - 2) };
    for i in 0..6 {
        for j in i + 1..6 {
            let got = e(i).bracket(&e(j));
            let want = WZ_RELATIONS
                .iter()
                .find(|rel| rel.0 == i && rel.1 == j)
                .map(|rel| relation_rhs(rel.2))
                .unwrap_or_else(|| std::array::from_fn(|_| QF13::zero()));
            r.record(got.coords == want, || format!("[{}, {}] = {:?}", names[i], names[j], got.coords));
        }
    }
    r
}

/// Sample values of `(,) = -B_k`, orthonormality of `W, Z` and
/// ad-invariance on all basis triples.
pub fn check_killing() -> CheckResult {
    let mut r = CheckResult::new("killing");
    let e = |i: usize| -> Coords6 { std::array::from_fn(|j| if i == j { QF13::from_int(1) } else { QF13::zero() }) };
    for (a, b, want) in [(0, 0, q(4, 1)), (3, 3, q(68, 9)), (0, 5, q(8, 3))] {
        let got = killing_form(&e(a), &e(b));
        r.record(got == want, || format!("(e{a}, e{b}) = {got}, expected {want}"));
    }
    let ws: Vec<KVector> = (1..=3).map(KVector::w).chain((1..=3).map(KVector::z)).collect();
    for (i, u) in ws.iter().enumerate() {
        for (j, v) in ws.iter().enumerate() {
            let want = if i == j { q(1, 1) } else { QF13::zero() };
            let got = killing_form(&u.to_xy(), &v.to_xy());
            r.record(got == want, || format!("W/Z Gram entry ({i}, {j}) = {got}"));
        }
    }
    for u in &ws {
        for v in &ws {
            for w in &ws {
                let s = &u.bracket(v).inner(w) + &v.inner(&u.bracket(w));
                r.record(s.is_zero(), || "ad-invariance fails".into());
            }
        }
    }
    r
}

/// Module invariance, equivariance of the module identifications and the
/// isotropy algebra recomputed from the parabolic subalgebra, for each flag.
pub fn check_flags() -> CheckResult {
    let mut r = CheckResult::new("flags");
    for theta in FlagId::ALL {
        let data = flag_data(theta);
        for rep in [module_invariance_check(&data), equivariance_check(&data)] {
            r.checks += rep.checks;
            if !rep.passed() {
                r.passed = false;
                r.failures += rep.violations.len();
                r.detail.extend(rep.violations.iter().map(|v| format!("{}: {v}", theta.name())));
            }
        }
        let derived: Vec<Vec<QF13>> = derived_isotropy(theta).iter().map(|k| k.coords.to_vec()).collect();
        let listed: Vec<Vec<QF13>> = data.isotropy.iter().map(|k| k.coords.to_vec()).collect();
        let same = derived.len() == listed.len() && listed.iter().all(|v| in_span(&derived, v));
        r.record(same, || format!("{}: isotropy algebra mismatch", theta.name()));
    }
    r
}

fn poly(terms: &[(Monomial, QF13)]) -> Poly {
    Poly::from_terms(terms.iter().cloned())
}

fn inv_alpha() -> QF13 {
    QF13::alpha().inv().expect("alpha != 0")
}

fn inv_beta() -> QF13 {
    QF13::beta().inv().expect("beta != 0")
}

/// The Darboux polynomials of degree at most two with their cofactors.
pub fn reference_darboux_table() -> Vec<DarbouxPair> {
    let (ia, ib) = (inv_alpha(), inv_beta());
    let two = QF13::from_int(2);
    let k = |xx: QF13, yy: QF13, x: QF13, y: QF13| {
        poly(&[([2, 0, 0], xx), ([0, 2, 0], yy), ([1, 0, 0], x), ([0, 1, 0], y)])
    };
    let f = |m: Monomial| Poly::monomial(m, QF13::from_int(1));
    let z = QF13::zero;
    vec![
        DarbouxPair::new(f([0, 0, 1]), k(q(-1, 4), q(-1, 4), z(), z())),
        DarbouxPair::new(f([1, 0, 0]), k(q(-1, 2), q(-1, 4), ia.clone(), z())),
        DarbouxPair::new(f([0, 1, 0]), k(q(-1, 4), q(-1, 2), z(), ib.clone())),
        DarbouxPair::new(f([0, 0, 2]), k(q(-1, 2), q(-1, 2), z(), z())),
        DarbouxPair::new(f([2, 0, 0]), k(q(-1, 1), q(-1, 2), &two * &ia, z())),
        DarbouxPair::new(f([0, 2, 0]), k(q(-1, 2), q(-1, 1), z(), &two * &ib)),
        DarbouxPair::new(f([1, 1, 0]), k(q(-3, 4), q(-3, 4), ia.clone(), ib.clone())),
        DarbouxPair::new(f([1, 0, 1]), k(q(-3, 4), q(-1, 2), ia, z())),
        DarbouxPair::new(f([0, 1, 1]), k(q(-1, 2), q(-3, 4), z(), ib)),
    ]
}

fn same_pair_set(a: &[DarbouxPair], b: &[DarbouxPair]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p))
}

/// The complete degree-two search returns exactly the reference table and
/// every pair satisfies the Darboux identity.
pub fn check_darboux() -> CheckResult {
    let mut r = CheckResult::new("darboux");
    let table = reference_darboux_table();
    for p in &table {
        r.record(darboux_verify(p), || format!("identity fails for {p}"));
    }
    match darboux_search(2) {
        Ok(s) => {
            r.record(s.complete, || "search is not complete".into());
            r.record(same_pair_set(&s.pairs, &table), || {
                format!("search returned {} pairs differing from the table", s.pairs.len())
            });
        }
        Err(e) => r.record(false, || format!("search failed: {e}")),
    }
    r
}

/// Hand-written chart systems, to be compared with the derived ones.
pub fn reference_chart_system(chart: Chart) -> PolyField {
    let (ia, ib) = (inv_alpha(), inv_beta());
    match chart {
        Chart::Kappa1 => [
            poly(&[([3, 1, 0], q(-1, 4)), ([2, 0, 0], ia), ([1, 1, 0], q(1, 4)), ([1, 0, 0], -&ib)]),
            poly(&[([2, 2, 0], q(-1, 4)), ([0, 2, 0], q(-1, 2)), ([0, 1, 0], ib)]),
            poly(&[([2, 1, 1], q(-1, 4)), ([0, 1, 1], q(-1, 4))]),
        ],
        Chart::U1 | Chart::U2 => {
            let (a, b) = if chart == Chart::U1 { (ia, ib) } else { (ib, ia) };
            [
                poly(&[([1, 0, 0], q(1, 4)), ([3, 0, 0], q(-1, 4)), ([1, 0, 1], -&a), ([2, 0, 1], b)]),
                poly(&[([0, 1, 0], q(1, 4)), ([0, 1, 1], -&a)]),
                poly(&[([0, 0, 1], q(1, 2)), ([2, 0, 1], q(1, 4)), ([0, 0, 2], -&a)]),
            ]
        }
        Chart::U3 => [
            poly(&[([3, 0, 0], q(-1, 4)), ([2, 0, 1], ia)]),
            poly(&[([0, 3, 0], q(-1, 4)), ([0, 2, 1], ib)]),
            poly(&[([2, 0, 1], q(1, 4)), ([0, 2, 1], q(1, 4))]),
        ],
    }
}

/// Chart systems derived from the polynomial field agree term by term with
/// the reference systems.
pub fn check_charts() -> CheckResult {
    let mut r = CheckResult::new("charts");
    for chart in Chart::ALL {
        let derived = derive_chart(chart, poly_field());
        let reference = reference_chart_system(chart);
        for i in 0..3 {
            r.record(derived[i] == reference[i], || {
                format!(
                    "{chart} component {i}: derived {} vs reference {}",
                    derived[i].to_string_with(chart.variables()),
                    reference[i].to_string_with(chart.variables())
                )
            });
        }
    }
    r
}

/// Runs the whole suite in a fixed order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check_jacobi(),
        check_jacobi_k(),
        check_xy_brackets(),
        check_wz_brackets(),
        check_killing(),
        check_flags(),
        check_darboux(),
        check_charts(),
    ]
}
