//! Exact relations between the closed-form Ricci components and the general
//! homogeneous Ricci formula, and the structure of the map `U`.

use g2flag::flags::flag_data;
use g2flag::metrics::{MetricParams, TangentVector};
use g2flag::ricci::{ricci_besse, ricci_besse_directions, ricci_closed, ricci_tensor, u_bilinear};
use g2flag::sampling::Lcg;
use g2flag::{FlagId, QF13};
use num_traits::{One, Zero};

fn unit(i: usize) -> TangentVector {
    let c = (0..5).map(|j| if i == j { QF13::one() } else { QF13::zero() }).collect();
    TangentVector::new(FlagId::Alpha2, c).unwrap()
}

fn random_mu(rng: &mut Lcg) -> [QF13; 3] {
    [(); 3].map(|_| rng.positive_rational(12, 4))
}

/// The general formula evaluated by hand on the orthonormal frame:
/// `Ric1 = (alpha^2 r2^2 + beta^2 r3^2) / 136`, `Ric_j = 1/2 - c_j^2 r_j / 136`
/// with `r_j = mu1 / mu_j`.
fn hand_ricci(mu: &[QF13; 3]) -> [QF13; 3] {
    let (a2, b2) = (QF13::alpha().square(), QF13::beta().square());
    let c = QF13::frac(1, 136);
    let half = QF13::frac(1, 2);
    let r2 = mu[0].checked_div(&mu[1]).unwrap();
    let r3 = mu[0].checked_div(&mu[2]).unwrap();
    [
        &c * &(&a2 * &r2.square() + &b2 * &r3.square()),
        &half - &(&c * &a2 * &r2),
        &half - &(&c * &b2 * &r3),
    ]
}

#[test]
fn general_formula_matches_hand_evaluation() {
    let mut rng = Lcg::new(11);
    for _ in 0..50 {
        let mu = random_mu(&mut rng);
        let b = ricci_besse(&MetricParams::alpha2(mu.clone())).unwrap();
        assert_eq!(b.as_array(), hand_ricci(&mu), "mu = {mu:?}");
    }
}

#[test]
fn closed_form_is_the_general_formula_after_rescaling_mu1() {
    let mut rng = Lcg::new(12);
    let four = QF13::from_int(4);
    for _ in 0..100 {
        let mu = random_mu(&mut rng);
        let besse = ricci_besse(&MetricParams::alpha2(mu.clone())).unwrap();
        let scaled = [&mu[0] * &four, mu[1].clone(), mu[2].clone()];
        let closed = ricci_closed(&MetricParams::alpha2(scaled)).unwrap();
        assert_eq!(besse.ric1, closed.ric1.checked_div(&four).unwrap());
        assert_eq!(besse.ric2, closed.ric2);
        assert_eq!(besse.ric3, closed.ric3);
    }
}

#[test]
fn closed_form_differs_from_general_formula_at_the_normal_metric() {
    let p = MetricParams::alpha2([QF13::one(), QF13::one(), QF13::one()]);
    let (b, c) = (ricci_besse(&p).unwrap(), ricci_closed(&p).unwrap());
    assert_eq!(b.ric1, QF13::frac(1, 4));
    assert_eq!(c.ric1, QF13::frac(1, 16));
    assert_ne!(b.ric2, c.ric2);
}

#[test]
fn ricci_is_diagonal_and_constant_on_modules() {
    let mut rng = Lcg::new(13);
    let data = flag_data(FlagId::Alpha2);
    for _ in 0..20 {
        let p = MetricParams::alpha2(random_mu(&mut rng));
        let t = ricci_tensor(&p).unwrap();
        for (i, row) in t.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    assert!(v.is_zero(), "Ric({i},{j}) = {v}");
                }
            }
        }
        let d = ricci_besse_directions(&p).unwrap();
        for m in 0..3 {
            let r = data.module_range(m);
            assert!(d[r.clone()].iter().all(|v| *v == d[r.start]));
        }
    }
}

#[test]
fn u_vanishes_on_the_diagonal() {
    let mut rng = Lcg::new(14);
    for _ in 0..30 {
        let p = MetricParams::alpha2(random_mu(&mut rng));
        for i in 0..5 {
            assert!(u_bilinear(&p, &unit(i), &unit(i)).unwrap().is_zero());
        }
    }
}

/// `U(b0, b_j)` is proportional to `mu1 - mu_k` for the module `k` of `b_j`,
/// and every other pair of basis vectors gives zero.
#[test]
fn u_off_diagonal_pattern() {
    let mut rng = Lcg::new(15);
    let module = |j: usize| if j == 0 { 0 } else { (j + 1) / 2 };
    for n in 0..40 {
        let mut mu = random_mu(&mut rng);
        // force equalities half of the time
        if n % 4 == 1 {
            mu[1] = mu[0].clone();
        }
        if n % 4 == 2 {
            mu[2] = mu[0].clone();
        }
        let p = MetricParams::alpha2(mu.clone());
        for i in 0..5 {
            for j in 0..5 {
                let u = u_bilinear(&p, &unit(i), &unit(j)).unwrap();
                let expect_zero = match (i.min(j), i.max(j)) {
                    (0, k) if k > 0 => mu[0] == mu[module(k)],
                    _ => true,
                };
                assert_eq!(u.is_zero(), expect_zero, "U(b{i}, b{j}) at {mu:?}");
                assert_eq!(u, u_bilinear(&p, &unit(j), &unit(i)).unwrap());
            }
        }
    }
}

#[test]
fn u_vanishes_identically_at_the_normal_metric() {
    for s in [1, 3, 7] {
        let m = QF13::from_int(s);
        let p = MetricParams::alpha2([m.clone(), m.clone(), m]);
        for i in 0..5 {
            for j in 0..5 {
                assert!(u_bilinear(&p, &unit(i), &unit(j)).unwrap().is_zero());
            }
        }
    }
}
