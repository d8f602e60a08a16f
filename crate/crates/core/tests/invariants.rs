//! Property tests for the exact field, the coordinate changes and the flow.

use g2flag::flags::flag_data;
use g2flag::flow::darboux::{darboux_verify, monomial_cofactor, DarbouxPair};
use g2flag::flow::field::{
    main_eq_exact, mu_field_exact, mu_to_xyz, mu_to_xyz_exact, poly_field_exact, xyz_to_mu,
    xyz_to_mu_exact,
};
use g2flag::flow::poly::Poly;
use g2flag::metrics::{
    equigeodesic_check, is_go_closed_form, sample_tangent_vector, sample_valid_params, MetricParams,
    TangentVector,
};
use g2flag::ricci::{ricci_closed, u_bilinear};
use g2flag::sampling::Lcg;
use g2flag::{FlagId, QF13};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn qf13() -> impl Strategy<Value = QF13> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| QF13::from_parts(a, b, c, d))
}

fn nonzero_qf13() -> impl Strategy<Value = QF13> {
    qf13().prop_filter("nonzero", |q| !q.is_zero())
}

fn positive_qf13() -> impl Strategy<Value = QF13> {
    qf13().prop_map(|q| q.abs()).prop_filter("positive", QF13::is_positive)
}

fn positive3() -> impl Strategy<Value = [QF13; 3]> {
    [positive_qf13(), positive_qf13(), positive_qf13()]
}

fn theta() -> impl Strategy<Value = FlagId> {
    prop_oneof![Just(FlagId::Empty), Just(FlagId::Alpha1), Just(FlagId::Alpha2)]
}

proptest! {
    #[test]
    fn field_ring_axioms(a in qf13(), b in qf13(), c in qf13()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, QF13::zero());
    }

    #[test]
    fn inverse_and_division(a in nonzero_qf13(), b in qf13()) {
        prop_assert_eq!(&a * &a.inv().unwrap(), QF13::one());
        prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b);
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in qf13(), b in qf13()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(QF13::from_rational(a.norm()), &a * &a.conj());
    }

    #[test]
    fn sign_agrees_with_float(a in qf13()) {
        let v = a.to_f64_lossy();
        let s = if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 };
        prop_assert_eq!(a.sign(), s);
    }

    #[test]
    fn text_round_trips(a in qf13()) {
        prop_assert_eq!(a.to_string().parse::<QF13>().unwrap(), a.clone());
        prop_assert_eq!(a.to_text().parse::<QF13>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QF13>(&json).unwrap(), a);
    }

    #[test]
    fn square_root_of_a_square(a in qf13()) {
        let r = a.square().sqrt().expect("squares have roots");
        prop_assert_eq!(r, a.abs());
    }

    #[test]
    fn mu_xyz_round_trip_exact(mu in positive3()) {
        let s = mu_to_xyz_exact(&mu).unwrap();
        prop_assert!(s.iter().all(QF13::is_positive));
        prop_assert_eq!(xyz_to_mu_exact(&s).unwrap(), mu);
    }

    #[test]
    fn mu_xyz_round_trip_f64(mu in prop::array::uniform3(0.01f64..100.0)) {
        let back = xyz_to_mu(&mu_to_xyz(&mu).unwrap()).unwrap();
        for i in 0..3 {
            prop_assert!((back[i] - mu[i]).abs() <= 1e-12 * mu[i]);
        }
    }

    #[test]
    fn metric_flow_is_minus_twice_ricci(mu in positive3()) {
        let f = mu_field_exact(&mu).unwrap();
        let r = ricci_closed(&MetricParams::alpha2(mu)).unwrap().as_array();
        let m2 = QF13::from_int(-2);
        for i in 0..3 {
            prop_assert_eq!(&f[i], &(&m2 * &r[i]));
        }
    }

    #[test]
    fn time_rescaling_multiplies_by_z(s in positive3()) {
        let m = main_eq_exact(&s).unwrap();
        let p = poly_field_exact(&s);
        for i in 0..3 {
            prop_assert_eq!(&m[i] * &s[2], p[i].clone());
        }
    }

    #[test]
    fn coordinate_planes_are_invariant(a in qf13(), b in qf13()) {
        let z = QF13::zero();
        prop_assert!(poly_field_exact(&[z.clone(), a.clone(), b.clone()])[0].is_zero());
        prop_assert!(poly_field_exact(&[a.clone(), z.clone(), b.clone()])[1].is_zero());
        prop_assert!(poly_field_exact(&[a, b, z])[2].is_zero());
    }

    #[test]
    fn monomials_are_darboux(e in prop::array::uniform3(0u32..4)) {
        let f = Poly::monomial(e, QF13::one());
        prop_assert!(darboux_verify(&DarbouxPair::new(f, monomial_cofactor(e))));
    }

    #[test]
    fn go_verdict_is_scale_invariant(th in theta(), seed in any::<u64>(), c in positive_qf13()) {
        let p = sample_valid_params(th, &mut Lcg::new(seed));
        prop_assert_eq!(is_go_closed_form(&p), is_go_closed_form(&p.scaled(&c)));
    }

    #[test]
    fn equigeodesic_vectors_form_a_cone(th in theta(), seed in any::<u64>(), c in nonzero_qf13()) {
        let x = sample_tangent_vector(th, &mut Lcg::new(seed));
        prop_assert_eq!(equigeodesic_check(&x), equigeodesic_check(&x.scale(&c)));
    }

    #[test]
    fn ricci_is_scale_invariant(mu in positive3(), c in positive_qf13()) {
        let scaled = [&mu[0] * &c, &mu[1] * &c, &mu[2] * &c];
        prop_assert_eq!(
            ricci_closed(&MetricParams::alpha2(mu)).unwrap(),
            ricci_closed(&MetricParams::alpha2(scaled)).unwrap()
        );
    }

    #[test]
    fn u_is_symmetric(mu in positive3(), seed in any::<u64>()) {
        let p = MetricParams::alpha2(mu);
        let mut rng = Lcg::new(seed);
        let x = sample_tangent_vector(FlagId::Alpha2, &mut rng);
        let y = sample_tangent_vector(FlagId::Alpha2, &mut rng);
        prop_assert_eq!(u_bilinear(&p, &x, &y).unwrap(), u_bilinear(&p, &y, &x).unwrap());
    }

    #[test]
    fn tangent_vectors_survive_the_ambient_round_trip(th in theta(), seed in any::<u64>()) {
        let x = sample_tangent_vector(th, &mut Lcg::new(seed));
        let back = TangentVector::from_kvector(th, &x.to_kvector()).unwrap();
        prop_assert_eq!(back.coeffs, x.coeffs.clone());
        prop_assert_eq!(flag_data(th).vector_from_coords(&x.coeffs), x.to_kvector());
    }
}
