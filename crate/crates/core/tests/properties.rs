use std::sync::Arc;

use proptest::prelude::*;
use regmaps::linalg::cayley;
use regmaps::poly::{int, rat, rational_to_f64, Monomial, Polynomial, Rational, SphereBlock, VarRegistry};
use regmaps::ratmap::{
    random_skew_symmetric, sample_point_indexed, stream_rng, RationalMap, SampleConfig, Variety,
};
use regmaps::sphere_maps::{circle_power, oplus, phi_double, reflect, stereo, stereo_inv};

fn reg3() -> Arc<VarRegistry> {
    VarRegistry::new(["a", "b", "c"])
}

fn poly_strategy(reg: Arc<VarRegistry>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), -6i64..=6, 1i64..=4), 0..7).prop_map(move |terms| {
        Polynomial::from_terms(
            &reg,
            terms
                .into_iter()
                .map(|((x, y, z), n, d)| (rat(n, d), Monomial::from_pairs([(0, x), (1, y), (2, z)]))),
        )
        .expect("variables in range")
    })
}

fn point_strategy() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d)), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(p in poly_strategy(reg3()), q in poly_strategy(reg3()), r in poly_strategy(reg3())) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p + &q) + &r, &p + (&q + &r));
        prop_assert_eq!((&p * &q) * &r, &p * (&q * &r));
        prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(p.registry()), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly_strategy(reg3()), q in poly_strategy(reg3()), x in point_strategy()) {
        let (pv, qv) = (p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!((&p + &q).evaluate(&x).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).evaluate(&x).unwrap(), &pv * &qv);
    }

    #[test]
    fn leibniz_rule(p in poly_strategy(reg3()), q in poly_strategy(reg3()), v in 0usize..3) {
        let lhs = (&p * &q).differentiate(v).unwrap();
        let rhs = p.differentiate(v).unwrap() * &q + &p * q.differentiate(v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent_and_sound(p in poly_strategy(reg3()), seed in 0u64..1000) {
        // a^2 + b^2 + c^2 = 1 as one block
        let blocks = vec![SphereBlock::contiguous(0, 3)];
        let nf = p.normal_form(&blocks).unwrap();
        prop_assert_eq!(nf.normal_form(&blocks).unwrap(), nf.clone());
        prop_assert!(nf.terms().all(|(m, _)| m.exponent(2) < 2));
        let s2 = Variety::sphere(2);
        let x = sample_point_indexed(&s2, seed, 0, &SampleConfig::default()).unwrap();
        prop_assert_eq!(nf.evaluate(x.coords()).unwrap(), p.evaluate(x.coords()).unwrap());
    }

    #[test]
    fn json_round_trip(p in poly_strategy(reg3())) {
        let reg = p.registry().clone();
        let back = Polynomial::from_json(&p.to_json(), &reg).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn float_matches_exact(p in poly_strategy(reg3()), x in point_strategy()) {
        let xf: Vec<f64> = x.iter().map(rational_to_f64).collect();
        let exact = rational_to_f64(&p.evaluate(&x).unwrap());
        let float = p.evaluate_f64(&xf).unwrap();
        prop_assert!((exact - float).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn evaluate_commutes_with_compose(d1 in -3i64..=3, d2 in -3i64..=3, seed in 0u64..500) {
        let (f, g) = (circle_power(d1), circle_power(d2));
        let fg = f.compose(&g).unwrap();
        let x = sample_point_indexed(f.domain(), seed, 0, &SampleConfig::default()).unwrap();
        let direct = f.evaluate_coords(&g.evaluate_coords(x.coords()).unwrap()).unwrap();
        prop_assert_eq!(fg.evaluate_coords(x.coords()).unwrap(), direct);
    }

    #[test]
    fn compose_is_associative(a in -2i64..=2, j in 0usize..2, seed in 0u64..500) {
        let f = phi_double(1).unwrap();
        let g = if j == 0 { reflect(1, 2).unwrap() } else { circle_power(2) };
        let h = circle_power(a);
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        let x = sample_point_indexed(f.domain(), seed, 1, &SampleConfig::default()).unwrap();
        prop_assert_eq!(left.evaluate_coords(x.coords()).unwrap(), right.evaluate_coords(x.coords()).unwrap());
    }

    #[test]
    fn cayley_gives_special_orthogonal(n in 2usize..=5, seed in 0u64..10_000) {
        let mut rng = stream_rng(seed, 0);
        let g = cayley(&random_skew_symmetric(n, &mut rng, &SampleConfig::default())).unwrap();
        prop_assert!(g.transpose().mul(&g).unwrap().is_identity());
        prop_assert_eq!(g.det().unwrap(), int(1));
    }

    #[test]
    fn stereo_round_trip(seed in 0u64..1000) {
        let s2 = Variety::sphere(2);
        let x = sample_point_indexed(&s2, seed, 0, &SampleConfig::default()).unwrap();
        if x.coords()[0] != int(-1) {
            let y = stereo(2).unwrap().evaluate_coords(x.coords()).unwrap();
            prop_assert_eq!(stereo_inv(2).unwrap().evaluate_coords(&y).unwrap(), x.coords().to_vec());
        }
    }

    #[test]
    fn oplus_is_commutative_pointwise(s1 in 0u64..1000, s2 in 0u64..1000) {
        let f = oplus(2).unwrap();
        let cfg = SampleConfig::default();
        let a = sample_point_indexed(&Variety::sphere(2), s1, 0, &cfg).unwrap();
        let b = sample_point_indexed(&Variety::sphere(2), s2, 1, &cfg).unwrap();
        let ab: Vec<Rational> = a.coords().iter().chain(b.coords()).cloned().collect();
        let ba: Vec<Rational> = b.coords().iter().chain(a.coords()).cloned().collect();
        prop_assert_eq!(f.evaluate_coords(&ab).unwrap(), f.evaluate_coords(&ba).unwrap());
    }
}

#[test]
fn map_round_trips_through_json() {
    let f = oplus(1).unwrap();
    let back = RationalMap::from_json(&f.to_json(), &Default::default()).unwrap();
    assert_eq!(back.numerators(), f.numerators());
    assert_eq!(back.denominator(), f.denominator());
}
