use orbitope::charalg::{
    character_int, decompose_character, dominant_character, multiply, orbit_size, symmetric_power_characters, tensor_decompose_int, weyl_dim, weyl_dim_int,
    DEFAULT_CHARACTER_CAP as CAP,
};
use orbitope::invariants::{d1, in_cone_ar, r0, R0Options, Tri};
use orbitope::polygeom::caratheodory_reduce;
use orbitope::rational::{q, qr, Q};
use orbitope::rootkit::DEFAULT_ORBIT_CAP;
use orbitope::{RootSystem, Weight};
use proptest::prelude::*;

fn rs(label: &str) -> RootSystem {
    label.parse().unwrap()
}

fn small_system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(vec!["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4"]).prop_map(rs)
}

/// A system together with a dominant integral weight with coordinates ≤ max.
fn system_and_weight(max: i64) -> impl Strategy<Value = (RootSystem, Vec<i64>)> {
    small_system().prop_flat_map(move |s| {
        let l = s.rank();
        (Just(s), prop::collection::vec(0..=max, l))
    })
}

fn nonzero(c: &[i64]) -> bool {
    c.iter().any(|&x| x != 0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn r0_is_scale_invariant((s, c) in system_and_weight(2), k in 2i64..=4, d in 1i64..=3) {
        prop_assume!(nonzero(&c));
        let w = Weight::from_ints(&c);
        let opts = R0Options::default();
        let a = r0(&s, &w, &opts).unwrap();
        let b = r0(&s, &w.scale(&qr(k, d)), &opts).unwrap();
        prop_assert_eq!((a.value, a.status), (b.value, b.status));
    }

    #[test]
    fn cone_of_three_point_hulls_is_midpoint_convex(a in prop::collection::vec(0i64..=3, 3), b in prop::collection::vec(0i64..=3, 3)) {
        let s = rs("A3");
        let opts = R0Options::default();
        let (l, m) = (Weight::from_ints(&a), Weight::from_ints(&b));
        prop_assume!(in_cone_ar(&s, &l, 3, &opts).unwrap() == Tri::Yes && in_cone_ar(&s, &m, 3, &opts).unwrap() == Tri::Yes);
        let mid = l.add(&m).scale(&qr(1, 2));
        prop_assert_eq!(in_cone_ar(&s, &mid, 3, &opts).unwrap(), Tri::Yes);
    }

    #[test]
    fn weyl_certificates_verify((s, c) in system_and_weight(2)) {
        let w = Weight::from_ints(&c);
        let res = r0(&s, &w, &R0Options::default()).unwrap();
        let cert = res.weyl_certificate.expect("small orbits always yield a certificate");
        cert.verify(&s).unwrap();
        prop_assert!(cert.len() >= res.value.unwrap());
        prop_assert!(res.value.unwrap() <= s.rank() + 1);
    }

    #[test]
    fn degree_bounds_r0(c in prop::collection::vec(0i64..=2, 2)) {
        prop_assume!(nonzero(&c));
        let s = rs("A2");
        let w = Weight::from_ints(&c);
        let r = r0(&s, &w, &R0Options::default()).unwrap().value.unwrap();
        if let Some(d) = d1(&s, &w, 8, CAP).unwrap() {
            prop_assert!(r <= d);
        }
    }

    #[test]
    fn caratheodory_support_is_small((s, c) in system_and_weight(1), mix in prop::collection::vec(1i64..=9, 1..12)) {
        prop_assume!(nonzero(&c));
        let orbit: Vec<Vec<Q>> = s.weyl_orbit(&Weight::from_ints(&c), DEFAULT_ORBIT_CAP).unwrap().iter().map(|p| p.fund().to_vec()).collect();
        let total: i64 = mix.iter().sum();
        let mut target = vec![q(0); s.rank()];
        for (i, m) in mix.iter().enumerate() {
            for (t, x) in target.iter_mut().zip(&orbit[i % orbit.len()]) {
                *t += x * qr(*m, total);
            }
        }
        let dec = caratheodory_reduce(&target, &orbit).unwrap();
        prop_assert!(dec.len() <= s.rank() + 1);
        let mut back = vec![q(0); s.rank()];
        for (i, coef) in &dec {
            prop_assert!(*coef > q(0));
            for (b, x) in back.iter_mut().zip(&orbit[*i]) {
                *b += x * coef;
            }
        }
        prop_assert_eq!(back, target);
        prop_assert_eq!(dec.iter().map(|(_, c)| c.clone()).sum::<Q>(), q(1));
    }

    #[test]
    fn klimyk_matches_character_product((s, a) in system_and_weight(1), b in prop::collection::vec(0i64..=1, 8)) {
        let b = &b[..s.rank()];
        let klimyk = tensor_decompose_int(&s, &a, b, CAP).unwrap();
        let prod = multiply(&s, &character_int(&s, &a, CAP).unwrap(), &character_int(&s, b, CAP).unwrap(), CAP).unwrap();
        prop_assert_eq!(&klimyk, &decompose_character(&s, &prod, CAP).unwrap());
        prop_assert_eq!(klimyk.dimension(&s), weyl_dim_int(&s, &a) * weyl_dim_int(&s, b));
    }

    #[test]
    fn freudenthal_mass_is_weyl_dimension((s, c) in system_and_weight(3)) {
        let w = Weight::from_ints(&c);
        prop_assert_eq!(dominant_character(&s, &w, CAP).unwrap().dimension(&s), weyl_dim(&s, &w).unwrap());
    }

    #[test]
    fn symmetric_powers_have_binomial_dimension((s, c) in system_and_weight(1), d in 1usize..=4) {
        let dim = weyl_dim_int(&s, &c);
        prop_assume!(dim <= 30);
        let sp = symmetric_power_characters(&s, &c, d, CAP).unwrap();
        let binom = (1..=d as u128).fold(1u128, |acc, i| acc * (dim + i - 1) / i);
        prop_assert_eq!(decompose_character(&s, &sp[d], CAP).unwrap().dimension(&s), binom);
    }

    #[test]
    fn orbit_size_matches_enumeration((s, c) in system_and_weight(2)) {
        let orbit = s.weyl_orbit(&Weight::from_ints(&c), DEFAULT_ORBIT_CAP).unwrap();
        prop_assert_eq!(orbit.len() as u128, orbit_size(&s, &c));
    }
}

#[test]
fn regular_orbits_have_weyl_group_size() {
    for label in ["A3", "B3", "C3", "D4"] {
        let s = rs(label);
        let rho = s.rho().clone();
        assert_eq!(s.weyl_orbit(&rho, DEFAULT_ORBIT_CAP).unwrap().len() as u128, s.weyl_order(), "{label}");
    }
}
