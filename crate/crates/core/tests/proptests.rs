use std::sync::{Arc, OnceLock};

use liecov::covariants::{default_degree_bound, kostant_basis, CovariantBasis, InvariantRing};
use liecov::distkit::{theta_chi, PointDistribution};
use liecov::division::{pointwise_decompose, pointwise_decompose_permuted, Decomposer, Divider, Sample, Tolerances};
use liecov::liecore::{catalog, LieAlgebra};
use liecov::polyalg::{apply_field, bracket_maps, directional_derivative, Monomial, Poly, PolyMap};
use liecov::random::{random_invariant, random_map, random_poly};
use liecov::realify::sigma;
use liecov::rep::catalog_rep;
use liecov::Scalar;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| {
        &Scalar::from_ratio(a, b) + &(&Scalar::i() * &Scalar::from_ratio(c, d))
    })
}

fn sl2() -> &'static Arc<LieAlgebra> {
    static G: OnceLock<Arc<LieAlgebra>> = OnceLock::new();
    G.get_or_init(|| Arc::new(catalog("sl2").unwrap()))
}

fn sl2_decomposer() -> &'static (Decomposer, Arc<InvariantRing>) {
    static D: OnceLock<(Decomposer, Arc<InvariantRing>)> = OnceLock::new();
    D.get_or_init(|| {
        let g = sl2();
        let rho = catalog_rep(g, "irrep2").unwrap();
        let b = Arc::new(kostant_basis(&rho, default_degree_bound(g)).unwrap());
        let ring = Arc::new(InvariantRing::new(g.clone()));
        (Decomposer::with_ring(b, ring.clone()), ring)
    })
}

fn sl3_basis() -> &'static CovariantBasis {
    static B: OnceLock<CovariantBasis> = OnceLock::new();
    B.get_or_init(|| {
        let g = Arc::new(catalog("sl3").unwrap());
        let rho = catalog_rep(&g, "adjoint").unwrap();
        kostant_basis(&rho, default_degree_bound(&g)).unwrap()
    })
}

proptest! {
    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn poly_ring_axioms(seed in any::<u64>(), x in prop::collection::vec(-6i64..=6, 3)) {
        let mut r = rng(seed);
        let (p, q, s) = (random_poly(&mut r, 3, 3, 0.3), random_poly(&mut r, 3, 3, 0.3), random_poly(&mut r, 3, 2, 0.3));
        prop_assert_eq!(&(&p + &q) * &s, &(&p * &s) + &(&q * &s));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&(&(&p + &q) - &q) - &p).is_zero());
        let xs: Vec<Scalar> = x.iter().map(|&v| Scalar::from_int(v)).collect();
        prop_assert_eq!((&p * &q).eval(&xs), &p.eval(&xs) * &q.eval(&xs));
        prop_assert_eq!(Poly::parse(&p.to_text(), 3).unwrap(), p);
    }

    #[test]
    fn derivation_leibniz_rule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_poly(&mut r, 3, 3, 0.3);
        let h = random_poly(&mut r, 3, 3, 0.3);
        let field = random_map(&mut r, 3, 3, 2, 0.3);
        let lhs = apply_field(&field, &(&f * &h)).unwrap();
        let rhs = &(&apply_field(&field, &f).unwrap() * &h) + &(&f * &apply_field(&field, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_matches_finite_differences(
        seed in any::<u64>(),
        x in prop::collection::vec(-1.0f64..1.0, 3),
        v in prop::collection::vec(-1.0f64..1.0, 3),
    ) {
        let mut r = rng(seed);
        let p = random_map(&mut r, 3, 2, 3, 0.4);
        let dir = PolyMap::constant(3, &v.iter().map(|&t| Scalar::from_f64(t).unwrap()).collect::<Vec<_>>());
        let d = directional_derivative(&p, &dir).unwrap().eval_f64(&x);
        let h = 1e-6;
        let plus: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + h * b).collect();
        let minus: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a - h * b).collect();
        let (pp, pm) = (p.eval_f64(&plus), p.eval_f64(&minus));
        for k in 0..2 {
            let fd = (pp[k] - pm[k]) / (2.0 * h);
            prop_assert!((fd - d[k]).abs() <= 1e-3 * (1.0 + d[k].abs()), "{} vs {}", fd, d[k]);
        }
    }

    #[test]
    fn sigma_is_an_involution(seed in any::<u64>(), c in scalar()) {
        let mut r = rng(seed);
        let p = random_map(&mut r, 3, 3, 2, 0.3).scale(&c);
        let q = random_map(&mut r, 3, 3, 2, 0.3).scale(&Scalar::i());
        prop_assert_eq!(sigma(&sigma(&p)), p.clone());
        prop_assert_eq!(sigma(&(&p + &q)), &sigma(&p) + &sigma(&q));
        prop_assert_eq!(sigma(&p.scale(&c)), sigma(&p).scale(&c.conj()));
    }

    #[test]
    fn theta_chi_pairs_through_the_product(
        seed in any::<u64>(),
        point in prop::collection::vec(-3i64..=3, 3),
        alpha in prop::collection::vec(0u16..=2, 3),
    ) {
        let mut r = rng(seed);
        let pt: Vec<Scalar> = point.iter().map(|&v| Scalar::from_int(v)).collect();
        let theta = PointDistribution::term(pt, Monomial::new(alpha), 0, 1, Scalar::from_ratio(3, 2));
        let chi = random_map(&mut r, 3, 3, 2, 0.4);
        let f = random_poly(&mut r, 3, 3, 0.3);
        let tc = theta_chi(&theta, &chi).unwrap();
        let paired = tc.pair(&f).unwrap();
        for k in 0..3 {
            prop_assert_eq!(&paired[k], &theta.pair(&(&f * chi.component(k))).unwrap()[0]);
        }
        // reordering the target basis only reorders the result
        let perm = [2usize, 0, 1];
        let chi_p = PolyMap::new(3, perm.iter().map(|&i| chi.component(i).clone()).collect());
        let paired_p = theta_chi(&theta, &chi_p).unwrap().pair(&f).unwrap();
        for (k, &i) in perm.iter().enumerate() {
            prop_assert_eq!(&paired_p[k], &paired[i]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_inverts_compose(seed in any::<u64>()) {
        let (dec, ring) = sl2_decomposer();
        let mut r = rng(seed);
        let b = dec.basis();
        let coeffs: Vec<Poly> = (0..b.rank()).map(|_| random_invariant(&mut r, ring, 6)).collect();
        let mut p = PolyMap::zero(3, b.rep.target_dim());
        for (c, g) in coeffs.iter().zip(&b.generators) {
            p = &p + &g.scale_poly(c);
        }
        let got = dec.decompose(&p).unwrap();
        prop_assert_eq!(&got.coefficients, &coeffs);
        prop_assert_eq!(got.reconstruct(), p);
    }

    #[test]
    fn division_round_trip(seed in any::<u64>()) {
        let g = sl2();
        let mut r = rng(seed);
        let id = PolyMap::identity(3);
        let y0 = random_map(&mut r, 3, 3, 3, 0.3);
        let x = bracket_maps(g, &id, &y0);
        let y = Divider::adjoint(g).unwrap().divide(&x, x.degree() + 2).unwrap();
        prop_assert_eq!(bracket_maps(g, &id, &y), x);
    }

    #[test]
    fn pointwise_ignores_generator_order(seed in 0u64..1000, c in prop::collection::vec(-3.0f64..3.0, 2)) {
        let b = sl3_basis();
        let x: Vec<f64> = b.algebra().random_regular(seed).unwrap().iter().map(Scalar::to_f64).collect();
        let (p1, p2) = (b.generators[0].eval_f64(&x), b.generators[1].eval_f64(&x));
        let value = p1.iter().zip(&p2).map(|(a, d)| c[0] * a + c[1] * d).collect();
        let samples = [Sample { point: x, value }];
        let a = pointwise_decompose(&samples, b, Tolerances::default()).unwrap();
        let p = pointwise_decompose_permuted(&samples, b, Tolerances::default(), &[1, 0]).unwrap();
        for (u, v) in a.coeff_values[0].iter().zip(&p.coeff_values[0]) {
            prop_assert!((u - v).abs() <= 1e-10 * (1.0 + u.abs()));
        }
        for (u, v) in a.coeff_values[0].iter().zip(&c) {
            prop_assert!((u - v).abs() <= 1e-8 * (1.0 + v.abs()));
        }
    }
}
