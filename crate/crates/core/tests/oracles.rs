mod common;

use std::sync::Arc;

use common::{q, Q};
use liecov::covariants::{covariant_space, invariant_space, is_covariant};
use liecov::liecore::catalog;
use liecov::rep::{catalog_rep, trivial_rep};
use num_traits::Zero;

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::from_integer(1.into());
    v
}

#[test]
fn sl2_trace_form_values() {
    let g = catalog("sl2").unwrap();
    let (h, e, f) = (unit(3, 0), unit(3, 1), unit(3, 2));
    assert_eq!(common::trace_form(&g, &h, &h), Q::from_integer(8.into()));
    assert_eq!(common::trace_form(&g, &e, &f), Q::from_integer(4.into()));
    assert_eq!(common::trace_form(&g, &e, &e), Q::zero());
    assert_eq!(q(g.gram().get(0, 0)), Q::from_integer(8.into()));
    assert_eq!(q(g.gram().get(1, 2)), Q::from_integer(4.into()));
}

#[test]
fn gram_matches_trace_form() {
    for name in ["sl2", "sl3", "so3"] {
        let g = catalog(name).unwrap();
        let n = g.dim();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(q(g.gram().get(i, j)), common::trace_form(&g, &unit(n, i), &unit(n, j)), "{name} ({i},{j})");
            }
        }
    }
}

#[test]
fn zero_weight_multiplicities() {
    for (alg, rep, expected) in [
        ("sl2", "adjoint", 1),
        ("sl2", "irrep2", 1),
        ("sl2", "irrep4", 1),
        ("sl2", "irrep3", 1),
        ("sl3", "sym2", 0),
        ("sl3", "adjoint", 2),
        ("sl3", "standard", 0),
        ("so3", "adjoint", 1),
    ] {
        let g = Arc::new(catalog(alg).unwrap());
        let rho = catalog_rep(&g, rep).unwrap();
        assert_eq!(common::zero_weight_dim(&rho), expected, "{alg}/{rep}");
        assert_eq!(rho.zero_weight_multiplicity(), expected, "{alg}/{rep}");
    }
}

#[test]
fn covariant_dims_match_brute_force() {
    for (alg, rep, max_d) in [("sl2", "adjoint", 3), ("sl2", "irrep2", 3), ("so3", "adjoint", 3), ("sl3", "adjoint", 2), ("sl2", "irrep3", 2)] {
        let g = Arc::new(catalog(alg).unwrap());
        let rho = catalog_rep(&g, rep).unwrap();
        for d in 0..=max_d {
            let space = covariant_space(&rho, d);
            assert_eq!(space.len(), common::covariant_dim(&rho, d), "{alg}/{rep} degree {d}");
            for p in &space {
                assert!(is_covariant(p, &rho).unwrap());
            }
        }
    }
}

#[test]
fn invariant_dims_match_brute_force() {
    for alg in ["sl2", "sl3"] {
        let g = Arc::new(catalog(alg).unwrap());
        let triv = trivial_rep(&g);
        for d in 0..=3 {
            assert_eq!(invariant_space(&g, d).len(), common::covariant_dim(&triv, d), "{alg} degree {d}");
        }
    }
}

#[test]
fn centralizer_of_regular_points() {
    for alg in ["sl2", "sl3", "so3"] {
        let g = catalog(alg).unwrap();
        for seed in 0..5 {
            let x = g.random_regular(seed).unwrap();
            let ours = g.centralizer(&x);
            let oracle = common::centralizer(&g, &common::rationals(&x));
            assert_eq!(ours.len(), oracle.len(), "{alg}");
            assert_eq!(ours.len(), g.rank(), "{alg}");
            let mut stacked: Vec<Vec<Q>> = oracle.clone();
            stacked.extend(ours.iter().map(|v| common::rationals(v)));
            assert_eq!(common::rank(&stacked), oracle.len(), "{alg}: spans differ");
        }
    }
}
