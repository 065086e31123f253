mod common;

use common::*;
use hecke_core::linalg::rank;
use hecke_core::rational::q;
use hecke_core::schur::schur_basis;
use hecke_core::weights::{dominant_compositions, theta};
use hecke_core::{compositions, kostka, margin_matrices, ssyt, MarginMatrix, SchurElement};

#[test]
fn schur_products_match_tensor_composition() {
    for (n, r) in [(1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let basis: Vec<SchurElement> = theta(n, r).iter().map(|a| SchurElement::basis(a).unwrap()).collect();
        let mats: Vec<Dense> = basis.iter().map(dense).collect();
        for (x, dx) in basis.iter().zip(&mats) {
            for (y, dy) in basis.iter().zip(&mats) {
                let got = x.multiply(y).unwrap();
                assert_eq!(dense(&got), dense_mul(dx, dy), "n={n} r={r} {:?} {:?}", x.to_json(), y.to_json());
            }
        }
    }
}

#[test]
fn green_product_rule_in_s22() {
    let m = |rows: Vec<Vec<i64>>| MarginMatrix::nonnegative(rows).unwrap();
    let xi = |rows| SchurElement::basis(&m(rows)).unwrap();
    // ξ_{11,12} ξ_{12,22} = 2 ξ_{11,22}
    let p = xi(vec![vec![1, 1], vec![0, 0]]).multiply(&xi(vec![vec![0, 1], vec![0, 1]])).unwrap();
    assert_eq!(p, SchurElement::basis(&m(vec![vec![0, 2], vec![0, 0]])).unwrap().scale(&q(2)));
    // ξ_{12,21} ξ_{12,21} = ξ_{12,12}
    let s = xi(vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(s.multiply(&s).unwrap(), xi(vec![vec![1, 0], vec![0, 1]]));
    // ξ_{12,11} ξ_{11,12} = ξ_{12,12} + ξ_{12,21}
    let p = xi(vec![vec![1, 0], vec![1, 0]]).multiply(&xi(vec![vec![1, 1], vec![0, 0]])).unwrap();
    assert_eq!(p, xi(vec![vec![1, 0], vec![0, 1]]).add(&s).unwrap());
    // orthogonal weights
    assert!(xi(vec![vec![2, 0], vec![0, 0]]).multiply(&xi(vec![vec![0, 0], vec![0, 2]])).unwrap().is_zero());
}

#[test]
fn schur_algebra_acts_faithfully() {
    for n in 1..=3 {
        for r in 1..=3 {
            let endos: Vec<_> = schur_basis(n, r).unwrap().iter().map(|x| x.to_endo().unwrap().as_vector()).collect();
            let expected = binom((n * n + r - 1) as u64, r as u64) as usize;
            assert_eq!(endos.len(), expected);
            assert_eq!(rank(&endos), expected, "n={n} r={r}");
        }
    }
}

#[test]
fn kostka_matches_filling_count() {
    for n in 1..=4 {
        for r in 0..=6 {
            let shapes = dominant_compositions(n, r);
            for l in compositions(n, r) {
                for mu in &shapes {
                    let expected = kostka_oracle(mu.entries(), l.entries());
                    assert_eq!(kostka(mu, &l).unwrap(), expected, "K({mu}, {l})");
                    assert_eq!(ssyt(mu, &l).unwrap().len() as u64, expected);
                }
            }
        }
    }
}

#[test]
fn hom_space_dimension_is_sum_of_kostka_products() {
    for n in 1..=3 {
        for r in 0..=5 {
            let shapes = partitions(n, r as i64);
            for l in compositions(n, r) {
                for m in compositions(n, r) {
                    let kk: u64 = shapes.iter().map(|nu| kostka_oracle(nu, l.entries()) * kostka_oracle(nu, m.entries())).sum();
                    assert_eq!(margin_matrices(&l, &m).unwrap().len() as u64, kk, "{l} {m}");
                }
            }
        }
    }
}
