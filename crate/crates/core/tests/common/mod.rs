#![allow(dead_code)]

use std::collections::BTreeMap;

use hecke_core::pbw::{divided_monomial, monomials_upto};
use hecke_core::rational::q;
use hecke_core::udot::{udot_patterns, UdotElement};
use hecke_core::weights::theta;
use hecke_core::{MarginMatrix, PBWMonomial, SchurElement, Side, UElement, Weight, Q};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec()).unwrap()
}

fn small_coeff(rng: &mut ChaCha8Rng) -> Q {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    q(c)
}

/// A random integral element of `S(n, r)` with up to `terms` basis elements.
pub fn random_schur(rng: &mut ChaCha8Rng, n: usize, r: usize, terms: usize) -> SchurElement {
    let all = theta(n, r);
    let k = rng.gen_range(1..=terms);
    let picks: Vec<(MarginMatrix, Q)> = (0..k).map(|_| (all.choose(rng).unwrap().clone(), small_coeff(rng))).collect();
    SchurElement::from_terms(n, r, picks).unwrap()
}

/// A random integral element of `U(gl_n)` in plain PBW coordinates, degree `≤ d`.
pub fn random_u(rng: &mut ChaCha8Rng, n: usize, d: u32, terms: usize) -> UElement {
    let all = monomials_upto(n, d);
    let k = rng.gen_range(1..=terms);
    let picks: Vec<(PBWMonomial, Q)> = (0..k).map(|_| (all.choose(rng).unwrap().clone(), small_coeff(rng))).collect();
    UElement::from_terms(n, picks).unwrap()
}

/// A random off-diagonal pattern of degree `≤ d`.
pub fn random_pattern(rng: &mut ChaCha8Rng, n: usize, d: u32) -> MarginMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    let steps = rng.gen_range(0..=d);
    for _ in 0..steps {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while n > 1 && b == a {
            b = rng.gen_range(0..n);
        }
        if a != b {
            rows[a][b] += 1;
        }
    }
    hecke_core::udot::pattern(rows).unwrap()
}

/// A weight `λ` with a pattern ending at `mu`: returns `λ = μ + wt(p)`.
pub fn random_left(rng: &mut ChaCha8Rng, mu: &Weight, d: u32) -> Weight {
    let p = random_pattern(rng, mu.n(), d);
    w(&mu.entries().iter().zip(hecke_core::udot::pattern_weight(&p)).map(|(m, s)| m + s).collect::<Vec<_>>())
}

/// A random integral element of `1_λ U̇ 1_μ` of degree `≤ d`; `λ` must be reachable from `μ`.
pub fn random_udot(rng: &mut ChaCha8Rng, lambda: &Weight, mu: &Weight, d: u32, terms: usize) -> UdotElement {
    let pats = udot_patterns(lambda, mu, d).unwrap();
    assert!(!pats.is_empty());
    let k = rng.gen_range(1..=terms);
    let picks: Vec<(MarginMatrix, Q)> = (0..k).map(|_| (pats.choose(rng).unwrap().clone(), small_coeff(rng))).collect();
    UdotElement::from_terms(lambda, mu, picks).unwrap()
}

pub fn random_weight(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Weight {
    w(&(0..n).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// A random element of the Kostant ℤ-form: divided-power monomials with H-binomials.
pub fn random_divided(rng: &mut ChaCha8Rng, n: usize, d: u32) -> UElement {
    let p = random_pattern(rng, n, d);
    let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    let side = if rng.gen_bool(0.5) { Side::FFirst } else { Side::EFirst };
    divided_monomial(&p, &b, side).unwrap().scale(&small_coeff(rng))
}

// ---- brute-force oracles over the tensor space ----

pub fn words(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn pair_matrix(n: usize, i: &[usize], j: &[usize]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (&a, &b) in i.iter().zip(j) {
        m[a][b] += 1;
    }
    m
}

pub type Dense = BTreeMap<(usize, usize), Q>;

/// The matrix of `Σ c_A ξ_A` on `E^{⊗r}`, from the definition: the `(i, j)` entry is the
/// coefficient of the margin matrix of `(i, j)`.
pub fn dense(x: &SchurElement) -> Dense {
    let ws = words(x.n(), x.r());
    let mut out = Dense::new();
    for (a, i) in ws.iter().enumerate() {
        for (b, j) in ws.iter().enumerate() {
            let m = pair_matrix(x.n(), i, j);
            for (k, c) in x.terms() {
                if k.rows() == m {
                    out.insert((a, b), c.clone());
                }
            }
        }
    }
    out
}

pub fn dense_mul(x: &Dense, y: &Dense) -> Dense {
    let mut out = Dense::new();
    for (&(a, b), c) in x {
        for (&(b2, d), e) in y.range((b, 0)..(b + 1, 0)) {
            debug_assert_eq!(b, b2);
            let v = out.entry((a, d)).or_insert_with(|| q(0));
            *v += c * e;
        }
    }
    out.retain(|_, v| *v != q(0));
    out
}

/// Semistandard tableaux of shape `mu` (a partition) and content `lambda`, by filling boxes.
pub fn kostka_oracle(mu: &[i64], lambda: &[i64]) -> u64 {
    let shape: Vec<usize> = mu.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    if cells.len() as i64 != lambda.iter().sum::<i64>() {
        return 0;
    }
    let n = lambda.len();
    let mut grid = vec![vec![usize::MAX; shape.first().copied().unwrap_or(0)]; shape.len()];
    let mut left: Vec<i64> = lambda.to_vec();
    fn go(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, left: &mut Vec<i64>, n: usize) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for x in 0..n {
            if left[x] == 0 || (c > 0 && grid[r][c - 1] > x) || (r > 0 && grid[r - 1][c] >= x) {
                continue;
            }
            left[x] -= 1;
            grid[r][c] = x;
            total += go(k + 1, cells, grid, left, n);
            left[x] += 1;
        }
        grid[r][c] = usize::MAX;
        total
    }
    go(0, &cells, &mut grid, &mut left, n)
}

/// `a ⊴ b` by partial sums, entries assumed sorted or not.
pub fn dominated(a: &[i64], b: &[i64]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// Partitions of `r` into at most `n` parts, padded to length `n`.
pub fn partitions(n: usize, r: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, r: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            if r == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for x in (0..=r.min(max)).rev() {
            prefix.push(x);
            go(n, r - x, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, r, r, &mut Vec::new(), &mut out);
    out
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
