//! `U(gl_n)` in PBW normal form over ℚ.
//!
//! Generators are the matrix units `e_{ab}`, ranked in the global order
//! [`generator_order`]: the `f_{ij} = e_{ji}` for `i < j` (lexicographic in
//! `(i, j)`), then `H_1, …, H_n`, then the `e_{ij}` for `i < j`. A monomial is
//! the product of its letters in increasing rank, stored as an exponent vector.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{change_of_basis, ChangeOfBasis, SparseVec};
use crate::rational::{factorial, is_integral, parse_q, q_to_string, Q};
use crate::schur::{decompose_block, idempotent, SchurElement, WeightProjection};
use crate::tensor::{add_into, Chain, Operator, TensorEndo, TensorSpace, TensorVec};
use crate::weights::{MarginMatrix, Weight};

/// The matrix units `(a, b)` (zero-based) in PBW rank order.
pub fn generator_order(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i + 1..n {
            out.push((j, i));
        }
    }
    for i in 0..n {
        out.push((i, i));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// PBW rank of the matrix unit `e_{ab}` (zero-based).
pub fn generator_rank(n: usize, a: usize, b: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    let pair_index = |i: usize, j: usize| i * (2 * n - i - 1) / 2 + (j - i - 1);
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => pair_index(b, a),
        std::cmp::Ordering::Equal => pairs + a,
        std::cmp::Ordering::Less => pairs + n + pair_index(a, b),
    }
}

type UnitTable = Mutex<HashMap<usize, &'static [(usize, usize)]>>;

fn units(n: usize) -> &'static [(usize, usize)] {
    static TABLE: OnceLock<UnitTable> = OnceLock::new();
    let mut t = TABLE.get_or_init(Default::default).lock().unwrap();
    t.entry(n).or_insert_with(|| Box::leak(generator_order(n).into_boxed_slice()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial {
    n: usize,
    exps: Vec<u32>,
}

impl PBWMonomial {
    pub fn one(n: usize) -> Self {
        PBWMonomial { n, exps: vec![0; n * n] }
    }

    pub fn from_exponents(n: usize, exps: Vec<u32>) -> Result<Self> {
        if n == 0 || exps.len() != n * n {
            return Err(Error::LengthMismatch { left: n * n, right: exps.len() });
        }
        Ok(PBWMonomial { n, exps })
    }

    /// `∏ f_{ij}^{f[i][j]} ∏ H_i^{h[i]} ∏ e_{ij}^{e[i][j]}`; `f` and `e` must be strictly upper triangular.
    pub fn from_parts(f: &[Vec<u32>], h: &[u32], e: &[Vec<u32>]) -> Result<Self> {
        let n = h.len();
        if f.len() != n || e.len() != n || f.iter().chain(e).any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("f, h, e must be n×n, n, n×n".into()));
        }
        let strictly_upper = |m: &[Vec<u32>]| (0..n).all(|i| (0..=i).all(|j| m[i][j] == 0));
        if !strictly_upper(f) || !strictly_upper(e) {
            return Err(Error::InvalidArgument("f and e exponents live strictly above the diagonal".into()));
        }
        let mut m = PBWMonomial::one(n);
        for i in 0..n {
            m.exps[generator_rank(n, i, i)] = h[i];
            for j in i + 1..n {
                m.exps[generator_rank(n, j, i)] = f[i][j];
                m.exps[generator_rank(n, i, j)] = e[i][j];
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of the matrix unit `e_{ab}` (zero-based).
    pub fn unit(&self, a: usize, b: usize) -> u32 {
        self.exps[generator_rank(self.n, a, b)]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Letters in rank order.
    pub fn letters(&self) -> Vec<usize> {
        self.exps.iter().enumerate().flat_map(|(g, &k)| std::iter::repeat_n(g, k as usize)).collect()
    }

    /// `f` exponents as an upper-triangular matrix: entry `(i, j)` for `f_{ij}`.
    pub fn f_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| if i < j { self.unit(j, i) } else { 0 }).collect()).collect()
    }

    pub fn e_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| if i < j { self.unit(i, j) } else { 0 }).collect()).collect()
    }

    pub fn h_vector(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.unit(i, i)).collect()
    }

    /// The weight `Σ k·(ε_a − ε_b)` moved by the off-diagonal letters.
    pub fn weight_shift(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.n];
        for (g, &(a, b)) in units(self.n).iter().enumerate() {
            if a != b {
                v[a] += self.exps[g] as i64;
                v[b] -= self.exps[g] as i64;
            }
        }
        v
    }
}

/// A finite rational combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    n: usize,
    terms: BTreeMap<PBWMonomial, Q>,
}

/// `[e_{ab}, e_{cd}] = δ_{bc} e_{ad} − δ_{da} e_{cb}` as ranked generators.
fn bracket(n: usize, x: usize, y: usize) -> Vec<(usize, i64)> {
    let (a, b) = units(n)[x];
    let (c, d) = units(n)[y];
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(2);
    if b == c {
        out.push((generator_rank(n, a, d), 1));
    }
    if d == a {
        let g = generator_rank(n, c, b);
        match out.iter_mut().find(|(h, _)| *h == g) {
            Some(t) => t.1 -= 1,
            None => out.push((g, -1)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

type Expansion = Arc<Vec<(Vec<u32>, Q)>>;

type ProductCache = Mutex<HashMap<(Vec<u32>, usize), Expansion>>;

fn cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Normal form of `m · g`.
///
/// Writing `m = P·q_1⋯q_s` with every `q_t > g` and `P ≤ g`,
/// `m·g = P g q_1⋯q_s + Σ_t (P q_1⋯q_{t−1} [q_t, g]) q_{t+1}⋯q_s`.
/// Every recursive call is on a monomial of lower degree than `m`.
fn times_generator(n: usize, m: &[u32], g: usize) -> Expansion {
    if let Some(hit) = cache().lock().unwrap().get(&(m.to_vec(), g)) {
        return hit.clone();
    }
    let mut acc: HashMap<Vec<u32>, Q> = HashMap::new();
    let mut main = m.to_vec();
    main[g] += 1;
    acc.insert(main, Q::one());

    let tail: Vec<usize> = (g + 1..m.len()).flat_map(|h| std::iter::repeat_n(h, m[h] as usize)).collect();
    let mut prefix = m.to_vec();
    for x in prefix.iter_mut().skip(g + 1) {
        *x = 0;
    }
    for (t, &q) in tail.iter().enumerate() {
        for (h, c) in bracket(n, q, g) {
            let mut cur: HashMap<Vec<u32>, Q> = HashMap::new();
            for (mono, x) in times_generator(n, &prefix, h).iter() {
                *cur.entry(mono.clone()).or_insert_with(Q::zero) += x * BigInt::from(c);
            }
            for &later in &tail[t + 1..] {
                let mut next: HashMap<Vec<u32>, Q> = HashMap::new();
                for (mono, x) in cur {
                    for (m2, y) in times_generator(n, &mono, later).iter() {
                        *next.entry(m2.clone()).or_insert_with(Q::zero) += &x * y;
                    }
                }
                cur = next;
            }
            for (mono, x) in cur {
                *acc.entry(mono).or_insert_with(Q::zero) += x;
            }
        }
        prefix[q] += 1;
    }
    let mut out: Vec<(Vec<u32>, Q)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    out.sort();
    let out = Arc::new(out);
    cache().lock().unwrap().insert((m.to_vec(), g), out.clone());
    out
}

impl UElement {
    pub fn zero(n: usize) -> Self {
        UElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        UElement::monomial(PBWMonomial::one(n), Q::one())
    }

    pub fn monomial(m: PBWMonomial, c: Q) -> Self {
        let mut u = UElement::zero(m.n);
        u.add_term(m, c);
        u
    }

    /// The matrix unit `e_{ab}` (one-based).
    pub fn unit(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::IndexOutOfRange { entry: a.max(b), n });
        }
        let mut m = PBWMonomial::one(n);
        m.exps[generator_rank(n, a - 1, b - 1)] = 1;
        Ok(UElement::monomial(m, Q::one()))
    }

    /// `H_i` (one-based).
    pub fn h(n: usize, i: usize) -> Result<Self> {
        UElement::unit(n, i, i)
    }

    /// `e_i = e_{i,i+1}` (one-based).
    pub fn e(n: usize, i: usize) -> Result<Self> {
        UElement::unit(n, i, i + 1)
    }

    /// `f_i = e_{i+1,i}` (one-based).
    pub fn f(n: usize, i: usize) -> Result<Self> {
        UElement::unit(n, i + 1, i)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (PBWMonomial, Q)>) -> Result<Self> {
        let mut u = UElement::zero(n);
        for (m, c) in terms {
            if m.n != n {
                return Err(Error::LengthMismatch { left: n, right: m.n });
            }
            u.add_term(m, c);
        }
        Ok(u)
    }

    pub(crate) fn add_term(&mut self, m: PBWMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<PBWMonomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(PBWMonomial::degree).max().unwrap_or(0)
    }

    fn check(&self, other: &UElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &UElement) -> Result<UElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UElement) -> Result<UElement> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> UElement {
        let mut out = UElement::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// The product, straightened to PBW normal form.
    pub fn multiply(&self, other: &UElement) -> Result<UElement> {
        self.check(other)?;
        let n = self.n;
        let mut acc: HashMap<Vec<u32>, Q> = HashMap::new();
        for (y, cy) in &other.terms {
            let letters = y.letters();
            for (x, cx) in &self.terms {
                let mut cur: HashMap<Vec<u32>, Q> = HashMap::from([(x.exps.clone(), cx * cy)]);
                for &g in &letters {
                    let mut next: HashMap<Vec<u32>, Q> = HashMap::new();
                    for (mono, c) in cur {
                        for (m2, z) in times_generator(n, &mono, g).iter() {
                            *next.entry(m2.clone()).or_insert_with(Q::zero) += &c * z;
                        }
                    }
                    cur = next;
                }
                for (mono, c) in cur {
                    *acc.entry(mono).or_insert_with(Q::zero) += c;
                }
            }
        }
        let mut out = UElement::zero(n);
        for (exps, c) in acc {
            out.add_term(PBWMonomial { n, exps }, c);
        }
        Ok(out)
    }

    pub fn is_integral_in_plain_coords(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({ "f": m.f_matrix(), "h": m.h_vector(), "e": m.e_matrix(), "coeff": q_to_string(c) }))
            .collect();
        json!({ "n": self.n, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<UElement> {
        let bad = |what: &str| Error::InvalidArgument(format!("UElement JSON: {what}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let mut out = UElement::zero(n);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let get = |k: &str| t.get(k).cloned().unwrap_or(Value::Null);
            let f: Vec<Vec<u32>> = serde_json::from_value(get("f")).map_err(|e| bad(&e.to_string()))?;
            let h: Vec<u32> = serde_json::from_value(get("h")).map_err(|e| bad(&e.to_string()))?;
            let e: Vec<Vec<u32>> = serde_json::from_value(get("e")).map_err(|e| bad(&e.to_string()))?;
            let c = match get("coeff") {
                Value::String(s) => parse_q(&s).ok_or_else(|| bad("coeff"))?,
                other => crate::rational::q_from_json(&other).ok_or_else(|| bad("coeff"))?,
            };
            let m = PBWMonomial::from_parts(&f, &h, &e)?;
            if m.n != n {
                return Err(bad("n"));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

/// Coefficients of `binom(x, b)` as a polynomial in `x`, lowest degree first.
pub fn binomial_polynomial(b: u32) -> Vec<Q> {
    let mut poly = vec![BigInt::one()];
    for t in 0..b {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigInt::from(t);
        }
        poly = next;
    }
    let denom = factorial(b as u64);
    poly.into_iter().map(|c| Q::new(c, denom.clone())).collect()
}

/// `∏_i binom(H_i, b_i)`.
pub fn h_binomial(b: &[u32]) -> UElement {
    let n = b.len();
    let mut out = UElement::one(n);
    for (i, &bi) in b.iter().enumerate() {
        let mut factor = UElement::zero(n);
        for (k, c) in binomial_polynomial(bi).into_iter().enumerate() {
            let mut m = PBWMonomial::one(n);
            m.exps[generator_rank(n, i, i)] = k as u32;
            factor.add_term(m, c);
        }
        out = out.multiply(&factor).expect("same n");
    }
    out
}

/// Which side of the H-part carries the divided powers of the `f`s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `∏f^{(·)} ∏binom(H, ·) ∏e^{(·)}`.
    FFirst,
    /// `∏e^{(·)} ∏binom(H, ·) ∏f^{(·)}`.
    EFirst,
}

fn check_pattern(pattern: &MarginMatrix) -> Result<()> {
    let n = pattern.n();
    for i in 0..n {
        for j in 0..n {
            if i != j && pattern.get(i, j) < 0 {
                return Err(Error::NotNonnegative(format!("{:?}", pattern.rows())));
            }
        }
    }
    Ok(())
}

/// `∏_{i<j} f_{ij}^{(p_{ji})}`, in rank order.
pub fn divided_f(pattern: &MarginMatrix) -> Result<UElement> {
    divided_part(pattern, true)
}

/// `∏_{i<j} e_{ij}^{(p_{ij})}`, in rank order.
pub fn divided_e(pattern: &MarginMatrix) -> Result<UElement> {
    divided_part(pattern, false)
}

fn divided_part(pattern: &MarginMatrix, lower: bool) -> Result<UElement> {
    check_pattern(pattern)?;
    let n = pattern.n();
    let mut m = PBWMonomial::one(n);
    let mut denom = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = if lower { (j, i) } else { (i, j) };
            let k = pattern.get(a, b) as u32;
            m.exps[generator_rank(n, a, b)] = k;
            denom *= factorial(k as u64);
        }
    }
    Ok(UElement::monomial(m, Q::new(BigInt::one(), denom)))
}

/// The divided-power monomial with off-diagonal exponents from `pattern`
/// (entry `(a, b)` is the exponent of `e_{ab}`) and H-binomials `b`.
pub fn divided_monomial(pattern: &MarginMatrix, b: &[u32], side: Side) -> Result<UElement> {
    if b.len() != pattern.n() {
        return Err(Error::LengthMismatch { left: pattern.n(), right: b.len() });
    }
    let f = divided_f(pattern)?;
    let e = divided_e(pattern)?;
    let h = h_binomial(b);
    match side {
        Side::FFirst => f.multiply(&h)?.multiply(&e),
        Side::EFirst => e.multiply(&h)?.multiply(&f),
    }
}

/// Stirling numbers of the second kind `S(k, j)` for `k, j ≤ max`.
fn stirling2(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for k in 1..=max {
        for j in 1..=k {
            s[k][j] = BigInt::from(j) * &s[k - 1][j] + &s[k - 1][j - 1];
        }
    }
    s
}

/// Coordinates in the basis `∏f^{(a)} ∏binom(H, b) ∏e^{(c)}`; the monomial key
/// records `(a, b, c)`.
#[derive(Clone, Debug)]
pub struct DividedCoords {
    pub coords: BTreeMap<PBWMonomial, Q>,
    /// Every coordinate is an integer, i.e. the element lies in the ℤ-form.
    pub integral: bool,
}

pub fn integrality_coords(u: &UElement) -> DividedCoords {
    let n = u.n;
    let max_h = u.terms.keys().flat_map(|m| (0..n).map(|i| m.unit(i, i))).max().unwrap_or(0) as usize;
    let s2 = stirling2(max_h);
    let mut coords: BTreeMap<PBWMonomial, Q> = BTreeMap::new();
    for (m, c) in &u.terms {
        // f^a H^β e^c = a! c! f^{(a)} H^β e^{(c)}, and H^k = Σ_j S(k, j) j! binom(H, j).
        let mut scale = BigInt::one();
        for (g, &(a, b)) in units(n).iter().enumerate() {
            if a != b {
                scale *= factorial(m.exps[g] as u64);
            }
        }
        let mut partial: Vec<(PBWMonomial, BigInt)> = vec![(m.clone(), scale)];
        for i in 0..n {
            let g = generator_rank(n, i, i);
            let k = m.exps[g] as usize;
            let mut next = Vec::new();
            for (mono, x) in partial {
                for (j, s) in s2[k].iter().enumerate().take(k + 1) {
                    if s.is_zero() {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2.exps[g] = j as u32;
                    next.push((m2, &x * s * factorial(j as u64)));
                }
            }
            partial = next;
        }
        for (mono, x) in partial {
            *coords.entry(mono).or_insert_with(Q::zero) += c * x;
        }
    }
    coords.retain(|_, x| !x.is_zero());
    let integral = coords.values().all(is_integral);
    DividedCoords { coords, integral }
}

/// All exponent vectors on `n²` generators with total degree at most `d`.
pub fn monomials_upto(n: usize, d: u32) -> Vec<PBWMonomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n * n], &mut out);
    let mut monos: Vec<PBWMonomial> = out.into_iter().map(|exps| PBWMonomial { n, exps }).collect();
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
    monos
}

/// Writes the e-first divided basis of degree `≤ d` in the f-first divided
/// basis; the degree filtration makes the matrix square.
pub fn ubas_change(n: usize, d: u32) -> Result<ChangeOfBasis> {
    let monos = monomials_upto(n, d);
    let mut targets: Vec<SparseVec<PBWMonomial>> = Vec::with_capacity(monos.len());
    for m in &monos {
        let pattern = pattern_of(m);
        let u = divided_monomial(&pattern, &m.h_vector(), Side::EFirst)?;
        targets.push(integrality_coords(&u).coords);
    }
    let basis: Vec<SparseVec<PBWMonomial>> = monos.iter().map(|m| BTreeMap::from([(m.clone(), Q::one())])).collect();
    Ok(change_of_basis(&targets, &basis))
}

/// The off-diagonal exponents of a monomial as a pattern matrix.
pub fn pattern_of(m: &PBWMonomial) -> MarginMatrix {
    let n = m.n;
    let rows = (0..n).map(|a| (0..n).map(|b| if a == b { 0 } else { m.unit(a, b) as i64 }).collect()).collect();
    MarginMatrix::from_rows(rows, crate::weights::MatrixMode::OffDiagonal).expect("off-diagonal entries are nonnegative")
}

/// `dρ(u)` as an operator on `E^{⊗r}`: `e_{ab}` acts as the derivation
/// `Σ_k id ⊗ ⋯ ⊗ E_{ab} ⊗ ⋯ ⊗ id`.
pub struct DRho<'a>(pub &'a UElement);

fn apply_unit(space: &TensorSpace, a: usize, b: usize, v: &TensorVec) -> TensorVec {
    let mut out = TensorVec::new();
    for (code, x) in v {
        let mut word = space.decode(*code);
        if a == b {
            let count = word.iter().filter(|&&l| l == a + 1).count();
            if count > 0 {
                add_into(&mut out, *code, x * BigInt::from(count));
            }
            continue;
        }
        for k in 0..word.len() {
            if word[k] == b + 1 {
                word[k] = a + 1;
                add_into(&mut out, space.encode(&word), x.clone());
                word[k] = b + 1;
            }
        }
    }
    out
}

impl Operator for DRho<'_> {
    fn apply(&self, space: &TensorSpace, v: &TensorVec) -> TensorVec {
        let u = self.0;
        assert_eq!(u.n, space.n(), "dρ: rank mismatch");
        let mut out = TensorVec::new();
        for (m, c) in &u.terms {
            let mut cur = v.clone();
            for g in m.letters().into_iter().rev() {
                let (a, b) = units(u.n)[g];
                cur = apply_unit(space, a, b, &cur);
                if cur.is_empty() {
                    break;
                }
            }
            for (code, x) in cur {
                add_into(&mut out, code, x * c);
            }
        }
        out
    }
}

pub fn d_rho(u: &UElement, r: usize) -> Result<TensorEndo> {
    let space = TensorSpace::new(u.n, r)?;
    Ok(TensorEndo::from_operator(space, &DRho(u)))
}

/// `dρ(∏ binom(H_i, λ_i))` equals the ξ-basis idempotent `1_λ`.
pub fn verify_idempotent_lemma(lambda: &Weight) -> Result<bool> {
    lambda.require_composition()?;
    let b: Vec<u32> = lambda.entries().iter().map(|&x| x as u32).collect();
    let r = lambda.degree() as usize;
    let lhs = d_rho(&h_binomial(&b), r)?;
    let rhs = idempotent(lambda)?.to_endo()?;
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PbwForm {
    /// `∏f^{(a_{ji})} 1_{λ⁻(A)} ∏e^{(a_{ij})}`.
    #[serde(rename = "PSA-a")]
    PsaA,
    /// `∏e^{(a_{ij})} 1_{λ⁺(A)} ∏f^{(a_{ji})}`.
    #[serde(rename = "PSA-b")]
    PsaB,
    /// `1_{row(A)} ∏f^{(a_{ji})} ∏e^{(a_{ij})} 1_{col(A)}`.
    #[serde(rename = "Zbas-a")]
    ZbasA,
    /// `1_{row(A)} ∏e^{(a_{ij})} ∏f^{(a_{ji})} 1_{col(A)}`.
    #[serde(rename = "Zbas-b")]
    ZbasB,
}

impl PbwForm {
    pub const ALL: [PbwForm; 4] = [PbwForm::PsaA, PbwForm::PsaB, PbwForm::ZbasA, PbwForm::ZbasB];

    pub fn name(self) -> &'static str {
        match self {
            PbwForm::PsaA => "PSA-a",
            PbwForm::PsaB => "PSA-b",
            PbwForm::ZbasA => "Zbas-a",
            PbwForm::ZbasB => "Zbas-b",
        }
    }

    pub fn parse(s: &str) -> Option<PbwForm> {
        PbwForm::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

fn monomial_shift(u: &UElement) -> Vec<i64> {
    u.terms.keys().next().map(PBWMonomial::weight_shift).unwrap_or_else(|| vec![0; u.n])
}

/// The image in `S(n, r)` of the divided-power element of the given form.
pub fn pbw_image(a: &MarginMatrix, form: PbwForm) -> Result<SchurElement> {
    if a.mode() != crate::weights::MatrixMode::Nonnegative {
        return Err(Error::InvalidArgument("pbw_image needs a matrix in Theta(n,r)".into()));
    }
    let n = a.n();
    let r = a.total() as usize;
    let space = TensorSpace::new(n, r)?;
    let f = divided_f(a)?;
    let e = divided_e(a)?;
    let (df, de) = (DRho(&f), DRho(&e));
    let add = |w: &Weight, s: &[i64]| Weight::new(w.entries().iter().zip(s).map(|(x, y)| x + y).collect());
    let sub = |w: &Weight, s: &[i64]| Weight::new(w.entries().iter().zip(s).map(|(x, y)| x - y).collect());
    let (left, right, middle, ops): (Weight, Weight, Weight, [&dyn Operator; 2]) = match form {
        PbwForm::PsaA => {
            let mid = a.lambda_minus();
            (add(&mid, &monomial_shift(&f))?, sub(&mid, &monomial_shift(&e))?, mid, [&df, &de])
        }
        PbwForm::PsaB => {
            let mid = a.lambda_plus();
            (add(&mid, &monomial_shift(&e))?, sub(&mid, &monomial_shift(&f))?, mid, [&de, &df])
        }
        PbwForm::ZbasA => {
            let (row, col) = (a.row_sums(), a.col_sums());
            (row, col.clone(), col, [&df, &de])
        }
        PbwForm::ZbasB => {
            let (row, col) = (a.row_sums(), a.col_sums());
            (row, col.clone(), col, [&de, &df])
        }
    };
    if !left.is_composition() || !right.is_composition() || !middle.is_composition() {
        return Ok(SchurElement::zero(n, r));
    }
    let pl = WeightProjection(left.clone());
    let pm = WeightProjection(middle);
    let pr = WeightProjection(right.clone());
    let chain = match form {
        PbwForm::PsaA | PbwForm::PsaB => Chain(vec![&pl, ops[0], &pm, ops[1], &pr]),
        PbwForm::ZbasA | PbwForm::ZbasB => Chain(vec![&pl, ops[0], ops[1], &pr]),
    };
    decompose_block(&space, &chain, &left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use crate::weights::{compositions, theta};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit(n: usize, a: usize, b: usize) -> UElement {
        UElement::unit(n, a, b).unwrap()
    }

    fn mul(x: &UElement, y: &UElement) -> UElement {
        x.multiply(y).unwrap()
    }

    #[test]
    fn ranks_match_order() {
        for n in 1..=4 {
            for (g, &(a, b)) in generator_order(n).iter().enumerate() {
                assert_eq!(generator_rank(n, a, b), g);
            }
        }
    }

    #[test]
    fn commutator_e_f() {
        let e = UElement::e(2, 1).unwrap();
        let f = UElement::f(2, 1).unwrap();
        let lhs = mul(&e, &f).sub(&mul(&f, &e)).unwrap();
        let rhs = UElement::h(2, 1).unwrap().sub(&UElement::h(2, 2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_past_root_vector() {
        let n = 3;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if j == k {
                        continue;
                    }
                    let h = UElement::h(n, i).unwrap();
                    let x = unit(n, j, k);
                    let delta = (i == j) as i64 - (i == k) as i64;
                    let rhs = mul(&x, &h).add(&x.scale(&q(delta))).unwrap();
                    assert_eq!(mul(&h, &x), rhs);
                }
            }
        }
    }

    #[test]
    fn divided_examples() {
        let zero = MarginMatrix::from_rows(vec![vec![0, 0], vec![0, 0]], crate::weights::MatrixMode::OffDiagonal).unwrap();
        assert_eq!(divided_monomial(&zero, &[0, 0], Side::FFirst).unwrap(), UElement::one(2));
        let f2 = MarginMatrix::from_rows(vec![vec![0, 0], vec![2, 0]], crate::weights::MatrixMode::OffDiagonal).unwrap();
        let u = divided_monomial(&f2, &[0, 0], Side::FFirst).unwrap();
        let f = UElement::f(2, 1).unwrap();
        assert_eq!(u, mul(&f, &f).scale(&q_frac(1, 2)));
        let b = divided_monomial(&zero, &[2, 0], Side::FFirst).unwrap();
        let h = UElement::h(2, 1).unwrap();
        assert_eq!(b, mul(&h, &h).sub(&h).unwrap().scale(&q_frac(1, 2)));
    }

    #[test]
    fn integrality_examples() {
        let f = UElement::f(2, 1).unwrap();
        let fa = |a: u32| {
            let p = MarginMatrix::from_rows(vec![vec![0, 0], vec![a as i64, 0]], crate::weights::MatrixMode::OffDiagonal).unwrap();
            divided_monomial(&p, &[0, 0], Side::FFirst).unwrap()
        };
        let c = integrality_coords(&mul(&fa(2), &fa(3)));
        assert!(c.integral);
        let key = integrality_coords(&fa(5)).coords.into_keys().next().unwrap();
        assert_eq!(c.coords[&key], q(10));
        assert!(!integrality_coords(&f.scale(&q_frac(1, 2))).integral);
        // binom(H, 2) has coordinate 1 on itself
        let b = h_binomial(&[2, 0]);
        let c = integrality_coords(&b);
        assert_eq!(c.coords.len(), 1);
        assert!(c.integral);
    }

    #[test]
    fn random_divided_products_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut u = UElement::one(2);
            for _ in 0..3 {
                let a = rng.gen_range(0..=3);
                let which = rng.gen_range(0..3);
                let rows = match which {
                    0 => vec![vec![0, a], vec![0, 0]],
                    1 => vec![vec![0, 0], vec![a, 0]],
                    _ => vec![vec![0, 0], vec![0, 0]],
                };
                let p = MarginMatrix::from_rows(rows, crate::weights::MatrixMode::OffDiagonal).unwrap();
                let h = if which == 2 { [a as u32, 0] } else { [0, 0] };
                u = mul(&u, &divided_monomial(&p, &h, Side::FFirst).unwrap());
            }
            assert!(integrality_coords(&u).integral);
        }
    }

    #[test]
    fn d_rho_basics() {
        let sp = TensorSpace::new(2, 2).unwrap();
        let one = d_rho(&UElement::one(2), 2).unwrap();
        assert_eq!(one, TensorEndo::identity(sp));
        let h1 = d_rho(&UElement::h(2, 1).unwrap(), 2).unwrap();
        for code in 0..sp.dim() {
            assert_eq!(h1.entry(code, code), q(sp.weight(code).entries()[0]));
        }
        let e = UElement::e(2, 1).unwrap();
        let f = UElement::f(2, 1).unwrap();
        let comm = mul(&e, &f).sub(&mul(&f, &e)).unwrap();
        let h = UElement::h(2, 1).unwrap().sub(&UElement::h(2, 2).unwrap()).unwrap();
        assert_eq!(d_rho(&comm, 2).unwrap(), d_rho(&h, 2).unwrap());
    }

    fn random_element(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> UElement {
        let mut u = UElement::zero(n);
        for _ in 0..rng.gen_range(1..=2) {
            let mut word = UElement::one(n);
            for _ in 0..rng.gen_range(0..=max_deg) {
                let a = rng.gen_range(1..=n);
                let b = rng.gen_range(1..=n);
                word = mul(&word, &unit(n, a, b));
            }
            u = u.add(&word.scale(&q(rng.gen_range(-2..=2)))).unwrap();
        }
        u
    }

    #[test]
    fn homomorphism_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = random_element(&mut rng, 3, 2);
            let y = random_element(&mut rng, 3, 2);
            let lhs = d_rho(&mul(&x, &y), 3).unwrap();
            let rhs = d_rho(&x, 3).unwrap().compose(&d_rho(&y, 3).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn idempotent_lemma() {
        for n in 1..=3 {
            for r in 0..=3 {
                for l in compositions(n, r) {
                    assert!(verify_idempotent_lemma(&l).unwrap(), "{l}");
                }
            }
        }
    }

    #[test]
    fn pbw_image_examples() {
        for l in compositions(2, 3) {
            let d = MarginMatrix::diagonal(&l).unwrap();
            for form in PbwForm::ALL {
                assert_eq!(pbw_image(&d, form).unwrap(), idempotent(&l).unwrap());
            }
        }
        let a = MarginMatrix::nonnegative(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let img = pbw_image(&a, PbwForm::ZbasA).unwrap();
        assert!(img.is_integral());
        assert!(!img.is_zero());
    }

    #[test]
    fn psa_forms_are_integral_bases() {
        for (n, r) in [(2, 2), (2, 3), (3, 2)] {
            let xi = crate::schur::schur_basis(n, r).unwrap();
            for form in [PbwForm::PsaA, PbwForm::PsaB] {
                let imgs: Vec<_> = theta(n, r).iter().map(|a| pbw_image(a, form).unwrap()).collect();
                let ch = crate::codet::unimodular_change(&imgs, &xi).unwrap();
                assert!(ch.unimodular, "{form:?} n={n} r={r}");
            }
        }
    }

    #[test]
    fn ubas_orders_unimodular() {
        assert!(ubas_change(2, 3).unwrap().unimodular);
        assert!(ubas_change(3, 2).unwrap().unimodular);
    }

    #[test]
    fn json_roundtrip() {
        let u = mul(&UElement::e(3, 1).unwrap(), &UElement::f(3, 2).unwrap()).add(&UElement::h(3, 3).unwrap().scale(&q_frac(-3, 4))).unwrap();
        assert_eq!(UElement::from_json(&u.to_json()).unwrap(), u);
    }
}
