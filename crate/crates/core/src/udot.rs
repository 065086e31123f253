//! The modified form `U̇` of `U(gl_n)`.
//!
//! An element of `1_λ U̇ 1_μ` is a combination of off-diagonal patterns `p`,
//! each standing for `1_λ ∏f_{ij}^{(p_{ji})} ∏e_{ij}^{(p_{ij})} 1_μ`. Products
//! are formed in `U`, straightened, and the H-part of each normal term is
//! evaluated against the weight it meets on the right.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{change_of_basis, ChangeOfBasis, SparseVec, SpanSolver};
use crate::pbw::{divided_e, divided_f, DRho, PBWMonomial, UElement};
use crate::perm::Permutation;
use crate::rational::{factorial, is_integral, parse_q, q_to_string, Q};
use crate::schur::{decompose_block, SchurElement, SymmetricGroupIso, WeightProjection};
use crate::tensor::{Chain, TensorSpace};
use crate::weights::{margin_matrices, MarginMatrix, MatrixMode, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdotElement {
    left: Weight,
    right: Weight,
    terms: BTreeMap<MarginMatrix, Q>,
}

/// `Σ_{a≠b} p_{ab}(ε_a − ε_b)`.
pub fn pattern_weight(p: &MarginMatrix) -> Vec<i64> {
    let n = p.n();
    let mut v = vec![0i64; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                v[a] += p.get(a, b);
                v[b] -= p.get(a, b);
            }
        }
    }
    v
}

pub fn pattern_degree(p: &MarginMatrix) -> i64 {
    let n = p.n();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).map(|(a, b)| p.get(a, b)).sum()
}

/// Normalizes a pattern: off-diagonal mode with zero diagonal.
pub fn pattern(rows: Vec<Vec<i64>>) -> Result<MarginMatrix> {
    let n = rows.len();
    let mut rows = rows;
    for (i, row) in rows.iter_mut().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidArgument("pattern must be square".into()));
        }
        row[i] = 0;
    }
    MarginMatrix::from_rows(rows, MatrixMode::OffDiagonal)
}

fn strip_diagonal(a: &MarginMatrix) -> MarginMatrix {
    pattern(a.rows()).expect("off-diagonal entries of a valid matrix")
}

fn satisfies(lambda: &Weight, mu: &Weight, p: &MarginMatrix) -> bool {
    let w = pattern_weight(p);
    lambda.entries().iter().zip(mu.entries()).zip(&w).all(|((l, m), s)| l - m == *s)
}

impl UdotElement {
    pub fn zero(left: Weight, right: Weight) -> Result<Self> {
        if left.n() != right.n() {
            return Err(Error::LengthMismatch { left: left.n(), right: right.n() });
        }
        Ok(UdotElement { left, right, terms: BTreeMap::new() })
    }

    pub fn idempotent(lambda: &Weight) -> Self {
        let n = lambda.n();
        let mut u = UdotElement::zero(lambda.clone(), lambda.clone()).expect("same n");
        u.terms.insert(pattern(vec![vec![0; n]; n]).expect("zero pattern"), Q::one());
        u
    }

    /// The basis element `1_λ ∏f^{(p_{ji})} ∏e^{(p_{ij})} 1_μ`.
    pub fn basis(lambda: &Weight, mu: &Weight, p: &MarginMatrix) -> Result<Self> {
        let mut u = UdotElement::zero(lambda.clone(), mu.clone())?;
        u.add_term(p.clone(), Q::one())?;
        Ok(u)
    }

    pub fn from_terms(lambda: &Weight, mu: &Weight, terms: impl IntoIterator<Item = (MarginMatrix, Q)>) -> Result<Self> {
        let mut u = UdotElement::zero(lambda.clone(), mu.clone())?;
        for (p, c) in terms {
            u.add_term(p, c)?;
        }
        Ok(u)
    }

    pub fn add_term(&mut self, p: MarginMatrix, c: Q) -> Result<()> {
        if p.n() != self.left.n() {
            return Err(Error::LengthMismatch { left: self.left.n(), right: p.n() });
        }
        let p = strip_diagonal(&p);
        if !satisfies(&self.left, &self.right, &p) {
            return Err(Error::InvalidArgument(format!(
                "pattern {:?} does not connect {} to {}",
                p.rows(),
                self.right,
                self.left
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(p.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn left(&self) -> &Weight {
        &self.left
    }

    pub fn right(&self) -> &Weight {
        &self.right
    }

    pub fn terms(&self) -> &BTreeMap<MarginMatrix, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &MarginMatrix) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    pub fn degree(&self) -> i64 {
        self.terms.keys().map(pattern_degree).max().unwrap_or(0)
    }

    fn check(&self, other: &UdotElement) -> Result<()> {
        if (&self.left, &self.right) != (&other.left, &other.right) {
            return Err(Error::InvalidArgument(format!(
                "cannot add elements of 1_{}U1_{} and 1_{}U1_{}",
                self.left, self.right, other.left, other.right
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &UdotElement) -> Result<UdotElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UdotElement) -> Result<UdotElement> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> UdotElement {
        let mut out = self.clone();
        out.terms = self.terms.iter().map(|(p, x)| (p.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect();
        out
    }

    /// `Σ c_p ∏f^{(p_{ji})} ∏e^{(p_{ij})}` in `U`, forgetting the idempotents.
    pub fn lift(&self) -> UElement {
        let mut out = UElement::zero(self.n());
        for (p, c) in &self.terms {
            let term = divided_f(p).and_then(|f| f.multiply(&divided_e(p)?)).expect("valid pattern");
            out = out.add(&term.scale(c)).expect("same n");
        }
        out
    }

    pub fn multiply(&self, other: &UdotElement) -> Result<UdotElement> {
        udot_multiply(self, other)
    }

    /// Adds `k(1, …, 1)` to both weights.
    pub fn shift(&self, k: i64) -> UdotElement {
        UdotElement { left: self.left.shifted(k), right: self.right.shifted(k), terms: self.terms.clone() }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(p, c)| json!({ "pattern": p.rows(), "coeff": q_to_string(c) })).collect();
        json!({ "left": self.left.entries(), "right": self.right.entries(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<UdotElement> {
        let bad = |what: &str| Error::InvalidArgument(format!("UdotElement JSON: {what}"));
        let weight = |k: &str| -> Result<Weight> {
            let e: Vec<i64> =
                serde_json::from_value(v.get(k).cloned().unwrap_or(Value::Null)).map_err(|e| bad(&e.to_string()))?;
            Weight::new(e)
        };
        let mut u = UdotElement::zero(weight("left")?, weight("right")?)?;
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let rows: Vec<Vec<i64>> = serde_json::from_value(t.get("pattern").cloned().unwrap_or(Value::Null))
                .map_err(|e| bad(&e.to_string()))?;
            let c = match t.get("coeff") {
                Some(Value::String(s)) => parse_q(s).ok_or_else(|| bad("coeff"))?,
                Some(other) => crate::rational::q_from_json(other).ok_or_else(|| bad("coeff"))?,
                None => return Err(bad("missing coeff")),
            };
            u.add_term(pattern(rows)?, c)?;
        }
        Ok(u)
    }
}

/// `1_λ · u · 1_μ` for `u ∈ U` in normal form: H-parts are evaluated on the
/// weight reached after the e-part acts on `1_μ`, and terms of the wrong
/// total weight are dropped.
pub fn project(lambda: &Weight, mu: &Weight, u: &UElement) -> Result<UdotElement> {
    let n = mu.n();
    if u.n() != n {
        return Err(Error::LengthMismatch { left: n, right: u.n() });
    }
    let mut out = UdotElement::zero(lambda.clone(), mu.clone())?;
    for (m, c) in u.terms() {
        let (p, scalar) = evaluate(m, mu);
        if scalar.is_zero() || !satisfies(lambda, mu, &p) {
            continue;
        }
        out.add_term(p, c * scalar)?;
    }
    Ok(out)
}

/// Splits `f^α H^β e^γ 1_μ` into its divided pattern and scalar factor.
fn evaluate(m: &PBWMonomial, mu: &Weight) -> (MarginMatrix, Q) {
    let n = m.n();
    let mut rows = vec![vec![0i64; n]; n];
    let mut shift = vec![0i64; n];
    let mut scale = BigInt::one();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let k = m.unit(a, b);
            rows[a][b] = k as i64;
            scale *= factorial(k as u64);
            if a < b {
                shift[a] += k as i64;
                shift[b] -= k as i64;
            }
        }
    }
    for (i, s) in shift.iter().enumerate() {
        let beta = m.unit(i, i);
        if beta > 0 {
            scale *= BigInt::from(mu.entries()[i] + s).pow(beta);
        }
    }
    (pattern(rows).expect("nonnegative"), Q::from_integer(scale))
}

/// The product in `U̇`; zero unless `u.right = v.left`.
pub fn udot_multiply(u: &UdotElement, v: &UdotElement) -> Result<UdotElement> {
    if u.n() != v.n() {
        return Err(Error::LengthMismatch { left: u.n(), right: v.n() });
    }
    if u.right != v.left || u.is_zero() || v.is_zero() {
        return UdotElement::zero(u.left.clone(), v.right.clone());
    }
    let product = u.lift().multiply(&v.lift())?;
    project(&u.left, &v.right, &product)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorSide {
    E,
    F,
}

/// `e_i^{(a)} 1_λ` or `f_i^{(a)} 1_λ` (one-based `i`).
pub fn divided_generators(i: usize, a: u32, lambda: &Weight, side: GeneratorSide) -> Result<UdotElement> {
    let n = lambda.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { entry: i, n });
    }
    let mut rows = vec![vec![0i64; n]; n];
    let (x, y) = match side {
        GeneratorSide::E => (i - 1, i),
        GeneratorSide::F => (i, i - 1),
    };
    rows[x][y] = a as i64;
    let p = pattern(rows)?;
    let left = Weight::new(lambda.entries().iter().zip(pattern_weight(&p)).map(|(l, s)| l + s).collect())?;
    UdotElement::basis(&left, lambda, &p)
}

/// Every off-diagonal pattern of degree `≤ d` connecting `μ` to `λ`, by degree then pattern order.
pub fn udot_patterns(lambda: &Weight, mu: &Weight, d: u32) -> Result<Vec<MarginMatrix>> {
    if lambda.n() != mu.n() {
        return Err(Error::LengthMismatch { left: lambda.n(), right: mu.n() });
    }
    let n = lambda.n();
    if lambda.degree() != mu.degree() {
        return Ok(Vec::new());
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let target: Vec<i64> = lambda.entries().iter().zip(mu.entries()).map(|(l, m)| l - m).collect();
    let mut out = Vec::new();
    let mut rows = vec![vec![0i64; n]; n];
    fn rec(
        k: usize,
        left: i64,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<i64>>,
        target: &[i64],
        out: &mut Vec<MarginMatrix>,
    ) {
        if k == cells.len() {
            let p = pattern(rows.clone()).expect("nonnegative");
            if pattern_weight(&p) == target {
                out.push(p);
            }
            return;
        }
        let (a, b) = cells[k];
        for x in 0..=left {
            rows[a][b] = x;
            rec(k + 1, left - x, cells, rows, target, out);
        }
        rows[a][b] = 0;
    }
    rec(0, d as i64, &cells, &mut rows, &target, &mut out);
    out.sort_by(|a, b| pattern_degree(a).cmp(&pattern_degree(b)).then(a.cmp(b)));
    Ok(out)
}

/// The basis elements of `1_λ U̇ 1_μ` of degree `≤ d`; empty when `λ − μ` is
/// not in the root lattice.
pub fn udot_basis_upto(lambda: &Weight, mu: &Weight, d: u32) -> Result<Vec<UdotElement>> {
    udot_patterns(lambda, mu, d)?.iter().map(|p| UdotElement::basis(lambda, mu, p)).collect()
}

/// `1_λ ∏e^{(p_{ij})} ∏f^{(p_{ji})} 1_μ`, expanded in the f-first basis.
pub fn e_first_element(lambda: &Weight, mu: &Weight, p: &MarginMatrix) -> Result<UdotElement> {
    let p = strip_diagonal(p);
    if !satisfies(lambda, mu, &p) {
        return Err(Error::InvalidArgument(format!("pattern {:?} does not connect {mu} to {lambda}", p.rows())));
    }
    let u = divided_e(&p)?.multiply(&divided_f(&p)?)?;
    project(lambda, mu, &u)
}

/// Writes the e-first basis of degree `≤ d` in the f-first basis of `1_λ U̇ 1_μ`.
pub fn dotubas_change(lambda: &Weight, mu: &Weight, d: u32) -> Result<ChangeOfBasis> {
    let patterns = udot_patterns(lambda, mu, d)?;
    let targets: Vec<SparseVec<MarginMatrix>> = patterns
        .iter()
        .map(|p| e_first_element(lambda, mu, p).map(|u| u.terms.clone()))
        .collect::<Result<_>>()?;
    let basis: Vec<SparseVec<MarginMatrix>> =
        patterns.iter().map(|p| BTreeMap::from([(p.clone(), Q::one())])).collect();
    Ok(change_of_basis(&targets, &basis))
}

/// `1_λ dρ(lift u) 1_μ` in the ξ-basis of `S(n, r)`; zero when the weights are not in `Λ(n, r)`.
pub fn psi(u: &UdotElement, r: usize) -> Result<SchurElement> {
    let n = u.n();
    let inside = |w: &Weight| w.is_composition() && w.degree() == r as i64;
    if !inside(&u.left) || !inside(&u.right) || u.is_zero() {
        return Ok(SchurElement::zero(n, r));
    }
    let space = TensorSpace::new(n, r)?;
    let lifted = u.lift();
    let d = DRho(&lifted);
    let pl = WeightProjection(u.left.clone());
    let pr = WeightProjection(u.right.clone());
    decompose_block(&space, &Chain(vec![&pl, &d, &pr]), &u.left, &u.right)
}

/// `(λ_1 − λ_2, …, λ_{n−1} − λ_n)`.
pub fn weight_tilde(lambda: &Weight) -> Vec<i64> {
    lambda.tilde()
}

pub fn shift(u: &UdotElement, k: i64) -> UdotElement {
    u.shift(k)
}

/// Relabels generators `e_{ab} ↦ e_{w(a), w(b)}`, sending `1_λ U̇ 1_μ` onto `1_{wλ} U̇ 1_{wμ}`.
pub fn udot_weyl_relabel(u: &UdotElement, w: &Permutation) -> Result<UdotElement> {
    let n = u.n();
    if w.len() != n {
        return Err(Error::LengthMismatch { left: n, right: w.len() });
    }
    let lifted = u.lift();
    let mut image = UElement::zero(n);
    for (m, c) in lifted.terms() {
        let mut x = UElement::one(n);
        for &(a, b) in &m.letters().iter().map(|&g| crate::pbw::generator_order(n)[g]).collect::<Vec<_>>() {
            x = x.multiply(&UElement::unit(n, w.apply(a) + 1, w.apply(b) + 1)?)?;
        }
        image = image.add(&x.scale(c))?;
    }
    project(&u.left.permuted(w), &u.right.permuted(w), &image)
}

/// Rank of `psi` on the basis of degree `≤ d`, against `dim 1_λ S 1_μ`.
pub fn psi_rank(lambda: &Weight, mu: &Weight, d: u32) -> Result<(usize, usize)> {
    let r = lambda.degree() as usize;
    let images: Vec<SparseVec<MarginMatrix>> = udot_basis_upto(lambda, mu, d)?
        .par_iter()
        .map(|u| psi(u, r).map(|s| s.terms().clone()))
        .collect::<Result<_>>()?;
    let dim = margin_matrices(lambda, mu)?.len();
    Ok((crate::linalg::rank(&images), dim))
}

/// Structure constants of the generic algebra `U̇(λ)` for `n = 2` in the basis
/// `b_a = 1_λ f^{(a)} e^{(a)} 1_λ`.
#[derive(Clone, Debug, Serialize)]
pub struct Gl2Table {
    pub lambda: Vec<i64>,
    pub degree: u32,
    /// `products[a][c]` lists `(k, coefficient of b_k in b_a b_c)`.
    #[serde(serialize_with = "ser_products")]
    pub products: Vec<Vec<Vec<(u32, Q)>>>,
    pub unit: bool,
    pub commutative: bool,
    pub generated_by_b1: bool,
}

fn ser_products<S: serde::Serializer>(p: &[Vec<Vec<(u32, Q)>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(None)?;
    for (a, row) in p.iter().enumerate() {
        for (c, terms) in row.iter().enumerate() {
            let t: Vec<Value> = terms.iter().map(|(k, x)| json!({ "k": k, "coeff": q_to_string(x) })).collect();
            seq.serialize_element(&json!({ "a": a, "c": c, "terms": t }))?;
        }
    }
    seq.end()
}

/// `b_a` for `n = 2`.
pub fn gl2_b(lambda: &Weight, a: u32) -> Result<UdotElement> {
    if lambda.n() != 2 {
        return Err(Error::InvalidArgument("the gl2 table needs n = 2".into()));
    }
    UdotElement::basis(lambda, lambda, &pattern(vec![vec![0, a as i64], vec![a as i64, 0]])?)
}

fn b_coords(u: &UdotElement) -> Vec<(u32, Q)> {
    u.terms.iter().map(|(p, c)| (p.get(0, 1) as u32, c.clone())).rev().collect::<BTreeMap<_, _>>().into_iter().collect()
}

pub fn gl2_generic_table(lambda: &Weight, d: u32) -> Result<Gl2Table> {
    let b: Vec<UdotElement> = (0..=d).map(|a| gl2_b(lambda, a)).collect::<Result<_>>()?;
    let rows: Vec<Vec<UdotElement>> = b
        .par_iter()
        .map(|x| b.iter().map(|y| udot_multiply(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let unit = (0..=d as usize).all(|a| rows[0][a] == b[a] && rows[a][0] == b[a]);
    let commutative = (0..=d as usize).all(|a| (0..=d as usize).all(|c| rows[a][c] == rows[c][a]));
    let mut power = b[0].clone();
    let mut powers = vec![power.terms.clone()];
    for _ in 1..=d {
        power = udot_multiply(&power, &b[1])?;
        powers.push(power.terms.clone());
    }
    let generated_by_b1 = SpanSolver::from_vectors(&powers).rank() == d as usize + 1
        && powers.iter().all(|v| v.keys().all(|p| pattern_degree(p) <= 2 * d as i64));
    let products = rows.iter().map(|row| row.iter().map(b_coords).collect()).collect();
    Ok(Gl2Table { lambda: lambda.entries().to_vec(), degree: d, products, unit, commutative, generated_by_b1 })
}

/// Checks that `psi` restricted to `1_ω U̇ 1_ω` is an algebra map onto `1_ω S(r, r) 1_ω ≅ ℤΣ_r`.
#[derive(Clone, Debug, Serialize)]
pub struct U0Report {
    pub r: usize,
    pub degree: u32,
    pub spanning_set: usize,
    pub rank: usize,
    pub group_order: usize,
    pub images_in_group_algebra: bool,
    pub integral: bool,
    pub multiplicative: bool,
    pub witnesses: Vec<String>,
}

impl U0Report {
    pub fn passed(&self) -> bool {
        self.rank == self.group_order && self.images_in_group_algebra && self.integral && self.multiplicative
    }
}

pub fn u0_symmetric_group(r: usize) -> Result<U0Report> {
    if r == 0 || r > 4 {
        return Err(Error::ResourceLimit { what: "r for the symmetric group check", requested: r as u128, bound: 4 });
    }
    let omega = Weight::omega(r, r)?;
    let iso = SymmetricGroupIso::new(r)?;
    let degree = r as u32;
    let elements = udot_basis_upto(&omega, &omega, degree)?;
    let images: Vec<SchurElement> = elements.par_iter().map(|u| psi(u, r)).collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    let images_in_group_algebra = images.iter().all(|s| s.terms().keys().all(|a| iso.preimage(a).is_some()));
    let integral = images.iter().all(SchurElement::is_integral);

    // An independent subset reaching full rank; multiplicativity is checked on all its products.
    let mut solver = SpanSolver::new();
    let mut chosen = Vec::new();
    for (k, s) in images.iter().enumerate() {
        if solver.push(s.terms()) {
            chosen.push(k);
        }
    }
    let failures: Vec<String> = chosen
        .par_iter()
        .flat_map_iter(|&i| {
            let elements = &elements;
            let images = &images;
            chosen.iter().filter_map(move |&j| {
                let lhs = udot_multiply(&elements[i], &elements[j]).and_then(|uv| psi(&uv, r));
                let rhs = images[i].multiply(&images[j]);
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) if a == b => None,
                    _ => Some(format!("psi(u_{i} u_{j}) differs from psi(u_{i}) psi(u_{j})")),
                }
            })
        })
        .collect();
    let multiplicative = failures.is_empty();
    witnesses.extend(failures);
    let group_order = (1..=r).product();
    Ok(U0Report {
        r,
        degree,
        spanning_set: elements.len(),
        rank: solver.rank(),
        group_order,
        images_in_group_algebra,
        integral,
        multiplicative,
        witnesses,
    })
}
