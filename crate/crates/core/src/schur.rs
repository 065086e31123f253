//! The Schur algebra `S(n, r)` realized on tensor space.
//!
//! Elements are stored in the ξ-basis, labelled by margin matrices. Products
//! are computed in the faithful representation on `E^{⊗r}`: the coefficient of
//! `ξ_C` in an element `T` is the matrix entry of `T` at the canonical pair of
//! `C`, whose row word is always `ℓ(row(C))`. So only that one row of the
//! composed operators is ever evaluated.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rational::{num_den_json, q_from_json, Q};
use crate::tensor::{add_into, Operator, TensorEndo, TensorSpace, TensorVec};
use crate::weights::{
    canonical_pair, compositions, margin_matrices, pair_to_matrix, theta, MarginMatrix, MatrixMode, MultiIndex,
    Weight,
};

/// A finite rational combination of ξ-basis elements of `S(n, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurElement {
    n: usize,
    r: usize,
    terms: BTreeMap<MarginMatrix, Q>,
}

/// All words `m` with `#{k : word_k = x, m_k = y} = counts[x][y]`, in lexicographic order.
pub(crate) fn fill_words(n: usize, word: &[usize], counts: &[i64]) -> Vec<Vec<usize>> {
    let mut rem = counts.to_vec();
    let mut cur = vec![0usize; word.len()];
    let mut out = Vec::new();

    fn rec(pos: usize, n: usize, word: &[usize], rem: &mut [i64], cur: &mut [usize], out: &mut Vec<Vec<usize>>) {
        if pos == word.len() {
            out.push(cur.to_vec());
            return;
        }
        let x = word[pos] - 1;
        for y in 0..n {
            if rem[x * n + y] > 0 {
                rem[x * n + y] -= 1;
                cur[pos] = y + 1;
                rec(pos + 1, n, word, rem, cur, out);
                rem[x * n + y] += 1;
            }
        }
    }

    // Row sums of `counts` must match the letter counts of `word`.
    for x in 0..n {
        let need = word.iter().filter(|&&c| c == x + 1).count() as i64;
        let have: i64 = counts[x * n..(x + 1) * n].iter().sum();
        if need != have {
            return out;
        }
    }
    rec(0, n, word, &mut rem, &mut cur, &mut out);
    out
}

/// `ℓ(λ)`: `λ_1` ones, then `λ_2` twos, and so on.
pub fn ell_word(lambda: &Weight) -> Result<MultiIndex> {
    lambda.require_composition()?;
    let entries = lambda
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i + 1, m as usize))
        .collect();
    Ok(MultiIndex::new_unchecked(lambda.n(), entries))
}

impl SchurElement {
    pub fn zero(n: usize, r: usize) -> Self {
        SchurElement { n, r, terms: BTreeMap::new() }
    }

    pub fn basis(a: &MarginMatrix) -> Result<Self> {
        if a.mode() != MatrixMode::Nonnegative {
            return Err(Error::InvalidArgument("ξ-basis labels must be nonnegative".into()));
        }
        let mut terms = BTreeMap::new();
        terms.insert(a.clone(), Q::one());
        Ok(SchurElement { n: a.n(), r: a.total() as usize, terms })
    }

    pub fn from_terms(n: usize, r: usize, terms: impl IntoIterator<Item = (MarginMatrix, Q)>) -> Result<Self> {
        let mut out = SchurElement::zero(n, r);
        for (a, c) in terms {
            if a.n() != n || a.total() != r as i64 || a.mode() != MatrixMode::Nonnegative {
                return Err(Error::InvalidArgument(format!("{:?} is not in Theta({n},{r})", a.rows())));
            }
            out.add_term(a, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, a: MarginMatrix, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(a.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<MarginMatrix, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &MarginMatrix) -> Q {
        self.terms.get(a).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(crate::rational::is_integral)
    }

    fn check(&self, other: &SchurElement) -> Result<()> {
        if (self.n, self.r) != (other.n, other.r) {
            return Err(Error::ShapeMismatch(self.n, self.r, other.n, other.r));
        }
        Ok(())
    }

    pub fn add(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SchurElement) -> Result<SchurElement> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> SchurElement {
        let mut out = SchurElement::zero(self.n, self.r);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    /// The product in `S(n, r)`, computed by composing in the tensor representation.
    pub fn multiply(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check(other)?;
        TensorSpace::new(self.n, self.r)?;
        let n = self.n;
        // Group left factors by their row weight: each group fills one row ℓ(λ).
        let mut rows: BTreeMap<Weight, HashMap<Vec<usize>, Q>> = BTreeMap::new();
        let mut by_row_weight: HashMap<Weight, Vec<(&MarginMatrix, &Q)>> = HashMap::new();
        for (b, y) in &other.terms {
            by_row_weight.entry(b.row_sums()).or_default().push((b, y));
        }
        for (a, x) in &self.terms {
            let Some(rights) = by_row_weight.get(&a.col_sums()) else { continue };
            let lambda = a.row_sums();
            let ell = ell_word(&lambda)?;
            let acc = rows.entry(lambda).or_default();
            for k in fill_words(n, ell.entries(), a.entries()) {
                for (b, y) in rights {
                    let xy = x * *y;
                    for m in fill_words(n, &k, b.entries()) {
                        *acc.entry(m).or_insert_with(Q::zero) += &xy;
                    }
                }
            }
        }
        let mut out = SchurElement::zero(self.n, self.r);
        for (lambda, acc) in rows {
            let ell = ell_word(&lambda)?;
            for (m, c) in acc {
                if c.is_zero() {
                    continue;
                }
                let col = MultiIndex::new_unchecked(n, m);
                let cm = pair_to_matrix(&ell, &col)?;
                if canonical_pair(&cm)?.1 == col {
                    out.add_term(cm, c);
                }
            }
        }
        Ok(out)
    }

    /// Transpose on basis labels: `ξ_{i,j} ↦ ξ_{j,i}`.
    pub fn involution(&self) -> SchurElement {
        let mut out = SchurElement::zero(self.n, self.r);
        for (a, c) in &self.terms {
            out.add_term(a.transpose(), c.clone());
        }
        out
    }

    /// Relabels basis vectors of `E` by `w`; an automorphism of `S(n, r)` sending
    /// `1_λ S 1_μ` onto `1_{wλ} S 1_{wμ}`.
    pub fn weyl_relabel(&self, w: &Permutation) -> Result<SchurElement> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: w.len() });
        }
        let mut out = SchurElement::zero(self.n, self.r);
        for (a, c) in &self.terms {
            out.add_term(a.relabeled(w), c.clone());
        }
        Ok(out)
    }

    /// `1_λ · self · 1_μ`.
    pub fn truncate(&self, lambda: &Weight, mu: &Weight) -> SchurElement {
        let mut out = SchurElement::zero(self.n, self.r);
        for (a, c) in &self.terms {
            if &a.row_sums() == lambda && &a.col_sums() == mu {
                out.add_term(a.clone(), c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let (num, den) = num_den_json(c);
                json!({ "matrix": a.rows(), "coeff_num": num, "coeff_den": den })
            })
            .collect();
        json!({ "n": self.n, "r": self.r, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<SchurElement> {
        let bad = |what: &str| Error::InvalidArgument(format!("SchurElement JSON: {what}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("missing r"))? as usize;
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let rows: Vec<Vec<i64>> = serde_json::from_value(t.get("matrix").cloned().unwrap_or(Value::Null))
                .map_err(|e| bad(&e.to_string()))?;
            let num = t.get("coeff_num").and_then(q_from_json).ok_or_else(|| bad("coeff_num"))?;
            let den = match t.get("coeff_den") {
                Some(d) => q_from_json(d).ok_or_else(|| bad("coeff_den"))?,
                None => Q::one(),
            };
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            terms.push((MarginMatrix::nonnegative(rows)?, num / den));
        }
        SchurElement::from_terms(n, r, terms)
    }
}

/// The endomorphism `ξ_A`: sends `e_k` to the sum of `e_l` over `l` with
/// `pair_to_matrix(l, k) = A`.
pub fn xi_endo(a: &MarginMatrix) -> Result<TensorEndo> {
    SchurElement::basis(a)?.to_endo()
}

impl SchurElement {
    pub fn to_endo(&self) -> Result<TensorEndo> {
        let space = TensorSpace::new(self.n, self.r)?;
        let mut endo = TensorEndo::zero(space);
        for (a, c) in &self.terms {
            let at = a.transpose();
            for k in crate::weights::all_multi_indices(self.n, self.r) {
                if crate::weights::weight_of(&k) != a.col_sums() {
                    continue;
                }
                let col = space.encode(k.entries());
                for l in fill_words(self.n, k.entries(), at.entries()) {
                    let row = space.encode(&l);
                    let x = endo.entry(row, col) + c;
                    endo.insert(row, col, x);
                }
            }
        }
        Ok(endo)
    }
}

impl Operator for SchurElement {
    fn apply(&self, space: &TensorSpace, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::new();
        let transposed: Vec<(MarginMatrix, &Q)> = self.terms.iter().map(|(a, c)| (a.transpose(), c)).collect();
        for (code, x) in v {
            let k = space.decode(*code);
            for (at, c) in &transposed {
                for l in fill_words(space.n(), &k, at.entries()) {
                    add_into(&mut out, space.encode(&l), x * *c);
                }
            }
        }
        out
    }
}

/// The projection `1_λ` onto span of `e_k` with `weight(k) = λ`.
pub struct WeightProjection(pub Weight);

impl Operator for WeightProjection {
    fn apply(&self, space: &TensorSpace, v: &TensorVec) -> TensorVec {
        v.iter().filter(|(c, _)| space.weight(**c) == self.0).map(|(c, x)| (*c, x.clone())).collect()
    }
}

/// Reads the ξ-coordinates of an operator known to lie in `S(n, r)`.
pub fn decompose(space: &TensorSpace, op: &dyn Operator) -> Result<SchurElement> {
    decompose_matrices(space, op, theta(space.n(), space.r()))
}

/// As [`decompose`], for an operator known to lie in `1_λ S 1_μ`.
pub fn decompose_block(space: &TensorSpace, op: &dyn Operator, lambda: &Weight, mu: &Weight) -> Result<SchurElement> {
    decompose_matrices(space, op, margin_matrices(lambda, mu)?)
}

fn decompose_matrices(
    space: &TensorSpace,
    op: &dyn Operator,
    matrices: impl IntoIterator<Item = MarginMatrix>,
) -> Result<SchurElement> {
    let mut out = SchurElement::zero(space.n(), space.r());
    for c in matrices {
        let (row, col) = canonical_pair(&c)?;
        let image = op.apply(space, &crate::tensor::basis_vector(space.encode(col.entries())));
        if let Some(x) = image.get(&space.encode(row.entries())) {
            out.add_term(c, x.clone());
        }
    }
    Ok(out)
}

/// The weight idempotent `1_λ = ξ_{i,i}` with `weight(i) = λ`.
pub fn idempotent(lambda: &Weight) -> Result<SchurElement> {
    SchurElement::basis(&MarginMatrix::diagonal(lambda)?)
}

/// `Σ_λ 1_λ` over `Λ(n, r)`.
pub fn identity(n: usize, r: usize) -> Result<SchurElement> {
    let mut out = SchurElement::zero(n, r);
    for l in compositions(n, r) {
        out.add_term(MarginMatrix::diagonal(&l)?, Q::one());
    }
    Ok(out)
}

/// The ξ-basis of `1_λ S(n, r) 1_μ`.
pub fn hom_basis(lambda: &Weight, mu: &Weight) -> Result<Vec<SchurElement>> {
    margin_matrices(lambda, mu)?.iter().map(SchurElement::basis).collect()
}

/// The whole ξ-basis of `S(n, r)`.
pub fn schur_basis(n: usize, r: usize) -> Result<Vec<SchurElement>> {
    theta(n, r).iter().map(SchurElement::basis).collect()
}

/// `π ↦ ξ_{P_π}` with `(P_π)_{π(b), b} = 1`: the isomorphism `ℤΣ_r ≅ 1_ω S(r, r) 1_ω`.
#[derive(Clone, Debug)]
pub struct SymmetricGroupIso {
    r: usize,
    images: BTreeMap<Permutation, MarginMatrix>,
}

impl SymmetricGroupIso {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        TensorSpace::new(r, r)?;
        let images = Permutation::all(r)
            .into_iter()
            .map(|p| {
                let mut entries = vec![0i64; r * r];
                for b in 0..r {
                    entries[p.apply(b) * r + b] = 1;
                }
                let m = MarginMatrix::from_flat(r, entries, MatrixMode::Nonnegative);
                (p, m)
            })
            .collect();
        Ok(SymmetricGroupIso { r, images })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn image(&self, p: &Permutation) -> Result<SchurElement> {
        let m = self
            .images
            .get(p)
            .ok_or_else(|| Error::InvalidArgument(format!("not a permutation of {} letters", self.r)))?;
        SchurElement::basis(m)
    }

    /// Inverse on basis elements: `Some(π)` when `A` is a permutation matrix.
    pub fn preimage(&self, a: &MarginMatrix) -> Option<Permutation> {
        self.images.iter().find(|(_, m)| *m == a).map(|(p, _)| p.clone())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Permutation, &MarginMatrix)> {
        self.images.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::weights::{all_multi_indices, weight_of};

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> MarginMatrix {
        MarginMatrix::nonnegative(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn xi_of_diagonal_is_projection() {
        let sp = TensorSpace::new(2, 3).unwrap();
        for lambda in compositions(2, 3) {
            let e = xi_endo(&MarginMatrix::diagonal(&lambda).unwrap()).unwrap();
            let mut proj = TensorEndo::zero(sp);
            for k in 0..sp.dim() {
                if sp.weight(k) == lambda {
                    proj.insert(k, k, q(1));
                }
            }
            assert_eq!(e, proj);
        }
        let one = xi_endo(&m(&[&[4]])).unwrap();
        assert_eq!(one, TensorEndo::identity(TensorSpace::new(1, 4).unwrap()));
    }

    #[test]
    fn xi_endo_brute_force_entries() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let e = xi_endo(&a).unwrap();
        let sp = TensorSpace::new(2, 2).unwrap();
        for l in all_multi_indices(2, 2) {
            for k in all_multi_indices(2, 2) {
                let expect = if pair_to_matrix(&l, &k).unwrap() == a { q(1) } else { q(0) };
                assert_eq!(e.entry(sp.encode(l.entries()), sp.encode(k.entries())), expect);
            }
        }
    }

    #[test]
    fn idempotents_orthogonal_and_sum_to_identity() {
        let comps = compositions(2, 2);
        for l in &comps {
            for mu in &comps {
                let p = idempotent(l).unwrap().multiply(&idempotent(mu).unwrap()).unwrap();
                if l == mu {
                    assert_eq!(p, idempotent(l).unwrap());
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        let id = identity(2, 2).unwrap().to_endo().unwrap();
        assert_eq!(id, TensorEndo::identity(TensorSpace::new(2, 2).unwrap()));
        for l in compositions(3, 3) {
            let e = idempotent(&l).unwrap();
            assert_eq!(e.multiply(&e).unwrap(), e);
        }
    }

    #[test]
    fn omega_idempotent_fixes_distinct_words() {
        let sp = TensorSpace::new(3, 3).unwrap();
        let om = idempotent(&w(&[1, 1, 1])).unwrap();
        for k in all_multi_indices(3, 3) {
            let code = sp.encode(k.entries());
            let image = om.apply(&sp, &crate::tensor::basis_vector(code));
            let distinct = weight_of(&k) == w(&[1, 1, 1]);
            assert_eq!(image == crate::tensor::basis_vector(code), distinct);
        }
    }

    #[test]
    fn weight_bookkeeping() {
        for a in theta(2, 3) {
            let x = SchurElement::basis(&a).unwrap();
            let left = idempotent(&a.row_sums()).unwrap();
            let right = idempotent(&a.col_sums()).unwrap();
            assert_eq!(x.multiply(&right).unwrap(), x);
            assert_eq!(left.multiply(&x).unwrap(), x);
        }
    }

    #[test]
    fn multiply_rejects_mismatch() {
        let a = idempotent(&w(&[1, 1])).unwrap();
        let b = idempotent(&w(&[1, 1, 0])).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn multiply_agrees_with_endo_composition() {
        let basis = schur_basis(2, 3).unwrap();
        for x in &basis {
            for y in &basis {
                let via_endo = x.to_endo().unwrap().compose(&y.to_endo().unwrap()).unwrap();
                assert_eq!(x.multiply(y).unwrap().to_endo().unwrap(), via_endo);
            }
        }
    }

    #[test]
    fn involution_examples() {
        for l in compositions(2, 3) {
            let e = idempotent(&l).unwrap();
            assert_eq!(e.involution(), e);
        }
        let lambda = w(&[2, 1]);
        let mu = w(&[1, 2]);
        let mut img: Vec<_> = hom_basis(&lambda, &mu).unwrap().iter().map(|x| x.involution()).collect();
        img.sort_by(|a, b| a.terms.keys().cmp(b.terms.keys()));
        assert_eq!(img, hom_basis(&mu, &lambda).unwrap());
    }

    #[test]
    fn symmetric_group_small() {
        let iso = SymmetricGroupIso::new(2).unwrap();
        let id = iso.image(&Permutation::identity(2)).unwrap();
        assert_eq!(id, idempotent(&w(&[1, 1])).unwrap());
        let t = iso.image(&Permutation::transposition(2, 0, 1)).unwrap();
        assert_eq!(t.multiply(&t).unwrap(), id);
    }

    #[test]
    fn json_roundtrip() {
        let x = SchurElement::from_terms(2, 2, [(m(&[&[1, 1], &[0, 0]]), q(3)), (m(&[&[2, 0], &[0, 0]]), crate::rational::q_frac(-1, 2))]).unwrap();
        let v = x.to_json();
        assert_eq!(v["terms"][0]["matrix"], json!([[2, 0], [0, 0]]));
        assert_eq!(SchurElement::from_json(&v).unwrap(), x);
    }
}
