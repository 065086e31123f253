//! Exact linear algebra over ℚ on sparse vectors: rank, coordinates in a
//! basis, determinants and unimodularity of a change of basis.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{is_integral, Q};

pub type SparseVec<K> = BTreeMap<K, Q>;

fn primitive_integer<K: Ord + Clone>(v: &SparseVec<K>) -> BTreeMap<K, BigInt> {
    let den = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: BTreeMap<K, BigInt> = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k.clone(), (x * Q::from_integer(den.clone())).to_integer()))
        .collect();
    normalize_content(&mut out);
    out
}

fn normalize_content<K>(v: &mut BTreeMap<K, BigInt>) {
    let g = v.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.values_mut().for_each(|x| *x /= &g);
    }
}

/// Rank by fraction-free elimination on leading keys.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut pivots: BTreeMap<K, BTreeMap<K, BigInt>> = BTreeMap::new();
    for v in vectors {
        let mut v = primitive_integer(v);
        while let Some((lead, lead_coeff)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, v);
                break;
            };
            let p_lead = p[&lead].clone();
            let mut next: BTreeMap<K, BigInt> = BTreeMap::new();
            for (k, x) in &v {
                next.insert(k.clone(), x * &p_lead);
            }
            for (k, x) in p {
                let e = next.entry(k.clone()).or_insert_with(BigInt::zero);
                *e -= x * &lead_coeff;
            }
            next.retain(|_, x| !x.is_zero());
            normalize_content(&mut next);
            v = next;
        }
    }
    pivots.len()
}

/// Incremental echelon form that remembers how each pivot row combines the
/// inserted vectors, so targets can be written in coordinates of them.
#[derive(Clone, Debug)]
pub struct SpanSolver<K: Ord + Clone> {
    pivots: BTreeMap<K, (SparseVec<K>, Vec<Q>)>,
    inserted: usize,
    independent: bool,
}

impl<K: Ord + Clone> Default for SpanSolver<K> {
    fn default() -> Self {
        SpanSolver { pivots: BTreeMap::new(), inserted: 0, independent: true }
    }
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors(vectors: &[SparseVec<K>]) -> Self {
        let mut s = Self::new();
        for v in vectors {
            s.push(v);
        }
        s
    }

    fn reduce(&self, v: &SparseVec<K>, width: usize) -> (SparseVec<K>, Vec<Q>) {
        let mut v: SparseVec<K> = v.iter().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k.clone(), x.clone())).collect();
        let mut combo = vec![Q::zero(); width];
        let mut skipped: SparseVec<K> = BTreeMap::new();
        while let Some((lead, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            match self.pivots.get(&lead) {
                Some((row, row_combo)) => {
                    // rows are normalized to leading coefficient 1
                    for (k, x) in row {
                        let e = v.entry(k.clone()).or_insert_with(Q::zero);
                        *e -= x * &c;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                    for (i, x) in row_combo.iter().enumerate() {
                        if !x.is_zero() {
                            combo[i] += x * &c;
                        }
                    }
                }
                None => {
                    v.remove(&lead);
                    skipped.insert(lead, c);
                }
            }
        }
        (skipped, combo)
    }

    /// Inserts a vector; returns whether it was independent of the previous ones.
    pub fn push(&mut self, v: &SparseVec<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        for (_, combo) in self.pivots.values_mut() {
            combo.push(Q::zero());
        }
        let (residual, combo) = self.reduce(v, self.inserted);
        if residual.is_empty() {
            self.independent = false;
            return false;
        }
        // residual = v - Σ combo_i · (inserted_i)
        let mut combo: Vec<Q> = combo.into_iter().map(|x| -x).collect();
        combo[idx] += Q::one();
        let lead = residual.keys().next().unwrap().clone();
        let inv = Q::one() / &residual[&lead];
        let row: SparseVec<K> = residual.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        let combo = combo.into_iter().map(|x| x * &inv).collect();
        self.pivots.insert(lead, (row, combo));
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn all_independent(&self) -> bool {
        self.independent
    }

    /// Coefficients `c` with `target = Σ c_i · inserted_i`, if `target` is in the span.
    /// Unique when the inserted vectors are independent.
    pub fn coordinates(&self, target: &SparseVec<K>) -> Option<Vec<Q>> {
        let (residual, combo) = self.reduce(target, self.inserted);
        residual.is_empty().then_some(combo)
    }
}

/// Determinant of a square rational matrix (Bareiss on the row-scaled integer matrix).
pub fn determinant(matrix: &[Vec<Q>]) -> Q {
    let n = matrix.len();
    if n == 0 {
        return Q::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "square matrix expected");
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &den;
            row.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Q::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Q::new(sign * &a[n - 1][n - 1], scale)
}

/// Result of writing one family in coordinates of another.
#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfBasis {
    pub size: usize,
    /// Every target lies in the span of the basis.
    pub in_span: bool,
    /// All coordinates are integers.
    pub integral: bool,
    /// `None` unless the matrix is square and every target is in the span.
    #[serde(serialize_with = "ser_opt_q")]
    pub determinant: Option<Q>,
    pub unimodular: bool,
    #[serde(skip)]
    pub matrix: Vec<Vec<Q>>,
}

fn ser_opt_q<S: serde::Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(q) => s.serialize_some(&crate::rational::q_to_string(q)),
        None => s.serialize_none(),
    }
}

/// Writes `targets` in coordinates of `basis`; unimodular when the matrix is
/// integral, square and of determinant ±1.
pub fn change_of_basis<K: Ord + Clone>(targets: &[SparseVec<K>], basis: &[SparseVec<K>]) -> ChangeOfBasis {
    let solver = SpanSolver::from_vectors(basis);
    let mut matrix = Vec::with_capacity(targets.len());
    let mut in_span = solver.all_independent();
    for t in targets {
        match solver.coordinates(t) {
            Some(c) => matrix.push(c),
            None => {
                in_span = false;
                matrix.push(vec![Q::zero(); basis.len()]);
            }
        }
    }
    let integral = matrix.iter().flatten().all(is_integral);
    let determinant = (in_span && targets.len() == basis.len()).then(|| determinant(&matrix));
    let unimodular = integral && determinant.as_ref().is_some_and(|d| d.abs().is_one());
    ChangeOfBasis { size: targets.len(), in_span, integral, determinant, unimodular, matrix }
}
