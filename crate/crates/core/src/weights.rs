//! Indexing combinatorics: weights and compositions, multi-indices,
//! margin matrices and dominance.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An integer vector of length `n >= 1`. A composition when all entries are nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight(Vec<i64>);

impl TryFrom<Vec<i64>> for Weight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Weight::new(v)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Self {
        w.0
    }
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyWeight);
        }
        Ok(Weight(entries))
    }

    /// A composition: nonempty with nonnegative entries.
    pub fn composition(entries: Vec<i64>) -> Result<Self> {
        let w = Weight::new(entries)?;
        w.require_composition()?;
        Ok(w)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `(1, .., 1, 0, .., 0)` with `r` ones; requires `r <= n`.
    pub fn omega(n: usize, r: usize) -> Result<Self> {
        if r > n || n == 0 {
            return Err(Error::InvalidArgument(format!("omega needs 1 <= r <= n, got n={n}, r={r}")));
        }
        let mut v = vec![0; n];
        v[..r].iter_mut().for_each(|x| *x = 1);
        Ok(Weight(v))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_composition(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn require_composition(&self) -> Result<()> {
        if self.is_composition() {
            Ok(())
        } else {
            Err(Error::NotComposition(self.0.clone()))
        }
    }

    /// Weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// `w·λ` with `(w·λ)_{w(i)} = λ_i`.
    pub fn permuted(&self, w: &Permutation) -> Weight {
        let mut out = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            out[w.apply(i)] = x;
        }
        Weight(out)
    }

    pub fn shifted(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x + k).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `(λ_1 - λ_2, .., λ_{n-1} - λ_n)`, the corresponding sl_n weight.
    pub fn tilde(&self) -> Vec<i64> {
        self.0.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// Zero-padded to `m >= n` entries.
    pub fn padded(&self, m: usize) -> Weight {
        let mut v = self.0.clone();
        v.resize(m.max(self.n()), 0);
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All compositions of `r` into `n` parts, reverse-lexicographic.
pub fn compositions(n: usize, r: usize) -> Vec<Weight> {
    fn rec(n: usize, r: usize, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if prefix.len() + 1 == n {
            prefix.push(r as i64);
            out.push(Weight(prefix.clone()));
            prefix.pop();
            return;
        }
        for x in (0..=r).rev() {
            prefix.push(x as i64);
            rec(n, r - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, r, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Dominant compositions (partitions with at most `n` nonzero parts, zero padded).
pub fn dominant_compositions(n: usize, r: usize) -> Vec<Weight> {
    compositions(n, r).into_iter().filter(Weight::is_dominant).collect()
}

/// A word `(i_1, .., i_r)` with letters in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex {
    #[serde(skip)]
    n: usize,
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::IndexOutOfRange { entry: bad, n });
        }
        Ok(MultiIndex { n, entries })
    }

    pub(crate) fn new_unchecked(n: usize, entries: Vec<usize>) -> Self {
        MultiIndex { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Right place-permutation action: `(iπ)_k = i_{π(k)}`.
    pub fn act(&self, pi: &Permutation) -> MultiIndex {
        let entries = (0..self.r()).map(|k| self.entries[pi.apply(k)]).collect();
        MultiIndex { n: self.n, entries }
    }
}

/// `λ_j = #{k : i_k = j}`.
pub fn weight_of(i: &MultiIndex) -> Weight {
    let mut v = vec![0i64; i.n];
    for &e in &i.entries {
        v[e - 1] += 1;
    }
    Weight(v)
}

/// All of `I(n, r)` in lexicographic order.
pub fn all_multi_indices(n: usize, r: usize) -> Vec<MultiIndex> {
    let total = n.pow(r as u32);
    (0..total)
        .map(|mut code| {
            let mut entries = vec![0; r];
            for k in (0..r).rev() {
                entries[k] = code % n + 1;
                code /= n;
            }
            MultiIndex { n, entries }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixMode {
    /// Entries in ℕ summing to r: Θ(n, r).
    Nonnegative,
    /// Off-diagonal entries in ℕ, diagonal unrestricted: Θ̃(n).
    OffDiagonal,
}

/// An `n × n` integer matrix labelling ξ-basis elements and PBW monomials.
///
/// Ordering: by `n`, then mode, then *descending* lexicographic order of the
/// row-major entries, so that enumeration order and canonical term order agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarginMatrix {
    n: usize,
    entries: Vec<i64>,
    mode: MatrixMode,
}

impl Ord for MarginMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.mode.cmp(&other.mode))
            .then_with(|| other.entries.cmp(&self.entries))
    }
}

impl PartialOrd for MarginMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MarginMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>, mode: MatrixMode) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyWeight);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { left: n, right: bad.len() });
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let m = MarginMatrix { n, entries, mode };
        m.validate()?;
        Ok(m)
    }

    pub fn nonnegative(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(rows, MatrixMode::Nonnegative)
    }

    pub(crate) fn from_flat(n: usize, entries: Vec<i64>, mode: MatrixMode) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        MarginMatrix { n, entries, mode }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.mode {
            MatrixMode::Nonnegative => self.entries.iter().all(|&x| x >= 0),
            MatrixMode::OffDiagonal => (0..self.n)
                .all(|i| (0..self.n).all(|j| i == j || self.get(i, j) >= 0)),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotNonnegative(format!("{:?}", self.rows())))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> MatrixMode {
        self.mode
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn row_sums(&self) -> Weight {
        Weight((0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect())
    }

    pub fn col_sums(&self) -> Weight {
        Weight((0..self.n).map(|j| (0..self.n).map(|i| self.get(i, j)).sum()).collect())
    }

    pub fn transpose(&self) -> MarginMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n)).collect();
        MarginMatrix { n, entries, mode: self.mode }
    }

    /// Relabels indices: the result has entry `a_{ij}` at `(w(i), w(j))`.
    pub fn relabeled(&self, w: &Permutation) -> MarginMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[w.apply(i) * n + w.apply(j)] = self.get(i, j);
            }
        }
        MarginMatrix { n, entries, mode: self.mode }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn diagonal(weight: &Weight) -> Result<MarginMatrix> {
        weight.require_composition()?;
        let n = weight.n();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = weight.entries()[i];
        }
        Ok(MarginMatrix { n, entries, mode: MatrixMode::Nonnegative })
    }

    /// `λ^+(A)_j = a_jj + Σ_{i<j} (a_ij + a_ji)`.
    pub fn lambda_plus(&self) -> Weight {
        let n = self.n;
        Weight((0..n).map(|j| self.get(j, j) + (0..j).map(|i| self.get(i, j) + self.get(j, i)).sum::<i64>()).collect())
    }

    /// `λ^-(A)_j = a_jj + Σ_{i>j} (a_ij + a_ji)`.
    pub fn lambda_minus(&self) -> Weight {
        let n = self.n;
        Weight((0..n).map(|j| self.get(j, j) + (j + 1..n).map(|i| self.get(i, j) + self.get(j, i)).sum::<i64>()).collect())
    }
}

impl Serialize for MarginMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarginMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        MarginMatrix::nonnegative(rows).map_err(serde::de::Error::custom)
    }
}

fn check_margins(lambda: &Weight, mu: &Weight) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::LengthMismatch { left: lambda.n(), right: mu.n() });
    }
    lambda.require_composition()?;
    mu.require_composition()?;
    if lambda.degree() != mu.degree() {
        return Err(Error::DegreeMismatch { left: lambda.degree(), right: mu.degree() });
    }
    Ok(())
}

/// All `A ∈ ℕ^{n×n}` with `row(A) = λ`, `col(A) = μ`, descending row-major lexicographic.
pub fn margin_matrices(lambda: &Weight, mu: &Weight) -> Result<Vec<MarginMatrix>> {
    check_margins(lambda, mu)?;
    let n = lambda.n();
    let mut out = Vec::new();
    let mut row_rem = lambda.entries().to_vec();
    let mut col_rem = mu.entries().to_vec();
    let mut cur = vec![0i64; n * n];

    fn rec(
        pos: usize,
        n: usize,
        row_rem: &mut [i64],
        col_rem: &mut [i64],
        cur: &mut [i64],
        out: &mut Vec<MarginMatrix>,
    ) {
        if pos == n * n {
            out.push(MarginMatrix::from_flat(n, cur.to_vec(), MatrixMode::Nonnegative));
            return;
        }
        let (i, j) = (pos / n, pos % n);
        let hi = row_rem[i].min(col_rem[j]);
        // The last cell of a row (or column) is forced.
        let lo = if j == n - 1 {
            row_rem[i]
        } else if i == n - 1 {
            col_rem[j]
        } else {
            0
        };
        if lo > hi {
            return;
        }
        for v in (lo..=hi).rev() {
            row_rem[i] -= v;
            col_rem[j] -= v;
            cur[pos] = v;
            rec(pos + 1, n, row_rem, col_rem, cur, out);
            row_rem[i] += v;
            col_rem[j] += v;
        }
        cur[pos] = 0;
    }

    rec(0, n, &mut row_rem, &mut col_rem, &mut cur, &mut out);
    Ok(out)
}

/// All of Θ(n, r), grouped by (row, column) composition pairs.
pub fn theta(n: usize, r: usize) -> Vec<MarginMatrix> {
    let comps = compositions(n, r);
    let mut out = Vec::new();
    for l in &comps {
        for m in &comps {
            out.extend(margin_matrices(l, m).expect("compositions of equal degree"));
        }
    }
    out
}

/// `A_{ab} = #{k : i_k = a, j_k = b}`: the complete invariant of the diagonal Σ_r-orbit of `(i, j)`.
pub fn pair_to_matrix(i: &MultiIndex, j: &MultiIndex) -> Result<MarginMatrix> {
    if i.r() != j.r() {
        return Err(Error::LengthMismatch { left: i.r(), right: j.r() });
    }
    if i.n != j.n {
        return Err(Error::LengthMismatch { left: i.n, right: j.n });
    }
    let n = i.n;
    let mut entries = vec![0i64; n * n];
    for (&a, &b) in i.entries.iter().zip(&j.entries) {
        entries[(a - 1) * n + (b - 1)] += 1;
    }
    Ok(MarginMatrix::from_flat(n, entries, MatrixMode::Nonnegative))
}

/// Orbit representative: reads `A` row-major, emitting `a_{ab}` copies of `(a, b)`.
pub fn canonical_pair(a: &MarginMatrix) -> Result<(MultiIndex, MultiIndex)> {
    if a.mode != MatrixMode::Nonnegative {
        return Err(Error::InvalidArgument(
            "canonical_pair needs a nonnegative margin matrix".into(),
        ));
    }
    let n = a.n;
    let mut i = Vec::new();
    let mut j = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for _ in 0..a.get(x, y) {
                i.push(x + 1);
                j.push(y + 1);
            }
        }
    }
    Ok((MultiIndex { n, entries: i }, MultiIndex { n, entries: j }))
}

/// Partial-sum comparison `a ⊴ b` (zero padded to a common length).
pub fn dominance_leq(a: &Weight, b: &Weight) -> Result<bool> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    let m = a.n().max(b.n());
    let (a, b) = (a.padded(m), b.padded(m));
    let mut sa = 0;
    let mut sb = 0;
    for k in 0..m {
        sa += a.0[k];
        sb += b.0[k];
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weakly decreasing rearrangement.
pub fn sort_dominant(lambda: &Weight) -> Weight {
    let mut v = lambda.0.clone();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Weight(v)
}
