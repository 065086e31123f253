//! Sparse endomorphisms of tensor space `E^{⊗r}`, `E = ℚ^n`.
//!
//! Basis tensors `e_i` are addressed by the base-`n` code of the word `i`
//! (first letter most significant).

use std::collections::{BTreeMap, HashMap};

use num::Zero;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::weights::{MultiIndex, Weight};

/// Largest tensor-space dimension `n^r` any operation will touch.
pub const MAX_TENSOR_DIM: u128 = 1_000_000;

pub type TensorVec = BTreeMap<u64, Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    n: usize,
    r: usize,
    dim: u64,
}

impl TensorSpace {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let dim = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
        if dim > MAX_TENSOR_DIM {
            return Err(Error::ResourceLimit { what: "n^r", requested: dim, bound: MAX_TENSOR_DIM });
        }
        Ok(TensorSpace { n, r, dim: dim as u64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn encode(&self, word: &[usize]) -> u64 {
        word.iter().fold(0u64, |acc, &x| acc * self.n as u64 + (x as u64 - 1))
    }

    pub fn decode(&self, mut code: u64) -> Vec<usize> {
        let mut out = vec![0; self.r];
        for k in (0..self.r).rev() {
            out[k] = (code % self.n as u64) as usize + 1;
            code /= self.n as u64;
        }
        out
    }

    pub fn multi_index(&self, code: u64) -> MultiIndex {
        MultiIndex::new_unchecked(self.n, self.decode(code))
    }

    pub fn weight(&self, code: u64) -> Weight {
        let mut v = vec![0i64; self.n];
        for x in self.decode(code) {
            v[x - 1] += 1;
        }
        Weight::new(v).expect("n >= 1")
    }
}

/// Something that acts linearly on tensor space.
pub trait Operator: Sync {
    fn apply(&self, space: &TensorSpace, v: &TensorVec) -> TensorVec;
}

/// Applies `ops` right to left: `ops[0] ∘ ops[1] ∘ ⋯`.
pub struct Chain<'a>(pub Vec<&'a dyn Operator>);

impl Operator for Chain<'_> {
    fn apply(&self, space: &TensorSpace, v: &TensorVec) -> TensorVec {
        self.0.iter().rev().fold(v.clone(), |acc, op| op.apply(space, &acc))
    }
}

pub fn basis_vector(code: u64) -> TensorVec {
    let mut v = TensorVec::new();
    v.insert(code, Q::from_integer(1.into()));
    v
}

pub(crate) fn add_into(acc: &mut TensorVec, key: u64, x: Q) {
    if x.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
    }
}

/// A sparse matrix on `E^{⊗r}`, keyed by (row code, column code).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorEndo {
    space: TensorSpace,
    entries: BTreeMap<(u64, u64), Q>,
}

impl TensorEndo {
    pub fn zero(space: TensorSpace) -> Self {
        TensorEndo { space, entries: BTreeMap::new() }
    }

    pub fn identity(space: TensorSpace) -> Self {
        let one = Q::from_integer(1.into());
        let entries = (0..space.dim).map(|k| ((k, k), one.clone())).collect();
        TensorEndo { space, entries }
    }

    /// Materializes an operator column by column.
    pub fn from_operator(space: TensorSpace, op: &dyn Operator) -> Self {
        let mut entries = BTreeMap::new();
        for col in 0..space.dim {
            for (row, x) in op.apply(&space, &basis_vector(col)) {
                entries.insert((row, col), x);
            }
        }
        TensorEndo { space, entries }
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn entries(&self) -> &BTreeMap<(u64, u64), Q> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: u64, col: u64) -> Q {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn insert(&mut self, row: u64, col: u64, x: Q) {
        if x.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), x);
        }
    }

    fn check_space(&self, other: &TensorEndo) -> Result<()> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch(self.space.n, self.space.r, other.space.n, other.space.r));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TensorEndo) -> Result<TensorEndo> {
        self.check_space(other)?;
        let mut by_row: HashMap<u64, Vec<(u64, &Q)>> = HashMap::new();
        for ((k, m), x) in &other.entries {
            by_row.entry(*k).or_default().push((*m, x));
        }
        let mut acc: BTreeMap<(u64, u64), Q> = BTreeMap::new();
        for ((l, k), x) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (m, y) in row {
                    *acc.entry((*l, *m)).or_insert_with(Q::zero) += x * *y;
                }
            }
        }
        acc.retain(|_, x| !x.is_zero());
        Ok(TensorEndo { space: self.space, entries: acc })
    }

    pub fn add(&self, other: &TensorEndo) -> Result<TensorEndo> {
        self.check_space(other)?;
        let mut entries = self.entries.clone();
        for (k, x) in &other.entries {
            *entries.entry(*k).or_insert_with(Q::zero) += x;
        }
        entries.retain(|_, x| !x.is_zero());
        Ok(TensorEndo { space: self.space, entries })
    }

    pub fn scale(&self, c: &Q) -> TensorEndo {
        if c.is_zero() {
            return TensorEndo::zero(self.space);
        }
        let entries = self.entries.iter().map(|(k, x)| (*k, x * c)).collect();
        TensorEndo { space: self.space, entries }
    }

    /// Flattened entries, for rank computations.
    pub fn as_vector(&self) -> BTreeMap<(u64, u64), Q> {
        self.entries.clone()
    }

    pub fn has_integer_entries(&self) -> bool {
        self.entries.values().all(crate::rational::is_integral)
    }

    /// Commutes with the place-permutation action of Σ_r (checked on adjacent transpositions).
    pub fn commutes_with_symmetric_group(&self) -> bool {
        let sp = self.space;
        let swap = |code: u64, k: usize| {
            let mut w = sp.decode(code);
            w.swap(k, k + 1);
            sp.encode(&w)
        };
        (0..sp.r.saturating_sub(1)).all(|k| {
            self.entries.iter().all(|((l, c), x)| self.entry(swap(*l, k), swap(*c, k)) == *x)
        })
    }
}

impl Operator for TensorEndo {
    fn apply(&self, _space: &TensorSpace, v: &TensorVec) -> TensorVec {
        // column-major view built on demand
        let mut out = TensorVec::new();
        for ((row, col), x) in &self.entries {
            if let Some(y) = v.get(col) {
                add_into(&mut out, *row, x * y);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode() {
        let sp = TensorSpace::new(3, 4).unwrap();
        for code in 0..sp.dim() {
            assert_eq!(sp.encode(&sp.decode(code)), code);
        }
        assert_eq!(sp.decode(0), vec![1, 1, 1, 1]);
        assert_eq!(sp.weight(sp.encode(&[1, 3, 3, 2])).entries(), &[1, 1, 2]);
    }

    #[test]
    fn guard_refuses_large_spaces() {
        assert!(TensorSpace::new(10, 6).is_ok());
        let err = TensorSpace::new(10, 7).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { what: "n^r", .. }));
        assert!(err.to_string().contains("1000000"));
    }

    #[test]
    fn identity_composition() {
        let sp = TensorSpace::new(2, 2).unwrap();
        let id = TensorEndo::identity(sp);
        let mut m = TensorEndo::zero(sp);
        m.insert(0, 3, Q::from_integer(2.into()));
        m.insert(1, 1, Q::from_integer((-1).into()));
        assert_eq!(id.compose(&m).unwrap(), m);
        assert_eq!(m.compose(&id).unwrap(), m);
        let other = TensorEndo::identity(TensorSpace::new(2, 3).unwrap());
        assert!(m.compose(&other).is_err());
    }
}
