//! Indexing sets of simple `S(λ)`- and `U̇(λ)`-modules in characteristic 0.
//!
//! Multiplicities are the combinatorial Kostka numbers; the characteristic-p
//! multiplicities are not computed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tableau::kostka;
use crate::weights::{dominance_leq, dominant_compositions, sort_dominant, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleEntry {
    pub mu: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleIndexReport {
    pub lambda: Vec<i64>,
    pub characteristic: &'static str,
    pub entries: Vec<SimpleEntry>,
    /// Present for `U̇(λ)`: the window half-width around `sort(λ)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

impl SimpleIndexReport {
    pub fn mus(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|e| e.mu.clone()).collect()
    }

    pub fn csv_rows(&self) -> Vec<(String, u64)> {
        self.entries
            .iter()
            .map(|e| (e.mu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), e.multiplicity))
            .collect()
    }
}

/// Dominant `μ ∈ Λ(n, r)` with `K_{μλ} ≠ 0`, each with its multiplicity.
pub fn simple_index_set(lambda: &Weight) -> Result<SimpleIndexReport> {
    lambda.require_composition()?;
    let mut entries = Vec::new();
    for mu in dominant_compositions(lambda.n(), lambda.degree() as usize) {
        let k = kostka(&mu, lambda)?;
        if k > 0 {
            entries.push(SimpleEntry { mu: mu.entries().to_vec(), multiplicity: k });
        }
    }
    Ok(SimpleIndexReport { lambda: lambda.entries().to_vec(), characteristic: "0", entries, window: None })
}

/// `{μ dominant : sort(λ) ⊴ μ}`, the prediction of the dominance criterion.
pub fn dominance_index_set(lambda: &Weight) -> Result<Vec<Vec<i64>>> {
    lambda.require_composition()?;
    let sorted = sort_dominant(lambda);
    let mut out = Vec::new();
    for mu in dominant_compositions(lambda.n(), lambda.degree() as usize) {
        if dominance_leq(&sorted, &mu)? {
            out.push(mu.entries().to_vec());
        }
    }
    Ok(out)
}

/// `dim 1_λ L(μ) = K_{μλ}` in characteristic 0.
pub fn simple_dim_char0(lambda: &Weight, mu: &Weight) -> Result<u64> {
    if !mu.is_dominant() {
        return Err(Error::NotPartition(mu.entries().to_vec()));
    }
    kostka(mu, lambda)
}

/// `K'_{μλ}` for weights in `ℤⁿ`: both are shifted by a common constant until nonnegative.
pub fn kostka_shifted(mu: &Weight, lambda: &Weight) -> Result<u64> {
    if mu.n() != lambda.n() {
        return Err(Error::LengthMismatch { left: mu.n(), right: lambda.n() });
    }
    if !mu.is_dominant() {
        return Err(Error::NotPartition(mu.entries().to_vec()));
    }
    if mu.degree() != lambda.degree() {
        return Ok(0);
    }
    let low = mu.entries().iter().chain(lambda.entries()).copied().min().unwrap_or(0);
    let k = (-low).max(0);
    kostka(&mu.shifted(k), &lambda.shifted(k))
}

/// Dominant `μ ∈ ℤⁿ` of the same degree as `λ` with `|μ_i − sort(λ)_i| ≤ window`
/// for every `i` and `K'_{μλ} ≠ 0`.
pub fn udot_simple_index_set(lambda: &Weight, window: u32) -> Result<SimpleIndexReport> {
    let sorted = sort_dominant(lambda);
    let n = lambda.n();
    let w = window as i64;
    let mut candidates: Vec<Vec<i64>> = vec![vec![]];
    for i in 0..n {
        let c = sorted.entries()[i];
        candidates = candidates
            .into_iter()
            .flat_map(|v| {
                (c - w..=c + w).filter_map(move |x| {
                    if v.last().is_some_and(|&prev| prev < x) {
                        return None;
                    }
                    let mut v = v.clone();
                    v.push(x);
                    Some(v)
                })
            })
            .collect();
    }
    let mut entries = Vec::new();
    for v in candidates {
        if v.iter().sum::<i64>() != lambda.degree() {
            continue;
        }
        let mu = Weight::new(v)?;
        let k = kostka_shifted(&mu, lambda)?;
        if k > 0 {
            entries.push(SimpleEntry { mu: mu.entries().to_vec(), multiplicity: k });
        }
    }
    entries.sort_by(|a, b| b.mu.cmp(&a.mu));
    Ok(SimpleIndexReport { lambda: lambda.entries().to_vec(), characteristic: "0", entries, window: Some(window) })
}
