//! Codeterminants `Y^ν_{i,j} = ξ_{i,ℓ(ν)} ξ_{ℓ(ν),j}` and exact basis checks.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{change_of_basis, rank, ChangeOfBasis, SparseVec};
use crate::schur::{ell_word, SchurElement};
use crate::tableau::{partition_parts, ssyt, Tableau};
use crate::weights::{dominant_compositions, pair_to_matrix, weight_of, MarginMatrix, MultiIndex, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeterminant {
    pub shape: Weight,
    pub left: Tableau,
    pub right: Tableau,
    pub value: SchurElement,
}

impl Codeterminant {
    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape.entries(),
            "left": self.left,
            "right": self.right,
            "value": self.value.to_json(),
        })
    }
}

/// Fills the rows of `shape` with `word`, left to right and top to bottom.
pub fn tableau_from_word(shape: &[usize], word: &[usize]) -> Result<Tableau> {
    if shape.iter().sum::<usize>() != word.len() {
        return Err(Error::DegreeMismatch { left: shape.iter().sum::<usize>() as i64, right: word.len() as i64 });
    }
    let mut rows = Vec::with_capacity(shape.len());
    let mut rest = word;
    for &len in shape {
        let (head, tail) = rest.split_at(len);
        rows.push(head.to_vec());
        rest = tail;
    }
    Tableau::new(rows)
}

pub fn codeterminant(nu: &Weight, i: &MultiIndex, j: &MultiIndex) -> Result<Codeterminant> {
    let parts = partition_parts(nu)?;
    if i.n() != nu.n() || j.n() != nu.n() {
        return Err(Error::LengthMismatch { left: nu.n(), right: i.n().max(j.n()) });
    }
    let ell = ell_word(nu)?;
    if i.r() != ell.r() || j.r() != ell.r() {
        return Err(Error::DegreeMismatch { left: ell.r() as i64, right: i.r().max(j.r()) as i64 });
    }
    let left = SchurElement::basis(&pair_to_matrix(i, &ell)?)?;
    let right = SchurElement::basis(&pair_to_matrix(&ell, j)?)?;
    Ok(Codeterminant {
        shape: nu.clone(),
        left: tableau_from_word(&parts, i.entries())?,
        right: tableau_from_word(&parts, j.entries())?,
        value: left.multiply(&right)?,
    })
}

/// All codeterminants with semistandard index tableaux spanning `1_λ S 1_μ`;
/// ordered by shape (most dominant first), then left and right tableau.
pub fn codet_basis(lambda: &Weight, mu: &Weight) -> Result<Vec<Codeterminant>> {
    lambda.require_composition()?;
    mu.require_composition()?;
    if lambda.n() != mu.n() {
        return Err(Error::LengthMismatch { left: lambda.n(), right: mu.n() });
    }
    if lambda.degree() != mu.degree() {
        return Err(Error::DegreeMismatch { left: lambda.degree(), right: mu.degree() });
    }
    let n = lambda.n();
    let mut out = Vec::new();
    for nu in dominant_compositions(n, lambda.degree() as usize) {
        let lefts = ssyt(&nu, lambda)?;
        let rights = ssyt(&nu, mu)?;
        for s in &lefts {
            for t in &rights {
                let i = MultiIndex::new(n, s.reading_word())?;
                let j = MultiIndex::new(n, t.reading_word())?;
                debug_assert_eq!(&weight_of(&i), lambda);
                out.push(codeterminant(&nu, &i, &j)?);
            }
        }
    }
    Ok(out)
}

fn vectors(elements: &[&SchurElement]) -> Result<Vec<SparseVec<MarginMatrix>>> {
    if let Some(first) = elements.first() {
        for e in elements {
            if (e.n(), e.r()) != (first.n(), first.r()) {
                return Err(Error::ShapeMismatch(first.n(), first.r(), e.n(), e.r()));
            }
        }
    }
    Ok(elements.iter().map(|e| e.terms().clone()).collect())
}

/// Rank over ℚ of a family of Schur algebra elements.
pub fn exact_rank(elements: &[SchurElement]) -> Result<usize> {
    let refs: Vec<&SchurElement> = elements.iter().collect();
    Ok(rank(&vectors(&refs)?))
}

/// Writes `targets` in coordinates of `basis` and reports whether the change is unimodular.
pub fn unimodular_change(targets: &[SchurElement], basis: &[SchurElement]) -> Result<ChangeOfBasis> {
    let refs: Vec<&SchurElement> = targets.iter().chain(basis).collect();
    let all = vectors(&refs)?;
    let (t, b) = all.split_at(targets.len());
    Ok(change_of_basis(t, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{hom_basis, idempotent};
    use crate::tableau::kostka;
    use crate::weights::{compositions, margin_matrices};

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ell_word_examples() {
        assert_eq!(ell_word(&w(&[2, 1])).unwrap().entries(), &[1, 1, 2]);
        assert_eq!(ell_word(&w(&[1, 1, 1])).unwrap().entries(), &[1, 2, 3]);
        assert_eq!(ell_word(&w(&[0, 3])).unwrap().entries(), &[2, 2, 2]);
    }

    #[test]
    fn diagonal_codeterminant_is_idempotent() {
        for nu in dominant_compositions(3, 3) {
            let ell = ell_word(&nu).unwrap();
            let y = codeterminant(&nu, &ell, &ell).unwrap();
            assert_eq!(y.value, idempotent(&nu).unwrap());
        }
    }

    #[test]
    fn non_dominant_shape_rejected() {
        let i = MultiIndex::new(2, vec![1, 2]).unwrap();
        assert!(codeterminant(&w(&[0, 2]), &i, &i).is_err());
    }

    #[test]
    fn small_codeterminant_nonzero() {
        let i = MultiIndex::new(2, vec![1, 2]).unwrap();
        let y = codeterminant(&w(&[2, 0]), &i, &i).unwrap();
        assert!(!y.value.is_zero());
    }

    #[test]
    fn involution_swaps_indices() {
        let words: Vec<MultiIndex> = crate::weights::all_multi_indices(2, 2);
        for nu in dominant_compositions(2, 2) {
            for i in &words {
                for j in &words {
                    let y = codeterminant(&nu, i, j).unwrap();
                    let yt = codeterminant(&nu, j, i).unwrap();
                    assert_eq!(y.value.involution(), yt.value);
                }
            }
        }
    }

    #[test]
    fn counts_and_rank() {
        let b = codet_basis(&w(&[1, 1]), &w(&[1, 1])).unwrap();
        assert_eq!(b.len(), 2);
        let vals: Vec<_> = b.iter().map(|c| c.value.clone()).collect();
        assert_eq!(exact_rank(&vals).unwrap(), 2);
        assert_eq!(codet_basis(&w(&[2, 0]), &w(&[2, 0])).unwrap().len(), 1);
        for l in compositions(3, 3) {
            for m in compositions(3, 3) {
                let count = codet_basis(&l, &m).unwrap().len();
                let kk: u64 = dominant_compositions(3, 3)
                    .iter()
                    .map(|nu| kostka(nu, &l).unwrap() * kostka(nu, &m).unwrap())
                    .sum();
                assert_eq!(count as u64, kk);
                assert_eq!(count, margin_matrices(&l, &m).unwrap().len());
            }
        }
    }

    #[test]
    fn rank_and_unimodular_basics() {
        let xi = crate::schur::schur_basis(2, 2).unwrap();
        assert_eq!(exact_rank(&xi).unwrap(), 10);
        assert!(unimodular_change(&xi, &xi).unwrap().unimodular);
        let mut dup = xi.clone();
        dup[1] = dup[0].clone();
        assert_eq!(exact_rank(&dup).unwrap(), 9);
        let mixed = vec![xi[0].clone(), idempotent(&w(&[1, 1, 1])).unwrap()];
        assert!(exact_rank(&mixed).is_err());
    }

    #[test]
    fn codet_vs_xi_on_block() {
        let l = w(&[2, 1, 0]);
        let c: Vec<_> = codet_basis(&l, &l).unwrap().into_iter().map(|c| c.value).collect();
        let xi = hom_basis(&l, &l).unwrap();
        let change = unimodular_change(&c, &xi).unwrap();
        assert!(change.in_span);
        assert_eq!(exact_rank(&c).unwrap(), xi.len());
        assert!(change.integral);
    }
}
