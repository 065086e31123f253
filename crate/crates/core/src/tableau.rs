//! Semistandard tableaux and Kostka numbers by direct enumeration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        if !shape.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::NotPartition(shape.iter().map(|&x| x as i64).collect()));
        }
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entries read row by row, top to bottom.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1].iter().zip(&pair[0]).all(|(below, above)| below > above)
        });
        rows_ok && cols_ok
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut v = vec![0i64; n];
        for &e in self.rows.iter().flatten() {
            v[e - 1] += 1;
        }
        Weight::new(v).expect("n >= 1")
    }
}

/// Validates a shape as a partition; trailing zeros are dropped.
pub fn partition_parts(shape: &Weight) -> Result<Vec<usize>> {
    let e = shape.entries();
    if !shape.is_dominant() || e.iter().any(|&x| x < 0) {
        return Err(Error::NotPartition(e.to_vec()));
    }
    Ok(e.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect())
}

/// All semistandard tableaux of the given shape and weight, ordered by reading word.
pub fn ssyt(shape: &Weight, weight: &Weight) -> Result<Vec<Tableau>> {
    let parts = partition_parts(shape)?;
    weight.require_composition()?;
    if shape.degree() != weight.degree() {
        return Err(Error::DegreeMismatch { left: shape.degree(), right: weight.degree() });
    }
    let n = weight.n();
    if parts.len() > n {
        return Ok(Vec::new());
    }
    let mut remaining: Vec<usize> = weight.entries().iter().map(|&x| x as usize).collect();
    let mut rows: Vec<Vec<usize>> = parts.iter().map(|&l| Vec::with_capacity(l)).collect();
    let cells: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = Vec::new();

    fn rec(
        pos: usize,
        cells: &[(usize, usize)],
        n: usize,
        remaining: &mut [usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Tableau>,
    ) {
        if pos == cells.len() {
            out.push(Tableau {
                shape: rows.iter().map(Vec::len).collect(),
                rows: rows.clone(),
            });
            return;
        }
        let (r, c) = cells[pos];
        let lo_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            if remaining[v - 1] == 0 {
                continue;
            }
            remaining[v - 1] -= 1;
            rows[r].push(v);
            rec(pos + 1, cells, n, remaining, rows, out);
            rows[r].pop();
            remaining[v - 1] += 1;
        }
    }

    rec(0, &cells, n, &mut remaining, &mut rows, &mut out);
    Ok(out)
}

/// Kostka number `K_{μλ} = #SSYT(μ, λ)`.
pub fn kostka(mu: &Weight, lambda: &Weight) -> Result<u64> {
    Ok(ssyt(mu, lambda)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::compositions;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    /// Every filling of the shape by letters `1..=n`, kept when semistandard of the weight.
    fn brute_ssyt(shape: &[usize], weight: &Weight) -> Vec<Tableau> {
        let n = weight.n();
        let cells: usize = shape.iter().sum();
        let mut out = Vec::new();
        for code in 0..n.pow(cells as u32) {
            let mut c = code;
            let mut word = vec![0; cells];
            for k in (0..cells).rev() {
                word[k] = c % n + 1;
                c /= n;
            }
            let mut it = word.into_iter();
            let rows: Vec<Vec<usize>> = shape.iter().map(|&l| it.by_ref().take(l).collect()).collect();
            let t = Tableau::new(rows).unwrap();
            if t.is_semistandard() && &t.weight(n) == weight {
                out.push(t);
            }
        }
        out
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(ssyt(&w(&[2, 1]), &w(&[1, 1, 1])).unwrap().len(), 2);
        assert_eq!(ssyt(&w(&[3, 1, 0]), &w(&[3, 1, 0])).unwrap().len(), 1);
        assert_eq!(ssyt(&w(&[1, 1, 1]), &w(&[3, 0, 0])).unwrap().len(), 0);
        assert!(matches!(ssyt(&w(&[1, 2]), &w(&[2, 1])), Err(Error::NotPartition(_))));
    }

    #[test]
    fn ssyt_matches_brute_force() {
        for n in 1..=3usize {
            for r in 0..=4usize {
                for shape in compositions(n, r).into_iter().filter(Weight::is_dominant) {
                    let parts = partition_parts(&shape).unwrap();
                    for weight in compositions(n, r) {
                        let got = ssyt(&shape, &weight).unwrap();
                        let brute = brute_ssyt(&parts, &weight);
                        assert_eq!(got, brute, "shape {shape} weight {weight}");
                    }
                }
            }
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&w(&[2, 1, 0]), &w(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(kostka(&w(&[2, 1]), &w(&[2, 1])).unwrap(), 1);
        assert_eq!(kostka(&w(&[1, 1]), &w(&[2, 0])).unwrap(), 0);
    }
}
