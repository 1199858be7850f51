//! Exact linear algebra over the rationals.
//!
//! Dense ranks use fraction-free (Bareiss) elimination on integer matrices;
//! rational rows are first cleared of denominators. [`SparseEchelon`] keeps an
//! incrementally reduced basis of sparse vectors and records the kernel of
//! the inserted family, which is what the primitive and indecomposable
//! computations need.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Scales a rational row to a primitive integer row with the same span.
fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

/// Rank of an integer matrix by Bareiss elimination. All intermediate
/// divisions are exact.
pub fn rank_integer(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let v = &pivot * &rows[r][c] - &factor * &rows[rank][c];
                rows[r][c] = v / &prev_pivot;
            }
        }
        // Columns left of `col` in rows below the pivot are already zero.
        prev_pivot = pivot;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rank_integer(rows.iter().map(|r| clear_denominators(r)).collect())
}

/// Basis of `{ x : A x = 0 }` for a dense `rows x ncols` matrix, from the
/// reduced row echelon form. Each basis vector has a 1 in one free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][col];
        for c in col..ncols {
            m[r][c] = &m[r][c] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..ncols {
                    let v = &m[r][c] * &f;
                    m[i][c] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Sparse vector keyed by an ordered basis label.
pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

/// Incremental row echelon form of sparse vectors.
///
/// Vectors are inserted one at a time. Each stored row has a leading key
/// with coefficient 1 that no other stored row contains. Alongside each row
/// the combination of inserted vectors producing it is kept, so a vector
/// that reduces to zero yields a kernel element of the inserted family.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, Vec<Rational>)>,
    inserted: usize,
    kernel: Vec<Vec<Rational>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon {
            rows: BTreeMap::new(),
            inserted: 0,
            kernel: Vec::new(),
        }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; returns the residue and the
    /// combination of stored rows that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>, combo: &mut Vec<Rational>) -> SparseVec<K> {
        loop {
            let hit = v
                .iter()
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, coeff)) = hit else {
                return v;
            };
            let (row, row_combo) = &self.rows[&key];
            axpy(&mut v, &-coeff.clone(), row);
            for (i, r) in row_combo.iter().enumerate() {
                if !r.is_zero() {
                    combo[i] -= &coeff * r;
                }
            }
        }
    }

    /// True when `v` lies in the span of what has been inserted.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        let mut scratch = vec![Rational::zero(); self.inserted];
        self.reduce(v.clone(), &mut scratch).is_empty()
    }

    /// Inserts `v`; returns `true` when it raised the rank.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        for (_, combo) in self.rows.values_mut() {
            combo.push(Rational::zero());
        }
        for k in &mut self.kernel {
            k.push(Rational::zero());
        }
        let mut combo = vec![Rational::zero(); self.inserted];
        combo[idx] = Rational::one();
        let residue = self.reduce(v, &mut combo);
        let Some((lead, lead_coeff)) = residue.iter().next().map(|(k, c)| (k.clone(), c.clone()))
        else {
            self.kernel.push(combo);
            return false;
        };
        let inv = Rational::one() / lead_coeff;
        let row: SparseVec<K> = residue.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let combo: Vec<Rational> = combo.into_iter().map(|c| c * &inv).collect();
        // Keep leading keys exclusive to their row.
        for (other_row, other_combo) in self.rows.values_mut() {
            if let Some(f) = other_row.get(&lead).cloned() {
                axpy(other_row, &-f.clone(), &row);
                for (i, c) in combo.iter().enumerate() {
                    other_combo[i] -= &f * c;
                }
            }
        }
        self.rows.insert(lead, (row, combo));
        true
    }

    /// Coefficient vectors (over the inserted family) of a kernel basis.
    pub fn kernel(&self) -> &[Vec<Rational>] {
        &self.kernel
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[2, 1], &[1, 3]])), 2);
        assert_eq!(rank(&[vec![rat(1, 2), rat(1, 3)], vec![int(3), int(2)]]), 1);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn dense_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot: Rational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn sparse_echelon_kernel() {
        let v = |pairs: &[(u32, i64)]| -> SparseVec<u32> {
            pairs.iter().map(|&(k, c)| (k, int(c))).collect()
        };
        let mut e = SparseEchelon::new();
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(e.insert(v(&[(2, 1), (3, 1)])));
        assert!(!e.insert(v(&[(1, 1), (3, -1)])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.kernel(), &[vec![int(-1), int(1), int(1)]]);
        assert!(e.contains(&v(&[(1, 2), (3, -2)])));
        assert!(!e.contains(&v(&[(3, 1)])));
    }
}
