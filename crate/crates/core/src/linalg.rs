//! Exact linear algebra over the rationals.
//!
//! Ranks and pivot columns are computed by fraction-free (Bareiss)
//! elimination: each row is first scaled to a primitive integer row, then
//! eliminated over `BigInt` with exact division by the previous pivot. No
//! tolerance enters anywhere.

use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub type DenseMatrix = Vec<Vec<Q>>;

/// Sparse matrix stored column-wise: `columns[j]` lists `(row, value)` pairs
/// sorted by row, with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from triples; repeated positions are summed.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut columns: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "triple ({r},{c}) outside {rows}x{cols}");
            columns[c].push((r, v));
        }
        for col in &mut columns {
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, Q)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *col = merged;
        }
        SparseMatrix { rows, columns }
    }

    pub fn from_dense(m: &[Vec<Q>], cols: usize) -> Self {
        let rows = m.len();
        let triples = m.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, v.clone()))
        });
        Self::from_triples(rows, cols, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Q)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Triples in column-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = vec![vec![Q::zero(); self.cols()]; self.rows];
        for (i, j, v) in self.triples() {
            m[i][j] = v.clone();
        }
        m
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let mut out = Vec::with_capacity(other.cols());
        for col in &other.columns {
            let mut acc: std::collections::BTreeMap<usize, Q> = Default::default();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    *acc.entry(*i).or_insert_with(Q::zero) += a * b;
                }
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SparseMatrix {
            rows: self.rows,
            columns: out,
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let triples = self
            .triples()
            .map(|(i, j, v)| (i, j, v.clone()))
            .chain(other.triples().map(|(i, j, v)| (i, j, -v.clone())));
        Self::from_triples(self.rows, self.cols(), triples)
    }

    pub fn scale(&self, s: &Q) -> SparseMatrix {
        let triples = self.triples().map(|(i, j, v)| (i, j, v * s));
        Self::from_triples(self.rows, self.cols(), triples)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Conjugates by a basis permutation: new basis vector `k` is old vector
    /// `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> SparseMatrix {
        assert_eq!(self.rows, self.cols());
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let triples = self
            .triples()
            .map(|(i, j, v)| (inverse[i], inverse[j], v.clone()));
        Self::from_triples(self.rows, self.cols(), triples)
    }

    pub fn rank(&self) -> usize {
        rank(&self.to_dense())
    }
}

/// Scales a rational row by the lcm of its denominators, then divides by
/// the gcd of the numerators.
fn primitive_integer_row(row: &[Q]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Leftmost maximal set of linearly independent columns.
pub fn pivot_columns(m: &[Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| primitive_integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = quo;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    pivot_columns(m).len()
}

/// Inverse of a square matrix by Gauss-Jordan elimination, `None` if
/// singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<DenseMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "inverse of a non-square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> DenseMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    /// Reference rank by plain rational elimination.
    fn naive_rank(mut a: DenseMatrix) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..rows {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn pivots_skip_dependent_columns() {
        let a = m(&[&[1, 2, 3, 0], &[2, 4, 7, 0], &[0, 0, 0, 0]]);
        assert_eq!(pivot_columns(&a), vec![0, 2]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
        let empty_cols: DenseMatrix = vec![vec![]; 3];
        assert_eq!(rank(&empty_cols), 0);
    }

    #[test]
    fn rational_rows() {
        let a = vec![
            vec![q_frac(1, 2), q_frac(1, 3)],
            vec![q_frac(3, 2), q(1)],
        ];
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3));
        assert_eq!(inv[0][0], q_frac(3, 4));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn sparse_ops() {
        let a = SparseMatrix::from_triples(2, 2, [(0, 1, q(1)), (0, 1, q(2)), (1, 0, q(0))]);
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(0, 1), q(3));
        let sq = a.mul(&a);
        assert!(sq.is_zero());
        let p = a.permuted(&[1, 0]);
        assert_eq!(p.get(1, 0), q(3));
    }

    proptest! {
        #[test]
        fn bareiss_matches_naive(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-3i64..4, 36)) {
            let a: DenseMatrix = (0..rows)
                .map(|i| (0..cols).map(|j| q_frac(seed[i * 6 + j], 1 + (i as i64 + j as i64) % 3)).collect())
                .collect();
            prop_assert_eq!(rank(&a), naive_rank(a.clone()));
        }
    }
}
