use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns.
///
/// Each column is a list of `(row, value)` pairs sorted by row with no
/// explicit zeros. Boundary operators are naturally produced one column
/// (one cell) at a time, which is why the column layout was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, BigInt::from(1))]).collect();
        SparseIntMatrix { rows: n, columns }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed and zero sums dropped.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            *acc[c].entry(r).or_insert_with(BigInt::zero) += v.into();
        }
        let columns = acc
            .into_iter()
            .map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseIntMatrix { rows, columns })
    }

    /// Builds from already sorted, zero-free columns. Used by the complex
    /// builders where the invariants hold by construction.
    pub(crate) fn from_columns_unchecked(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        debug_assert!(columns.iter().all(|c| c
            .windows(2)
            .all(|w| w[0].0 < w[1].0)
            && c.iter().all(|(r, v)| *r < rows && !v.is_zero())));
        SparseIntMatrix { rows, columns }
    }

    /// Builds from unsorted column data, merging duplicates.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Result<Self> {
        let cols = columns.len();
        Self::from_triplets(
            rows,
            cols,
            columns
                .into_iter()
                .enumerate()
                .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense input");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    columns[j].push((i, BigInt::from(v)));
                }
            }
        }
        SparseIntMatrix { rows: nrows, columns }
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Iterates `(row, col, value)` in column-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        SparseIntMatrix { rows: self.columns.len(), columns }
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.col_count() != other.row_count() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.row_count(),
                self.col_count(),
                other.row_count(),
                other.col_count()
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|ocol| self.apply_sparse(ocol))
            .collect();
        Ok(SparseIntMatrix { rows: self.rows, columns })
    }

    /// `self * v` for a sparse vector `v` given as `(index, value)` pairs.
    pub fn apply_sparse(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (k, x) in v {
            for (r, a) in &self.columns[*k] {
                *acc.entry(*r).or_insert_with(BigInt::zero) += a * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.col_count()]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }
}
