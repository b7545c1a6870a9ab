//! Exact integer linear algebra: Smith normal form, ranks and the
//! isomorphism type of subquotients `ker A / im B`.
//!
//! Everything here is arbitrary precision. The sparse elimination path
//! works on checked `i64` values and promotes entries to `BigInt` on
//! overflow, so no result can silently wrap.

pub mod abelian;
pub mod dense;
pub mod eliminate;
pub mod int;
pub mod sparse;

use num_bigint::BigInt;
use num_traits::Zero;

pub use abelian::{AbelianGroup, AbelianHom, MapVerdict};
pub use eliminate::{CokernelCoords, CokernelPresentation};
pub use int::Int;
pub use sparse::SparseIntMatrix;

use crate::error::{Error, Result};

/// Smith normal form `U · M · V = diag(d_1, …, d_k, 0, …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// positive invariant factors, each dividing the next
    pub diagonal: Vec<BigInt>,
    pub left: SparseIntMatrix,
    pub right: SparseIntMatrix,
}

/// Smith normal form with both unimodular transforms.
///
/// Runs the dense algorithm; meant for matrices of modest size. Use
/// [`elementary_divisors`] when only the diagonal is needed.
pub fn snf(m: &SparseIntMatrix) -> SnfResult {
    let res = dense::smith(m.to_dense(), m.col_count(), dense::Track { left: true, right: true, ..dense::Track::NONE });
    let to_sparse = |d: dense::DenseMatrix, n: usize| {
        let rows: Vec<(usize, usize, BigInt)> = d
            .into_iter()
            .enumerate()
            .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, v)| (i, j, v)))
            .filter(|(_, _, v)| !v.is_zero())
            .collect();
        SparseIntMatrix::from_triplets(n, n, rows).expect("square transform")
    };
    SnfResult {
        diagonal: res.diagonal,
        left: to_sparse(res.left.expect("tracked"), m.row_count()),
        right: to_sparse(res.right.expect("tracked"), m.col_count()),
    }
}

/// Nonzero invariant factors of `m`, computed by sparse elimination.
pub fn elementary_divisors(m: &SparseIntMatrix) -> Vec<BigInt> {
    CokernelPresentation::of_matrix(m, false).elementary_divisors()
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    CokernelPresentation::of_matrix(m, false).rank()
}

/// Isomorphism type of `ker(a) / im(b)`; requires `a · b = 0`.
pub fn quotient_structure(a: &SparseIntMatrix, b: &SparseIntMatrix) -> Result<AbelianGroup> {
    if a.col_count() != b.row_count() {
        return Err(Error::DimensionMismatch(format!(
            "ker of a {}x{} map modulo im of a {}x{} map",
            a.row_count(),
            a.col_count(),
            b.row_count(),
            b.col_count()
        )));
    }
    if !a.mul(b)?.is_zero() {
        return Err(Error::invalid("composite of the two maps is not zero"));
    }
    let rank_a = rank(a);
    let pres_b = CokernelPresentation::of_matrix(b, false);
    let free = a.col_count() - rank_a - pres_b.rank();
    Ok(AbelianGroup::from_cyclic(free, pres_b.torsion()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_matrix() {
        let m = SparseIntMatrix::zeros(0, 0);
        assert!(snf(&m).diagonal.is_empty());
        assert!(elementary_divisors(&m).is_empty());
    }

    #[test]
    fn identity_three() {
        let m = SparseIntMatrix::identity(3);
        assert_eq!(snf(&m).diagonal, vec![BigInt::from(1); 3]);
    }

    #[test]
    fn two_by_two_example() {
        // det = -8 and gcd of entries = 2 force [2, 4]
        let m = SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(snf(&m).diagonal, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(elementary_divisors(&m), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_maps() {
        let a = SparseIntMatrix::zeros(1, 2);
        let b = SparseIntMatrix::zeros(2, 1);
        assert_eq!(quotient_structure(&a, &b).unwrap(), AbelianGroup::free(2));
    }

    #[test]
    fn circle() {
        // two vertices u, v; edges e0 = (u, v), e1 = (v, u)
        let d1 = SparseIntMatrix::from_dense(&[vec![-1, 1], vec![1, -1]]);
        let d2 = SparseIntMatrix::zeros(2, 0);
        assert_eq!(quotient_structure(&d1, &d2).unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn projective_plane() {
        // Δ-structure on RP²: vertices v, w; edges a, b : v → w and a loop c
        // at v; triangles U with faces (a, b, c) and L with faces (b, a, c).
        // ∂U = a - b + c, ∂L = b - a + c, so on ker ∂1 = <a - b, c> the
        // boundaries span a lattice of index 2.
        let d1 = SparseIntMatrix::from_dense(&[vec![-1, -1, 0], vec![1, 1, 0]]);
        let d2 = SparseIntMatrix::from_dense(&[vec![1, -1], vec![-1, 1], vec![1, 1]]);
        assert!(d1.mul(&d2).unwrap().is_zero());
        let h1 = quotient_structure(&d1, &d2).unwrap();
        assert_eq!(h1, AbelianGroup::cyclic(2));
    }

    #[test]
    fn rejects_noncomposable() {
        let a = SparseIntMatrix::identity(2);
        let b = SparseIntMatrix::identity(2);
        assert!(quotient_structure(&a, &b).is_err());
    }
}
