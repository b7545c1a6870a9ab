//! Dense Smith normal form with optional transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type DenseMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> DenseMatrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = zeros(n, m);
    for i in 0..n {
        assert_eq!(a[i].len(), k);
        for (l, bl) in b.iter().enumerate() {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] += x * &bl[j];
                }
            }
        }
    }
    out
}

/// Which of the four transforms `U, U⁻¹, V, V⁻¹` to maintain.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { left: false, left_inv: false, right: false, right_inv: false };
    pub const ALL: Track = Track { left: true, left_inv: true, right: true, right_inv: true };
}

/// `U · M · V = D` with `D` diagonal, `d_i | d_{i+1}`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct DenseSnf {
    pub diagonal: Vec<BigInt>,
    pub left: Option<DenseMatrix>,
    pub left_inv: Option<DenseMatrix>,
    pub right: Option<DenseMatrix>,
    pub right_inv: Option<DenseMatrix>,
}

impl DenseSnf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    a: DenseMatrix,
    rows: usize,
    cols: usize,
    u: Option<DenseMatrix>,
    u_inv: Option<DenseMatrix>,
    v: Option<DenseMatrix>,
    v_inv: Option<DenseMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (s, d) = pick_two(&mut self.a, src, dst);
        axpy(d, q, s);
        if let Some(u) = &mut self.u {
            let (s, d) = pick_two(u, src, dst);
            axpy(d, q, s);
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse op: col_src -= q * col_dst
            for row in ui.iter_mut() {
                let t = &row[dst] * q;
                if !t.is_zero() {
                    row[src] -= t;
                }
            }
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in self.a.iter_mut() {
            let t = &row[src] * q;
            if !t.is_zero() {
                row[dst] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = &row[src] * q;
                if !t.is_zero() {
                    row[dst] += t;
                }
            }
        }
        if let Some(vi) = &mut self.v_inv {
            // inverse op: row_src -= q * row_dst
            let (d, s) = pick_two(vi, dst, src);
            axpy(s, &-q, d);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    /// Nonzero entry of minimal absolute value in the trailing block, ties
    /// broken by lowest row then lowest column.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs() < self.a[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
                if self.a[i][j].abs().is_one() && best == Some((i, j)) {
                    // a unit at the earliest position cannot be beaten
                    return best;
                }
            }
        }
        best
    }
}

fn pick_two(m: &mut DenseMatrix, src: usize, dst: usize) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += q * s;
        }
    }
}

/// Smith normal form of a dense integer matrix.
///
/// Pivoting always selects the nonzero entry of least absolute value in the
/// remaining block (lowest row, then column, on ties). Any correct rule gives
/// the same diagonal; this one keeps the transforms deterministic.
pub fn smith(matrix: DenseMatrix, cols: usize, track: Track) -> DenseSnf {
    let rows = matrix.len();
    debug_assert!(matrix.iter().all(|r| r.len() == cols));
    let mut w = Work {
        a: matrix,
        rows,
        cols,
        u: track.left.then(|| identity(rows)),
        u_inv: track.left_inv.then(|| identity(rows)),
        v: track.right.then(|| identity(cols)),
        v_inv: track.right_inv.then(|| identity(cols)),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot appeared; re-pivot on it
                let (pi, pj) = w.min_pivot_line(t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // row and column cleared; enforce divisibility of the rest
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.a[t][t].clone());
        t += 1;
    }
    DenseSnf { diagonal, left: w.u, left_inv: w.u_inv, right: w.v, right_inv: w.v_inv }
}

impl Work {
    /// Smallest nonzero entry in row `t` or column `t` (the pivot included).
    fn min_pivot_line(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[t][t].abs();
        for i in t + 1..self.rows {
            let x = self.a[i][t].abs();
            if !x.is_zero() && x < best_abs {
                best = (i, t);
                best_abs = x;
            }
        }
        for j in t + 1..self.cols {
            let x = self.a[t][j].abs();
            if !x.is_zero() && x < best_abs {
                best = (t, j);
                best_abs = x;
            }
        }
        best
    }
}

/// Integer row echelon form of the row lattice (rows are lattice
/// generators). Returns at most `cols` rows spanning the same lattice.
pub fn row_lattice_basis(rows_in: Vec<Vec<BigInt>>, cols: usize) -> DenseMatrix {
    // basis[c] holds the row whose leading nonzero is at column c
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; cols];
    for mut row in rows_in {
        let mut c = 0;
        loop {
            while c < cols && row[c].is_zero() {
                c += 1;
            }
            if c == cols {
                break;
            }
            match basis[c].take() {
                None => {
                    basis[c] = Some(row);
                    break;
                }
                Some(mut b) => {
                    // gcd combination on the leading entries
                    let e = b[c].extended_gcd(&row[c]);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let bq = &b[c] / &g;
                    let rq = &row[c] / &g;
                    let mut new_b = Vec::with_capacity(cols);
                    let mut new_r = Vec::with_capacity(cols);
                    for k in 0..cols {
                        new_b.push(&x * &b[k] + &y * &row[k]);
                        new_r.push(&bq * &row[k] - &rq * &b[k]);
                    }
                    b = new_b;
                    row = new_r;
                    basis[c] = Some(b);
                    debug_assert!(row[c].is_zero());
                    c += 1;
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> DenseMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_snf_with_transforms() {
        let m = big(&[vec![2, 4], vec![6, 8]]);
        let s = smith(m.clone(), 2, Track::ALL);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
        let u = s.left.unwrap();
        let v = s.right.unwrap();
        let d = mat_mul(&mat_mul(&u, &m), &v);
        assert_eq!(d, big(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(mat_mul(&u, s.left_inv.as_ref().unwrap()), identity(2));
        assert_eq!(mat_mul(&v, s.right_inv.as_ref().unwrap()), identity(2));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) must become diag(1, 6)
        let s = smith(big(&[vec![2, 0], vec![0, 3]]), 2, Track::NONE);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn lattice_basis_spans() {
        let b = row_lattice_basis(big(&[vec![4, 2], vec![6, 4], vec![2, 2]]), 2);
        assert!(b.len() <= 2);
        let s = smith(b, 2, Track::NONE);
        let s0 = smith(big(&[vec![4, 2], vec![6, 4], vec![2, 2]]), 2, Track::NONE);
        assert_eq!(s.diagonal, s0.diagonal);
    }
}
