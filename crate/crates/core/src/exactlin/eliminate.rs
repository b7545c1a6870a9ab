//! Sparse unit-pivot elimination and cokernel presentations.
//!
//! The lattice `L ⊂ ℤ^ambient` spanned by some generators (the columns of a
//! boundary matrix) is reduced by repeatedly pivoting on a `±1` entry of a
//! short generator. Each pivot eliminates one ambient coordinate and is
//! logged as a substitution, so any vector can later be carried into the
//! reduced coordinates of `ℤ^ambient / L`. Generators left without unit
//! entries form a small block that is finished with dense Smith normal form.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::dense::{self, DenseMatrix, Track};
use super::int::Int;
use super::sparse::SparseIntMatrix;

type SparseRow = Vec<(usize, Int)>;

/// One eliminated coordinate: in the quotient,
/// `e_coord ≡ -pivot · Σ entries[k] e_k`.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub coord: usize,
    pub pivot: Int,
    pub entries: SparseRow,
}

/// The quotient `ℤ^ambient / L` in reduced coordinates.
#[derive(Clone, Debug)]
pub struct CokernelPresentation {
    ambient: usize,
    steps: Vec<Substitution>,
    /// coordinates never used as a pivot, ascending
    survivors: Vec<usize>,
    /// survivors touched by the leftover block, ascending
    active: Vec<usize>,
    /// survivors not touched by the leftover block, ascending
    passive: Vec<usize>,
    /// Smith diagonal of the leftover block
    leftover: Vec<BigInt>,
    right: Option<DenseMatrix>,
    right_inv: Option<DenseMatrix>,
}

/// An element of a cokernel written against its invariant-factor basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelCoords {
    /// free coordinates (ℤ-valued)
    pub free: Vec<BigInt>,
    /// torsion coordinates, each reduced into `[0, d_i)`
    pub torsion: Vec<BigInt>,
}

impl CokernelPresentation {
    /// Presents `ℤ^ambient / span(generators)`.
    ///
    /// When `with_transform` is false only the invariants are computed and
    /// [`CokernelPresentation::coordinates`] is unavailable.
    pub fn new(ambient: usize, generators: Vec<SparseRow>, with_transform: bool) -> Self {
        Eliminator::new(ambient, generators).run(with_transform)
    }

    /// Presents the cokernel of `m : ℤ^cols → ℤ^rows`.
    pub fn of_matrix(m: &SparseIntMatrix, with_transform: bool) -> Self {
        let gens = m
            .columns()
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, Int::from(v))).collect())
            .collect();
        Self::new(m.row_count(), gens, with_transform)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.steps.len() + self.leftover.len()
    }

    /// Full list of elementary divisors of the generator matrix.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.steps.len()];
        out.extend(self.leftover.iter().cloned());
        out
    }

    /// Invariant factors `> 1` of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.leftover.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.ambient - self.rank()
    }

    fn torsion_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.leftover.iter().enumerate().filter(|(_, d)| !d.is_one()).map(|(j, _)| j)
    }

    /// Writes `z ∈ ℤ^ambient` in the cokernel basis.
    pub fn coordinates(&self, z: &[(usize, BigInt)]) -> CokernelCoords {
        let right = self
            .right
            .as_ref()
            .expect("cokernel presentation built without transforms");
        let mut dense_z = vec![Int::ZERO; self.ambient];
        for (k, v) in z {
            dense_z[*k] = dense_z[*k].add(&Int::from(v));
        }
        for step in &self.steps {
            let zc = std::mem::replace(&mut dense_z[step.coord], Int::ZERO);
            if zc.is_zero() {
                continue;
            }
            let f = zc.mul(&step.pivot);
            for (k, m) in &step.entries {
                dense_z[*k] = dense_z[*k].sub_mul(&f, m);
            }
        }
        let act: Vec<BigInt> = self.active.iter().map(|&c| dense_z[c].to_big()).collect();
        let mut w = vec![BigInt::zero(); self.active.len()];
        for (i, x) in act.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                let r = &right[i][j];
                if !r.is_zero() {
                    *wj += x * r;
                }
            }
        }
        let torsion = self
            .torsion_positions()
            .map(|j| w[j].mod_floor(&self.leftover[j]))
            .collect();
        let mut free: Vec<BigInt> = w[self.leftover.len()..].to_vec();
        free.extend(self.passive.iter().map(|&c| dense_z[c].to_big()));
        CokernelCoords { free, torsion }
    }

    /// Ambient representative of the `j`-th free basis element.
    pub fn free_lift(&self, j: usize) -> Vec<(usize, BigInt)> {
        let n_act_free = self.active.len() - self.leftover.len();
        if j < n_act_free {
            self.active_lift(self.leftover.len() + j)
        } else {
            vec![(self.passive[j - n_act_free], BigInt::one())]
        }
    }

    /// Ambient representative of the `j`-th torsion generator.
    pub fn torsion_lift(&self, j: usize) -> Vec<(usize, BigInt)> {
        let pos = self.torsion_positions().nth(j).expect("torsion index out of range");
        self.active_lift(pos)
    }

    fn active_lift(&self, pos: usize) -> Vec<(usize, BigInt)> {
        let vi = self
            .right_inv
            .as_ref()
            .expect("cokernel presentation built without transforms");
        self.active
            .iter()
            .zip(&vi[pos])
            .filter(|(_, v)| !v.is_zero())
            .map(|(&c, v)| (c, v.clone()))
            .collect()
    }

    /// Number of coordinates that were pivoted away.
    pub fn eliminated(&self) -> usize {
        self.steps.len()
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }
}

struct Eliminator {
    ambient: usize,
    rows: Vec<SparseRow>,
    col_rows: Vec<HashSet<usize>>,
}

impl Eliminator {
    fn new(ambient: usize, generators: Vec<SparseRow>) -> Self {
        let mut col_rows = vec![HashSet::new(); ambient];
        let rows: Vec<SparseRow> = generators
            .into_iter()
            .map(|mut r| {
                r.retain(|(_, v)| !v.is_zero());
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                col_rows[*c].insert(i);
            }
        }
        Eliminator { ambient, rows, col_rows }
    }

    fn run(mut self, with_transform: bool) -> CokernelPresentation {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| Reverse((r.len(), i)))
            .collect();
        let mut pivoted = vec![false; self.ambient];
        let mut steps = Vec::new();

        while let Some(Reverse((len, r))) = heap.pop() {
            if self.rows[r].len() != len || len == 0 {
                continue;
            }
            // unit entry whose column is least populated
            let mut best: Option<(usize, usize)> = None;
            for (pos, (c, v)) in self.rows[r].iter().enumerate() {
                if !v.is_unit() {
                    continue;
                }
                let cnt = self.col_rows[*c].len();
                if best.is_none_or(|(_, bc)| cnt < bc) {
                    best = Some((pos, cnt));
                }
            }
            let Some((pos, _)) = best else { continue };

            let pivot_row = std::mem::take(&mut self.rows[r]);
            let (c, a) = pivot_row[pos].clone();
            for (cc, _) in &pivot_row {
                self.col_rows[*cc].remove(&r);
            }
            let mut others: Vec<usize> = self.col_rows[c].iter().copied().collect();
            others.sort_unstable();
            for k in others {
                let m = match self.rows[k].binary_search_by_key(&c, |(cc, _)| *cc) {
                    Ok(i) => self.rows[k][i].1.clone(),
                    Err(_) => unreachable!("column index out of sync"),
                };
                let factor = m.mul(&a);
                let merged = self.merge(k, &pivot_row, &factor);
                self.rows[k] = merged;
                if !self.rows[k].is_empty() {
                    heap.push(Reverse((self.rows[k].len(), k)));
                }
            }
            self.col_rows[c].clear();
            pivoted[c] = true;
            let entries = pivot_row.into_iter().filter(|(cc, _)| *cc != c).collect();
            steps.push(Substitution { coord: c, pivot: a, entries });
        }

        let survivors: Vec<usize> = (0..self.ambient).filter(|&c| !pivoted[c]).collect();
        let leftover_rows: Vec<&SparseRow> = self.rows.iter().filter(|r| !r.is_empty()).collect();
        let mut touched = vec![false; self.ambient];
        for row in &leftover_rows {
            for (c, _) in row.iter() {
                touched[*c] = true;
            }
        }
        let active: Vec<usize> = survivors.iter().copied().filter(|&c| touched[c]).collect();
        let passive: Vec<usize> = survivors.iter().copied().filter(|&c| !touched[c]).collect();
        let mut slot = vec![usize::MAX; self.ambient];
        for (i, &c) in active.iter().enumerate() {
            slot[c] = i;
        }
        let dense_rows: Vec<Vec<BigInt>> = leftover_rows
            .iter()
            .map(|row| {
                let mut d = vec![BigInt::zero(); active.len()];
                for (c, v) in row.iter() {
                    d[slot[*c]] = v.to_big();
                }
                d
            })
            .collect();
        let basis = dense::row_lattice_basis(dense_rows, active.len());
        // rows are generators: coordinates transform on the right
        let track = Track {
            right: with_transform,
            right_inv: with_transform,
            ..Track::NONE
        };
        let snf = dense::smith(basis, active.len(), track);
        let (right, right_inv) = if with_transform {
            (snf.right, snf.right_inv)
        } else {
            (None, None)
        };
        CokernelPresentation {
            ambient: self.ambient,
            steps,
            survivors,
            active,
            passive,
            leftover: snf.diagonal,
            right,
            right_inv,
        }
    }

    /// `rows[k] - factor * pivot`, keeping the column index in sync.
    fn merge(&mut self, k: usize, pivot: &SparseRow, factor: &Int) -> SparseRow {
        let old = std::mem::take(&mut self.rows[k]);
        let mut out = Vec::with_capacity(old.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < pivot.len() {
            let ci = old.get(i).map_or(usize::MAX, |e| e.0);
            let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
            if ci < cj {
                out.push(old[i].clone());
                i += 1;
            } else if cj < ci {
                let v = Int::ZERO.sub_mul(factor, &pivot[j].1);
                if !v.is_zero() {
                    self.col_rows[cj].insert(k);
                    out.push((cj, v));
                }
                j += 1;
            } else {
                let v = old[i].1.sub_mul(factor, &pivot[j].1);
                if v.is_zero() {
                    self.col_rows[ci].remove(&k);
                } else {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }
}
