use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::dense::{self, Track};
use crate::exactlin::{AbelianGroup, AbelianHom, CokernelPresentation, SparseIntMatrix};

/// A bounded chain complex of free abelian groups.
///
/// Degrees run from `low` upwards; `boundaries[k]` is the differential out
/// of degree `low + k`, so `boundaries[0]` always has zero rows.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    low: i64,
    ranks: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    pub fn new(low: i64, ranks: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::DimensionMismatch("one differential per degree expected".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let rows = if k == 0 { 0 } else { ranks[k - 1] };
            if d.col_count() != ranks[k] || d.row_count() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    low + k as i64,
                    d.row_count(),
                    d.col_count(),
                    rows,
                    ranks[k]
                )));
            }
        }
        Ok(ChainComplex { low, ranks, boundaries })
    }

    /// Checks `∂∂ = 0` in every degree.
    pub fn verify_square_zero(&self) -> Result<()> {
        for k in 2..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k])?.is_zero() {
                return Err(Error::invalid(format!("∂∂ ≠ 0 out of degree {}", self.low + k as i64)));
            }
        }
        Ok(())
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn top(&self) -> i64 {
        self.low + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |k| self.ranks[k])
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        let k = degree - self.low;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// Differential out of `degree`, or a zero matrix of the right shape.
    pub fn boundary(&self, degree: i64) -> SparseIntMatrix {
        match self.slot(degree) {
            Some(k) => self.boundaries[k].clone(),
            None => SparseIntMatrix::zeros(self.rank(degree - 1), self.rank(degree)),
        }
    }

    fn boundary_ref(&self, degree: i64) -> Option<&SparseIntMatrix> {
        self.slot(degree).map(|k| &self.boundaries[k])
    }

    pub fn homology(&self, degree: i64) -> AbelianGroup {
        let n = self.rank(degree);
        if n == 0 {
            return AbelianGroup::trivial();
        }
        let out_rank = self
            .boundary_ref(degree)
            .map_or(0, |d| CokernelPresentation::of_matrix(d, false).rank());
        match self.boundary_ref(degree + 1) {
            Some(d) => {
                let pres = CokernelPresentation::of_matrix(d, false);
                AbelianGroup::from_cyclic(n - out_rank - pres.rank(), pres.torsion())
            }
            None => AbelianGroup::free(n - out_rank),
        }
    }

    /// Homology in degrees `0..=top`, each differential eliminated once.
    pub fn profile(&self, reduced: bool) -> HomologyProfile {
        self.profile_up_to(reduced, self.top())
    }

    pub fn profile_up_to(&self, reduced: bool, max_degree: i64) -> HomologyProfile {
        let max_degree = max_degree.min(self.top());
        if max_degree < 0 {
            return HomologyProfile { reduced, groups: Vec::new() };
        }
        // differentials out of degrees 0..=max_degree + 1
        let pres: Vec<Option<(usize, Vec<BigInt>)>> = (0..=max_degree + 1)
            .into_par_iter()
            .map(|deg| {
                self.boundary_ref(deg).map(|d| {
                    let p = CokernelPresentation::of_matrix(d, false);
                    (p.rank(), p.torsion())
                })
            })
            .collect();
        let groups = (0..=max_degree)
            .map(|deg| {
                let n = self.rank(deg);
                let out = pres[deg as usize].as_ref().map_or(0, |p| p.0);
                let (inr, tors) = pres[deg as usize + 1].clone().unwrap_or((0, Vec::new()));
                AbelianGroup::from_cyclic(n - out - inr, tors)
            })
            .collect();
        HomologyProfile { reduced, groups }
    }

    /// Quotient by a subcomplex spanned by basis vectors: `keep[d]` lists,
    /// in order, the basis indices in degree `low + d` that survive.
    pub fn quotient_by_basis(&self, keep: &[Vec<usize>]) -> Result<ChainComplex> {
        if keep.len() != self.ranks.len() {
            return Err(Error::DimensionMismatch("one kept list per degree expected".into()));
        }
        let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(keep.len());
        for (k, list) in keep.iter().enumerate() {
            let mut idx = vec![None; self.ranks[k]];
            for (pos, &i) in list.iter().enumerate() {
                idx[i] = Some(pos);
            }
            new_index.push(idx);
        }
        let mut boundaries = Vec::with_capacity(keep.len());
        for (k, list) in keep.iter().enumerate() {
            let rows = if k == 0 { 0 } else { keep[k - 1].len() };
            let cols: Vec<Vec<(usize, BigInt)>> = list
                .iter()
                .map(|&c| {
                    if k == 0 {
                        return Vec::new();
                    }
                    self.boundaries[k]
                        .column(c)
                        .iter()
                        .filter_map(|(r, v)| new_index[k - 1][*r].map(|r2| (r2, v.clone())))
                        .collect()
                })
                .collect();
            boundaries.push(SparseIntMatrix::from_columns(rows, cols)?);
        }
        ChainComplex::new(self.low, keep.iter().map(Vec::len).collect(), boundaries)
    }
}

/// Homology groups in degrees `0, 1, …`, reduced or not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub groups: Vec<AbelianGroup>,
}

impl HomologyProfile {
    /// The group in `degree`, trivial beyond the computed range.
    pub fn group(&self, degree: usize) -> AbelianGroup {
        self.groups.get(degree).cloned().unwrap_or_else(AbelianGroup::trivial)
    }

    pub fn is_spherical(&self, n: usize) -> bool {
        self.groups.iter().enumerate().all(|(d, g)| d == n || g.is_trivial())
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(AbelianGroup::is_trivial)
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<usize> {
        (0..self.groups.len()).filter(|&d| !self.groups[d].is_trivial()).collect()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.reduced { "H~" } else { "H" };
        for (d, g) in self.groups.iter().enumerate() {
            if d > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}_{d} = {g}")?;
        }
        Ok(())
    }
}

/// A basis of `H_d` of a chain complex together with a way to read off the
/// coordinates of any cycle in that basis.
///
/// Built from a cokernel presentation of `∂_{d+1}`: the cokernel splits as
/// free part plus torsion, torsion lifts are automatically cycles, and the
/// cycles in the free part are the left kernel of `∂_d` on the free lifts.
pub struct HomologyCoordinates {
    group: AbelianGroup,
    ambient: usize,
    pres: CokernelPresentation,
    /// rank of `∂_d` restricted to the free lifts
    kernel_offset: usize,
    /// `U⁻¹` from the Smith form of that restriction (`None` when it is zero)
    left_inv: Option<Vec<Vec<BigInt>>>,
    generators: Vec<Vec<(usize, BigInt)>>,
}

impl HomologyCoordinates {
    pub fn new(c: &ChainComplex, degree: i64) -> Result<Self> {
        let ambient = c.rank(degree);
        let d_in = c.boundary(degree + 1);
        let d_out = c.boundary(degree);
        let pres = CokernelPresentation::of_matrix(&d_in, true);
        let f = pres.free_rank();
        let lifts: Vec<Vec<(usize, BigInt)>> = (0..f).map(|j| pres.free_lift(j)).collect();
        let images: Vec<Vec<(usize, BigInt)>> = lifts.iter().map(|l| d_out.apply_sparse(l)).collect();
        let mut generators = Vec::new();
        let (kernel_offset, left_inv) = if images.iter().all(Vec::is_empty) {
            generators.extend(lifts.iter().cloned());
            (0, None)
        } else {
            let cols = d_out.row_count();
            let mut n = dense::zeros(f, cols);
            for (j, img) in images.iter().enumerate() {
                for (r, v) in img {
                    n[j][*r] = v.clone();
                }
            }
            let snf = dense::smith(n, cols, Track { left: true, left_inv: true, ..Track::NONE });
            let rank = snf.rank();
            let u = snf.left.expect("tracked");
            for row in &u[rank..] {
                generators.push(combine(row, &lifts));
            }
            (rank, snf.left_inv)
        };
        let tors = pres.torsion();
        for t in 0..tors.len() {
            generators.push(pres.torsion_lift(t));
        }
        let group = AbelianGroup { free_rank: f - kernel_offset, torsion: tors };
        Ok(HomologyCoordinates { group, ambient, pres, kernel_offset, left_inv, generators })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Cycle representatives of the basis, free generators first.
    pub fn generators(&self) -> &[Vec<(usize, BigInt)>] {
        &self.generators
    }

    /// Coordinates of the class of cycle `z`; torsion entries reduced.
    pub fn coordinates(&self, z: &[(usize, BigInt)]) -> Result<Vec<BigInt>> {
        if let Some((r, _)) = z.iter().find(|(r, _)| *r >= self.ambient) {
            return Err(Error::DimensionMismatch(format!("chain index {r} out of range")));
        }
        let c = self.pres.coordinates(z);
        let free: Vec<BigInt> = match &self.left_inv {
            None => c.free,
            Some(ui) => {
                let f = c.free.len();
                let mut x = vec![BigInt::zero(); f];
                for (i, y) in c.free.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj += y * &ui[i][j];
                    }
                }
                if x[..self.kernel_offset].iter().any(|v| !v.is_zero()) {
                    return Err(Error::invalid("chain is not a cycle"));
                }
                x.split_off(self.kernel_offset)
            }
        };
        let mut out = free;
        out.extend(c.torsion);
        Ok(out)
    }
}

fn combine(coeffs: &[BigInt], vectors: &[Vec<(usize, BigInt)>]) -> Vec<(usize, BigInt)> {
    let mut acc = std::collections::BTreeMap::<usize, BigInt>::new();
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (r, x) in v {
            *acc.entry(*r).or_insert_with(BigInt::zero) += c * x;
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Map on homology induced by a chain-level map in one degree, given as a
/// matrix from the source chains to the target chains.
pub fn induced_map(
    source: &HomologyCoordinates,
    target: &HomologyCoordinates,
    chain_map: &SparseIntMatrix,
) -> Result<AbelianHom> {
    if chain_map.col_count() != source.ambient || chain_map.row_count() != target.ambient {
        return Err(Error::DimensionMismatch(format!(
            "chain map is {}x{}, chain groups have ranks {} and {}",
            chain_map.row_count(),
            chain_map.col_count(),
            source.ambient,
            target.ambient
        )));
    }
    let cols = source
        .generators
        .iter()
        .map(|g| target.coordinates(&chain_map.apply_sparse(g)))
        .collect::<Result<Vec<_>>>()?;
    AbelianHom::from_columns(source.group.clone(), target.group.clone(), cols)
}
