use std::collections::HashMap;

use num_bigint::BigInt;

use super::chain::{ChainComplex, HomologyProfile};
use crate::error::{Error, Result};
use crate::exactlin::SparseIntMatrix;

/// A Δ-complex with ordered simplices.
///
/// `cells[p][i]` lists the faces `d_0, …, d_p` of the `i`-th `p`-simplex as
/// indices into `cells[p - 1]`; vertices carry an empty face list. The face
/// `d_j` is the face opposite the `j`-th vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    cells: Vec<Vec<Vec<usize>>>,
}

/// A simplex addressed by dimension and index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Simplex {
    pub dim: usize,
    pub index: usize,
}

impl Simplex {
    pub fn new(dim: usize, index: usize) -> Self {
        Simplex { dim, index }
    }
}

impl DeltaComplex {
    /// Validates face indices, face counts and the simplicial identities.
    pub fn new(cells: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut cells = cells;
        while cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
        }
        for (p, layer) in cells.iter().enumerate() {
            for (i, faces) in layer.iter().enumerate() {
                let expected = if p == 0 { 0 } else { p + 1 };
                if faces.len() != expected {
                    return Err(Error::invalid(format!(
                        "simplex {i} of dimension {p} has {} faces, expected {expected}",
                        faces.len()
                    )));
                }
                if p == 0 {
                    continue;
                }
                if let Some(&bad) = faces.iter().find(|&&f| f >= cells[p - 1].len()) {
                    return Err(Error::invalid(format!(
                        "simplex {i} of dimension {p}: face index {bad} out of range \
                         (dimension {} has {} simplices)",
                        p - 1,
                        cells[p - 1].len()
                    )));
                }
            }
        }
        let x = DeltaComplex { cells };
        x.check_identities()?;
        Ok(x)
    }

    fn check_identities(&self) -> Result<()> {
        for p in 2..self.cells.len() {
            for (s, faces) in self.cells[p].iter().enumerate() {
                for j in 1..=p {
                    for i in 0..j {
                        let lhs = self.cells[p - 1][faces[j]][i];
                        let rhs = self.cells[p - 1][faces[i]][j - 1];
                        if lhs != rhs {
                            return Err(Error::invalid(format!(
                                "simplex {s} of dimension {p} violates d_{i} d_{j} = d_{} d_{i}",
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        DeltaComplex { cells: Vec::new() }
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    /// `n` isolated vertices.
    pub fn discrete(n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        DeltaComplex { cells: vec![vec![Vec::new(); n]] }
    }

    /// Builds the complex whose simplices are the given vertex tuples, one
    /// list per dimension; faces are found by deleting a vertex. Every face
    /// of a listed tuple must itself be listed.
    pub fn from_vertex_tuples(vertex_count: usize, tuples: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut cells: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); vertex_count]];
        let mut lookup: Vec<HashMap<Vec<usize>, usize>> =
            vec![(0..vertex_count).map(|v| (vec![v], v)).collect()];
        for (p, layer) in tuples.into_iter().enumerate().skip(1) {
            let mut faces_layer = Vec::with_capacity(layer.len());
            let mut map = HashMap::with_capacity(layer.len());
            for (i, t) in layer.into_iter().enumerate() {
                if t.len() != p + 1 {
                    return Err(Error::invalid(format!("tuple {t:?} listed in dimension {p}")));
                }
                let mut faces = Vec::with_capacity(p + 1);
                for j in 0..=p {
                    let mut f = t.clone();
                    f.remove(j);
                    match lookup[p - 1].get(&f) {
                        Some(&k) => faces.push(k),
                        None => return Err(Error::invalid(format!("face {f:?} of {t:?} is missing"))),
                    }
                }
                faces_layer.push(faces);
                if map.insert(t.clone(), i).is_some() {
                    return Err(Error::invalid(format!("tuple {t:?} listed twice")));
                }
            }
            cells.push(faces_layer);
            lookup.push(map);
        }
        DeltaComplex::new(cells)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn count(&self, p: usize) -> usize {
        self.cells.get(p).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn faces(&self, p: usize, i: usize) -> &[usize] {
        &self.cells[p][i]
    }

    pub fn face(&self, s: Simplex, j: usize) -> Simplex {
        Simplex::new(s.dim - 1, self.cells[s.dim][s.index][j])
    }

    pub(crate) fn cells(&self) -> &[Vec<Vec<usize>>] {
        &self.cells
    }

    /// Ordered vertices of a simplex, recovered through the face maps.
    pub fn vertex_tuple(&self, p: usize, i: usize) -> Vec<usize> {
        if p == 0 {
            return vec![i];
        }
        // d_p keeps v_0..v_{p-1}; d_0 keeps v_1..v_p
        let mut head = self.vertex_tuple(p - 1, self.cells[p][i][p]);
        let tail = self.vertex_tuple(p - 1, self.cells[p][i][0]);
        head.push(*tail.last().expect("nonempty"));
        head
    }

    pub fn vertex_tuples(&self, p: usize) -> Vec<Vec<usize>> {
        if p == 0 {
            return (0..self.count(0)).map(|v| vec![v]).collect();
        }
        let lower = self.vertex_tuples(p - 1);
        self.cells[p]
            .iter()
            .map(|faces| {
                let mut t = lower[faces[p]].clone();
                t.push(*lower[faces[0]].last().expect("nonempty"));
                t
            })
            .collect()
    }

    /// Matrix of `∂_p : C_p → C_{p-1}`, `∂σ = Σ (-1)^i d_i σ`.
    ///
    /// Above the top dimension this is the zero map out of an empty basis.
    pub fn boundary_matrix(&self, p: usize) -> Result<SparseIntMatrix> {
        if p == 0 {
            return Err(Error::invalid("boundary_matrix needs p >= 1"));
        }
        let rows = self.count(p - 1);
        let columns = self
            .cells
            .get(p)
            .map(|layer| layer.iter().map(|faces| signed_faces(faces)).collect())
            .unwrap_or_default();
        Ok(SparseIntMatrix::from_columns_unchecked(rows, columns))
    }

    /// Cellular chain complex, augmented to ℤ in degree −1 when `reduced`.
    pub fn chain_complex(&self, reduced: bool) -> ChainComplex {
        let mut ranks = Vec::new();
        let mut boundaries = Vec::new();
        if reduced {
            ranks.push(1);
            boundaries.push(SparseIntMatrix::zeros(0, 1));
            let aug = (0..self.count(0)).map(|_| vec![(0, BigInt::from(1))]).collect();
            ranks.push(self.count(0));
            boundaries.push(SparseIntMatrix::from_columns_unchecked(1, aug));
        } else {
            ranks.push(self.count(0));
            boundaries.push(SparseIntMatrix::zeros(0, self.count(0)));
        }
        for p in 1..self.cells.len() {
            ranks.push(self.count(p));
            boundaries.push(self.boundary_matrix(p).expect("p >= 1"));
        }
        ChainComplex::new(if reduced { -1 } else { 0 }, ranks, boundaries).expect("consistent by construction")
    }

    pub fn homology(&self, reduced: bool) -> Result<HomologyProfile> {
        if reduced && self.is_empty() {
            return Err(Error::invalid("reduced homology of the empty complex"));
        }
        Ok(self.chain_complex(reduced).profile(reduced))
    }

    /// Reduced homology in degrees `0..=max_degree` only.
    pub fn reduced_homology_up_to(&self, max_degree: usize) -> Result<HomologyProfile> {
        if self.is_empty() {
            return Err(Error::invalid("reduced homology of the empty complex"));
        }
        Ok(self.chain_complex(true).profile_up_to(true, max_degree as i64))
    }

    /// True iff the reduced homology vanishes outside degree `n`. A complex
    /// with no reduced homology at all counts as `n`-spherical for every `n`.
    pub fn is_n_spherical(&self, n: usize) -> Result<bool> {
        Ok(self.homology(true)?.is_spherical(n))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(p, layer)| if p % 2 == 0 { layer.len() as i64 } else { -(layer.len() as i64) })
            .sum()
    }

    /// Join with `m` isolated points. Each new simplex is an old simplex
    /// (possibly empty) with one new vertex appended last.
    pub fn join_with_finite_set(&self, m: usize) -> Result<DeltaComplex> {
        if m == 0 {
            return Err(Error::invalid("join with the empty set"));
        }
        if self.is_empty() {
            return Err(Error::invalid("join of the empty complex"));
        }
        let old = |q: usize| self.count(q);
        // index of σ * f where σ is the j-th (q-1)-simplex (the empty simplex when q = 0)
        let joined = |q: usize, j: usize, f: usize| old(q) + j * m + f;
        let top = self.cells.len();
        let mut cells: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let mut layer: Vec<Vec<usize>> = self.cells.get(q).cloned().unwrap_or_default();
            if q == 0 {
                layer.extend((0..m).map(|_| Vec::new()));
            } else if q == 1 {
                for v in 0..old(0) {
                    for f in 0..m {
                        // d_0 drops v, d_1 drops f
                        layer.push(vec![joined(0, 0, f), v]);
                    }
                }
            } else {
                for (j, faces) in self.cells[q - 1].iter().enumerate() {
                    for f in 0..m {
                        let mut fs: Vec<usize> = faces.iter().map(|&k| joined(q - 1, k, f)).collect();
                        fs.push(j);
                        layer.push(fs);
                    }
                }
            }
            cells.push(layer);
        }
        DeltaComplex::new(cells)
    }
}

pub(crate) fn signed_faces(faces: &[usize]) -> Vec<(usize, BigInt)> {
    let mut col: Vec<(usize, BigInt)> = Vec::with_capacity(faces.len());
    for (i, &f) in faces.iter().enumerate() {
        let s = if i % 2 == 0 { 1 } else { -1 };
        match col.iter_mut().find(|(r, _)| *r == f) {
            Some(e) => e.1 += s,
            None => col.push((f, BigInt::from(s))),
        }
    }
    col.retain(|(_, v)| *v != BigInt::from(0));
    col.sort_by_key(|(r, _)| *r);
    col
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::AbelianGroup;

    fn circle2() -> DeltaComplex {
        // X(2): vertices 1, 2 and edges (1,2), (2,1)
        DeltaComplex::from_vertex_tuples(2, vec![vec![], vec![vec![0, 1], vec![1, 0]]]).unwrap()
    }

    #[test]
    fn edge_boundary() {
        let x = DeltaComplex::new(vec![vec![vec![], vec![]], vec![vec![1, 0]]]).unwrap();
        let d = x.boundary_matrix(1).unwrap();
        assert_eq!(d.get(0, 0), BigInt::from(-1));
        assert_eq!(d.get(1, 0), BigInt::from(1));
    }

    #[test]
    fn loop_boundary_vanishes() {
        let x = DeltaComplex::new(vec![vec![vec![]], vec![vec![0, 0]]]).unwrap();
        assert!(x.boundary_matrix(1).unwrap().is_zero());
        assert_eq!(x.homology(true).unwrap().group(1), AbelianGroup::free(1));
    }

    #[test]
    fn two_vertex_circle_matrix() {
        let d = circle2().boundary_matrix(1).unwrap();
        let dense = SparseIntMatrix::from_dense(&[vec![-1, 1], vec![1, -1]]);
        assert_eq!(d, dense);
        // above the top dimension: empty basis
        let d3 = circle2().boundary_matrix(3).unwrap();
        assert_eq!((d3.row_count(), d3.col_count()), (0, 0));
    }

    #[test]
    fn bad_faces_rejected() {
        assert!(DeltaComplex::new(vec![vec![vec![]], vec![vec![0, 3]]]).is_err());
        assert!(DeltaComplex::new(vec![vec![vec![]], vec![vec![0]]]).is_err());
        // a triangle whose faces do not glue
        let cells = vec![
            vec![vec![], vec![], vec![]],
            vec![vec![1, 0], vec![2, 1], vec![2, 0]],
            vec![vec![2, 1, 0]],
        ];
        assert!(DeltaComplex::new(cells).is_err());
    }

    #[test]
    fn point_and_circle_homology() {
        let p = DeltaComplex::point();
        assert!(p.homology(true).unwrap().groups.iter().all(AbelianGroup::is_trivial));
        assert!(p.is_n_spherical(0).unwrap());
        let c = circle2();
        assert!(c.is_n_spherical(1).unwrap());
        assert!(!c.is_n_spherical(0).unwrap());
        assert!(DeltaComplex::empty().homology(true).is_err());
    }

    #[test]
    fn vertex_tuples_recovered() {
        let x = DeltaComplex::from_vertex_tuples(
            3,
            vec![vec![], vec![vec![0, 1], vec![0, 2], vec![1, 2]], vec![vec![0, 1, 2]]],
        )
        .unwrap();
        assert_eq!(x.vertex_tuple(2, 0), vec![0, 1, 2]);
        assert_eq!(x.vertex_tuples(1), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn joins() {
        let s0 = DeltaComplex::discrete(2);
        let j = s0.join_with_finite_set(2).unwrap();
        assert_eq!(j.counts(), vec![4, 4]);
        assert!(j.is_n_spherical(1).unwrap());
        assert_eq!(j.homology(true).unwrap().group(1), AbelianGroup::free(1));
        let cone = circle2().join_with_finite_set(1).unwrap();
        assert!(cone.homology(true).unwrap().groups.iter().all(AbelianGroup::is_trivial));
        let j3 = circle2().join_with_finite_set(3).unwrap();
        assert!(j3.is_n_spherical(2).unwrap());
        assert_eq!(j3.homology(true).unwrap().group(2), AbelianGroup::free(2));
        assert!(circle2().join_with_finite_set(0).is_err());
    }
}
