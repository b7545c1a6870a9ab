use std::collections::HashMap;

use rayon::prelude::*;

use super::finite::FinitePermGroup;
use super::perm::Perm;
use crate::complexes::{DeltaComplex, Simplex};
use crate::error::{Error, Result};

/// A finite group acting on a Δ-complex through its vertices.
///
/// Simplices must be determined by their ordered vertex tuples, and each
/// group element must carry every simplex tuple to a simplex tuple. An
/// element that would reverse the order of a simplex's vertices therefore
/// fails validation rather than producing an inversion.
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    group: FinitePermGroup,
    complex: DeltaComplex,
    tuples: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    /// `images[g][p][i]`: index of `g · (p-simplex i)`
    images: Vec<Vec<Vec<u32>>>,
}

impl SimplicialAction {
    pub fn new(group: FinitePermGroup, complex: DeltaComplex) -> Result<Self> {
        if group.degree() != complex.count(0) {
            return Err(Error::invalid(format!(
                "group acts on {} points but the complex has {} vertices",
                group.degree(),
                complex.count(0)
            )));
        }
        let dims = complex.dim().map_or(0, |d| d + 1);
        let tuples: Vec<Vec<Vec<usize>>> = (0..dims).map(|p| complex.vertex_tuples(p)).collect();
        let mut lookup = Vec::with_capacity(dims);
        for (p, layer) in tuples.iter().enumerate() {
            let mut map = HashMap::with_capacity(layer.len());
            for (i, t) in layer.iter().enumerate() {
                if let Some(j) = map.insert(t.clone(), i) {
                    return Err(Error::invalid(format!(
                        "simplices {j} and {i} of dimension {p} share the vertex tuple {t:?}"
                    )));
                }
            }
            lookup.push(map);
        }
        let images = group
            .elements()
            .par_iter()
            .map(|g| image_table(g, &tuples, &lookup))
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialAction { group, complex, tuples, lookup, images })
    }

    /// The same complex with the action restricted to a subgroup.
    pub fn restrict(&self, subgroup: FinitePermGroup) -> Result<SimplicialAction> {
        if !subgroup.is_subgroup_of(&self.group) {
            return Err(Error::invalid("not a subgroup of the acting group"));
        }
        let images = subgroup
            .elements()
            .iter()
            .map(|g| self.images[self.group.index_of(g).expect("subgroup element")].clone())
            .collect();
        Ok(SimplicialAction {
            group: subgroup,
            complex: self.complex.clone(),
            tuples: self.tuples.clone(),
            lookup: self.lookup.clone(),
            images,
        })
    }

    pub fn group(&self) -> &FinitePermGroup {
        &self.group
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn tuple(&self, s: Simplex) -> &[usize] {
        &self.tuples[s.dim][s.index]
    }

    pub fn simplex_of_tuple(&self, t: &[usize]) -> Option<Simplex> {
        let p = t.len().checked_sub(1)?;
        self.lookup.get(p)?.get(t).map(|&i| Simplex::new(p, i))
    }

    /// `g · s` for the group element with index `g`.
    pub fn act(&self, g: usize, s: Simplex) -> Simplex {
        Simplex::new(s.dim, self.images[g][s.dim][s.index] as usize)
    }

    /// `g · s` for an arbitrary permutation of the vertices, if defined.
    pub fn act_perm(&self, g: &Perm, s: Simplex) -> Option<Simplex> {
        let t: Vec<usize> = self.tuple(s).iter().map(|&v| g.apply(v)).collect();
        self.simplex_of_tuple(&t)
    }

    /// Orbits of `p`-simplices, each sorted, ordered by least member.
    pub fn orbits(&self, p: usize) -> Vec<Vec<usize>> {
        let n = self.complex.count(p);
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order())
                .map(|g| self.images[g][p][i] as usize)
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Elements carrying `s` onto itself.
    pub fn stabilizer(&self, s: Simplex) -> FinitePermGroup {
        self.group
            .filter_subgroup(|g| self.act(self.group.index_of(g).expect("member"), s) == s)
    }

    /// Elements fixing every vertex of `s`.
    pub fn pointwise_stabilizer(&self, s: Simplex) -> FinitePermGroup {
        let t = self.tuple(s).to_vec();
        self.group.filter_subgroup(|g| t.iter().all(|&v| g.apply(v) == v))
    }

    /// Least element index carrying `s` to `t`.
    pub fn transporter(&self, s: Simplex, t: Simplex) -> Option<usize> {
        if s.dim != t.dim {
            return None;
        }
        (0..self.group.order()).find(|&g| self.act(g, s) == t)
    }

    /// First simplex left invariant by an element that moves one of its
    /// vertices, with that element's index.
    pub fn inversion_witness(&self) -> Option<(Simplex, usize)> {
        for p in 0..self.tuples.len() {
            for i in 0..self.tuples[p].len() {
                let s = Simplex::new(p, i);
                for g in 0..self.group.order() {
                    if self.act(g, s) == s {
                        let perm = self.group.element(g);
                        if self.tuples[p][i].iter().any(|&v| perm.apply(v) != v) {
                            return Some((s, g));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_without_inversions(&self) -> bool {
        self.inversion_witness().is_none()
    }
}

fn image_table(g: &Perm, tuples: &[Vec<Vec<usize>>], lookup: &[HashMap<Vec<usize>, usize>]) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::with_capacity(tuples.len());
    let mut buf = Vec::new();
    for (p, layer) in tuples.iter().enumerate() {
        let mut row = Vec::with_capacity(layer.len());
        for t in layer {
            buf.clear();
            buf.extend(t.iter().map(|&v| g.apply(v)));
            match lookup[p].get(&buf) {
                Some(&j) => row.push(j as u32),
                None => {
                    return Err(Error::invalid(format!(
                        "{g} sends the simplex {t:?} to {buf:?}, which is not a simplex"
                    )))
                }
            }
        }
        out.push(row);
    }
    Ok(out)
}
