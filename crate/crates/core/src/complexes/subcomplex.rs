use std::collections::BTreeSet;

use serde::Serialize;

use super::chain::HomologyProfile;
use super::delta::{DeltaComplex, Simplex};
use crate::error::{Error, Result};
use crate::exactlin::AbelianGroup;

/// A face-closed set of simplices of some parent complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    members: Vec<BTreeSet<usize>>,
}

impl Subcomplex {
    /// Validates that `sets[p]` are in range and closed under faces.
    pub fn new(parent: &DeltaComplex, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        let mut sets = sets;
        if sets.len() > parent.cells().len() {
            if sets[parent.cells().len()..].iter().any(|s| !s.is_empty()) {
                return Err(Error::invalid("subcomplex has simplices above the parent dimension"));
            }
            sets.truncate(parent.cells().len());
        }
        sets.resize(parent.cells().len(), BTreeSet::new());
        for (p, set) in sets.iter().enumerate() {
            if let Some(&i) = set.iter().find(|&&i| i >= parent.count(p)) {
                return Err(Error::invalid(format!("simplex {i} of dimension {p} is not in the parent")));
            }
            if p == 0 {
                continue;
            }
            for &i in set {
                if let Some(f) = parent.faces(p, i).iter().find(|f| !sets[p - 1].contains(f)) {
                    return Err(Error::invalid(format!(
                        "not face-closed: simplex {i} of dimension {p} is present but its face {f} is not"
                    )));
                }
            }
        }
        Ok(Subcomplex { members: sets })
    }

    /// Smallest subcomplex containing the given simplices.
    pub fn closure_of(parent: &DeltaComplex, simplices: &[Simplex]) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); parent.cells().len()];
        let mut stack: Vec<Simplex> = simplices.to_vec();
        while let Some(s) = stack.pop() {
            if s.dim >= sets.len() || s.index >= parent.count(s.dim) {
                return Err(Error::invalid(format!("simplex {s:?} is not in the parent")));
            }
            if sets[s.dim].insert(s.index) && s.dim > 0 {
                stack.extend(parent.faces(s.dim, s.index).iter().map(|&f| Simplex::new(s.dim - 1, f)));
            }
        }
        Ok(Subcomplex { members: sets })
    }

    pub fn full(parent: &DeltaComplex) -> Self {
        Subcomplex { members: parent.counts().into_iter().map(|n| (0..n).collect()).collect() }
    }

    pub fn empty(parent: &DeltaComplex) -> Self {
        Subcomplex { members: vec![BTreeSet::new(); parent.cells().len()] }
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.members.get(s.dim).is_some_and(|m| m.contains(&s.index))
    }

    pub fn simplices(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.get(p).into_iter().flatten().copied()
    }

    pub fn count(&self, p: usize) -> usize {
        self.members.get(p).map_or(0, BTreeSet::len)
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(BTreeSet::is_empty)
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.intersection(b).copied().collect())
            .collect();
        Subcomplex { members }
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.union(b).copied().collect())
            .collect();
        Subcomplex { members }
    }

    /// The subcomplex as a standalone complex, simplices renumbered in
    /// increasing parent order.
    pub fn to_complex(&self, parent: &DeltaComplex) -> DeltaComplex {
        let index: Vec<Vec<usize>> = self
            .members
            .iter()
            .enumerate()
            .map(|(p, m)| {
                let mut idx = vec![usize::MAX; parent.count(p)];
                for (k, &i) in m.iter().enumerate() {
                    idx[i] = k;
                }
                idx
            })
            .collect();
        let cells = self
            .members
            .iter()
            .enumerate()
            .map(|(p, m)| {
                m.iter()
                    .map(|&i| {
                        if p == 0 {
                            Vec::new()
                        } else {
                            parent.faces(p, i).iter().map(|&f| index[p - 1][f]).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        DeltaComplex::new(cells).expect("face-closed subsets form a complex")
    }

    /// Reduced homology; `None` for the empty subcomplex.
    pub fn reduced_homology(&self, parent: &DeltaComplex) -> Option<HomologyProfile> {
        if self.is_empty() {
            return None;
        }
        Some(self.to_complex(parent).homology(true).expect("nonempty"))
    }
}

/// Intersection of a nonempty family of subcomplexes.
pub fn intersect_subcomplexes(parts: &[Subcomplex]) -> Result<Subcomplex> {
    let (first, rest) = parts.split_first().ok_or_else(|| Error::invalid("empty family"))?;
    Ok(rest.iter().fold(first.clone(), |acc, s| acc.intersection(s)))
}

/// What a `k`-fold intersection must look like for the cover lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "dim", rename_all = "kebab-case")]
pub enum Expectation {
    Empty,
    /// nonempty and spherical of this dimension
    Spherical(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionCheck {
    pub indices: Vec<usize>,
    pub expected: Expectation,
    pub empty: bool,
    pub reduced_homology: Option<Vec<AbelianGroup>>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub n: usize,
    pub checks: Vec<IntersectionCheck>,
    pub hypotheses_hold: bool,
    pub total_spherical: bool,
    pub total_homology: Vec<AbelianGroup>,
}

impl CoverReport {
    pub fn violations(&self) -> impl Iterator<Item = &IntersectionCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Checks every intersection of cover members against the cover lemma
/// hypotheses for dimension `n` and reports whether the total space is
/// `n`-spherical.
///
/// A `k`-fold intersection (`k ≥ 1`) must be empty when `k ≥ n + 2` and
/// otherwise nonempty and `(n − k + 1)`-spherical.
pub fn verify_cover_sphericity(x: &DeltaComplex, cover: &[Subcomplex], n: usize) -> Result<CoverReport> {
    if cover.is_empty() {
        return Err(Error::invalid("empty cover"));
    }
    if cover.len() > 20 {
        return Err(Error::cap("cover members", cover.len(), 20));
    }
    let union = cover.iter().skip(1).fold(cover[0].clone(), |acc, s| acc.union(s));
    if union != Subcomplex::full(x) {
        return Err(Error::invalid("cover members do not exhaust the complex"));
    }
    let m = cover.len();
    let mut checks = Vec::new();
    for mask in 1u32..(1 << m) {
        let indices: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let k = indices.len();
        let parts: Vec<Subcomplex> = indices.iter().map(|&i| cover[i].clone()).collect();
        let inter = intersect_subcomplexes(&parts)?;
        let expected = if k >= n + 2 { Expectation::Empty } else { Expectation::Spherical(n + 1 - k) };
        let homology = inter.reduced_homology(x);
        let holds = match expected {
            Expectation::Empty => inter.is_empty(),
            Expectation::Spherical(d) => homology.as_ref().is_some_and(|h| h.is_spherical(d)),
        };
        checks.push(IntersectionCheck {
            indices,
            expected,
            empty: inter.is_empty(),
            reduced_homology: homology.map(|h| h.groups),
            holds,
        });
    }
    let total = x.homology(true)?;
    Ok(CoverReport {
        n,
        hypotheses_hold: checks.iter().all(|c| c.holds),
        total_spherical: total.is_spherical(n),
        total_homology: total.groups,
        checks,
    })
}

/// Homology of the pair `(X, A)` in degrees `0..=dim X`.
pub fn relative_homology(x: &DeltaComplex, a: &Subcomplex) -> HomologyProfile {
    let c = x.chain_complex(false);
    let keep: Vec<Vec<usize>> = (0..x.cells().len())
        .map(|p| (0..x.count(p)).filter(|&i| !a.contains(Simplex::new(p, i))).collect())
        .collect();
    c.quotient_by_basis(&keep).expect("kept lists match the chain ranks").profile(false)
}
