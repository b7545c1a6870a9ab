use std::collections::VecDeque;

use serde::Serialize;

use super::bar::{group_homology_capped, homomorphism_induced_map, InducedMap, DEFAULT_MAX_CHAIN_RANK};
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroup, CokernelPresentation, Int};
use crate::groups::{direct_product, FinitePermGroup, GroupSummary, Perm};
use crate::wordcomplexes::Family;

/// Abelianization computed from the generators alone: `ℤ^k` modulo the
/// exponent-sum vectors of the Schreier relators `w(x)·s·w(xs)⁻¹` read off a
/// breadth-first spanning tree of the Cayley graph.
pub fn abelianization(g: &FinitePermGroup) -> AbelianGroup {
    let k = g.generators().len();
    let gens: Vec<usize> = g.generators().iter().map(|s| g.index_of(s).expect("member")).collect();
    let n = g.order();
    let mut exps: Vec<Option<Vec<i64>>> = vec![None; n];
    exps[0] = Some(vec![0; k]);
    let mut queue = VecDeque::from([0usize]);
    let mut relators: Vec<Vec<(usize, Int)>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let ex = exps[x].clone().expect("visited");
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let mut via = ex.clone();
            via[j] += 1;
            match &exps[y] {
                None => {
                    exps[y] = Some(via);
                    queue.push_back(y);
                }
                Some(ey) => {
                    let rel: Vec<(usize, Int)> = via
                        .iter()
                        .zip(ey)
                        .enumerate()
                        .filter(|(_, (a, b))| a != b)
                        .map(|(i, (a, b))| (i, Int::from(a - b)))
                        .collect();
                    if !rel.is_empty() {
                        relators.push(rel);
                    }
                }
            }
        }
    }
    let pres = CokernelPresentation::new(k, relators, false);
    AbelianGroup::from_cyclic(pres.free_rank(), pres.torsion())
}

/// Does conjugation by `g` act as the identity on `H_r(G)`?
pub fn conjugation_invariance_check(group: &FinitePermGroup, g: &Perm, r: usize) -> Result<bool> {
    if !group.contains(g) {
        return Err(Error::invalid("conjugating element is not in the group"));
    }
    let m = homomorphism_induced_map(group, group, |h| g.conjugate(h), r, DEFAULT_MAX_CHAIN_RANK)?;
    Ok(m.map == crate::exactlin::AbelianHom::identity(&m.map.source))
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethDegree {
    pub degree: usize,
    pub direct: AbelianGroup,
    pub tensor_terms: AbelianGroup,
    pub tor_terms: AbelianGroup,
    pub predicted: AbelianGroup,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub left: GroupSummary,
    pub right: GroupSummary,
    pub degrees: Vec<KunnethDegree>,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.holds)
    }
}

/// Compares `H_n(A × B)` computed directly with
/// `⊕_{i+j=n} H_i(A) ⊗ H_j(B) ⊕ ⊕_{i+j=n−1} Tor(H_i(A), H_j(B))` for `n ≤ r`.
pub fn kunneth_check(a: &FinitePermGroup, b: &FinitePermGroup, r: usize, max_chain_rank: usize) -> Result<KunnethReport> {
    let prod = direct_product(a, b)?;
    let ha = group_homology_capped(a, r, max_chain_rank)?;
    let hb = group_homology_capped(b, r, max_chain_rank)?;
    let hp = group_homology_capped(&prod, r, max_chain_rank)?;
    let degrees = (0..=r)
        .map(|n| {
            let mut tensor_terms = AbelianGroup::trivial();
            for i in 0..=n {
                tensor_terms = tensor_terms.direct_sum(&ha.group(i).tensor(&hb.group(n - i)));
            }
            let mut tor_terms = AbelianGroup::trivial();
            for i in 0..n {
                tor_terms = tor_terms.direct_sum(&ha.group(i).tor(&hb.group(n - 1 - i)));
            }
            let predicted = tensor_terms.direct_sum(&tor_terms);
            let direct = hp.group(n);
            KunnethDegree { degree: n, holds: direct == predicted, direct, tensor_terms, tor_terms, predicted }
        })
        .collect();
    Ok(KunnethReport { left: a.summary(), right: b.summary(), degrees })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub family: Family,
    pub r: usize,
    pub n: usize,
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub map: InducedMap,
    /// whether `n > 2r`
    pub in_range: bool,
}

/// `H_r(G_{n−1}) → H_r(G_n)` for the standard inclusion.
pub fn stability_check(family: Family, r: usize, n: usize, max_chain_rank: usize) -> Result<StabilityReport> {
    if n == 0 {
        return Err(Error::invalid("stability needs n >= 1"));
    }
    let big = family.group(n)?;
    let small = family.standard_subgroup(n - 1, n)?;
    let map = homomorphism_induced_map(&small, &big, Clone::clone, r, max_chain_rank)?;
    Ok(StabilityReport {
        family,
        r,
        n,
        source: map.map.source.clone(),
        target: map.map.target.clone(),
        in_range: n > 2 * r,
        map,
    })
}
