use std::collections::BTreeSet;

use serde::Serialize;

use crate::complexes::{DeltaComplex, Simplex, Subcomplex};
use crate::error::{Error, Result};
use crate::grouphomology::{homomorphism_induced_map, InducedMap, DEFAULT_MAX_CHAIN_RANK};
use crate::groups::{FinitePermGroup, Perm, SimplicialAction};
use crate::wordcomplexes::{ConditionCheck, Family, WordComplex};

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub k: usize,
    /// simplices of dimension `≤ k + 1` are examined
    pub skeleton: usize,
    pub conditions: Vec<ConditionCheck>,
    /// `H_j(G) → H_j(G')` for `j ≤ k`, when every condition holds and the
    /// bar complexes fit under the cap
    pub conclusion: Option<Vec<InducedMap>>,
}

impl TransferReport {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn conclusion_holds(&self) -> Option<bool> {
        self.conclusion.as_ref().map(|maps| maps.iter().all(|m| m.verdict.iso))
    }

    pub fn passed(&self) -> bool {
        self.conditions_hold() && self.conclusion_holds() == Some(true)
    }
}

fn reduced_vanishing(x: &DeltaComplex, k: usize) -> Option<String> {
    match x.reduced_homology_up_to(k) {
        Ok(h) => (0..=k).find(|&d| !h.group(d).is_trivial()).map(|d| format!("reduced H_{d} = {}", h.group(d))),
        Err(e) => Some(e.to_string()),
    }
}

fn condition(id: &'static str, name: &'static str, witness: Option<String>) -> ConditionCheck {
    ConditionCheck { id, name, passed: witness.is_none(), witness }
}

/// Checks the hypotheses under which `H_j(G) → H_j(G')` is an isomorphism
/// for `j ≤ k`, for `G ≤ G'` acting on `X ⊆ X'`.
///
/// Only simplices of dimension `≤ k + 1` enter: every condition concerns
/// either those or homology in degrees `≤ k`, which the skeleton determines.
pub fn verify_orbit_quotient_transfer(
    big: &SimplicialAction,
    x: &Subcomplex,
    group: &FinitePermGroup,
    k: usize,
    max_chain_rank: usize,
) -> Result<TransferReport> {
    let xb = big.complex();
    let top = xb.dim().map_or(0, |d| d.min(k + 1));
    for p in 0..=xb.dim().unwrap_or(0) + 1 {
        if let Some(i) = x.simplices(p).find(|&i| i >= xb.count(p)) {
            return Err(Error::invalid(format!("simplex {i} of dimension {p} is not in X'")));
        }
    }
    let gb = big.group();
    if group.degree() != gb.degree() || !group.is_subgroup_of(gb) {
        return Err(Error::invalid("G is not a subgroup of G'"));
    }
    let in_g: Vec<bool> = gb.elements().iter().map(|p| group.contains(p)).collect();
    let g_elems: Vec<usize> = (0..gb.order()).filter(|&g| in_g[g]).collect();
    let mut conditions = Vec::new();

    let witness = (0..=top).find_map(|p| {
        (0..xb.count(p)).find_map(|i| {
            let s = Simplex::new(p, i);
            (0..gb.order()).find_map(|g| {
                let perm = gb.element(g);
                (big.act(g, s) == s && big.tuple(s).iter().any(|&v| perm.apply(v) != v))
                    .then(|| format!("{} inverts {:?}", perm.display_with(gb.labels()), big.tuple(s)))
            })
        })
    });
    conditions.push(condition("i", "without inversions", witness));

    let witness = (0..=top).find_map(|p| {
        x.simplices(p).find_map(|i| {
            let s = Simplex::new(p, i);
            g_elems.iter().find(|&&g| !x.contains(big.act(g, s))).map(|&g| {
                format!("{} moves {:?} out of X", gb.element(g).display_with(gb.labels()), big.tuple(s))
            })
        })
    });
    conditions.push(condition("ii", "X is G-invariant", witness));

    let small = skeleton_of(xb, x, top)?;
    let witness = reduced_vanishing(&small, k)
        .map(|w| format!("X: {w}"))
        .or_else(|| reduced_vanishing(&skeleton_of(xb, &Subcomplex::full(xb), top).expect("full"), k).map(|w| format!("X': {w}")));
    conditions.push(condition("iii", "X and X' are k-connected", witness));

    let witness = (0..=top).find_map(|p| {
        big.orbits(p)
            .into_iter()
            .find(|orbit| !orbit.iter().any(|&i| x.contains(Simplex::new(p, i))))
            .map(|orbit| format!("the G'-orbit of {:?} misses X", big.tuple(Simplex::new(p, orbit[0]))))
    });
    conditions.push(condition("iv", "every G'-orbit meets X", witness));

    let witness = (0..=top).find_map(|p| {
        let members: Vec<usize> = x.simplices(p).collect();
        members.iter().find_map(|&i| {
            let s = Simplex::new(p, i);
            let g_orbit: BTreeSet<usize> = g_elems.iter().map(|&g| big.act(g, s).index).collect();
            (0..gb.order())
                .map(|g| big.act(g, s))
                .find(|t| x.contains(*t) && !g_orbit.contains(&t.index))
                .map(|t| format!("{:?} and {:?} are G'-related but not G-related", big.tuple(s), big.tuple(t)))
        })
    });
    conditions.push(condition("v", "G'-related simplices of X are G-related", witness));

    let restricted = big.restrict(group.clone())?;
    let mut witness = None;
    'outer: for p in 0..=top.min(k) {
        for orbit in restricted.orbits(p) {
            let s = Simplex::new(p, orbit[0]);
            if !x.contains(s) {
                continue;
            }
            let stab_big = big.stabilizer(s);
            let stab_small = stab_big.filter_subgroup(|h| group.contains(h));
            for j in 0..=k - p {
                let m = homomorphism_induced_map(&stab_small, &stab_big, Perm::clone, j, max_chain_rank)?;
                if !m.verdict.iso {
                    witness = Some(format!(
                        "H_{j}(Stab_G) = {} → H_{j}(Stab_G') = {} is not an iso at {:?}",
                        m.map.source,
                        m.map.target,
                        big.tuple(s)
                    ));
                    break 'outer;
                }
            }
        }
    }
    conditions.push(condition("vi", "stabilizer homology isomorphisms", witness));

    let conclusion = if conditions.iter().all(|c| c.passed) {
        let maps: Result<Vec<_>> =
            (0..=k).map(|j| homomorphism_induced_map(group, gb, Perm::clone, j, max_chain_rank)).collect();
        match maps {
            Ok(m) => Some(m),
            Err(e) if e.is_cap() => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(TransferReport { k, skeleton: top, conditions, conclusion })
}

/// `sub ∩ (top-skeleton of parent)` as a standalone complex.
fn skeleton_of(parent: &DeltaComplex, sub: &Subcomplex, top: usize) -> Result<DeltaComplex> {
    let sets = (0..=top).map(|p| sub.simplices(p).collect()).collect();
    Ok(Subcomplex::new(parent, sets)?.to_complex(parent))
}

/// `G_{n−1} ≤ G_n` acting on the words in letters of absolute value
/// `≤ n − 1` inside the word complex on `n` letters.
pub fn word_transfer_instance(family: Family, n: usize) -> Result<(WordComplex, Subcomplex, FinitePermGroup)> {
    if n < 2 {
        return Err(Error::invalid("need n >= 2"));
    }
    let wc = WordComplex::build(family, n)?;
    let xc = wc.complex();
    let sets = (0..xc.counts().len())
        .map(|p| {
            (0..xc.count(p))
                .filter(|&i| wc.word(Simplex::new(p, i)).iter().all(|l| l.unsigned_abs() < n as u64))
                .collect()
        })
        .collect();
    let x = Subcomplex::new(xc, sets)?;
    let g = family.standard_subgroup(n - 1, n)?;
    Ok((wc, x, g))
}

/// [`verify_orbit_quotient_transfer`] on [`word_transfer_instance`].
pub fn word_transfer_check(family: Family, n: usize, k: usize) -> Result<TransferReport> {
    let (wc, x, g) = word_transfer_instance(family, n)?;
    verify_orbit_quotient_transfer(wc.action(), &x, &g, k, DEFAULT_MAX_CHAIN_RANK)
}
