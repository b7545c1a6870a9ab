use num_bigint::BigInt;
use rayon::prelude::*;

use crate::complexes::{induced_map, ChainComplex, HomologyCoordinates, HomologyProfile};
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroup, AbelianHom, SparseIntMatrix};
use crate::groups::{FinitePermGroup, Perm};

/// Default bound on the rank of any single bar chain group.
pub const DEFAULT_MAX_CHAIN_RANK: usize = 125_000;

/// Normalized bar complex of a finite group with trivial integer
/// coefficients, truncated at degree `top`.
///
/// The basis of `C_p` is the set of `p`-tuples of non-identity elements,
/// indexed in mixed radix: `[g_1 | … | g_p]` has index
/// `Σ (g_k − 1)·(|G| − 1)^{p−k}` where `g_k` are element indices.
pub struct BarComplex {
    group: FinitePermGroup,
    table: Vec<u32>,
    top: usize,
    chains: ChainComplex,
}

impl BarComplex {
    pub fn new(group: &FinitePermGroup, top: usize, max_chain_rank: usize) -> Result<Self> {
        let m = group.order() - 1;
        let mut ranks = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let size = (m as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
            if size > max_chain_rank as u128 {
                return Err(Error::cap("bar chain rank", size, max_chain_rank));
            }
            ranks.push(size as usize);
        }
        let table = group.multiplication_table();
        let mut boundaries = vec![SparseIntMatrix::zeros(0, 1)];
        for p in 1..=top {
            boundaries.push(bar_boundary(&table, group.order(), p, ranks[p - 1], ranks[p]));
        }
        let chains = ChainComplex::new(0, ranks, boundaries)?;
        Ok(BarComplex { group: group.clone(), table, top, chains })
    }

    pub fn group(&self) -> &FinitePermGroup {
        &self.group
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.group.order() + b] as usize
    }

    /// `H_0, …, H_{top−1}`.
    pub fn homology(&self) -> HomologyProfile {
        self.chains.profile_up_to(false, self.top as i64 - 1)
    }

    pub fn coordinates(&self, degree: usize) -> Result<HomologyCoordinates> {
        if degree >= self.top {
            return Err(Error::invalid(format!("degree {degree} needs the bar complex through degree {}", degree + 1)));
        }
        HomologyCoordinates::new(&self.chains, degree as i64)
    }

    /// Matrix of the chain map in `degree` induced by a homomorphism into
    /// `target`'s group, given as element-index images.
    pub fn chain_map(&self, target: &BarComplex, images: &[usize], degree: usize) -> SparseIntMatrix {
        let m = self.group.order() - 1;
        let mt = target.group.order() - 1;
        let cols: Vec<Vec<(usize, BigInt)>> = (0..self.chains.rank(degree as i64))
            .into_par_iter()
            .map(|idx| {
                let tuple = decode(idx, m, degree);
                let mut out = 0usize;
                for g in tuple {
                    let h = images[g];
                    if h == 0 {
                        return Vec::new();
                    }
                    out = out * mt + (h - 1);
                }
                vec![(out, BigInt::from(1))]
            })
            .collect();
        SparseIntMatrix::from_columns(target.chains.rank(degree as i64), cols).expect("indices in range")
    }
}

/// A bar complex together with coordinates on `H_r`, so that several maps
/// out of or into the same group reuse one elimination.
pub struct BarHomology {
    bar: BarComplex,
    coords: HomologyCoordinates,
    degree: usize,
}

impl BarHomology {
    pub fn new(group: &FinitePermGroup, degree: usize, max_chain_rank: usize) -> Result<Self> {
        let bar = BarComplex::new(group, degree + 1, max_chain_rank)?;
        let coords = bar.coordinates(degree)?;
        Ok(BarHomology { bar, coords, degree })
    }

    pub fn group(&self) -> &FinitePermGroup {
        self.bar.group()
    }

    pub fn homology(&self) -> &AbelianGroup {
        self.coords.group()
    }

    /// Map on `H_r` induced by the homomorphism with element-index images
    /// `images` (indices into the target group).
    pub fn map_to(&self, target: &BarHomology, images: &[usize]) -> Result<InducedMap> {
        if self.degree != target.degree {
            return Err(Error::invalid("maps between different homological degrees"));
        }
        let chain = self.bar.chain_map(&target.bar, images, self.degree);
        let map = induced_map(&self.coords, &target.coords, &chain)?;
        Ok(InducedMap { degree: self.degree, verdict: map.verdict(), map })
    }

    /// Map induced by `h ↦ φ(h)`, with `φ` given on permutations.
    pub fn map_by(&self, target: &BarHomology, phi: impl Fn(&Perm) -> Perm) -> Result<InducedMap> {
        let images = self
            .group()
            .elements()
            .iter()
            .map(|h| {
                let img = phi(h);
                target
                    .group()
                    .index_of(&img)
                    .ok_or_else(|| Error::invalid(format!("image {img} is not in the target group")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.map_to(target, &images)
    }
}

/// Element indices `g_1, …, g_p` (all nonzero) of basis element `idx`.
fn decode(mut idx: usize, m: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for k in (0..p).rev() {
        out[k] = idx % m + 1;
        idx /= m;
    }
    out
}

fn encode(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * m + (g - 1))
}

/// `∂[g_1|…|g_p] = [g_2|…|g_p] + Σ (−1)^i [… | g_i g_{i+1} | …] + (−1)^p [g_1|…|g_{p−1}]`,
/// dropping tuples that contain the identity.
fn bar_boundary(table: &[u32], order: usize, p: usize, rows: usize, cols: usize) -> SparseIntMatrix {
    let m = order - 1;
    let columns: Vec<Vec<(usize, BigInt)>> = (0..cols)
        .into_par_iter()
        .map(|idx| {
            let t = decode(idx, m, p);
            let mut terms: Vec<(usize, i64)> = Vec::with_capacity(p + 1);
            if p == 1 {
                return Vec::new();
            }
            terms.push((encode(&t[1..], m), 1));
            for i in 1..p {
                let prod = table[t[i - 1] * order + t[i]] as usize;
                if prod == 0 {
                    continue;
                }
                let mut f = Vec::with_capacity(p - 1);
                f.extend_from_slice(&t[..i - 1]);
                f.push(prod);
                f.extend_from_slice(&t[i + 1..]);
                terms.push((encode(&f, m), if i % 2 == 0 { 1 } else { -1 }));
            }
            terms.push((encode(&t[..p - 1], m), if p % 2 == 0 { 1 } else { -1 }));
            terms.sort_unstable();
            let mut col: Vec<(usize, BigInt)> = Vec::with_capacity(terms.len());
            for (r, v) in terms {
                match col.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => col.push((r, BigInt::from(v))),
                }
            }
            col.retain(|(_, v)| *v != BigInt::from(0));
            col
        })
        .collect();
    SparseIntMatrix::from_columns_unchecked(rows, columns)
}

/// `H_0(G), …, H_r(G)`.
pub fn group_homology(g: &FinitePermGroup, r: usize) -> Result<HomologyProfile> {
    group_homology_capped(g, r, DEFAULT_MAX_CHAIN_RANK)
}

pub fn group_homology_capped(g: &FinitePermGroup, r: usize, max_chain_rank: usize) -> Result<HomologyProfile> {
    Ok(BarComplex::new(g, r + 1, max_chain_rank)?.homology())
}

/// A map on `H_r` with its verdict.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InducedMap {
    pub degree: usize,
    pub map: AbelianHom,
    pub verdict: crate::exactlin::MapVerdict,
}

/// The map `H_r(H) → H_r(G)` induced by a homomorphism `φ : H → G`.
pub fn homomorphism_induced_map(
    source: &FinitePermGroup,
    target: &FinitePermGroup,
    phi: impl Fn(&Perm) -> Perm,
    r: usize,
    max_chain_rank: usize,
) -> Result<InducedMap> {
    let images = source
        .elements()
        .iter()
        .map(|h| {
            let img = phi(h);
            target
                .index_of(&img)
                .ok_or_else(|| Error::invalid(format!("image {img} is not in the target group")))
        })
        .collect::<Result<Vec<_>>>()?;
    let gens: Vec<usize> = source.generators().iter().map(|g| source.index_of(g).expect("member")).collect();
    for a in 0..source.order() {
        for &b in &gens {
            if target.mul(images[a], images[b]) != images[source.mul(a, b)] {
                return Err(Error::invalid("element map is not a homomorphism"));
            }
        }
    }
    let bs = BarHomology::new(source, r, max_chain_rank)?;
    let bt = BarHomology::new(target, r, max_chain_rank)?;
    bs.map_to(&bt, &images)
}

/// The map on `H_r` induced by the inclusion of a subgroup.
pub fn inclusion_induced_map(sub: &FinitePermGroup, group: &FinitePermGroup, r: usize) -> Result<InducedMap> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::invalid("not a subgroup"));
    }
    homomorphism_induced_map(sub, group, Perm::clone, r, DEFAULT_MAX_CHAIN_RANK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::AbelianGroup;
    use crate::groups::{signed_symmetric_group, symmetric_group};

    #[test]
    fn square_zero() {
        let g = symmetric_group(3).unwrap();
        let b = BarComplex::new(&g, 4, DEFAULT_MAX_CHAIN_RANK).unwrap();
        b.chains().verify_square_zero().unwrap();
        assert_eq!(b.chains().rank(3), 125);
    }

    #[test]
    fn cyclic_groups() {
        let c2 = symmetric_group(2).unwrap();
        let h = group_homology(&c2, 4).unwrap();
        // ℤ, ℤ/2, 0, ℤ/2, 0
        assert_eq!(h.group(0), AbelianGroup::free(1));
        assert_eq!(h.group(1), AbelianGroup::cyclic(2));
        assert!(h.group(2).is_trivial());
        assert_eq!(h.group(3), AbelianGroup::cyclic(2));
        assert!(h.group(4).is_trivial());
    }

    #[test]
    fn trivial_group() {
        let h = group_homology(&FinitePermGroup::trivial(1), 3).unwrap();
        assert_eq!(h.group(0), AbelianGroup::free(1));
        assert!((1..=3).all(|d| h.group(d).is_trivial()));
    }

    #[test]
    fn s3_and_signed() {
        assert_eq!(group_homology(&symmetric_group(3).unwrap(), 1).unwrap().group(1), AbelianGroup::cyclic(2));
        let two = AbelianGroup::from_cyclic(0, [BigInt::from(2), BigInt::from(2)]);
        assert_eq!(group_homology(&signed_symmetric_group(2).unwrap(), 1).unwrap().group(1), two);
    }

    #[test]
    fn cap() {
        let g = symmetric_group(4).unwrap();
        assert!(group_homology_capped(&g, 2, 1000).unwrap_err().is_cap());
    }

    #[test]
    fn inclusion_maps() {
        let s3 = symmetric_group(3).unwrap();
        let s2 = s3.filter_subgroup(|p| p.apply(2) == 2);
        let m = inclusion_induced_map(&s2, &s3, 1).unwrap();
        assert!(m.map.is_iso());
        let m = inclusion_induced_map(&s3, &s3, 1).unwrap();
        assert_eq!(m.map, AbelianHom::identity(&AbelianGroup::cyclic(2)));
        let t = FinitePermGroup::trivial(3);
        let m = inclusion_induced_map(&t, &s3, 1).unwrap();
        assert!(m.map.source.is_trivial() && m.map.is_injective());
    }
}
