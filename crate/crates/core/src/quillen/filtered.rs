use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{induced_map, ChainComplex, DeltaComplex, HomologyCoordinates, Simplex, Subcomplex};
use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroup, SparseIntMatrix};
use crate::groups::SimplicialAction;

/// A chain complex with a finite increasing filtration `F_0 ⊆ … ⊆ F_{m−1}`
/// spanned by basis elements: `levels[d][a]` is the first stage containing
/// basis element `a` in degree `low + d`.
#[derive(Clone, Debug)]
pub struct FilteredChainComplex {
    chains: ChainComplex,
    levels: Vec<Vec<usize>>,
    length: usize,
}

impl FilteredChainComplex {
    pub fn new(chains: ChainComplex, levels: Vec<Vec<usize>>) -> Result<Self> {
        let degrees = (chains.top() - chains.low() + 1) as usize;
        if levels.len() != degrees {
            return Err(Error::DimensionMismatch(format!("{} level lists for {degrees} degrees", levels.len())));
        }
        for (k, lv) in levels.iter().enumerate() {
            let deg = chains.low() + k as i64;
            if lv.len() != chains.rank(deg) {
                return Err(Error::DimensionMismatch(format!("degree {deg}: {} levels for rank {}", lv.len(), chains.rank(deg))));
            }
            if k == 0 {
                continue;
            }
            let d = chains.boundary(deg);
            for (a, &level) in lv.iter().enumerate() {
                if let Some((r, _)) = d.column(a).iter().find(|(r, _)| levels[k - 1][*r] > level) {
                    return Err(Error::invalid(format!(
                        "boundary of degree-{deg} element {a} (level {level}) meets element {r} of level {}",
                        levels[k - 1][*r]
                    )));
                }
            }
        }
        chains.verify_square_zero()?;
        let length = levels.iter().flatten().max().map_or(0, |m| m + 1);
        Ok(FilteredChainComplex { chains, levels, length })
    }

    /// Pads the filtration with empty stages up to `length`.
    pub fn with_length(mut self, length: usize) -> Result<Self> {
        if length < self.length {
            return Err(Error::invalid(format!("{} stages are in use", self.length)));
        }
        self.length = length;
        Ok(self)
    }

    /// Cellular chains filtered by skeleta: a `p`-simplex has level `p`.
    pub fn skeletal(x: &DeltaComplex) -> Self {
        let chains = x.chain_complex(false);
        let levels = (0..x.counts().len()).map(|p| vec![p; x.count(p)]).collect();
        FilteredChainComplex::new(chains, levels).expect("skeleta are subcomplexes")
    }

    /// Filtration by an increasing chain of subcomplexes ending in `x`.
    pub fn by_subcomplexes(x: &DeltaComplex, stages: &[Subcomplex]) -> Result<Self> {
        let levels = (0..x.counts().len())
            .map(|p| {
                (0..x.count(p))
                    .map(|i| {
                        stages
                            .iter()
                            .position(|s| s.contains(Simplex::new(p, i)))
                            .ok_or_else(|| Error::invalid(format!("simplex ({p}, {i}) is in no stage")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for w in stages.windows(2) {
            if w[0].intersection(&w[1]) != w[0] {
                return Err(Error::invalid("stages are not increasing"));
            }
        }
        FilteredChainComplex::new(x.chain_complex(false), levels)
    }

    pub fn chains(&self) -> &ChainComplex {
        &self.chains
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Number of filtration stages `m`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Basis indices with `lower < level ≤ upper`, per degree.
    fn window_indices(&self, lower: Option<usize>, upper: usize) -> Vec<Vec<usize>> {
        self.levels
            .iter()
            .map(|lv| {
                (0..lv.len())
                    .filter(|&a| lv[a] <= upper && lower.is_none_or(|l| lv[a] > l))
                    .collect()
            })
            .collect()
    }

    /// `F_upper / F_lower`, with `None` standing for the zero subcomplex.
    pub fn window(&self, lower: Option<usize>, upper: usize) -> ChainComplex {
        self.chains
            .quotient_by_basis(&self.window_indices(lower, upper))
            .expect("filtration stages are subcomplexes")
    }
}

/// Two filtered complexes of the same length and a filtration-preserving
/// chain map; `maps[d]` sends degree `low + d` chains of the source to the
/// target.
#[derive(Clone, Debug)]
pub struct FilteredMapData {
    pub source: FilteredChainComplex,
    pub target: FilteredChainComplex,
    pub maps: Vec<SparseIntMatrix>,
}

impl FilteredMapData {
    pub fn new(source: FilteredChainComplex, target: FilteredChainComplex, maps: Vec<SparseIntMatrix>) -> Result<Self> {
        let (s, t) = (&source.chains, &target.chains);
        if s.low() != t.low() || s.top() != t.top() || maps.len() != source.levels.len() {
            return Err(Error::DimensionMismatch("source, target and map cover different degrees".into()));
        }
        if source.length != target.length {
            return Err(Error::invalid(format!(
                "filtrations have {} and {} stages",
                source.length, target.length
            )));
        }
        for (k, f) in maps.iter().enumerate() {
            let deg = s.low() + k as i64;
            if f.col_count() != s.rank(deg) || f.row_count() != t.rank(deg) {
                return Err(Error::DimensionMismatch(format!("chain map in degree {deg} has the wrong shape")));
            }
            for (r, c, _) in f.iter() {
                if target.levels[k][r] > source.levels[k][c] {
                    return Err(Error::invalid(format!("degree {deg}: element {c} is sent out of its filtration stage")));
                }
            }
            if k > 0 && t.boundary(deg).mul(f)? != maps[k - 1].mul(&s.boundary(deg))? {
                return Err(Error::invalid(format!("not a chain map out of degree {deg}")));
            }
        }
        Ok(FilteredMapData { source, target, maps })
    }

    pub fn identity(x: FilteredChainComplex) -> Self {
        let maps = (0..x.levels.len())
            .map(|k| SparseIntMatrix::identity(x.levels[k].len()))
            .collect();
        FilteredMapData { source: x.clone(), target: x, maps }
    }

    /// The skeletal filtration mapped to itself by the group element `g`.
    pub fn automorphism(action: &SimplicialAction, g: usize) -> Self {
        let x = action.complex();
        let filt = FilteredChainComplex::skeletal(x);
        let maps = (0..x.counts().len())
            .map(|p| {
                let cols = (0..x.count(p))
                    .map(|i| vec![(action.act(g, Simplex::new(p, i)).index, BigInt::from(1))])
                    .collect();
                SparseIntMatrix::from_columns(x.count(p), cols).expect("permutation")
            })
            .collect();
        FilteredMapData::new(filt.clone(), filt, maps).expect("simplicial automorphisms are filtered chain maps")
    }

    /// Induced map on `H_j` of `F_upper / F_lower`.
    fn window_map(&self, lower: Option<usize>, upper: usize, j: usize) -> Result<WindowMap> {
        let si = self.source.window_indices(lower, upper);
        let ti = self.target.window_indices(lower, upper);
        let k = (j as i64 - self.source.chains.low()) as usize;
        let (sc, tc) = (self.source.window(lower, upper), self.target.window(lower, upper));
        let deg = j as i64;
        let sub = if k < self.maps.len() {
            let mut pos = vec![None; self.target.levels[k].len()];
            for (p, &r) in ti[k].iter().enumerate() {
                pos[r] = Some(p);
            }
            let cols = si[k]
                .iter()
                .map(|&c| {
                    self.maps[k]
                        .column(c)
                        .iter()
                        .filter_map(|(r, v)| pos[*r].map(|p| (p, v.clone())))
                        .collect()
                })
                .collect();
            SparseIntMatrix::from_columns(ti[k].len(), cols)?
        } else {
            SparseIntMatrix::zeros(0, 0)
        };
        let hs = HomologyCoordinates::new(&sc, deg)?;
        let ht = HomologyCoordinates::new(&tc, deg)?;
        let map = induced_map(&hs, &ht, &sub)?;
        Ok(WindowMap {
            source: hs.group().clone(),
            target: ht.group().clone(),
            injective: map.is_injective(),
            surjective: map.is_surjective(),
        })
    }
}

struct WindowMap {
    source: AbelianGroup,
    target: AbelianGroup,
    injective: bool,
    surjective: bool,
}

/// `f_* : H_j(X_upper, X_lower) → H_j(Y_upper, Y_lower)`; `lower = -1`
/// stands for the empty stage.
#[derive(Clone, Debug, Serialize)]
pub struct RelativeCheck {
    pub lower: i64,
    pub upper: usize,
    pub j: usize,
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub iso: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FilteredComparisonReport {
    pub k: usize,
    pub stages: usize,
    /// successive quotients `(X_i, X_{i−1})` for `j ≤ k + 1`
    pub hypothesis: Vec<RelativeCheck>,
    pub hypothesis_holds: bool,
    /// `H_j(X) → H_j(Y)` for `j ≤ k`
    pub conclusion: Vec<RelativeCheck>,
    pub conclusion_holds: bool,
    /// every pair `(X_i, X_p)` with `p < i`: iso for `j ≤ k`, onto at `k + 1`
    pub triples: Vec<RelativeCheck>,
    pub triples_hold: bool,
}

pub fn verify_filtered_comparison(data: &FilteredMapData, k: usize) -> Result<FilteredComparisonReport> {
    let m = data.source.length;
    let check = |lower: Option<usize>, upper: usize, j: usize| -> Result<RelativeCheck> {
        let w = data.window_map(lower, upper, j)?;
        Ok(RelativeCheck {
            lower: lower.map_or(-1, |l| l as i64),
            upper,
            j,
            iso: w.injective && w.surjective,
            surjective: w.surjective,
            source: w.source,
            target: w.target,
        })
    };
    let mut hypothesis = Vec::new();
    let mut triples = Vec::new();
    for upper in 0..m {
        for j in 0..=k + 1 {
            hypothesis.push(check(upper.checked_sub(1), upper, j)?);
        }
        for lower in std::iter::once(None).chain((0..upper).map(Some)) {
            for j in 0..=k + 1 {
                triples.push(check(lower, upper, j)?);
            }
        }
    }
    let conclusion = match m {
        0 => Vec::new(),
        _ => (0..=k).map(|j| check(None, m - 1, j)).collect::<Result<Vec<_>>>()?,
    };
    let hypothesis_holds = hypothesis.iter().all(|c| c.iso);
    let conclusion_holds = conclusion.iter().all(|c| c.iso);
    let triples_hold = triples.iter().all(|c| if c.j <= k { c.iso } else { c.surjective });
    Ok(FilteredComparisonReport {
        k,
        stages: m,
        hypothesis,
        hypothesis_holds,
        conclusion,
        conclusion_holds,
        triples,
        triples_hold,
    })
}

/// Random filtered simplicial complex: a simplicial complex on at most six
/// vertices with levels that never drop below those of a face.
fn random_filtered_complex(rng: &mut ChaCha8Rng, stages: usize) -> FilteredChainComplex {
    let vertices = rng.gen_range(3..=6);
    let top = rng.gen_range(1..=3usize);
    let mut faces: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let facets = rng.gen_range(2..=6);
    let all: Vec<usize> = (0..vertices).collect();
    for _ in 0..facets {
        let size = rng.gen_range(2..=top + 1);
        let mut f: Vec<usize> = all.choose_multiple(rng, size).copied().collect();
        f.sort_unstable();
        for mask in 1u32..(1 << f.len()) {
            let sub: Vec<usize> = (0..f.len()).filter(|b| mask & (1 << b) != 0).map(|b| f[b]).collect();
            faces.insert(sub);
        }
    }
    let dim = faces.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let mut layers = vec![Vec::new(); dim + 1];
    for f in faces.iter().filter(|f| f.len() > 1) {
        layers[f.len() - 1].push(f.clone());
    }
    let x = DeltaComplex::from_vertex_tuples(vertices, layers).expect("simplicial complex");
    let mut levels: Vec<Vec<usize>> = vec![(0..vertices).map(|_| rng.gen_range(0..stages)).collect()];
    for p in 1..=dim {
        let lv = (0..x.count(p))
            .map(|i| {
                let floor = x.faces(p, i).iter().map(|&f| levels[p - 1][f]).max().unwrap_or(0);
                rng.gen_range(floor..stages)
            })
            .collect();
        levels.push(lv);
    }
    FilteredChainComplex::new(x.chain_complex(false), levels)
        .and_then(|c| c.with_length(stages))
        .expect("levels respect faces")
}

fn to_sparse(m: &[Vec<BigInt>], rows: usize) -> SparseIntMatrix {
    let cols = m
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(r, v)| (r, v.clone())).collect())
        .collect();
    SparseIntMatrix::from_columns(rows, cols).expect("in range")
}

fn to_columns(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.col_count())
        .map(|c| {
            let mut col = vec![BigInt::zero(); m.row_count()];
            for (r, v) in m.column(c) {
                col[*r] = v.clone();
            }
            col
        })
        .collect()
}

/// A filtered map whose relative-homology hypothesis holds by construction.
///
/// `Y` is `X` plus contractible pairs `e → e'` placed inside a single stage,
/// followed by random level-respecting unimodular changes of basis; `f` is
/// the inclusion of `X` written in the new basis.
pub fn random_comparison_instance(seed: u64) -> FilteredMapData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stages = rng.gen_range(1..=4);
    let x = random_filtered_complex(&mut rng, stages);
    let chains = x.chains();
    let degrees = x.levels.len();
    // columns of ∂ out of each degree and of f in each degree, kept dense
    let mut bd: Vec<Vec<Vec<BigInt>>> = (0..degrees).map(|k| to_columns(&chains.boundary(k as i64))).collect();
    let mut f: Vec<Vec<Vec<BigInt>>> = (0..degrees).map(|k| to_columns(&SparseIntMatrix::identity(x.levels[k].len()))).collect();
    let mut levels = x.levels.clone();
    let mut ranks: Vec<usize> = levels.iter().map(Vec::len).collect();

    let pairs = rng.gen_range(0..=3);
    for _ in 0..pairs {
        let d = rng.gen_range(0..degrees - 1);
        let level = rng.gen_range(0..stages);
        // e' in degree d, e in degree d + 1 with ∂e = e'
        let e_low = ranks[d];
        for v in f[d].iter_mut() {
            v.push(BigInt::zero());
        }
        for c in bd[d + 1].iter_mut() {
            c.push(BigInt::zero());
        }
        bd[d].push(vec![BigInt::zero(); if d == 0 { 0 } else { ranks[d - 1] }]);
        ranks[d] += 1;
        levels[d].push(level);
        for v in f[d + 1].iter_mut() {
            v.push(BigInt::zero());
        }
        if d + 2 < degrees {
            for c in bd[d + 2].iter_mut() {
                c.push(BigInt::zero());
            }
        }
        let mut col = vec![BigInt::zero(); ranks[d]];
        col[e_low] = BigInt::from(1);
        bd[d + 1].push(col);
        ranks[d + 1] += 1;
        levels[d + 1].push(level);
    }

    let ops = rng.gen_range(0..=25);
    for _ in 0..ops {
        let d = rng.gen_range(0..degrees);
        let n = ranks[d];
        if n == 0 {
            continue;
        }
        if n == 1 || rng.gen_bool(0.15) {
            // negate one basis element
            let a = rng.gen_range(0..n);
            for v in bd[d][a].iter_mut() {
                *v = -&*v;
            }
            if d + 1 < degrees {
                for c in bd[d + 1].iter_mut() {
                    c[a] = -&c[a];
                }
            }
            for c in f[d].iter_mut() {
                c[a] = -&c[a];
            }
            continue;
        }
        let (mut a, mut b) = (rng.gen_range(0..n), rng.gen_range(0..n - 1));
        if b >= a {
            b += 1;
        }
        if levels[d][a] > levels[d][b] {
            std::mem::swap(&mut a, &mut b);
        }
        let c = BigInt::from(*[-2i64, -1, 1, 2].choose(&mut rng).expect("nonempty"));
        // new basis y'_b = y_b + c·y_a: ∂ out of d gets col_b −= c·col_a,
        // ∂ into d and f get row_a += c·row_b
        let col_a = bd[d][a].clone();
        for (t, s) in bd[d][b].iter_mut().zip(&col_a) {
            *t -= &c * s;
        }
        let rows_into: Vec<&mut Vec<Vec<BigInt>>> = if d + 1 < degrees { vec![&mut bd[d + 1]] } else { vec![] };
        for m in rows_into.into_iter().chain([&mut f[d]]) {
            for col in m.iter_mut() {
                let add = &c * &col[b];
                col[a] += add;
            }
        }
    }

    let boundaries = (0..degrees)
        .map(|k| to_sparse(&bd[k], if k == 0 { 0 } else { ranks[k - 1] }))
        .collect();
    let y_chains = ChainComplex::new(0, ranks.clone(), boundaries).expect("shapes");
    let y = FilteredChainComplex::new(y_chains, levels)
        .and_then(|c| c.with_length(stages))
        .expect("basis changes respect levels");
    let maps = (0..degrees).map(|k| to_sparse(&f[k], ranks[k])).collect();
    FilteredMapData::new(x, y, maps).expect("inclusion is a filtered chain map")
}

/// Two points joined by an edge in stage 1 mapped onto a point: the stage-0
/// quotient fails the hypothesis, yet `H_*` is preserved.
pub fn counter_instance() -> FilteredMapData {
    let interval = ChainComplex::new(
        0,
        vec![2, 1],
        vec![SparseIntMatrix::zeros(0, 2), SparseIntMatrix::from_dense(&[vec![-1], vec![1]])],
    )
    .expect("shape");
    let x = FilteredChainComplex::new(interval, vec![vec![0, 0], vec![1]]).expect("filtered");
    let point = ChainComplex::new(0, vec![1, 0], vec![SparseIntMatrix::zeros(0, 1), SparseIntMatrix::zeros(1, 0)])
        .expect("shape");
    // the point sits in stage 0 and stage 1 adds nothing
    let y = FilteredChainComplex::new(point, vec![vec![0], vec![]])
        .and_then(|c| c.with_length(2))
        .expect("filtered");
    let maps = vec![SparseIntMatrix::from_dense(&[vec![1, 1]]), SparseIntMatrix::zeros(0, 1)];
    FilteredMapData::new(x, y, maps).expect("collapse is a filtered chain map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordcomplexes::injective_words_complex;

    #[test]
    fn identity_holds() {
        let x = injective_words_complex(3).unwrap();
        let rep = verify_filtered_comparison(&FilteredMapData::identity(FilteredChainComplex::skeletal(x.complex())), 1).unwrap();
        assert!(rep.hypothesis_holds && rep.conclusion_holds && rep.triples_hold);
        assert_eq!(rep.stages, 3);
    }

    #[test]
    fn automorphism_of_x3() {
        let x = injective_words_complex(3).unwrap();
        for g in 0..x.action().group().order() {
            let data = FilteredMapData::automorphism(x.action(), g);
            let rep = verify_filtered_comparison(&data, 2).unwrap();
            assert!(rep.hypothesis_holds && rep.conclusion_holds && rep.triples_hold);
        }
    }

    #[test]
    fn counter_instance_separates_hypothesis_and_conclusion() {
        let rep = verify_filtered_comparison(&counter_instance(), 0).unwrap();
        assert!(!rep.hypothesis_holds);
        assert!(rep.conclusion_holds);
        let bad = rep.hypothesis.iter().find(|c| !c.iso).unwrap();
        assert_eq!((bad.lower, bad.upper, bad.j), (-1, 0, 0));
    }

    #[test]
    fn rejects_maps_leaving_a_stage() {
        let two = DeltaComplex::discrete(2).chain_complex(false);
        let x = FilteredChainComplex::new(two, vec![vec![0, 1]]).unwrap();
        let swap = vec![SparseIntMatrix::from_dense(&[vec![0, 1], vec![1, 0]])];
        let err = FilteredMapData::new(x.clone(), x, swap).unwrap_err();
        assert!(err.to_string().contains("filtration stage"));
    }

    #[test]
    fn random_instances_are_valid() {
        for seed in 0..20 {
            let data = random_comparison_instance(seed);
            let rep = verify_filtered_comparison(&data, 1).unwrap();
            assert!(rep.hypothesis_holds, "seed {seed}");
            assert!(rep.conclusion_holds && rep.triples_hold, "seed {seed}");
        }
    }
}
