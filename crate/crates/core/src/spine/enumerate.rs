use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::graph::BasedGraph;
use crate::error::{Error, Result};

/// Largest edge count the enumeration will attempt.
pub const MAX_EDGES: usize = 12;

/// An isomorphism class of based graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub certificate: String,
    pub name: String,
    pub rank: usize,
    pub degree: usize,
    #[serde(skip)]
    pub representative: BasedGraph,
}

impl GraphClass {
    pub fn of(g: &BasedGraph) -> Self {
        let representative = g.canonical();
        GraphClass {
            certificate: representative.certificate(),
            name: representative.name(),
            rank: g.rank(),
            degree: g.degree(),
            representative,
        }
    }
}

/// Nondecreasing valence lists for the non-basepoint vertices with
/// `Σ (v − 2) ≤ budget`.
fn valence_profiles(budget: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, min: usize, budget: usize, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for v in min..=budget + 2 {
            prefix.push(v);
            extend(prefix, v, budget - (v - 2), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 3, budget, &mut out);
    out
}

/// Symmetric matrices with nonnegative entries whose row `v` has
/// `2·m[v][v] + Σ_{u≠v} m[v][u] = valence[v]`.
fn multiplicity_matrices(valence: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let n = valence.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut m = vec![vec![0; n]; n];
    let mut left = valence.to_vec();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        m: &mut Vec<Vec<usize>>,
        left: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if k == cells.len() {
            if left.iter().all(|&x| x == 0) {
                out.push(m.clone());
            }
            return;
        }
        let (i, j) = cells[k];
        // the last cell of row i must use up what is left of it
        let last_in_row = j + 1 == m.len();
        let max = if i == j { left[i] / 2 } else { left[i].min(left[j]) };
        for x in 0..=max {
            let used_i = if i == j { 2 * x } else { x };
            if last_in_row && left[i] != used_i {
                continue;
            }
            left[i] -= used_i;
            if i != j {
                left[j] -= x;
            }
            m[i][j] = x;
            m[j][i] = x;
            go(k + 1, cells, m, left, out);
            m[i][j] = 0;
            m[j][i] = 0;
            left[i] += used_i;
            if i != j {
                left[j] += x;
            }
        }
    }
    go(0, &cells, &mut m, &mut left, &mut out);
    out
}

/// All classes of rank `n` and degree `≤ max_degree`, sorted by
/// `(degree, certificate)`.
pub fn enumerate_classes(n: usize, max_degree: usize) -> Result<Vec<GraphClass>> {
    if n == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    // each non-basepoint vertex adds at least one edge beyond the rank
    if n + max_degree > MAX_EDGES {
        return Err(Error::cap("edges", n + max_degree, MAX_EDGES));
    }
    let found: Vec<BTreeMap<String, BasedGraph>> = valence_profiles(max_degree)
        .into_par_iter()
        .map(|others| {
            let edges = n + others.len();
            let mut classes = BTreeMap::new();
            let base = match (2 * edges).checked_sub(others.iter().sum()) {
                Some(b) if b >= 2 => b,
                _ => return classes,
            };
            let mut valence = vec![base];
            valence.extend(others);
            for m in multiplicity_matrices(&valence) {
                let g = BasedGraph::from_multiplicities(&m);
                if g.is_valid() {
                    classes.entry(g.certificate()).or_insert_with(|| g.canonical());
                }
            }
            classes
        })
        .collect();
    let mut all = BTreeMap::new();
    for part in found {
        all.extend(part);
    }
    let mut classes: Vec<GraphClass> = all.values().map(GraphClass::of).collect();
    classes.sort_by(|a, b| (a.degree, &a.certificate).cmp(&(b.degree, &b.certificate)));
    Ok(classes)
}

/// Contracts each component of the forest given by edge indices.
pub fn collapse(g: &BasedGraph, forest: &[usize]) -> Result<BasedGraph> {
    let edges = g.edges();
    let vertex = g.vertex_of();
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &e in forest {
        let &(a, b) = edges.get(e).ok_or_else(|| Error::invalid(format!("no edge {e}")))?;
        let (x, y) = (find(&mut parent, vertex[a]), find(&mut parent, vertex[b]));
        if x == y {
            return Err(Error::invalid("edge set contains a cycle"));
        }
        parent[x.max(y)] = x.min(y);
    }
    let roots: Vec<usize> = (0..g.vertex_count()).filter(|&v| find(&mut parent, v) == v).collect();
    let new_vertex = |p: &mut [usize], v: usize| roots.binary_search(&find(p, v)).expect("root");
    let dropped: BTreeSet<usize> = forest.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
    let keep: Vec<usize> = (0..g.half_edge_count()).filter(|h| !dropped.contains(h)).collect();
    let mut index = vec![usize::MAX; g.half_edge_count()];
    for (i, &h) in keep.iter().enumerate() {
        index[h] = i;
    }
    let pairing = keep.iter().map(|&h| index[g.pairing()[h]]).collect();
    let vertices = keep.iter().map(|&h| new_vertex(&mut parent, vertex[h])).collect();
    let base = new_vertex(&mut parent, g.basepoint());
    BasedGraph::from_half_edges(pairing, vertices, roots.len(), base)
}

/// Nonempty forests of `g` (sets of non-loop edges without a cycle), each
/// with the class of the collapsed graph when that is a spine vertex.
pub fn forest_collapses(g: &BasedGraph) -> Result<Vec<(Vec<usize>, GraphClass)>> {
    let edges = g.edges();
    let candidates: Vec<usize> = (0..edges.len()).filter(|&e| !g.is_loop(edges[e])).collect();
    if candidates.len() > 2 * MAX_EDGES {
        return Err(Error::cap("non-loop edges", candidates.len(), 2 * MAX_EDGES));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << candidates.len()) {
        let forest: Vec<usize> = (0..candidates.len()).filter(|b| mask & (1 << b) != 0).map(|b| candidates[b]).collect();
        // a forest on V vertices has at most V − 1 edges
        if forest.len() >= g.vertex_count() {
            continue;
        }
        match collapse(g, &forest) {
            Ok(c) if c.is_valid() => out.push((forest, GraphClass::of(&c))),
            _ => {}
        }
    }
    Ok(out)
}

/// Classes of rank `n`, degree `≤ D`, with `Γ > Γ'` whenever a forest
/// collapse of `Γ` lies in the class `Γ'`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientPoset {
    pub n: usize,
    pub max_degree: usize,
    pub nodes: Vec<GraphClass>,
    /// `(above, below)` node indices, sorted
    pub relations: Vec<(usize, usize)>,
}

impl QuotientPoset {
    pub fn index_of(&self, certificate: &str) -> Option<usize> {
        self.nodes.iter().position(|c| c.certificate == certificate)
    }

    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.relations.iter().filter(move |r| r.0 == i).map(|r| r.1)
    }
}

pub fn quotient_poset(n: usize, max_degree: usize) -> Result<QuotientPoset> {
    let nodes = enumerate_classes(n, max_degree)?;
    let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, c)| (c.certificate.as_str(), i)).collect();
    let per_node = nodes
        .par_iter()
        .map(|c| forest_collapses(&c.representative))
        .collect::<Result<Vec<_>>>()?;
    let mut relations = BTreeSet::new();
    for (i, collapses) in per_node.iter().enumerate() {
        for (_, below) in collapses {
            let j = *index
                .get(below.certificate.as_str())
                .ok_or_else(|| Error::invalid(format!("collapse {} left the poset", below.name)))?;
            relations.insert((i, j));
        }
    }
    Ok(QuotientPoset { n, max_degree, nodes, relations: relations.into_iter().collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientComparison {
    pub n: usize,
    pub max_degree: usize,
    pub source_nodes: usize,
    pub target_nodes: usize,
    pub source_relations: usize,
    pub target_relations: usize,
    /// `(source name, target name)` for each node
    pub matching: Vec<(String, String)>,
    pub injective: bool,
    /// target classes not of the form `Γ ∨ S¹`
    pub unmatched: Vec<String>,
    pub preserves_relations: bool,
    pub reflects_relations: bool,
    pub isomorphism: bool,
}

/// Whether `Γ ↦ Γ ∨ S¹` is an isomorphism `Q_{n,D} → Q_{n+1,D}`.
pub fn quotient_comparison(n: usize, max_degree: usize) -> Result<QuotientComparison> {
    let (p, q) = rayon::join(|| quotient_poset(n, max_degree), || quotient_poset(n + 1, max_degree));
    let (p, q) = (p?, q?);
    let image: Vec<Option<usize>> = p
        .nodes
        .iter()
        .map(|c| q.index_of(&c.representative.wedge_loop().certificate()))
        .collect();
    let hit: BTreeSet<usize> = image.iter().flatten().copied().collect();
    let injective = image.iter().all(Option::is_some) && hit.len() == p.nodes.len();
    let unmatched: Vec<String> = (0..q.nodes.len()).filter(|j| !hit.contains(j)).map(|j| q.nodes[j].name.clone()).collect();
    let q_rel: BTreeSet<(usize, usize)> = q.relations.iter().copied().collect();
    let mapped = |(a, b): (usize, usize)| Some((image[a]?, image[b]?));
    let preserves_relations = p.relations.iter().all(|&r| mapped(r).is_some_and(|m| q_rel.contains(&m)));
    let p_images: BTreeSet<(usize, usize)> = p.relations.iter().filter_map(|&r| mapped(r)).collect();
    let reflects_relations = q
        .relations
        .iter()
        .filter(|(a, b)| hit.contains(a) && hit.contains(b))
        .all(|r| p_images.contains(r));
    let matching = p
        .nodes
        .iter()
        .zip(&image)
        .map(|(c, j)| (c.name.clone(), j.map_or_else(|| "?".to_string(), |j| q.nodes[j].name.clone())))
        .collect();
    Ok(QuotientComparison {
        n,
        max_degree,
        source_nodes: p.nodes.len(),
        target_nodes: q.nodes.len(),
        source_relations: p.relations.len(),
        target_relations: q.relations.len(),
        matching,
        isomorphism: injective && unmatched.is_empty() && preserves_relations && reflects_relations,
        injective,
        unmatched,
        preserves_relations,
        reflects_relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[GraphClass]) -> Vec<String> {
        v.iter().map(|c| c.name.clone()).collect()
    }

    #[test]
    fn rank_two() {
        assert_eq!(names(&enumerate_classes(2, 0).unwrap()), vec!["R_2"]);
        assert_eq!(names(&enumerate_classes(2, 1).unwrap()), vec!["R_2", "θ"]);
        assert_eq!(names(&enumerate_classes(3, 1).unwrap()), vec!["R_3", "R_1∨θ"]);
    }

    #[test]
    fn matrices_respect_valences() {
        for m in multiplicity_matrices(&[4, 3, 3]) {
            for (v, want) in [4, 3, 3].iter().enumerate() {
                let got: usize = (0..3).map(|u| if u == v { 2 * m[v][v] } else { m[v][u] }).sum();
                assert_eq!(got, *want);
            }
        }
    }

    #[test]
    fn collapses_of_small_graphs() {
        assert!(forest_collapses(&BasedGraph::rose(3)).unwrap().is_empty());
        let th = forest_collapses(&BasedGraph::theta()).unwrap();
        assert_eq!(th.len(), 3);
        assert!(th.iter().all(|(f, c)| f.len() == 1 && c.name == "R_2"));
        let w = forest_collapses(&BasedGraph::theta().wedge_loop()).unwrap();
        assert!(w.iter().all(|(_, c)| c.name == "R_3"));
    }

    #[test]
    fn small_posets() {
        let p = quotient_poset(2, 1).unwrap();
        assert_eq!(p.nodes.len(), 2);
        assert_eq!(p.relations, vec![(1, 0)]);
        let p = quotient_poset(4, 0).unwrap();
        assert_eq!((p.nodes.len(), p.relations.len()), (1, 0));
        // regression values
        let p = quotient_poset(5, 2).unwrap();
        assert_eq!((p.nodes.len(), p.relations.len()), (7, 11));
    }

    #[test]
    fn stabilization_in_degree_one() {
        let c = quotient_comparison(2, 1).unwrap();
        assert!(c.isomorphism, "{c:?}");
        assert_eq!(c.matching, vec![("R_2".into(), "R_3".into()), ("θ".into(), "R_1∨θ".into())]);
    }

    #[test]
    fn low_rank_is_not_onto() {
        let c = quotient_comparison(2, 2).unwrap();
        assert!(c.injective && !c.isomorphism);
        assert_eq!(c.unmatched.len(), 2);
        assert!(quotient_comparison(5, 2).unwrap().isomorphism);
    }

    #[test]
    fn cap_on_edges() {
        assert!(enumerate_classes(11, 2).unwrap_err().is_cap());
    }
}
