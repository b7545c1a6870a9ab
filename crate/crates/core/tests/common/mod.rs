//! Independent oracles. Nothing here calls the algorithm it checks: counts
//! come from closed formulas, invariant factors from minors, graph
//! isomorphism from a plain backtracking search over half-edges.
#![allow(dead_code)]

use std::collections::BTreeSet;

use homstab::groups::FinitePermGroup;
use homstab::spine::BasedGraph;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `D_n = Σ_k (−1)^k n!/k!`.
pub fn derangements(n: u64) -> u64 {
    let fact = |m: u64| (1..=m).product::<u64>();
    let mut total: i64 = 0;
    for k in 0..=n {
        let term = (fact(n) / fact(k)) as i64;
        total += if k % 2 == 0 { term } else { -term };
    }
    total as u64
}

/// Simplex counts of the complex of injective words on `n` letters with `c`
/// signs per letter: `n!/(n−k)! · c^k` words of length `k`.
pub fn word_counts(n: u64, c: u64) -> Vec<u64> {
    (1..=n).map(|k| (n - k + 1..=n).product::<u64>() * c.pow(k as u32)).collect()
}

/// `Σ_p (−1)^p count_p − 1`.
pub fn reduced_euler(counts: &[u64]) -> i64 {
    counts.iter().enumerate().map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) }).sum::<i64>() - 1
}

pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    // Laplace expansion; the matrices here are tiny
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k = Δ_k / Δ_{k−1}`, where `Δ_k` is the gcd of all
/// `k × k` minors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g.abs();
    }
    out
}

/// `|G / [G, G]|` and whether every square lies in `[G, G]`.
pub fn commutator_quotient(g: &FinitePermGroup) -> (usize, bool) {
    let els = g.elements();
    let mut sub: BTreeSet<_> = BTreeSet::new();
    sub.insert(homstab::groups::Perm::identity(g.degree()));
    for a in els {
        for b in els {
            sub.insert(a.compose(b).compose(&a.inverse()).compose(&b.inverse()));
        }
    }
    // close under products
    loop {
        let current: Vec<_> = sub.iter().cloned().collect();
        let before = sub.len();
        for x in &current {
            for y in &current {
                sub.insert(x.compose(y));
            }
        }
        if sub.len() == before {
            break;
        }
    }
    let exponent_two = els.iter().all(|a| sub.contains(&a.compose(a)));
    (els.len() / sub.len(), exponent_two)
}

/// Number of basepoint-preserving isomorphisms `g → h`, by extending a
/// half-edge bijection one half-edge at a time. Stops at `limit`.
pub fn count_isomorphisms(g: &BasedGraph, h: &BasedGraph, limit: usize) -> usize {
    let n = g.half_edge_count();
    if n != h.half_edge_count() || g.vertex_count() != h.vertex_count() {
        return 0;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut vmap = vec![usize::MAX; g.vertex_count()];
    let mut vused = vec![false; h.vertex_count()];
    vmap[g.basepoint()] = h.basepoint();
    vused[h.basepoint()] = true;
    let mut count = 0;
    extend(g, h, 0, &mut f, &mut used, &mut vmap, &mut vused, &mut count, limit);
    count
}

fn bind(vmap: &mut [usize], vused: &mut [bool], a: usize, b: usize, trail: &mut Vec<usize>) -> bool {
    if vmap[a] == usize::MAX {
        if vused[b] {
            return false;
        }
        vmap[a] = b;
        vused[b] = true;
        trail.push(a);
        true
    } else {
        vmap[a] == b
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &BasedGraph,
    h: &BasedGraph,
    x: usize,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
    vmap: &mut Vec<usize>,
    vused: &mut Vec<bool>,
    count: &mut usize,
    limit: usize,
) {
    if *count >= limit {
        return;
    }
    let n = f.len();
    let Some(x) = (x..n).find(|&i| f[i] == usize::MAX) else {
        // vertices without half-edges only occur for the point
        *count += 1;
        return;
    };
    let px = g.pairing()[x];
    for y in 0..n {
        let py = h.pairing()[y];
        if used[y] || used[py] {
            continue;
        }
        let mut trail = Vec::new();
        let ok = bind(vmap, vused, g.vertex_of()[x], h.vertex_of()[y], &mut trail)
            && bind(vmap, vused, g.vertex_of()[px], h.vertex_of()[py], &mut trail);
        if ok {
            f[x] = y;
            f[px] = py;
            used[y] = true;
            used[py] = true;
            extend(g, h, x + 1, f, used, vmap, vused, count, limit);
            f[x] = usize::MAX;
            f[px] = usize::MAX;
            used[y] = false;
            used[py] = false;
        }
        for a in trail {
            vused[vmap[a]] = false;
            vmap[a] = usize::MAX;
        }
    }
}

pub fn isomorphic(g: &BasedGraph, h: &BasedGraph) -> bool {
    count_isomorphisms(g, h, 1) > 0
}

pub fn automorphisms(g: &BasedGraph) -> usize {
    count_isomorphisms(g, g, usize::MAX)
}

fn valence(pairs_at: &[usize], v: usize) -> usize {
    pairs_at.iter().filter(|&&u| u == v).count()
}

/// Spine conditions checked from scratch.
pub fn is_spine_vertex(g: &BasedGraph) -> bool {
    let vx = g.vertex_of();
    let pairing = g.pairing();
    let vc = g.vertex_count();
    let connected_without = |skip: Option<usize>| {
        let mut seen = vec![false; vc];
        let mut stack = vec![g.basepoint()];
        seen[g.basepoint()] = true;
        while let Some(v) = stack.pop() {
            for hh in 0..pairing.len() {
                if vx[hh] != v || Some(hh) == skip || Some(pairing[hh]) == skip {
                    continue;
                }
                let w = vx[pairing[hh]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    if !connected_without(None) {
        return false;
    }
    if (0..pairing.len()).any(|hh| vx[hh] != vx[pairing[hh]] && !connected_without(Some(hh))) {
        return false;
    }
    (0..vc).all(|v| {
        let val = valence(vx, v);
        if v == g.basepoint() {
            val > 1
        } else {
            val > 2
        }
    })
}

fn matchings(points: &[usize], pairing: &mut [usize], out: &mut dyn FnMut(&[usize])) {
    let Some(&a) = points.first() else {
        out(pairing);
        return;
    };
    for i in 1..points.len() {
        let b = points[i];
        pairing[a] = b;
        pairing[b] = a;
        let rest: Vec<usize> = points.iter().copied().filter(|&p| p != a && p != b).collect();
        matchings(&rest, pairing, out);
    }
}

fn valence_lists(vertices: usize, budget: usize, min: usize) -> Vec<Vec<usize>> {
    if vertices == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for v in min..=budget + 2 {
        for mut rest in valence_lists(vertices - 1, budget - (v - 2), v) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// One representative per isomorphism class of spine vertices of rank `n`
/// and degree `≤ d`: every perfect matching of the half-edges for every
/// admissible valence list, deduplicated by brute-force isomorphism.
pub fn exhaustive_classes(n: usize, d: usize) -> Vec<BasedGraph> {
    let mut reps: Vec<BasedGraph> = Vec::new();
    for others in 0..=d {
        let edges = n + others;
        let half = 2 * edges;
        for vals in valence_lists(others, d, 3) {
            let sum: usize = vals.iter().sum();
            if sum + 2 > half {
                continue;
            }
            let mut vertex = vec![0; half - sum];
            for (i, &v) in vals.iter().enumerate() {
                vertex.extend(std::iter::repeat_n(i + 1, v));
            }
            let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
            let points: Vec<usize> = (0..half).collect();
            let mut pairing = vec![0; half];
            matchings(&points, &mut pairing, &mut |p| {
                // the labelled multiplicity matrix determines the graph
                let mut m = vec![vec![0; others + 1]; others + 1];
                for (a, &b) in p.iter().enumerate() {
                    if a < b {
                        m[vertex[a]][vertex[b]] += 1;
                    }
                }
                if !seen.insert(m) {
                    return;
                }
                let g = BasedGraph::from_half_edges(p.to_vec(), vertex.clone(), others + 1, 0).unwrap();
                if is_spine_vertex(&g) && !reps.iter().any(|r| isomorphic(r, &g)) {
                    reps.push(g);
                }
            });
        }
    }
    reps
}

/// Loops at the basepoint, counted from the half-edges.
pub fn base_loops(g: &BasedGraph) -> usize {
    let vx = g.vertex_of();
    (0..g.half_edge_count()).filter(|&h| vx[h] == g.basepoint() && vx[g.pairing()[h]] == g.basepoint()).count() / 2
}

/// The same graph with half-edges and vertices renamed.
pub fn relabel(g: &BasedGraph, half: &[usize], vert: &[usize]) -> BasedGraph {
    let n = g.half_edge_count();
    let mut pairing = vec![0; n];
    let mut vertex = vec![0; n];
    for x in 0..n {
        pairing[half[x]] = half[g.pairing()[x]];
        vertex[half[x]] = vert[g.vertex_of()[x]];
    }
    BasedGraph::from_half_edges(pairing, vertex, g.vertex_count(), vert[g.basepoint()]).unwrap()
}
