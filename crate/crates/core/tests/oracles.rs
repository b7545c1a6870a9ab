mod common;

use homstab::grouphomology::abelianization;
use homstab::groups::{signed_symmetric_group, symmetric_group, weyl_d_group};
use homstab::spine::{automorphism_count, enumerate_classes, BasedGraph};
use homstab::wordcomplexes::{Family, WordComplex};

#[test]
fn word_complex_counts_and_top_homology() {
    for n in 1..=5u64 {
        let wc = WordComplex::build(Family::Symmetric, n as usize).unwrap();
        let counts: Vec<u64> = wc.complex().counts().iter().map(|&c| c as u64).collect();
        assert_eq!(counts, common::word_counts(n, 1));
        let top = wc.complex().homology(true).unwrap().group(n as usize - 1);
        assert!(top.torsion.is_empty());
        assert_eq!(top.free_rank as u64, common::derangements(n));
    }
}

#[test]
fn derangement_oracle() {
    assert_eq!((0..=6).map(common::derangements).collect::<Vec<_>>(), [1, 0, 1, 2, 9, 44, 265]);
}

#[test]
fn abelianizations_match_commutator_quotients() {
    let groups = [
        symmetric_group(2).unwrap(),
        symmetric_group(4).unwrap(),
        signed_symmetric_group(2).unwrap(),
        signed_symmetric_group(3).unwrap(),
        weyl_d_group(3).unwrap(),
    ];
    for g in &groups {
        let ab = abelianization(g);
        let (order, exponent_two) = common::commutator_quotient(g);
        assert_eq!(ab.free_rank, 0);
        let computed: u64 = ab.torsion.iter().map(|t| u64::try_from(t).unwrap()).product();
        assert_eq!(computed as usize, order);
        assert_eq!(ab.torsion.iter().all(|t| *t == 2u32.into()), exponent_two);
    }
}

fn small_graphs() -> Vec<BasedGraph> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for d in 0..=2 {
            if n + d <= 6 {
                out.extend(enumerate_classes(n, d).unwrap().into_iter().filter(|c| c.degree == d).map(|c| c.representative));
            }
        }
    }
    out
}

#[test]
fn certificates_decide_isomorphism() {
    let graphs = small_graphs();
    // add relabelled copies so that equal certificates are exercised too
    let mut all = graphs.clone();
    for g in &graphs {
        let h = g.half_edge_count();
        let half: Vec<usize> = (0..h).rev().collect();
        let vert: Vec<usize> = (0..g.vertex_count()).rev().collect();
        all.push(common::relabel(g, &half, &vert));
    }
    for a in &all {
        for b in &all {
            assert_eq!(a.certificate() == b.certificate(), common::isomorphic(a, b), "{} vs {}", a.name(), b.name());
        }
    }
}

#[test]
fn enumeration_matches_exhaustive_search() {
    for (n, d) in [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2)] {
        let ours = enumerate_classes(n, d).unwrap();
        let oracle = common::exhaustive_classes(n, d);
        assert_eq!(ours.len(), oracle.len(), "rank {n}, degree {d}");
        for g in &oracle {
            assert_eq!(ours.iter().filter(|c| common::isomorphic(&c.representative, g)).count(), 1);
        }
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    let mut graphs = small_graphs();
    graphs.push(BasedGraph::rose(5));
    graphs.push(BasedGraph::theta().wedge(&BasedGraph::theta()));
    for g in &graphs {
        assert_eq!(automorphism_count(g), common::automorphisms(g) as u128, "{}", g.name());
    }
}

#[test]
fn loop_counts_agree() {
    for g in small_graphs() {
        assert_eq!(g.loops_at_basepoint(), common::base_loops(&g));
        assert!(common::is_spine_vertex(&g));
    }
}
