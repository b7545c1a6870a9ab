mod common;

use std::collections::BTreeSet;

use homstab::complexes::DeltaComplex;
use homstab::exactlin::{elementary_divisors, quotient_structure, snf, SparseIntMatrix};
use homstab::groups::{FinitePermGroup, Perm};
use homstab::quillen::{random_comparison_instance, verify_filtered_comparison};
use homstab::spine::{enumerate_classes, forest_collapses, BasedGraph};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// A simplicial complex on at most six vertices, as the downward closure of
/// random facets, with simplices listed as sorted vertex tuples.
fn simplicial_complex() -> impl Strategy<Value = DeltaComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 1..=7).prop_map(|facets| {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let f: Vec<usize> = f.into_iter().collect();
            for mask in 1u32..(1 << f.len()) {
                all.insert((0..f.len()).filter(|b| mask & (1 << b) != 0).map(|b| f[b]).collect());
            }
        }
        let used: Vec<usize> = all.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
        let rename = |v: usize| used.binary_search(&v).unwrap();
        let top = all.iter().map(Vec::len).max().unwrap();
        let mut tuples = vec![Vec::new(); top];
        for s in &all {
            tuples[s.len() - 1].push(s.iter().map(|&v| rename(v)).collect());
        }
        DeltaComplex::from_vertex_tuples(used.len(), tuples).unwrap()
    })
}

fn spine_vertex() -> impl Strategy<Value = BasedGraph> {
    let pool: Vec<BasedGraph> =
        [(2, 2), (3, 2), (4, 1)].iter().flat_map(|&(n, d)| enumerate_classes(n, d).unwrap()).map(|c| c.representative).collect();
    prop::sample::select(pool)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_matches_minors(m in matrix()) {
        let sparse = SparseIntMatrix::from_dense(&m);
        let res = snf(&sparse);
        prop_assert_eq!(&res.diagonal, &common::invariant_factors_by_minors(&m));
        prop_assert_eq!(&elementary_divisors(&sparse), &res.diagonal);
        // U M V is the diagonal, with U and V unimodular
        let d = res.left.mul(&sparse).unwrap().mul(&res.right).unwrap();
        for (r, c, v) in d.iter() {
            prop_assert!(r == c && *v == res.diagonal[r]);
        }
        prop_assert_eq!(common::det(&res.left.to_dense()).abs(), BigInt::one());
        prop_assert_eq!(common::det(&res.right.to_dense()).abs(), BigInt::one());
    }

    #[test]
    fn cokernels(m in matrix()) {
        let b = SparseIntMatrix::from_dense(&m);
        let zero = SparseIntMatrix::zeros(1, b.row_count());
        let g = quotient_structure(&zero, &b).unwrap();
        let factors = common::invariant_factors_by_minors(&m);
        prop_assert_eq!(g.free_rank, b.row_count() - factors.len());
        let torsion: Vec<BigInt> = factors.into_iter().filter(|f| !f.is_one()).collect();
        prop_assert_eq!(g.torsion, torsion);
    }

    #[test]
    fn euler_characteristic_and_square_zero(x in simplicial_complex()) {
        x.chain_complex(false).verify_square_zero().unwrap();
        let h = x.homology(false).unwrap();
        let from_homology: i64 =
            h.groups.iter().enumerate().map(|(p, g)| if p % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) }).sum();
        prop_assert_eq!(from_homology, x.euler_characteristic());
    }

    #[test]
    fn joining_points_shifts_homology(x in simplicial_complex(), m in 1usize..=3) {
        let h = x.homology(true).unwrap();
        let joined = x.join_with_finite_set(m).unwrap();
        joined.chain_complex(true).verify_square_zero().unwrap();
        let hj = joined.homology(true).unwrap();
        prop_assert!(hj.group(0).is_trivial());
        for k in 0..h.groups.len() {
            let expected = (1..m).fold(homstab::exactlin::AbelianGroup::trivial(), |acc, _| acc.direct_sum(&h.group(k)));
            prop_assert_eq!(hj.group(k + 1), expected);
        }
    }

    #[test]
    fn orbit_stabilizer(images in prop::collection::vec(Just((0u32..6).collect::<Vec<u32>>()).prop_shuffle(), 1..=2)) {
        let gens: Vec<Perm> = images.into_iter().map(|i| Perm::from_images(i).unwrap()).collect();
        let g = FinitePermGroup::generate(6, gens, 1000).unwrap();
        let orbit: BTreeSet<usize> = g.elements().iter().map(|p| p.apply(0)).collect();
        let stabilizer = g.filter_subgroup(|p| p.apply(0) == 0);
        prop_assert_eq!(orbit.len() * stabilizer.order(), g.order());
        prop_assert!(stabilizer.is_subgroup_of(&g));
    }

    #[test]
    fn certificates_ignore_labels(
        g in spine_vertex(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut half: Vec<usize> = (0..g.half_edge_count()).collect();
        let mut vert: Vec<usize> = (0..g.vertex_count()).collect();
        half.shuffle(&mut rng);
        vert.shuffle(&mut rng);
        let h = common::relabel(&g, &half, &vert);
        prop_assert_eq!(h.certificate(), g.certificate());
        prop_assert_eq!(h.rank(), g.rank());
        prop_assert_eq!(h.degree(), g.degree());
        prop_assert_eq!(h.loops_at_basepoint(), g.loops_at_basepoint());
    }

    #[test]
    fn collapses_keep_rank_and_lower_degree(g in spine_vertex()) {
        for (_, class) in forest_collapses(&g).unwrap() {
            prop_assert_eq!(class.rank, g.rank());
            prop_assert!(class.degree <= g.degree());
        }
    }

    #[test]
    fn adding_a_loop(g in spine_vertex()) {
        let h = g.wedge_loop();
        prop_assert!(h.is_valid());
        prop_assert_eq!(h.rank(), g.rank() + 1);
        prop_assert_eq!(h.degree(), g.degree());
        prop_assert_eq!(h.loops_at_basepoint(), g.loops_at_basepoint() + 1);
        prop_assert_eq!(h.certificate(), g.wedge(&BasedGraph::rose(1)).certificate());
    }

    #[test]
    fn filtered_comparisons(seed in any::<u64>(), k in 0usize..=2) {
        let rep = verify_filtered_comparison(&random_comparison_instance(seed), k).unwrap();
        prop_assert!(rep.hypothesis_holds);
        prop_assert!(rep.conclusion_holds);
        prop_assert!(rep.triples_hold);
    }
}
