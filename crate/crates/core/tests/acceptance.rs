//! The twelve acceptance criteria. Each test prints one line of the form
//! `criterion NN PASS|FAIL title [elapsed of limit] detail` to stderr,
//! bypassing output capture, and fails if the check fails or runs over.

mod common;

use std::collections::BTreeSet;
use std::error::Error as StdError;
use std::io::Write;
use std::time::{Duration, Instant};

use homstab::exactlin::AbelianGroup;
use homstab::grouphomology::{abelianization, group_homology_capped, kunneth_check, stability_check, DEFAULT_MAX_CHAIN_RANK};
use homstab::groups::{signed_symmetric_group, symmetric_group};
use homstab::quillen::{
    counter_instance, d1_pattern_check, random_comparison_instance, verify_filtered_comparison, word_transfer_check,
};
use homstab::spine::{
    enumerate_classes, quotient_comparison, verify_roses, verify_stabilizer_splitting, BasedGraph, RosesPart,
    SYMMETRY_MAX_ORDER,
};
use homstab::suites::{run_suite, Outcome, RunConfig, Suite, DEFAULT_SEED};
use homstab::wordcomplexes::{audit_quillen_conditions, Family, WordComplex};

type Checked = Result<String, Box<dyn StdError>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*).into());
        }
    };
}

fn criterion(id: u8, title: &str, limit_secs: u64, body: impl FnOnce() -> Checked) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_secs);
    let (status, detail) = match &result {
        Ok(d) if in_time => ("PASS", d.clone()),
        Ok(d) => ("FAIL", format!("over the time limit; {d}")),
        Err(e) => ("FAIL", e.to_string()),
    };
    let line = format!("criterion {id:02} {status} {title} [{:.2}s of {limit_secs}s] {detail}\n", elapsed.as_secs_f64());
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(status == "PASS", "{line}");
}

fn z2(k: usize) -> AbelianGroup {
    AbelianGroup::from_cyclic(0, vec![2u32.into(); k])
}

#[test]
fn criterion_01_injective_words_are_spherical() {
    criterion(1, "injective words", 60, || {
        let mut ranks = Vec::new();
        for n in 2..=6usize {
            let wc = WordComplex::build(Family::Symmetric, n)?;
            let counts: Vec<u64> = wc.complex().counts().iter().map(|&c| c as u64).collect();
            ensure!(counts == common::word_counts(n as u64, 1), "X({n}) has counts {counts:?}");
            let h = wc.complex().homology(true)?;
            ensure!(h.is_spherical(n - 1), "X({n}): {h}");
            let top = h.group(n - 1);
            ensure!(top.torsion.is_empty(), "X({n}) has torsion {top}");
            ensure!(top.free_rank as u64 == common::derangements(n as u64), "X({n}) top rank {}", top.free_rank);
            ranks.push(top.free_rank);
        }
        Ok(format!("top ranks {ranks:?}"))
    });
}

#[test]
fn criterion_02_signed_words_are_spherical() {
    criterion(2, "signed injective words", 60, || {
        let mut ranks = Vec::new();
        for n in 2..=4usize {
            let wc = WordComplex::build(Family::Signed, n)?;
            let counts: Vec<u64> = wc.complex().counts().iter().map(|&c| c as u64).collect();
            ensure!(counts == common::word_counts(n as u64, 2), "signed X({n}) has counts {counts:?}");
            let h = wc.complex().homology(true)?;
            ensure!(h.is_spherical(n - 1), "signed X({n}): {h}");
            let top = h.group(n - 1);
            let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
            let euler = sign * common::reduced_euler(&counts);
            ensure!(top.torsion.is_empty() && top.free_rank as i64 == euler, "signed X({n}) top {top}, Euler {euler}");
            ranks.push(top.free_rank);
        }
        ensure!(ranks[0] == 5, "signed X(2) top rank {}", ranks[0]);
        Ok(format!("top ranks {ranks:?}"))
    });
}

#[test]
fn criterion_03_quillen_audit() {
    criterion(3, "flag audit", 300, || {
        let cases = (2..=5).map(|n| (Family::Symmetric, n)).chain((2..=4).map(|n| (Family::Signed, n)));
        let mut audits = 0;
        for (family, n) in cases {
            let wc = WordComplex::build(family, n)?;
            // flags are capped at length n - 2, where X(n) stops being highly connected
            let lengths: BTreeSet<usize> = (0..=2).map(|r| r.min(n - 2)).collect();
            for r in lengths {
                let audit = audit_quillen_conditions(wc.action(), &wc.standard_flag(r)?, r);
                let failed: Vec<_> = audit.conditions.iter().filter(|c| !c.passed).map(|c| c.id).collect();
                ensure!(failed.is_empty(), "{} n={n} r={r}: {failed:?}", family.name());
                audits += 1;
            }
        }
        Ok(format!("{audits} audits"))
    });
}

#[test]
fn criterion_04_d1_pattern() {
    criterion(4, "d1 pattern", 600, || {
        let mut steps = 0;
        for n in 2..=5usize {
            let wc = WordComplex::build(Family::Symmetric, n)?;
            for q in 0..=1 {
                let rep = d1_pattern_check(&wc, 2, q, DEFAULT_MAX_CHAIN_RANK)?;
                let ps: Vec<usize> = rep.steps.iter().map(|s| s.p).collect();
                ensure!(ps == (0..=2.min(n - 2)).collect::<Vec<_>>(), "S_{n} q={q}: columns {ps:?}");
                for s in &rep.steps {
                    let p = s.p;
                    ensure!(s.face_maps.len() == p + 2, "S_{n} q={q} p={p}: {} face maps", s.face_maps.len());
                    ensure!(s.faces_agree && s.choices_agree, "S_{n} q={q} p={p}: face maps differ");
                    if p % 2 == 0 {
                        ensure!(s.differential_zero, "S_{n} q={q} p={p}: d1 is not zero");
                    } else {
                        ensure!(s.equals_inclusion, "S_{n} q={q} p={p}: d1 is not the inclusion");
                    }
                    ensure!(!s.iso_expected || s.differential_iso, "S_{n} q={q} p={p}: d1 is not an isomorphism");
                    if q == 0 {
                        ensure!(s.differential_iso == (p % 2 == 1), "S_{n} q=0 p={p}: wrong H_0 pattern");
                    }
                    steps += 1;
                }
            }
        }
        let s4 = d1_pattern_check(&WordComplex::build(Family::Symmetric, 4)?, 1, 1, DEFAULT_MAX_CHAIN_RANK)?;
        ensure!(s4.steps[0].differential_zero, "S_4 q=1 p=0 is not zero");
        let s5 = d1_pattern_check(&WordComplex::build(Family::Symmetric, 5)?, 1, 1, DEFAULT_MAX_CHAIN_RANK)?;
        ensure!(s5.steps[1].differential_iso, "S_5 q=1 p=1 is not an isomorphism");
        Ok(format!("{steps} columns checked"))
    });
}

#[test]
fn criterion_05_group_homology_and_stability() {
    criterion(5, "group homology and stability", 600, || {
        let mut groups = Vec::new();
        for n in 2..=5 {
            groups.push((format!("S_{n}"), symmetric_group(n)?, z2(1)));
        }
        for n in 2..=3 {
            groups.push((format!("S_{n}^±"), signed_symmetric_group(n)?, z2(2)));
        }
        for (name, g, expected) in &groups {
            let h1 = group_homology_capped(g, 1, DEFAULT_MAX_CHAIN_RANK)?.group(1);
            ensure!(h1 == *expected, "H_1({name}) = {h1}");
            ensure!(abelianization(g) == h1, "abelianization of {name} differs");
            let (order, exponent_two) = common::commutator_quotient(g);
            let h1_order: u64 = h1.torsion.iter().map(|t| u64::try_from(t).unwrap()).product();
            ensure!(exponent_two && order as u64 == h1_order, "{name}: commutator quotient of order {order}");
        }
        let h2 = group_homology_capped(&symmetric_group(4)?, 2, DEFAULT_MAX_CHAIN_RANK)?.group(2);
        ensure!(h2 == z2(1), "H_2(S_4) = {h2}");
        for (family, n) in [(Family::Symmetric, 3), (Family::Symmetric, 4), (Family::Signed, 3)] {
            let rep = stability_check(family, 1, n, DEFAULT_MAX_CHAIN_RANK)?;
            ensure!(rep.in_range && rep.map.verdict.iso, "{} H_1 map into n={n} is not an isomorphism", family.name());
        }
        Ok("H_1 values, H_2(S_4) = Z/2 and three stability isomorphisms".into())
    });
}

#[test]
fn criterion_06_kunneth() {
    criterion(6, "Kunneth", 600, || {
        let s2 = symmetric_group(2)?;
        let rep = kunneth_check(&s2, &s2, 2, DEFAULT_MAX_CHAIN_RANK)?;
        ensure!(rep.holds(), "S_2 x S_2 fails");
        // H_*(Z/2 x Z/2) = Z, (Z/2)^2, Z/2
        let direct: Vec<AbelianGroup> = rep.degrees.iter().map(|d| d.direct.clone()).collect();
        ensure!(direct == [AbelianGroup::free(1), z2(2), z2(1)], "H_*(S_2 x S_2) = {direct:?}");
        let rep = kunneth_check(&symmetric_group(3)?, &signed_symmetric_group(2)?, 2, DEFAULT_MAX_CHAIN_RANK)?;
        ensure!(rep.holds(), "S_3 x S_2^± fails");
        Ok(format!("degrees 0..=2 for both products, H_2(S_3 x S_2^±) = {}", rep.degrees[2].direct))
    });
}

#[test]
fn criterion_07_filtered_comparison() {
    criterion(7, "filtered comparison", 60, || {
        for i in 0..100 {
            let seed = DEFAULT_SEED + i;
            let rep = verify_filtered_comparison(&random_comparison_instance(seed), 1)?;
            ensure!(rep.hypothesis_holds, "seed {seed}: hypothesis fails by construction");
            ensure!(rep.conclusion_holds, "seed {seed}: conclusion fails");
            ensure!(rep.triples_hold, "seed {seed}: triples fail");
        }
        let rep = verify_filtered_comparison(&counter_instance(), 0)?;
        ensure!(!rep.hypothesis_holds && rep.conclusion_holds, "counter-instance misreported");
        Ok("100 instances and the counter-instance".into())
    });
}

#[test]
fn criterion_08_orbit_quotient_transfer() {
    criterion(8, "orbit quotient transfer", 300, || {
        for family in [Family::Symmetric, Family::Signed] {
            let rep = word_transfer_check(family, 3, 0)?;
            let failed: Vec<_> = rep.conditions.iter().filter(|c| !c.passed).map(|c| c.id).collect();
            ensure!(failed.is_empty(), "{}: conditions {failed:?}", family.name());
            ensure!(rep.conclusion_holds() == Some(true), "{}: conclusion {:?}", family.name(), rep.conclusion_holds());
        }
        Ok("both families at k = 0".into())
    });
}

#[test]
fn criterion_09_spine_enumeration() {
    criterion(9, "spine enumeration", 300, || {
        for n in 2..=6 {
            let classes = enumerate_classes(n, 1)?;
            let found: BTreeSet<String> = classes.iter().map(|c| c.certificate.clone()).collect();
            let expected: BTreeSet<String> =
                [BasedGraph::rose(n), BasedGraph::rose(n - 2).wedge(&BasedGraph::theta())].iter().map(|g| g.certificate()).collect();
            ensure!(found == expected, "rank {n}: {:?}", classes.iter().map(|c| &c.name).collect::<Vec<_>>());
            let oracle = common::exhaustive_classes(n, 1);
            ensure!(oracle.len() == classes.len(), "rank {n}: oracle finds {} classes", oracle.len());
            for g in &oracle {
                ensure!(classes.iter().any(|c| common::isomorphic(&c.representative, g)), "rank {n}: missing {}", g.name());
            }
        }
        let roses = verify_roses(1, RosesPart::C)?;
        ensure!(roses.passed, "roses (c) fails: {:?}", roses.instances.iter().map(|i| &i.failures).collect::<Vec<_>>());
        let oracle = common::exhaustive_classes(5, 2);
        ensure!(oracle.len() == enumerate_classes(5, 2)?.len(), "rank 5 degree 2: oracle finds {}", oracle.len());
        let loopless = oracle.iter().filter(|g| common::base_loops(g) == 0).count();
        ensure!(loopless == 0, "{loopless} rank-5 classes without a loop");
        Ok(format!("ranks 2..=6 at degree 1; {} rank-5 classes of degree <= 2 all have a loop", oracle.len()))
    });
}

/// Every oracle class of rank `n` maps by adding a loop to a distinct oracle
/// class of rank `n + 1`, and every class there is hit.
fn wedge_loop_bijects(n: usize, d: usize) -> Result<(), String> {
    let small = common::exhaustive_classes(n, d);
    let large = common::exhaustive_classes(n + 1, d);
    let mut hit = vec![false; large.len()];
    for g in &small {
        let image = g.wedge_loop();
        let matches: Vec<usize> = (0..large.len()).filter(|&i| common::isomorphic(&large[i], &image)).collect();
        if matches.len() != 1 || hit[matches[0]] {
            return Err(format!("rank {n} degree {d}: {} has no distinct image", g.name()));
        }
        hit[matches[0]] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(format!("rank {n} degree {d}: not onto"));
    }
    Ok(())
}

#[test]
fn criterion_10_quotient_stabilization() {
    criterion(10, "quotient stabilization", 600, || {
        let cases = [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2)];
        for (n, d) in cases {
            let cmp = quotient_comparison(n, d)?;
            ensure!(cmp.isomorphism, "Q_({n},{d}) -> Q_({},{d}): unmatched {:?}", n + 1, cmp.unmatched);
            wedge_loop_bijects(n, d)?;
        }
        Ok(format!("{} poset isomorphisms", cases.len()))
    });
}

#[test]
fn criterion_11_stabilizer_splitting() {
    criterion(11, "stabilizer splitting", 600, || {
        let mut seen = BTreeSet::new();
        let mut graphs = Vec::new();
        for (n, d) in (2..=6).map(|n| (n, 1)).chain([(5, 2), (6, 2)]) {
            for c in enumerate_classes(n, d)? {
                if seen.insert(c.certificate.clone()) {
                    graphs.push(c.representative);
                }
            }
        }
        for g in &graphs {
            let rep = verify_stabilizer_splitting(g, SYMMETRY_MAX_ORDER)?;
            let name = g.name();
            ensure!(rep.passed && rep.order_identity, "{name}: splitting fails");
            let witness = rep.explicit.as_ref().ok_or(format!("{name}: no explicit isomorphism"))?;
            ensure!(witness.holds(), "{name}: explicit isomorphism fails");
            let (core, m) = g.max_rose_decomposition();
            let brute = common::automorphisms(g) as u128;
            let predicted = common::automorphisms(&core) as u128 * (1u128 << m) * (1..=m as u128).product::<u128>();
            ensure!(rep.order == brute && brute == predicted, "{name}: order {} brute {brute} predicted {predicted}", rep.order);
        }
        Ok(format!("{} classes", graphs.len()))
    });
}

#[test]
fn criterion_12_determinism() {
    criterion(12, "determinism", 1200, || {
        let config = RunConfig::default();
        for suite in Suite::ALL {
            let request = suite.default_request();
            let first = run_suite(&request, &config)?;
            let second = run_suite(&request, &config)?;
            ensure!(first.outcome == Outcome::Pass, "{} does not pass", suite.name());
            ensure!(first.deterministic_json() == second.deterministic_json(), "{} differs between runs", suite.name());
        }
        Ok(format!("{} suites", Suite::ALL.len()))
    });
}
