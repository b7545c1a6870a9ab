//! Named verification suites and the report they produce.
//!
//! Every suite is a list of independent checks. Checks run in parallel and
//! are assembled in a fixed order, so the report is a function of the
//! request, the seed and the caps. Wall times live in [`Timing`] and are left
//! out of [`VerificationReport::deterministic_json`].

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complexes::HomologyProfile;
use crate::error::{Error, Result};
use crate::grouphomology::{abelianization, group_homology_capped, kunneth_check, stability_check, DEFAULT_MAX_CHAIN_RANK};
use crate::groups::{signed_symmetric_group, symmetric_group};
use crate::quillen::{
    counter_instance, d1_pattern_check, e1_page, random_comparison_instance, verify_filtered_comparison, word_transfer_check,
};
use crate::spine::{enumerate_classes, quotient_comparison, verify_roses, verify_stabilizer_splitting, RosesPart};
use crate::spine::{MAX_EDGES, SYMMETRY_MAX_ORDER};
use crate::wordcomplexes::{audit_quillen_conditions, Family, WordComplex};

/// Bumped whenever the JSON layout of [`VerificationReport`] changes.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 2718;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Words,
    SignedWords,
    Quillen,
    GroupStability,
    Roses,
    Quotient,
    Splitting,
    Prop1,
    Prop9,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Words,
        Suite::SignedWords,
        Suite::Quillen,
        Suite::GroupStability,
        Suite::Roses,
        Suite::Quotient,
        Suite::Splitting,
        Suite::Prop1,
        Suite::Prop9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Words => "words",
            Suite::SignedWords => "signed-words",
            Suite::Quillen => "quillen",
            Suite::GroupStability => "group-stability",
            Suite::Roses => "roses",
            Suite::Quotient => "quotient",
            Suite::Splitting => "splitting",
            Suite::Prop1 => "prop1",
            Suite::Prop9 => "prop9",
        }
    }

    /// The request run when no ranges are given.
    pub fn default_request(self) -> SuiteRequest {
        let both = |sym: usize, signed: usize| -> Vec<(Family, usize)> {
            let mut v: Vec<_> = (2..=sym).map(|n| (Family::Symmetric, n)).collect();
            v.extend((2..=signed).map(|n| (Family::Signed, n)));
            v
        };
        let spine_cases = {
            let mut v: Vec<_> = (2..=6).map(|n| (n, 1)).collect();
            v.extend([(5, 2), (6, 2)]);
            v
        };
        match self {
            Suite::Words => SuiteRequest::Words { n: (2..=6).collect() },
            Suite::SignedWords => SuiteRequest::SignedWords { n: (2..=4).collect() },
            Suite::Quillen => SuiteRequest::Quillen { cases: both(5, 4), r: 2, q_max: 1 },
            Suite::GroupStability => SuiteRequest::GroupStability { cases: both(5, 3), r: 1, kunneth: true },
            Suite::Roses => SuiteRequest::Roses { k: 1, parts: RosesPart::ALL.to_vec() },
            Suite::Quotient => SuiteRequest::Quotient { cases: vec![(2, 1), (3, 1), (4, 1), (5, 1), (5, 2)] },
            Suite::Splitting => SuiteRequest::Splitting { cases: spine_cases },
            Suite::Prop1 => SuiteRequest::Prop1 { count: 100, k: 1 },
            Suite::Prop9 => SuiteRequest::Prop9 { families: vec![Family::Symmetric, Family::Signed], n: 3, k: 0 },
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

/// What to run. `(family, n)` pairs pick a group `G_n`; `(n, D)` pairs pick
/// based graphs of rank `n` and degree `≤ D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "kebab-case")]
pub enum SuiteRequest {
    Words { n: Vec<usize> },
    SignedWords { n: Vec<usize> },
    /// flag audit, `d¹` for `q ≤ q_max` and the `E¹` page, with flags of length `r`
    Quillen { cases: Vec<(Family, usize)>, r: usize, q_max: usize },
    /// `H_1` against the abelianization and `H_i(G_{n−1}) → H_i(G_n)` for
    /// `1 ≤ i ≤ r` with `n > 2i`
    GroupStability { cases: Vec<(Family, usize)>, r: usize, kunneth: bool },
    Roses { k: usize, parts: Vec<RosesPart> },
    Quotient { cases: Vec<(usize, usize)> },
    Splitting { cases: Vec<(usize, usize)> },
    /// `count` random filtered maps; instance `i` uses seed `seed + i`
    Prop1 { count: usize, k: usize },
    Prop9 { families: Vec<Family>, n: usize, k: usize },
}

impl SuiteRequest {
    pub fn suite(&self) -> Suite {
        match self {
            SuiteRequest::Words { .. } => Suite::Words,
            SuiteRequest::SignedWords { .. } => Suite::SignedWords,
            SuiteRequest::Quillen { .. } => Suite::Quillen,
            SuiteRequest::GroupStability { .. } => Suite::GroupStability,
            SuiteRequest::Roses { .. } => Suite::Roses,
            SuiteRequest::Quotient { .. } => Suite::Quotient,
            SuiteRequest::Splitting { .. } => Suite::Splitting,
            SuiteRequest::Prop1 { .. } => Suite::Prop1,
            SuiteRequest::Prop9 { .. } => Suite::Prop9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// rank of a bar-complex chain group
    pub max_chain_rank: usize,
    /// order of a graph symmetry group
    pub max_group_order: usize,
    /// simplices in a word complex
    pub max_simplices: usize,
    /// edges of an enumerated graph
    pub max_graph_edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_chain_rank: DEFAULT_MAX_CHAIN_RANK,
            max_group_order: SYMMETRY_MAX_ORDER,
            max_simplices: 100_000,
            max_graph_edges: MAX_EDGES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: DEFAULT_SEED, caps: Caps::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedCap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    /// nothing failed but some check hit a cap
    Capped,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// preformatted text, e.g. an `E¹` table
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
    /// one entry per check, in report order
    pub check_seconds: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub command: String,
    pub request: SuiteRequest,
    pub seed: u64,
    pub caps: Caps,
    pub checks: Vec<CheckRecord>,
    pub outcome: Outcome,
    /// excluded from determinism comparisons
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON without the timing field.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.timing = None;
        r.to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}  (seed {}, toolkit {})\n", self.command, self.seed, self.toolkit_version);
        for (i, c) in self.checks.iter().enumerate() {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::SkippedCap => "SKIP",
            };
            let time = self.timing.as_ref().and_then(|t| t.check_seconds.get(i));
            match time {
                Some(s) => writeln!(out, "{tag}  {}  [{s:.2}s]", c.name),
                None => writeln!(out, "{tag}  {}", c.name),
            }
            .expect("string write");
            if c.status == Status::SkippedCap {
                if let Some(e) = c.witness.get("error").and_then(Value::as_str) {
                    writeln!(out, "      {e}").expect("string write");
                }
            }
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    writeln!(out, "      {line}").expect("string write");
                }
            }
        }
        let outcome = match self.outcome {
            Outcome::Pass => "pass",
            Outcome::Capped => "incomplete (cap reached)",
            Outcome::Fail => "fail",
        };
        writeln!(
            out,
            "{} passed, {} failed, {} skipped: {outcome}",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SkippedCap)
        )
        .expect("string write");
        out
    }
}

struct Verdict {
    passed: bool,
    witness: Value,
    detail: Option<String>,
    /// a cap was hit somewhere inside an otherwise passing check
    capped: bool,
}

impl Verdict {
    fn new(passed: bool, witness: impl Serialize) -> Result<Self> {
        let witness = serde_json::to_value(witness).map_err(|e| Error::invalid(e.to_string()))?;
        Ok(Verdict { passed, witness, detail: None, capped: false })
    }
}

type CheckFn<'a> = Box<dyn Fn() -> Result<Verdict> + Send + Sync + 'a>;

fn record(name: String, run: &CheckFn<'_>) -> (CheckRecord, f64) {
    let start = Instant::now();
    let result = run();
    let seconds = start.elapsed().as_secs_f64();
    let rec = match result {
        Ok(v) => CheckRecord {
            name,
            status: match (v.passed, v.capped) {
                (false, _) => Status::Fail,
                (true, true) => Status::SkippedCap,
                (true, false) => Status::Pass,
            },
            detail: v.detail,
            witness: v.witness,
        },
        Err(e) => CheckRecord {
            name,
            status: if e.is_cap() { Status::SkippedCap } else { Status::Fail },
            detail: None,
            witness: json!({ "error": e.to_string() }),
        },
    };
    (rec, seconds)
}

/// Runs a suite. Failures and caps are recorded per check; this only
/// returns an error for a malformed request.
pub fn run_suite(request: &SuiteRequest, config: &RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks = build_checks(request, config)?;
    let results: Vec<(CheckRecord, f64)> = checks.into_par_iter().map(|(name, f)| record(name, &f)).collect();
    let (checks, check_seconds): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let outcome = if checks.iter().any(|c| c.status == Status::Fail) {
        Outcome::Fail
    } else if checks.iter().any(|c| c.status == Status::SkippedCap) {
        Outcome::Capped
    } else {
        Outcome::Pass
    };
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        toolkit_version: TOOLKIT_VERSION.to_string(),
        command: format!("verify {}", request.suite().name()),
        request: request.clone(),
        seed: config.seed,
        caps: config.caps,
        checks,
        outcome,
        timing: Some(Timing { total_seconds: start.elapsed().as_secs_f64(), check_seconds }),
    })
}

fn group_name(family: Family, n: usize) -> String {
    match family {
        Family::Symmetric => format!("S_{n}"),
        Family::Signed => format!("S_{n}^±"),
    }
}

fn falling(n: usize, k: usize) -> u128 {
    (0..k).map(|i| (n - i) as u128).product()
}

/// Simplex counts of the (signed) word complex, from the formula.
fn word_counts(family: Family, n: usize) -> Vec<u128> {
    let c: u128 = match family {
        Family::Symmetric => 1,
        Family::Signed => 2,
    };
    (1..=n).map(|k| falling(n, k) * c.pow(k as u32)).collect()
}

fn words_check(family: Family, n: usize, caps: Caps) -> Result<Verdict> {
    let counts = word_counts(family, n);
    let total: u128 = counts.iter().sum();
    if total > caps.max_simplices as u128 {
        return Err(Error::cap("simplices", total, caps.max_simplices));
    }
    let wc = WordComplex::build(family, n)?;
    let h: HomologyProfile = wc.complex().homology(true)?;
    let spherical = h.is_spherical(n - 1);
    let top = h.group(n - 1);
    // reduced Euler characteristic from the counts alone
    let chi: i128 = -1 + counts.iter().enumerate().map(|(p, &c)| if p % 2 == 0 { c as i128 } else { -(c as i128) }).sum::<i128>();
    let expected_top = if (n - 1) % 2 == 0 { chi } else { -chi };
    let top_rank = top.free_rank;
    let passed = spherical && top.torsion.is_empty() && top_rank as i128 == expected_top;
    Verdict::new(
        passed,
        json!({
            "n": n,
            "counts": wc.complex().counts(),
            "reduced_homology": h.to_string(),
            "spherical": spherical,
            "top_rank": top_rank,
            "euler_top_rank": expected_top,
        }),
    )
}

fn quillen_checks<'a>(family: Family, n: usize, r: usize, q_max: usize, caps: Caps) -> Vec<(String, CheckFn<'a>)> {
    let g = group_name(family, n);
    let r_audit = r.min(n.saturating_sub(2));
    let mut checks: Vec<(String, CheckFn<'a>)> = vec![(
        format!("audit {g} on {} r={r_audit}", complex_name(family, n)),
        Box::new(move || {
            let wc = WordComplex::build(family, n)?;
            let flag = wc.standard_flag(r_audit)?;
            let audit = audit_quillen_conditions(wc.action(), &flag, r_audit);
            Verdict::new(audit.all_pass(), &audit)
        }),
    )];
    checks.push((
        format!("E1 and d1 for {g}, q <= {q_max}"),
        Box::new(move || {
            let wc = WordComplex::build(family, n)?;
            let page = e1_page(&wc, r, caps.max_chain_rank)?;
            let d1 = (0..=q_max)
                .map(|q| d1_pattern_check(&wc, r, q, caps.max_chain_rank))
                .collect::<Result<Vec<_>>>()?;
            let passed = d1.iter().all(|d| d.passed());
            let mut v = Verdict::new(passed, json!({ "e1": page, "d1": d1 }))?;
            v.detail = Some(page.render(&d1));
            Ok(v)
        }),
    ));
    checks
}

fn complex_name(family: Family, n: usize) -> String {
    match family {
        Family::Symmetric => format!("X({n})"),
        Family::Signed => format!("signed X({n})"),
    }
}

fn build_checks<'a>(request: &'a SuiteRequest, config: &RunConfig) -> Result<Vec<(String, CheckFn<'a>)>> {
    let caps = config.caps;
    let seed = config.seed;
    let mut checks: Vec<(String, CheckFn<'a>)> = Vec::new();
    match request {
        SuiteRequest::Words { n } | SuiteRequest::SignedWords { n } => {
            let family = if request.suite() == Suite::Words { Family::Symmetric } else { Family::Signed };
            for &n in n {
                if n == 0 {
                    return Err(Error::invalid("word complexes need n >= 1"));
                }
                checks.push((
                    format!("{} is {}-spherical", complex_name(family, n), n - 1),
                    Box::new(move || words_check(family, n, caps)),
                ));
            }
        }
        SuiteRequest::Quillen { cases, r, q_max } => {
            for &(family, n) in cases {
                if n < 2 {
                    return Err(Error::invalid("the Quillen suite needs n >= 2"));
                }
                checks.extend(quillen_checks(family, n, *r, *q_max, caps));
            }
        }
        SuiteRequest::GroupStability { cases, r, kunneth } => {
            for &(family, n) in cases {
                checks.push((
                    format!("H_1({}) agrees with the abelianization", group_name(family, n)),
                    Box::new(move || {
                        let g = family.group(n)?;
                        let h1 = group_homology_capped(&g, 1, caps.max_chain_rank)?.group(1);
                        let ab = abelianization(&g);
                        Verdict::new(h1 == ab, json!({ "bar": h1.to_string(), "abelianization": ab.to_string() }))
                    }),
                ));
                for i in (1..=*r).filter(|i| n > 2 * i) {
                    checks.push((
                        format!("H_{i}({}) -> H_{i}({}) is an isomorphism", group_name(family, n - 1), group_name(family, n)),
                        Box::new(move || {
                            let rep = stability_check(family, i, n, caps.max_chain_rank)?;
                            Verdict::new(rep.map.verdict.iso, &rep)
                        }),
                    ));
                }
            }
            if *kunneth {
                checks.push((
                    "Kunneth for S_2 x S_2, r <= 2".into(),
                    Box::new(move || {
                        let s2 = symmetric_group(2)?;
                        let rep = kunneth_check(&s2, &s2, 2, caps.max_chain_rank)?;
                        Verdict::new(rep.holds(), &rep)
                    }),
                ));
                checks.push((
                    "Kunneth for S_3 x S_2^±, r <= 2".into(),
                    Box::new(move || {
                        let rep = kunneth_check(&symmetric_group(3)?, &signed_symmetric_group(2)?, 2, caps.max_chain_rank)?;
                        Verdict::new(rep.holds(), &rep)
                    }),
                ));
            }
        }
        SuiteRequest::Roses { k, parts } => {
            for &part in parts {
                let k = *k;
                checks.push((
                    format!("roses ({part}) for k={k}"),
                    Box::new(move || {
                        let (n_max, _) = part.instances(k)[1];
                        if n_max + k + 1 > caps.max_graph_edges {
                            return Err(Error::cap("edges", n_max + k + 1, caps.max_graph_edges));
                        }
                        let rep = verify_roses(k, part)?;
                        Verdict::new(rep.passed, &rep)
                    }),
                ));
            }
        }
        SuiteRequest::Quotient { cases } => {
            for &(n, d) in cases {
                checks.push((
                    format!("Q_{{{n},{d}}} -> Q_{{{},{d}}} is an isomorphism", n + 1),
                    Box::new(move || {
                        if n + 1 + d > caps.max_graph_edges {
                            return Err(Error::cap("edges", n + 1 + d, caps.max_graph_edges));
                        }
                        let rep = quotient_comparison(n, d)?;
                        Verdict::new(rep.isomorphism, &rep)
                    }),
                ));
            }
        }
        SuiteRequest::Splitting { cases } => {
            for &(n, d) in cases {
                checks.push((
                    format!("Sym splits for rank {n}, degree <= {d}"),
                    Box::new(move || {
                        if n + d > caps.max_graph_edges {
                            return Err(Error::cap("edges", n + d, caps.max_graph_edges));
                        }
                        let reports = enumerate_classes(n, d)?
                            .iter()
                            .map(|c| verify_stabilizer_splitting(&c.representative, caps.max_group_order))
                            .collect::<Result<Vec<_>>>()?;
                        let mut v = Verdict::new(reports.iter().all(|r| r.passed), &reports)?;
                        v.capped = reports.iter().any(|r| r.explicit.is_none());
                        Ok(v)
                    }),
                ));
            }
        }
        SuiteRequest::Prop1 { count, k } => {
            let k = *k;
            for i in 0..*count as u64 {
                let s = seed.wrapping_add(i);
                checks.push((
                    format!("filtered comparison, seed {s}"),
                    Box::new(move || {
                        let rep = verify_filtered_comparison(&random_comparison_instance(s), k)?;
                        Verdict::new(rep.hypothesis_holds && rep.conclusion_holds && rep.triples_hold, &rep)
                    }),
                ));
            }
            checks.push((
                "the hypothesis is not implied by the conclusion".into(),
                Box::new(move || {
                    let rep = verify_filtered_comparison(&counter_instance(), 0)?;
                    Verdict::new(!rep.hypothesis_holds && rep.conclusion_holds, &rep)
                }),
            ));
        }
        SuiteRequest::Prop9 { families, n, k } => {
            let (n, k) = (*n, *k);
            if n < 2 {
                return Err(Error::invalid("the transfer check needs n >= 2"));
            }
            for &family in families {
                checks.push((
                    format!(
                        "transfer for {} <= {} on {} in {}, k={k}",
                        group_name(family, n - 1),
                        group_name(family, n),
                        complex_name(family, n - 1),
                        complex_name(family, n)
                    ),
                    Box::new(move || {
                        let rep = word_transfer_check(family, n, k)?;
                        let mut v = Verdict::new(rep.passed(), &rep)?;
                        v.capped = rep.conditions_hold() && rep.conclusion.is_none();
                        Ok(v)
                    }),
                ));
            }
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.default_request().suite(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass_and_serialize() {
        let config = RunConfig::default();
        let req = SuiteRequest::Words { n: vec![2, 3] };
        let rep = run_suite(&req, &config).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
        let back = VerificationReport::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.to_json(), rep.to_json());
        assert!(!rep.deterministic_json().contains("total_seconds"));
    }

    #[test]
    fn caps_become_skips() {
        let config = RunConfig { caps: Caps { max_simplices: 10, ..Caps::default() }, ..RunConfig::default() };
        let rep = run_suite(&SuiteRequest::Words { n: vec![2, 4] }, &config).unwrap();
        assert_eq!(rep.checks[0].status, Status::Pass);
        assert_eq!(rep.checks[1].status, Status::SkippedCap);
        assert_eq!(rep.outcome, Outcome::Capped);
    }

    #[test]
    fn quillen_text_has_the_table() {
        let req = SuiteRequest::Quillen { cases: vec![(Family::Symmetric, 4)], r: 1, q_max: 1 };
        let rep = run_suite(&req, &RunConfig::default()).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass, "{}", rep.to_text());
        assert!(rep.to_text().contains("q=0  Z   ←0− Z   ←≅− Z"), "{}", rep.to_text());
    }
}
