use serde::Serialize;

use super::e1::{d1_pattern_check, e1_page, D1Report, E1Page};
use crate::error::{Error, Result};
use crate::grouphomology::{stability_check, StabilityReport};
use crate::wordcomplexes::{audit_quillen_conditions, Family, QuillenAudit, WordComplex};

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub audit: QuillenAudit,
    /// `H_i(G_{s−1}) → H_i(G_s)` for `i < r` and `2i < s < n`
    pub hypotheses: Vec<StabilityReport>,
    pub e1: E1Page,
    pub e1_table: String,
    pub d1: Vec<D1Report>,
    /// `H_r(G_{n−1}) → H_r(G_n)` computed directly
    pub conclusion: StabilityReport,
    pub passed: bool,
}

/// End-to-end check of the stability step for `G_n` in degree `r`.
///
/// Errors are wrapped with the name of the stage that raised them.
pub fn stability_pipeline(family: Family, r: usize, n: usize, max_chain_rank: usize) -> Result<PipelineReport> {
    if n < 2 {
        return Err(Error::invalid("the pipeline needs n >= 2").at_stage("build"));
    }
    let wc = WordComplex::build(family, n).map_err(|e| e.at_stage("build"))?;

    let r_audit = r.min(n - 2);
    let flag = wc.standard_flag(r_audit).map_err(|e| e.at_stage("audit"))?;
    let audit = audit_quillen_conditions(wc.action(), &flag, r_audit);
    if !audit.all_pass() {
        let failed: Vec<&str> = audit.conditions.iter().filter(|c| !c.passed).map(|c| c.id).collect();
        return Err(Error::invalid(format!("conditions {failed:?} fail")).at_stage("audit"));
    }

    let mut hypotheses = Vec::new();
    for i in 0..r {
        for s in (2 * i + 1).max(1)..n {
            hypotheses.push(stability_check(family, i, s, max_chain_rank).map_err(|e| e.at_stage("hypotheses"))?);
        }
    }

    let e1 = e1_page(&wc, r, max_chain_rank).map_err(|e| e.at_stage("e1"))?;
    let d1 = (0..=r)
        .map(|q| d1_pattern_check(&wc, r, q, max_chain_rank))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at_stage("d1"))?;
    let e1_table = e1.render(&d1);

    let conclusion = stability_check(family, r, n, max_chain_rank).map_err(|e| e.at_stage("conclusion"))?;
    let passed = hypotheses.iter().all(|h| h.map.verdict.iso)
        && d1.iter().all(D1Report::passed)
        && (!conclusion.in_range || conclusion.map.verdict.iso);
    Ok(PipelineReport { family, n, r, audit, hypotheses, e1, e1_table, d1, conclusion, passed })
}
