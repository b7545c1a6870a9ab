use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_classes;
use crate::error::{Error, Result};

/// Which loop-count bound to check on classes of degree `≤ k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RosesPart {
    /// at least one loop when `n > 2k + 2`
    A,
    /// at least `m` loops when `n − m + 1 > 2k + 2`
    B,
    /// at least `2k − 1` loops when `n > 4k`
    C,
}

impl RosesPart {
    pub const ALL: [RosesPart; 3] = [RosesPart::A, RosesPart::B, RosesPart::C];

    /// The two smallest ranks in range, each with the number of loops it
    /// demands there.
    pub fn instances(self, k: usize) -> [(usize, usize); 2] {
        match self {
            RosesPart::A => [(2 * k + 3, 1), (2 * k + 4, 1)],
            // the largest m allowed at each n
            RosesPart::B => [(2 * k + 3, 1), (2 * k + 4, 2)],
            RosesPart::C => {
                let n = 4 * k + 1;
                let need = (2 * k).saturating_sub(1);
                [(n, need), (n + 1, need)]
            }
        }
    }
}

impl fmt::Display for RosesPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RosesPart::A => "a",
            RosesPart::B => "b",
            RosesPart::C => "c",
        })
    }
}

impl FromStr for RosesPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(RosesPart::A),
            "b" => Ok(RosesPart::B),
            "c" => Ok(RosesPart::C),
            _ => Err(Error::invalid(format!("unknown part {s:?}, expected a, b or c"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RosesInstance {
    pub n: usize,
    pub max_degree: usize,
    pub required_loops: usize,
    pub classes: usize,
    /// number of classes with each exact loop count
    pub loop_counts: BTreeMap<usize, usize>,
    /// classes below the bound
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RosesReport {
    pub k: usize,
    pub part: RosesPart,
    pub instances: Vec<RosesInstance>,
    pub passed: bool,
}

pub fn verify_roses(k: usize, part: RosesPart) -> Result<RosesReport> {
    let instances = part
        .instances(k)
        .into_iter()
        .map(|(n, required_loops)| {
            let classes = enumerate_classes(n, k + 1)?;
            let mut loop_counts = BTreeMap::new();
            let mut failures = Vec::new();
            for c in &classes {
                let loops = c.representative.loops_at_basepoint();
                *loop_counts.entry(loops).or_insert(0) += 1;
                if loops < required_loops {
                    failures.push(c.name.clone());
                }
            }
            Ok(RosesInstance {
                n,
                max_degree: k + 1,
                required_loops,
                classes: classes.len(),
                loop_counts,
                passed: failures.is_empty(),
                failures,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = instances.iter().all(|i| i.passed);
    Ok(RosesReport { k, part, instances, passed })
}
