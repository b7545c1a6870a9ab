use clap::Args;
use homstab::spine::RosesPart;
use homstab::suites::{Suite, SuiteRequest};
use homstab::wordcomplexes::Family;

/// Parameter ranges. Each suite reads the flags that make sense for it and
/// rejects the rest.
#[derive(Args, Default)]
pub struct Ranges {
    /// `symmetric` or `signed`; both when omitted
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// a value, an inclusive range `a..b`, or a list `a,b,c`
    #[arg(long, value_parser = parse_list)]
    n: Option<List>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    q_max: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// degree bound for graph classes, same syntax as `--n`
    #[arg(long, value_parser = parse_list)]
    degree: Option<List>,
    /// comma-separated subset of `a,b,c`
    #[arg(long, value_delimiter = ',', value_parser = parse_part)]
    parts: Option<Vec<RosesPart>>,
    #[arg(long)]
    count: Option<usize>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "symmetric" => Ok(Family::Symmetric),
        "signed" => Ok(Family::Signed),
        _ => Err(format!("unknown family {s:?}, expected symmetric or signed")),
    }
}

fn parse_part(s: &str) -> Result<RosesPart, String> {
    s.parse().map_err(|e: homstab::Error| e.to_string())
}

/// Values of `--n` and `--degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct List(pub Vec<usize>);

pub fn parse_list(s: &str) -> Result<List, String> {
    parse_values(s).map(List)
}

fn parse_values(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a number: {t:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}

/// The smallest rank where `Q_{n,D}` is covered by the stable range `n > 4(D − 1)`.
fn stable_rank(degree: usize) -> usize {
    (4 * degree.saturating_sub(1) + 1).max(2)
}

impl Ranges {
    fn used(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (name, set) in [
            ("--family", self.family.is_some()),
            ("--n", self.n.is_some()),
            ("--r", self.r.is_some()),
            ("--q-max", self.q_max.is_some()),
            ("--k", self.k.is_some()),
            ("--degree", self.degree.is_some()),
            ("--parts", self.parts.is_some()),
            ("--count", self.count.is_some()),
        ] {
            if set {
                v.push(name);
            }
        }
        v
    }

    fn families(&self) -> Vec<Family> {
        match self.family {
            Some(f) => vec![f],
            None => vec![Family::Symmetric, Family::Signed],
        }
    }

    /// `(family, n)` pairs: the default ones for the chosen families unless
    /// `--n` is given.
    fn group_cases(&self, default: Vec<(Family, usize)>) -> Vec<(Family, usize)> {
        let families = self.families();
        match &self.n {
            Some(List(ns)) => families.iter().flat_map(|&f| ns.iter().map(move |&n| (f, n))).collect(),
            None => default.into_iter().filter(|(f, _)| families.contains(f)).collect(),
        }
    }

    fn graph_cases(&self, default: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        if self.n.is_none() && self.degree.is_none() {
            return default;
        }
        let degrees = self.degree.clone().map_or_else(|| vec![1], |l| l.0);
        degrees
            .into_iter()
            .flat_map(|d| {
                let ns = self.n.clone().map_or_else(|| vec![stable_rank(d)], |l| l.0);
                ns.into_iter().map(move |n| (n, d))
            })
            .collect()
    }

    pub fn into_request(self, suite: Suite) -> Result<SuiteRequest, String> {
        let allowed: &[&str] = match suite {
            Suite::Words | Suite::SignedWords => &["--n"],
            Suite::Quillen => &["--family", "--n", "--r", "--q-max"],
            Suite::GroupStability => &["--family", "--n", "--r"],
            Suite::Roses => &["--k", "--parts"],
            Suite::Quotient | Suite::Splitting => &["--n", "--degree"],
            Suite::Prop1 => &["--count", "--k"],
            Suite::Prop9 => &["--family", "--n", "--k"],
        };
        if let Some(bad) = self.used().into_iter().find(|f| !allowed.contains(f)) {
            return Err(format!("{bad} does not apply to the {} suite", suite.name()));
        }
        let request = match suite.default_request() {
            SuiteRequest::Words { n } => SuiteRequest::Words { n: self.n.map_or(n, |l| l.0) },
            SuiteRequest::SignedWords { n } => SuiteRequest::SignedWords { n: self.n.map_or(n, |l| l.0) },
            SuiteRequest::Quillen { cases, r, q_max } => SuiteRequest::Quillen {
                cases: self.group_cases(cases),
                r: self.r.unwrap_or(r),
                q_max: self.q_max.unwrap_or(q_max),
            },
            SuiteRequest::GroupStability { cases, r, kunneth } => SuiteRequest::GroupStability {
                kunneth: kunneth && self.family.is_none() && self.n.is_none(),
                cases: self.group_cases(cases),
                r: self.r.unwrap_or(r),
            },
            SuiteRequest::Roses { k, parts } => {
                SuiteRequest::Roses { k: self.k.unwrap_or(k), parts: self.parts.unwrap_or(parts) }
            }
            SuiteRequest::Quotient { cases } => SuiteRequest::Quotient { cases: self.graph_cases(cases) },
            SuiteRequest::Splitting { cases } => SuiteRequest::Splitting { cases: self.graph_cases(cases) },
            SuiteRequest::Prop1 { count, k } => {
                SuiteRequest::Prop1 { count: self.count.unwrap_or(count), k: self.k.unwrap_or(k) }
            }
            SuiteRequest::Prop9 { families, n, k } => {
                let n = match self.n.as_ref().map(|l| l.0.as_slice()) {
                    None => n,
                    Some([n]) => *n,
                    Some(_) => return Err("the prop9 suite takes a single --n".into()),
                };
                SuiteRequest::Prop9 {
                    families: if self.family.is_some() { self.families() } else { families },
                    n,
                    k: self.k.unwrap_or(k),
                }
            }
        };
        Ok(request)
    }
}
