use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{AbelianGroup, AbelianHom};
use crate::grouphomology::{group_homology_capped, BarHomology};
use crate::groups::GroupSummary;
use crate::wordcomplexes::{audit_quillen_conditions, Family, FlagData, WordComplex};

#[derive(Clone, Debug, Serialize)]
pub struct E1Entry {
    pub p: usize,
    pub q: usize,
    /// `m` with the stabilizer of `σ^p` equal to `G_m`
    pub m: usize,
    pub group: AbelianGroup,
}

/// `E¹_{p,q} = H_q(Stab(σ^p))` for `p ≤ min(r + 1, n − 1)` and `q ≤ r`.
#[derive(Clone, Debug, Serialize)]
pub struct E1Page {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub columns: usize,
    pub stabilizers: Vec<GroupSummary>,
    pub entries: Vec<E1Entry>,
}

fn audited_flag(wc: &WordComplex, r: usize) -> Result<FlagData> {
    let r_audit = r.min(wc.n().saturating_sub(2));
    let flag = wc.standard_flag(r_audit)?;
    let audit = audit_quillen_conditions(wc.action(), &flag, r_audit);
    if let Some(c) = audit.conditions.iter().find(|c| !c.passed) {
        return Err(Error::invalid(format!(
            "condition ({}) fails: {}",
            c.id,
            c.witness.as_deref().unwrap_or("no witness")
        )));
    }
    Ok(flag)
}

pub fn e1_page(wc: &WordComplex, r: usize, max_chain_rank: usize) -> Result<E1Page> {
    audited_flag(wc, r)?;
    let columns = (r + 1).min(wc.n() - 1) + 1;
    let flag = wc.standard_flag(columns - 1)?;
    let profiles = flag
        .stabilizers
        .par_iter()
        .map(|s| group_homology_capped(s, r, max_chain_rank))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for (p, prof) in profiles.iter().enumerate() {
        for q in 0..=r {
            entries.push(E1Entry { p, q, m: wc.n() - p - 1, group: prof.group(q) });
        }
    }
    Ok(E1Page {
        family: wc.family(),
        n: wc.n(),
        r,
        columns,
        stabilizers: flag.stabilizers.iter().map(|s| s.summary()).collect(),
        entries,
    })
}

impl E1Page {
    pub fn entry(&self, p: usize, q: usize) -> Option<&AbelianGroup> {
        self.entries.iter().find(|e| e.p == p && e.q == q).map(|e| &e.group)
    }

    /// Text table with the top row `q = r` and `p = 0` leftmost. Arrows
    /// `d¹ : E¹_{p+1,q} → E¹_{p,q}` are labelled from `d1` when given:
    /// `0` for the zero map, `≅` for an isomorphism.
    pub fn render(&self, d1: &[D1Report]) -> String {
        let arrow = |p: usize, q: usize| -> String {
            let step = d1.iter().find(|r| r.q == q).and_then(|r| r.steps.iter().find(|s| s.p == p));
            match step {
                Some(s) if s.differential_zero => " ←0− ".into(),
                Some(s) if s.differential_iso => " ←≅− ".into(),
                _ => " ←── ".into(),
            }
        };
        let cells: Vec<Vec<String>> = (0..=self.r)
            .rev()
            .map(|q| (0..self.columns).map(|p| self.entry(p, q).map(|g| g.to_string()).unwrap_or_default()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns)
            .map(|p| {
                cells
                    .iter()
                    .map(|row| row[p].chars().count())
                    .chain([format!("p={p}").len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = format!(
            "E1 page, {} n={} r={}: entry (p,q) = H_q(G_(n-p-1))\n",
            self.family.name(),
            self.n,
            self.r
        );
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
        let mut header = String::from("     ");
        for (p, w) in widths.iter().enumerate() {
            header.push_str(&pad(&format!("p={p}"), *w));
            if p + 1 < self.columns {
                header.push_str("     ");
            }
        }
        out.push_str(header.trim_end());
        out.push('\n');
        for (row, q) in cells.iter().zip((0..=self.r).rev()) {
            let mut line = format!("q={q:<3}");
            for p in 0..self.columns {
                line.push_str(&pad(&row[p], widths[p]));
                if p + 1 < self.columns {
                    line.push_str(&arrow(p, q));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// One column step `d¹ : E¹_{p+1,q} → E¹_{p,q}`.
#[derive(Clone, Debug, Serialize)]
pub struct D1Step {
    pub p: usize,
    /// `H_q(Stab σ^{p+1}) → H_q(Stab σ^p)` through each face `d_i σ^{p+1}`
    pub face_maps: Vec<AbelianHom>,
    pub faces_agree: bool,
    /// every choice of translation element gave the same face map
    pub choices_agree: bool,
    pub differential: AbelianHom,
    pub differential_zero: bool,
    pub differential_iso: bool,
    pub equals_inclusion: bool,
    /// whether `n − p − 1 > 2q`, where stability demands an isomorphism
    pub iso_expected: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct D1Report {
    pub q: usize,
    pub steps: Vec<D1Step>,
}

impl D1Report {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

/// Face-induced maps on `H_q` for `p ≤ min(r, n − 2)`.
///
/// For each face `τ = d_i σ^{p+1}` the map is the composite of the
/// inclusion `Stab σ^{p+1} ⊂ Stab τ` with conjugation `h ↦ g h g⁻¹` by an
/// element `g` carrying `τ` to `σ^p`. For `q ≤ 1` every such `g` is tried.
pub fn d1_pattern_check(wc: &WordComplex, r: usize, q: usize, max_chain_rank: usize) -> Result<D1Report> {
    audited_flag(wc, r)?;
    let p_max = r.min(wc.n().saturating_sub(2));
    let flag = wc.standard_flag((p_max + 1).min(wc.n() - 1))?;
    let action = wc.action();
    let x = wc.complex();
    let group = action.group();
    let homs = flag
        .stabilizers
        .par_iter()
        .map(|s| BarHomology::new(s, q, max_chain_rank))
        .collect::<Result<Vec<_>>>()?;
    let steps = (0..=p_max)
        .into_par_iter()
        .map(|p| -> Result<D1Step> {
            let rho = flag.simplices[p + 1];
            let sigma = flag.simplices[p];
            let (src, tgt) = (&homs[p + 1], &homs[p]);
            let mut face_maps = Vec::with_capacity(p + 2);
            let mut choices_agree = true;
            for i in 0..=p + 1 {
                let tau = x.face(rho, i);
                let movers: Vec<usize> = (0..group.order()).filter(|&g| action.act(g, tau) == sigma).collect();
                let first = *movers.first().ok_or_else(|| Error::invalid("face not in the orbit of the flag simplex"))?;
                let conj = |g: usize| {
                    let gp = group.element(g).clone();
                    src.map_by(tgt, move |h| gp.conjugate(h))
                };
                let m = conj(first)?.map;
                if q <= 1 {
                    for &g in &movers[1..] {
                        if conj(g)?.map != m {
                            choices_agree = false;
                        }
                    }
                }
                face_maps.push(m);
            }
            let faces_agree = face_maps.windows(2).all(|w| w[0] == w[1]);
            let mut differential = AbelianHom::zero(src.homology().clone(), tgt.homology().clone());
            for (i, f) in face_maps.iter().enumerate() {
                differential = if i % 2 == 0 { differential.add(f)? } else { differential.sub(f)? };
            }
            let inclusion = src.map_by(tgt, Clone::clone)?.map;
            let differential_zero = differential.is_zero();
            let differential_iso = differential.is_iso();
            let equals_inclusion = differential == inclusion;
            let iso_expected = p % 2 == 1 && wc.n() - p - 1 > 2 * q;
            let shape_ok = if p % 2 == 0 { differential_zero } else { equals_inclusion };
            let passed = faces_agree && choices_agree && shape_ok && (!iso_expected || differential_iso);
            Ok(D1Step {
                p,
                face_maps,
                faces_agree,
                choices_agree,
                differential,
                differential_zero,
                differential_iso,
                equals_inclusion,
                iso_expected,
                passed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(D1Report { q, steps })
}
