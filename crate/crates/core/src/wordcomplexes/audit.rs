use rayon::prelude::*;
use serde::Serialize;

use super::FlagData;
use crate::complexes::Simplex;
use crate::error::{Error, Result};
use crate::groups::SimplicialAction;

/// Outcome of one of the five hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuillenAudit {
    pub r: usize,
    pub conditions: Vec<ConditionCheck>,
}

impl QuillenAudit {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// An element `g` with `g(τ1) = τ2` commuting with all of `Stab(ρ)`, found
/// by exhaustive search in element order.
pub fn translation_element(action: &SimplicialAction, tau1: Simplex, tau2: Simplex, rho: Simplex) -> Result<Option<usize>> {
    let x = action.complex();
    for tau in [tau1, tau2] {
        if tau.dim + 1 != rho.dim || !(0..=rho.dim).any(|j| x.face(rho, j) == tau) {
            return Err(Error::invalid(format!("{tau:?} is not a codimension-one face of {rho:?}")));
        }
    }
    Ok(search_translation(action, tau1, tau2, rho))
}

fn search_translation(action: &SimplicialAction, tau1: Simplex, tau2: Simplex, rho: Simplex) -> Option<usize> {
    let stab = action.stabilizer(rho);
    let g = action.group();
    (0..g.order()).find(|&i| action.act(i, tau1) == tau2 && stab.commutes_with_all(g.element(i)))
}

/// Checks the five hypotheses for the action and flag up to dimension `r`.
///
/// (ii) is homological: reduced homology must vanish in degrees `≤ r`.
/// (v) is checked for every `(i+1)`-simplex `ρ` with `i < r` and every
/// ordered pair of its `i`-faces.
pub fn audit_quillen_conditions(action: &SimplicialAction, flag: &FlagData, r: usize) -> QuillenAudit {
    let x = action.complex();
    let g = action.group();
    let mut conditions = Vec::new();

    let witness = action.inversion_witness().map(|(s, e)| {
        format!("{} leaves simplex {:?} invariant without fixing it", g.element(e).display_with(g.labels()), action.tuple(s))
    });
    conditions.push(ConditionCheck { id: "i", name: "without inversions", passed: witness.is_none(), witness });

    let witness = match x.reduced_homology_up_to(r) {
        Ok(h) => (0..=r)
            .find(|&d| !h.group(d).is_trivial())
            .map(|d| format!("reduced H_{d} = {}", h.group(d))),
        Err(e) => Some(e.to_string()),
    };
    conditions.push(ConditionCheck { id: "ii", name: "r-connected", passed: witness.is_none(), witness });

    let witness = (0..=r).find_map(|p| {
        let k = action.orbits(p).len();
        (k != 1).then(|| format!("{k} orbits of {p}-simplices"))
    });
    conditions.push(ConditionCheck { id: "iii", name: "one orbit per dimension", passed: witness.is_none(), witness });

    let witness = if flag.len() <= r {
        Some(format!("flag has {} simplices, {} needed", flag.len(), r + 1))
    } else if !flag.is_chain(x) {
        Some("flag simplices are not nested".into())
    } else {
        flag.stabilizers_standard().iter().take(r + 1).position(|ok| !ok).map(|i| {
            format!(
                "Stab(σ^{i}) has order {} but G_{} has order {}",
                flag.stabilizers[i].order(),
                flag.n - i - 1,
                flag.standard[i].order()
            )
        })
    };
    conditions.push(ConditionCheck { id: "iv", name: "standard flag stabilizers", passed: witness.is_none(), witness });

    let mut jobs = Vec::new();
    for i in 0..r {
        for rho in 0..x.count(i + 1) {
            jobs.push(Simplex::new(i + 1, rho));
        }
    }
    let witness = jobs
        .par_iter()
        .map(|&rho| {
            for a in 0..=rho.dim {
                for b in 0..=rho.dim {
                    let (t1, t2) = (x.face(rho, a), x.face(rho, b));
                    if search_translation(action, t1, t2, rho).is_none() {
                        return Some(format!(
                            "no g moves face {:?} to {:?} of {:?} while centralizing its stabilizer",
                            action.tuple(t1),
                            action.tuple(t2),
                            action.tuple(rho)
                        ));
                    }
                }
            }
            None
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();
    conditions.push(ConditionCheck { id: "v", name: "translation elements", passed: witness.is_none(), witness });

    QuillenAudit { r, conditions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordcomplexes::{injective_words_complex, signed_injective_words_complex};

    #[test]
    fn trivial_translation() {
        let x = injective_words_complex(3).unwrap();
        let rho = x.simplex_of_word(&[1, 2]).unwrap();
        let tau = x.simplex_of_word(&[2]).unwrap();
        assert_eq!(translation_element(x.action(), tau, tau, rho).unwrap(), Some(0));
        assert!(translation_element(x.action(), rho, tau, rho).is_err());
    }

    #[test]
    fn translation_in_x3() {
        let x = injective_words_complex(3).unwrap();
        let rho = x.simplex_of_word(&[1, 2, 3]).unwrap();
        let t1 = x.simplex_of_word(&[2, 3]).unwrap();
        let t2 = x.simplex_of_word(&[1, 3]).unwrap();
        let g = translation_element(x.action(), t1, t2, rho).unwrap().unwrap();
        let perm = x.action().group().element(g);
        assert_eq!(perm.cycles(), vec![vec![0, 1]]);
    }

    #[test]
    fn translation_in_x5() {
        let x = injective_words_complex(5).unwrap();
        let rho = x.simplex_of_word(&[5, 4]).unwrap();
        let t1 = x.simplex_of_word(&[5]).unwrap();
        let t2 = x.simplex_of_word(&[4]).unwrap();
        assert_eq!(x.action().stabilizer(rho).order(), 6);
        let g = translation_element(x.action(), t1, t2, rho).unwrap().unwrap();
        assert_eq!(x.action().group().element(g).cycles(), vec![vec![3, 4]]);
    }

    #[test]
    fn audits() {
        let x = injective_words_complex(4).unwrap();
        let a = audit_quillen_conditions(x.action(), &x.standard_flag(2).unwrap(), 2);
        assert!(a.all_pass(), "{a:?}");
        let s = signed_injective_words_complex(3).unwrap();
        let a = audit_quillen_conditions(s.action(), &s.standard_flag(1).unwrap(), 1);
        assert!(a.all_pass(), "{a:?}");
        let x3 = injective_words_complex(3).unwrap();
        let a = audit_quillen_conditions(x3.action(), &x3.standard_flag(2).unwrap(), 3);
        assert!(!a.condition("ii").unwrap().passed);
    }
}
