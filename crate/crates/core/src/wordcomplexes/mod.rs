//! Complexes of injective words and their signed analogues, with the
//! symmetric or hyperoctahedral group acting by relabelling letters.

mod audit;

use serde::Serialize;

pub use audit::{audit_quillen_conditions, translation_element, ConditionCheck, QuillenAudit};

use crate::complexes::{DeltaComplex, Simplex, Subcomplex};
use crate::error::{Error, Result};
use crate::groups::families::{signed_letter, signed_point};
use crate::groups::{signed_symmetric_group, symmetric_group, FinitePermGroup, SimplicialAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Symmetric,
    Signed,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Symmetric => "symmetric",
            Family::Signed => "signed",
        }
    }

    /// `S_n` or `S_n^±`.
    pub fn group(self, n: usize) -> Result<FinitePermGroup> {
        match self {
            Family::Symmetric => symmetric_group(n),
            Family::Signed => signed_symmetric_group(n),
        }
    }

    /// `G_m` sitting inside `G_n` on the letters `±1, …, ±m`.
    pub fn standard_subgroup(self, m: usize, n: usize) -> Result<FinitePermGroup> {
        if m > n {
            return Err(Error::invalid(format!("G_{m} is not a subgroup of G_{n}")));
        }
        let small = self.group(m)?;
        let (degree, map): (usize, Vec<usize>) = match self {
            Family::Symmetric => (n, (0..m).collect()),
            Family::Signed => (
                2 * n,
                (0..2 * m).map(|p| signed_point(n, signed_letter(m, p))).collect(),
            ),
        };
        let g = small.embed(degree, &map)?;
        g.with_labels(self.group(n)?.labels().to_vec())
    }
}

/// The complex of (signed) injective words on `n` letters with its group action.
#[derive(Clone, Debug)]
pub struct WordComplex {
    family: Family,
    n: usize,
    action: SimplicialAction,
}

/// Injective words over `{1, …, n}`; face `d_j` deletes the `j`-th letter.
pub fn injective_words_complex(n: usize) -> Result<WordComplex> {
    WordComplex::build(Family::Symmetric, n)
}

/// Words over `{±1, …, ±n}` with pairwise distinct absolute values.
pub fn signed_injective_words_complex(n: usize) -> Result<WordComplex> {
    WordComplex::build(Family::Signed, n)
}

impl WordComplex {
    pub fn build(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("word complexes need n >= 1"));
        }
        let vertices = match family {
            Family::Symmetric => n,
            Family::Signed => 2 * n,
        };
        let abs = |v: usize| match family {
            Family::Symmetric => v,
            Family::Signed => v % n,
        };
        // dimension 0 is implied by the vertex count
        let mut layers: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut prev: Vec<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for w in &prev {
                for v in 0..vertices {
                    if w.iter().all(|&u| abs(u) != abs(v)) {
                        let mut x = w.clone();
                        x.push(v);
                        next.push(x);
                    }
                }
            }
            layers.push(next.clone());
            prev = next;
        }
        let complex = DeltaComplex::from_vertex_tuples(vertices, layers)?;
        let action = SimplicialAction::new(family.group(n)?, complex)?;
        Ok(WordComplex { family, n, action })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &DeltaComplex {
        self.action.complex()
    }

    pub fn action(&self) -> &SimplicialAction {
        &self.action
    }

    pub fn into_action(self) -> SimplicialAction {
        self.action
    }

    /// Letter of vertex `v`.
    pub fn letter(&self, v: usize) -> i64 {
        match self.family {
            Family::Symmetric => v as i64 + 1,
            Family::Signed => signed_letter(self.n, v),
        }
    }

    pub fn vertex(&self, letter: i64) -> Result<usize> {
        let bad = || Error::invalid(format!("letter {letter} is not a vertex label"));
        match self.family {
            Family::Symmetric if letter >= 1 && letter as usize <= self.n => Ok(letter as usize - 1),
            Family::Signed if letter != 0 && letter.unsigned_abs() as usize <= self.n => Ok(signed_point(self.n, letter)),
            _ => Err(bad()),
        }
    }

    pub fn word(&self, s: Simplex) -> Vec<i64> {
        self.action.tuple(s).iter().map(|&v| self.letter(v)).collect()
    }

    pub fn simplex_of_word(&self, word: &[i64]) -> Result<Simplex> {
        let t = word.iter().map(|&l| self.vertex(l)).collect::<Result<Vec<_>>>()?;
        self.action
            .simplex_of_tuple(&t)
            .ok_or_else(|| Error::invalid(format!("{word:?} is not an injective word")))
    }

    /// Closure of the simplices whose first letter is `i` (`±i` when signed).
    pub fn cover_piece(&self, i: i64) -> Result<Subcomplex> {
        if i <= 0 || i as usize > self.n {
            return Err(Error::invalid(format!("{i} is not a letter of X({})", self.n)));
        }
        let mut starts = vec![self.vertex(i)?];
        if self.family == Family::Signed {
            starts.push(self.vertex(-i)?);
        }
        let x = self.complex();
        let mut gens = Vec::new();
        for p in 0..=x.dim().unwrap_or(0) {
            for idx in 0..x.count(p) {
                let s = Simplex::new(p, idx);
                if starts.contains(&self.action.tuple(s)[0]) {
                    gens.push(s);
                }
            }
        }
        Subcomplex::closure_of(x, &gens)
    }

    /// The pieces for letters `1, …, n`.
    pub fn cover(&self) -> Result<Vec<Subcomplex>> {
        (1..=self.n as i64).map(|i| self.cover_piece(i)).collect()
    }

    /// `σ^i = (n, n−1, …, n−i)` for `i ≤ r`, with stabilizers and the
    /// standard subgroups `G_{n−i−1}` they should equal.
    pub fn standard_flag(&self, r: usize) -> Result<FlagData> {
        if r >= self.n {
            return Err(Error::invalid(format!("flag length {r} exceeds the dimension of X({})", self.n)));
        }
        let mut simplices = Vec::new();
        let mut words = Vec::new();
        let mut stabilizers = Vec::new();
        let mut standard = Vec::new();
        for i in 0..=r {
            let word: Vec<i64> = (0..=i).map(|k| (self.n - k) as i64).collect();
            let s = self.simplex_of_word(&word)?;
            stabilizers.push(self.action.stabilizer(s));
            standard.push(self.family.standard_subgroup(self.n - i - 1, self.n)?);
            simplices.push(s);
            words.push(word);
        }
        Ok(FlagData { family: self.family, n: self.n, simplices, words, stabilizers, standard })
    }
}

/// A flag `σ^0 < σ^1 < … < σ^r` with the stabilizer of each simplex and the
/// subgroup it is expected to equal.
#[derive(Clone, Debug)]
pub struct FlagData {
    pub family: Family,
    pub n: usize,
    pub simplices: Vec<Simplex>,
    pub words: Vec<Vec<i64>>,
    pub stabilizers: Vec<FinitePermGroup>,
    pub standard: Vec<FinitePermGroup>,
}

impl FlagData {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Whether `σ^i` is the last face `d_{i+1}` of `σ^{i+1}` for every `i`.
    pub fn is_chain(&self, x: &DeltaComplex) -> bool {
        self.simplices
            .windows(2)
            .all(|w| (0..=w[1].dim).any(|j| x.face(w[1], j) == w[0]))
    }

    pub fn stabilizers_standard(&self) -> Vec<bool> {
        self.stabilizers.iter().zip(&self.standard).map(|(a, b)| a == b).collect()
    }
}
