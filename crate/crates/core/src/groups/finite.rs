use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::perm::Perm;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 10_000;

/// A finite group of permutations, stored by full enumeration.
///
/// Elements are sorted by image list, so the identity is always element 0.
#[derive(Clone, Debug)]
pub struct FinitePermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    labels: Vec<String>,
}

impl PartialEq for FinitePermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FinitePermGroup {}

/// Generator lists in label form, used by reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
}

impl FinitePermGroup {
    /// Closure of `generators`, failing once more than `max_order` elements appear.
    pub fn generate(degree: usize, generators: Vec<Perm>, max_order: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!("generator of degree {} in a group of degree {degree}", g.degree())));
        }
        let generators: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    if seen.len() >= max_order {
                        return Err(Error::cap("group order", seen.len() + 1, max_order));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_keys().collect();
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(FinitePermGroup { degree, generators, elements, index, labels: default_labels(degree) })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, Vec::new(), 1).expect("trivial group")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.degree {
            return Err(Error::invalid(format!("{} labels for {} points", labels.len(), self.degree)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// Full multiplication table, `table[i * order + j] = i * j`.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                t.push(self.index[&a.compose(b)] as u32);
            }
        }
        t
    }

    pub fn is_subgroup_of(&self, other: &FinitePermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<FinitePermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::invalid(format!("{} is not in the group", g.display_with(&self.labels))));
        }
        let h = Self::generate(self.degree, gens, self.order())?;
        Ok(h.with_labels(self.labels.clone()).expect("same degree"))
    }

    /// The subgroup of elements satisfying `keep`, which must be closed
    /// under multiplication. A small generating set is chosen greedily in
    /// element order.
    pub fn filter_subgroup(&self, keep: impl Fn(&Perm) -> bool) -> FinitePermGroup {
        let members: Vec<&Perm> = self.elements.iter().filter(|p| keep(p)).collect();
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = Self::trivial(self.degree);
        for p in members.iter().copied() {
            if current.order() == members.len() {
                break;
            }
            if !current.contains(p) {
                gens.push(p.clone());
                current = Self::generate(self.degree, gens.clone(), self.order()).expect("within parent order");
            }
        }
        debug_assert_eq!(current.order(), members.len(), "filtered set is not a subgroup");
        current.with_labels(self.labels.clone()).expect("same degree")
    }

    /// Image under the injection of ground sets `point_map` into
    /// `{0, …, degree − 1}`; points outside the image are fixed.
    pub fn embed(&self, degree: usize, point_map: &[usize]) -> Result<FinitePermGroup> {
        if point_map.len() != self.degree {
            return Err(Error::invalid("point map must cover the ground set"));
        }
        let mut used = vec![false; degree];
        for &x in point_map {
            if x >= degree || used[x] {
                return Err(Error::invalid("point map is not an injection into the new ground set"));
            }
            used[x] = true;
        }
        let gens = self.generators.iter().map(|g| embed_perm(g, degree, point_map)).collect();
        Self::generate(degree, gens, self.order())
    }

    /// Centralizer test: does `g` commute with every element?
    pub fn commutes_with_all(&self, g: &Perm) -> bool {
        self.generators.iter().all(|h| g.compose(h) == h.compose(g))
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            degree: self.degree,
            order: self.order(),
            generators: self.generators.iter().map(|g| g.display_with(&self.labels)).collect(),
        }
    }

    pub fn is_normal_in(&self, other: &FinitePermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|h| self.contains(&g.conjugate(h))))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

pub(crate) fn embed_perm(g: &Perm, degree: usize, point_map: &[usize]) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (x, &y) in point_map.iter().enumerate() {
        images[y] = point_map[g.apply(x)] as u32;
    }
    Perm::from_images(images).expect("embedding of a permutation")
}

fn default_labels(degree: usize) -> Vec<String> {
    (1..=degree).map(|i| i.to_string()).collect()
}

/// `A × B` acting on the disjoint union, `A`'s points first.
pub fn direct_product(a: &FinitePermGroup, b: &FinitePermGroup) -> Result<FinitePermGroup> {
    let degree = a.degree + b.degree;
    let order = a.order().saturating_mul(b.order());
    if order > DEFAULT_MAX_ORDER {
        return Err(Error::cap("group order", order, DEFAULT_MAX_ORDER));
    }
    let left: Vec<usize> = (0..a.degree).collect();
    let right: Vec<usize> = (a.degree..degree).collect();
    let mut gens: Vec<Perm> = a.generators.iter().map(|g| embed_perm(g, degree, &left)).collect();
    gens.extend(b.generators.iter().map(|g| embed_perm(g, degree, &right)));
    let mut labels: Vec<String> = a.labels.clone();
    labels.extend(b.labels.iter().map(|l| format!("{l}'")));
    FinitePermGroup::generate(degree, gens, order)?.with_labels(labels)
}
