use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite graph with a basepoint, stored through its half-edges.
///
/// Half-edge `h` sits at vertex `vertex[h]` and is glued to `pairing[h]`;
/// loops and parallel edges need no special treatment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasedGraph {
    pairing: Vec<usize>,
    vertex: Vec<usize>,
    vertex_count: usize,
    basepoint: usize,
}

/// Why a graph fails to be a vertex of the spine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Disconnected,
    SeparatingEdge { edge: usize },
    BasepointValence { valence: usize },
    LowValence { vertex: usize, valence: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected => write!(f, "graph is disconnected"),
            Violation::SeparatingEdge { edge } => write!(f, "edge {edge} separates the graph"),
            Violation::BasepointValence { valence } => write!(f, "basepoint has valence {valence} < 2"),
            Violation::LowValence { vertex, valence } => write!(f, "vertex {vertex} has valence {valence} < 3"),
        }
    }
}

impl BasedGraph {
    /// Structural checks only; use [`BasedGraph::violation`] for the spine
    /// conditions.
    pub fn from_half_edges(pairing: Vec<usize>, vertex: Vec<usize>, vertex_count: usize, basepoint: usize) -> Result<Self> {
        if pairing.len() != vertex.len() {
            return Err(Error::DimensionMismatch("pairing and vertex assignment differ in length".into()));
        }
        for (h, &p) in pairing.iter().enumerate() {
            if p >= pairing.len() || p == h || pairing[p] != h {
                return Err(Error::invalid(format!("half-edge {h} is not properly paired")));
            }
        }
        if let Some(h) = vertex.iter().position(|&v| v >= vertex_count) {
            return Err(Error::invalid(format!("half-edge {h} sits at a missing vertex")));
        }
        if basepoint >= vertex_count {
            return Err(Error::invalid("basepoint is not a vertex"));
        }
        Ok(BasedGraph { pairing, vertex, vertex_count, basepoint })
    }

    /// A spine vertex: structurally sound and without violations.
    pub fn new(pairing: Vec<usize>, vertex: Vec<usize>, vertex_count: usize, basepoint: usize) -> Result<Self> {
        let g = Self::from_half_edges(pairing, vertex, vertex_count, basepoint)?;
        match g.violation() {
            Some(v) => Err(Error::invalid(v.to_string())),
            None => Ok(g),
        }
    }

    /// Builds the graph whose symmetric multiplicity matrix is `m`
    /// (`m[v][v]` counts loops at `v`), based at vertex 0. Loops come first
    /// in vertex order, then edges `u < v` in lexicographic order; edge `e`
    /// owns half-edges `2e` (at the smaller endpoint) and `2e + 1`.
    pub fn from_multiplicities(m: &[Vec<usize>]) -> Self {
        let n = m.len();
        let mut ends = Vec::new();
        for v in 0..n {
            ends.extend(std::iter::repeat_n((v, v), m[v][v]));
        }
        for u in 0..n {
            for v in u + 1..n {
                ends.extend(std::iter::repeat_n((u, v), m[u][v]));
            }
        }
        let vertex = ends.iter().flat_map(|&(u, v)| [u, v]).collect();
        let pairing = (0..2 * ends.len()).map(|h| h ^ 1).collect();
        BasedGraph { pairing, vertex, vertex_count: n.max(1), basepoint: 0 }
    }

    /// The point: one vertex, no edges. Not a spine vertex, but it is the
    /// complement of the loops in a rose.
    pub fn point() -> Self {
        BasedGraph { pairing: Vec::new(), vertex: Vec::new(), vertex_count: 1, basepoint: 0 }
    }

    /// `R_m`: `m` loops at the basepoint.
    pub fn rose(m: usize) -> Self {
        Self::from_multiplicities(&[vec![m]])
    }

    /// Two vertices joined by three edges, based at one of them.
    pub fn theta() -> Self {
        Self::from_multiplicities(&[vec![0, 3], vec![3, 0]])
    }

    /// Identifies the basepoints of `self` and `other`.
    pub fn wedge(&self, other: &BasedGraph) -> BasedGraph {
        let shift = self.pairing.len();
        let relabel = |v: usize| match v {
            v if v == other.basepoint => self.basepoint,
            v if v < other.basepoint => self.vertex_count + v,
            v => self.vertex_count + v - 1,
        };
        let mut pairing = self.pairing.clone();
        pairing.extend(other.pairing.iter().map(|&p| p + shift));
        let mut vertex = self.vertex.clone();
        vertex.extend(other.vertex.iter().map(|&v| relabel(v)));
        BasedGraph { pairing, vertex, vertex_count: self.vertex_count + other.vertex_count - 1, basepoint: self.basepoint }
    }

    /// `Γ ∨ S¹`: one more loop at the basepoint, on the two new last
    /// half-edges.
    pub fn wedge_loop(&self) -> BasedGraph {
        self.wedge(&BasedGraph::rose(1))
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn vertex_of(&self) -> &[usize] {
        &self.vertex
    }

    pub fn half_edge_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Edges as `(h, pairing[h])` with `h` the smaller half-edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.pairing.len()).filter(|&h| h < self.pairing[h]).map(|h| (h, self.pairing[h])).collect()
    }

    pub fn is_loop(&self, edge: (usize, usize)) -> bool {
        self.vertex[edge.0] == self.vertex[edge.1]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex.iter().filter(|&&w| w == v).count()
    }

    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    /// `Σ_{v ≠ v₀} (|v| − 2)`.
    pub fn degree(&self) -> usize {
        (0..self.vertex_count)
            .filter(|&v| v != self.basepoint)
            .map(|v| self.valence(v).saturating_sub(2))
            .sum()
    }

    pub fn loops_at_basepoint(&self) -> usize {
        self.edges()
            .iter()
            .filter(|&&(a, b)| self.vertex[a] == self.basepoint && self.vertex[b] == self.basepoint)
            .count()
    }

    pub fn is_point(&self) -> bool {
        self.pairing.is_empty() && self.vertex_count == 1
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut components = self.vertex_count;
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            if Some(e) == skip {
                continue;
            }
            let (x, y) = (find(&mut parent, self.vertex[a]), find(&mut parent, self.vertex[b]));
            if x != y {
                parent[x] = y;
                components -= 1;
            }
        }
        components == 1
    }

    /// First failed spine condition, if any.
    pub fn violation(&self) -> Option<Violation> {
        if !self.connected_without(None) {
            return Some(Violation::Disconnected);
        }
        let b = self.valence(self.basepoint);
        if b < 2 {
            return Some(Violation::BasepointValence { valence: b });
        }
        if let Some(v) = (0..self.vertex_count).find(|&v| v != self.basepoint && self.valence(v) < 3) {
            return Some(Violation::LowValence { vertex: v, valence: self.valence(v) });
        }
        let edges = self.edges();
        (0..edges.len())
            .find(|&e| !self.is_loop(edges[e]) && !self.connected_without(Some(e)))
            .map(|edge| Violation::SeparatingEdge { edge })
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// Symmetric multiplicity matrix; loops on the diagonal.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.vertex_count]; self.vertex_count];
        for (a, b) in self.edges() {
            let (u, v) = (self.vertex[a], self.vertex[b]);
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    }

    /// Vertex orders with the basepoint first that give the
    /// lexicographically least upper triangle, and that triangle.
    pub(crate) fn canonical_orders(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let m = self.multiplicities();
        let others: Vec<usize> = (0..self.vertex_count).filter(|&v| v != self.basepoint).collect();
        let key = |order: &[usize]| -> Vec<usize> {
            let mut k = Vec::with_capacity(order.len() * (order.len() + 1) / 2);
            for i in 0..order.len() {
                for j in i..order.len() {
                    k.push(m[order[i]][order[j]]);
                }
            }
            k
        };
        // refine by (valence, loop count) so only ties are permuted
        let sig = |v: usize| (self.valence(v), m[v][v]);
        let groups: Vec<Vec<usize>> = others
            .iter()
            .copied()
            .sorted_by_key(|&v| sig(v))
            .chunk_by(|&v| sig(v))
            .into_iter()
            .map(|(_, g)| g.collect())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        let mut orders = Vec::new();
        let per_group = groups.iter().map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>());
        for choice in per_group.multi_cartesian_product() {
            let mut order = vec![self.basepoint];
            order.extend(choice.into_iter().flatten());
            let k = key(&order);
            match &best {
                Some(b) if k > *b => {}
                Some(b) if k == *b => orders.push(order),
                _ => {
                    best = Some(k);
                    orders = vec![order];
                }
            }
        }
        if orders.is_empty() {
            orders.push(vec![self.basepoint]);
        }
        let canon = orders[0].iter().map(|&u| orders[0].iter().map(|&v| m[u][v]).collect()).collect();
        (orders, canon)
    }

    /// Isomorphism invariant: equal exactly for basepoint-preserving
    /// isomorphic graphs.
    pub fn certificate(&self) -> String {
        let (_, canon) = self.canonical_orders();
        let n = canon.len();
        let entries = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| canon[i][j].to_string()).join(",");
        format!("v{n}:{entries}")
    }

    /// The graph rebuilt from its canonical multiplicity matrix.
    pub fn canonical(&self) -> BasedGraph {
        let (_, canon) = self.canonical_orders();
        BasedGraph::from_multiplicities(&canon)
    }

    /// `(Γ₀, m)` with `Γ = Γ₀ ∨ R_m` and `m` maximal; `Γ₀` is the point for
    /// a rose. Also returns, for each half-edge of `Γ₀`, its half-edge in `Γ`.
    pub fn max_rose_decomposition_with_map(&self) -> (BasedGraph, usize, Vec<usize>) {
        let at_base_loop = |h: usize| self.vertex[h] == self.basepoint && self.vertex[self.pairing[h]] == self.basepoint;
        let keep: Vec<usize> = (0..self.pairing.len()).filter(|&h| !at_base_loop(h)).collect();
        let m = (self.pairing.len() - keep.len()) / 2;
        let mut new_half = vec![usize::MAX; self.pairing.len()];
        for (i, &h) in keep.iter().enumerate() {
            new_half[h] = i;
        }
        let used: Vec<usize> = (0..self.vertex_count)
            .filter(|&v| v == self.basepoint || keep.iter().any(|&h| self.vertex[h] == v))
            .collect();
        let new_vertex = |v: usize| used.iter().position(|&u| u == v).expect("used");
        let g0 = BasedGraph {
            pairing: keep.iter().map(|&h| new_half[self.pairing[h]]).collect(),
            vertex: keep.iter().map(|&h| new_vertex(self.vertex[h])).collect(),
            vertex_count: used.len(),
            basepoint: new_vertex(self.basepoint),
        };
        (g0, m, keep)
    }

    pub fn max_rose_decomposition(&self) -> (BasedGraph, usize) {
        let (g0, m, _) = self.max_rose_decomposition_with_map();
        (g0, m)
    }

    /// Short human name: `R_m`, `θ`, `R_m∨θ`, else the certificate.
    pub fn name(&self) -> String {
        let (g0, m) = self.max_rose_decomposition();
        let core = if g0.is_point() {
            None
        } else if g0.certificate() == BasedGraph::theta().certificate() {
            Some("θ".to_string())
        } else {
            Some(format!("[{}]", g0.certificate()))
        };
        match (m, core) {
            (m, None) => format!("R_{m}"),
            (0, Some(c)) => c,
            (m, Some(c)) => format!("R_{m}∨{c}"),
        }
    }
}

/// Line format:
///
/// ```text
/// basedgraph 1
/// vertices 2
/// basepoint 0
/// pairs 0:1 2:3 4:5
/// at 0 1 0 1 0 1
/// end
/// ```
pub fn graph_to_text(g: &BasedGraph) -> String {
    let pairs = g.edges().iter().map(|(a, b)| format!("{a}:{b}")).join(" ");
    let at = g.vertex.iter().join(" ");
    format!(
        "basedgraph 1\nvertices {}\nbasepoint {}\npairs {}\nat {}\nend\n",
        g.vertex_count, g.basepoint, pairs, at
    )
    .replace(" \n", "\n")
}

pub fn graph_from_text(text: &str) -> Result<BasedGraph> {
    let mut vertices = None;
    let mut basepoint = None;
    let mut pairs: Option<Vec<(usize, usize)>> = None;
    let mut at: Option<Vec<usize>> = None;
    let mut seen_header = false;
    let mut ended = false;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(err("content after end".into()));
        }
        let mut words = line.split_whitespace();
        let key = words.next().expect("nonempty");
        let rest: Vec<&str> = words.collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("expected a number, got {s:?}")));
        if !seen_header {
            if key != "basedgraph" || rest != ["1"] {
                return Err(err("expected header `basedgraph 1`".into()));
            }
            seen_header = true;
            continue;
        }
        match key {
            "vertices" if rest.len() == 1 => vertices = Some(num(rest[0])?),
            "basepoint" if rest.len() == 1 => basepoint = Some(num(rest[0])?),
            "pairs" => {
                pairs = Some(
                    rest.iter()
                        .map(|p| {
                            let (a, b) = p.split_once(':').ok_or_else(|| err(format!("expected a:b, got {p:?}")))?;
                            Ok((num(a)?, num(b)?))
                        })
                        .collect::<Result<_>>()?,
                )
            }
            "at" => at = Some(rest.iter().map(|s| num(s)).collect::<Result<_>>()?),
            "end" if rest.is_empty() => ended = true,
            _ => return Err(err(format!("unexpected line {line:?}"))),
        }
    }
    let last = text.lines().count().max(1);
    let missing = |what: &str| Error::Parse { line: last, message: format!("missing `{what}` line") };
    if !ended {
        return Err(missing("end"));
    }
    let vertex = at.ok_or_else(|| missing("at"))?;
    let mut pairing = vec![usize::MAX; vertex.len()];
    for (a, b) in pairs.ok_or_else(|| missing("pairs"))? {
        if a >= pairing.len() || b >= pairing.len() || pairing[a] != usize::MAX || pairing[b] != usize::MAX {
            return Err(Error::Parse { line: last, message: format!("bad pair {a}:{b}") });
        }
        pairing[a] = b;
        pairing[b] = a;
    }
    BasedGraph::from_half_edges(
        pairing,
        vertex,
        vertices.ok_or_else(|| missing("vertices"))?,
        basepoint.ok_or_else(|| missing("basepoint"))?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_basic_graphs() {
        let r3 = BasedGraph::rose(3);
        assert_eq!((r3.rank(), r3.degree(), r3.loops_at_basepoint()), (3, 0, 3));
        let th = BasedGraph::theta();
        assert_eq!((th.rank(), th.degree(), th.loops_at_basepoint()), (2, 1, 0));
        assert!(th.is_valid() && r3.is_valid());
        let w = th.wedge_loop();
        assert_eq!((w.rank(), w.degree(), w.loops_at_basepoint()), (3, 1, 1));
        assert_eq!(w.name(), "R_1∨θ");
        // a double edge to a vertex carrying a loop: valence 4
        let g = BasedGraph::from_multiplicities(&[vec![0, 2], vec![2, 1]]);
        assert_eq!((g.rank(), g.degree()), (2, 2));
        assert!(g.is_valid());
    }

    #[test]
    fn violations() {
        let bridge = BasedGraph::from_multiplicities(&[vec![1, 1], vec![1, 1]]);
        assert!(matches!(bridge.violation(), Some(Violation::SeparatingEdge { .. })));
        let low = BasedGraph::from_multiplicities(&[vec![0, 2], vec![2, 0]]);
        assert_eq!(low.violation(), Some(Violation::LowValence { vertex: 1, valence: 2 }));
        assert_eq!(BasedGraph::rose(0).violation(), Some(Violation::BasepointValence { valence: 0 }));
        let apart = BasedGraph::from_multiplicities(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(apart.violation(), Some(Violation::Disconnected));
    }

    #[test]
    fn certificates_see_through_relabelling() {
        let a = BasedGraph::theta().wedge(&BasedGraph::rose(1));
        let b = BasedGraph::rose(1).wedge(&BasedGraph::theta());
        assert_ne!(a, b);
        assert_eq!(a.certificate(), b.certificate());
        assert_ne!(a.certificate(), BasedGraph::rose(3).certificate());
        // moving the basepoint changes the class
        let g = BasedGraph::from_multiplicities(&[vec![0, 2], vec![2, 1]]);
        let h = BasedGraph::from_multiplicities(&[vec![1, 2], vec![2, 0]]);
        assert_ne!(g.certificate(), h.certificate());
    }

    #[test]
    fn decomposition() {
        let (g0, m) = BasedGraph::rose(4).max_rose_decomposition();
        assert!(g0.is_point() && m == 4);
        let (g0, m) = BasedGraph::theta().wedge_loop().max_rose_decomposition();
        assert_eq!((g0.certificate(), m), (BasedGraph::theta().certificate(), 1));
    }

    #[test]
    fn text_round_trip() {
        let g = BasedGraph::theta().wedge_loop();
        let t = graph_to_text(&g);
        assert_eq!(graph_from_text(&t).unwrap(), g);
        assert!(matches!(graph_from_text("basedgraph 2\n"), Err(Error::Parse { line: 1, .. })));
        let bad = t.replace("pairs 0:1", "pairs 0:0");
        assert!(graph_from_text(&bad).is_err());
    }
}
