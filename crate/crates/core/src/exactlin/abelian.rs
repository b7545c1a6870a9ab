//! Finitely generated abelian groups in invariant-factor form and
//! homomorphisms between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense::{self, Track};
use crate::error::{Error, Result};

/// `ℤ^free_rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` with `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_ints", deserialize_with = "de_ints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `ℤ^free ⊕ ⊕ ℤ/orders[i]`, normalized to invariant factors.
    /// Orders of 0 count as free summands, orders of ±1 vanish.
    pub fn from_cyclic(free: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        let n = finite.len();
        let mut m = dense::zeros(n, n);
        for (i, o) in finite.into_iter().enumerate() {
            m[i][i] = o;
        }
        let snf = dense::smith(m, n, Track::NONE);
        let torsion = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic(0, [BigInt::from(order)])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the invariant-factor basis.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of a generator: 0 for free generators.
    fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    fn cyclic_orders(&self) -> impl Iterator<Item = BigInt> + '_ {
        (0..self.generator_count()).map(|i| self.generator_order(i))
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        Self::from_cyclic(0, self.cyclic_orders().chain(other.cyclic_orders()))
    }

    pub fn tensor(&self, other: &AbelianGroup) -> AbelianGroup {
        // ℤ/a ⊗ ℤ/b = ℤ/gcd(a, b), with 0 standing for ℤ
        let mut orders = Vec::new();
        for a in self.cyclic_orders() {
            for b in other.cyclic_orders() {
                orders.push(a.gcd(&b));
            }
        }
        Self::from_cyclic(0, orders)
    }

    pub fn tor(&self, other: &AbelianGroup) -> AbelianGroup {
        // Tor(ℤ/a, ℤ/b) = ℤ/gcd(a, b); anything involving ℤ vanishes
        let mut orders = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_cyclic(0, orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

pub(crate) fn de_ints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(i64),
        Str(String),
    }
    let raw: Vec<Repr> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|r| match r {
            Repr::Num(n) => Ok(BigInt::from(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        })
        .collect()
}

/// Homomorphism between groups given in invariant-factor form.
///
/// `matrix[i][j]` is the `i`-th target coordinate of the image of the `j`-th
/// source generator (free generators first, then torsion). Torsion rows are
/// kept reduced modulo their order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianHom {
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Vec<Vec<BigInt>>,
}

fn ser_matrix<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Row<'a>(&'a [BigInt]);
    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_ints(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for r in m {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

impl AbelianHom {
    /// Builds from image columns (one per source generator, each a full
    /// target coordinate vector), reducing torsion coordinates.
    pub fn from_columns(source: AbelianGroup, target: AbelianGroup, cols: Vec<Vec<BigInt>>) -> Result<Self> {
        if cols.len() != source.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} image columns for a source with {} generators",
                cols.len(),
                source.generator_count()
            )));
        }
        let rows = target.generator_count();
        let mut matrix = dense::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch("image column has wrong length".into()));
            }
            for (i, x) in col.into_iter().enumerate() {
                matrix[i][j] = x;
            }
        }
        let mut h = AbelianHom { source, target, matrix };
        h.reduce();
        if !h.is_well_defined() {
            return Err(Error::invalid("matrix does not respect the torsion relations"));
        }
        Ok(h)
    }

    pub fn zero(source: AbelianGroup, target: AbelianGroup) -> Self {
        let matrix = dense::zeros(target.generator_count(), source.generator_count());
        AbelianHom { source, target, matrix }
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        AbelianHom { source: g.clone(), target: g.clone(), matrix: dense::identity(g.generator_count()) }
    }

    fn reduce(&mut self) {
        for (i, row) in self.matrix.iter_mut().enumerate() {
            let d = self.target.generator_order(i);
            if !d.is_zero() {
                for x in row.iter_mut() {
                    *x = x.mod_floor(&d);
                }
            }
        }
    }

    /// A torsion generator of order `d` must land in the `d`-torsion.
    fn is_well_defined(&self) -> bool {
        for j in 0..self.source.generator_count() {
            let d = self.source.generator_order(j);
            if d.is_zero() {
                continue;
            }
            for i in 0..self.target.generator_count() {
                let e = self.target.generator_order(i);
                let x = &self.matrix[i][j] * &d;
                let ok = if e.is_zero() { x.is_zero() } else { x.is_multiple_of(&e) };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbelianHom) -> Result<AbelianHom> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composing maps with mismatched groups".into()));
        }
        let m = if self.matrix.is_empty() || other.matrix.is_empty() {
            dense::zeros(self.target.generator_count(), other.source.generator_count())
        } else {
            dense::mat_mul(&self.matrix, &other.matrix)
        };
        let mut h = AbelianHom { source: other.source.clone(), target: self.target.clone(), matrix: m };
        h.reduce();
        Ok(h)
    }

    fn combine(&self, other: &AbelianHom, sign: i64) -> Result<AbelianHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("adding maps between different groups".into()));
        }
        let s = BigInt::from(sign);
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + &s * y).collect())
            .collect();
        let mut h = AbelianHom { source: self.source.clone(), target: self.target.clone(), matrix };
        h.reduce();
        Ok(h)
    }

    pub fn add(&self, other: &AbelianHom) -> Result<AbelianHom> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &AbelianHom) -> Result<AbelianHom> {
        self.combine(other, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    /// `[Φ | R_target]`: images together with the target relations.
    fn augmented(&self) -> (Vec<Vec<BigInt>>, usize) {
        let b = self.target.generator_count();
        let a = self.source.generator_count();
        let t = self.target.torsion.len();
        let mut m = dense::zeros(b, a + t);
        for i in 0..b {
            for j in 0..a {
                m[i][j] = self.matrix[i][j].clone();
            }
        }
        for (k, d) in self.target.torsion.iter().enumerate() {
            m[self.target.free_rank + k][a + k] = d.clone();
        }
        (m, a + t)
    }

    pub fn is_surjective(&self) -> bool {
        let b = self.target.generator_count();
        if b == 0 {
            return true;
        }
        let (m, cols) = self.augmented();
        let snf = dense::smith(m, cols, Track::NONE);
        snf.diagonal.len() == b && snf.diagonal.iter().all(One::is_one)
    }

    pub fn is_injective(&self) -> bool {
        let a = self.source.generator_count();
        if a == 0 {
            return true;
        }
        let (m, cols) = self.augmented();
        let snf = dense::smith(m, cols, Track { right: true, ..Track::NONE });
        let v = snf.right.expect("tracked");
        let rank = snf.diagonal.len();
        // kernel of [Φ | R]: columns rank.. of V
        for j in rank..cols {
            for i in 0..a {
                let x = &v[i][j];
                let d = self.source.generator_order(i);
                let in_relations = if d.is_zero() { x.is_zero() } else { x.is_multiple_of(&d) };
                if !in_relations {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn verdict(&self) -> MapVerdict {
        let injective = self.is_injective();
        let surjective = self.is_surjective();
        MapVerdict { injective, surjective, iso: injective && surjective }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapVerdict {
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}
