//! Machine-word integers that promote to arbitrary precision on overflow.
//!
//! Elimination on boundary matrices almost never leaves the `i64` range, so
//! the common path stays allocation free. Every operation is checked and
//! falls back to `BigInt` instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn normalize(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    /// `true` for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::normalize(-b),
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::normalize(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::normalize(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(p) = a.checked_mul(*b) {
                return Int::Small(p);
            }
        }
        Int::normalize(self.to_big() * other.to_big())
    }

    /// `self - factor * other`, the elimination kernel.
    pub fn sub_mul(&self, factor: &Int, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(f), Int::Small(b)) = (self, factor, other) {
            if let Some(p) = f.checked_mul(*b) {
                if let Some(s) = a.checked_sub(p) {
                    return Int::Small(s);
                }
            }
        }
        Int::normalize(self.to_big() - factor.to_big() * other.to_big())
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<&BigInt> for Int {
    fn from(b: &BigInt) -> Self {
        Int::normalize(b.clone())
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::normalize(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            // normalized: a Big never holds an i64-representable value
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        Int::add(&self, &rhs)
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        Int::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let big = Int::Small(i64::MAX);
        let s = big.add(&Int::ONE);
        assert!(matches!(s, Int::Big(_)));
        assert_eq!(s.to_big(), BigInt::from(i64::MAX) + 1);
        // and comes back down
        assert_eq!(s.sub(&Int::ONE), Int::Small(i64::MAX));
    }

    #[test]
    fn sub_mul_overflow() {
        let a = Int::Small(i64::MIN);
        let r = a.sub_mul(&Int::Small(3), &Int::Small(i64::MAX));
        assert_eq!(r.to_big(), BigInt::from(i64::MIN) - BigInt::from(3) * BigInt::from(i64::MAX));
        assert_eq!(Int::Small(i64::MIN).neg().to_big(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn units() {
        assert!(Int::Small(-1).is_unit());
        assert!(!Int::Small(2).is_unit());
        assert_eq!(Int::Small(-7).cmp_abs(&Int::Small(5)), Ordering::Greater);
    }
}
