//! The symmetric, hyperoctahedral and type-D Weyl groups.
//!
//! Signed groups act on `{±1, …, ±n}` with `+i` stored at point `i − 1`
//! and `−i` at point `n + i − 1`.

use super::finite::FinitePermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Point index of the signed letter `x ∈ {±1, …, ±n}`.
pub fn signed_point(n: usize, x: i64) -> usize {
    assert!(x != 0 && x.unsigned_abs() as usize <= n, "letter {x} out of range");
    if x > 0 {
        x as usize - 1
    } else {
        n + (-x) as usize - 1
    }
}

/// Signed letter stored at point `p`.
pub fn signed_letter(n: usize, p: usize) -> i64 {
    if p < n {
        p as i64 + 1
    } else {
        -((p - n) as i64 + 1)
    }
}

pub fn signed_labels(n: usize) -> Vec<String> {
    (0..2 * n).map(|p| signed_letter(n, p).to_string()).collect()
}

/// The signed permutation with `π(i) = images[i − 1]`, extended by `π(−x) = −π(x)`.
pub fn signed_perm(n: usize, images: &[i64]) -> Result<Perm> {
    if images.len() != n {
        return Err(Error::invalid(format!("{} images for a signed permutation of {n} letters", images.len())));
    }
    if images.iter().any(|&x| x == 0 || x.unsigned_abs() as usize > n) {
        return Err(Error::invalid(format!("{images:?} has letters out of range")));
    }
    let mut out = vec![0u32; 2 * n];
    for (i, &y) in images.iter().enumerate() {
        let x = i as i64 + 1;
        out[signed_point(n, x)] = signed_point(n, y) as u32;
        out[signed_point(n, -x)] = signed_point(n, -y) as u32;
    }
    Perm::from_images(out)
}

/// Signed image list `(π(1), …, π(n))` of an element of a signed group.
pub fn signed_images(n: usize, p: &Perm) -> Vec<i64> {
    (1..=n as i64).map(|x| signed_letter(n, p.apply(signed_point(n, x)))).collect()
}

/// `S_n` on `{1, …, n}`.
pub fn symmetric_group(n: usize) -> Result<FinitePermGroup> {
    let gens = (0..n.saturating_sub(1))
        .map(|i| Perm::from_cycles(n, &[&[i as u32, i as u32 + 1]]).expect("transposition"))
        .collect();
    FinitePermGroup::generate(n, gens, super::finite::DEFAULT_MAX_ORDER)
}

fn adjacent_signed(n: usize) -> Vec<Perm> {
    (1..n)
        .map(|i| {
            let mut images: Vec<i64> = (1..=n as i64).collect();
            images.swap(i - 1, i);
            signed_perm(n, &images).expect("signed transposition")
        })
        .collect()
}

/// `S_n^±`: permutations of `{±1, …, ±n}` commuting with negation.
pub fn signed_symmetric_group(n: usize) -> Result<FinitePermGroup> {
    signed_symmetric_group_capped(n, super::finite::DEFAULT_MAX_ORDER)
}

pub fn signed_symmetric_group_capped(n: usize, max_order: usize) -> Result<FinitePermGroup> {
    let mut gens = adjacent_signed(n);
    if n >= 1 {
        let mut images: Vec<i64> = (1..=n as i64).collect();
        images[0] = -1;
        gens.push(signed_perm(n, &images)?);
    }
    FinitePermGroup::generate(2 * n, gens, max_order)?.with_labels(signed_labels(n))
}

/// Signed permutations with an even number of sign changes.
pub fn weyl_d_group(n: usize) -> Result<FinitePermGroup> {
    if n == 0 {
        return Err(Error::invalid("type D needs n >= 1"));
    }
    let mut gens = adjacent_signed(n);
    if n >= 2 {
        let mut images: Vec<i64> = (1..=n as i64).collect();
        images[0] = -2;
        images[1] = -1;
        gens.push(signed_perm(n, &images)?);
    }
    FinitePermGroup::generate(2 * n, gens, super::finite::DEFAULT_MAX_ORDER)?.with_labels(signed_labels(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn family_orders() {
        for n in 0..=5 {
            assert_eq!(symmetric_group(n).unwrap().order(), factorial(n));
        }
        for n in 0..=4 {
            assert_eq!(signed_symmetric_group(n).unwrap().order(), (1 << n) * factorial(n));
        }
        for n in 1..=4 {
            assert_eq!(weyl_d_group(n).unwrap().order(), (1 << (n - 1)) * factorial(n));
        }
    }

    #[test]
    fn all_flip_in_type_d_iff_even() {
        for n in 1..=4 {
            let flip = signed_perm(n, &(1..=n as i64).map(|x| -x).collect::<Vec<_>>()).unwrap();
            assert_eq!(weyl_d_group(n).unwrap().contains(&flip), n % 2 == 0, "n = {n}");
        }
    }

    #[test]
    fn elements_commute_with_negation() {
        let g = signed_symmetric_group(3).unwrap();
        for p in g.elements() {
            let im = signed_images(3, p);
            assert_eq!(&signed_perm(3, &im).unwrap(), p);
        }
    }

    #[test]
    fn sign_changes_form_normal_elementary_abelian_subgroup() {
        for n in 1..=3 {
            let g = signed_symmetric_group(n).unwrap();
            let k = g.filter_subgroup(|p| signed_images(n, p).iter().enumerate().all(|(i, y)| y.unsigned_abs() as usize == i + 1));
            assert_eq!(k.order(), 1 << n);
            assert!(k.is_abelian());
            assert!(k.elements().iter().all(|p| p.compose(p).is_identity()));
            assert!(k.is_normal_in(&g));
        }
    }

    #[test]
    fn letters_round_trip() {
        for p in 0..6 {
            assert_eq!(signed_point(3, signed_letter(3, p)), p);
        }
        assert_eq!(signed_labels(2), vec!["1", "2", "-1", "-2"]);
    }
}
