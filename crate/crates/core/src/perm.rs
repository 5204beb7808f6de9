//! Permutations of `{0, …, n-1}` acting on the right.
//!
//! Products compose left to right: `x^(a*b) = (x^a)^b`, which matches the
//! exponent notation used throughout loop theory (`ρx ρy` means "apply `ρx`,
//! then `ρy`").

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, …, degree-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation);
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn from_usize(images: &[usize]) -> Result<Self> {
        Self::from_images(images.iter().map(|&x| x as u32).collect())
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::NotAPermutation);
                }
                images[a] = b as u32;
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Writes `self * other` into `out` without allocating.
    pub(crate) fn then_into(&self, other: &Perm, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.images.iter().map(|&x| other.images[x as usize]));
    }

    pub fn order(&self) -> usize {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut l = 1usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!((&b * &a).apply(0), 0);
    }

    #[test]
    fn inverse_and_order() {
        let c = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(c.order(), 6);
        assert!((&c * &c.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(Perm::from_images(alloc::vec![0, 0]), Err(Error::NotAPermutation));
        assert_eq!(Perm::from_images(alloc::vec![0, 2]), Err(Error::NotAPermutation));
    }

    #[test]
    fn identity_is_lexicographically_least() {
        let id = Perm::identity(4);
        let t = Perm::from_cycles(4, &[&[2, 3]]).unwrap();
        assert!(id < t);
    }
}
