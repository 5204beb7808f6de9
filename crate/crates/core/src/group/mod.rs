//! Desk-scale finite groups.
//!
//! Every group is fully materialized: elements are indexed `0..order` with
//! index `0` the identity, and all algorithms work on indices. Subsets of a
//! group are [`ElemSet`]s over those indices.

mod elemset;
mod iso;
mod ops;
mod perm_group;
mod quotient;
mod subgroups;

pub use elemset::ElemSet;
pub use iso::{find_isomorphism, fingerprint, fingerprint_isomorphic, Fingerprint, IsoVerdict};
pub use ops::*;
pub use perm_group::{Generators, PermGroup, DEFAULT_CAP};
pub use quotient::{quotient, quotient_generic, Quotient};
pub use subgroups::{all_subgroups, normal_subgroups, overgroups, subgroup_classes, SubgroupClass};

use alloc::vec::Vec;

/// A finite group whose elements are the indices `0..order()`.
///
/// Implementations must put the identity at index 0.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set, as element indices.
    fn generators(&self) -> Vec<usize>;

    #[inline]
    fn identity(&self) -> usize {
        0
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    #[inline]
    fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    fn pow(&self, x: usize, mut e: usize) -> usize {
        let mut acc = 0;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    fn whole(&self) -> ElemSet {
        ElemSet::full(self.order())
    }

    fn trivial(&self) -> ElemSet {
        ElemSet::from_indices(self.order(), [0])
    }
}
