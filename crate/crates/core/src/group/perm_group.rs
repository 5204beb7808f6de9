use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::borrow::Borrow;

use hashbrown::HashMap;

use super::{ElemSet, FiniteGroup};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 200_000;

/// Above this many `order² · degree` steps the multiplication table is not
/// precomputed and products are looked up through the element index.
const TABLE_BUDGET: usize = 1 << 27;

impl Borrow<[u32]> for Perm {
    fn borrow(&self) -> &[u32] {
        self.images()
    }
}

/// A permutation group given only by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    degree: usize,
    perms: Vec<Perm>,
}

impl Generators {
    pub fn new(degree: usize, perms: Vec<Perm>) -> Result<Self> {
        for p in &perms {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
        }
        Ok(Generators { degree, perms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// Closes the generators under composition.
    ///
    /// Elements are returned in lexicographic order of their image lists,
    /// so the identity is always element 0.
    pub fn materialize(&self, cap: usize) -> Result<PermGroup> {
        let id = Perm::identity(self.degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone(), ());
        queue.push_back(id);
        let mut buf = Vec::with_capacity(self.degree);
        while let Some(e) = queue.pop_front() {
            for s in &self.perms {
                e.then_into(s, &mut buf);
                if !seen.contains_key(buf.as_slice()) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let p = Perm::from_images_unchecked(buf.clone());
                    seen.insert(p.clone(), ());
                    queue.push_back(p);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_keys().collect();
        Ok(PermGroup::from_elements(self.degree, elements, &self.perms))
    }
}

/// A materialized permutation group.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    gens: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl PermGroup {
    /// `elements` must be closed under products; `gens` must generate them.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Perm>, gens: &[Perm]) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse = elements
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        let mut gen_idx: Vec<usize> = gens
            .iter()
            .map(|p| index[p.images()] as usize)
            .filter(|&i| i != 0)
            .collect();
        gen_idx.sort_unstable();
        gen_idx.dedup();
        let n = elements.len();
        let mut group = PermGroup {
            degree,
            elements,
            index,
            inverse,
            gens: gen_idx,
            table: None,
        };
        if n.saturating_mul(n).saturating_mul(degree.max(1)) <= TABLE_BUDGET {
            let mut table = Vec::with_capacity(n * n);
            let mut buf = Vec::with_capacity(degree);
            for a in 0..n {
                for b in 0..n {
                    group.elements[a].then_into(&group.elements[b], &mut buf);
                    table.push(group.index[buf.as_slice()]);
                }
            }
            group.table = Some(table);
        }
        group
    }

    pub fn from_generators(degree: usize, perms: Vec<Perm>, cap: usize) -> Result<Self> {
        Generators::new(degree, perms)?.materialize(cap)
    }

    pub fn trivial_group(degree: usize) -> Self {
        Self::from_elements(degree, alloc::vec![Perm::identity(degree)], &[])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p.images()).map(|&i| i as usize)
    }

    pub fn index_of_images(&self, images: &[u32]) -> Option<usize> {
        self.index.get(images).map(|&i| i as usize)
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.gens.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn to_generators(&self) -> Generators {
        Generators {
            degree: self.degree,
            perms: self.generator_perms(),
        }
    }

    /// Re-materializes a subgroup as a standalone group on the same points.
    ///
    /// Returns the group and the embedding `sub index -> self index`.
    pub fn subgroup(&self, set: &ElemSet) -> (PermGroup, Vec<usize>) {
        let gens: Vec<Perm> = super::generating_set(self, set)
            .into_iter()
            .map(|g| self.elements[g].clone())
            .collect();
        let elems: Vec<Perm> = set.iter().map(|i| self.elements[i].clone()).collect();
        let sub = PermGroup::from_elements(self.degree, elems, &gens);
        // both sides are lexicographically sorted, so the embedding is monotone
        let embed = set.as_slice().to_vec();
        debug_assert!(sub
            .elements
            .iter()
            .zip(&embed)
            .all(|(p, &i)| *p == self.elements[i]));
        (sub, embed)
    }

    /// Orbit of a point under the group.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.degree];
        let mut out = alloc::vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in &self.gens {
                let y = self.elements[g].apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> ElemSet {
        ElemSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&i| self.elements[i].fixes(point)),
        )
    }
}

impl FiniteGroup for PermGroup {
    #[inline]
    fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            return t[a * self.elements.len() + b] as usize;
        }
        let pa = self.elements[a].images();
        let pb = self.elements[b].images();
        if self.degree <= 64 {
            let mut buf = [0u32; 64];
            for (o, &x) in buf.iter_mut().zip(pa) {
                *o = pb[x as usize];
            }
            self.index[&buf[..self.degree]] as usize
        } else {
            let buf: Vec<u32> = pa.iter().map(|&x| pb[x as usize]).collect();
            self.index[buf.as_slice()] as usize
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

impl core::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generator_perms())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> Generators {
        Generators::new(
            3,
            alloc::vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sym3_has_six_elements() {
        let g = sym3().materialize(DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_generators_give_identity() {
        let g = Generators::new(4, alloc::vec![]).unwrap().materialize(DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(sym3().materialize(5).unwrap_err(), Error::CapExceeded { cap: 5 });
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = Generators::new(3, alloc::vec![Perm::identity(4)]).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 3, found: 4 });
    }

    #[test]
    fn table_and_lookup_agree() {
        let g = sym3().materialize(DEFAULT_CAP).unwrap();
        let mut no_table = g.clone();
        no_table.table = None;
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(a, b), no_table.mul(a, b));
                let prod = g.element(a) * g.element(b);
                assert_eq!(g.index_of(&prod), Some(g.mul(a, b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }
}
