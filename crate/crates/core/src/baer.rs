//! Loop folders `(G, H, K)` and the Baer correspondence.

use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    check_normal, closure, core, is_subgroup, quotient, ElemSet, FiniteGroup, Generators, PermGroup,
};
use crate::loops::Loop;
use crate::report::{Flag, Witness};

/// A triple `(G, H, K)` with `K` listed in `κ` order: `κ(k[i]) = i`.
#[derive(Clone, Debug)]
pub struct Folder {
    g: PermGroup,
    h: ElemSet,
    k: Vec<usize>,
    /// Right coset `Hx` of every element, numbered by least element.
    coset: Vec<usize>,
    coset_count: usize,
}

/// Classification flags. The three axiom flags are always present; the
/// remaining ones only after a full classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FolderClass {
    pub folder: Flag,
    pub faithful: Flag,
    pub envelope: Flag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bol: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ar: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruck: Option<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bx2p: Option<Flag>,
}

/// A subfolder together with the parent loop labels of its `K`.
#[derive(Clone, Debug)]
pub struct Subfolder {
    pub folder: Folder,
    /// `labels[i]` is the parent `κ`-label of the subfolder's `i`-th K element.
    pub labels: Vec<usize>,
    /// `embed[u]` is the parent index of the subfolder's group element `u`.
    pub embed: Vec<usize>,
}

/// `(Ḡ, H̄, K̄)` with the projection and a loop isomorphism certificate.
#[derive(Clone, Debug)]
pub struct QuotientFolder {
    pub folder: Folder,
    pub proj: Vec<usize>,
    /// `certificate[x]` is the image of loop element `x`; verified to be an
    /// isomorphism between the two reconstructed loops.
    pub certificate: Vec<usize>,
}

fn right_cosets<G: FiniteGroup + ?Sized>(g: &G, h: &ElemSet) -> (Vec<usize>, usize) {
    let mut coset = alloc::vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if coset[x] == usize::MAX {
            for y in h.iter() {
                coset[g.mul(y, x)] = count;
            }
            count += 1;
        }
    }
    (coset, count)
}

impl Folder {
    /// Checks only the data shape: `H` a subgroup, `K` nonempty, distinct
    /// and inside `G`. The folder axioms are verdicts of [`Folder::verify`].
    pub fn new(g: PermGroup, h: ElemSet, k: Vec<usize>) -> Result<Self> {
        if h.universe() != g.order() || !is_subgroup(&g, &h) {
            return Err(Error::NotSubgroup);
        }
        if k.is_empty() {
            return Err(Error::InvalidFolder("K is empty"));
        }
        let mut seen = alloc::vec![false; g.order()];
        for &x in &k {
            if x >= g.order() {
                return Err(Error::InvalidFolder("K element outside G"));
            }
            if core::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidFolder("K lists an element twice"));
            }
        }
        let (coset, coset_count) = right_cosets(&g, &h);
        Ok(Folder {
            g,
            h,
            k,
            coset,
            coset_count,
        })
    }

    /// [`Folder::new`] followed by the loop-folder axioms.
    pub fn validated(g: PermGroup, h: ElemSet, k: Vec<usize>) -> Result<Self> {
        let f = Self::new(g, h, k)?;
        if f.k[0] != 0 {
            return Err(Error::InvalidFolder("first K element must be the identity"));
        }
        if !f.verify().folder.holds {
            return Err(Error::InvalidFolder("K is not a transversal to every conjugate of H"));
        }
        Ok(f)
    }

    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    pub fn h(&self) -> &ElemSet {
        &self.h
    }

    /// `K` in `κ` order.
    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn k_set(&self) -> ElemSet {
        ElemSet::from_indices(self.g.order(), self.k.iter().copied())
    }

    pub fn index(&self) -> usize {
        self.coset_count
    }

    /// Right coset `Hx` containing `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset[x]
    }

    /// Distinct-coset test for `K` acting on the coset `Hg`: the cosets
    /// `Hgk` must be pairwise distinct. Returns the first clashing pair of
    /// `κ`-labels.
    fn transversal_clash(&self, g: usize) -> Option<(usize, usize)> {
        let mut hit = alloc::vec![usize::MAX; self.coset_count];
        for (i, &k) in self.k.iter().enumerate() {
            let c = self.coset[self.g.mul(g, k)];
            if hit[c] != usize::MAX {
                return Some((hit[c], i));
            }
            hit[c] = i;
        }
        None
    }

    /// Folder axioms and the faithful/envelope properties.
    pub fn verify(&self) -> FolderClass {
        let folder = self.folder_flag();
        let core_h = core(&self.g, &self.h);
        let faithful = if core_h.is_trivial() {
            Flag::yes()
        } else {
            Flag::no(
                Witness::new()
                    .with("core_order", core_h.len())
                    .with("core_element", core_h.as_slice()[1]),
            )
        };
        let gen = closure(&self.g, &self.k);
        let envelope = if gen.len() == self.g.order() {
            Flag::yes()
        } else {
            Flag::no(
                Witness::new()
                    .with("generated_order", gen.len())
                    .with("group_order", self.g.order()),
            )
        };
        FolderClass {
            folder,
            faithful,
            envelope,
            bol: None,
            ar: None,
            bruck: None,
            bx2p: None,
        }
    }

    fn folder_flag(&self) -> Flag {
        if !self.k.contains(&0) {
            return Flag::no(Witness::new().with("axiom", "identity not in K"));
        }
        if self.k.len() != self.coset_count {
            return Flag::no(
                Witness::new()
                    .with("axiom", "|K| != |G:H|")
                    .with("k_size", self.k.len())
                    .with("index", self.coset_count),
            );
        }
        // one representative per coset suffices: H^g depends only on Hg
        let mut reps = alloc::vec![usize::MAX; self.coset_count];
        for x in (0..self.g.order()).rev() {
            reps[self.coset[x]] = x;
        }
        for &g in &reps {
            if let Some((a, b)) = self.transversal_clash(g) {
                return Flag::no(
                    Witness::new()
                        .with("axiom", "K not a transversal to a conjugate of H")
                        .with("g", g)
                        .with("k_labels", alloc::vec![a, b]),
                );
            }
        }
        Flag::yes()
    }

    /// The same axiom in its `|K| = |G:H|`, `H^g ∩ KK⁻¹ = 1` form; returns
    /// the least `g` for which the intersection is nontrivial.
    pub fn remark_a_violation(&self) -> Option<usize> {
        let n = self.g.order();
        if self.k.len() != self.coset_count {
            return Some(0);
        }
        let mut kk = alloc::vec![false; n];
        for &a in &self.k {
            for &b in &self.k {
                kk[self.g.mul(a, self.g.inv(b))] = true;
            }
        }
        let mut done = alloc::vec![false; self.coset_count];
        for g in 0..n {
            // H^g is determined by the coset Hg
            if core::mem::replace(&mut done[self.coset[g]], true) {
                continue;
            }
            if self.h.iter().any(|x| x != 0 && kk[self.g.conj(x, g)]) {
                return Some(g);
            }
        }
        None
    }

    /// `κ(k₁)∘κ(k₂)`: the label of the unique element of `K ∩ Hk₁k₂`.
    pub fn loop_product(&self, i: usize, j: usize) -> Result<usize> {
        let c = self.coset[self.g.mul(self.k[i], self.k[j])];
        let mut hits = self
            .k
            .iter()
            .enumerate()
            .filter(|&(_, &k)| self.coset[k] == c)
            .map(|(l, _)| l);
        match (hits.next(), hits.next()) {
            (Some(l), None) => Ok(l),
            (None, _) => Err(Error::NotTransversal(i, j, 0)),
            (Some(_), Some(_)) => Err(Error::NotTransversal(i, j, 2 + hits.count())),
        }
    }

    /// Rebuilds the loop on `{0, …, |K|−1}`.
    pub fn to_loop(&self) -> Result<Loop> {
        let m = self.k.len();
        let mut k_of_coset = alloc::vec![usize::MAX; self.coset_count];
        let mut dup = alloc::vec![0usize; self.coset_count];
        for (l, &k) in self.k.iter().enumerate() {
            let c = self.coset[k];
            if k_of_coset[c] == usize::MAX {
                k_of_coset[c] = l;
            }
            dup[c] += 1;
        }
        let mut table = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let c = self.coset[self.g.mul(self.k[i], self.k[j])];
                if dup[c] != 1 {
                    return Err(Error::NotTransversal(i, j, dup[c]));
                }
                table.push(k_of_coset[c]);
            }
        }
        Loop::new(m, table)
    }

    /// `h_{x,y} = k_x k_y k_{x∘y}⁻¹`, which lies in `H` for every folder.
    pub fn h_xy(&self, x: usize, y: usize) -> Result<usize> {
        let xy = self.loop_product(x, y)?;
        let h = self
            .g
            .mul(self.g.mul(self.k[x], self.k[y]), self.g.inv(self.k[xy]));
        if self.h.contains(h) {
            Ok(h)
        } else {
            Err(Error::NotInH)
        }
    }

    /// Whether the `h_{x,y}` generate `H`.
    pub fn verify_h_generation(&self) -> Result<bool> {
        let m = self.k.len();
        let mut hs = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                hs.push(self.h_xy(x, y)?);
            }
        }
        hs.sort_unstable();
        hs.dedup();
        Ok(closure(&self.g, &hs) == self.h)
    }

    /// The subfolder `(U, U∩H, U∩K)` when `U = (U∩H)(U∩K)`.
    pub fn detect_subfolder(&self, u: &ElemSet) -> Option<Subfolder> {
        if !is_subgroup(&self.g, u) {
            return None;
        }
        let uh = u.intersection(&self.h);
        let uk: Vec<(usize, usize)> = self
            .k
            .iter()
            .enumerate()
            .filter(|&(_, &k)| u.contains(k))
            .map(|(l, &k)| (l, k))
            .collect();
        if uh.len() * uk.len() < u.len() {
            return None;
        }
        let mut covered = alloc::vec![false; self.g.order()];
        let mut count = 0;
        for h in uh.iter() {
            for &(_, k) in &uk {
                let p = self.g.mul(h, k);
                if !core::mem::replace(&mut covered[p], true) {
                    count += 1;
                }
            }
        }
        if count != u.len() {
            return None;
        }
        let (sub, embed) = self.g.subgroup(u);
        let mut pos = alloc::vec![usize::MAX; self.g.order()];
        for (i, &e) in embed.iter().enumerate() {
            pos[e] = i;
        }
        let h_sub = ElemSet::from_indices(sub.order(), uh.iter().map(|x| pos[x]));
        let k_sub: Vec<usize> = uk.iter().map(|&(_, k)| pos[k]).collect();
        let labels = uk.iter().map(|&(l, _)| l).collect();
        let folder = Folder::new(sub, h_sub, k_sub).ok()?;
        Some(Subfolder {
            folder,
            labels,
            embed,
        })
    }

    /// `(G/N, HN/N, KN/N)` for `N ⊴ G` inside `H`.
    pub fn quotient_folder(&self, n: &ElemSet) -> Result<QuotientFolder> {
        check_normal(&self.g, n)?;
        if !n.is_subset(&self.h) {
            return Err(Error::NotInH);
        }
        let q = quotient(&self.g, n)?;
        let h_bar = q.image(&self.h);
        let k_bar: Vec<usize> = self.k.iter().map(|&k| q.proj[k]).collect();
        let folder = Folder::new(q.group, h_bar, k_bar)?;
        let before = self.to_loop()?;
        let after = folder.to_loop()?;
        let certificate: Vec<usize> = (0..before.order()).collect();
        if before != after {
            return Err(Error::InvalidFolder("quotient changed the loop"));
        }
        Ok(QuotientFolder {
            folder,
            proj: q.proj,
            certificate,
        })
    }

    /// The same folder with `G` replaced by `⟨K⟩`.
    pub fn envelope_part(&self) -> Option<Subfolder> {
        self.detect_subfolder(&closure(&self.g, &self.k))
    }
}

/// `(RMult(X), Stab(0), {ρx})` acting on the loop elements themselves,
/// with `κ(ρx) = x`.
pub fn baer_envelope(l: &Loop, cap: usize) -> Result<Folder> {
    let n = l.order();
    let rhos: Vec<_> = (0..n).map(|x| l.rho(x)).collect();
    let g = Generators::new(n, rhos.clone())?.materialize(cap)?;
    let h = g.stabilizer(0);
    let k = rhos
        .iter()
        .map(|p| g.index_of(p).expect("right translation lies in RMult"))
        .collect();
    Folder::new(g, h, k)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::{center, Generators, DEFAULT_CAP};
    use crate::loops::tests::{elementary_abelian, order5, s3};
    use crate::loops::find_loop_isomorphism;
    use crate::perm::Perm;
    use alloc::vec;

    pub(crate) fn perm_group(degree: usize, cycles: &[&[&[usize]]]) -> PermGroup {
        let perms = cycles
            .iter()
            .map(|c| Perm::from_cycles(degree, c).unwrap())
            .collect();
        Generators::new(degree, perms).unwrap().materialize(DEFAULT_CAP).unwrap()
    }

    /// `(D8, ⟨ab⟩, {1, a})` with `a = (0 1)(2 3)`, `b = (1 3)`.
    pub(crate) fn d8_folder() -> Folder {
        let g = perm_group(4, &[&[&[0, 1], &[2, 3]], &[&[1, 3]]]);
        let a = g.index_of(&Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()).unwrap();
        let b = g.index_of(&Perm::from_cycles(4, &[&[1, 3]]).unwrap()).unwrap();
        let ab = g.mul(a, b);
        assert_eq!(g.element_order(ab), 4);
        let h = closure(&g, &[ab]);
        Folder::new(g, h, vec![0, a]).unwrap()
    }

    /// `(G, 1, G)` for a group given as a loop.
    pub(crate) fn regular_folder(l: &Loop) -> Folder {
        let f = baer_envelope(l, DEFAULT_CAP).unwrap();
        assert!(f.h().is_trivial());
        f
    }

    #[test]
    fn envelope_of_c2_and_s3() {
        let c2 = Loop::cyclic(2);
        let f = baer_envelope(&c2, DEFAULT_CAP).unwrap();
        assert_eq!(f.group().order(), 2);
        assert!(f.h().is_trivial());
        let s = s3();
        let f = baer_envelope(&s, DEFAULT_CAP).unwrap();
        assert_eq!(f.group().order(), 6);
        assert!(f.h().is_trivial());
        let class = f.verify();
        assert!(class.folder.holds && class.faithful.holds && class.envelope.holds);
        assert_eq!(f.to_loop().unwrap(), s);
    }

    #[test]
    fn round_trip_nonassociative() {
        let l = order5();
        let f = baer_envelope(&l, DEFAULT_CAP).unwrap();
        assert!(!f.h().is_trivial());
        assert_eq!(f.to_loop().unwrap(), l);
        assert!(f.verify_h_generation().unwrap());
        assert_eq!(f.remark_a_violation(), None);
    }

    #[test]
    fn d8_example() {
        let f = d8_folder();
        let class = f.verify();
        assert!(class.folder.holds);
        assert!(!class.envelope.holds);
        assert!(!class.faithful.holds);
        let l = f.to_loop().unwrap();
        assert_eq!(l, Loop::cyclic(2));
        // ⟨K⟩ = ⟨a⟩ gives the subfolder (⟨a⟩, 1, {1, a})
        let sub = f.envelope_part().unwrap();
        assert_eq!(sub.folder.group().order(), 2);
        assert!(sub.folder.h().is_trivial());
        assert_eq!(sub.labels, vec![0, 1]);
    }

    #[test]
    fn d8_quotients() {
        let f = d8_folder();
        let z = center(f.group());
        let q = f.quotient_folder(&z).unwrap();
        assert_eq!(q.folder.group().order(), 4);
        assert_eq!(q.folder.to_loop().unwrap(), Loop::cyclic(2));
        let c = core(f.group(), f.h());
        assert_eq!(c, *f.h());
        let q = f.quotient_folder(&c).unwrap();
        assert_eq!(q.folder.group().order(), 2);
        assert!(q.folder.verify().faithful.holds);
        assert_eq!(q.folder.to_loop().unwrap(), Loop::cyclic(2));
    }

    #[test]
    fn quotient_rejects_bad_n() {
        let f = d8_folder();
        let whole = f.group().whole();
        assert!(matches!(f.quotient_folder(&whole), Err(Error::NotInH)));
        let g = perm_group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let t = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = closure(&g, &[t]);
        let f = Folder::new(g, h.clone(), vec![0]).unwrap();
        assert!(matches!(f.quotient_folder(&h), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn sym3_with_a3_transversal() {
        let g = perm_group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let t = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let r = g.index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let h = closure(&g, &[t]);
        let r2 = g.mul(r, r);
        let f = Folder::new(g, h, vec![0, r, r2]).unwrap();
        assert!(f.verify().folder.holds);
        assert_eq!(f.to_loop().unwrap(), Loop::cyclic(3));
    }

    #[test]
    fn non_transversal_is_reported() {
        let g = perm_group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let t = g.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = closure(&g, &[t]);
        // a transposition conjugate to t lies in another conjugate of H
        let u = g.index_of(&Perm::from_cycles(3, &[&[1, 2]]).unwrap()).unwrap();
        let v = g.index_of(&Perm::from_cycles(3, &[&[0, 2]]).unwrap()).unwrap();
        let f = Folder::new(g, h, vec![0, u, v]).unwrap();
        let class = f.verify();
        assert!(!class.folder.holds);
        assert!(f.remark_a_violation().is_some());
    }

    #[test]
    fn subfolders_from_overgroups() {
        let l = elementary_abelian(3);
        let f = regular_folder(&l);
        assert!(f.detect_subfolder(&f.group().whole()).is_some());
        let triv = f.detect_subfolder(&f.group().trivial()).unwrap();
        assert_eq!(triv.folder.k().len(), 1);
        let l5 = order5();
        let f5 = baer_envelope(&l5, DEFAULT_CAP).unwrap();
        let hs = f5.detect_subfolder(f5.h()).unwrap();
        assert_eq!(hs.labels, vec![0]);
        let m = find_loop_isomorphism(&f5.to_loop().unwrap(), &l5).unwrap();
        assert_eq!(m, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn h_elements_of_groups_are_trivial() {
        let f = regular_folder(&s3());
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(f.h_xy(x, y), Ok(0));
            }
        }
        assert!(f.verify_h_generation().unwrap());
    }
}
