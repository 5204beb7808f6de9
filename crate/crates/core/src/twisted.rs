//! Twisted subgroups, the relation `≡` with `Ξ_K(G)` and `Ψ_K(G)`, the
//! automorphism `τ` and the extension `G⁺ = G⟨τ⟩`.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::baer::Folder;
use crate::error::{Error, Result};
use crate::group::{closure, is_normal, is_subgroup, quotient_generic, ElemSet, FiniteGroup};
use crate::loops::find_loop_isomorphism;
use crate::loops::Loop;
use crate::report::{Flag, Witness};

/// Largest group for which the relation `≡` is materialized as a pair set.
pub const RELATION_LIMIT: usize = 8192;
/// Largest group for the quadratic coset-family comparison.
pub const COSET_FAMILY_LIMIT: usize = 5000;
/// Largest group on which both `τ` routes are run and compared.
pub const TAU_CROSS_CHECK_LIMIT: usize = 200;
/// Largest `G⁺` on which associativity is checked on all triples.
pub const ASSOC_CHECK_LIMIT: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedVerdict {
    pub is_twisted: bool,
    /// `(x, y)` with `xyx ∉ K`; absent when the failure is `1 ∉ K`.
    pub witness: Option<(usize, usize)>,
}

/// `1 ∈ K` and `xyx ∈ K` for all `x, y ∈ K`.
pub fn is_twisted_subgroup<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> TwistedVerdict {
    if !k.contains(0) {
        return TwistedVerdict {
            is_twisted: false,
            witness: None,
        };
    }
    for x in k.iter() {
        for y in k.iter() {
            if !k.contains(g.mul(g.mul(x, y), x)) {
                return TwistedVerdict {
                    is_twisted: false,
                    witness: Some((x, y)),
                };
            }
        }
    }
    // xyx with y = x^(m) walks through all odd, then all powers
    debug_assert!(k.iter().all(|x| {
        let mut p = x;
        while p != 0 {
            if !k.contains(p) {
                return false;
            }
            p = g.mul(p, x);
        }
        true
    }));
    TwistedVerdict {
        is_twisted: true,
        witness: None,
    }
}

fn require_twisted<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> Result<()> {
    match is_twisted_subgroup(g, k) {
        TwistedVerdict {
            is_twisted: true, ..
        } => Ok(()),
        TwistedVerdict {
            witness: Some((x, y)),
            ..
        } => Err(Error::NotTwisted(x, y)),
        _ => Err(Error::NotTwisted(0, 0)),
    }
}

fn left_translate<G: FiniteGroup + ?Sized>(g: &G, x: usize, k: &ElemSet) -> ElemSet {
    ElemSet::from_indices(g.order(), k.iter().map(|y| g.mul(x, y)))
}

fn right_translate<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet, x: usize) -> ElemSet {
    ElemSet::from_indices(g.order(), k.iter().map(|y| g.mul(y, x)))
}

/// The associate `xK`, checked to be twisted again.
pub fn associate<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet, x: usize) -> Result<ElemSet> {
    require_twisted(g, k)?;
    if !k.contains(x) {
        return Err(Error::InvalidFolder("associate element not in K"));
    }
    let a = left_translate(g, x, k);
    require_twisted(g, &a)?;
    Ok(a)
}

/// The pair set `R∞ ⊆ G × G`, grown from `(1, 1)` by `(x, y) ↦ (kx, k⁻¹y)`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    n: usize,
    pairs: FixedBitSet,
}

impl Equivalence {
    pub fn compute<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> Result<Self> {
        let n = g.order();
        if n > RELATION_LIMIT {
            return Err(Error::SizeLimit {
                what: "group order for the relation ≡",
                found: n,
                limit: RELATION_LIMIT,
            });
        }
        let ks: Vec<(usize, usize)> = k.iter().map(|x| (x, g.inv(x))).collect();
        let mut pairs = FixedBitSet::with_capacity(n * n);
        pairs.insert(0);
        let mut work = alloc::vec![(0usize, 0usize)];
        while let Some((x, y)) = work.pop() {
            for &(a, ai) in &ks {
                let p = (g.mul(a, x), g.mul(ai, y));
                if !pairs.put(p.0 * n + p.1) {
                    work.push(p);
                }
            }
        }
        Ok(Equivalence { n, pairs })
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(x * self.n + y)
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.ones().map(move |i| (i / self.n, i % self.n))
    }

    /// `{g : g ≡ 1}`.
    pub fn xi(&self) -> ElemSet {
        ElemSet::from_indices(self.n, (0..self.n).filter(|&x| self.related(x, 0)))
    }

    /// `g ↦ h` with `g ≡ h`, when every class is a singleton.
    pub fn as_map(&self) -> Option<Vec<usize>> {
        let mut map = alloc::vec![usize::MAX; self.n];
        for (x, y) in self.pairs() {
            if map[x] != usize::MAX {
                return None;
            }
            map[x] = y;
        }
        map.iter().all(|&y| y != usize::MAX).then_some(map)
    }
}

/// `Ξ_K(G)` and `Ψ_K(G)` with the outcome of each decidable claim about
/// them (`None` when skipped for size).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiPsi {
    pub xi: ElemSet,
    pub psi: ElemSet,
    pub claims: Vec<(&'static str, Option<bool>)>,
}

impl XiPsi {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|(_, c)| *c != Some(false))
    }
}

/// Requires `⟨K⟩ = G` and `K` twisted.
pub fn xi_psi<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> Result<(XiPsi, Equivalence)> {
    require_twisted(g, k)?;
    let ks: Vec<usize> = k.iter().collect();
    if closure(g, &ks).len() != g.order() {
        return Err(Error::NotGenerated);
    }
    let rel = Equivalence::compute(g, k)?;
    let n = g.order();
    let xi = rel.xi();
    let psi = ElemSet::from_indices(n, (0..n).filter(|&x| left_translate(g, x, k) == *k));

    let mut claims = Vec::new();
    let symmetric = rel.pairs().all(|(x, y)| rel.related(y, x));
    claims.push(("symmetric", Some(symmetric)));
    let coset_match = rel
        .pairs()
        .all(|(x, y)| left_translate(g, x, k) == right_translate(g, k, y));
    claims.push(("gK=Kh", Some(coset_match)));
    let families = if n <= COSET_FAMILY_LIMIT {
        let mut left: Vec<ElemSet> = (0..n).map(|x| left_translate(g, x, k)).collect();
        let mut right: Vec<ElemSet> = (0..n).map(|x| right_translate(g, k, x)).collect();
        left.sort();
        left.dedup();
        right.sort();
        right.dedup();
        Some(left == right)
    } else {
        None
    };
    claims.push(("coset_families", families));
    claims.push(("xi_normal", Some(is_subgroup(g, &xi) && is_normal(g, &xi))));
    claims.push(("psi_normal", Some(is_subgroup(g, &psi) && is_normal(g, &psi))));
    claims.push(("xi_in_psi", Some(xi.is_subset(&psi))));
    let psi_k = psi
        .iter()
        .all(|p| right_translate(g, k, p) == *k && left_translate(g, p, k) == *k);
    claims.push(("psi_in_k", Some(psi.is_subset(k) && psi_k)));
    // τ inverts Ψ/Ξ, so that section is abelian
    let abelian = if is_normal(g, &xi) && is_subgroup(g, &psi) {
        let q = quotient_generic(g, &xi)?;
        let img = q.image(&psi);
        let elems: Vec<usize> = img.iter().collect();
        Some(
            elems
                .iter()
                .all(|&a| elems.iter().all(|&b| q.group.mul(a, b) == q.group.mul(b, a))),
        )
    } else {
        Some(false)
    };
    claims.push(("psi_over_xi_abelian", abelian));
    Ok((XiPsi { xi, psi, claims }, rel))
}

/// `τ` read off the relation: `g ↦` the unique `h` with `g ≡ h`.
pub fn tau_by_relation<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> Result<Option<Vec<usize>>> {
    let (_, rel) = xi_psi(g, k)?;
    Ok(rel.as_map())
}

/// `τ` extended along `K`-words from `k ↦ k⁻¹`, rejected unless it is a
/// well-defined homomorphism.
pub fn tau_by_extension<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = alloc::vec![usize::MAX; n];
    map[0] = 0;
    let mut work = alloc::vec![0usize];
    let ks: Vec<(usize, usize)> = k.iter().map(|x| (x, g.inv(x))).collect();
    while let Some(x) = work.pop() {
        for &(a, ai) in &ks {
            let y = g.mul(x, a);
            let img = g.mul(map[x], ai);
            if map[y] == usize::MAX {
                map[y] = img;
                work.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    is_automorphism(g, &map).then_some(map)
}

/// Exhaustive homomorphism and bijectivity check of an element map.
pub fn is_automorphism<G: FiniteGroup + ?Sized>(g: &G, map: &[usize]) -> bool {
    let n = g.order();
    let mut hit = alloc::vec![false; n];
    for &y in map {
        if y >= n || core::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b])))
}

/// The automorphism with `g ≡ g^τ`, present exactly when `Ξ_K(G) = 1`.
/// On groups up to [`TAU_CROSS_CHECK_LIMIT`] the relation route and the
/// extension route are both run and must agree.
pub fn tau_automorphism<G: FiniteGroup + ?Sized>(g: &G, k: &ElemSet) -> Result<Option<Vec<usize>>> {
    let (xp, rel) = xi_psi(g, k)?;
    let ext = tau_by_extension(g, k);
    if g.order() <= TAU_CROSS_CHECK_LIMIT && rel.as_map() != ext {
        return Err(Error::RouteMismatch("τ from ≡ and τ from K-words"));
    }
    if ext.is_some() != xp.xi.is_trivial() {
        return Err(Error::Internal("τ exists but Ξ is nontrivial, or conversely"));
    }
    if let Some(t) = &ext {
        if (0..g.order()).any(|x| t[t[x]] != x) {
            return Err(Error::Internal("τ² ≠ 1"));
        }
        if k.iter().any(|x| t[x] != g.inv(x)) {
            return Err(Error::Internal("τ does not invert K"));
        }
    }
    Ok(ext)
}

/// The unique `τ ∈ Aut(G)` with `[H, τ] = 1` and `k^τ = k⁻¹`, built as
/// `τ(hk) = hk⁻¹`.
pub fn extend_tau_bruck(f: &Folder) -> Result<Vec<usize>> {
    let g = f.group();
    let n = g.order();
    let k = f.k_set();
    if !f.verify().folder.holds {
        return Err(Error::NotBruckFolder("not a loop folder"));
    }
    if !is_twisted_subgroup(g, &k).is_twisted {
        return Err(Error::NotBruckFolder("K is not a twisted subgroup"));
    }
    if f.h().iter().any(|h| k.iter().any(|x| !k.contains(g.conj(x, h)))) {
        return Err(Error::NotBruckFolder("H does not act on K by conjugation"));
    }
    let mut k_of_coset = alloc::vec![usize::MAX; f.index()];
    for &x in f.k() {
        k_of_coset[f.coset_of(x)] = x;
    }
    let mut tau = alloc::vec![0; n];
    for (x, t) in tau.iter_mut().enumerate() {
        let kx = k_of_coset[f.coset_of(x)];
        let h = g.mul(x, g.inv(kx));
        *t = g.mul(h, g.inv(kx));
    }
    if !is_automorphism(g, &tau) {
        return Err(Error::NotBruckFolder("τ(hk) = hk⁻¹ is not an automorphism"));
    }
    // compare with the ≡ construction on ⟨K⟩
    let kk: Vec<usize> = f.k().to_vec();
    let gen = closure(g, &kk);
    if gen.len() <= RELATION_LIMIT {
        let (sub, embed) = g.subgroup(&gen);
        let mut pos = alloc::vec![usize::MAX; n];
        for (i, &e) in embed.iter().enumerate() {
            pos[e] = i;
        }
        let k_sub = ElemSet::from_indices(sub.order(), kk.iter().map(|&x| pos[x]));
        match tau_automorphism(&sub, &k_sub)? {
            Some(t) if (0..sub.order()).all(|i| embed[t[i]] == tau[embed[i]]) => {}
            _ => return Err(Error::RouteMismatch("τ on ⟨K⟩ and τ extended over H")),
        }
    }
    Ok(tau)
}

/// `G⁺ = G⟨τ⟩` as pairs `(g, ε)`, stored at index `2g + ε`.
#[derive(Clone, Debug)]
pub struct ExtGroup<'a, G: FiniteGroup + ?Sized> {
    base: &'a G,
    tau: Vec<usize>,
    lambda: ElemSet,
}

impl<'a, G: FiniteGroup + ?Sized> ExtGroup<'a, G> {
    pub fn new(base: &'a G, tau: Vec<usize>, k: &ElemSet) -> Self {
        let lambda = ElemSet::from_indices(2 * base.order(), k.iter().map(|x| 2 * x + 1));
        ExtGroup { base, tau, lambda }
    }

    pub fn base(&self) -> &G {
        self.base
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Index of `τ` itself.
    pub fn tau_element(&self) -> usize {
        1
    }

    pub fn embed(&self, x: usize) -> usize {
        2 * x
    }

    /// `Λ = τK`, as `{(k, 1)}` (K is closed under inverses).
    pub fn lambda_set(&self) -> &ElemSet {
        &self.lambda
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / 2, x % 2)
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for ExtGroup<'_, G> {
    fn order(&self) -> usize {
        2 * self.base.order()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (g, e) = (a / 2, a % 2);
        let (h, d) = (b / 2, b % 2);
        let h = if e == 1 { self.tau[h] } else { h };
        2 * self.base.mul(g, h) + (e ^ d)
    }

    fn inv(&self, a: usize) -> usize {
        let (g, e) = (a / 2, a % 2);
        let gi = self.base.inv(g);
        2 * (if e == 1 { self.tau[gi] } else { gi }) + e
    }

    fn generators(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.base.generators().into_iter().map(|x| 2 * x).collect();
        v.push(1);
        v
    }
}

/// `G⁺` for a Bruck folder, with `Λ` checked to be a `G⁺`-invariant set of
/// involutions (or of `1` when `τ = 1`).
pub fn build_gplus<'a>(f: &'a Folder, tau: Vec<usize>) -> Result<ExtGroup<'a, crate::group::PermGroup>> {
    let g = f.group();
    let ext = ExtGroup::new(g, tau, &f.k_set());
    if ext.order() <= ASSOC_CHECK_LIMIT {
        let m = ext.order();
        for a in 0..m {
            for b in 0..m {
                let ab = ext.mul(a, b);
                for c in 0..m {
                    if ext.mul(ab, c) != ext.mul(a, ext.mul(b, c)) {
                        return Err(Error::Internal("G⁺ multiplication is not associative"));
                    }
                }
            }
        }
    }
    for l in ext.lambda_set().iter() {
        if ext.mul(l, l) != 0 {
            return Err(Error::Internal("Λ contains a non-involution"));
        }
    }
    for s in ext.generators() {
        for l in ext.lambda_set().iter() {
            if !ext.lambda_set().contains(ext.conj(l, s)) {
                return Err(Error::Internal("Λ is not G⁺-invariant"));
            }
        }
    }
    Ok(ext)
}

/// `(Ξ, 1, Ξ)` as a subfolder whose loop is a normal subloop and a group
/// isomorphic to `Ξ`.
pub fn xi_subfolder_check(f: &Folder) -> Result<Flag> {
    let g = f.group();
    let (xp, _) = xi_psi(g, &f.k_set())?;
    let xi = xp.xi;
    let mut w = Witness::new().with("xi_order", xi.len());
    let Some(sub) = f.detect_subfolder(&xi) else {
        return Ok(Flag::no(w.with("failed", "not a subfolder")));
    };
    if !sub.folder.h().is_trivial() {
        return Ok(Flag::no(w.with("failed", "Ξ ∩ H ≠ 1")));
    }
    let x = f.to_loop()?;
    let labels = ElemSet::from_indices(x.order(), sub.labels.iter().copied());
    w.push("subloop", labels.as_slice());
    if !x.is_normal_subloop(&labels) {
        return Ok(Flag::no(w.with("failed", "Ξ(X) is not a normal subloop")));
    }
    let restricted = x.restrict(&labels);
    if !restricted.is_group() {
        return Ok(Flag::no(w.with("failed", "Ξ(X) is not a group")));
    }
    let (xi_group, _) = g.subgroup(&xi);
    let as_loop = Loop::from_group(&xi_group);
    if find_loop_isomorphism(&restricted, &as_loop).is_none() {
        return Ok(Flag::no(w.with("failed", "Ξ(X) is not isomorphic to Ξ")));
    }
    Ok(Flag::yes_with(w))
}
