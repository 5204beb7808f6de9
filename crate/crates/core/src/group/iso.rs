use alloc::vec::Vec;

use serde::Serialize;

use super::{conjugacy_classes, derived_series, ElemSet, FiniteGroup};

/// Groups above this order are compared by fingerprint only.
pub const ISO_SEARCH_LIMIT: usize = 2000;

/// Isomorphism invariants cheap enough to compute for every desk-scale group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub order_profile: Vec<(usize, usize)>,
    pub derived_orders: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoVerdict {
    Yes,
    No,
    Unknown,
}

pub fn fingerprint<G: FiniteGroup + ?Sized>(g: &G) -> Fingerprint {
    let mut class_sizes: Vec<usize> = conjugacy_classes(g).iter().map(ElemSet::len).collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: g.order(),
        class_sizes,
        order_profile: super::order_profile(g),
        derived_orders: derived_series(g).iter().map(ElemSet::len).collect(),
    }
}

/// Fingerprints first; an explicit isomorphism search decides matching
/// fingerprints up to [`ISO_SEARCH_LIMIT`], beyond which the answer is
/// `Unknown`.
pub fn fingerprint_isomorphic<A, B>(a: &A, b: &B) -> IsoVerdict
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    if fingerprint(a) != fingerprint(b) {
        return IsoVerdict::No;
    }
    if a.order() > ISO_SEARCH_LIMIT {
        return IsoVerdict::Unknown;
    }
    if find_isomorphism(a, b).is_some() {
        IsoVerdict::Yes
    } else {
        IsoVerdict::No
    }
}

/// Per-element invariants preserved by isomorphisms.
fn element_keys<G: FiniteGroup + ?Sized>(g: &G) -> Vec<(usize, usize)> {
    let mut keys = alloc::vec![(0, 0); g.order()];
    for class in conjugacy_classes(g) {
        let o = g.element_order(class.first().unwrap());
        for x in class.iter() {
            keys[x] = (o, class.len());
        }
    }
    keys
}

/// Generating set chosen greedily from elements of large order.
fn small_generating_set<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    let mut cands: Vec<usize> = (1..g.order()).collect();
    cands.sort_by_key(|&x| (core::cmp::Reverse(g.element_order(x)), x));
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = g.trivial();
    for x in cands {
        if cur.len() == g.order() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = super::closure(g, &gens);
        }
    }
    gens
}

/// Explicit isomorphism `a -> b` as an index map, found by choosing images
/// for a small generating set and extending along the Cayley graph.
pub fn find_isomorphism<A, B>(a: &A, b: &B) -> Option<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    if a.order() != b.order() {
        return None;
    }
    if a.order() == 1 {
        return Some(alloc::vec![0]);
    }
    let gens = small_generating_set(a);
    let ka = element_keys(a);
    let kb = element_keys(b);
    let classes_b = conjugacy_classes(b);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i == 0 {
                // up to inner automorphisms of b, one image per class suffices
                classes_b
                    .iter()
                    .map(|c| c.first().unwrap())
                    .filter(|&y| kb[y] == ka[s])
                    .collect()
            } else {
                (0..b.order()).filter(|&y| kb[y] == ka[s]).collect()
            }
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search<A, B>(
    a: &A,
    b: &B,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    let depth = images.len();
    if depth == gens.len() {
        return extend(a, b, gens, images);
    }
    for &y in &candidates[depth] {
        // products with earlier generators must keep their orders
        let consistent = (0..depth).all(|j| {
            a.element_order(a.mul(gens[j], gens[depth])) == b.element_order(b.mul(images[j], y))
        });
        if !consistent {
            continue;
        }
        images.push(y);
        if let Some(m) = search(a, b, gens, candidates, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

fn extend<A, B>(a: &A, b: &B, gens: &[usize], images: &[usize]) -> Option<Vec<usize>>
where
    A: FiniteGroup + ?Sized,
    B: FiniteGroup + ?Sized,
{
    let n = a.order();
    let mut map = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = alloc::vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let e = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let x = a.mul(e, s);
            let y = b.mul(map[e], t);
            if map[x] == usize::MAX {
                if used[y] {
                    return None;
                }
                map[x] = y;
                used[y] = true;
                queue.push(x);
            } else if map[x] != y {
                return None;
            }
        }
        i += 1;
    }
    (queue.len() == n).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Generators, PermGroup, DEFAULT_CAP};
    use crate::perm::Perm;

    fn group(degree: usize, cycles: &[&[&[usize]]]) -> PermGroup {
        let perms = cycles
            .iter()
            .map(|c| Perm::from_cycles(degree, c).unwrap())
            .collect();
        Generators::new(degree, perms).unwrap().materialize(DEFAULT_CAP).unwrap()
    }

    fn is_iso(a: &PermGroup, b: &PermGroup, m: &[usize]) -> bool {
        (0..a.order()).all(|x| (0..a.order()).all(|y| m[a.mul(x, y)] == b.mul(m[x], m[y])))
    }

    #[test]
    fn d8_and_q8_differ_by_order_profile() {
        let d8 = group(4, &[&[&[1, 3]], &[&[0, 1], &[2, 3]]]);
        // Q8 in its regular representation
        let i = &[&[0, 1, 2, 3][..], &[4, 5, 6, 7]][..];
        let j = &[&[0, 4, 2, 6][..], &[1, 7, 3, 5]][..];
        let q8 = group(8, &[i, j]);
        assert_eq!(q8.order(), 8);
        assert_ne!(fingerprint(&d8).order_profile, fingerprint(&q8).order_profile);
        assert_eq!(fingerprint_isomorphic(&d8, &q8), IsoVerdict::No);
    }

    #[test]
    fn two_regular_copies_of_c6() {
        let a = group(6, &[&[&[0, 1, 2, 3, 4, 5]]]);
        let b = group(5, &[&[&[0, 1, 2], &[3, 4]]]);
        assert_eq!(fingerprint_isomorphic(&a, &b), IsoVerdict::Yes);
        let m = find_isomorphism(&a, &b).unwrap();
        assert!(is_iso(&a, &b, &m));
    }

    #[test]
    fn sym4_isomorphism_search() {
        let a = group(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        let b = group(4, &[&[&[2, 3]], &[&[0, 1, 2]], &[&[0, 3]]]);
        let m = find_isomorphism(&a, &b).unwrap();
        assert!(is_iso(&a, &b, &m));
    }
}
