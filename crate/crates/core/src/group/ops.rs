//! Subgroup-level primitives shared by every group representation.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use super::{ElemSet, FiniteGroup};
use crate::error::{Error, Result};

/// Subgroup generated by `gens`.
pub fn closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[usize]) -> ElemSet {
    extend_closure(g, &g.trivial(), gens, gens)
}

/// Subgroup generated by the subgroup `base` (generated by `base_gens`) and
/// the elements `extra`.
fn extend_closure<G: FiniteGroup + ?Sized>(
    g: &G,
    base: &ElemSet,
    base_gens: &[usize],
    extra: &[usize],
) -> ElemSet {
    let n = g.order();
    let mut bits = base.bits().clone();
    let mut list: Vec<usize> = base.as_slice().to_vec();
    let mut all_gens: Vec<usize> = base_gens.to_vec();
    all_gens.extend_from_slice(extra);
    all_gens.retain(|&s| s != 0);
    all_gens.sort_unstable();
    all_gens.dedup();
    if all_gens.iter().all(|&s| bits.contains(s)) {
        return base.clone();
    }
    debug_assert_eq!(bits.len(), n);
    let mut i = 0;
    while i < list.len() {
        let e = list[i];
        for &s in &all_gens {
            let p = g.mul(e, s);
            if !bits.put(p) {
                list.push(p);
            }
        }
        i += 1;
    }
    ElemSet::from_bits(bits)
}

/// `⟨a, b⟩` for subgroups `a`, `b`.
pub fn join<G: FiniteGroup + ?Sized>(g: &G, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let ga = generating_set(g, a);
    let gb = generating_set(g, b);
    extend_closure(g, a, &ga, &gb)
}

/// `⟨a, x⟩` for a subgroup `a` and element `x`.
pub fn join_element<G: FiniteGroup + ?Sized>(g: &G, a: &ElemSet, x: usize) -> ElemSet {
    let ga = generating_set(g, a);
    extend_closure(g, a, &ga, &[x])
}

/// Greedy generating set of the subgroup `set`: scans elements in index
/// order and keeps each one not yet generated.
pub fn generating_set<G: FiniteGroup + ?Sized>(g: &G, set: &ElemSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = g.trivial();
    for x in set.iter() {
        if cur.len() == set.len() {
            break;
        }
        if !cur.contains(x) {
            let prev = gens.clone();
            gens.push(x);
            cur = extend_closure(g, &cur, &prev, &[x]);
        }
    }
    gens
}

pub fn is_subgroup<G: FiniteGroup + ?Sized>(g: &G, set: &ElemSet) -> bool {
    set.contains(0)
        && set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(g.mul(a, b))))
}

/// `{x^c : x ∈ set}` with `x^c = c⁻¹ x c`.
pub fn conjugate_set<G: FiniteGroup + ?Sized>(g: &G, set: &ElemSet, c: usize) -> ElemSet {
    ElemSet::from_indices(g.order(), set.iter().map(|x| g.conj(x, c)))
}

pub fn product_set<G: FiniteGroup + ?Sized>(g: &G, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in a.iter() {
        for y in b.iter() {
            bits.insert(g.mul(x, y));
        }
    }
    ElemSet::from_bits(bits)
}

/// Conjugacy classes, each listed once, ordered by least element.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(g: &G) -> Vec<ElemSet> {
    let n = g.order();
    let gens = g.generators();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut classes = Vec::new();
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        let mut orbit = alloc::vec![x];
        seen.insert(x);
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &s in &gens {
                let z = g.conj(y, s);
                if !seen.put(z) {
                    orbit.push(z);
                }
            }
            i += 1;
        }
        classes.push(ElemSet::from_indices(n, orbit));
    }
    classes
}

/// The conjugacy class of `x`.
pub fn class_of<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> ElemSet {
    let n = g.order();
    let gens = g.generators();
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(x);
    let mut orbit = alloc::vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        for &s in &gens {
            let z = g.conj(y, s);
            if !seen.put(z) {
                orbit.push(z);
            }
        }
        i += 1;
    }
    ElemSet::from_bits(seen)
}

/// Elements commuting with every element of `set`.
pub fn centralizer<G: FiniteGroup + ?Sized>(g: &G, set: &ElemSet) -> ElemSet {
    let gens = generating_set(g, &closure(g, set.as_slice()));
    ElemSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&c| gens.iter().all(|&s| g.mul(c, s) == g.mul(s, c))),
    )
}

pub fn centralizer_of_element<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> ElemSet {
    ElemSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&c| g.mul(c, x) == g.mul(x, c)),
    )
}

pub fn center<G: FiniteGroup + ?Sized>(g: &G) -> ElemSet {
    let gens = g.generators();
    ElemSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&c| gens.iter().all(|&s| g.mul(c, s) == g.mul(s, c))),
    )
}

/// `N_G(U)` for a subgroup `U`.
pub fn normalizer<G: FiniteGroup + ?Sized>(g: &G, u: &ElemSet) -> ElemSet {
    let gens = generating_set(g, u);
    ElemSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| gens.iter().all(|&s| u.contains(g.conj(s, x)))),
    )
}

/// Elements normalizing `set` as a set (`set^x = set`).
pub fn set_stabilizer<G: FiniteGroup + ?Sized>(g: &G, set: &ElemSet) -> ElemSet {
    ElemSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| set.iter().all(|s| set.contains(g.conj(s, x)))),
    )
}

/// Checks that the subgroup `u` is normal, reporting the first generator
/// conjugate that escapes.
pub fn check_normal<G: FiniteGroup + ?Sized>(g: &G, u: &ElemSet) -> Result<()> {
    let ug = generating_set(g, u);
    for s in g.generators() {
        for &x in &ug {
            if !u.contains(g.conj(x, s)) {
                return Err(Error::NotNormal { element: x, by: s });
            }
        }
    }
    Ok(())
}

pub fn is_normal<G: FiniteGroup + ?Sized>(g: &G, u: &ElemSet) -> bool {
    check_normal(g, u).is_ok()
}

/// Smallest normal subgroup of `G` containing `set`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, set: &ElemSet) -> ElemSet {
    normal_closure_under(g, &g.generators(), set)
}

/// Smallest subgroup containing `set` and invariant under conjugation by
/// `conjugators`.
pub fn normal_closure_under<G: FiniteGroup + ?Sized>(
    g: &G,
    conjugators: &[usize],
    set: &ElemSet,
) -> ElemSet {
    let mut n = closure(g, set.as_slice());
    loop {
        let ng = generating_set(g, &n);
        let escape = conjugators.iter().find_map(|&s| {
            ng.iter()
                .map(|&x| g.conj(x, s))
                .find(|&y| !n.contains(y))
        });
        match escape {
            Some(y) => n = extend_closure(g, &n, &ng, &[y]),
            None => return n,
        }
    }
}

/// `[A, B] = ⟨[a, b]⟩` for subgroups that normalize each other, computed as
/// the normal closure under `⟨A, B⟩` of generator commutators.
pub fn commutator_subgroup<G: FiniteGroup + ?Sized>(g: &G, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let ga = generating_set(g, a);
    let gb = generating_set(g, b);
    let comms: Vec<usize> = ga
        .iter()
        .flat_map(|&x| gb.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.comm(x, y))
        .collect();
    let mut conj = ga.clone();
    conj.extend_from_slice(&gb);
    normal_closure_under(g, &conj, &ElemSet::from_indices(g.order(), comms))
}

/// Derived subgroup `D'` of the subgroup `D`.
pub fn derived_subgroup<G: FiniteGroup + ?Sized>(g: &G, d: &ElemSet) -> ElemSet {
    commutator_subgroup(g, d, d)
}

/// `G = G⁰ ≥ G' ≥ G'' ≥ …` until it stabilizes.
pub fn derived_series<G: FiniteGroup + ?Sized>(g: &G) -> Vec<ElemSet> {
    let mut series = alloc::vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(g, last);
        if next.len() == last.len() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble<G: FiniteGroup + ?Sized>(g: &G) -> bool {
    derived_series(g).last().unwrap().len() == 1
}

/// Largest normal subgroup of `G` inside `H`: `⋂ H^g`.
pub fn core<G: FiniteGroup + ?Sized>(g: &G, h: &ElemSet) -> ElemSet {
    let gens = g.generators();
    let mut c = h.clone();
    loop {
        let mut next = c.clone();
        for &s in &gens {
            next = next.intersection(&conjugate_set(g, &c, s));
        }
        if next.len() == c.len() {
            return c;
        }
        c = next;
    }
}

/// A Sylow `p`-subgroup, grown one step at a time inside normalizers: while
/// `N_G(P)/P` has an element of order `p`, adjoin the least such preimage.
pub fn sylow<G: FiniteGroup + ?Sized>(g: &G, p: usize) -> ElemSet {
    let mut sub = g.trivial();
    loop {
        let n = normalizer(g, &sub);
        let step = n
            .iter()
            .find(|&x| !sub.contains(x) && sub.contains(g.pow(x, p)));
        match step {
            Some(x) => sub = join_element(g, &sub, x),
            None => return sub,
        }
    }
}

pub fn sylow2<G: FiniteGroup + ?Sized>(g: &G) -> ElemSet {
    sylow(g, 2)
}

/// `O_p(G)`: intersection of all conjugates of a Sylow `p`-subgroup.
pub fn o_p<G: FiniteGroup + ?Sized>(g: &G, p: usize) -> ElemSet {
    core(g, &sylow(g, p))
}

pub fn o2<G: FiniteGroup + ?Sized>(g: &G) -> ElemSet {
    o_p(g, 2)
}

/// `O_{p'}(G)`: generated by the elements whose normal closure has order
/// prime to `p`.
pub fn o_p_prime<G: FiniteGroup + ?Sized>(g: &G, p: usize) -> ElemSet {
    let mut acc = g.trivial();
    for class in conjugacy_classes(g) {
        let x = class.first().unwrap();
        if acc.contains(x) || g.element_order(x) % p == 0 {
            continue;
        }
        let ncl = normal_closure(g, &ElemSet::from_indices(g.order(), [x]));
        if ncl.len() % p != 0 {
            acc = join(g, &acc, &ncl);
        }
    }
    acc
}

/// `O^p(G)`: generated by the elements of order prime to `p`.
pub fn o_upper_p<G: FiniteGroup + ?Sized>(g: &G, p: usize) -> ElemSet {
    let gens: Vec<usize> = (0..g.order())
        .filter(|&x| g.element_order(x) % p != 0)
        .collect();
    closure(g, &gens)
}

/// Fitting subgroup: the product of `O_p(G)` over primes dividing `|G|`.
pub fn fitting<G: FiniteGroup + ?Sized>(g: &G) -> ElemSet {
    let mut acc = g.trivial();
    for p in prime_factors(g.order()) {
        acc = join(g, &acc, &o_p(g, p));
    }
    acc
}

pub fn involutions<G: FiniteGroup + ?Sized>(g: &G) -> Vec<usize> {
    (1..g.order()).filter(|&x| g.mul(x, x) == 0).collect()
}

/// Multiset of element orders as sorted `(order, count)` pairs.
pub fn order_profile<G: FiniteGroup + ?Sized>(g: &G) -> Vec<(usize, usize)> {
    let mut orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    orders.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for o in orders {
        match out.last_mut() {
            Some((v, c)) if *v == o => *c += 1,
            _ => out.push((o, 1)),
        }
    }
    out
}

pub fn is_power_of(mut n: usize, p: usize) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_two_power(n: usize) -> bool {
    n.is_power_of_two()
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
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

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<usize> = (0..n).collect();
        group(n, &[&[&[0, 1]], &[&cyc]])
    }

    fn d8() -> PermGroup {
        group(4, &[&[&[1, 3]], &[&[0, 1], &[2, 3]]])
    }

    /// All subgroups by brute-force closure of every subset of size ≤ 2.
    fn brute_normal_subgroups(g: &PermGroup) -> Vec<ElemSet> {
        let n = g.order();
        let mut out: Vec<ElemSet> = Vec::new();
        for a in 0..n {
            for b in a..n {
                let s = closure(g, &[a, b]);
                if !out.contains(&s) && (0..n).all(|x| s.iter().all(|y| s.contains(g.conj(y, x)))) {
                    out.push(s);
                }
            }
        }
        out
    }

    #[test]
    fn derived_series_of_sym4() {
        let g = sym(4);
        let orders: Vec<usize> = derived_series(&g).iter().map(ElemSet::len).collect();
        assert_eq!(orders, [24, 12, 4, 1]);
        assert!(is_soluble(&g));
        assert!(!is_soluble(&sym(5)));
    }

    #[test]
    fn o2_examples() {
        assert_eq!(o2(&d8()).len(), 8);
        assert_eq!(o2(&sym(3)).len(), 1);
        let s4 = sym(4);
        let v4 = o2(&s4);
        assert_eq!(v4.len(), 4);
        // the Klein four-group of double transpositions
        for x in v4.iter().skip(1) {
            let p = s4.element(x);
            assert_eq!(p.order(), 2);
            assert!((0..4).all(|i| !p.fixes(i)));
        }
    }

    #[test]
    fn o2_contains_every_normal_two_subgroup() {
        for g in [sym(3), sym(4), d8()] {
            let o = o2(&g);
            assert!(is_normal(&g, &o));
            assert!(is_two_power(o.len()));
            for n in brute_normal_subgroups(&g) {
                if is_two_power(n.len()) {
                    assert!(n.is_subset(&o));
                }
            }
        }
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow2(&sym(3)).len(), 2);
        assert_eq!(sylow2(&sym(4)).len(), 8);
        assert_eq!(sylow(&sym(5), 5).len(), 5);
        assert_eq!(sylow(&sym(6), 3).len(), 9);
    }

    #[test]
    fn core_and_centralizer() {
        let s3 = sym(3);
        let t = s3.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = closure(&s3, &[t]);
        assert!(core(&s3, &h).is_trivial());

        let g = d8();
        let z = center(&g);
        assert_eq!(z.len(), 2);
        let central = z.as_slice()[1];
        assert_eq!(centralizer_of_element(&g, central).len(), 8);
    }

    #[test]
    fn core_is_largest_normal_subgroup_inside() {
        let g = sym(4);
        for h in crate::group::all_subgroups(&g, 10_000).unwrap() {
            let c = core(&g, &h);
            let best = brute_normal_subgroups(&g)
                .into_iter()
                .filter(|n| n.is_subset(&h))
                .max_by_key(ElemSet::len)
                .unwrap();
            assert_eq!(c, best);
        }
    }

    #[test]
    fn o_p_prime_and_fitting() {
        // Sym(3) × C3 acting on 6 points: O_{2'} is the 3×3 part
        let g = group(6, &[&[&[0, 1]], &[&[0, 1, 2]], &[&[3, 4, 5]]]);
        assert_eq!(g.order(), 18);
        assert_eq!(o_p_prime(&g, 2).len(), 9);
        assert_eq!(fitting(&g).len(), 9);
        assert_eq!(fitting(&sym(4)).len(), 4);
        assert_eq!(o_upper_p(&sym(4), 2).len(), 12);
    }

    #[test]
    fn conjugacy_classes_of_sym4() {
        let mut sizes: Vec<usize> = conjugacy_classes(&sym(4)).iter().map(ElemSet::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 3, 6, 6, 8]);
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(prime_factors(120), [2, 3, 5]);
        assert!(is_power_of(81, 3));
        assert!(!is_power_of(12, 2));
    }
}
