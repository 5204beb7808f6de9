use alloc::vec::Vec;

use hashbrown::HashSet;

use super::{closure, conjugacy_classes, conjugate_set, join, join_element, normal_closure, ElemSet, FiniteGroup};
use crate::error::{Error, Result};

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Least member in [`ElemSet`] order.
    pub rep: ElemSet,
    pub members: Vec<ElemSet>,
}

/// Cyclic subgroups, each with its least generator.
fn cyclic_subgroups<G: FiniteGroup + ?Sized>(g: &G) -> Vec<(usize, ElemSet)> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut out = Vec::new();
    for x in 1..g.order() {
        let c = closure(g, &[x]);
        if seen.insert(c.clone()) {
            out.push((x, c));
        }
    }
    out
}

/// Every subgroup, by joining cyclic subgroups one at a time. Fails with
/// `SizeLimit` once more than `limit` subgroups are found.
pub fn all_subgroups<G: FiniteGroup + ?Sized>(g: &G, limit: usize) -> Result<Vec<ElemSet>> {
    let cyclic = cyclic_subgroups(g);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut found = alloc::vec![g.trivial()];
    seen.insert(g.trivial());
    let mut i = 0;
    while i < found.len() {
        let u = found[i].clone();
        for (x, _) in &cyclic {
            if u.contains(*x) {
                continue;
            }
            let v = join_element(g, &u, *x);
            if seen.insert(v.clone()) {
                if found.len() >= limit {
                    return Err(Error::SizeLimit {
                        what: "subgroup count",
                        found: found.len() + 1,
                        limit,
                    });
                }
                found.push(v);
            }
        }
        i += 1;
    }
    found.sort();
    Ok(found)
}

/// Every subgroup containing `h`.
pub fn overgroups<G: FiniteGroup + ?Sized>(g: &G, h: &ElemSet, limit: usize) -> Result<Vec<ElemSet>> {
    let cyclic = cyclic_subgroups(g);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(h.clone());
    let mut found = alloc::vec![h.clone()];
    let mut i = 0;
    while i < found.len() {
        let u = found[i].clone();
        for (x, _) in &cyclic {
            if u.contains(*x) {
                continue;
            }
            let v = join_element(g, &u, *x);
            if seen.insert(v.clone()) {
                if found.len() >= limit {
                    return Err(Error::SizeLimit {
                        what: "overgroup count",
                        found: found.len() + 1,
                        limit,
                    });
                }
                found.push(v);
            }
        }
        i += 1;
    }
    found.sort();
    Ok(found)
}

/// Every normal subgroup, as joins of normal closures of class
/// representatives; sorted by order, then by element set.
pub fn normal_subgroups<G: FiniteGroup + ?Sized>(g: &G, limit: usize) -> Result<Vec<ElemSet>> {
    let atoms: Vec<ElemSet> = conjugacy_classes(g)
        .iter()
        .skip(1)
        .map(|c| normal_closure(g, &ElemSet::from_indices(g.order(), [c.first().unwrap()])))
        .collect();
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(g.trivial());
    let mut found = alloc::vec![g.trivial()];
    let mut i = 0;
    while i < found.len() {
        let u = found[i].clone();
        for a in &atoms {
            if a.is_subset(&u) {
                continue;
            }
            let v = join(g, &u, a);
            if seen.insert(v.clone()) {
                if found.len() >= limit {
                    return Err(Error::SizeLimit {
                        what: "normal subgroup count",
                        found: found.len() + 1,
                        limit,
                    });
                }
                found.push(v);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// Groups `subgroups` (assumed closed under conjugation) into conjugacy
/// classes, ordered by representative.
pub fn subgroup_classes<G: FiniteGroup + ?Sized>(g: &G, subgroups: &[ElemSet]) -> Vec<SubgroupClass> {
    let gens = g.generators();
    let mut assigned: HashSet<ElemSet> = HashSet::new();
    let mut classes = Vec::new();
    for s in subgroups {
        if assigned.contains(s) {
            continue;
        }
        let mut members = alloc::vec![s.clone()];
        assigned.insert(s.clone());
        let mut i = 0;
        while i < members.len() {
            let cur = members[i].clone();
            for &x in &gens {
                let c = conjugate_set(g, &cur, x);
                if assigned.insert(c.clone()) {
                    members.push(c);
                }
            }
            i += 1;
        }
        members.sort();
        classes.push(SubgroupClass {
            rep: members[0].clone(),
            members,
        });
    }
    classes.sort_by(|a, b| a.rep.cmp(&b.rep));
    classes
}
