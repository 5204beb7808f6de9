use alloc::vec::Vec;

use super::{check_normal, ElemSet, FiniteGroup, Generators, PermGroup};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Above this degree·order product the regular coset action is refused.
const REGULAR_ACTION_LIMIT: usize = 1 << 24;

/// `G/N` as a permutation group, with the element-level projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// `proj[g]` is the index of `gN` in `group`.
    pub proj: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.group.order(), set.iter().map(|x| self.proj[x]))
    }

    /// Full preimage of a subset of the quotient.
    pub fn preimage(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.proj.len(),
            (0..self.proj.len()).filter(|&g| set.contains(self.proj[g])),
        )
    }

    pub fn kernel(&self) -> ElemSet {
        self.preimage(&ElemSet::from_indices(self.group.order(), [0]))
    }
}

/// `G/N` for a normal subgroup `N` of a permutation group.
///
/// Tries the action on `N`-orbits first (small degree, faithful whenever its
/// kernel is exactly `N`) and otherwise falls back to the action on right
/// cosets of `N`.
pub fn quotient(g: &PermGroup, n: &ElemSet) -> Result<Quotient> {
    check_normal(g, n)?;
    if n.len() == 1 {
        return Ok(Quotient {
            group: g.clone(),
            proj: (0..g.order()).collect(),
        });
    }
    if let Some(q) = orbit_action_quotient(g, n)? {
        return Ok(q);
    }
    quotient_generic(g, n)
}

fn orbit_action_quotient(g: &PermGroup, n: &ElemSet) -> Result<Option<Quotient>> {
    let degree = g.degree();
    let (ngroup, _) = g.subgroup(n);
    let mut block = alloc::vec![usize::MAX; degree];
    let mut blocks = 0;
    for p in 0..degree {
        if block[p] == usize::MAX {
            for q in ngroup.orbit(p) {
                block[q] = blocks;
            }
            blocks += 1;
        }
    }
    if blocks == 1 {
        return Ok(None);
    }
    let mut reps = alloc::vec![usize::MAX; blocks];
    for p in (0..degree).rev() {
        reps[block[p]] = p;
    }
    let induced = |x: usize| -> Perm {
        let perm = g.element(x);
        Perm::from_images_unchecked(
            reps.iter().map(|&r| block[perm.apply(r)] as u32).collect(),
        )
    };
    let gens: Vec<Perm> = g.generators().into_iter().map(induced).collect();
    let image = Generators::new(blocks, gens)?.materialize(g.order())?;
    if image.order() * n.len() != g.order() {
        return Ok(None);
    }
    let proj = (0..g.order())
        .map(|x| image.index_of(&induced(x)).expect("induced element lies in the image"))
        .collect();
    Ok(Some(Quotient { group: image, proj }))
}

/// `G/N` through the regular action on right cosets `Nx`.
pub fn quotient_generic<G: FiniteGroup + ?Sized>(g: &G, n: &ElemSet) -> Result<Quotient> {
    check_normal(g, n)?;
    let order = g.order();
    let m = order / n.len();
    if m.saturating_mul(m) > REGULAR_ACTION_LIMIT {
        return Err(Error::SizeLimit {
            what: "quotient order squared",
            found: m.saturating_mul(m),
            limit: REGULAR_ACTION_LIMIT,
        });
    }
    let mut coset = alloc::vec![usize::MAX; order];
    let mut reps = Vec::with_capacity(m);
    for x in 0..order {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for y in n.iter() {
            coset[g.mul(y, x)] = id;
        }
    }
    debug_assert_eq!(reps.len(), m);
    let action = |x: usize| -> Perm {
        Perm::from_images_unchecked(reps.iter().map(|&r| coset[g.mul(r, x)] as u32).collect())
    };
    let gens: Vec<Perm> = g.generators().into_iter().map(action).collect();
    let group = Generators::new(m, gens)?.materialize(m.max(1))?;
    // the action is regular: an element is determined by where it sends coset 0
    let mut by_target = alloc::vec![0usize; m];
    for q in 0..group.order() {
        by_target[group.element(q).apply(0)] = q;
    }
    let proj = (0..order).map(|x| by_target[coset[x]]).collect();
    Ok(Quotient { group, proj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center, fingerprint_isomorphic, o2, IsoVerdict, DEFAULT_CAP};

    fn group(degree: usize, cycles: &[&[&[usize]]]) -> PermGroup {
        let perms = cycles
            .iter()
            .map(|c| Perm::from_cycles(degree, c).unwrap())
            .collect();
        Generators::new(degree, perms).unwrap().materialize(DEFAULT_CAP).unwrap()
    }

    fn check_homomorphism(g: &PermGroup, q: &Quotient) {
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(q.proj[g.mul(a, b)], q.group.mul(q.proj[a], q.proj[b]));
            }
        }
    }

    #[test]
    fn d8_mod_center() {
        let g = group(4, &[&[&[1, 3]], &[&[0, 1], &[2, 3]]]);
        let z = center(&g);
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.kernel(), z);
        check_homomorphism(&g, &q);
        let qg = quotient_generic(&g, &z).unwrap();
        assert_eq!(qg.group.order(), 4);
        check_homomorphism(&g, &qg);
    }

    #[test]
    fn sym4_mod_v4_is_sym3() {
        let s4 = group(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        let v4 = o2(&s4);
        for q in [quotient(&s4, &v4).unwrap(), quotient_generic(&s4, &v4).unwrap()] {
            assert_eq!(q.group.order(), 6);
            assert_eq!(q.kernel(), v4);
            check_homomorphism(&s4, &q);
            let s3 = group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
            assert_eq!(fingerprint_isomorphic(&q.group, &s3), IsoVerdict::Yes);
        }
    }

    #[test]
    fn trivial_kernel_keeps_group() {
        let s3 = group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let q = quotient(&s3, &s3.trivial()).unwrap();
        assert_eq!(q.group.order(), 6);
        assert_eq!(q.proj, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn non_normal_is_rejected() {
        let s3 = group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let t = s3.index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap();
        let h = crate::group::closure(&s3, &[t]);
        assert!(matches!(quotient(&s3, &h), Err(Error::NotNormal { .. })));
    }
}
