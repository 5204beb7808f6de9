//! Named permutation groups for corpora and examples: every group of order
//! at most 12 and a fixed selection up to order 64.

use alloc::vec::Vec;

use crate::group::Generators;
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: &'static str,
    pub order: usize,
    pub gens: Generators,
}

fn cycles(degree: usize, gens: &[&[&[usize]]]) -> Generators {
    let perms = gens
        .iter()
        .map(|c| Perm::from_cycles(degree, c).expect("catalog cycles"))
        .collect();
    Generators::new(degree, perms).expect("catalog degree")
}

/// `⟨x, y | x^m, y^s = x^t, x^y⁻¹ = x^r⟩` acting on itself; elements
/// `x^i y^j` are numbered `i + m·j`.
fn metacyclic(m: usize, s: usize, r: usize, t: usize) -> Generators {
    let n = m * s;
    let mul = |a: usize, b: usize| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        let mut e = i + k * r.pow(j as u32);
        let mut f = j + l;
        if f >= s {
            f -= s;
            e += t;
        }
        e % m + m * f
    };
    let perms = [1, m]
        .iter()
        .map(|&g| Perm::from_usize(&(0..n).map(|a| mul(a, g)).collect::<Vec<_>>()).unwrap())
        .collect();
    Generators::new(n, perms).unwrap()
}

/// Matrices over `GF(3)` acting on the eight nonzero row vectors.
fn gl23(mats: &[[usize; 4]]) -> Generators {
    let vecs: Vec<(usize, usize)> = (0..9).filter(|&v| v != 0).map(|v| (v % 3, v / 3)).collect();
    let perms = mats
        .iter()
        .map(|&[a, b, c, d]| {
            let img: Vec<usize> = vecs
                .iter()
                .map(|&(x, y)| {
                    let w = ((x * a + y * c) % 3, (x * b + y * d) % 3);
                    vecs.iter().position(|&v| v == w).unwrap()
                })
                .collect();
            Perm::from_usize(&img).unwrap()
        })
        .collect();
    Generators::new(8, perms).unwrap()
}

/// `x ↦ ax + b` over `GF(8) = GF(2)[t]/(t³ + t + 1)`.
fn agl18() -> Generators {
    let mul = |mut a: usize, mut b: usize| {
        let mut p = 0;
        while b > 0 {
            if b & 1 == 1 {
                p ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & 8 != 0 {
                a ^= 0b1011;
            }
        }
        p
    };
    let translate = Perm::from_usize(&(0..8).map(|x| x ^ 1).collect::<Vec<_>>()).unwrap();
    let scale = Perm::from_usize(&(0..8).map(|x| mul(x, 2)).collect::<Vec<_>>()).unwrap();
    Generators::new(8, alloc::vec![translate, scale]).unwrap()
}

fn dihedral(m: usize) -> Generators {
    let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let refl: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
    Generators::new(m, alloc::vec![Perm::from_usize(&rot).unwrap(), Perm::from_usize(&refl).unwrap()]).unwrap()
}

fn cyclic(m: usize) -> Generators {
    let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    Generators::new(m, alloc::vec![Perm::from_usize(&rot).unwrap()]).unwrap()
}

/// Direct product on disjoint points.
fn times(a: Generators, b: Generators) -> Generators {
    let (da, db) = (a.degree(), b.degree());
    let shift = |p: &Perm, off: usize, total: usize| {
        let mut img: Vec<usize> = (0..total).collect();
        for x in 0..p.degree() {
            img[x + off] = p.apply(x) + off;
        }
        Perm::from_usize(&img).unwrap()
    };
    let mut perms: Vec<Perm> = a.perms().iter().map(|p| shift(p, 0, da + db)).collect();
    perms.extend(b.perms().iter().map(|p| shift(p, da, da + db)));
    Generators::new(da + db, perms).unwrap()
}

fn entry(name: &'static str, order: usize, gens: Generators) -> CatalogGroup {
    CatalogGroup { name, order, gens }
}

/// Every group of order at most 12, one per isomorphism type.
pub fn groups_up_to_12() -> Vec<CatalogGroup> {
    let c2 = || cyclic(2);
    alloc::vec![
        entry("C1", 1, Generators::new(1, Vec::new()).unwrap()),
        entry("C2", 2, cyclic(2)),
        entry("C3", 3, cyclic(3)),
        entry("C4", 4, cyclic(4)),
        entry("C2^2", 4, times(c2(), c2())),
        entry("C5", 5, cyclic(5)),
        entry("C6", 6, cyclic(6)),
        entry("S3", 6, dihedral(3)),
        entry("C7", 7, cyclic(7)),
        entry("C8", 8, cyclic(8)),
        entry("C4xC2", 8, times(cyclic(4), c2())),
        entry("C2^3", 8, times(times(c2(), c2()), c2())),
        entry("D8", 8, dihedral(4)),
        entry("Q8", 8, metacyclic(4, 2, 3, 2)),
        entry("C9", 9, cyclic(9)),
        entry("C3^2", 9, times(cyclic(3), cyclic(3))),
        entry("C10", 10, cyclic(10)),
        entry("D10", 10, dihedral(5)),
        entry("C11", 11, cyclic(11)),
        entry("C12", 12, cyclic(12)),
        entry("C6xC2", 12, times(cyclic(6), c2())),
        entry("D12", 12, dihedral(6)),
        entry("A4", 12, cycles(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]])),
        entry("Dic12", 12, metacyclic(6, 2, 5, 3)),
    ]
}

/// A fixed selection of groups of order 13 to 64.
pub fn larger_groups() -> Vec<CatalogGroup> {
    let c2 = || cyclic(2);
    let swap8: &[&[usize]] = &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]];
    alloc::vec![
        entry("C2^4", 16, times(times(c2(), c2()), times(c2(), c2()))),
        entry("D16", 16, dihedral(8)),
        entry("Q16", 16, metacyclic(8, 2, 7, 4)),
        entry("SD16", 16, metacyclic(8, 2, 3, 0)),
        entry("M16", 16, metacyclic(8, 2, 5, 0)),
        entry("C4xC4", 16, times(cyclic(4), cyclic(4))),
        entry("C2xD8", 16, times(dihedral(4), c2())),
        entry("C2xQ8", 16, times(metacyclic(4, 2, 3, 2), c2())),
        entry("D18", 18, dihedral(9)),
        entry("D20", 20, dihedral(10)),
        entry("S4", 24, cycles(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]])),
        entry("SL(2,3)", 24, gl23(&[[1, 1, 0, 1], [1, 0, 1, 1]])),
        entry("C2xA4", 24, times(cycles(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]]), c2())),
        entry("D24", 24, dihedral(12)),
        entry("C2^2xS3", 24, times(dihedral(3), times(c2(), c2()))),
        entry("C2^5", 32, times(times(times(c2(), c2()), times(c2(), c2())), c2())),
        entry("D32", 32, dihedral(16)),
        entry("C2^2wrC2", 32, cycles(8, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]], swap8])),
        entry("C4wrC2", 32, cycles(8, &[&[&[0, 1, 2, 3]], swap8])),
        entry("C2xC2xD8", 32, times(dihedral(4), times(c2(), c2()))),
        entry("S3xS3", 36, times(dihedral(3), dihedral(3))),
        entry("S4xC2", 48, times(cycles(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]), c2())),
        entry("GL(2,3)", 48, gl23(&[[1, 1, 0, 1], [1, 0, 1, 1], [2, 0, 0, 1]])),
        entry("AGL(1,8)", 56, agl18()),
        entry("A5", 60, cycles(5, &[&[&[0, 1, 2]], &[&[0, 1, 2, 3, 4]]])),
        entry("D64", 64, dihedral(32)),
        entry("C2xC2^2wrC2", 64, times(cycles(8, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]], swap8]), c2())),
        entry("C2xC4wrC2", 64, times(cycles(8, &[&[&[0, 1, 2, 3]], swap8]), c2())),
    ]
}

/// [`groups_up_to_12`] followed by [`larger_groups`].
pub fn test_set() -> Vec<CatalogGroup> {
    let mut v = groups_up_to_12();
    v.extend(larger_groups());
    v
}

pub fn by_name(name: &str) -> Option<CatalogGroup> {
    test_set().into_iter().find(|g| g.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center, fingerprint_isomorphic, involutions, is_soluble, FiniteGroup, IsoVerdict, DEFAULT_CAP};

    #[test]
    fn orders_match() {
        for e in test_set() {
            let g = e.gens.materialize(DEFAULT_CAP).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn small_groups_are_pairwise_distinct() {
        let gs: Vec<_> = groups_up_to_12()
            .into_iter()
            .map(|e| e.gens.materialize(DEFAULT_CAP).unwrap())
            .collect();
        for i in 0..gs.len() {
            for j in 0..i {
                if gs[i].order() == gs[j].order() {
                    assert_eq!(fingerprint_isomorphic(&gs[i], &gs[j]), IsoVerdict::No, "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn spot_checks() {
        let q8 = by_name("Q8").unwrap().gens.materialize(DEFAULT_CAP).unwrap();
        assert_eq!(involutions(&q8).len(), 1);
        let q16 = by_name("Q16").unwrap().gens.materialize(DEFAULT_CAP).unwrap();
        assert_eq!(involutions(&q16).len(), 1);
        let sl = by_name("SL(2,3)").unwrap().gens.materialize(DEFAULT_CAP).unwrap();
        assert_eq!(center(&sl).len(), 2);
        let a5 = by_name("A5").unwrap().gens.materialize(DEFAULT_CAP).unwrap();
        assert!(!is_soluble(&a5));
    }
}
