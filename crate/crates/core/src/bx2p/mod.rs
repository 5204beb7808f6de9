//! Bruck and BX2P classification, the lemma audit, the Heiss counting
//! identity, admissible field sizes, `PGL₂(q)` and the structure checks.

mod pgl2;
mod shape;
mod suite;

use alloc::vec::Vec;

use serde::Serialize;

use crate::baer::{Folder, FolderClass};
use crate::error::{Error, Result};
use crate::group::{check_normal, o2, quotient, quotient_generic, ElemSet, FiniteGroup};
use crate::report::{Flag, LemmaReport, Witness};
use crate::twisted::{build_gplus, extend_tau_bruck, is_twisted_subgroup, ExtGroup};

pub use pgl2::{
    classify_q, is_prime, make_pgl2, prime_power, q_sieve, Exclusion, Field, Pgl2, QClass,
    QReading, QVerdict,
};
pub use shape::{check_theorem1_shape, find_2m_subfolder, is_2m_loop, TwoMSubfolder};
pub use suite::{lemma_suite, LEMMA_IDS};

/// Full classification along folder → Bol → A_r → Bruck → BX2P.
/// Witnesses name K elements by their `κ`-label.
pub fn classify_folder(f: &Folder) -> FolderClass {
    let mut c = f.verify();
    if !c.folder.holds {
        let no = || Flag::no(Witness::new().with("reason", "not a loop folder"));
        c.bol = Some(no());
        c.ar = Some(no());
        c.bruck = Some(no());
        c.bx2p = Some(no());
        return c;
    }
    let g = f.group();
    let k = f.k_set();
    let label = |x: usize| f.k().iter().position(|&y| y == x).unwrap();

    let tv = is_twisted_subgroup(g, &k);
    let bol = match tv.witness {
        _ if tv.is_twisted => Flag::yes(),
        Some((x, y)) => Flag::no(
            Witness::new()
                .with("x", label(x))
                .with("y", label(y))
                .with("xyx", g.mul(g.mul(x, y), x)),
        ),
        None => Flag::no(Witness::new().with("reason", "identity not in K")),
    };

    let mut ar = Flag::yes();
    'ar: for h in f.h().iter() {
        for x in k.iter() {
            let c = g.conj(x, h);
            if !k.contains(c) {
                ar = Flag::no(Witness::new().with("h", h).with("k", label(x)).with("k^h", c));
                break 'ar;
            }
        }
    }

    let aip = match f.to_loop().map(|l| l.check_aip()) {
        Ok(Ok(Ok(()))) => Ok(()),
        Ok(Ok(Err((x, y)))) => Err(Witness::new().with("aip_fails", alloc::vec![x, y])),
        Ok(Err(_)) => Err(Witness::new().with("reason", "no two-sided inverses")),
        Err(_) => Err(Witness::new().with("reason", "loop reconstruction failed")),
    };
    let bruck = match (&bol.holds, &ar.holds, aip) {
        (true, true, Ok(())) => Flag::yes(),
        (false, _, _) => Flag::no(Witness::new().with("failed", "bol")),
        (_, false, _) => Flag::no(Witness::new().with("failed", "ar")),
        (_, _, Err(w)) => Flag::no(w.with("failed", "aip")),
    };

    let bx2p = if !bruck.holds {
        Flag::no(Witness::new().with("failed", "bruck"))
    } else {
        match f
            .k()
            .iter()
            .enumerate()
            .find(|&(_, &x)| !g.element_order(x).is_power_of_two())
        {
            None => Flag::yes(),
            Some((l, &x)) => Flag::no(
                Witness::new()
                    .with("k", l)
                    .with("order", g.element_order(x)),
            ),
        }
    };
    debug_assert!(!bx2p.holds || bruck.holds);
    debug_assert!(!bruck.holds || (bol.holds && ar.holds));
    c.bol = Some(bol);
    c.ar = Some(ar);
    c.bruck = Some(bruck);
    c.bx2p = Some(bx2p);
    c
}

fn flag(c: &Option<Flag>) -> bool {
    c.as_ref().is_some_and(|f| f.holds)
}

impl FolderClass {
    pub fn is_bruck(&self) -> bool {
        flag(&self.bruck)
    }

    pub fn is_bx2p(&self) -> bool {
        flag(&self.bx2p)
    }

    pub fn is_bol(&self) -> bool {
        flag(&self.bol)
    }

    pub fn is_ar(&self) -> bool {
        flag(&self.ar)
    }
}

/// `τ` and `G⁺` for a Bruck folder.
pub fn gplus(f: &Folder) -> Result<ExtGroup<'_, crate::group::PermGroup>> {
    let tau = extend_tau_bruck(f)?;
    build_gplus(f, tau)
}

/// `τ ∈ O₂(G⁺)` against "every element of K has 2-power order", each side
/// computed on its own.
pub fn check_bx2p_tau(f: &Folder) -> Result<LemmaReport> {
    const ID: &str = "BX2P_tau";
    if !classify_folder(f).is_bruck() {
        return Ok(LemmaReport::inapplicable(ID, "not a Bruck folder"));
    }
    let ext = gplus(f)?;
    let o2_plus = o2(&ext);
    let structural = o2_plus.contains(ext.tau_element());
    let g = f.group();
    let orders = f.k().iter().all(|&x| g.element_order(x).is_power_of_two());
    let w = Witness::new()
        .with("tau_in_o2_plus", structural)
        .with("k_two_power_orders", orders)
        .with("o2_plus_order", o2_plus.len());
    Ok(LemmaReport::verdict(ID, structural == orders, w))
}

/// `k² ∈ O₂(G)` and `K̄ − {1}` a union of classes of involutions of
/// `G/O₂(G)`.
pub fn kbar_check(f: &Folder) -> Result<LemmaReport> {
    const ID: &str = "overlineK";
    if !classify_folder(f).is_bx2p() {
        return Ok(LemmaReport::inapplicable(ID, "not a BX2P-folder"));
    }
    let g = f.group();
    let o = o2(g);
    let mut w = Witness::new().with("o2_order", o.len());
    if let Some(l) = f.k().iter().position(|&x| !o.contains(g.mul(x, x))) {
        return Ok(LemmaReport::verdict(ID, false, w.with("k_square_outside_o2", l)));
    }
    let bar = quotient(g, &o)?;
    let kbar = bar.image(&f.k_set());
    w.push("kbar_size", kbar.len());
    for x in kbar.iter().skip(1) {
        if bar.group.mul(x, x) != 0 {
            return Ok(LemmaReport::verdict(ID, false, w.with("non_involution", x)));
        }
        for s in bar.group.generators() {
            if !kbar.contains(bar.group.conj(x, s)) {
                return Ok(LemmaReport::verdict(
                    ID,
                    false,
                    w.with("not_class_closed", alloc::vec![x, s]),
                ));
            }
        }
    }
    Ok(LemmaReport::verdict(ID, true, w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeissOrbit {
    /// `κ`-label of the least `k` whose `τk` lies over the orbit.
    pub rep: usize,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeissData {
    pub n0: usize,
    pub orbits: Vec<HeissOrbit>,
    /// `n₀ + Σ nᵢmᵢ`.
    pub total: usize,
    pub k_size: usize,
}

impl HeissData {
    pub fn holds(&self) -> bool {
        self.total == self.k_size
    }
}

/// Orbits of `G/N` on the nontrivial images of `Λ` in `G⁺/N⁺`. Each `nᵢ`
/// is counted at the representative only, so the identity is a real check.
pub fn heiss_decomposition(f: &Folder, n: &ElemSet) -> Result<HeissData> {
    let g = f.group();
    if !classify_folder(f).is_bx2p() {
        return Err(Error::NotBruckFolder("not a BX2P-folder"));
    }
    if check_normal(g, n).is_err() {
        return Err(Error::BadN("N is not normal in G"));
    }
    if !o2(g).is_subset(n) {
        return Err(Error::BadN("O₂(G) is not contained in N"));
    }
    let ext = gplus(f)?;
    let n_plus = ElemSet::from_indices(ext.order(), n.iter().flat_map(|x| [2 * x, 2 * x + 1]));
    if check_normal(&ext, &n_plus).is_err() {
        return Err(Error::Internal("N⁺ is not normal in G⁺"));
    }
    let q = quotient_generic(&ext, &n_plus)?;
    // λ = τk is stored as (k⁻¹, 1)
    let lambda: Vec<usize> = f.k().iter().map(|&x| 2 * g.inv(x) + 1).collect();
    let images: Vec<usize> = lambda.iter().map(|&l| q.proj[l]).collect();
    let n0 = images.iter().filter(|&&i| i == 0).count();
    let gens: Vec<usize> = g.generators().iter().map(|&s| q.proj[2 * s]).collect();
    let mut orbit_of = alloc::vec![usize::MAX; q.group.order()];
    let mut orbits = Vec::new();
    for (label, &img) in images.iter().enumerate() {
        if img == 0 || orbit_of[img] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = alloc::vec![img];
        orbit_of[img] = id;
        let mut i = 0;
        while i < members.len() {
            for &s in &gens {
                let c = q.group.conj(members[i], s);
                if orbit_of[c] == usize::MAX {
                    orbit_of[c] = id;
                    members.push(c);
                }
            }
            i += 1;
        }
        let n_i = images.iter().filter(|&&j| j == img).count();
        orbits.push(HeissOrbit {
            rep: label,
            m: members.len(),
            n: n_i,
        });
    }
    let total = n0 + orbits.iter().map(|o| o.n * o.m).sum::<usize>();
    Ok(HeissData {
        n0,
        orbits,
        total,
        k_size: f.k().len(),
    })
}

/// `|X| = (q + 1)·n₀` for `q = 2ⁿ + 1`, checked against the second form
/// `n₁·2ⁿ·(2ⁿ⁻¹ + 1)` with `n₀ = n₁·2ⁿ⁻¹`.
pub fn amt_loop_size(q: u64, n0: u64) -> Option<u64> {
    let t = q.checked_sub(1)?;
    if !t.is_power_of_two() || t < 4 || !n0.is_power_of_two() {
        return None;
    }
    let half = t / 2;
    if n0 % half != 0 {
        return None;
    }
    let n1 = n0 / half;
    let a = (q + 1) * n0;
    let b = n1 * t * (half + 1);
    (a == b).then_some(a)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::baer::baer_envelope;
    use crate::baer::tests::{d8_folder, regular_folder};
    use crate::group::DEFAULT_CAP;
    use crate::loops::tests::{elementary_abelian, order5, s3};
    use crate::loops::Loop;

    #[test]
    fn classify_examples() {
        let e = baer_envelope(&elementary_abelian(3), DEFAULT_CAP).unwrap();
        let c = classify_folder(&e);
        assert!(c.is_bx2p() && c.is_bruck() && c.is_bol() && c.is_ar());

        let d = classify_folder(&d8_folder());
        assert!(d.folder.holds && d.is_bol() && !d.is_ar());

        let c3 = classify_folder(&regular_folder(&Loop::cyclic(3)));
        assert!(c3.is_bol() && c3.is_bruck() && !c3.is_bx2p());

        let s = classify_folder(&regular_folder(&s3()));
        assert!(s.is_bol() && s.is_ar() && !s.is_bruck());

        let l5 = classify_folder(&baer_envelope(&order5(), DEFAULT_CAP).unwrap());
        assert!(!l5.is_bol());
    }

    #[test]
    fn bx2p_tau_both_sides() {
        let e = baer_envelope(&elementary_abelian(3), DEFAULT_CAP).unwrap();
        let r = check_bx2p_tau(&e).unwrap();
        assert_eq!(r.pass, Some(true));
        assert_eq!(r.witness.get("tau_in_o2_plus"), Some(&true.into()));
        let c3 = regular_folder(&Loop::cyclic(3));
        let r = check_bx2p_tau(&c3).unwrap();
        assert_eq!(r.pass, Some(true));
        assert_eq!(r.witness.get("tau_in_o2_plus"), Some(&false.into()));
        assert!(!check_bx2p_tau(&d8_folder()).unwrap().applicable);
    }

    #[test]
    fn kbar_on_two_groups() {
        let e = baer_envelope(&Loop::cyclic(4), DEFAULT_CAP).unwrap();
        let r = kbar_check(&e).unwrap();
        assert_eq!(r.pass, Some(true));
        assert_eq!(r.witness.get("kbar_size"), Some(&1usize.into()));
    }

    #[test]
    fn heiss_on_two_group() {
        let e = baer_envelope(&elementary_abelian(3), DEFAULT_CAP).unwrap();
        let whole = e.group().whole();
        let d = heiss_decomposition(&e, &whole).unwrap();
        assert!(d.orbits.is_empty());
        assert_eq!(d.n0, 8);
        assert!(d.holds());
        let c3 = regular_folder(&Loop::cyclic(3));
        assert!(heiss_decomposition(&c3, &c3.group().whole()).is_err());
    }

    #[test]
    fn amt_helper() {
        assert_eq!(amt_loop_size(5, 8), Some(48));
        assert_eq!(amt_loop_size(17, 8), Some(144));
        assert_eq!(amt_loop_size(9, 8), Some(80));
        assert_eq!(amt_loop_size(5, 3), None);
        assert_eq!(amt_loop_size(7, 8), None);
    }
}
