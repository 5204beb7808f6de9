//! Structure checks: the direct-factor shape of `G/O₂(G)` and minimal
//! nonsoluble subloops.

use alloc::vec::Vec;

use super::{classify_folder, classify_q, make_pgl2, Pgl2, QReading};
use crate::baer::{Folder, Subfolder};
use crate::error::{Error, Result};
use crate::group::{
    centralizer, closure, find_isomorphism, fingerprint_isomorphic, involutions, normal_subgroups, o2,
    product_set, quotient, ElemSet, FiniteGroup, IsoVerdict, PermGroup, DEFAULT_CAP,
};
use crate::loops::Loop;
use crate::report::{Flag, LemmaReport, Value, Witness};

/// Largest `G/O₂(G)` the direct-factor scan accepts.
pub const SHAPE_LIMIT: usize = 10_000;
const NORMAL_LIMIT: usize = 4096;

/// Splits `g` into directly indecomposable normal factors: repeatedly take
/// the smallest nontrivial normal subgroup with a normal complement.
pub(crate) fn direct_factors(g: &PermGroup) -> Result<Vec<ElemSet>> {
    let normals = normal_subgroups(g, NORMAL_LIMIT)?;
    let mut cur = g.whole();
    let mut factors = Vec::new();
    while cur.len() > 1 {
        let inside: Vec<&ElemSet> = normals.iter().filter(|n| n.is_subset(&cur)).collect();
        let mut split = None;
        'search: for n in inside.iter().skip(1) {
            if n.len() == cur.len() {
                split = Some(((*n).clone(), g.trivial()));
                break;
            }
            for m in &inside {
                if m.len() * n.len() == cur.len() && m.intersection(n).is_trivial() {
                    split = Some(((*n).clone(), (*m).clone()));
                    break 'search;
                }
            }
        }
        let (n, m) = split.expect("the whole group is its own factor");
        factors.push(n);
        cur = m;
    }
    Ok(factors)
}

/// `q` with `q(q² − 1) = order`, for `q` prime or `9`.
fn pgl2_q(order: usize) -> Option<u64> {
    (2u64..=64)
        .find(|&q| (q * (q * q - 1)) as usize == order && (super::is_prime(q) || q == 9))
}

/// One factor matched against `PGL₂(q)`, with the Borel test on `h ∩ D`.
fn match_factor(g: &PermGroup, d: &ElemSet, h: &ElemSet) -> Result<Witness> {
    let mut w = Witness::new().with("order", d.len());
    let Some(q) = pgl2_q(d.len()) else {
        return Ok(w.with("pgl2", false));
    };
    let pgl: Pgl2 = make_pgl2(q, DEFAULT_CAP)?;
    let (dg, embed) = g.subgroup(d);
    match fingerprint_isomorphic(&dg, &pgl.group) {
        IsoVerdict::No => return Ok(w.with("pgl2", false)),
        IsoVerdict::Unknown => return Err(Error::Undecided("factor isomorphism type")),
        IsoVerdict::Yes => {}
    }
    w.push("pgl2", true);
    w.push("q", q);
    w.push("q_admissible", classify_q(q, QReading::PrimePower).admitted());
    let map = find_isomorphism(&dg, &pgl.group).ok_or(Error::Internal("fingerprint match without map"))?;
    let hd: Vec<usize> = (0..dg.order()).filter(|&i| h.contains(embed[i])).collect();
    let borel_order = hd.len() == (q * (q - 1)) as usize;
    let fixes_point = (0..=q as usize).any(|p| hd.iter().all(|&i| pgl.group.element(map[i]).fixes(p)));
    w.push("h_meet_order", hd.len());
    w.push("borel", borel_order && fixes_point);
    Ok(w)
}

fn wbool(w: &Witness, key: &str) -> bool {
    matches!(w.get(key), Some(Value::Bool(true)))
}

/// Conclusions (1)–(4) for `Ḡ = G/O₂(G)` with factors `Dᵢ`, `H̄ = HO₂/O₂`.
pub(crate) fn shape_of_quotient(bar: &PermGroup, h_bar: &ElemSet) -> Result<Witness> {
    if bar.order() > SHAPE_LIMIT {
        return Err(Error::Undecided("G/O₂(G) above the direct-factor limit"));
    }
    let factors = direct_factors(bar)?;
    let mut reports = Vec::new();
    for d in &factors {
        reports.push(match_factor(bar, d, h_bar)?);
    }
    let c1 = reports.iter().all(|w| wbool(w, "pgl2"));
    let c2 = c1 && reports.iter().all(|w| wbool(w, "q_admissible"));
    let c3 = c1 && reports.iter().all(|w| wbool(w, "borel"));
    Ok(Witness::new()
        .with("e", factors.len())
        .with("factors", reports.into_iter().map(Value::Map).collect::<Vec<_>>())
        .with("direct_product_of_pgl2", c1)
        .with("q_admissible", c2)
        .with("borel_meets", c3))
}

/// Theorem 1's four structural conclusions on a BX2P-envelope.
pub fn check_theorem1_shape(f: &Folder) -> Result<LemmaReport> {
    const ID: &str = "theorem1_shape";
    let class = classify_folder(f);
    if !class.is_bx2p() {
        return Ok(LemmaReport::inapplicable(ID, "not a BX2P-folder"));
    }
    if !class.envelope.holds {
        return Ok(LemmaReport::inapplicable(ID, "G ≠ ⟨K⟩"));
    }
    let g = f.group();
    let o = o2(g);
    let c4 = centralizer(g, &o).is_subset(&o);
    let bar = quotient(g, &o)?;
    let h_bar = bar.image(f.h());
    let w = shape_of_quotient(&bar.group, &h_bar)?;
    let pass = c4 && ["direct_product_of_pgl2", "q_admissible", "borel_meets"]
        .iter()
        .all(|k| wbool(&w, k));
    Ok(LemmaReport::verdict(ID, pass, w.with("fstar_is_o2", c4)))
}

/// Bruck, 2-power exponent, not soluble, every proper subloop soluble.
pub fn is_2m_loop(l: &Loop) -> Result<Flag> {
    let subs = l.all_subloops()?;
    if !l.is_bruck() {
        return Ok(Flag::no(Witness::new().with("reason", "not a Bruck loop")));
    }
    let orders = l.element_orders()?;
    if let Some(x) = orders.iter().position(|o| !o.is_power_of_two()) {
        return Ok(Flag::no(
            Witness::new().with("reason", "exponent is not a 2-power").with("element", x),
        ));
    }
    if l.is_soluble_loop()? {
        return Ok(Flag::no(Witness::new().with("reason", "soluble")));
    }
    for s in subs.iter().filter(|s| s.len() < l.order()) {
        if !l.restrict(s).is_soluble_loop()? {
            return Ok(Flag::no(
                Witness::new()
                    .with("reason", "nonsoluble proper subloop")
                    .with("subloop", s.as_slice()),
            ));
        }
    }
    Ok(Flag::yes_with(Witness::new().with("proper_subloops", subs.len() - 1)))
}

#[derive(Clone, Debug)]
pub struct TwoMSubfolder {
    pub subfolder: Subfolder,
    /// Loop elements of the 2M-subloop.
    pub subloop: ElemSet,
    pub q: Option<u64>,
    pub checks: Witness,
    pub all_hold: bool,
}

/// For a BX2P-folder with `G ≠ O₂(G)H`: descend through nonsoluble
/// subloops to a 2M-subloop `Y` and return `U = ⟨κ⁻¹(Y)⟩` with its
/// properties checked. `None` when the hypotheses fail.
pub fn find_2m_subfolder(f: &Folder) -> Result<Option<TwoMSubfolder>> {
    let g = f.group();
    if !classify_folder(f).is_bx2p() {
        return Ok(None);
    }
    let o = o2(g);
    if product_set(g, &o, f.h()).len() == g.order() {
        return Ok(None);
    }
    let x = f.to_loop()?;
    let subs = x.all_subloops()?;
    let mut nonsoluble = Vec::new();
    for s in &subs {
        if !x.restrict(s).is_soluble_loop()? {
            nonsoluble.push(s.clone());
        }
    }
    let mut cur = nonsoluble.last().cloned().ok_or(Error::NotFound("nonsoluble subloop"))?;
    // subloops are sorted by size, so the first proper one found is minimal
    while let Some(next) = nonsoluble.iter().find(|s| s.len() < cur.len() && s.is_subset(&cur)) {
        cur = next.clone();
    }
    let y = cur;
    let ks: Vec<usize> = y.iter().map(|l| f.k()[l]).collect();
    let u = closure(g, &ks);
    let sub = f
        .detect_subfolder(&u)
        .ok_or(Error::NotFound("subfolder over the 2M-subloop"))?;
    let mut w = Witness::new().with("u_order", u.len());
    let mut ok = true;
    let mut check = |w: &mut Witness, key: &'static str, v: bool| {
        ok &= v;
        w.push(key, v);
    };
    let uk: Vec<usize> = f.k().iter().copied().filter(|&k| u.contains(k)).collect();
    check(&mut w, "generated_by_u_meet_k", closure(g, &uk) == u);
    check(&mut w, "is_2m", is_2m_loop(&sub.folder.to_loop()?)?.holds);
    let ug = sub.folder.group();
    let o2u = o2(ug);
    check(&mut w, "fstar_is_o2", centralizer(ug, &o2u).is_subset(&o2u));
    let bar = quotient(ug, &o2u)?;
    let mut q_found = None;
    if let Some(q) = pgl2_q(bar.group.order()) {
        let pgl = make_pgl2(q, DEFAULT_CAP)?;
        let iso = fingerprint_isomorphic(&bar.group, &pgl.group);
        check(&mut w, "quotient_is_pgl2", iso == IsoVerdict::Yes);
        check(&mut w, "q_admissible", classify_q(q, QReading::PrimePower).admitted());
        let o2h = product_set(ug, &o2u, sub.folder.h());
        check(&mut w, "index_q_plus_one", ug.order() / o2h.len() == (q + 1) as usize);
        if let Some(map) = find_isomorphism(&bar.group, &pgl.group) {
            let kbar = bar.image(&sub.folder.k_set());
            let outside: ElemSet = ElemSet::from_indices(
                pgl.group.order(),
                involutions(&pgl.group).into_iter().filter(|&i| !pgl.psl.contains(i)).chain([0]),
            );
            let mapped = ElemSet::from_indices(pgl.group.order(), kbar.iter().map(|i| map[i]));
            check(&mut w, "kbar_outer_involutions", mapped == outside);
        }
        q_found = Some(q);
    } else {
        check(&mut w, "quotient_is_pgl2", false);
    }
    Ok(Some(TwoMSubfolder {
        subfolder: sub,
        subloop: y,
        q: q_found,
        checks: w,
        all_hold: ok,
    }))
}
