//! The lemma audit: one executable check per statement, gated on its
//! hypotheses.

use alloc::vec::Vec;

use super::{classify_folder, gplus, heiss_decomposition};
use crate::baer::{Folder, FolderClass};
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, center, centralizer, class_of, closure, commutator_subgroup, conjugacy_classes, core,
    fitting, is_soluble, normalizer, o2, o_p_prime, o_upper_p, overgroups, prime_factors, product_set,
    quotient, ElemSet, FiniteGroup, PermGroup, Quotient,
};
use crate::loops::MAX_LATTICE_ORDER;
use crate::report::{LemmaReport, Witness};

/// Subgroup lattices larger than this are not enumerated.
pub const SUBGROUP_LIMIT: usize = 4096;

/// Report order.
pub const LEMMA_IDS: [&str; 19] = [
    "evensize",
    "noHinvert",
    "O2prime",
    "even_index",
    "2Himplies2G",
    "O22prime",
    "2powerorder",
    "solubleloop",
    "solublegroups",
    "oddnormal",
    "subloops",
    "inv_invert",
    "noHoverlineinvert",
    "HeissPrime",
    "ZeroComponentCase",
    "O_upper_2_criterion",
    "passive_centralizing_components",
    "ArFolders(5)",
    "ArFolders(6)",
];

struct Ctx<'a> {
    f: &'a Folder,
    g: &'a PermGroup,
    h: &'a ElemSet,
    k: ElemSet,
    class: FolderClass,
    o2: ElemSet,
    bar: Quotient,
    h_bar: ElemSet,
    k_bar: ElemSet,
    subgroups: Option<Vec<ElemSet>>,
}

impl Ctx<'_> {
    fn label(&self, x: usize) -> usize {
        self.f.k().iter().position(|&y| y == x).unwrap()
    }

    fn closure_k(&self) -> ElemSet {
        closure(self.g, self.f.k())
    }

    fn o2h(&self) -> ElemSet {
        product_set(self.g, &self.o2, self.h)
    }

    /// `(sub, embed)` with a way back from parent indices.
    fn as_group(&self, u: &ElemSet) -> (PermGroup, Vec<usize>) {
        self.g.subgroup(u)
    }

    fn lift(&self, embed: &[usize], set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.g.order(), set.iter().map(|x| embed[x]))
    }
}

fn not_bx2p(id: &'static str) -> LemmaReport {
    LemmaReport::inapplicable(id, "not a BX2P-folder")
}

/// Runs every check in [`LEMMA_IDS`] order.
pub fn lemma_suite(f: &Folder) -> Result<Vec<LemmaReport>> {
    let class = classify_folder(f);
    let g = f.group();
    let o = o2(g);
    let bar = quotient(g, &o)?;
    let h_bar = bar.image(f.h());
    let k_bar = bar.image(&f.k_set());
    let subgroups = if class.is_bx2p() {
        all_subgroups(g, SUBGROUP_LIMIT).ok()
    } else {
        None
    };
    let c = Ctx {
        f,
        g,
        h: f.h(),
        k: f.k_set(),
        class,
        o2: o,
        bar,
        h_bar,
        k_bar,
        subgroups,
    };
    let bx = c.class.is_bx2p();
    let checks: [fn(&Ctx) -> Result<LemmaReport>; 19] = [
        evensize,
        no_h_invert,
        o2prime,
        even_index,
        two_h_implies_two_g,
        o22prime,
        two_power_order,
        soluble_loop,
        soluble_groups,
        odd_normal,
        subloops,
        inv_invert,
        no_h_overline_invert,
        heiss_prime,
        zero_component_case,
        o_upper_2_criterion,
        passive_centralizing_components,
        ar_fusion,
        ar_core,
    ];
    let mut out = Vec::with_capacity(19);
    for (i, check) in checks.iter().enumerate() {
        let id = LEMMA_IDS[i];
        let needs_bx2p = !matches!(id, "inv_invert" | "ArFolders(5)" | "ArFolders(6)");
        if needs_bx2p && !bx {
            out.push(not_bx2p(id));
        } else {
            out.push(check(&c)?);
        }
    }
    Ok(out)
}

fn evensize(c: &Ctx) -> Result<LemmaReport> {
    let idx = c.f.index();
    Ok(LemmaReport::verdict(
        "evensize",
        idx == 1 || idx % 2 == 0,
        Witness::new().with("index", idx),
    ))
}

fn no_h_invert(c: &Ctx) -> Result<LemmaReport> {
    // Λ is G-invariant, so (h^g)^λ over all g, λ is h^μ over μ ∈ Λ
    let ext = gplus(c.f)?;
    let mut checked = 0usize;
    for mu in ext.lambda_set().iter() {
        for h in c.h.iter() {
            let hh = ext.embed(h);
            if ext.conj(hh, mu) == ext.inv(hh) {
                checked += 1;
                if c.g.mul(h, h) != 0 {
                    return Ok(LemmaReport::verdict(
                        "noHinvert",
                        false,
                        Witness::new().with("lambda_k", mu / 2).with("h", h),
                    ));
                }
            }
        }
    }
    Ok(LemmaReport::verdict(
        "noHinvert",
        true,
        Witness::new().with("inverted_pairs", checked),
    ))
}

fn o2prime(c: &Ctx) -> Result<LemmaReport> {
    let op = o_p_prime(c.g, 2);
    let centralizes_k = op.iter().all(|x| c.k.iter().all(|y| c.g.mul(x, y) == c.g.mul(y, x)));
    let part1 = op.is_subset(c.h) && centralizes_k;
    let part2 = !c.class.faithful.holds || op.is_trivial();
    let part3 = !c.class.envelope.holds || op.is_subset(&center(c.g).intersection(c.h));
    Ok(LemmaReport::verdict(
        "O2prime",
        part1 && part2 && part3,
        Witness::new()
            .with("o2prime_order", op.len())
            .with("in_c_h_k", part1)
            .with("faithful_trivial", part2)
            .with("envelope_central", part3),
    ))
}

fn even_index(c: &Ctx) -> Result<LemmaReport> {
    let over = match overgroups(c.g, c.h, SUBGROUP_LIMIT) {
        Ok(o) => o,
        Err(Error::SizeLimit { .. }) => {
            return Ok(LemmaReport::inapplicable("even_index", "overgroup lattice above limit"))
        }
        Err(e) => return Err(e),
    };
    for u in &over {
        let idx = c.g.order() / u.len();
        if idx != 1 && idx % 2 == 1 {
            return Ok(LemmaReport::verdict(
                "even_index",
                false,
                Witness::new().with("overgroup", u.as_slice()).with("index", idx),
            ));
        }
    }
    Ok(LemmaReport::verdict(
        "even_index",
        true,
        Witness::new().with("overgroups", over.len()),
    ))
}

fn two_h_implies_two_g(c: &Ctx) -> Result<LemmaReport> {
    let h2 = c.h.len().is_power_of_two();
    let g2 = c.g.order().is_power_of_two();
    Ok(LemmaReport::verdict(
        "2Himplies2G",
        h2 == g2,
        Witness::new().with("h_two_group", h2).with("g_two_group", g2),
    ))
}

fn o22prime(c: &Ctx) -> Result<LemmaReport> {
    let top = o_p_prime(&c.bar.group, 2);
    let o22 = c.bar.preimage(&top);
    let lhs = product_set(c.g, &o22, c.h);
    let rhs = c.o2h();
    Ok(LemmaReport::verdict(
        "O22prime",
        lhs == rhs,
        Witness::new()
            .with("o22prime_order", o22.len())
            .with("lhs_size", lhs.len())
            .with("rhs_size", rhs.len()),
    ))
}

fn two_power_order(c: &Ctx) -> Result<LemmaReport> {
    if !c.class.envelope.holds {
        return Ok(LemmaReport::inapplicable("2powerorder", "not an envelope"));
    }
    if !c.f.index().is_power_of_two() {
        return Ok(LemmaReport::inapplicable("2powerorder", "|G:H| is not a power of 2"));
    }
    Ok(LemmaReport::verdict(
        "2powerorder",
        c.g.order().is_power_of_two(),
        Witness::new().with("group_order", c.g.order()),
    ))
}

fn soluble_loop(c: &Ctx) -> Result<LemmaReport> {
    if !c.class.envelope.holds {
        return Ok(LemmaReport::inapplicable("solubleloop", "not an envelope"));
    }
    if c.o2h().len() != c.g.order() {
        return Ok(LemmaReport::inapplicable("solubleloop", "G ≠ O₂(G)H"));
    }
    if c.f.index() > MAX_LATTICE_ORDER {
        return Ok(LemmaReport::inapplicable("solubleloop", "loop above the lattice limit"));
    }
    let l = c.f.to_loop()?;
    let series = l.soluble_series()?;
    Ok(LemmaReport::verdict(
        "solubleloop",
        series.is_some(),
        Witness::new().with("series_length", series.map_or(0, |s| s.steps.len())),
    ))
}

fn soluble_groups(c: &Ctx) -> Result<LemmaReport> {
    if !is_soluble(c.g) {
        return Ok(LemmaReport::inapplicable("solublegroups", "G is not soluble"));
    }
    let d = c.closure_k();
    Ok(LemmaReport::verdict(
        "solublegroups",
        d.is_subset(&c.o2) && d.len().is_power_of_two(),
        Witness::new().with("k_closure_order", d.len()).with("o2_order", c.o2.len()),
    ))
}

fn odd_normal(c: &Ctx) -> Result<LemmaReport> {
    let op = o_p_prime(c.g, 2);
    let w = Witness::new().with("o2prime_order", op.len());
    Ok(match c.f.quotient_folder(&op) {
        Ok(q) => LemmaReport::verdict(
            "oddnormal",
            q.folder.verify().folder.holds,
            w.with("quotient_order", q.folder.group().order()),
        ),
        Err(Error::NotInH) => LemmaReport::verdict("oddnormal", false, w.with("failed", "O₂'(G) ⊄ H")),
        Err(Error::NotTransversal(..)) | Err(Error::InvalidFolder(_)) => {
            LemmaReport::verdict("oddnormal", false, w.with("failed", "quotient is not a folder to X"))
        }
        Err(e) => return Err(e),
    })
}

fn subloops(c: &Ctx) -> Result<LemmaReport> {
    const ID: &str = "subloops";
    let (hg, embed) = c.as_group(c.h);
    let ls = match all_subgroups(&hg, SUBGROUP_LIMIT) {
        Ok(v) => v,
        Err(Error::SizeLimit { .. }) => return Ok(LemmaReport::inapplicable(ID, "subgroup lattice of H above limit")),
        Err(e) => return Err(e),
    };
    let mut w = Witness::new().with("h_subgroups", ls.len());
    for l_sub in &ls {
        let l = c.lift(&embed, l_sub);
        let ck: Vec<usize> = c
            .f
            .k()
            .iter()
            .enumerate()
            .filter(|&(_, &x)| l.iter().all(|y| c.g.mul(x, y) == c.g.mul(y, x)))
            .map(|(i, _)| i)
            .collect();
        for (name, u) in [("normalizer", normalizer(c.g, &l)), ("centralizer", centralizer(c.g, &l))] {
            let ok = match c.f.detect_subfolder(&u) {
                Some(s) => {
                    let mut labels = s.labels.clone();
                    labels.sort_unstable();
                    labels == ck && classify_folder(&s.folder).is_bx2p()
                }
                None => false,
            };
            if !ok {
                return Ok(LemmaReport::verdict(
                    ID,
                    false,
                    w.with("part", 1usize).with("subgroup", name).with("l", l.as_slice()),
                ));
            }
        }
    }
    match &c.subgroups {
        Some(all) => {
            let mut hit = 0usize;
            for u in all {
                let uh = u.intersection(c.h).len();
                let uk = u.intersection(&c.k).len();
                if u.len() > uh * uk {
                    continue;
                }
                hit += 1;
                let ok = c
                    .f
                    .detect_subfolder(u)
                    .is_some_and(|s| classify_folder(&s.folder).is_bx2p());
                if !ok {
                    return Ok(LemmaReport::verdict(ID, false, w.with("part", 2usize).with("u", u.as_slice())));
                }
            }
            w.push("factorized_subgroups", hit);
        }
        None => w.push("part2", "skipped: subgroup lattice above limit"),
    }
    Ok(LemmaReport::verdict(ID, true, w))
}

/// Primes `p` for which `x` inverts an element of order `p` in `g`.
fn inverted_primes<G: FiniteGroup + ?Sized>(g: &G, x: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    for y in 1..g.order() {
        let o = g.element_order(y);
        let odd_prime = o % 2 == 1 && prime_factors(o) == [o];
        if odd_prime && !ps.contains(&o) && g.conj(y, x) == g.inv(y) {
            ps.push(o);
        }
    }
    ps.sort_unstable();
    ps
}

fn inv_invert(c: &Ctx) -> Result<LemmaReport> {
    let mut count = 0usize;
    for x in 1..c.g.order() {
        if c.g.mul(x, x) != 0 {
            continue;
        }
        let above = inverted_primes(&c.bar.group, c.bar.proj[x]);
        if above.is_empty() {
            continue;
        }
        count += 1;
        let below = inverted_primes(c.g, x);
        if let Some(&p) = above.iter().find(|p| !below.contains(p)) {
            return Ok(LemmaReport::verdict(
                "inv_invert",
                false,
                Witness::new().with("involution", x).with("p", p),
            ));
        }
    }
    if count == 0 {
        return Ok(LemmaReport::inapplicable(
            "inv_invert",
            "no involution inverts an odd prime order element of G/O₂(G)",
        ));
    }
    Ok(LemmaReport::verdict("inv_invert", true, Witness::new().with("involutions", count)))
}

fn no_h_overline_invert(c: &Ctx) -> Result<LemmaReport> {
    let q = &c.bar.group;
    let classes = conjugacy_classes(q);
    let mut meets_h = alloc::vec![false; q.order()];
    for cl in &classes {
        if cl.iter().any(|y| c.h_bar.contains(y)) {
            for y in cl.iter() {
                meets_h[y] = true;
            }
        }
    }
    let mut pairs = 0usize;
    for x in c.k_bar.iter() {
        for y in 1..q.order() {
            if q.element_order(y) % 2 == 1 && q.conj(y, x) == q.inv(y) {
                pairs += 1;
                if meets_h[y] {
                    return Ok(LemmaReport::verdict(
                        "noHoverlineinvert",
                        false,
                        Witness::new().with("x_bar", x).with("y_bar", y),
                    ));
                }
            }
        }
    }
    Ok(LemmaReport::verdict(
        "noHoverlineinvert",
        true,
        Witness::new().with("inverted_pairs", pairs),
    ))
}

fn heiss_prime(c: &Ctx) -> Result<LemmaReport> {
    const ID: &str = "HeissPrime";
    let (hb, _) = c.bar.group.subgroup(&c.h_bar);
    if !o2(&hb).is_trivial() {
        return Ok(LemmaReport::inapplicable(ID, "O₂(H̄) ≠ 1"));
    }
    let data = heiss_decomposition(c.f, &c.o2)?;
    let primes: Vec<usize> = prime_factors(c.bar.group.order())
        .into_iter()
        .filter(|&p| p != 2 && data.orbits.iter().all(|o| o.m % p == 0))
        .collect();
    if primes.is_empty() {
        return Ok(LemmaReport::inapplicable(ID, "no odd prime divides every mᵢ"));
    }
    let k = c.f.k().len();
    let bad: Vec<usize> = primes.iter().copied().filter(|p| k % p == 0).collect();
    Ok(LemmaReport::verdict(
        ID,
        bad.is_empty(),
        Witness::new()
            .with("primes", primes)
            .with("k_size", k)
            .with("dividing", bad),
    ))
}

fn zero_component_case(c: &Ctx) -> Result<LemmaReport> {
    let q = &c.bar.group;
    let fit = fitting(q);
    if !centralizer(q, &fit).is_subset(&fit) {
        return Ok(LemmaReport::inapplicable("ZeroComponentCase", "F*(Ḡ) ≠ F(Ḡ)"));
    }
    Ok(LemmaReport::verdict(
        "ZeroComponentCase",
        c.h_bar.len() == q.order(),
        Witness::new().with("gbar_order", q.order()).with("hbar_order", c.h_bar.len()),
    ))
}

fn o_upper_2_criterion(c: &Ctx) -> Result<LemmaReport> {
    const ID: &str = "O_upper_2_criterion";
    let Some(all) = &c.subgroups else {
        return Ok(LemmaReport::inapplicable(ID, "subgroup lattice above limit"));
    };
    let target = c.o2h();
    let mut hits = 0usize;
    for u in all {
        let uh = u.intersection(c.h);
        let uk = u.intersection(&c.k);
        if product_set(c.g, &uh, &uk) != *u {
            continue;
        }
        let (ug, embed) = c.as_group(u);
        let o2u = c.lift(&embed, &o2(&ug));
        let o2up = c.lift(&embed, &o_upper_p(&ug, 2));
        if !commutator_subgroup(c.g, &o2u, &o2up).is_subset(&c.o2) {
            continue;
        }
        let uk_list: Vec<usize> = uk.iter().collect();
        if !closure(c.g, &uk_list).is_subset(&o2u) {
            continue;
        }
        hits += 1;
        if !o2up.is_subset(&target) {
            return Ok(LemmaReport::verdict(ID, false, Witness::new().with("u", u.as_slice())));
        }
    }
    Ok(LemmaReport::verdict(ID, true, Witness::new().with("subgroups_meeting_hypotheses", hits)))
}

fn passive_centralizing_components(c: &Ctx) -> Result<LemmaReport> {
    let q = &c.bar.group;
    let d_bar = c.bar.image(&c.closure_k());
    let cen = centralizer(q, &d_bar);
    let (cg, embed) = q.subgroup(&cen);
    let top = ElemSet::from_indices(q.order(), o_upper_p(&cg, 2).iter().map(|x| embed[x]));
    Ok(LemmaReport::verdict(
        "passive_centralizing_components",
        top.is_subset(&c.h_bar),
        Witness::new().with("centralizer_order", cen.len()).with("o_upper_2_order", top.len()),
    ))
}

fn ar_fusion(c: &Ctx) -> Result<LemmaReport> {
    const ID: &str = "ArFolders(5)";
    if !c.class.is_ar() {
        return Ok(LemmaReport::inapplicable(ID, "not an A_r-folder"));
    }
    for x in c.h.iter() {
        let in_g = class_of(c.g, x).intersection(c.h);
        let in_h = ElemSet::from_indices(c.g.order(), c.h.iter().map(|y| c.g.conj(x, y)));
        if in_g != in_h {
            return Ok(LemmaReport::verdict(
                ID,
                false,
                Witness::new().with("h", x).with("g_fused", in_g.len()).with("h_fused", in_h.len()),
            ));
        }
    }
    Ok(LemmaReport::verdict(ID, true, Witness::new().with("h_order", c.h.len())))
}

fn ar_core(c: &Ctx) -> Result<LemmaReport> {
    const ID: &str = "ArFolders(6)";
    if !c.class.is_ar() {
        return Ok(LemmaReport::inapplicable(ID, "not an A_r-folder"));
    }
    let cr = core(c.g, c.h);
    for x in cr.iter() {
        for &k in c.f.k() {
            if c.g.mul(x, k) != c.g.mul(k, x) {
                return Ok(LemmaReport::verdict(
                    ID,
                    false,
                    Witness::new().with("core_element", x).with("k", c.label(k)),
                ));
            }
        }
    }
    Ok(LemmaReport::verdict(ID, true, Witness::new().with("core_order", cr.len())))
}
