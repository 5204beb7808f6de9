//! Transversal searches inside a fixed group: Hypothesis (A) folders and
//! general folders over a given `H`.

use alloc::vec::Vec;

use crate::baer::Folder;
use crate::bx2p::classify_folder;
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, conjugacy_classes, conjugate_set, subgroup_classes, ElemSet, FiniteGroup, PermGroup,
};

/// Largest group scanned for Hypothesis (A) folders.
pub const HYPOTHESIS_A_LIMIT: usize = 10_000;
/// Largest index `|G:H|` for the general transversal search.
pub const FOLDER_INDEX_LIMIT: usize = 24;
const SUBGROUP_LIMIT: usize = 4096;

/// Options for [`search_folders`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FolderSearch {
    /// Keep only BX2P-folders, pruning on twisted closure, `H`-invariance
    /// and element orders.
    pub bx2p: bool,
    /// Stop after this many folders.
    pub max_hits: Option<usize>,
}

/// The union of all conjugates of `h`.
pub fn conjugate_union<G: FiniteGroup + ?Sized>(g: &G, h: &ElemSet) -> ElemSet {
    let mut u = h.clone();
    let mut seen = alloc::vec![false; g.order()];
    for x in 0..g.order() {
        // H^x depends only on the coset Hx
        let c = h.iter().map(|y| g.mul(y, x)).min().unwrap();
        if !core::mem::replace(&mut seen[c], true) {
            u = u.union(&conjugate_set(g, h, x));
        }
    }
    u
}

/// One subgroup from each conjugacy class, in class order.
pub fn subgroup_reps(g: &PermGroup) -> Result<Vec<ElemSet>> {
    let subs = all_subgroups(g, SUBGROUP_LIMIT)?;
    Ok(subgroup_classes(g, &subs).into_iter().map(|c| c.rep).collect())
}

fn check_order(g: &PermGroup) -> Result<()> {
    if g.order() > HYPOTHESIS_A_LIMIT {
        return Err(Error::SizeLimit {
            what: "group order for Hypothesis (A) search",
            found: g.order(),
            limit: HYPOTHESIS_A_LIMIT,
        });
    }
    Ok(())
}

/// `x y⁻¹ ∉ U` for every `x ∈ a`, `y ∈ b` with `x ≠ y`.
fn separated(g: &PermGroup, u: &ElemSet, a: &[usize], b: &[usize]) -> bool {
    a.iter()
        .all(|&x| b.iter().all(|&y| x == y || !u.contains(g.mul(x, g.inv(y)))))
}

fn emit_checked(g: &PermGroup, h: &ElemSet, k: Vec<usize>) -> Result<Folder> {
    let f = Folder::validated(g.clone(), h.clone(), k)?;
    if !classify_folder(&f).is_bx2p() {
        return Err(Error::Internal("Hypothesis (A) folder is not an exponent-2 Bruck folder"));
    }
    Ok(f)
}

/// Hypothesis (A) folders over one `H`: `K` is `1` together with whole
/// involution classes avoiding every conjugate of `H`. Every emitted folder
/// is revalidated and must classify as BX2P with `K` of exponent 2.
pub fn hypothesis_a_for(
    g: &PermGroup,
    h: &ElemSet,
    max_hits: Option<usize>,
    emit: &mut dyn FnMut(Folder),
) -> Result<usize> {
    check_order(g)?;
    let target = g.order() / h.len() - 1;
    let u = conjugate_union(g, h);
    let pool: Vec<Vec<usize>> = conjugacy_classes(g)
        .into_iter()
        .filter(|c| {
            let x = c.first().unwrap();
            x != 0 && g.mul(x, x) == 0 && c.intersection(&u).is_empty()
        })
        .map(|c| c.as_slice().to_vec())
        .filter(|c| separated(g, &u, c, c))
        .collect();
    let m = pool.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| separated(g, &u, &pool[i], &pool[j])).collect())
        .collect();
    let mut hits = 0;
    let mut chosen = Vec::new();
    let mut err = None;
    let mut visit = |chosen: &[usize], hits: &mut usize| -> bool {
        let mut k: Vec<usize> = chosen.iter().flat_map(|&i| pool[i].iter().copied()).collect();
        k.sort_unstable();
        k.insert(0, 0);
        match emit_checked(g, h, k) {
            Ok(f) => emit(f),
            Err(e) => {
                err = Some(e);
                return false;
            }
        }
        *hits += 1;
        max_hits.is_none_or(|cap| *hits < cap)
    };
    clique(&pool, &compat, 0, target, &mut chosen, &mut hits, &mut visit);
    match err {
        Some(e) => Err(e),
        None => Ok(hits),
    }
}

/// Subsets of pairwise compatible classes with total size `left`; returns
/// `false` once the visitor asks to stop.
fn clique(
    pool: &[Vec<usize>],
    compat: &[Vec<bool>],
    from: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    hits: &mut usize,
    visit: &mut dyn FnMut(&[usize], &mut usize) -> bool,
) -> bool {
    if left == 0 {
        return visit(chosen, hits);
    }
    let reachable: usize = (from..pool.len())
        .filter(|&i| chosen.iter().all(|&j| compat[i][j]))
        .map(|i| pool[i].len())
        .sum();
    if reachable < left {
        return true;
    }
    for i in from..pool.len() {
        if pool[i].len() > left || !chosen.iter().all(|&j| compat[i][j]) {
            continue;
        }
        chosen.push(i);
        let go_on = clique(pool, compat, i + 1, left - pool[i].len(), chosen, hits, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Hypothesis (A) folders over every subgroup class of `g`.
pub fn search_hypothesis_a(g: &PermGroup, max_hits_per_h: Option<usize>) -> Result<Vec<Folder>> {
    check_order(g)?;
    let mut out = Vec::new();
    for h in subgroup_reps(g)? {
        hypothesis_a_for(g, &h, max_hits_per_h, &mut |f| out.push(f))?;
    }
    Ok(out)
}

struct Backtrack<'a> {
    g: &'a PermGroup,
    h: &'a ElemSet,
    u: ElemSet,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    opts: FolderSearch,
    k: Vec<usize>,
    hits: usize,
}

impl Backtrack<'_> {
    /// The coset of `z` is either still open or already holds `z`.
    fn consistent(&self, z: usize) -> bool {
        let c = self.coset_of[z];
        c >= self.k.len() || self.k[c] == z
    }

    fn admissible(&self, x: usize) -> bool {
        let g = self.g;
        if !separated(g, &self.u, &[x], &self.k) {
            return false;
        }
        if !self.opts.bx2p {
            return true;
        }
        if !g.element_order(x).is_power_of_two() {
            return false;
        }
        self.k.iter().all(|&y| self.consistent(g.mul(g.mul(x, y), x)) && self.consistent(g.mul(g.mul(y, x), y)))
            && self.consistent(g.mul(x, x))
            && self.h.iter().all(|c| self.consistent(g.conj(x, c)))
    }

    fn run(&mut self, emit: &mut dyn FnMut(Folder)) -> Result<bool> {
        let depth = self.k.len();
        if depth == self.cosets.len() {
            let f = Folder::validated(self.g.clone(), self.h.clone(), self.k.clone())?;
            if self.opts.bx2p && !classify_folder(&f).is_bx2p() {
                return Ok(true);
            }
            emit(f);
            self.hits += 1;
            return Ok(self.opts.max_hits.is_none_or(|m| self.hits < m));
        }
        for i in 0..self.cosets[depth].len() {
            let x = self.cosets[depth][i];
            if !self.admissible(x) {
                continue;
            }
            self.k.push(x);
            let go_on = self.run(emit)?;
            self.k.pop();
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Every `K` with `(G, H, K)` a loop folder, one element per right coset of
/// `H` in order of least element. `K` lists `1` first and then one element
/// per coset in that order.
pub fn search_folders(g: &PermGroup, h: &ElemSet, opts: FolderSearch, emit: &mut dyn FnMut(Folder)) -> Result<usize> {
    let index = g.order() / h.len();
    if index > FOLDER_INDEX_LIMIT {
        return Err(Error::SizeLimit {
            what: "index |G:H| for folder search",
            found: index,
            limit: FOLDER_INDEX_LIMIT,
        });
    }
    let mut coset_of = alloc::vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|y| g.mul(y, x)).collect();
        c.sort_unstable();
        for &y in &c {
            coset_of[y] = cosets.len();
        }
        cosets.push(c);
    }
    // the identity represents H itself
    cosets[0] = alloc::vec![0];
    let mut bt = Backtrack {
        g,
        h,
        u: conjugate_union(g, h),
        cosets,
        coset_of,
        opts,
        k: Vec::new(),
        hits: 0,
    };
    bt.run(emit)?;
    Ok(bt.hits)
}
