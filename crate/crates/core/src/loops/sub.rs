//! Subloops, normal subloops, quotients and solubility.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::Loop;
use crate::error::{Error, Result};
use crate::group::ElemSet;

/// Largest order for which the subloop lattice is searched.
pub const MAX_LATTICE_ORDER: usize = 32;

/// `1 = X₀ ≤ X₁ ≤ ⋯ ≤ Xₙ = X` with each `Xᵢ` normal in `Xᵢ₊₁` and
/// `Xᵢ₊₁/Xᵢ` an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolubleSeries {
    pub steps: Vec<ElemSet>,
}

type Mask = u64;

fn bit(x: usize) -> Mask {
    1 << x
}

fn elems(m: Mask) -> impl Iterator<Item = usize> {
    let mut m = m;
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(x)
        }
    })
}

impl Loop {
    /// Smallest subloop containing `0` and `s`.
    pub fn subloop_generated(&self, s: &[usize]) -> ElemSet {
        let n = self.order();
        let mut inside = alloc::vec![false; n];
        inside[0] = true;
        let mut list = alloc::vec![0];
        for &x in s {
            if !inside[x] {
                inside[x] = true;
                list.push(x);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..=i {
                let b = list[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !inside[p] {
                        inside[p] = true;
                        list.push(p);
                    }
                }
            }
            i += 1;
        }
        ElemSet::from_indices(n, list)
    }

    pub fn is_subloop(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// Block criterion: the sets `N∘x` partition the loop and the product of
    /// two blocks is a block. Returns the block index of every element,
    /// blocks numbered by least element (the block of `0` is `0`).
    pub fn check_normal_subloop(&self, nset: &ElemSet) -> Result<Vec<usize>> {
        let n = self.order();
        if !self.is_subloop(nset) {
            return Err(Error::InvalidFolder("normal subloop candidate is not a subloop"));
        }
        let mut block = alloc::vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if block[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for m in nset.iter() {
                let y = self.mul(m, x);
                if block[y] != usize::MAX {
                    return Err(Error::NotNormalSubloop(reps[block[y]], x));
                }
                block[y] = id;
            }
        }
        let size = nset.len();
        let mut members: Vec<Vec<usize>> = alloc::vec![Vec::with_capacity(size); reps.len()];
        for x in 0..n {
            members[block[x]].push(x);
        }
        for a in 0..reps.len() {
            for b in 0..reps.len() {
                let target = block[self.mul(reps[a], reps[b])];
                for &x in &members[a] {
                    for &y in &members[b] {
                        if block[self.mul(x, y)] != target {
                            return Err(Error::NotNormalSubloop(reps[a], reps[b]));
                        }
                    }
                }
            }
        }
        Ok(block)
    }

    pub fn is_normal_subloop(&self, nset: &ElemSet) -> bool {
        self.check_normal_subloop(nset).is_ok()
    }

    /// `L/N` on blocks, with the element-level projection.
    pub fn quotient_loop(&self, nset: &ElemSet) -> Result<(Loop, Vec<usize>)> {
        let block = self.check_normal_subloop(nset)?;
        let m = self.order() / nset.len();
        let mut reps = alloc::vec![usize::MAX; m];
        for (x, &b) in block.iter().enumerate().rev() {
            reps[b] = x;
        }
        let table = (0..m * m)
            .map(|k| block[self.mul(reps[k / m], reps[k % m])])
            .collect();
        Ok((Loop::from_table_unchecked(m, table), block))
    }

    fn lattice_guard(&self) -> Result<()> {
        if self.order() > MAX_LATTICE_ORDER {
            return Err(Error::SizeLimit {
                what: "loop order for subloop lattice",
                found: self.order(),
                limit: MAX_LATTICE_ORDER,
            });
        }
        Ok(())
    }

    fn close_mask(&self, m: Mask) -> Mask {
        let mut set = m | 1;
        let mut list: Vec<usize> = elems(set).collect();
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..=i {
                let b = list[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if set & bit(p) == 0 {
                        set |= bit(p);
                        list.push(p);
                    }
                }
            }
            i += 1;
        }
        set
    }

    fn lattice_masks(&self) -> Vec<Mask> {
        let n = self.order();
        let mut seen: HashMap<Mask, ()> = HashMap::new();
        let mut found = alloc::vec![1 as Mask];
        seen.insert(1, ());
        let mut i = 0;
        while i < found.len() {
            let s = found[i];
            for x in 0..n {
                if s & bit(x) == 0 {
                    let t = self.close_mask(s | bit(x));
                    if seen.insert(t, ()).is_none() {
                        found.push(t);
                    }
                }
            }
            i += 1;
        }
        found.sort_by_cached_key(|&m| (m.count_ones(), elems(m).collect::<Vec<_>>()));
        found
    }

    /// Every subloop, ordered by size and then by sorted element list.
    pub fn all_subloops(&self) -> Result<Vec<ElemSet>> {
        self.lattice_guard()?;
        let n = self.order();
        Ok(self
            .lattice_masks()
            .into_iter()
            .map(|m| ElemSet::from_indices(n, elems(m)))
            .collect())
    }

    /// `n ⊴ y` with `y/n` an abelian group, for subloops given as masks.
    fn abelian_normal_in(&self, y: Mask, nm: Mask) -> bool {
        let size = nm.count_ones() as usize;
        let mut block: HashMap<usize, usize> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for x in elems(y) {
            if block.contains_key(&x) {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for m in elems(nm) {
                if block.insert(self.mul(m, x), id).is_some() {
                    return false;
                }
            }
        }
        let k = reps.len();
        debug_assert_eq!(k * size, y.count_ones() as usize);
        let mut members: Vec<Vec<usize>> = alloc::vec![Vec::new(); k];
        for x in elems(y) {
            members[block[&x]].push(x);
        }
        let mut qt = alloc::vec![0usize; k * k];
        for a in 0..k {
            for b in 0..k {
                let t = block[&self.mul(reps[a], reps[b])];
                for &x in &members[a] {
                    for &z in &members[b] {
                        if block[&self.mul(x, z)] != t {
                            return false;
                        }
                    }
                }
                qt[a * k + b] = t;
            }
        }
        (0..k).all(|a| {
            (0..k).all(|b| {
                qt[a * k + b] == qt[b * k + a]
                    && (0..k).all(|c| qt[qt[a * k + b] * k + c] == qt[a * k + qt[b * k + c]])
            })
        })
    }

    /// Searches the subloop lattice for a soluble series; `None` means the
    /// search was exhausted and the loop is not soluble.
    pub fn soluble_series(&self) -> Result<Option<SolubleSeries>> {
        self.lattice_guard()?;
        let lattice = self.lattice_masks();
        let mut memo: HashMap<Mask, Option<Mask>> = HashMap::new();
        let full = lattice[lattice.len() - 1];
        if !self.soluble_mask(full, &lattice, &mut memo) {
            return Ok(None);
        }
        let n = self.order();
        let mut chain = alloc::vec![full];
        let mut cur = full;
        while let Some(Some(below)) = memo.get(&cur) {
            chain.push(*below);
            cur = *below;
        }
        chain.reverse();
        Ok(Some(SolubleSeries {
            steps: chain
                .into_iter()
                .map(|m| ElemSet::from_indices(n, elems(m)))
                .collect(),
        }))
    }

    fn soluble_mask(
        &self,
        y: Mask,
        lattice: &[Mask],
        memo: &mut HashMap<Mask, Option<Mask>>,
    ) -> bool {
        if y == 1 {
            memo.insert(1, None);
            return true;
        }
        if let Some(r) = memo.get(&y) {
            return r.is_some();
        }
        // mark as insoluble while exploring; subloops are strictly smaller
        memo.insert(y, None);
        for &nm in lattice.iter().rev() {
            if nm == y || nm & !y != 0 {
                continue;
            }
            if self.abelian_normal_in(y, nm) && self.soluble_mask(nm, lattice, memo) {
                memo.insert(y, Some(nm));
                return true;
            }
        }
        false
    }

    pub fn is_soluble_loop(&self) -> Result<bool> {
        Ok(self.soluble_series()?.is_some())
    }

    /// Loop restricted to a subloop, relabelled in increasing element order.
    pub fn restrict(&self, sub: &ElemSet) -> Loop {
        let n = self.order();
        let mut pos = alloc::vec![usize::MAX; n];
        for (i, x) in sub.iter().enumerate() {
            pos[x] = i;
        }
        let m = sub.len();
        let s = sub.as_slice();
        let table = (0..m * m).map(|k| pos[self.mul(s[k / m], s[k % m])]).collect();
        Loop::from_table_unchecked(m, table)
    }
}

impl SolubleSeries {
    /// Re-checks every step of the series against `l` independently of the
    /// search that produced it.
    pub fn is_valid_for(&self, l: &Loop) -> bool {
        series_is_valid(l, self)
    }
}

fn series_is_valid(l: &Loop, series: &SolubleSeries) -> bool {
    let steps = &series.steps;
    if steps.first().map(ElemSet::len) != Some(1) || steps.last().map(ElemSet::len) != Some(l.order()) {
        return false;
    }
    steps.windows(2).all(|w| {
        let upper = l.restrict(&w[1]);
        let pos: Vec<usize> = w[1].iter().collect();
        let lower = ElemSet::from_indices(
            upper.order(),
            w[0].iter().map(|x| pos.iter().position(|&p| p == x).unwrap()),
        );
        w[0].is_subset(&w[1])
            && upper
                .quotient_loop(&lower)
                .map(|(q, _)| q.is_group() && q.is_commutative())
                .unwrap_or(false)
    })
}
