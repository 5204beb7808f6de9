//! Right-translation search for Bol loops. A column `ρy` is a permutation
//! with `0 ↦ y`; setting one forces `ρy ρz ρy = ρ_{(y∘z)∘y}` and
//! `ρy⁻¹ = ρ_{y⁻¹}` against every column already set.

use alloc::vec::Vec;

use super::EnumSpec;
use crate::loops::Loop;

#[derive(Clone, Debug)]
pub(super) struct State {
    n: usize,
    /// `col[y * n + x] = x∘y`.
    col: Vec<u8>,
    set: u32,
}

impl State {
    fn new(n: usize) -> Self {
        let mut col = alloc::vec![0u8; n * n];
        for x in 0..n {
            col[x] = x as u8;
        }
        State { n, col, set: 1 }
    }

    fn is_set(&self, y: usize) -> bool {
        self.set & (1 << y) != 0
    }

    fn column(&self, y: usize) -> &[u8] {
        &self.col[y * self.n..(y + 1) * self.n]
    }

    fn fits(&self, y: usize, p: &[u8], exp2: bool) -> bool {
        let n = self.n;
        if p[0] as usize != y || (exp2 && p[y] != 0) {
            return false;
        }
        (0..n).filter(|&z| self.is_set(z) && z != y).all(|z| {
            let c = self.column(z);
            (0..n).all(|x| c[x] != p[x])
        })
    }

    /// Sets column `y` to `p` and closes; `false` on a contradiction.
    fn assign(&mut self, y: usize, p: Vec<u8>, exp2: bool) -> bool {
        if !self.fits(y, &p, exp2) {
            return false;
        }
        let n = self.n;
        self.col[y * n..(y + 1) * n].copy_from_slice(&p);
        self.set |= 1 << y;
        let mut queue = alloc::vec![y];
        while let Some(a) = queue.pop() {
            let mut derived: Vec<Vec<u8>> = Vec::new();
            let ca = self.column(a).to_vec();
            let mut inv = alloc::vec![0u8; n];
            for x in 0..n {
                inv[ca[x] as usize] = x as u8;
            }
            derived.push(inv);
            for b in (0..n).filter(|&b| self.is_set(b)) {
                let cb = self.column(b);
                derived.push((0..n).map(|x| ca[cb[ca[x] as usize] as usize]).collect());
                derived.push((0..n).map(|x| cb[ca[cb[x] as usize] as usize]).collect());
            }
            for q in derived {
                let w = q[0] as usize;
                if self.is_set(w) {
                    if self.column(w) != q.as_slice() {
                        return false;
                    }
                } else {
                    if !self.fits(w, &q, exp2) {
                        return false;
                    }
                    self.col[w * n..(w + 1) * n].copy_from_slice(&q);
                    self.set |= 1 << w;
                    queue.push(w);
                }
            }
        }
        true
    }

    fn full(&self) -> bool {
        self.set == (1u32 << self.n) - 1
    }

    fn to_loop(&self) -> Loop {
        let n = self.n;
        let mut t = alloc::vec![0; n * n];
        for y in 0..n {
            for x in 0..n {
                t[x * n + y] = self.col[y * n + x] as usize;
            }
        }
        Loop::from_table_unchecked(n, t)
    }

    /// Every column `y` admissible now, in branching order.
    fn candidates(&self, y: usize, exp2: bool, reversed: bool) -> Vec<Vec<u8>> {
        let n = self.n;
        let mut out = Vec::new();
        let mut p = alloc::vec![u8::MAX; n];
        p[0] = y as u8;
        let mut used = 1u32 << y;
        if exp2 {
            p[y] = 0;
            used |= 1;
        }
        self.extend(&mut p, &mut used, 1, exp2, reversed, &mut out);
        out
    }

    fn extend(&self, p: &mut [u8], used: &mut u32, x: usize, exp2: bool, rev: bool, out: &mut Vec<Vec<u8>>) {
        let n = self.n;
        if x == n {
            out.push(p.to_vec());
            return;
        }
        if p[x] != u8::MAX {
            return self.extend(p, used, x + 1, exp2, rev, out);
        }
        let mut blocked = *used;
        for z in (0..n).filter(|&z| self.is_set(z)) {
            blocked |= 1 << self.col[z * n + x];
        }
        for k in 0..n {
            let v = if rev { n - 1 - k } else { k };
            if blocked & (1 << v) != 0 {
                continue;
            }
            // an involution also fixes the entry at `v`
            let paired = exp2 && v != x;
            if paired
                && (p[v] != u8::MAX
                    || *used & (1 << x) != 0
                    || (0..n).any(|z| self.is_set(z) && self.col[z * n + v] as usize == x))
            {
                continue;
            }
            p[x] = v as u8;
            *used |= 1 << v;
            if paired {
                p[v] = x as u8;
                *used |= 1 << x;
            }
            self.extend(p, used, x + 1, exp2, rev, out);
            if paired {
                p[v] = u8::MAX;
                *used &= !(1 << x);
            }
            p[x] = u8::MAX;
            *used &= !(1 << v);
        }
    }

    fn first_unset(&self) -> Option<usize> {
        (0..self.n).find(|&y| !self.is_set(y))
    }
}

fn children(spec: &EnumSpec, s: &State) -> Vec<State> {
    let exp2 = spec.constraints.exponent2;
    let Some(y) = s.first_unset() else {
        return Vec::new();
    };
    s.candidates(y, exp2, spec.reversed)
        .into_iter()
        .filter_map(|p| {
            let mut t = s.clone();
            t.assign(y, p, exp2).then_some(t)
        })
        .collect()
}

pub(super) fn roots(spec: &EnumSpec) -> Vec<State> {
    let s = State::new(spec.order);
    if s.full() {
        return alloc::vec![s];
    }
    children(spec, &s)
}

pub(super) fn complete(spec: &EnumSpec, s: State, emit: &mut dyn FnMut(Loop)) {
    if s.full() {
        emit(s.to_loop());
        return;
    }
    for c in children(spec, &s) {
        complete(spec, c, emit);
    }
}
