//! Loop isomorphism: invariants, explicit search and canonical forms.

use alloc::vec::Vec;

use super::Loop;
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
const CANONICAL_LIMIT: usize = 9;

/// `map(x)∘map(y) = map(x∘y)` in the returned loop.
pub fn relabel(l: &Loop, map: &[usize]) -> Loop {
    let n = l.order();
    debug_assert_eq!(map[0], 0);
    let mut table = alloc::vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            table[map[x] * n + map[y]] = map[l.mul(x, y)];
        }
    }
    Loop::from_table_unchecked(n, table)
}

/// Per-element isomorphism invariants: right-power tail and cycle lengths,
/// number of commuting partners, number of square roots, and number of
/// associating pairs with `x` on the left.
pub fn element_invariants(l: &Loop) -> Vec<[usize; 5]> {
    let n = l.order();
    let mut roots = alloc::vec![0; n];
    for y in 0..n {
        roots[l.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| {
            let mut first_seen = alloc::vec![usize::MAX; n];
            let mut y = x;
            let mut k = 0;
            while first_seen[y] == usize::MAX {
                first_seen[y] = k;
                y = l.mul(y, x);
                k += 1;
            }
            let tail = first_seen[y];
            let cycle = k - tail;
            let commuting = (0..n).filter(|&y| l.mul(x, y) == l.mul(y, x)).count();
            let mut assoc = 0;
            for y in 0..n {
                let xy = l.mul(x, y);
                for z in 0..n {
                    if l.mul(xy, z) == l.mul(x, l.mul(y, z)) {
                        assoc += 1;
                    }
                }
            }
            [tail, cycle, commuting, roots[x], assoc]
        })
        .collect()
}

/// Sorted multiset of element invariants.
pub fn loop_invariants(l: &Loop) -> Vec<[usize; 5]> {
    let mut v = element_invariants(l);
    v.sort_unstable();
    v
}

/// An isomorphism `a → b` as an index map, or `None`.
pub fn find_loop_isomorphism(a: &Loop, b: &Loop) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let ia = element_invariants(a);
    let ib = element_invariants(b);
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // rare invariants first, so early generators have few candidate images
    let freq = |key: &[usize; 5]| sa.iter().filter(|k| *k == key).count();
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&x| (freq(&ia[x]), x));
    let mut gens = Vec::new();
    let mut cur = a.subloop_generated(&[]);
    for x in order {
        if cur.len() == n {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = a.subloop_generated(&gens);
        }
    }
    let mut map = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    map[0] = 0;
    used[0] = true;
    let state = Search {
        a,
        b,
        ia: &ia,
        ib: &ib,
        gens: &gens,
    };
    state.run(0, map, used)
}

struct Search<'a> {
    a: &'a Loop,
    b: &'a Loop,
    ia: &'a [[usize; 5]],
    ib: &'a [[usize; 5]],
    gens: &'a [usize],
}

impl Search<'_> {
    fn run(&self, depth: usize, map: Vec<usize>, used: Vec<bool>) -> Option<Vec<usize>> {
        if depth == self.gens.len() {
            return Some(map);
        }
        let s = self.gens[depth];
        if map[s] != usize::MAX {
            return self.run(depth + 1, map, used);
        }
        for t in 0..self.b.order() {
            if used[t] || self.ib[t] != self.ia[s] {
                continue;
            }
            let mut m = map.clone();
            let mut u = used.clone();
            m[s] = t;
            u[t] = true;
            if self.saturate(&mut m, &mut u) {
                if let Some(done) = self.run(depth + 1, m, u) {
                    return Some(done);
                }
            }
        }
        None
    }

    /// Extends the partial map along products of mapped elements.
    fn saturate(&self, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.a.order();
        let mut mapped: Vec<usize> = (0..n).filter(|&x| map[x] != usize::MAX).collect();
        let mut i = 0;
        while i < mapped.len() {
            let x = mapped[i];
            for j in 0..=i {
                let y = mapped[j];
                for (p, q) in [(x, y), (y, x)] {
                    let r = self.a.mul(p, q);
                    let img = self.b.mul(map[p], map[q]);
                    if map[r] == usize::MAX {
                        if used[img] || self.ib[img] != self.ia[r] {
                            return false;
                        }
                        map[r] = img;
                        used[img] = true;
                        mapped.push(r);
                    } else if map[r] != img {
                        return false;
                    }
                }
            }
            i += 1;
        }
        true
    }
}

/// The lexicographically least table among all relabellings fixing `0`.
pub fn canonical_form(l: &Loop) -> Result<Loop> {
    let n = l.order();
    if n > CANONICAL_LIMIT {
        return Err(Error::SizeLimit {
            what: "loop order for canonical form",
            found: n,
            limit: CANONICAL_LIMIT,
        });
    }
    let mut best: Vec<usize> = l.table().to_vec();
    // inv[new] = old
    let mut inv: Vec<usize> = (0..n).collect();
    let mut map = alloc::vec![0; n];
    loop {
        for (new, &old) in inv.iter().enumerate() {
            map[old] = new;
        }
        let mut ord = core::cmp::Ordering::Equal;
        'cmp: for i in 0..n {
            for j in 0..n {
                let v = map[l.mul(inv[i], inv[j])];
                ord = v.cmp(&best[i * n + j]);
                if ord != core::cmp::Ordering::Equal {
                    break 'cmp;
                }
            }
        }
        if ord == core::cmp::Ordering::Less {
            for i in 0..n {
                for j in 0..n {
                    best[i * n + j] = map[l.mul(inv[i], inv[j])];
                }
            }
        }
        if !next_permutation(&mut inv[1..]) {
            break;
        }
    }
    Ok(Loop::from_table_unchecked(n, best))
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
