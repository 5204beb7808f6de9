//! Cell-by-cell Latin fill with row and column masks.

use alloc::vec::Vec;

use super::EnumSpec;
use crate::loops::Loop;

const EMPTY: usize = usize::MAX;

fn start(n: usize) -> Vec<usize> {
    let mut t = alloc::vec![EMPTY; n * n];
    for i in 0..n {
        t[i] = i;
        t[i * n] = i;
    }
    t
}

/// Free cells in fill order: rows `1..n`, columns `1..n`.
fn cell(n: usize, c: usize) -> (usize, usize) {
    (1 + c / (n - 1), 1 + c % (n - 1))
}

struct Fill<'a> {
    n: usize,
    exp2: bool,
    reversed: bool,
    stop: usize,
    rows: Vec<u32>,
    cols: Vec<u32>,
    emit: &'a mut dyn FnMut(&[usize]),
}

impl Fill<'_> {
    fn new<'a>(spec: &EnumSpec, t: &[usize], stop: usize, emit: &'a mut dyn FnMut(&[usize])) -> Fill<'a> {
        let n = spec.order;
        let mut rows = alloc::vec![0u32; n];
        let mut cols = alloc::vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if t[i * n + j] != EMPTY {
                    rows[i] |= 1 << t[i * n + j];
                    cols[j] |= 1 << t[i * n + j];
                }
            }
        }
        Fill {
            n,
            exp2: spec.constraints.exponent2,
            reversed: spec.reversed,
            stop,
            rows,
            cols,
            emit,
        }
    }

    fn run(&mut self, t: &mut [usize], c: usize) {
        if c == self.stop {
            (self.emit)(t);
            return;
        }
        let n = self.n;
        let (i, j) = cell(n, c);
        let free = !(self.rows[i] | self.cols[j]) & ((1u32 << n) - 1);
        for k in 0..n {
            let v = if self.reversed { n - 1 - k } else { k };
            if free & (1 << v) == 0 || (self.exp2 && (i == j) != (v == 0)) {
                continue;
            }
            t[i * n + j] = v;
            self.rows[i] |= 1 << v;
            self.cols[j] |= 1 << v;
            self.run(t, c + 1);
            self.rows[i] &= !(1 << v);
            self.cols[j] &= !(1 << v);
        }
        t[i * n + j] = EMPTY;
    }
}

/// Partial tables with row 1 filled (the whole table when `n ≤ 1`).
pub(super) fn roots(spec: &EnumSpec) -> Vec<Vec<usize>> {
    let n = spec.order;
    let mut t = start(n);
    if n < 2 {
        return alloc::vec![t];
    }
    let mut out = Vec::new();
    let mut emit = |p: &[usize]| out.push(p.to_vec());
    Fill::new(spec, &t.clone(), n - 1, &mut emit).run(&mut t, 0);
    out
}

pub(super) fn complete(spec: &EnumSpec, mut t: Vec<usize>, emit: &mut dyn FnMut(Loop)) {
    let n = spec.order;
    if n < 2 {
        emit(Loop::from_table_unchecked(n, t));
        return;
    }
    let mut sink = |full: &[usize]| emit(Loop::from_table_unchecked(n, full.to_vec()));
    let first = n - 1;
    let stop = (n - 1) * (n - 1);
    let snapshot = t.clone();
    Fill::new(spec, &snapshot, stop, &mut sink).run(&mut t, first);
}
