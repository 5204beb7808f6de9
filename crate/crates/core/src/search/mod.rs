//! Exhaustive desk-scale generators: loop tables up to isomorphism and
//! folder transversals inside a given group.

mod columns;
mod rows;
mod transversal;

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::loops::{canonical_form, find_loop_isomorphism, loop_invariants, Loop};

pub use transversal::{
    conjugate_union, hypothesis_a_for, search_folders, search_hypothesis_a, subgroup_reps, FolderSearch,
    FOLDER_INDEX_LIMIT, HYPOTHESIS_A_LIMIT,
};

/// Largest order enumerated without the Bol constraint.
pub const ROW_FILL_LIMIT: usize = 6;
/// Largest order enumerated with the Bol constraint.
pub const BOL_LIMIT: usize = 8;
/// Largest order enumerated with both Bol and exponent 2.
pub const BOL_EXP2_LIMIT: usize = 10;
/// Below this order duplicates are removed by canonical form, at and above
/// it by pairwise isomorphism tests within invariant buckets.
pub const CANONICAL_BELOW: usize = 7;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Constraints {
    pub bol: bool,
    pub aip: bool,
    pub exponent2: bool,
    pub ar: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Cell-by-cell Latin fill, constraints checked on completion.
    Rows,
    /// Right translations chosen one at a time and closed under
    /// `ρy ρz ρy` and inversion.
    Columns,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumSpec {
    pub order: usize,
    pub constraints: Constraints,
    pub canonicalize: bool,
    /// Try symbols in descending order.
    pub reversed: bool,
}

impl EnumSpec {
    pub fn new(order: usize) -> Self {
        EnumSpec {
            order,
            constraints: Constraints::default(),
            canonicalize: true,
            reversed: false,
        }
    }

    pub fn bol(mut self) -> Self {
        self.constraints.bol = true;
        self
    }

    pub fn exponent2(mut self) -> Self {
        self.constraints.exponent2 = true;
        self
    }

    pub fn reversed(mut self, r: bool) -> Self {
        self.reversed = r;
        self
    }

    /// The default strategy: rows up to order 6, columns for Bol above.
    pub fn strategy(&self) -> Result<Strategy> {
        let n = self.order;
        let c = self.constraints;
        let limit = match (c.bol, c.exponent2) {
            (true, true) => BOL_EXP2_LIMIT,
            (true, false) => BOL_LIMIT,
            _ => ROW_FILL_LIMIT,
        };
        if n == 0 || n > limit {
            return Err(Error::SizeLimit {
                what: "enumeration order",
                found: n,
                limit,
            });
        }
        Ok(if c.bol && n > ROW_FILL_LIMIT {
            Strategy::Columns
        } else {
            Strategy::Rows
        })
    }

    /// Constraints checked on a completed table.
    pub fn accepts(&self, l: &Loop) -> bool {
        let c = self.constraints;
        (!c.bol || l.check_bol().is_ok())
            && (!c.exponent2 || (0..l.order()).all(|x| l.mul(x, x) == 0))
            && (!c.aip || matches!(l.check_aip(), Ok(Ok(()))))
            && (!c.ar || l.check_ar().is_ok())
    }
}

/// A disjoint subtree of the search, after the first branching level.
#[derive(Clone, Debug)]
pub struct Root(RootState);

#[derive(Clone, Debug)]
enum RootState {
    Rows(Vec<usize>),
    Columns(columns::State),
}

/// The first-level subtrees, in branching order.
pub fn roots(spec: &EnumSpec, strategy: Strategy) -> Result<Vec<Root>> {
    spec.strategy()?;
    Ok(match strategy {
        Strategy::Rows => rows::roots(spec).into_iter().map(|t| Root(RootState::Rows(t))).collect(),
        Strategy::Columns => columns::roots(spec)
            .into_iter()
            .map(|s| Root(RootState::Columns(s)))
            .collect(),
    })
}

/// Every labelled table below `root` that satisfies the constraints.
pub fn enumerate_root(spec: &EnumSpec, root: &Root, emit: &mut dyn FnMut(Loop)) {
    let mut filtered = |l: Loop| {
        if spec.accepts(&l) {
            emit(l)
        }
    };
    match &root.0 {
        RootState::Rows(t) => rows::complete(spec, t.clone(), &mut filtered),
        RootState::Columns(s) => columns::complete(spec, s.clone(), &mut filtered),
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Labelled tables with identity `0` satisfying the constraints.
    pub raw: usize,
    /// One table per isomorphism class (all tables when not canonicalizing),
    /// sorted.
    pub loops: Vec<Loop>,
}

/// Reduces labelled tables to one per isomorphism class. Canonical forms
/// below order 7; above, the least table of each class found by pairwise
/// tests, so the result does not depend on input order.
pub fn collapse(spec: &EnumSpec, mut tables: Vec<Loop>) -> Result<Enumeration> {
    let raw = tables.len();
    if !spec.canonicalize {
        tables.sort_by(|a, b| a.table().cmp(b.table()));
        return Ok(Enumeration { raw, loops: tables });
    }
    if spec.order < CANONICAL_BELOW {
        let mut set = BTreeSet::new();
        for l in &tables {
            set.insert(canonical_form(l)?.table().to_vec());
        }
        let loops = set
            .into_iter()
            .map(|t| Loop::from_table_unchecked(spec.order, t))
            .collect();
        return Ok(Enumeration { raw, loops });
    }
    let mut buckets: BTreeMap<Vec<[usize; 5]>, Vec<Loop>> = BTreeMap::new();
    for l in tables {
        let reps = buckets.entry(loop_invariants(&l)).or_default();
        match reps.iter_mut().find(|r| find_loop_isomorphism(&l, r).is_some()) {
            Some(r) if l.table() < r.table() => *r = l,
            Some(_) => {}
            None => reps.push(l),
        }
    }
    let mut loops: Vec<Loop> = buckets.into_values().flatten().collect();
    loops.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(Enumeration { raw, loops })
}

/// Serial enumeration with the default strategy.
pub fn enumerate_loops(spec: &EnumSpec) -> Result<Enumeration> {
    enumerate_with(spec, spec.strategy()?)
}

pub fn enumerate_with(spec: &EnumSpec, strategy: Strategy) -> Result<Enumeration> {
    let mut tables = Vec::new();
    for r in roots(spec, strategy)? {
        enumerate_root(spec, &r, &mut |l| tables.push(l));
    }
    collapse(spec, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn counts(reversed: bool) -> Vec<(usize, usize)> {
        (1..=5)
            .map(|n| {
                let e = enumerate_loops(&EnumSpec::new(n).reversed(reversed)).unwrap();
                (e.raw, e.loops.len())
            })
            .collect()
    }

    #[test]
    fn small_loop_counts() {
        // Reduced Latin squares of orders 1..5: 1, 1, 1, 4, 56
        let fwd = counts(false);
        assert_eq!(fwd, vec![(1, 1), (1, 1), (1, 1), (4, 2), (56, 6)]);
        assert_eq!(fwd, counts(true));
    }

    #[test]
    fn bol_order_5_is_cyclic() {
        let e = enumerate_loops(&EnumSpec::new(5).bol()).unwrap();
        assert_eq!(e.loops.len(), 1);
        assert!(e.loops[0].is_group());
    }

    #[test]
    fn column_route_agrees_with_rows() {
        for n in 1..=6 {
            for spec in [EnumSpec::new(n).bol(), EnumSpec::new(n).bol().exponent2()] {
                let a = enumerate_with(&spec, Strategy::Rows).unwrap();
                let b = enumerate_with(&spec, Strategy::Columns).unwrap();
                assert_eq!(a.raw, b.raw, "order {n}");
                assert_eq!(
                    a.loops.iter().map(Loop::table).collect::<Vec<_>>(),
                    b.loops.iter().map(Loop::table).collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn limits() {
        assert!(EnumSpec::new(7).strategy().is_err());
        assert!(EnumSpec::new(9).bol().strategy().is_err());
        assert_eq!(EnumSpec::new(10).bol().exponent2().strategy().unwrap(), Strategy::Columns);
    }
}
