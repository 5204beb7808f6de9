//! Rayon drivers. Work is split into independent subtrees or instances and
//! merged in a fixed order, so results match the serial routines exactly.

use rayon::prelude::*;

use loopforge_core::bx2p::lemma_suite;
use loopforge_core::search::{
    collapse, enumerate_root, hypothesis_a_for, roots, subgroup_reps, EnumSpec, Enumeration, Strategy,
};
use loopforge_core::{Folder, LemmaReport, Loop, PermGroup};

use crate::Result;

/// Enumeration with one task per first-level subtree.
pub fn enumerate_parallel(spec: &EnumSpec, strategy: Strategy) -> Result<Enumeration> {
    let rs = roots(spec, strategy)?;
    let parts: Vec<Vec<Loop>> = rs
        .par_iter()
        .map(|r| {
            let mut v = Vec::new();
            enumerate_root(spec, r, &mut |l| v.push(l));
            v
        })
        .collect();
    Ok(collapse(spec, parts.into_iter().flatten().collect())?)
}

/// Hypothesis (A) folders with one task per subgroup class, in class order.
pub fn hypothesis_a_parallel(g: &PermGroup, max_hits_per_h: Option<usize>) -> Result<Vec<Folder>> {
    let reps = subgroup_reps(g)?;
    let parts: Vec<loopforge_core::Result<Vec<Folder>>> = reps
        .par_iter()
        .map(|h| {
            let mut v = Vec::new();
            hypothesis_a_for(g, h, max_hits_per_h, &mut |f| v.push(f))?;
            Ok(v)
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Lemma suites over many folders, in input order.
pub fn lemma_suites(folders: &[Folder]) -> Vec<loopforge_core::Result<Vec<LemmaReport>>> {
    folders.par_iter().map(lemma_suite).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopforge_core::search::{enumerate_with, search_hypothesis_a};
    use loopforge_core::catalog::by_name;
    use loopforge_core::group::DEFAULT_CAP;

    #[test]
    fn parallel_matches_serial() {
        for n in 1..=5 {
            let spec = EnumSpec::new(n);
            let a = enumerate_parallel(&spec, Strategy::Rows).unwrap();
            let b = enumerate_with(&spec, Strategy::Rows).unwrap();
            assert_eq!(a.raw, b.raw);
            assert_eq!(a.loops, b.loops);
        }
        let g = by_name("D8").unwrap().gens.materialize(DEFAULT_CAP).unwrap();
        let a = hypothesis_a_parallel(&g, None).unwrap();
        let b = search_hypothesis_a(&g, None).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.k(), y.k());
            assert_eq!(x.h(), y.h());
        }
    }
}
