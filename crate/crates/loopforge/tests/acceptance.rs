//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use loopforge::parallel::{enumerate_parallel, hypothesis_a_parallel, lemma_suites};
use loopforge_core::baer::baer_envelope;
use loopforge_core::bx2p::{amt_loop_size, check_bx2p_tau, classify_folder, classify_q, heiss_decomposition, make_pgl2, q_sieve, QReading};
use loopforge_core::catalog::{groups_up_to_12, test_set};
use loopforge_core::group::{closure, is_soluble, normal_subgroups, o2, DEFAULT_CAP};
use loopforge_core::loops::find_loop_isomorphism;
use loopforge_core::search::{enumerate_with, EnumSpec, Strategy};
use loopforge_core::twisted::{is_twisted_subgroup, tau_automorphism, xi_psi};
use loopforge_core::{FiniteGroup, Folder, Generators, Loop, Perm};

/// Hypothesis (A) hits kept per subgroup class for the solubility scan.
const HITS_PER_H: usize = 16;
/// Hypothesis (A) hits kept per subgroup class for the lemma corpus.
const SUITE_HITS_PER_H: usize = 2;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Groups of order ≤ 12 as loops, all non-group loops of order ≤ 6 and
/// all non-group Bol loops of orders 7 and 8.
fn loop_corpus() -> Vec<(String, Loop)> {
    let mut out = Vec::new();
    for e in groups_up_to_12() {
        let g = e.gens.materialize(DEFAULT_CAP).unwrap();
        out.push((e.name.to_string(), Loop::from_group(&g)));
    }
    for n in 1..=8 {
        let spec = if n <= 6 { EnumSpec::new(n) } else { EnumSpec::new(n).bol() };
        let e = enumerate_parallel(&spec, spec.strategy().unwrap()).unwrap();
        for (i, l) in e.loops.into_iter().enumerate() {
            if !l.is_group() {
                out.push((format!("L{n}.{i}"), l));
            }
        }
    }
    out
}

fn hypothesis_a_corpus(per_h: usize, max_order: usize) -> Vec<(String, Folder)> {
    let mut out = Vec::new();
    for e in test_set().into_iter().filter(|e| e.order <= max_order) {
        let g = e.gens.materialize(DEFAULT_CAP).unwrap();
        for (i, f) in hypothesis_a_parallel(&g, Some(per_h)).unwrap().into_iter().enumerate() {
            out.push((format!("{}#{i}", e.name), f));
        }
    }
    out
}

struct Corpus {
    loops: Vec<(String, Loop)>,
    envelopes: Vec<(String, Folder)>,
    hyp_a: Vec<(String, Folder)>,
}

impl Corpus {
    /// Envelopes of Bruck loops plus the Hypothesis (A) sample.
    fn bruck_folders(&self) -> Vec<&(String, Folder)> {
        self.envelopes
            .iter()
            .chain(&self.hyp_a)
            .filter(|(_, f)| classify_folder(f).is_bruck())
            .collect()
    }
}

fn c1_round_trip(c: &Corpus) -> Outcome {
    let failures: Vec<&str> = c
        .loops
        .iter()
        .zip(&c.envelopes)
        .filter(|((_, l), (_, f))| f.to_loop().map_or(true, |back| find_loop_isomorphism(l, &back).is_none()))
        .map(|((n, _), _)| n.as_str())
        .collect();
    outcome(failures.is_empty(), format!("{} loops, failures {:?}", c.loops.len(), failures))
}

fn c2_bol_twisted(c: &Corpus) -> Outcome {
    let mut bol = 0;
    let mismatches: Vec<&str> = c
        .loops
        .iter()
        .zip(&c.envelopes)
        .filter(|((_, l), (_, f))| {
            let loop_side = l.check_bol().is_ok();
            bol += loop_side as usize;
            loop_side != is_twisted_subgroup(f.group(), &f.k_set()).is_twisted
        })
        .map(|((n, _), _)| n.as_str())
        .collect();
    outcome(
        mismatches.is_empty(),
        format!("{} loops, {bol} Bol, mismatches {:?}", c.loops.len(), mismatches),
    )
}

/// Ξ = 1, τ² = 1, k^τ = k⁻¹, τ fixes H, τ(g)⁻¹kg ∈ K (Λ invariant), A_r.
fn bruck_package(l: &Loop, f: &Folder) -> Result<(), &'static str> {
    let g = f.group();
    let k = f.k_set();
    let (xp, _) = xi_psi(g, &k).map_err(|_| "xi_psi failed")?;
    if !xp.xi.is_trivial() {
        return Err("Xi nontrivial");
    }
    let tau = tau_automorphism(g, &k).map_err(|_| "tau failed")?.ok_or("no tau")?;
    if (0..g.order()).any(|x| tau[tau[x]] != x) {
        return Err("tau^2 != 1");
    }
    if f.k().iter().any(|&x| tau[x] != g.inv(x)) {
        return Err("tau does not invert K");
    }
    if f.h().iter().any(|x| tau[x] != x) {
        return Err("H not centralized by tau");
    }
    for x in 0..g.order() {
        let tx_inv = g.inv(tau[x]);
        if f.k().iter().any(|&y| !k.contains(g.mul(g.mul(tx_inv, y), x))) {
            return Err("Lambda not invariant");
        }
    }
    if l.check_ar().is_err() {
        return Err("loop not A_r");
    }
    Ok(())
}

fn c3_bruck_envelope(c: &Corpus) -> Outcome {
    let mut n = 0;
    let mut failures = Vec::new();
    for ((name, l), (_, f)) in c.loops.iter().zip(&c.envelopes) {
        if !l.is_bruck() {
            continue;
        }
        n += 1;
        if let Err(e) = bruck_package(l, f) {
            failures.push(format!("{name}: {e}"));
        }
    }
    outcome(failures.is_empty() && n > 0, format!("{n} Bruck loops, failures {failures:?}"))
}

fn c4_bx2p_tau(c: &Corpus) -> Outcome {
    let folders = c.bruck_folders();
    let mut both = [0usize; 2];
    let mut failures = Vec::new();
    for (name, f) in &folders {
        match check_bx2p_tau(f) {
            Ok(r) if r.pass == Some(true) => {
                both[classify_folder(f).is_bx2p() as usize] += 1;
            }
            Ok(_) => failures.push(name.as_str()),
            Err(_) => failures.push(name.as_str()),
        }
    }
    outcome(
        failures.is_empty() && both[0] > 0 && both[1] > 0,
        format!(
            "{} Bruck folders ({} BX2P, {} not), discrepancies {:?}",
            folders.len(),
            both[1],
            both[0],
            failures
        ),
    )
}

fn c5_soluble(start: Instant) -> Outcome {
    let mut checked = 0;
    let mut groups = 0;
    let mut failures = Vec::new();
    for e in test_set() {
        let g = e.gens.materialize(DEFAULT_CAP).unwrap();
        if !is_soluble(&g) {
            continue;
        }
        groups += 1;
        let o = o2(&g);
        for (i, f) in hypothesis_a_parallel(&g, Some(HITS_PER_H)).unwrap().iter().enumerate() {
            checked += 1;
            if !closure(&g, f.k()).is_subset(&o) {
                failures.push(format!("{}#{i}", e.name));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        failures.is_empty() && t < Duration::from_secs(300),
        format!("{groups} soluble groups, {checked} folders, failures {failures:?}, {t:.1?}"),
    )
}

fn c6_heiss(c: &Corpus) -> Outcome {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (name, f) in c.envelopes.iter().chain(&c.hyp_a) {
        if !classify_folder(f).is_bx2p() {
            continue;
        }
        let g = f.group();
        let o = o2(g);
        for n in normal_subgroups(g, 4096).unwrap().iter().filter(|n| o.is_subset(n)) {
            pairs += 1;
            match heiss_decomposition(f, n) {
                Ok(d) if d.holds() && d.k_size == f.k().len() => {}
                _ => failures.push(name.clone()),
            }
        }
    }
    let amt = amt_loop_size(5, 8);
    outcome(
        failures.is_empty() && pairs > 0 && amt == Some(48),
        format!("{pairs} (folder, N) pairs, failures {failures:?}, AMT(5, 8) = {amt:?}"),
    )
}

fn c7_lemmas(c: &Corpus) -> Outcome {
    let folders: Vec<Folder> = c.envelopes.iter().chain(&c.hyp_a).map(|(_, f)| f.clone()).collect();
    let names: Vec<&str> = c.envelopes.iter().chain(&c.hyp_a).map(|(n, _)| n.as_str()).collect();
    let mut applicable = 0;
    let mut failures = Vec::new();
    for (name, res) in names.iter().zip(lemma_suites(&folders)) {
        match res {
            Ok(reports) => {
                for r in reports {
                    applicable += r.applicable as usize;
                    if r.pass == Some(false) {
                        failures.push(format!("{name}: {}", r.lemma));
                    }
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(
        failures.is_empty() && applicable > 0,
        format!("{} folders, {applicable} applicable checks, failures {failures:?}", folders.len()),
    )
}

fn c8_d8() -> Outcome {
    let a = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
    let b = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
    let g = Generators::new(4, vec![a.clone(), b.clone()]).unwrap().materialize(DEFAULT_CAP).unwrap();
    let ai = g.index_of(&a).unwrap();
    let ab = g.index_of(&a.then(&b)).unwrap();
    let h = closure(&g, &[ab]);
    let f = match Folder::validated(g, h, vec![0, ai]) {
        Ok(f) => f,
        Err(e) => return outcome(false, format!("not a folder: {e}")),
    };
    let l = f.to_loop().unwrap();
    let is_c2 = find_loop_isomorphism(&l, &Loop::cyclic(2)).is_some();
    let ar_folder = classify_folder(&f).is_ar();
    let ar_loop = l.check_ar().is_ok();
    outcome(
        is_c2 && !ar_folder && ar_loop,
        format!("loop is C2: {is_c2}, folder A_r: {ar_folder}, loop A_r: {ar_loop}"),
    )
}

fn c9_pgl2(start: Instant) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (q, order, index) in [(5u64, 120usize, 6usize), (9, 720, 10)] {
        let p = make_pgl2(q, DEFAULT_CAP).unwrap();
        let idx = p.group.order() / p.borel.len();
        ok &= p.group.order() == order && idx == index;
        parts.push(format!("|PGL2({q})| = {}, Borel index {idx}", p.group.order()));
    }
    let p = make_pgl2(5, DEFAULT_CAP).unwrap();
    let outside = (1..p.group.order())
        .filter(|&x| p.group.mul(x, x) == 0 && !p.psl.contains(x))
        .count();
    let t = start.elapsed();
    ok &= outside == 10 && t < Duration::from_secs(5);
    parts.push(format!("involutions outside PSL2(5): {outside}, {t:.1?}"));
    outcome(ok, parts.join("; "))
}

/// Prime powers by trial division, independent of the library.
fn is_prime_power(n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    n > 1
}

fn c10_sieve(start: Instant) -> Outcome {
    let limit = 1u64 << 20;
    let oracle: Vec<u64> = (2..20)
        .map(|e| (1u64 << e) + 1)
        .filter(|&q| q <= limit && is_prime_power(q))
        .collect();
    let sieve = q_sieve(limit, QReading::PrimePower);
    let mut composite = vec![false; limit as usize + 1];
    let mut classified = Vec::new();
    for p in 2..=limit as usize {
        if composite[p] {
            continue;
        }
        for m in (p * p..=limit as usize).step_by(p) {
            composite[m] = true;
        }
        let mut q = p as u64;
        while q <= limit {
            if classify_q(q, QReading::PrimePower).admitted() {
                classified.push(q);
            }
            q *= p as u64;
        }
    }
    classified.sort_unstable();
    let t = start.elapsed();
    outcome(
        oracle == [5, 9, 17, 257, 65537] && sieve == oracle && classified == oracle && t < Duration::from_secs(10),
        format!("sieve {sieve:?}, per-q {classified:?}, oracle {oracle:?}, {t:.1?}"),
    )
}

fn c11_determinism() -> Outcome {
    let mut counts = Vec::new();
    let mut ok = true;
    for n in 1..=6 {
        let spec = EnumSpec::new(n);
        let serial = enumerate_with(&spec, Strategy::Rows).unwrap();
        let parallel = enumerate_parallel(&spec, Strategy::Rows).unwrap();
        let reversed = enumerate_with(&spec.reversed(true), Strategy::Rows).unwrap();
        ok &= serial.raw == parallel.raw && serial.raw == reversed.raw;
        ok &= serial.loops == parallel.loops && serial.loops == reversed.loops;
        counts.push(serial.loops.len());
    }
    ok &= counts == [1, 1, 1, 2, 6, 109];
    let bol5 = enumerate_with(&EnumSpec::new(5).bol(), Strategy::Rows).unwrap();
    let only_c5 = bol5.loops.len() == 1 && find_loop_isomorphism(&bol5.loops[0], &Loop::cyclic(5)).is_some();
    outcome(
        ok && only_c5,
        format!("classes by order {counts:?}, serial = parallel = reversed: {ok}, Bol order 5 only C5: {only_c5}"),
    )
}

fn main() {
    let t0 = Instant::now();
    let loops = loop_corpus();
    let envelopes: Vec<(String, Folder)> = loops
        .iter()
        .map(|(n, l)| (n.clone(), baer_envelope(l, DEFAULT_CAP).unwrap()))
        .collect();
    let build = t0.elapsed();
    let corpus = Corpus {
        loops,
        envelopes,
        hyp_a: hypothesis_a_corpus(SUITE_HITS_PER_H, 64),
    };
    println!(
        "corpus: {} loops, {} Hypothesis (A) folders",
        corpus.loops.len(),
        corpus.hyp_a.len()
    );

    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let t = Instant::now();
    let mut c1 = c1_round_trip(&corpus);
    let t1 = build + t.elapsed();
    c1.pass &= t1 < Duration::from_secs(60);
    c1.detail.push_str(&format!(", {t1:.1?}"));
    results.push((1, "round trip", c1));
    results.push((2, "Bol iff twisted", c2_bol_twisted(&corpus)));
    results.push((3, "Bruck envelope package", c3_bruck_envelope(&corpus)));
    results.push((4, "BX2P biconditional", c4_bx2p_tau(&corpus)));
    results.push((5, "soluble groups", c5_soluble(Instant::now())));
    results.push((6, "Heiss identity", c6_heiss(&corpus)));
    results.push((7, "lemma suite", c7_lemmas(&corpus)));
    results.push((8, "D8 example", c8_d8()));
    results.push((9, "PGL2 constructor", c9_pgl2(Instant::now())));
    results.push((10, "q sieve", c10_sieve(Instant::now())));
    results.push((11, "enumeration determinism", c11_determinism()));

    let mut failed = 0;
    for (i, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += !o.pass as usize;
        println!("criterion {i:>2} {tag} {name}: {}", o.detail);
    }
    println!("acceptance: {} of {} criteria pass ({:.1?})", results.len() - failed, results.len(), t0.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
