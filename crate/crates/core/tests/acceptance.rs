//! Acceptance suite. Runs every criterion on a fixed-seed corpus and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use freesub::l2::{analyze, betti_pair, inertness_witness, is_compressed, is_strictly_compressed};
use freesub::overgroups::{crit, enumerate_quotients, l2_closure, pi_bar};
use freesub::pullback::strong_inert_sum;
use freesub::random::{
    corpus, random_complete_graph, random_small_subgroup, random_subgroup, scrambled,
};
use freesub::{intersect, random_word, Alphabet, CoreGraph};
use rand::Rng;

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 300;
const CORPUS_MAX_VERTICES: usize = 7;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_l<R: Rng>(rng: &mut R, alphabet: Alphabet, max_len: usize) -> CoreGraph {
    let gens = rng.gen_range(1..=3);
    random_subgroup(rng, alphabet, gens, max_len)
}

fn enumeration_oracle(corpus: &[CoreGraph]) -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for h in corpus {
        let lib: HashSet<Vec<u8>> = enumerate_quotients(h)
            .map_err(|e| e.to_string())?
            .members()
            .iter()
            .map(CoreGraph::canonical_bytes)
            .collect();
        let oracle = all_partition_quotients(h);
        ensure(lib == oracle, || {
            format!(
                "{h:?}: library {} quotients, oracle {}",
                lib.len(),
                oracle.len()
            )
        })?;
        total += lib.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}, budget 60 s")
    })?;
    Ok(format!(
        "{} subgroups, {total} quotients, {:.2} s",
        corpus.len(),
        elapsed.as_secs_f64()
    ))
}

fn pi_bar_soundness(corpus: &[CoreGraph]) -> Outcome {
    let mut rng = rng(2);
    let mut checked = 0;
    for h in corpus {
        let p = pi_bar(h).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let l = h.join(&random_l(&mut rng, h.alphabet(), 8)).unwrap();
            ensure(l.rank() >= p, || {
                format!("{h:?} ≤ {l:?} has rank below π̄ = {p}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} overgroups"))
}

fn pi_bar_consistency(corpus: &[CoreGraph]) -> Outcome {
    for h in corpus {
        let r = h.alphabet().rank();
        let (b0, b1) = betti_pair(h, r).map_err(|e| e.to_string())?;
        ensure(b0 as i64 - b1 as i64 == r as i64 - h.rank() as i64, || {
            format!("{h:?}: β₀ = {b0}, β₁ = {b1}")
        })?;
        let closure = l2_closure(h).map_err(|e| e.to_string())?;
        let p = pi_bar(h).map_err(|e| e.to_string())?;
        ensure(closure.rank() == p, || {
            format!("{h:?}: closure rank {} ≠ π̄ {p}", closure.rank())
        })?;
    }
    Ok(format!("{} subgroups", corpus.len()))
}

fn compressed_iff_inert(corpus: &[CoreGraph]) -> Outcome {
    let mut rng = rng(4);
    let (mut compressed, mut samples, mut witnesses) = (0, 0, 0);
    for h in corpus {
        if is_compressed(h).map_err(|e| e.to_string())? {
            compressed += 1;
            for _ in 0..100 {
                let l = random_l(&mut rng, h.alphabet(), 10);
                let i = intersect(h, &l).unwrap();
                ensure(i.rank() <= l.rank(), || {
                    format!("compressed {h:?} not inert against {l:?}")
                })?;
                samples += 1;
            }
        } else {
            let w = inertness_witness(h, 0, 0, 0)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no witness for {h:?}"))?;
            let i = intersect(h, &w).unwrap();
            ensure(i.rank() == h.rank() && h.rank() > w.rank(), || {
                format!("witness {w:?} for {h:?} fails")
            })?;
            witnesses += 1;
        }
    }
    Ok(format!(
        "{compressed} compressed × 100 samples ({samples}), {witnesses} witnesses"
    ))
}

fn compressed_strongly_inert(corpus: &[CoreGraph]) -> Outcome {
    let mut rng = rng(5);
    let mut samples = 0;
    for h in corpus {
        if !is_compressed(h).map_err(|e| e.to_string())? {
            continue;
        }
        for _ in 0..100 {
            let u = random_l(&mut rng, h.alphabet(), 10);
            let sum = strong_inert_sum(&u, h).unwrap();
            ensure(sum <= u.reduced_rank(), || {
                format!("{h:?} against {u:?}: sum {sum} > {}", u.reduced_rank())
            })?;
            samples += 1;
        }
    }
    Ok(format!("{samples} pairs"))
}

fn crit_lattice(corpus: &[CoreGraph]) -> Outcome {
    let mut pairs = 0;
    for h in corpus {
        let c = crit(h).map_err(|e| e.to_string())?;
        let members: HashSet<&CoreGraph> = c.members.iter().collect();
        for x in &c.members {
            ensure(c.closure.contains(x), || format!("closure misses {x:?}"))?;
            for y in &c.members {
                let meet = intersect(x, y).unwrap();
                let join = x.join(y).unwrap();
                ensure(members.contains(&meet) && members.contains(&join), || {
                    format!("crit({h:?}) not closed at {x:?}, {y:?}")
                })?;
                pairs += 1;
            }
        }
        ensure(c.closure.contains(h), || {
            format!("closure of {h:?} not extensive")
        })?;
        let again = l2_closure(&c.closure).map_err(|e| e.to_string())?;
        ensure(again == c.closure, || {
            format!("closure of {h:?} not idempotent")
        })?;
    }
    Ok(format!("{} subgroups, {pairs} member pairs", corpus.len()))
}

fn strictly_compressed(corpus: &[CoreGraph]) -> Outcome {
    let mut strict = 0;
    for h in corpus {
        let scan = is_strictly_compressed(h).map_err(|e| e.to_string())?;
        let closed = l2_closure(h).map_err(|e| e.to_string())? == *h;
        ensure(scan == closed, || {
            format!("{h:?}: quotient scan {scan}, closure comparison {closed}")
        })?;
        // and against the oracle's quotient set
        let oracle = all_partition_quotient_graphs(h)
            .iter()
            .all(|q| q == h || q.rank() > h.rank());
        ensure(oracle == scan, || format!("{h:?}: oracle says {oracle}"))?;
        strict += scan as usize;
    }
    Ok(format!(
        "{} subgroups, {strict} strictly compressed",
        corpus.len()
    ))
}

/// Compressed subgroups of rank ≥ `min_rank`, by rejection.
fn sample_compressed<R: Rng>(rng: &mut R, alphabet: Alphabet, min_rank: usize) -> CoreGraph {
    loop {
        let h = random_small_subgroup(rng, alphabet, 3, 4, CORPUS_MAX_VERTICES);
        if h.rank() >= min_rank && is_compressed(&h).unwrap() {
            return h;
        }
    }
}

fn compressed_intersections() -> Outcome {
    let mut rng = rng(8);
    let (mut oracle_checked, mut nontrivial) = (0, 0);
    for n in 0..200 {
        let a = f(2 + n % 2);
        // every other pair has rank ≥ 2 on both sides, so that the
        // intersection is often large enough to matter
        let min_rank = if n % 4 < 2 { 2 } else { 1 };
        let h = sample_compressed(&mut rng, a, min_rank);
        let k = sample_compressed(&mut rng, a, min_rank);
        let i = intersect(&h, &k).unwrap();
        ensure(is_compressed(&i).map_err(|e| e.to_string())?, || {
            format!("{h:?} ∩ {k:?} = {i:?} is not compressed")
        })?;
        nontrivial += (i.rank() >= 2) as usize;
        if i.vertex_count() <= 8 {
            let min = all_partition_quotient_graphs(&i)
                .iter()
                .map(CoreGraph::rank)
                .min()
                .unwrap();
            ensure(min == i.rank(), || format!("oracle: {i:?} has π̄ {min}"))?;
            oracle_checked += 1;
        }
    }
    Ok(format!(
        "200 pairs, {nontrivial} with rank ≥ 2 ({oracle_checked} also checked by the oracle)"
    ))
}

fn hanna_neumann() -> Outcome {
    let mut rng = rng(9);
    for n in 0..200 {
        let a = f(2 + n % 2);
        let u = random_l(&mut rng, a, 8);
        let h = random_l(&mut rng, a, 8);
        let sum = strong_inert_sum(&u, &h).unwrap();
        let bound = u.reduced_rank() * h.reduced_rank();
        ensure(sum <= bound, || format!("{u:?}, {h:?}: {sum} > {bound}"))?;
    }
    Ok("200 pairs".into())
}

fn stallings() -> Outcome {
    let mut rng = rng(10);
    // membership against the join oracle
    let mut members = 0;
    for n in 0..1000 {
        let a = f(2 + n % 2);
        let h = random_l(&mut rng, a, 6);
        for k in 0..10 {
            // half the samples are products of generators, so both answers occur
            let w = if k % 2 == 0 {
                let len = rng.gen_range(0..=10);
                random_word(&mut rng, len, a)
            } else {
                let basis = h.basis();
                let mut w = freesub::Word::identity();
                for _ in 0..rng.gen_range(1..=3) {
                    let b = &basis[rng.gen_range(0..basis.len())];
                    w = w.concat(&if rng.gen() { b.clone() } else { b.inverse() });
                }
                w
            };
            let single = CoreGraph::from_generators(std::slice::from_ref(&w), a).unwrap();
            let by_join = h.join(&single).unwrap() == h;
            ensure(h.accepts(&w) == by_join, || format!("{h:?} and {w}"))?;
            members += by_join as usize;
        }
    }
    // Nielsen–Schreier on complete graphs
    let mut complete = 0;
    for n in 1..=6 {
        for r in 1..=3 {
            for _ in 0..100 {
                if let Some(g) = random_complete_graph(&mut rng, n, f(r)) {
                    ensure(g.finite_index() == Some(n), || format!("{g:?} index"))?;
                    ensure(g.rank() == n * (r - 1) + 1, || {
                        format!("{g:?}: rank {} for n={n}, r={r}", g.rank())
                    })?;
                    complete += 1;
                }
            }
        }
    }
    // confluence
    let mut orders = 0;
    for n in 0..10 {
        let a = f(2 + n % 2);
        let h = random_l(&mut rng, a, 8);
        for _ in 0..50 {
            let extra = rng.gen_range(0..8);
            let s = scrambled(&mut rng, &h, extra);
            ensure(s.to_core() == h, || {
                format!("fold of a scrambled {h:?} differs")
            })?;
            orders += 1;
        }
    }
    Ok(format!(
        "10000 membership samples ({members} members), {complete} complete graphs, {orders} fold orders"
    ))
}

fn performance(corpus: &[CoreGraph]) -> Outcome {
    let mut rng = rng(11);
    let mut subjects: Vec<CoreGraph> = corpus.to_vec();
    let mut large = 0;
    while large < 100 {
        let a = f(2 + large % 2);
        let h = random_small_subgroup(&mut rng, a, 3, 8, 8);
        if h.vertex_count() >= 7 {
            subjects.push(h);
            large += 1;
        }
    }
    let (mut worst_small, mut worst_large) = (Duration::ZERO, Duration::ZERO);
    for h in &subjects {
        let start = Instant::now();
        analyze(h, h.alphabet().rank()).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        if h.vertex_count() <= 5 {
            worst_small = worst_small.max(t);
            ensure(t < Duration::from_millis(500), || {
                format!("{h:?} took {t:?}")
            })?;
        }
        worst_large = worst_large.max(t);
        ensure(t < Duration::from_secs(10), || format!("{h:?} took {t:?}"))?;
    }
    Ok(format!(
        "{} subgroups; worst ≤5 vertices {:.1} ms, worst ≤8 vertices {:.1} ms",
        subjects.len(),
        worst_small.as_secs_f64() * 1e3,
        worst_large.as_secs_f64() * 1e3
    ))
}

fn main() {
    let corpus = corpus(&mut rng(CORPUS_SEED), CORPUS_SIZE, CORPUS_MAX_VERTICES);
    let criteria: Vec<Criterion> = vec![
        (
            "oracle equivalence of quotient enumeration",
            Box::new(|| enumeration_oracle(&corpus)),
        ),
        (
            "pi-bar is a lower bound on overgroup ranks",
            Box::new(|| pi_bar_soundness(&corpus)),
        ),
        (
            "Euler characteristic and closure rank",
            Box::new(|| pi_bar_consistency(&corpus)),
        ),
        (
            "compressed iff inert",
            Box::new(|| compressed_iff_inert(&corpus)),
        ),
        (
            "compressed implies strongly inert",
            Box::new(|| compressed_strongly_inert(&corpus)),
        ),
        (
            "critical overgroups form a lattice",
            Box::new(|| crit_lattice(&corpus)),
        ),
        (
            "strictly compressed iff L2-closed",
            Box::new(|| strictly_compressed(&corpus)),
        ),
        (
            "intersections of compressed subgroups",
            Box::new(compressed_intersections),
        ),
        (
            "strengthened Hanna Neumann inequality",
            Box::new(hanna_neumann),
        ),
        ("Stallings folding correctness", Box::new(stallings)),
        (
            "analyze performance floor",
            Box::new(|| performance(&corpus)),
        ),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_owned()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} [{secs:.2} s]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail} [{secs:.2} s]", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
