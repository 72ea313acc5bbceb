//! Seeded verification campaigns. Each one samples subgroups, tests one
//! property and stops at the first counterexample, which it reports in a
//! replayable form.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::overgroups::{crit_from, quotients_by_partition, Enumerator};
use crate::pullback::{check_strong_inert, hanna_neumann_check, intersect};
use crate::random::{
    corpus, random_complete_graph, random_small_subgroup, random_subgroup, scrambled,
};
use crate::stallings::CoreGraph;
use crate::words::{random_word, Alphabet};

/// Largest core graph the campaigns sample; enumeration stays cheap below it.
pub const CAMPAIGN_MAX_VERTICES: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub ambient_rank: usize,
    pub subgroup: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<Vec<String>>,
    pub detail: String,
}

impl Counterexample {
    fn new(property: &str, h: &CoreGraph, other: Option<&CoreGraph>, detail: String) -> Self {
        Counterexample {
            property: property.to_owned(),
            ambient_rank: h.alphabet().rank(),
            subgroup: basis_strings(h),
            other: other.map(basis_strings),
            detail,
        }
    }
}

pub fn basis_strings(g: &CoreGraph) -> Vec<String> {
    g.basis().iter().map(|w| w.to_string()).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn fail(&mut self, c: Counterexample) {
        self.counterexample = Some(c);
    }
}

/// Compressed `H` must be inert against `trials` random `L`; non-compressed
/// `H` must be refuted by its minimum-rank quotient.
pub fn inert(
    en: &Enumerator,
    h: &CoreGraph,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<Outcome> {
    let mut out = Outcome::default();
    let compressed = en.is_compressed(h)?;
    let witness = en.inertness_witness(h, trials, max_len, seed)?;
    out.checked = if compressed { trials } else { 1 };
    match (compressed, witness) {
        (true, Some(l)) => out.fail(Counterexample::new(
            "compressed implies inert",
            h,
            Some(&l),
            format!(
                "rank(H ∩ L) = {} > rank(L) = {}",
                intersect(h, &l)?.rank(),
                l.rank()
            ),
        )),
        (false, None) => out.fail(Counterexample::new(
            "non-compressed has a witness",
            h,
            None,
            "no witness returned".into(),
        )),
        (false, Some(l)) => {
            let i = intersect(h, &l)?.rank();
            if !(i == h.rank() && h.rank() > l.rank()) {
                out.fail(Counterexample::new(
                    "non-compressed has a witness",
                    h,
                    Some(&l),
                    format!(
                        "rank(H ∩ L*) = {i}, rank(H) = {}, rank(L*) = {}",
                        h.rank(),
                        l.rank()
                    ),
                ));
            }
        }
        (true, None) => {}
    }
    Ok(out)
}

/// For compressed `H`, `Σ brk(U ∩ xHx⁻¹) ≤ brk(U)` against random `U`.
/// Without the compressed hypothesis a failure is only reported, as the
/// inequality need not hold.
pub fn strong_inert(
    en: &Enumerator,
    h: &CoreGraph,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<Outcome> {
    let mut out = Outcome::default();
    if !en.is_compressed(h)? {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let gens = rng.gen_range(1..=3);
        let u = random_subgroup(&mut rng, h.alphabet(), gens, max_len);
        let cert = check_strong_inert(&u, h)?;
        out.checked += 1;
        if !cert.holds {
            out.fail(Counterexample::new(
                "compressed implies strongly inert",
                h,
                Some(&u),
                format!("sum {} > bound {}", cert.sum, cert.bound),
            ));
            break;
        }
    }
    Ok(out)
}

/// Lattice laws of `Crit(H ≤ F)` and the closure laws.
pub fn crit_lattice(en: &Enumerator, h: &CoreGraph) -> Result<Outcome> {
    let mut out = Outcome::default();
    let quotients = en.quotients(h)?;
    let crit = crit_from(&quotients)?;
    let is_member =
        |g: &CoreGraph| g.rank() == crit.pi_bar && quotients.contains(g) && g.contains(h);
    for (i, l1) in crit.members.iter().enumerate() {
        for l2 in &crit.members[i..] {
            out.checked += 1;
            let meet = intersect(l1, l2)?;
            let join = l1.join(l2)?;
            if !is_member(&meet) || !is_member(&join) {
                out.fail(Counterexample::new(
                    "Crit closed under meet and join",
                    h,
                    Some(&meet),
                    format!(
                        "L1 = {:?}, L2 = {:?}, meet rank {}, join rank {}, pi_bar {}",
                        basis_strings(l1),
                        basis_strings(l2),
                        meet.rank(),
                        join.rank(),
                        crit.pi_bar
                    ),
                ));
                return Ok(out);
            }
        }
        if !crit.closure.contains(l1) {
            out.fail(Counterexample::new(
                "closure contains Crit",
                h,
                Some(l1),
                "member not contained in the closure".into(),
            ));
            return Ok(out);
        }
    }
    let again = en.l2_closure(&crit.closure)?;
    if again != crit.closure || !crit.closure.contains(h) {
        out.fail(Counterexample::new(
            "closure idempotent and extensive",
            h,
            Some(&crit.closure),
            "closure(closure(H)) differs or misses H".into(),
        ));
    }
    Ok(out)
}

/// Runs `check` on `count` random subgroups. `check` gets the subgroup and
/// a per-subgroup seed.
pub fn over_corpus(
    seed: u64,
    count: usize,
    mut check: impl FnMut(&CoreGraph, u64) -> Result<Outcome>,
) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = Outcome::default();
    for h in corpus(&mut rng, count, CAMPAIGN_MAX_VERTICES) {
        let sub_seed = rng.gen();
        let o = check(&h, sub_seed)?;
        total.checked += o.checked;
        if let Some(mut c) = o.counterexample {
            c.detail = format!("{} (seed {sub_seed})", c.detail);
            total.counterexample = Some(c);
            break;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub budget: usize,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

type Suite = fn(&Enumerator, usize, u64) -> Result<Outcome>;

const SUITES: &[(&str, Suite)] = &[
    ("stallings", suite_stallings),
    ("enumeration-oracle", suite_enumeration),
    ("pibar-soundness", suite_pibar_soundness),
    ("pibar-consistency", suite_pibar_consistency),
    ("inert", suite_inert),
    ("strong-inert", suite_strong_inert),
    ("crit-lattice", suite_crit_lattice),
    ("strictly-compressed", suite_strictly_compressed),
    ("compressed-intersection", suite_compressed_intersection),
    ("hanna-neumann", suite_hanna_neumann),
];

/// Runs every suite with `budget` sampled subgroups (and `budget` inner
/// trials where a suite has them). A zero budget runs nothing. Timings are
/// only recorded when asked for, so reports are otherwise reproducible
/// byte for byte.
pub fn selftest(
    en: &Enumerator,
    seed: u64,
    budget: usize,
    timings: bool,
) -> Result<SelftestReport> {
    let mut suites = Vec::new();
    if budget > 0 {
        for (i, (name, run)) in SUITES.iter().enumerate() {
            let start = Instant::now();
            let o = run(en, budget, seed.wrapping_add(i as u64))?;
            suites.push(SuiteReport {
                suite: name,
                checked: o.checked,
                passed: o.passed(),
                counterexample: o.counterexample,
                millis: timings.then(|| start.elapsed().as_millis() as u64),
            });
        }
    }
    Ok(SelftestReport {
        seed,
        budget,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

fn suite_stallings(_: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::default();
    for h in corpus(&mut rng, budget, 10) {
        let alphabet = h.alphabet();
        // membership against the join oracle
        for _ in 0..10 {
            let len = rng.gen_range(0..=8);
            let w = random_word(&mut rng, len, alphabet);
            let joined = h.join(&CoreGraph::from_generators(
                std::slice::from_ref(&w),
                alphabet,
            )?)?;
            out.checked += 1;
            if h.accepts(&w) != (joined == h) {
                out.fail(Counterexample::new(
                    "membership agrees with join oracle",
                    &h,
                    None,
                    format!("word {}", w.pretty()),
                ));
                return Ok(out);
            }
        }
        // fold confluence
        let scrambled_graph = scrambled(&mut rng, &h, 6);
        out.checked += 1;
        if scrambled_graph.to_core() != h {
            out.fail(Counterexample::new(
                "fold is confluent",
                &h,
                None,
                "scrambled presentation folded to a different graph".into(),
            ));
            return Ok(out);
        }
        // basis round trip
        out.checked += 1;
        if CoreGraph::from_generators(&h.basis(), alphabet)? != h {
            out.fail(Counterexample::new(
                "basis generates the subgroup",
                &h,
                None,
                String::new(),
            ));
            return Ok(out);
        }
    }
    // Nielsen–Schreier on complete graphs
    for _ in 0..budget {
        let n = rng.gen_range(1..=6);
        let r = rng.gen_range(1..=3);
        let alphabet = Alphabet::new(r)?;
        if let Some(g) = random_complete_graph(&mut rng, n, alphabet) {
            out.checked += 1;
            if g.finite_index() != Some(n) || g.rank() != 1 + n * (r - 1) {
                out.fail(Counterexample::new(
                    "Nielsen–Schreier",
                    &g,
                    None,
                    format!("index {n}, rank {}", g.rank()),
                ));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn suite_enumeration(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, _| {
        let mut out = Outcome {
            checked: 1,
            ..Default::default()
        };
        let bfs = en.quotients(h)?;
        let partitions = quotients_by_partition(h);
        if bfs.len() != partitions.len() || !partitions.iter().all(|q| bfs.contains(q)) {
            out.fail(Counterexample::new(
                "quotient enumeration matches the partition route",
                h,
                None,
                format!("{} vs {} quotients", bfs.len(), partitions.len()),
            ));
        }
        Ok(out)
    })
}

fn suite_pibar_soundness(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, s| {
        let mut out = Outcome::default();
        let pi = en.pi_bar(h)?;
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        for _ in 0..budget {
            let gens = rng.gen_range(1..=2);
            let k = random_subgroup(&mut rng, h.alphabet(), gens, 6);
            let l = h.join(&k)?;
            out.checked += 1;
            if l.rank() < pi {
                out.fail(Counterexample::new(
                    "overgroups have rank at least pi_bar",
                    h,
                    Some(&l),
                    format!("rank {} < pi_bar {pi}", l.rank()),
                ));
                break;
            }
        }
        Ok(out)
    })
}

fn suite_pibar_consistency(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, _| {
        let mut out = Outcome {
            checked: 1,
            ..Default::default()
        };
        let ambient = h.alphabet().rank();
        let r = en.analyze(h, ambient)?;
        let closure = en.l2_closure(h)?;
        let chi_ok = r.beta0 as i64 - r.beta1 as i64 == ambient as i64 - h.rank() as i64;
        if !chi_ok || closure.rank() != r.pi_bar || r.compressed != (r.beta1 == 0) {
            out.fail(Counterexample::new(
                "Betti numbers agree with pi_bar",
                h,
                Some(&closure),
                format!("{r:?}"),
            ));
        }
        Ok(out)
    })
}

fn suite_inert(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, s| inert(en, h, budget, 10, s))
}

fn suite_strong_inert(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, s| strong_inert(en, h, budget, 6, s))
}

fn suite_crit_lattice(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, _| crit_lattice(en, h))
}

fn suite_strictly_compressed(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    over_corpus(seed, budget, |h, _| {
        let mut out = Outcome {
            checked: 1,
            ..Default::default()
        };
        let scan = en.is_strictly_compressed(h)?;
        let closed = en.l2_closure(h)? == h.canonical();
        if scan != closed {
            out.fail(Counterexample::new(
                "strictly compressed iff L2-closed",
                h,
                None,
                format!("scan {scan}, closure comparison {closed}"),
            ));
        }
        Ok(out)
    })
}

/// Samples compressed subgroups by rejection.
pub fn random_compressed<R: Rng + ?Sized>(
    en: &Enumerator,
    rng: &mut R,
    alphabet: Alphabet,
) -> Result<CoreGraph> {
    loop {
        let h = random_small_subgroup(rng, alphabet, 3, 5, CAMPAIGN_MAX_VERTICES);
        if en.is_compressed(&h)? {
            return Ok(h);
        }
    }
}

fn suite_compressed_intersection(en: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::default();
    let alphabet = Alphabet::new(2)?;
    for _ in 0..budget {
        let h = random_compressed(en, &mut rng, alphabet)?;
        let k = random_compressed(en, &mut rng, alphabet)?;
        let i = intersect(&h, &k)?;
        out.checked += 1;
        if !en.is_compressed(&i)? {
            out.fail(Counterexample::new(
                "intersection of compressed is compressed",
                &h,
                Some(&k),
                format!("intersection {:?}", basis_strings(&i)),
            ));
            break;
        }
    }
    Ok(out)
}

fn suite_hanna_neumann(_: &Enumerator, budget: usize, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::default();
    for i in 0..budget {
        let alphabet = Alphabet::new(2 + i % 2)?;
        let (gu, gh) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let u = random_subgroup(&mut rng, alphabet, gu, 8);
        let h = random_subgroup(&mut rng, alphabet, gh, 8);
        let cert = hanna_neumann_check(&u, &h)?;
        out.checked += 1;
        if !cert.holds {
            out.fail(Counterexample::new(
                "strengthened Hanna Neumann inequality",
                &h,
                Some(&u),
                format!("sum {} > bound {}", cert.sum, cert.bound),
            ));
            break;
        }
    }
    Ok(out)
}
