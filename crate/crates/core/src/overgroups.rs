//! Quotient overgroups of a core graph.
//!
//! Whenever `H ≤ L`, the image of `core(H)` in `core(L)` is a folded
//! quotient of `core(H)` whose rank is at most `rk(L)`. So the minimum
//! rank over overgroups, `π̄(H ≤ F)`, is the minimum rank over the finitely
//! many folded quotients, and every overgroup attaining it is itself one of
//! those quotients. The set of quotients is the closure of `{core(H)}`
//! under "identify two vertices, fold, trim".

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::stallings::CoreGraph;

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Environment variable read by [`Enumerator::from_env`].
pub const CAP_ENV_VAR: &str = "FREESUB_ENUMERATION_CAP";

/// Quotient enumeration with a cap on the number of distinct graphs visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    pub cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// All folded quotients of a core graph, deduplicated, in discovery order.
#[derive(Clone, Debug)]
pub struct QuotientSet {
    members: Vec<CoreGraph>,
    keys: HashSet<Vec<u8>>,
    min_rank: usize,
}

impl QuotientSet {
    /// Members in breadth-first discovery order; the first is `H` itself.
    pub fn members(&self) -> &[CoreGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn min_rank(&self) -> usize {
        self.min_rank
    }

    pub fn contains(&self, g: &CoreGraph) -> bool {
        self.keys.contains(&g.canonical_bytes())
    }

    /// `(rank, count)` pairs in increasing rank order.
    pub fn rank_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for m in &self.members {
            *hist.entry(m.rank()).or_insert(0) += 1;
        }
        hist.into_iter().collect()
    }
}

/// Overgroups of minimum rank together with their maximum.
#[derive(Clone, Debug)]
pub struct CritSet {
    pub pi_bar: usize,
    pub members: Vec<CoreGraph>,
    /// The member containing every other member: the L²-closure.
    pub closure: CoreGraph,
}

impl Enumerator {
    pub fn new(cap: usize) -> Self {
        Enumerator { cap }
    }

    /// Default cap, overridden by `FREESUB_ENUMERATION_CAP` when it parses.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map_or_else(Enumerator::default, Enumerator::new)
    }

    /// Breadth-first search over single vertex identifications. Stops
    /// early once `stop` accepts a discovered graph.
    fn search(
        &self,
        g: &CoreGraph,
        mut stop: impl FnMut(&CoreGraph) -> bool,
    ) -> Result<QuotientSet> {
        let start = g.canonical();
        let mut keys = HashSet::from([start.canonical_bytes()]);
        let mut members = vec![start.clone()];
        let mut min_rank = start.rank();
        if stop(&start) {
            return Ok(QuotientSet {
                members,
                keys,
                min_rank,
            });
        }
        let mut queue = VecDeque::from([start]);
        while let Some(q) = queue.pop_front() {
            let n = q.vertex_count();
            for u in 0..n {
                for v in u + 1..n {
                    let r = q.identify(u, v);
                    if !keys.insert(r.canonical_bytes()) {
                        continue;
                    }
                    if keys.len() > self.cap {
                        return Err(Error::EnumerationLimit {
                            visited: keys.len(),
                            cap: self.cap,
                        });
                    }
                    min_rank = min_rank.min(r.rank());
                    members.push(r.clone());
                    if stop(&r) {
                        return Ok(QuotientSet {
                            members,
                            keys,
                            min_rank,
                        });
                    }
                    queue.push_back(r);
                }
            }
        }
        Ok(QuotientSet {
            members,
            keys,
            min_rank,
        })
    }

    pub fn quotients(&self, g: &CoreGraph) -> Result<QuotientSet> {
        self.search(g, |_| false)
    }

    /// `π̄(H ≤ F)`: the least rank of a subgroup containing `H`.
    pub fn pi_bar(&self, g: &CoreGraph) -> Result<usize> {
        if g.is_trivial() {
            return Ok(0);
        }
        // a nontrivial subgroup has no overgroup of rank below 1
        Ok(self.search(g, |q| q.rank() <= 1)?.min_rank())
    }

    pub fn crit(&self, g: &CoreGraph) -> Result<CritSet> {
        crit_from(&self.quotients(g)?)
    }

    /// The L²-closure: the largest overgroup of rank `π̄(H ≤ F)`.
    pub fn l2_closure(&self, g: &CoreGraph) -> Result<CoreGraph> {
        Ok(self.crit(g)?.closure)
    }
}

/// Extracts `Crit(H ≤ F)` from a full quotient set.
pub fn crit_from(quotients: &QuotientSet) -> Result<CritSet> {
    let pi_bar = quotients.min_rank();
    let members: Vec<CoreGraph> = quotients
        .members()
        .iter()
        .filter(|m| m.rank() == pi_bar)
        .cloned()
        .collect();
    let mut closure = members[0].clone();
    for m in &members[1..] {
        closure = closure.join(m)?;
    }
    if !quotients.contains(&closure) || closure.rank() != pi_bar {
        return Err(Error::Internal(format!(
            "join of the minimum-rank overgroups has rank {} (expected {pi_bar})",
            closure.rank()
        )));
    }
    if let Some(m) = members.iter().find(|m| !closure.contains(m)) {
        return Err(Error::Internal(format!(
            "closure {closure:?} does not contain member {m:?}"
        )));
    }
    Ok(CritSet {
        pi_bar,
        members,
        closure,
    })
}

pub fn enumerate_quotients(g: &CoreGraph) -> Result<QuotientSet> {
    Enumerator::default().quotients(g)
}

pub fn pi_bar(g: &CoreGraph) -> Result<usize> {
    Enumerator::default().pi_bar(g)
}

pub fn crit(g: &CoreGraph) -> Result<CritSet> {
    Enumerator::default().crit(g)
}

pub fn l2_closure(g: &CoreGraph) -> Result<CoreGraph> {
    Enumerator::default().l2_closure(g)
}

/// Second route to the quotient set: fold `core(H)` modulo every set
/// partition of its vertices. Exponential (Bell numbers); for cross-checks
/// on small graphs only.
pub fn quotients_by_partition(g: &CoreGraph) -> Vec<CoreGraph> {
    let n = g.vertex_count();
    let labeled = g.to_labeled();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // restricted growth strings: block[i] ≤ 1 + max(block[..i])
    let mut block = vec![0usize; n];
    loop {
        let mut first = vec![usize::MAX; n];
        let mut pairs = Vec::new();
        for (v, &b) in block.iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = v;
            } else {
                pairs.push((first[b], v));
            }
        }
        let q = labeled.fold_identifying(&pairs).to_core();
        if seen.insert(q.canonical_bytes()) {
            out.push(q);
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max_prefix = block[..i].iter().copied().max().unwrap_or(0);
            if block[i] <= max_prefix {
                block[i] += 1;
                for b in &mut block[i + 1..] {
                    *b = 0;
                }
                break;
            }
        }
    }
}
