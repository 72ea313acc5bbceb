//! Independent reference implementations used as test oracles. None of
//! these call the library's folding code; results are converted to
//! `CoreGraph` only at the end, through the validating edge-list
//! constructor, to compare canonical forms.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use freesub::{Alphabet, CoreGraph, Edge, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(letter, from, to)` with letters 1-based.
pub type RawEdge = (usize, usize, usize);

#[derive(Clone, Debug)]
pub struct RawGraph {
    pub vertices: usize,
    pub base: usize,
    pub edges: Vec<RawEdge>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(rank: usize) -> Alphabet {
    Alphabet::new(rank).unwrap()
}

pub fn sub(gens: &[&str], rank: usize) -> CoreGraph {
    CoreGraph::parse(gens, f(rank)).unwrap()
}

pub fn word(text: &str, rank: usize) -> Word {
    Word::parse(text, f(rank)).unwrap()
}

/// Petals at vertex 0, one per word, letter by letter.
pub fn naive_bouquet(words: &[Word]) -> RawGraph {
    let mut g = RawGraph {
        vertices: 1,
        base: 0,
        edges: Vec::new(),
    };
    for w in words {
        let n = w.len();
        let mut at = 0;
        for (i, l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                g.vertices += 1;
                g.vertices - 1
            };
            if l.is_inverse() {
                g.edges.push((l.index(), next, at));
            } else {
                g.edges.push((l.index(), at, next));
            }
            at = next;
        }
    }
    g
}

/// Renames vertex `from` to `to` everywhere.
fn rename(g: &mut RawGraph, from: usize, to: usize) {
    for e in &mut g.edges {
        if e.1 == from {
            e.1 = to;
        }
        if e.2 == from {
            e.2 = to;
        }
    }
    if g.base == from {
        g.base = to;
    }
}

fn dedupe(g: &mut RawGraph) {
    let mut seen = HashSet::new();
    g.edges.retain(|e| seen.insert(*e));
}

/// Folds one offending pair at a time, scanning all edge pairs each round.
pub fn naive_fold(mut g: RawGraph) -> RawGraph {
    dedupe(&mut g);
    loop {
        let mut merge = None;
        'scan: for i in 0..g.edges.len() {
            for j in i + 1..g.edges.len() {
                let (a, b) = (g.edges[i], g.edges[j]);
                if a.0 != b.0 {
                    continue;
                }
                if a.1 == b.1 && a.2 != b.2 {
                    merge = Some((a.2, b.2));
                    break 'scan;
                }
                if a.2 == b.2 && a.1 != b.1 {
                    merge = Some((a.1, b.1));
                    break 'scan;
                }
            }
        }
        match merge {
            Some((x, y)) => {
                let (keep, gone) = (x.min(y), x.max(y));
                rename(&mut g, gone, keep);
                dedupe(&mut g);
            }
            None => return g,
        }
    }
}

/// Drops everything outside the basepoint component, then leaves of degree
/// ≤ 1 other than the basepoint, one at a time.
pub fn naive_trim(mut g: RawGraph) -> RawGraph {
    let mut alive: HashSet<usize> = HashSet::from([g.base]);
    loop {
        let before = alive.len();
        for &(_, a, b) in &g.edges {
            if alive.contains(&a) || alive.contains(&b) {
                alive.insert(a);
                alive.insert(b);
            }
        }
        if alive.len() == before {
            break;
        }
    }
    g.edges.retain(|e| alive.contains(&e.1));
    loop {
        let leaf = alive.iter().copied().filter(|&v| v != g.base).find(|&v| {
            let degree: usize = g
                .edges
                .iter()
                .map(|e| (e.1 == v) as usize + (e.2 == v) as usize)
                .sum();
            degree <= 1
        });
        match leaf {
            Some(v) => {
                alive.remove(&v);
                g.edges.retain(|e| e.1 != v && e.2 != v);
            }
            None => break,
        }
    }
    // compact ids
    let mut ids: Vec<usize> = alive.into_iter().collect();
    ids.sort();
    let map: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    RawGraph {
        vertices: ids.len(),
        base: map[&g.base],
        edges: g
            .edges
            .iter()
            .map(|&(l, a, b)| (l, map[&a], map[&b]))
            .collect(),
    }
}

/// Converts a folded, trimmed raw graph; panics if it is not a valid core graph.
pub fn to_core(g: &RawGraph, alphabet: Alphabet) -> CoreGraph {
    let edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|&(l, a, b)| Edge::new(l, a, b))
        .collect();
    CoreGraph::from_edges(alphabet, g.vertices, g.base, &edges)
        .expect("oracle output is a core graph")
}

pub fn naive_core(words: &[Word], alphabet: Alphabet) -> CoreGraph {
    to_core(&naive_trim(naive_fold(naive_bouquet(words))), alphabet)
}

pub fn raw_of(g: &CoreGraph) -> RawGraph {
    RawGraph {
        vertices: g.vertex_count(),
        base: g.basepoint(),
        edges: g.edges().iter().map(|e| (e.letter, e.from, e.to)).collect(),
    }
}

/// Every set partition of `0..n`, by recursive block assignment.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(i + 1, n, blocks.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// All folded quotients of `g`: collapse each set partition, fold, trim.
pub fn all_partition_quotient_graphs(g: &CoreGraph) -> Vec<CoreGraph> {
    let raw = raw_of(g);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in set_partitions(raw.vertices) {
        let collapsed = RawGraph {
            vertices: raw.vertices,
            base: p[raw.base],
            edges: raw.edges.iter().map(|&(l, a, b)| (l, p[a], p[b])).collect(),
        };
        let q = to_core(&naive_trim(naive_fold(collapsed)), g.alphabet());
        if seen.insert(q.canonical_bytes()) {
            out.push(q);
        }
    }
    out
}

/// Canonical keys of [`all_partition_quotient_graphs`].
pub fn all_partition_quotients(g: &CoreGraph) -> HashSet<Vec<u8>> {
    all_partition_quotient_graphs(g)
        .iter()
        .map(CoreGraph::canonical_bytes)
        .collect()
}

/// Reads `w` from `start` in a folded raw graph.
pub fn raw_read(g: &RawGraph, start: usize, w: &Word) -> Option<usize> {
    let mut at = start;
    for l in w.letters() {
        let next = g.edges.iter().find_map(|&(x, a, b)| {
            if x != l.index() {
                None
            } else if !l.is_inverse() && a == at {
                Some(b)
            } else if l.is_inverse() && b == at {
                Some(a)
            } else {
                None
            }
        });
        at = next?;
    }
    Some(at)
}

/// All reduced words of length ≤ `max_len`, shortest first.
pub fn all_words(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in alphabet.letters() {
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(l);
                next.push(Word::reduce(letters));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Exact membership test for the double coset `U x H`.
///
/// An automaton reads loops of `U`, then `x`, then loops of `H`, never
/// going back, so it accepts exactly the (unreduced) words of `U x H`.
/// Saturating it with ε-moves across cancelling letter pairs makes it
/// accept the reduced form of every such word.
pub struct DoubleCoset {
    states: usize,
    moves: Vec<(usize, freesub::Letter, usize)>,
    eps: Vec<Vec<bool>>,
    start: usize,
    accept: usize,
}

impl DoubleCoset {
    pub fn new(u: &CoreGraph, x: &Word, h: &CoreGraph) -> Self {
        use freesub::Letter;
        let mut moves = Vec::new();
        let both = |moves: &mut Vec<(usize, Letter, usize)>, l: usize, a: usize, b: usize| {
            moves.push((a, Letter::new(l, false), b));
            moves.push((b, Letter::new(l, true), a));
        };
        for e in u.edges() {
            both(&mut moves, e.letter, e.from, e.to);
        }
        let mut states = u.vertex_count();
        let mut at = u.basepoint();
        for &l in x.letters() {
            // one-way: no reverse move along the connecting path
            moves.push((at, l, states));
            at = states;
            states += 1;
        }
        let offset = states;
        states += h.vertex_count();
        for e in h.edges() {
            both(&mut moves, e.letter, e.from + offset, e.to + offset);
        }
        // ε from the path end into H's basepoint
        let mut eps = vec![vec![false; states]; states];
        for (s, row) in eps.iter_mut().enumerate() {
            row[s] = true;
        }
        eps[at][offset + h.basepoint()] = true;
        let mut d = DoubleCoset {
            states,
            moves,
            eps,
            start: u.basepoint(),
            accept: offset + h.basepoint(),
        };
        d.saturate();
        d
    }

    fn close(&mut self) {
        let n = self.states;
        for k in 0..n {
            for i in 0..n {
                if self.eps[i][k] {
                    for j in 0..n {
                        if self.eps[k][j] {
                            self.eps[i][j] = true;
                        }
                    }
                }
            }
        }
    }

    fn saturate(&mut self) {
        loop {
            self.close();
            let mut added = false;
            for &(a, l, b) in &self.moves {
                for &(c, m, t) in &self.moves {
                    if m == l.inverse() && self.eps[b][c] && !self.eps[a][t] {
                        self.eps[a][t] = true;
                        added = true;
                    }
                }
            }
            if !added {
                return;
            }
        }
    }

    fn closure(&self, set: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.states];
        for (s, &on) in set.iter().enumerate() {
            if on {
                for (t, &e) in self.eps[s].iter().enumerate() {
                    out[t] |= e;
                }
            }
        }
        out
    }

    /// Whether the reduced word `y` lies in `U x H`.
    pub fn contains(&self, y: &Word) -> bool {
        let mut set = vec![false; self.states];
        set[self.start] = true;
        set = self.closure(&set);
        for &l in y.letters() {
            let mut next = vec![false; self.states];
            for &(a, m, b) in &self.moves {
                if m == l && set[a] {
                    next[b] = true;
                }
            }
            set = self.closure(&next);
        }
        set[self.accept]
    }
}

/// Positive Betti numbers `rk(U ∩ xHx⁻¹)` over double cosets `UxH`, found
/// by enumerating representatives `x` of length ≤ `max_len`.
pub fn bounded_conjugator_ranks(u: &CoreGraph, h: &CoreGraph, max_len: usize) -> Vec<usize> {
    let mut reps: Vec<DoubleCoset> = Vec::new();
    let mut ranks = Vec::new();
    for x in all_words(u.alphabet(), max_len) {
        let r = freesub::intersect(u, &h.conjugate(&x).unwrap())
            .unwrap()
            .rank();
        if r == 0 {
            continue;
        }
        if reps.iter().any(|d| d.contains(&x)) {
            continue;
        }
        reps.push(DoubleCoset::new(u, &x, h));
        ranks.push(r);
    }
    ranks.sort();
    ranks
}

/// Vertex eccentricity of the basepoint (undirected).
pub fn base_depth(g: &CoreGraph) -> usize {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[g.basepoint()] = 0;
    let mut queue = std::collections::VecDeque::from([g.basepoint()]);
    while let Some(v) = queue.pop_front() {
        for e in g.edges() {
            for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                if a == v && dist[b] == usize::MAX {
                    dist[b] = dist[v] + 1;
                    queue.push_back(b);
                }
            }
        }
    }
    dist.into_iter().max().unwrap()
}
