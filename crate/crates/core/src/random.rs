//! Seeded random subgroups and corpora for verification campaigns.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::stallings::{CoreGraph, LabeledGraph};
use crate::words::{random_word, Alphabet, Word};

/// `⟨w₁, …, w_gens⟩` with each `wᵢ` a uniform reduced word whose length is
/// uniform in `1..=max_len`.
pub fn random_subgroup<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    gens: usize,
    max_len: usize,
) -> CoreGraph {
    let words: Vec<Word> = (0..gens)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            random_word(rng, len, alphabet)
        })
        .collect();
    CoreGraph::from_generators(&words, alphabet).expect("random words fit the alphabet")
}

/// Random subgroup whose core graph has at most `max_vertices` vertices,
/// resampling until one fits.
pub fn random_small_subgroup<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    max_gens: usize,
    max_len: usize,
    max_vertices: usize,
) -> CoreGraph {
    loop {
        let gens = rng.gen_range(1..=max_gens.max(1));
        let g = random_subgroup(rng, alphabet, gens, max_len);
        if g.vertex_count() <= max_vertices {
            return g;
        }
    }
}

/// Subgroups over `F₂` and `F₃` (alternating) with core graphs of at most
/// `max_vertices` vertices.
pub fn corpus<R: Rng + ?Sized>(rng: &mut R, count: usize, max_vertices: usize) -> Vec<CoreGraph> {
    let f2 = Alphabet::new(2).expect("rank 2");
    let f3 = Alphabet::new(3).expect("rank 3");
    (0..count)
        .map(|i| {
            let alphabet = if i % 2 == 0 { f2 } else { f3 };
            random_small_subgroup(rng, alphabet, 3, 6, max_vertices)
        })
        .collect()
}

/// The graph of `g` with its vertices shuffled and `extra` spurious
/// duplicate edges and dead-end branches attached, presented in random
/// edge order. Folding and trimming it must give back `g`.
pub fn scrambled<R: Rng + ?Sized>(rng: &mut R, g: &CoreGraph, extra: usize) -> LabeledGraph {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut out = LabeledGraph::new(g.alphabet(), n);
    out.set_basepoint(perm[g.basepoint()]);
    for e in g.edges() {
        out.add_edge(e.letter, perm[e.from], perm[e.to])
            .expect("letter in range");
    }
    let rank = g.alphabet().rank();
    for _ in 0..extra {
        let existing = g.edges();
        if !existing.is_empty() && rng.gen_bool(0.5) {
            // unfold one edge into a two-step detour that folds back
            let e = existing[rng.gen_range(0..existing.len())];
            let fresh = out.add_vertex();
            out.add_edge(e.letter, perm[e.from], fresh)
                .expect("letter in range");
            let back = out.add_vertex();
            out.add_edge(e.letter, back, fresh)
                .expect("letter in range");
            out.add_edge(e.letter, back, perm[e.to])
                .expect("letter in range");
        } else {
            // hanging branch
            let at = rng.gen_range(0..out.vertex_count());
            let fresh = out.add_vertex();
            out.add_edge(rng.gen_range(1..=rank), at, fresh)
                .expect("letter in range");
        }
    }
    out.edges_mut().shuffle(rng);
    out
}

/// A uniformly random connected complete graph on `n` vertices: each
/// generator acts as a random permutation. Returns `None` when the sampled
/// permutations do not act transitively.
pub fn random_complete_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    alphabet: Alphabet,
) -> Option<CoreGraph> {
    let mut edges = Vec::with_capacity(n * alphabet.rank());
    for letter in 1..=alphabet.rank() {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        edges.extend((0..n).map(|v| crate::stallings::Edge::new(letter, v, perm[v])));
    }
    CoreGraph::from_edges(alphabet, n, 0, &edges).ok()
}
