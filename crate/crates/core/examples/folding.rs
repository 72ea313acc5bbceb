//! Stallings folding: build a core graph from generators, read off rank and
//! a free basis, and decide membership.
//!
//! cargo run --example folding

use freesub::{Alphabet, CoreGraph, LabeledGraph, Word};

fn main() -> freesub::Result<()> {
    let f2 = Alphabet::new(2)?;
    let gens: Vec<Word> = ["aa", "bb", "abab"]
        .iter()
        .map(|w| Word::parse(w, f2))
        .collect::<freesub::Result<_>>()?;

    let bouquet = LabeledGraph::bouquet(&gens, f2)?;
    println!(
        "bouquet: {} vertices, {} edges",
        bouquet.vertex_count(),
        bouquet.edges().len()
    );

    let h = CoreGraph::from_generators(&gens, f2)?;
    println!(
        "core graph: {} vertices, {} edges, rank {}",
        h.vertex_count(),
        h.edge_count(),
        h.rank()
    );
    for e in h.edges() {
        println!(
            "  {} --{}--> {}",
            e.from,
            (b'a' + e.letter as u8 - 1) as char,
            e.to
        );
    }
    let basis: Vec<String> = h.basis().iter().map(Word::pretty).collect();
    println!("basis: {}", basis.join(", "));

    for w in ["abaB", "bbaa", "baab", "abAB", "ab"] {
        let w = Word::parse(w, f2)?;
        println!("{:>6} in H: {}", w.pretty(), h.accepts(&w));
    }

    // a subgroup of finite index: every vertex has every letter in and out
    let k = CoreGraph::parse(&["aa", "b", "abA"], f2)?;
    println!(
        "<aa, b, abA> has index {:?} and rank {}",
        k.finite_index(),
        k.rank()
    );
    Ok(())
}
