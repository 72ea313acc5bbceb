//! Enumerates every folded quotient of a core graph: the finite family of
//! overgroups that any overgroup of `H` factors through.
//!
//! cargo run --example quotients [-- WORD...]

use freesub::{Alphabet, CoreGraph, Enumerator, Word};

fn main() -> freesub::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let gens: Vec<&str> = if args.is_empty() {
        vec!["aa", "bb", "abab"]
    } else {
        args.iter().map(String::as_str).collect()
    };
    let f = Alphabet::new(2)?;
    let h = CoreGraph::parse(&gens, f)?;

    let q = Enumerator::from_env().quotients(&h)?;
    println!(
        "{} quotients of a {}-vertex graph",
        q.len(),
        h.vertex_count()
    );
    for (rank, count) in q.rank_histogram() {
        println!("  rank {rank}: {count}");
    }
    for m in q.members() {
        let basis: Vec<String> = m.basis().iter().map(Word::pretty).collect();
        println!(
            "  V={} rank {}  <{}>",
            m.vertex_count(),
            m.rank(),
            basis.join(", ")
        );
    }
    println!("minimum rank over all overgroups: {}", q.min_rank());
    Ok(())
}
