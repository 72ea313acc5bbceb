//! Intersections via the pullback (product) graph, with the per-component
//! Betti numbers that count conjugate intersections and the two rank-sum
//! certificates built from them.
//!
//! cargo run --example intersections

use freesub::pullback::{check_strong_inert, hanna_neumann_check};
use freesub::{intersect, CoreGraph, ProductGraph, Word};

fn show(g: &CoreGraph) -> String {
    let words: Vec<String> = g.basis().iter().map(Word::pretty).collect();
    format!("<{}>", words.join(", "))
}

fn main() -> freesub::Result<()> {
    let f2 = freesub::Alphabet::new(2)?;
    let u = CoreGraph::parse(&["aa", "b"], f2)?;
    let h = CoreGraph::parse(&["aaa", "b"], f2)?;

    let i = intersect(&u, &h)?;
    println!("{} ∩ {} = {}", show(&u), show(&h), show(&i));

    let p = ProductGraph::new(&u, &h)?;
    println!(
        "product graph: {} vertices, {} edges, {} components",
        p.vertex_count(),
        p.edge_count(),
        p.components().len()
    );
    for (n, c) in p.components().iter().enumerate() {
        println!("  component {n}: {:?} betti {}", c.vertices, c.betti());
    }

    let cert = check_strong_inert(&u, &h)?;
    println!(
        "strong inertness against U: {}",
        serde_json::to_string(&cert)?
    );

    let x = CoreGraph::parse(&["aa", "bb", "abab"], f2)?;
    let y = CoreGraph::parse(&["ab", "ba", "aaa"], f2)?;
    let cert = hanna_neumann_check(&x, &y)?;
    println!(
        "Hanna Neumann for {} and {}: sum {} ≤ bound {} is {}",
        show(&x),
        show(&y),
        cert.sum,
        cert.bound,
        cert.holds
    );
    Ok(())
}
