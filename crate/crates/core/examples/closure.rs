//! Critical overgroups (those of minimum rank) and the L²-closure, their
//! largest element.
//!
//! cargo run --example closure

use freesub::overgroups::crit;
use freesub::{CoreGraph, Word};

fn show(g: &CoreGraph) -> String {
    let words: Vec<String> = g.basis().iter().map(Word::pretty).collect();
    format!("<{}>", words.join(", "))
}

fn main() -> freesub::Result<()> {
    let f2 = freesub::Alphabet::new(2)?;
    for gens in [
        &["aa"][..],
        &["aa", "bb", "abab"],
        &["a", "baB"],
        &["aab"],
        &["abAB"],
    ] {
        let h = CoreGraph::parse(gens, f2)?;
        let c = crit(&h)?;
        println!("H = {}  rank {}  pi_bar {}", show(&h), h.rank(), c.pi_bar);
        for m in &c.members {
            println!("    critical: {}", show(m));
        }
        let closed = if c.closure == h { " (H is closed)" } else { "" };
        println!("    closure:  {}{closed}", show(&c.closure));
    }
    Ok(())
}
