//! JSON and Graphviz DOT forms of a core graph, and reading JSON back.
//!
//! cargo run --example export

use freesub::CoreGraph;

fn main() -> freesub::Result<()> {
    let h = CoreGraph::parse(&["aa", "bb", "abab"], freesub::Alphabet::new(2)?)?;
    let json = h.to_json();
    println!("{json}");
    let back = CoreGraph::from_json(&json)?;
    assert_eq!(back, h);
    println!("{}", h.to_dot());
    Ok(())
}
