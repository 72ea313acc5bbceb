//! The full invariant report for a subgroup: pi_bar, both L²-Betti numbers,
//! the Euler characteristic and the compression predicates.
//!
//! cargo run --example l2_report [-- AMBIENT_RANK WORD...]

use freesub::{l2, Alphabet, CoreGraph};

fn main() -> freesub::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (rank, gens): (usize, Vec<&str>) = match args.split_first() {
        Some((r, rest)) => (
            r.parse()
                .map_err(|_| freesub::Error::Input(format!("bad rank {r:?}")))?,
            rest.iter().map(String::as_str).collect(),
        ),
        None => (2, vec!["aa", "bb", "abab"]),
    };
    let h = CoreGraph::parse(&gens, Alphabet::new(rank)?)?;
    let report = l2::analyze(&h, rank)?;
    println!("{}", serde_json::to_string_pretty(&report)?);

    if let Some(w) = l2::inertness_witness(&h, 200, 8, 1)? {
        let i = freesub::intersect(&h, &w)?;
        println!(
            "not inert: L = {:?} has rank {} but H ∩ L has rank {}",
            w,
            w.rank(),
            i.rank()
        );
    }
    Ok(())
}
