//! Seeded verification campaigns driven from the library: the inertness
//! and critical-lattice checks over a random corpus, then the full
//! self-test report.
//!
//! cargo run --example campaign [-- SEED]

use freesub::checks::{self, over_corpus};
use freesub::Enumerator;

fn main() -> freesub::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let en = Enumerator::default();

    let inert = over_corpus(seed, 40, |h, s| checks::inert(&en, h, 50, 8, s))?;
    println!("inert: {} checks, passed {}", inert.checked, inert.passed());
    let lattice = over_corpus(seed, 40, |h, _| checks::crit_lattice(&en, h))?;
    println!(
        "crit lattice: {} checks, passed {}",
        lattice.checked,
        lattice.passed()
    );

    let report = checks::selftest(&en, seed, 5, true)?;
    for s in &report.suites {
        println!(
            "{:<28} {:>5} checked  {}  {} ms",
            s.suite,
            s.checked,
            if s.passed { "ok" } else { "FAILED" },
            s.millis.unwrap_or(0)
        );
    }
    Ok(())
}
