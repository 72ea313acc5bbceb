//! Exploratory probe: is the L²-closure monotone, i.e. does H₁ ≤ H₂ imply
//! closure(H₁) ≤ closure(H₂)? Nothing here is asserted; the probe samples
//! nested pairs and reports what it sees.
//!
//! cargo run --example closure_monotonicity [-- PAIRS]

use freesub::overgroups::l2_closure;
use freesub::random::{random_small_subgroup, random_subgroup};
use freesub::{Alphabet, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> freesub::Result<()> {
    let pairs: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(500);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut tested, mut monotone) = (0, 0);
    let mut first_failure = None;
    for n in 0..pairs {
        let a = Alphabet::new(2 + n % 2)?;
        let h1 = random_small_subgroup(&mut rng, a, 3, 5, 6);
        let extra = rng.gen_range(1..=2);
        let h2 = h1.join(&random_subgroup(&mut rng, a, extra, 4))?;
        if h2.vertex_count() > 7 {
            continue;
        }
        tested += 1;
        let (c1, c2) = (l2_closure(&h1)?, l2_closure(&h2)?);
        if c2.contains(&c1) {
            monotone += 1;
        } else if first_failure.is_none() {
            first_failure = Some((h1.clone(), h2.clone(), c1, c2));
        }
    }
    println!("{tested} nested pairs, closure containment held in {monotone}");
    if let Some((h1, h2, c1, c2)) = first_failure {
        let show = |g: &freesub::CoreGraph| {
            g.basis()
                .iter()
                .map(Word::pretty)
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("first non-monotone pair:");
        println!("  H1 = <{}>  closure <{}>", show(&h1), show(&c1));
        println!("  H2 = <{}>  closure <{}>", show(&h2), show(&c2));
    }
    Ok(())
}
