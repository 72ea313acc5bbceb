//! L²-Betti numbers of the pair `(H, F)` and the rank predicates they
//! decide.
//!
//! With `π̄ = π̄(H ≤ F)`, the module `I_{ℚ[F]} / ᶠI_{ℚ[H]}` has
//! `β₁ = rk(H) − π̄` and `β₀ = rk(F) − π̄`, and the L²-closure of `H` has
//! rank `π̄`. Everything here is computed from the quotient enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::overgroups::{crit_from, Enumerator};
use crate::pullback::intersect;
use crate::random::random_subgroup;
use crate::stallings::CoreGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L2Report {
    pub ambient_rank: usize,
    pub subgroup_rank: usize,
    pub pi_bar: usize,
    pub beta0: usize,
    pub beta1: usize,
    pub chi: i64,
    pub compressed: bool,
    pub strictly_compressed: bool,
    pub l2_closed: bool,
    pub closure_basis: Vec<String>,
}

fn check_ambient(g: &CoreGraph, ambient_rank: usize) -> Result<()> {
    if ambient_rank < g.max_letter() || ambient_rank == 0 {
        return Err(Error::AmbientRankTooSmall {
            ambient: ambient_rank,
            needed: g.max_letter().max(1),
        });
    }
    Ok(())
}

impl Enumerator {
    /// `(β₀, β₁)` of the pair `(H, F)` with `rk(F) = ambient_rank`.
    pub fn betti_pair(&self, g: &CoreGraph, ambient_rank: usize) -> Result<(usize, usize)> {
        check_ambient(g, ambient_rank)?;
        let pi = self.pi_bar(g)?;
        Ok((ambient_rank - pi, g.rank() - pi))
    }

    /// No overgroup has smaller rank. Equivalent to inert and to strongly
    /// inert.
    pub fn is_compressed(&self, g: &CoreGraph) -> Result<bool> {
        Ok(self.pi_bar(g)? == g.rank())
    }

    /// Every proper overgroup has strictly larger rank.
    pub fn is_strictly_compressed(&self, g: &CoreGraph) -> Result<bool> {
        let start = g.canonical();
        let quotients = self.quotients(g)?;
        Ok(quotients
            .members()
            .iter()
            .all(|m| *m == start || m.rank() > start.rank()))
    }

    pub fn analyze(&self, g: &CoreGraph, ambient_rank: usize) -> Result<L2Report> {
        check_ambient(g, ambient_rank)?;
        let start = g.canonical();
        let quotients = self.quotients(&start)?;
        let crit = crit_from(&quotients)?;
        let pi_bar = crit.pi_bar;
        let subgroup_rank = start.rank();
        let strictly_compressed = quotients
            .members()
            .iter()
            .all(|m| *m == start || m.rank() > subgroup_rank);
        Ok(L2Report {
            ambient_rank,
            subgroup_rank,
            pi_bar,
            beta0: ambient_rank - pi_bar,
            beta1: subgroup_rank - pi_bar,
            chi: ambient_rank as i64 - subgroup_rank as i64,
            compressed: pi_bar == subgroup_rank,
            strictly_compressed,
            l2_closed: crit.closure == start,
            closure_basis: crit.closure.basis().iter().map(|w| w.to_string()).collect(),
        })
    }

    /// Looks for an `L` with `rk(H ∩ L) > rk(L)`.
    ///
    /// When `H` is not compressed the answer is deterministic: the first
    /// minimum-rank quotient, which contains `H`. Otherwise `trials` random
    /// subgroups with generators of length at most `max_len` are tested and
    /// any violation found is returned.
    pub fn inertness_witness(
        &self,
        g: &CoreGraph,
        trials: usize,
        max_len: usize,
        seed: u64,
    ) -> Result<Option<CoreGraph>> {
        if g.is_trivial() {
            return Ok(None);
        }
        let quotients = self.quotients(g)?;
        if quotients.min_rank() < g.rank() {
            let witness = quotients
                .members()
                .iter()
                .find(|m| m.rank() == quotients.min_rank())
                .expect("minimum is attained")
                .clone();
            return Ok(Some(witness));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let gens = rng.gen_range(1..=3);
            let l = random_subgroup(&mut rng, g.alphabet(), gens, max_len.max(1));
            if intersect(g, &l)?.rank() > l.rank() {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }
}

pub fn betti_pair(g: &CoreGraph, ambient_rank: usize) -> Result<(usize, usize)> {
    Enumerator::default().betti_pair(g, ambient_rank)
}

pub fn is_compressed(g: &CoreGraph) -> Result<bool> {
    Enumerator::default().is_compressed(g)
}

pub fn is_strictly_compressed(g: &CoreGraph) -> Result<bool> {
    Enumerator::default().is_strictly_compressed(g)
}

pub fn analyze(g: &CoreGraph, ambient_rank: usize) -> Result<L2Report> {
    Enumerator::default().analyze(g, ambient_rank)
}

pub fn inertness_witness(
    g: &CoreGraph,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<Option<CoreGraph>> {
    Enumerator::default().inertness_witness(g, trials, max_len, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn sub(gens: &[&str]) -> CoreGraph {
        CoreGraph::parse(gens, Alphabet::new(2).unwrap()).unwrap()
    }

    #[test]
    fn betti_pairs() {
        assert_eq!(betti_pair(&sub(&["aa"]), 2).unwrap(), (1, 0));
        assert_eq!(betti_pair(&sub(&["a", "b"]), 2).unwrap(), (0, 0));
        assert_eq!(betti_pair(&sub(&["aa", "bb", "abab"]), 2).unwrap(), (0, 1));
        assert!(matches!(
            betti_pair(&sub(&["ab"]), 1),
            Err(Error::AmbientRankTooSmall {
                ambient: 1,
                needed: 2
            })
        ));
    }

    #[test]
    fn compressed_predicates() {
        assert!(is_compressed(&sub(&["aa"])).unwrap());
        assert!(is_compressed(&sub(&["abAAB"])).unwrap());
        assert!(!is_compressed(&sub(&["aa", "bb", "abab"])).unwrap());
        assert!(is_strictly_compressed(&sub(&["a"])).unwrap());
        assert!(!is_strictly_compressed(&sub(&["aa"])).unwrap());
        assert!(is_strictly_compressed(&sub(&["a", "b"])).unwrap());
    }

    #[test]
    fn reports() {
        let r = analyze(&sub(&["aa"]), 2).unwrap();
        assert_eq!((r.pi_bar, r.beta0, r.beta1, r.chi), (1, 1, 0, 1));
        assert!(r.compressed && !r.strictly_compressed && !r.l2_closed);
        assert_eq!(r.closure_basis, ["a"]);

        let r = analyze(&sub(&["a", "b"]), 2).unwrap();
        assert_eq!((r.pi_bar, r.beta0, r.beta1, r.chi), (2, 0, 0, 0));
        assert!(r.compressed && r.strictly_compressed && r.l2_closed);

        let r = analyze(&sub(&["aa", "bb", "abab"]), 2).unwrap();
        assert_eq!((r.pi_bar, r.beta0, r.beta1, r.chi), (2, 0, 1, -1));
        assert!(!r.compressed);
        assert_eq!(r.closure_basis, ["a", "b"]);
    }

    #[test]
    fn trivial_subgroup_report() {
        let t = CoreGraph::trivial(Alphabet::new(2).unwrap());
        let r = analyze(&t, 2).unwrap();
        assert_eq!((r.pi_bar, r.beta0, r.beta1, r.chi), (0, 2, 0, 2));
        assert!(r.compressed && r.strictly_compressed && r.l2_closed);
        assert!(r.closure_basis.is_empty());
        assert_eq!(inertness_witness(&t, 10, 5, 0).unwrap(), None);
    }

    #[test]
    fn conjugate_pair_closes_to_the_whole_group() {
        // <a, b> contains <a, bab⁻¹> properly at equal rank
        let r = analyze(&sub(&["a", "baB"]), 2).unwrap();
        assert!(r.compressed);
        assert!(!r.strictly_compressed && !r.l2_closed);
        assert_eq!(r.closure_basis, ["a", "b"]);

        let r = analyze(&sub(&["aab"]), 2).unwrap();
        assert!(r.strictly_compressed && r.l2_closed);
        assert_eq!(r.closure_basis, ["aab"]);
    }

    #[test]
    fn witnesses() {
        let h = sub(&["a", "baB"]);
        assert_eq!(inertness_witness(&h, 100, 6, 1).unwrap(), None);
        let h = sub(&["aa", "bb", "abab"]);
        let w = inertness_witness(&h, 0, 0, 0).unwrap().unwrap();
        assert_eq!(w.rank(), 2);
        assert!(intersect(&h, &w).unwrap().rank() > w.rank());
    }
}
