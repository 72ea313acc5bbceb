//! Stallings core graphs and the rank invariants of finitely generated
//! subgroups of free groups: folding, intersections and double-coset
//! ranks, quotient overgroups, `π̄(H ≤ F)`, the critical set `Crit(H ≤ F)`
//! with its maximal element (the L²-closure), and the L²-Betti numbers of
//! the pair `(H, F)`.

pub mod checks;
pub mod cli;
pub mod error;
pub mod l2;
pub mod overgroups;
pub mod pullback;
pub mod random;
pub mod stallings;
pub mod words;

mod unionfind;

pub use error::{Error, Result};
pub use l2::L2Report;
pub use overgroups::{CritSet, Enumerator, QuotientSet};
pub use pullback::{intersect, Certificate, ProductGraph};
pub use stallings::{CoreGraph, Edge, LabeledGraph, Vertex};
pub use words::{random_reduced_word, random_word, Alphabet, Letter, Word};
