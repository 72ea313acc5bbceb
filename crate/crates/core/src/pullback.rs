//! Pullbacks of core graphs.
//!
//! The product of the core graphs of `U` and `H` has a vertex for every
//! pair of vertices and an edge `(u, h) →ₓ (u', h')` whenever both factors
//! have the matching `x`-edge. The component of the basepoint pair is (up to
//! trimming) the core graph of `U ∩ H`, and each component with nonzero
//! Betti number is the core of `U ∩ xHx⁻¹` for exactly one double coset
//! `UxH`. Tree components contribute nothing to any rank sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stallings::{CoreGraph, Edge, LabeledGraph, Vertex};
use crate::unionfind::UnionFind;
use crate::words::Alphabet;

/// One connected component of a product graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Pairs `(u, h)` in increasing order.
    pub vertices: Vec<(Vertex, Vertex)>,
    pub edge_count: usize,
}

impl Component {
    /// First Betti number, `E − V + 1`.
    pub fn betti(&self) -> usize {
        self.edge_count + 1 - self.vertices.len()
    }
}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    alphabet: Alphabet,
    left_size: usize,
    right_size: usize,
    basepoint: (Vertex, Vertex),
    edges: Vec<(usize, Vertex, Vertex)>,
    components: Vec<Component>,
}

impl ProductGraph {
    pub fn new(left: &CoreGraph, right: &CoreGraph) -> Result<Self> {
        if left.alphabet() != right.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: left.alphabet().rank(),
                right: right.alphabet().rank(),
            });
        }
        let (n1, n2) = (left.vertex_count(), right.vertex_count());
        let pair = |u: Vertex, h: Vertex| u * n2 + h;

        let left_edges = left.edges();
        let right_edges = right.edges();
        // both lists are sorted by letter, so match them letter by letter
        let mut edges = Vec::new();
        let mut j0 = 0;
        for e in &left_edges {
            while j0 < right_edges.len() && right_edges[j0].letter < e.letter {
                j0 += 1;
            }
            let mut j = j0;
            while j < right_edges.len() && right_edges[j].letter == e.letter {
                let f = right_edges[j];
                edges.push((e.letter, pair(e.from, f.from), pair(e.to, f.to)));
                j += 1;
            }
        }

        let mut uf = UnionFind::new(n1 * n2);
        for &(_, a, b) in &edges {
            uf.union(a, b);
        }
        let base = pair(left.basepoint(), right.basepoint());
        let mut slot = vec![usize::MAX; n1 * n2];
        let mut components: Vec<Component> = Vec::new();
        // basepoint component first, then by smallest member
        let order = std::iter::once(base).chain((0..n1 * n2).filter(|&p| p != base));
        for p in order {
            let root = uf.find(p);
            if slot[root] == usize::MAX {
                slot[root] = components.len();
                components.push(Component {
                    vertices: Vec::new(),
                    edge_count: 0,
                });
            }
        }
        for p in 0..n1 * n2 {
            let c = slot[uf.find(p)];
            components[c].vertices.push((p / n2, p % n2));
        }
        for &(_, a, _) in &edges {
            let c = slot[uf.find(a)];
            components[c].edge_count += 1;
        }
        Ok(ProductGraph {
            alphabet: left.alphabet(),
            left_size: n1,
            right_size: n2,
            basepoint: (left.basepoint(), right.basepoint()),
            edges,
            components,
        })
    }

    /// All components, the basepoint component first.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn vertex_count(&self) -> usize {
        self.left_size * self.right_size
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.components.iter().map(Component::betti).collect()
    }

    /// The basepoint component as a labelled graph, untrimmed.
    pub fn basepoint_component(&self) -> LabeledGraph {
        let comp = &self.components[0];
        let n2 = self.right_size;
        let index = |p: usize| {
            comp.vertices
                .binary_search(&(p / n2, p % n2))
                .expect("vertex belongs to the component")
        };
        let mut g = LabeledGraph::new(self.alphabet, comp.vertices.len());
        g.set_basepoint(index(self.basepoint.0 * n2 + self.basepoint.1));
        for &(letter, a, b) in &self.edges {
            if comp.vertices.binary_search(&(a / n2, a % n2)).is_ok() {
                g.edges_mut().push(Edge::new(letter, index(a), index(b)));
            }
        }
        g
    }
}

/// Core graph of `U ∩ H`.
pub fn intersect(left: &CoreGraph, right: &CoreGraph) -> Result<CoreGraph> {
    Ok(ProductGraph::new(left, right)?
        .basepoint_component()
        .to_core())
}

/// Betti numbers of every component of the product graph, basepoint
/// component first.
pub fn coset_component_ranks(left: &CoreGraph, right: &CoreGraph) -> Result<Vec<usize>> {
    Ok(ProductGraph::new(left, right)?.betti_numbers())
}

/// `Σ brk(U ∩ xHx⁻¹)` over double cosets `UxH`.
pub fn strong_inert_sum(left: &CoreGraph, right: &CoreGraph) -> Result<usize> {
    Ok(coset_component_ranks(left, right)?
        .into_iter()
        .map(|b| b.saturating_sub(1))
        .sum())
}

/// A checked inequality `sum ≤ bound` with the per-component Betti numbers
/// it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub sum: usize,
    pub bound: usize,
    pub holds: bool,
    pub components: Vec<usize>,
}

impl Certificate {
    fn new(components: Vec<usize>, bound: usize) -> Self {
        let sum = components.iter().map(|b| b.saturating_sub(1)).sum();
        Certificate {
            sum,
            bound,
            holds: sum <= bound,
            components,
        }
    }
}

/// Strong inertness of `H` tested against one `U`:
/// `Σ brk(U ∩ xHx⁻¹) ≤ brk(U)`.
pub fn check_strong_inert(u: &CoreGraph, h: &CoreGraph) -> Result<Certificate> {
    Ok(Certificate::new(
        coset_component_ranks(u, h)?,
        u.reduced_rank(),
    ))
}

/// The strengthened Hanna Neumann inequality
/// `Σ brk(U ∩ xHx⁻¹) ≤ brk(U) · brk(H)`.
pub fn hanna_neumann_check(u: &CoreGraph, h: &CoreGraph) -> Result<Certificate> {
    Ok(Certificate::new(
        coset_component_ranks(u, h)?,
        u.reduced_rank() * h.reduced_rank(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn sub(gens: &[&str]) -> CoreGraph {
        CoreGraph::parse(gens, Alphabet::new(2).unwrap()).unwrap()
    }

    #[test]
    fn intersections() {
        assert!(intersect(&sub(&["a"]), &sub(&["b"])).unwrap().is_trivial());
        let h = sub(&["aab", "bAbb"]);
        assert_eq!(intersect(&h, &h).unwrap(), h);
        let i = intersect(&sub(&["aa", "b"]), &sub(&["aaa", "b"])).unwrap();
        assert!(i.contains(&sub(&["aaaaaa", "b"])));
        assert!(!i.accepts(&crate::Word::parse("aa", Alphabet::new(2).unwrap()).unwrap()));
    }

    #[test]
    fn bouquet_product_is_bouquet() {
        let f2 = sub(&["a", "b"]);
        assert_eq!(coset_component_ranks(&f2, &f2).unwrap(), vec![2]);
        let c = check_strong_inert(&f2, &f2).unwrap();
        assert_eq!((c.holds, c.sum, c.bound), (true, 1, 1));
        let hn = hanna_neumann_check(&f2, &f2).unwrap();
        assert_eq!((hn.holds, hn.sum, hn.bound), (true, 1, 1));
    }

    #[test]
    fn disjoint_cyclics_give_trees() {
        let ranks = coset_component_ranks(&sub(&["a"]), &sub(&["b"])).unwrap();
        assert!(ranks.iter().all(|&b| b == 0));
        let hn = hanna_neumann_check(&sub(&["aab"]), &sub(&["ab"])).unwrap();
        assert_eq!((hn.sum, hn.bound, hn.holds), (0, 0, true));
    }

    #[test]
    fn strong_inert_sums() {
        assert_eq!(
            strong_inert_sum(&sub(&["aa", "b"]), &sub(&["a"])).unwrap(),
            0
        );
        let u = sub(&["aa", "bab", "abA"]);
        assert_eq!(
            strong_inert_sum(&u, &CoreGraph::trivial(u.alphabet())).unwrap(),
            0
        );
    }

    #[test]
    fn basepoint_component_betti_matches_intersection_rank() {
        let u = sub(&["aa", "b", "abA"]);
        let h = sub(&["ab", "ba"]);
        let p = ProductGraph::new(&u, &h).unwrap();
        assert_eq!(p.components()[0].betti(), intersect(&u, &h).unwrap().rank());
        assert_eq!(p.vertex_count(), u.vertex_count() * h.vertex_count());
        let total: usize = p.components().iter().map(|c| c.vertices.len()).sum();
        assert_eq!(total, p.vertex_count());
    }

    #[test]
    fn alphabet_mismatch() {
        let a3 = CoreGraph::parse(&["a"], Alphabet::new(3).unwrap()).unwrap();
        assert!(matches!(
            intersect(&sub(&["a"]), &a3),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
