//! Stallings core graphs.
//!
//! A finitely generated subgroup `H` of a free group is represented by its
//! core graph: a connected, folded, based graph with one edge set per
//! generator, in which every vertex other than the basepoint has degree at
//! least two. Reduced words spelling closed paths at the basepoint are
//! exactly the elements of `H`, so two subgroups are equal iff their core
//! graphs are isomorphic as based labelled graphs.
//!
//! [`LabeledGraph`] is the unfolded working form. [`CoreGraph`] values are
//! always folded and trimmed, and every constructor in this module returns
//! them in canonical numbering (see [`CoreGraph::canonical`]), so derived
//! equality and hashing on `CoreGraph` compare subgroups.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;
use crate::words::{Alphabet, Letter, Word};

pub type Vertex = usize;

/// An edge `from →ₓ to` for the generator `x` with 1-based index `letter`.
/// It is read backwards by `x⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub letter: usize,
    pub from: Vertex,
    pub to: Vertex,
}

impl Edge {
    pub fn new(letter: usize, from: Vertex, to: Vertex) -> Self {
        Edge { letter, from, to }
    }
}

/// A based, letter-labelled graph with no folding or trimming guarantees.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    basepoint: Vertex,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    /// A graph with `vertex_count` isolated vertices and basepoint 0.
    pub fn new(alphabet: Alphabet, vertex_count: usize) -> Self {
        assert!(vertex_count > 0, "a based graph needs at least one vertex");
        LabeledGraph {
            alphabet,
            vertex_count,
            basepoint: 0,
            edges: Vec::new(),
        }
    }

    /// One closed petal at the basepoint for each generator.
    pub fn bouquet(gens: &[Word], alphabet: Alphabet) -> Result<Self> {
        let mut g = LabeledGraph::new(alphabet, 1);
        for w in gens {
            g.add_petal(w)?;
        }
        Ok(g)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_mut(&mut self) -> &mut Vec<Edge> {
        &mut self.edges
    }

    pub fn set_basepoint(&mut self, v: Vertex) {
        assert!(v < self.vertex_count);
        self.basepoint = v;
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, letter: usize, from: Vertex, to: Vertex) -> Result<()> {
        self.alphabet.check(Letter::generator(letter))?;
        assert!(from < self.vertex_count && to < self.vertex_count);
        self.edges.push(Edge::new(letter, from, to));
        Ok(())
    }

    /// Adds a path spelling `letter` from `from` to `to`.
    pub fn add_letter(&mut self, letter: Letter, from: Vertex, to: Vertex) -> Result<()> {
        if letter.is_inverse() {
            self.add_edge(letter.index(), to, from)
        } else {
            self.add_edge(letter.index(), from, to)
        }
    }

    /// Adds a closed path at the basepoint spelling `w`, through fresh vertices.
    pub fn add_petal(&mut self, w: &Word) -> Result<()> {
        let base = self.basepoint;
        let mut at = base;
        for (i, &l) in w.letters().iter().enumerate() {
            let next = if i + 1 == w.len() {
                base
            } else {
                self.add_vertex()
            };
            self.add_letter(l, at, next)?;
            at = next;
        }
        Ok(())
    }

    /// True iff no vertex has two outgoing or two incoming edges with the
    /// same label.
    pub fn is_folded(&self) -> bool {
        let r = self.alphabet.rank();
        let mut out = vec![false; r * self.vertex_count];
        let mut inc = vec![false; r * self.vertex_count];
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            if !seen.insert(*e) {
                // parallel duplicate
                return false;
            }
            let o = &mut out[e.from * r + e.letter - 1];
            if *o {
                return false;
            }
            *o = true;
            let i = &mut inc[e.to * r + e.letter - 1];
            if *i {
                return false;
            }
            *i = true;
        }
        true
    }

    /// Stallings folding: identifies the endpoints of same-label edges at a
    /// common vertex until the graph is folded. Vertices are renumbered
    /// densely; isolated vertices survive.
    pub fn fold(&self) -> LabeledGraph {
        self.fold_identifying(&[])
    }

    /// Folds after first identifying each pair of vertices in `pairs`.
    pub fn fold_identifying(&self, pairs: &[(Vertex, Vertex)]) -> LabeledGraph {
        Folder::new(self).run(&self.edges, pairs)
    }

    /// Restricts to the component of the basepoint and repeatedly deletes
    /// vertices of degree at most one other than the basepoint.
    pub fn trim(&self) -> LabeledGraph {
        let n = self.vertex_count;
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.from].push(i);
            incident[e.to].push(i);
        }
        // basepoint component
        let mut alive_v = vec![false; n];
        alive_v[self.basepoint] = true;
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            for &i in &incident[v] {
                let e = self.edges[i];
                for w in [e.from, e.to] {
                    if !alive_v[w] {
                        alive_v[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut alive_e: Vec<bool> = self.edges.iter().map(|e| alive_v[e.from]).collect();
        // a loop appears twice in `incident`, so degree counts it twice
        let mut degree: Vec<usize> = (0..n)
            .map(|v| incident[v].iter().filter(|&&i| alive_e[i]).count())
            .collect();
        let mut leaves: Vec<Vertex> = (0..n)
            .filter(|&v| alive_v[v] && v != self.basepoint && degree[v] <= 1)
            .collect();
        while let Some(v) = leaves.pop() {
            if !alive_v[v] {
                continue;
            }
            alive_v[v] = false;
            for &i in &incident[v] {
                if !alive_e[i] {
                    continue;
                }
                alive_e[i] = false;
                let e = self.edges[i];
                let other = if e.from == v { e.to } else { e.from };
                degree[other] -= 1;
                if other != self.basepoint && alive_v[other] && degree[other] <= 1 {
                    leaves.push(other);
                }
            }
        }
        let mut renumber = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            if alive_v[v] {
                renumber[v] = count;
                count += 1;
            }
        }
        LabeledGraph {
            alphabet: self.alphabet,
            vertex_count: count,
            basepoint: renumber[self.basepoint],
            edges: self
                .edges
                .iter()
                .zip(&alive_e)
                .filter(|(_, &a)| a)
                .map(|(e, _)| Edge::new(e.letter, renumber[e.from], renumber[e.to]))
                .collect(),
        }
    }

    /// Fold, trim and canonically renumber.
    pub fn to_core(&self) -> CoreGraph {
        let folded = self.fold().trim();
        CoreGraph::from_folded(&folded).canonical()
    }
}

/// Union-find folding with per-class letter maps. Merging two classes
/// merges their maps, and any clash queues a further merge of the two
/// clashing endpoints.
struct Folder {
    rank: usize,
    uf: UnionFind,
    // indexed by class root, then letter - 1; entries are raw vertex ids
    out: Vec<Vec<Option<Vertex>>>,
    inc: Vec<Vec<Option<Vertex>>>,
    pending: Vec<(Vertex, Vertex)>,
    alphabet: Alphabet,
    basepoint: Vertex,
}

impl Folder {
    fn new(g: &LabeledGraph) -> Self {
        let r = g.alphabet.rank();
        Folder {
            rank: r,
            uf: UnionFind::new(g.vertex_count),
            out: vec![vec![None; r]; g.vertex_count],
            inc: vec![vec![None; r]; g.vertex_count],
            pending: Vec::new(),
            alphabet: g.alphabet,
            basepoint: g.basepoint,
        }
    }

    fn run(mut self, edges: &[Edge], pairs: &[(Vertex, Vertex)]) -> LabeledGraph {
        self.pending.extend_from_slice(pairs);
        self.drain();
        for e in edges {
            self.attach(*e);
            self.drain();
        }
        self.finish()
    }

    fn attach(&mut self, e: Edge) {
        let x = e.letter - 1;
        let ru = self.uf.find(e.from);
        match self.out[ru][x] {
            Some(t) => self.pending.push((t, e.to)),
            None => {
                self.out[ru][x] = Some(e.to);
                let rv = self.uf.find(e.to);
                match self.inc[rv][x] {
                    Some(s) => self.pending.push((s, e.from)),
                    None => self.inc[rv][x] = Some(e.from),
                }
            }
        }
    }

    fn drain(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let Some((keep, gone)) = self.uf.union(a, b) else {
                continue;
            };
            for x in 0..self.rank {
                if let Some(t) = self.out[gone][x].take() {
                    match self.out[keep][x] {
                        Some(t2) => self.pending.push((t, t2)),
                        None => self.out[keep][x] = Some(t),
                    }
                }
                if let Some(s) = self.inc[gone][x].take() {
                    match self.inc[keep][x] {
                        Some(s2) => self.pending.push((s, s2)),
                        None => self.inc[keep][x] = Some(s),
                    }
                }
            }
        }
    }

    fn finish(mut self) -> LabeledGraph {
        let n = self.out.len();
        let mut renumber = vec![usize::MAX; n];
        let mut count = 0;
        for (v, slot) in renumber.iter_mut().enumerate() {
            if self.uf.find(v) == v {
                *slot = count;
                count += 1;
            }
        }
        let mut edges = Vec::new();
        for v in 0..n {
            if renumber[v] == usize::MAX {
                continue;
            }
            for x in 0..self.rank {
                if let Some(t) = self.out[v][x] {
                    let t = self.uf.find(t);
                    edges.push(Edge::new(x + 1, renumber[v], renumber[t]));
                }
            }
        }
        edges.sort();
        let basepoint = renumber[self.uf.find(self.basepoint)];
        LabeledGraph {
            alphabet: self.alphabet,
            vertex_count: count,
            basepoint,
            edges,
        }
    }
}

/// Folded, trimmed, connected based graph of a finitely generated subgroup.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoreGraph {
    alphabet: Alphabet,
    vertex_count: usize,
    basepoint: Vertex,
    // out[x][v] / inc[x][v] for generator index x + 1
    out: Vec<Vec<Option<Vertex>>>,
    inc: Vec<Vec<Option<Vertex>>>,
}

impl CoreGraph {
    /// The graph of the trivial subgroup: a bare basepoint.
    pub fn trivial(alphabet: Alphabet) -> Self {
        CoreGraph {
            alphabet,
            vertex_count: 1,
            basepoint: 0,
            out: vec![vec![None]; alphabet.rank()],
            inc: vec![vec![None]; alphabet.rank()],
        }
    }

    /// Core graph of `⟨gens⟩`.
    pub fn from_generators(gens: &[Word], alphabet: Alphabet) -> Result<Self> {
        Ok(LabeledGraph::bouquet(gens, alphabet)?.to_core())
    }

    /// Parses each string as a word and builds the core graph.
    pub fn parse(gens: &[&str], alphabet: Alphabet) -> Result<Self> {
        let words = gens
            .iter()
            .map(|s| Word::parse(s, alphabet))
            .collect::<Result<Vec<_>>>()?;
        CoreGraph::from_generators(&words, alphabet)
    }

    /// Builds from a graph that is already folded; panics otherwise.
    fn from_folded(g: &LabeledGraph) -> Self {
        let r = g.alphabet.rank();
        let n = g.vertex_count;
        let mut out = vec![vec![None; n]; r];
        let mut inc = vec![vec![None; n]; r];
        for e in &g.edges {
            let x = e.letter - 1;
            assert!(
                out[x][e.from].is_none() && inc[x][e.to].is_none(),
                "graph not folded"
            );
            out[x][e.from] = Some(e.to);
            inc[x][e.to] = Some(e.from);
        }
        CoreGraph {
            alphabet: g.alphabet,
            vertex_count: n,
            basepoint: g.basepoint,
            out,
            inc,
        }
    }

    /// Validating constructor from an explicit edge list.
    pub fn from_edges(
        alphabet: Alphabet,
        vertex_count: usize,
        basepoint: Vertex,
        edges: &[Edge],
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGraph(msg));
        if vertex_count == 0 {
            return bad("no vertices".into());
        }
        if basepoint >= vertex_count {
            return bad(format!("basepoint {basepoint} out of range"));
        }
        let r = alphabet.rank();
        let mut out = vec![vec![None; vertex_count]; r];
        let mut inc = vec![vec![None; vertex_count]; r];
        for e in edges {
            if e.letter == 0 || e.letter > r {
                return bad(format!("letter {} outside 1..={r}", e.letter));
            }
            if e.from >= vertex_count || e.to >= vertex_count {
                return bad(format!("edge {e:?} has an endpoint out of range"));
            }
            let x = e.letter - 1;
            if out[x][e.from].is_some() {
                return bad(format!(
                    "vertex {} has two outgoing edges labelled {}",
                    e.from, e.letter
                ));
            }
            if inc[x][e.to].is_some() {
                return bad(format!(
                    "vertex {} has two incoming edges labelled {}",
                    e.to, e.letter
                ));
            }
            out[x][e.from] = Some(e.to);
            inc[x][e.to] = Some(e.from);
        }
        let g = CoreGraph {
            alphabet,
            vertex_count,
            basepoint,
            out,
            inc,
        };
        let order = g.bfs_order();
        if order.len() != vertex_count {
            return bad("not every vertex is reachable from the basepoint".into());
        }
        for v in 0..vertex_count {
            if v != basepoint && g.degree(v) < 2 {
                return bad(format!(
                    "vertex {v} has degree {} (not trimmed)",
                    g.degree(v)
                ));
            }
        }
        Ok(g.canonical())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().filter(|t| t.is_some()).count()
    }

    /// Edges sorted by `(letter, from)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (x, row) in self.out.iter().enumerate() {
            for (v, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    edges.push(Edge::new(x + 1, v, *t));
                }
            }
        }
        edges
    }

    /// Follows `letter` from `v`, if that edge exists.
    pub fn step(&self, v: Vertex, letter: Letter) -> Option<Vertex> {
        let x = letter.index() - 1;
        if x >= self.alphabet.rank() {
            return None;
        }
        if letter.is_inverse() {
            self.inc[x][v]
        } else {
            self.out[x][v]
        }
    }

    /// Endpoint of the path spelling `w` from `start`, if it is readable.
    pub fn read(&self, start: Vertex, w: &Word) -> Option<Vertex> {
        w.letters().iter().try_fold(start, |v, &l| self.step(v, l))
    }

    /// Membership test: `w ∈ H`.
    pub fn accepts(&self, w: &Word) -> bool {
        self.read(self.basepoint, w) == Some(self.basepoint)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        (0..self.alphabet.rank())
            .map(|x| self.out[x][v].is_some() as usize + self.inc[x][v].is_some() as usize)
            .sum()
    }

    /// Rank of the subgroup, `E − V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    pub fn reduced_rank(&self) -> usize {
        self.rank().saturating_sub(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    /// Largest generator index labelling some edge, 0 for the trivial graph.
    pub fn max_letter(&self) -> usize {
        (0..self.alphabet.rank())
            .rev()
            .find(|&x| self.out[x].iter().any(|t| t.is_some()))
            .map_or(0, |x| x + 1)
    }

    /// Vertices in breadth-first order from the basepoint, exploring
    /// letters in the order `1, 1⁻¹, 2, 2⁻¹, …`. Also returns the tree edge
    /// by which each vertex was first reached.
    fn bfs_tree(&self) -> (Vec<Vertex>, Vec<Option<(Vertex, Letter)>>) {
        let mut parent: Vec<Option<(Vertex, Letter)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut order = vec![self.basepoint];
        seen[self.basepoint] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for l in self.alphabet.letters() {
                if let Some(w) = self.step(v, l) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((v, l));
                        order.push(w);
                    }
                }
            }
        }
        (order, parent)
    }

    fn bfs_order(&self) -> Vec<Vertex> {
        self.bfs_tree().0
    }

    /// Renumbers vertices in breadth-first order from the basepoint, which
    /// becomes vertex 0. Because the graph is folded the numbering is
    /// unique, so equal subgroups give identical canonical graphs.
    pub fn canonical(&self) -> CoreGraph {
        let order = self.bfs_order();
        let mut renumber = vec![usize::MAX; self.vertex_count];
        for (i, &v) in order.iter().enumerate() {
            renumber[v] = i;
        }
        self.renumbered(&renumber, order.len())
    }

    pub fn is_canonical(&self) -> bool {
        self.basepoint == 0 && self.bfs_order().iter().enumerate().all(|(i, &v)| i == v)
    }

    /// The same graph with vertex `v` renamed `perm[v]`. Used to exercise
    /// canonicalization; the result is generally not canonical.
    pub fn permuted(&self, perm: &[Vertex]) -> CoreGraph {
        assert_eq!(perm.len(), self.vertex_count);
        self.renumbered(perm, self.vertex_count)
    }

    fn renumbered(&self, map: &[Vertex], count: usize) -> CoreGraph {
        let r = self.alphabet.rank();
        let mut out = vec![vec![None; count]; r];
        let mut inc = vec![vec![None; count]; r];
        for e in self.edges() {
            let (a, b) = (map[e.from], map[e.to]);
            if a == usize::MAX || b == usize::MAX {
                continue;
            }
            out[e.letter - 1][a] = Some(b);
            inc[e.letter - 1][b] = Some(a);
        }
        CoreGraph {
            alphabet: self.alphabet,
            vertex_count: count,
            basepoint: map[self.basepoint],
            out,
            inc,
        }
    }

    /// Canonical bytes: the dedup key used by quotient enumeration.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let g = if self.is_canonical() {
            self.clone()
        } else {
            self.canonical()
        };
        let mut bytes = Vec::with_capacity(8 + 12 * g.edge_count());
        bytes.extend_from_slice(&(g.alphabet.rank() as u32).to_le_bytes());
        bytes.extend_from_slice(&(g.vertex_count as u32).to_le_bytes());
        for e in g.edges() {
            bytes.extend_from_slice(&(e.letter as u32).to_le_bytes());
            bytes.extend_from_slice(&(e.from as u32).to_le_bytes());
            bytes.extend_from_slice(&(e.to as u32).to_le_bytes());
        }
        bytes
    }

    /// Free basis read off a breadth-first spanning tree: one word per
    /// non-tree edge, in `(letter, from)` order.
    pub fn basis(&self) -> Vec<Word> {
        let (order, parent) = self.bfs_tree();
        let mut path: Vec<Word> = vec![Word::identity(); self.vertex_count];
        for &v in order.iter().skip(1) {
            let (p, l) = parent[v].expect("reached vertex has a parent");
            path[v] = path[p].concat(&Word::reduce([l]));
        }
        let is_tree_edge = |e: &Edge| {
            let fwd = parent[e.to] == Some((e.from, Letter::generator(e.letter)));
            let back = parent[e.from] == Some((e.to, Letter::generator(e.letter).inverse()));
            fwd || back
        };
        self.edges()
            .into_iter()
            .filter(|e| !is_tree_edge(e))
            .map(|e| {
                path[e.from]
                    .concat(&Word::reduce([Letter::generator(e.letter)]))
                    .concat(&path[e.to].inverse())
            })
            .collect()
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        LabeledGraph {
            alphabet: self.alphabet,
            vertex_count: self.vertex_count,
            basepoint: self.basepoint,
            edges: self.edges(),
        }
    }

    fn ensure_same_alphabet(&self, other: &CoreGraph) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.rank(),
                right: other.alphabet.rank(),
            });
        }
        Ok(())
    }

    /// `⟨H ∪ K⟩`: wedge at the basepoints, fold, trim.
    pub fn join(&self, other: &CoreGraph) -> Result<CoreGraph> {
        self.ensure_same_alphabet(other)?;
        let n1 = self.vertex_count;
        let mut g = self.to_labeled();
        g.vertex_count += other.vertex_count;
        let map = |v: Vertex| {
            if v == other.basepoint {
                self.basepoint
            } else {
                n1 + v
            }
        };
        g.edges.extend(
            other
                .edges()
                .into_iter()
                .map(|e| Edge::new(e.letter, map(e.from), map(e.to))),
        );
        Ok(g.to_core())
    }

    /// `K ≤ H` where `self` is `H`.
    pub fn contains(&self, other: &CoreGraph) -> bool {
        other.basis().iter().all(|w| self.accepts(w))
    }

    /// Index of the subgroup when it is finite, i.e. when every vertex has
    /// an outgoing edge for every generator of the alphabet.
    pub fn finite_index(&self) -> Option<usize> {
        let complete = self.out.iter().all(|row| row.iter().all(|t| t.is_some()));
        complete.then_some(self.vertex_count)
    }

    /// Core graph of `x H x⁻¹`, built from the conjugated basis.
    pub fn conjugate(&self, x: &Word) -> Result<CoreGraph> {
        let gens: Vec<Word> = self.basis().iter().map(|b| b.conjugate_by(x)).collect();
        CoreGraph::from_generators(&gens, self.alphabet)
    }

    /// Identifies vertices `u` and `v`, then folds and trims. The result is
    /// the core graph of `⟨H, p_u p_v⁻¹⟩` where `p_u`, `p_v` label paths
    /// from the basepoint.
    pub fn identify(&self, u: Vertex, v: Vertex) -> CoreGraph {
        self.to_labeled()
            .fold_identifying(&[(u, v)])
            .trim()
            .to_core_folded()
    }

    /// Same graph over a larger alphabet.
    pub fn widen(&self, alphabet: Alphabet) -> Result<CoreGraph> {
        if alphabet.rank() < self.max_letter() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.rank(),
                right: alphabet.rank(),
            });
        }
        let mut g = self.to_labeled();
        g.alphabet = alphabet;
        Ok(g.to_core())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc::from(self)).expect("graph document serializes")
    }

    /// Indented JSON with one edge triple per line.
    pub fn to_json_pretty(&self) -> String {
        let doc = GraphDoc::from(self);
        let edges: Vec<String> = doc
            .edges
            .iter()
            .map(|[l, a, b]| format!("    [{l}, {a}, {b}]"))
            .collect();
        let edges = if edges.is_empty() {
            "[]".to_owned()
        } else {
            format!("[\n{}\n  ]", edges.join(",\n"))
        };
        format!(
            "{{\n  \"rank\": {},\n  \"vertices\": {},\n  \"basepoint\": {},\n  \"edges\": {}\n}}",
            doc.rank, doc.vertices, doc.basepoint, edges
        )
    }

    pub fn from_json(text: &str) -> Result<CoreGraph> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        doc.into_graph()
    }

    /// Graphviz export. The basepoint is drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph core {\n    rankdir=LR;\n    node [shape=circle];\n");
        for v in 0..self.vertex_count {
            if v == self.basepoint {
                let _ = writeln!(s, "    {v} [shape=doublecircle];");
            } else {
                let _ = writeln!(s, "    {v};");
            }
        }
        for e in self.edges() {
            let _ = writeln!(
                s,
                "    {} -> {} [label=\"{}\"];",
                e.from,
                e.to,
                Letter::generator(e.letter).to_char()
            );
        }
        s.push_str("}\n");
        s
    }
}

impl LabeledGraph {
    fn to_core_folded(&self) -> CoreGraph {
        CoreGraph::from_folded(self).canonical()
    }
}

impl std::fmt::Debug for CoreGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let basis: Vec<String> = self.basis().iter().map(|w| w.pretty()).collect();
        write!(
            f,
            "CoreGraph({}, V={}, E={}, <{}>)",
            self.alphabet,
            self.vertex_count,
            self.edge_count(),
            basis.join(", ")
        )
    }
}

/// On-disk form: `{"rank", "vertices", "basepoint", "edges": [[letter, from, to], …]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    rank: usize,
    vertices: usize,
    basepoint: usize,
    edges: Vec<[usize; 3]>,
}

impl From<&CoreGraph> for GraphDoc {
    fn from(g: &CoreGraph) -> Self {
        let g = if g.is_canonical() {
            g.clone()
        } else {
            g.canonical()
        };
        GraphDoc {
            rank: g.alphabet.rank(),
            vertices: g.vertex_count,
            basepoint: g.basepoint,
            edges: g.edges().iter().map(|e| [e.letter, e.from, e.to]).collect(),
        }
    }
}

impl GraphDoc {
    fn into_graph(self) -> Result<CoreGraph> {
        let alphabet = Alphabet::new(self.rank)?;
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&[l, a, b]| Edge::new(l, a, b))
            .collect();
        CoreGraph::from_edges(alphabet, self.vertices, self.basepoint, &edges)
    }
}
