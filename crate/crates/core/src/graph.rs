//! Finite weighted graphs and the letters of their double graphs.
//!
//! A [`WeightedGraph`] is immutable once built. Vertices and edges receive
//! dense indices in declaration order, and every set-valued query returns its
//! members in index order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A structured edge together with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WEdge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
    pub weight: u32,
}

impl WEdge {
    pub fn is_weighted(&self) -> bool {
        self.weight > 1
    }
}

/// One symbol of the double graph: the real letter `e_i` or the ghost `e_i*`.
///
/// Field order makes the derived `Ord` the canonical letter order: all real
/// letters before all ghost letters, each group by edge and then index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub ghost: bool,
    pub edge: EdgeId,
    pub index: u32,
}

impl Letter {
    pub fn real(edge: EdgeId, index: u32) -> Self {
        Letter { ghost: false, edge, index }
    }

    pub fn ghost(edge: EdgeId, index: u32) -> Self {
        Letter { ghost: true, edge, index }
    }

    /// The letter with the ghost flag flipped.
    pub fn star(self) -> Self {
        Letter { ghost: !self.ghost, ..self }
    }
}

/// A word over the double-graph alphabet, or the trivial word of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word {
    Trivial(VertexId),
    Path(Vec<Letter>),
}

impl Word {
    pub fn len(&self) -> usize {
        match self {
            Word::Trivial(_) => 0,
            Word::Path(letters) => letters.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            Word::Trivial(_) => &[],
            Word::Path(letters) => letters,
        }
    }
}

/// Unchecked graph description, turned into a [`WeightedGraph`] by [`GraphBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String, i64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> &mut Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<I, S>(&mut self, names: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for n in names {
            self.vertex(n);
        }
        self
    }

    pub fn edge(
        &mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
        weight: i64,
    ) -> &mut Self {
        self.edges.push((name.into(), source.into(), range.into(), weight));
        self
    }

    /// Checks the description and produces an immutable graph.
    pub fn build(&self) -> Result<WeightedGraph> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut vertex_index = HashMap::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, (name, source, range, weight)) in self.edges.iter().enumerate() {
            if edge_index.insert(name.clone(), EdgeId(i)).is_some() {
                return Err(Error::DuplicateEdge(name.clone()));
            }
            let lookup = |v: &String| {
                vertex_index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    vertex: v.clone(),
                    edge: name.clone(),
                })
            };
            let source = lookup(source)?;
            let range = lookup(range)?;
            if *weight < 1 || *weight > u32::MAX as i64 {
                return Err(Error::InvalidWeight { edge: name.clone(), weight: *weight });
            }
            edges.push(WEdge { name: name.clone(), source, range, weight: *weight as u32 });
        }
        Ok(WeightedGraph::assemble(self.vertices.clone(), edges, vertex_index, edge_index))
    }
}

#[derive(Clone, Debug)]
pub struct WeightedGraph {
    vertex_names: Vec<String>,
    edges: Vec<WEdge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    /// Offset of `e_1` in the real half of the letter order.
    letter_offset: Vec<usize>,
    real_letters: usize,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

impl WeightedGraph {
    fn assemble(
        vertex_names: Vec<String>,
        edges: Vec<WEdge>,
        vertex_index: HashMap<String, VertexId>,
        edge_index: HashMap<String, EdgeId>,
    ) -> Self {
        let n = vertex_names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let mut letter_offset = Vec::with_capacity(edges.len());
        let mut real_letters = 0;
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.range.0].push(EdgeId(i));
            letter_offset.push(real_letters);
            real_letters += e.weight as usize;
        }
        WeightedGraph {
            vertex_names,
            edges,
            out_edges,
            in_edges,
            vertex_index,
            edge_index,
            letter_offset,
            real_letters,
        }
    }

    /// Rebuilds a graph from already-resolved parts (used by graph rewrites).
    pub(crate) fn from_parts(vertex_names: Vec<String>, edges: Vec<WEdge>) -> Result<Self> {
        let mut b = GraphBuilder::new();
        b.vertices(vertex_names.iter().cloned());
        for e in &edges {
            b.edge(
                e.name.clone(),
                vertex_names[e.source.0].clone(),
                vertex_names[e.range.0].clone(),
                e.weight as i64,
            );
        }
        b.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[WEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &WEdge {
        &self.edges[e.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// `s^{-1}(v)` in edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn sinks(&self) -> BTreeSet<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn regular_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices().filter(|&v| !self.is_sink(v)).collect()
    }

    /// Maximal weight of an edge emitted by `v`.
    pub fn vertex_weight(&self, v: VertexId) -> Result<u32> {
        self.out_edges[v.0]
            .iter()
            .map(|&e| self.edges[e.0].weight)
            .max()
            .ok_or_else(|| Error::Sink(self.vertex_name(v).to_string()))
    }

    pub fn weighted_edges(&self) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.edge(e).is_weighted()).collect()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    // ---- letters ----

    /// Number of letters of the double graph, `2 * sum of weights`.
    pub fn letter_count(&self) -> usize {
        2 * self.real_letters
    }

    /// All letters in canonical order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.letter_count()).map(|i| self.letter_at(i)).collect()
    }

    /// Position of a letter in the canonical order.
    pub fn letter_position(&self, l: Letter) -> usize {
        debug_assert!(self.is_letter(l));
        let base = self.letter_offset[l.edge.0] + (l.index as usize - 1);
        if l.ghost {
            base + self.real_letters
        } else {
            base
        }
    }

    pub fn letter_at(&self, pos: usize) -> Letter {
        let (ghost, p) = if pos >= self.real_letters {
            (true, pos - self.real_letters)
        } else {
            (false, pos)
        };
        // Last edge whose offset is <= p; zero-weight edges do not exist.
        let e = self.letter_offset.partition_point(|&o| o <= p) - 1;
        Letter { ghost, edge: EdgeId(e), index: (p - self.letter_offset[e] + 1) as u32 }
    }

    pub fn is_letter(&self, l: Letter) -> bool {
        l.edge.0 < self.edges.len() && l.index >= 1 && l.index <= self.edges[l.edge.0].weight
    }

    pub fn letter_source(&self, l: Letter) -> VertexId {
        let e = &self.edges[l.edge.0];
        if l.ghost {
            e.range
        } else {
            e.source
        }
    }

    pub fn letter_range(&self, l: Letter) -> VertexId {
        let e = &self.edges[l.edge.0];
        if l.ghost {
            e.source
        } else {
            e.range
        }
    }

    /// Renders `e_2` as `e.2` and `e_2*` as `e.2*`.
    pub fn letter_name(&self, l: Letter) -> String {
        format!("{}.{}{}", self.edge_name(l.edge), l.index, if l.ghost { "*" } else { "" })
    }

    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let bad = || Error::UnknownName(text.to_string());
        let (body, ghost) = match text.strip_suffix('*') {
            Some(b) => (b, true),
            None => (text, false),
        };
        let (name, idx) = body.rsplit_once('.').ok_or_else(bad)?;
        let edge = self.edge_by_name(name).ok_or_else(bad)?;
        let index: u32 = idx.parse().map_err(|_| bad())?;
        let l = Letter { ghost, edge, index };
        if self.is_letter(l) {
            Ok(l)
        } else {
            Err(bad())
        }
    }

    pub fn word_name(&self, word: &[Letter]) -> String {
        word.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn render_word(&self, word: &Word) -> String {
        match word {
            Word::Trivial(v) => self.vertex_name(*v).to_string(),
            Word::Path(letters) => self.word_name(letters),
        }
    }

    /// True iff consecutive letters meet: `r(x_k) = s(x_{k+1})`.
    pub fn is_d_path(&self, word: &[Letter]) -> bool {
        word.iter().all(|&l| self.is_letter(l))
            && word.windows(2).all(|w| self.letter_range(w[0]) == self.letter_source(w[1]))
    }

    // ---- reachability ----

    /// All vertices reachable from `roots` by paths of length >= 0.
    pub fn tree<I>(&self, roots: I) -> BTreeSet<VertexId>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for r in roots {
            if !seen[r.0] {
                seen[r.0] = true;
                queue.push_back(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &e in &self.out_edges[v.0] {
                let r = self.edges[e.0].range;
                if !seen[r.0] {
                    seen[r.0] = true;
                    queue.push_back(r);
                }
            }
        }
        self.vertices().filter(|v| seen[v.0]).collect()
    }

    /// `u >= v`: a path (possibly trivial) runs from `u` to `v`.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        self.tree([u]).contains(&v)
    }

    pub fn is_hereditary(&self, set: &BTreeSet<VertexId>) -> bool {
        self.hereditary_violation(set).is_none()
    }

    fn hereditary_violation(&self, set: &BTreeSet<VertexId>) -> Option<(VertexId, VertexId)> {
        set.iter().find_map(|&u| {
            self.out_edges[u.0]
                .iter()
                .map(|&e| self.edges[e.0].range)
                .find(|r| !set.contains(r))
                .map(|r| (u, r))
        })
    }

    /// The weighted subgraph on a hereditary set: vertices `set`, edges sourced in `set`.
    pub fn hereditary_subgraph(&self, set: &BTreeSet<VertexId>) -> Result<WeightedGraph> {
        if let Some((u, r)) = self.hereditary_violation(set) {
            return Err(Error::NotHereditary(
                self.vertex_name(u).to_string(),
                self.vertex_name(r).to_string(),
            ));
        }
        let mut b = GraphBuilder::new();
        for &v in set {
            b.vertex(self.vertex_name(v));
        }
        for e in &self.edges {
            if set.contains(&e.source) {
                b.edge(
                    e.name.clone(),
                    self.vertex_name(e.source),
                    self.vertex_name(e.range),
                    e.weight as i64,
                );
            }
        }
        b.build()
    }

    /// Range weight forest: the tree of the ranges of all weighted edges.
    pub fn rwf(&self) -> BTreeSet<VertexId> {
        self.tree(self.edges.iter().filter(|e| e.is_weighted()).map(|e| e.range))
    }

    /// True iff `E` has no closed path (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn order of the vertices, or `None` if a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_edges[v].len()).collect();
        let mut stack: Vec<VertexId> =
            (0..n).rev().filter(|&v| indeg[v] == 0).map(VertexId).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &e in &self.out_edges[v.0] {
                let r = self.edges[e.0].range.0;
                indeg[r] -= 1;
                if indeg[r] == 0 {
                    stack.push(VertexId(r));
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::render_graph(self))
    }
}
