//! Forbidden two-letter words and the automaton whose walks are the nod-paths.
//!
//! For every regular vertex `v` a maximal-weight edge `e^v` is fixed. The
//! forbidden words are `e^v_i (e^v_j)*` and `e_1* f_1` for `e, f` emitted by
//! `v`. All of them have length two, so a d-path avoids them iff each pair of
//! consecutive letters does; the automaton stores exactly that pair relation.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Letter, VertexId, WeightedGraph, Word};

/// The fixed edge `e^v` at every regular vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePointChoice {
    edges: BTreeMap<VertexId, EdgeId>,
}

/// Maximal weight first, then the smallest edge index.
pub fn choose_base(g: &WeightedGraph) -> BasePointChoice {
    let edges = g
        .regular_vertices()
        .into_iter()
        .map(|v| {
            let best = g
                .out_edges(v)
                .iter()
                .copied()
                .min_by_key(|&e| (std::cmp::Reverse(g.edge(e).weight), e))
                .expect("regular vertex emits an edge");
            (v, best)
        })
        .collect();
    BasePointChoice { edges }
}

impl BasePointChoice {
    pub fn get(&self, v: VertexId) -> Option<EdgeId> {
        self.edges.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.edges.iter().map(|(&v, &e)| (v, e))
    }

    /// Replaces `e^v` by `e`, checking that `e` is a maximal-weight edge of `v`.
    pub fn with_override(mut self, g: &WeightedGraph, v: VertexId, e: EdgeId) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidBase {
            vertex: g.vertex_name(v).to_string(),
            reason: reason.to_string(),
        };
        if g.is_sink(v) {
            return Err(invalid("sinks have no base edge"));
        }
        if g.edge(e).source != v {
            return Err(invalid(&format!("edge '{}' is not emitted here", g.edge_name(e))));
        }
        if g.edge(e).weight != g.vertex_weight(v)? {
            return Err(invalid(&format!("edge '{}' does not have maximal weight", g.edge_name(e))));
        }
        self.edges.insert(v, e);
        Ok(self)
    }

    /// Every valid choice, in lexicographic order of the per-vertex edge lists.
    pub fn all(g: &WeightedGraph) -> Vec<BasePointChoice> {
        let mut options: Vec<(VertexId, Vec<EdgeId>)> = Vec::new();
        for v in g.regular_vertices() {
            let w = g.vertex_weight(v).expect("regular");
            let candidates = g.out_edges(v).iter().copied().filter(|&e| g.edge(e).weight == w);
            options.push((v, candidates.collect()));
        }
        let mut out = vec![BTreeMap::new()];
        for (v, cands) in &options {
            out = out
                .into_iter()
                .flat_map(|partial| {
                    cands.iter().map(move |&e| {
                        let mut m = partial.clone();
                        m.insert(*v, e);
                        m
                    })
                })
                .collect();
        }
        out.into_iter().map(|edges| BasePointChoice { edges }).collect()
    }

    fn check(&self, g: &WeightedGraph) -> Result<()> {
        for v in g.regular_vertices() {
            let e = self.get(v).ok_or_else(|| Error::InvalidBase {
                vertex: g.vertex_name(v).to_string(),
                reason: "no base edge chosen".into(),
            })?;
            self.clone().with_override(g, v, e)?;
        }
        Ok(())
    }
}

/// Letter digraph of the nod-paths: `x -> y` iff `xy` is a d-path and not forbidden.
#[derive(Clone, Debug)]
pub struct NodAutomaton<'g> {
    graph: &'g WeightedGraph,
    choice: BasePointChoice,
    letters: Vec<Letter>,
    forbidden: BTreeSet<(Letter, Letter)>,
    allowed: Vec<bool>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// Both forbidden families for a given base choice.
pub fn forbidden_pairs(g: &WeightedGraph, choice: &BasePointChoice) -> BTreeSet<(Letter, Letter)> {
    let mut out = BTreeSet::new();
    for (v, base) in choice.iter() {
        let w = g.edge(base).weight;
        for i in 1..=w {
            for j in 1..=w {
                out.insert((Letter::real(base, i), Letter::ghost(base, j)));
            }
        }
        for &e in g.out_edges(v) {
            for &f in g.out_edges(v) {
                out.insert((Letter::ghost(e, 1), Letter::real(f, 1)));
            }
        }
    }
    out
}

impl<'g> NodAutomaton<'g> {
    pub fn new(graph: &'g WeightedGraph, choice: BasePointChoice) -> Result<Self> {
        choice.check(graph)?;
        let letters = graph.letters();
        let forbidden = forbidden_pairs(graph, &choice);
        let n = letters.len();
        let mut allowed = vec![false; n * n];
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (i, &x) in letters.iter().enumerate() {
            let meet = graph.letter_range(x);
            for (j, &y) in letters.iter().enumerate() {
                if graph.letter_source(y) == meet && !forbidden.contains(&(x, y)) {
                    allowed[i * n + j] = true;
                    succ[i].push(j);
                    pred[j].push(i);
                }
            }
        }
        Ok(NodAutomaton { graph, choice, letters, forbidden, allowed, succ, pred })
    }

    /// Automaton for the deterministic default base choice.
    pub fn with_default_base(graph: &'g WeightedGraph) -> Self {
        Self::new(graph, choose_base(graph)).expect("default choice is valid")
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn choice(&self) -> &BasePointChoice {
        &self.choice
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn position(&self, l: Letter) -> usize {
        self.graph.letter_position(l)
    }

    pub fn letter(&self, pos: usize) -> Letter {
        self.letters[pos]
    }

    pub fn forbidden(&self) -> &BTreeSet<(Letter, Letter)> {
        &self.forbidden
    }

    pub fn is_forbidden(&self, x: Letter, y: Letter) -> bool {
        self.forbidden.contains(&(x, y))
    }

    pub fn allowed(&self, x: Letter, y: Letter) -> bool {
        self.allowed_at(self.position(x), self.position(y))
    }

    pub fn allowed_at(&self, i: usize, j: usize) -> bool {
        self.allowed[i * self.letters.len() + j]
    }

    pub fn successors_at(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors_at(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    /// Letters `y` such that `xy` is a nod-path.
    pub fn nod_successors(&self, x: Letter) -> Vec<Letter> {
        self.succ[self.position(x)].iter().map(|&j| self.letters[j]).collect()
    }

    /// Nonempty or empty letter sequence: a d-path with every adjacent pair allowed.
    pub fn is_nod_letters(&self, word: &[Letter]) -> bool {
        word.iter().all(|&l| self.graph.is_letter(l))
            && word.windows(2).all(|w| self.allowed(w[0], w[1]))
    }

    pub fn is_nod_path(&self, word: &Word) -> bool {
        match word {
            Word::Trivial(v) => v.0 < self.graph.vertex_count(),
            Word::Path(letters) => self.is_nod_letters(letters),
        }
    }

    /// All nod-paths of length `0..=max_len`, grouped by length, each group in
    /// lexicographic letter order.
    pub fn enumerate_nod_paths(&self, max_len: usize) -> Vec<Vec<Word>> {
        let mut out = vec![self.graph.vertices().map(Word::Trivial).collect::<Vec<_>>()];
        let mut level: Vec<Vec<usize>> = (0..self.letters.len()).map(|i| vec![i]).collect();
        for _ in 1..=max_len {
            out.push(
                level
                    .iter()
                    .map(|w| Word::Path(w.iter().map(|&i| self.letters[i]).collect()))
                    .collect(),
            );
            level = level
                .iter()
                .flat_map(|w| {
                    let last = *w.last().expect("nonempty");
                    self.succ[last].iter().map(move |&j| {
                        let mut next = w.clone();
                        next.push(j);
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// `c_0..=c_n`: `c_0` counts vertices, `c_k` the allowed `k`-letter walks.
    pub fn count_by_length(&self, n: usize) -> Vec<BigUint> {
        let mut counts = Vec::with_capacity(n + 1);
        counts.push(BigUint::from(self.graph.vertex_count()));
        if n == 0 {
            return counts;
        }
        // ends[x] = number of nod-paths of the current length ending in letter x
        let mut ends: Vec<BigUint> = vec![BigUint::one(); self.letters.len()];
        for k in 1..=n {
            if k > 1 {
                let mut next = vec![BigUint::zero(); self.letters.len()];
                for (x, c) in ends.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for &y in &self.succ[x] {
                        next[y] += c;
                    }
                }
                ends = next;
            }
            counts.push(ends.iter().sum());
        }
        counts
    }

    /// The growth function `d_V(0..=n)`: nod-paths of length at most `k`.
    pub fn growth_function(&self, n: usize) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.count_by_length(n)
            .into_iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    /// `reach[i][j]`: letter `j` is reachable from letter `i` by at least one step.
    pub fn reachability(&self) -> Reachability {
        let n = self.letters.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            let mut stack: Vec<usize> = self.succ[i].clone();
            while let Some(j) = stack.pop() {
                let slot = &mut bits[i * words + j / 64];
                if *slot & (1 << (j % 64)) == 0 {
                    *slot |= 1 << (j % 64);
                    stack.extend(self.succ[j].iter().copied());
                }
            }
        }
        Reachability { words, bits }
    }

    /// True iff the letter digraph has no cycle, i.e. there is no quasi-cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.letters.len();
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for &j in &self.succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        seen == n
    }
}

#[derive(Clone, Debug)]
pub struct Reachability {
    words: usize,
    bits: Vec<u64>,
}

impl Reachability {
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.bits[from * self.words + to / 64] & (1 << (to % 64)) != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn ex4_0() -> WeightedGraph {
        GraphBuilder::new()
            .vertices(["u", "v", "x"])
            .edge("e", "v", "u", 2)
            .edge("f", "v", "x", 1)
            .build()
            .unwrap()
    }

    fn loop1() -> WeightedGraph {
        GraphBuilder::new().vertex("v").edge("e", "v", "v", 1).build().unwrap()
    }

    fn exqu() -> WeightedGraph {
        GraphBuilder::new()
            .vertices(["u", "v", "x"])
            .edge("e", "u", "v", 2)
            .edge("f", "v", "x", 1)
            .edge("g", "v", "x", 1)
            .build()
            .unwrap()
    }

    fn triangle() -> WeightedGraph {
        GraphBuilder::new()
            .vertices(["u", "v", "x"])
            .edge("e", "u", "v", 2)
            .edge("f", "v", "x", 1)
            .edge("g", "u", "x", 1)
            .build()
            .unwrap()
    }

    fn word(g: &WeightedGraph, text: &str) -> Vec<Letter> {
        text.split_whitespace().map(|t| g.parse_letter(t).unwrap()).collect()
    }

    fn pair_names(g: &WeightedGraph, set: &BTreeSet<(Letter, Letter)>) -> BTreeSet<String> {
        set.iter().map(|&(a, b)| format!("{} {}", g.letter_name(a), g.letter_name(b))).collect()
    }

    #[test]
    fn base_choice_prefers_weight_then_index() {
        let g = ex4_0();
        let c = choose_base(&g);
        assert_eq!(c.get(g.vertex_by_name("v").unwrap()), g.edge_by_name("e"));
        assert_eq!(c.iter().count(), 1);

        let rose = GraphBuilder::new()
            .vertex("v")
            .edge("e", "v", "v", 1)
            .edge("f", "v", "v", 1)
            .build()
            .unwrap();
        assert_eq!(choose_base(&rose).get(VertexId(0)), rose.edge_by_name("e"));
        assert_eq!(BasePointChoice::all(&rose).len(), 2);

        let g = exqu();
        let c = choose_base(&g);
        assert_eq!(c.get(g.vertex_by_name("u").unwrap()), g.edge_by_name("e"));
        assert_eq!(c.get(g.vertex_by_name("v").unwrap()), g.edge_by_name("f"));
    }

    #[test]
    fn base_override_is_validated() {
        let g = ex4_0();
        let v = g.vertex_by_name("v").unwrap();
        let f = g.edge_by_name("f").unwrap();
        assert!(matches!(
            choose_base(&g).with_override(&g, v, f),
            Err(Error::InvalidBase { .. })
        ));
        let u = g.vertex_by_name("u").unwrap();
        assert!(choose_base(&g).with_override(&g, u, f).is_err());
    }

    #[test]
    fn forbidden_pairs_ex4_0() {
        let g = ex4_0();
        let got = pair_names(&g, &forbidden_pairs(&g, &choose_base(&g)));
        let want: BTreeSet<String> = [
            "e.1 e.1*", "e.1 e.2*", "e.2 e.1*", "e.2 e.2*", "e.1* e.1", "e.1* f.1", "f.1* e.1",
            "f.1* f.1",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(got, want);

        let l = loop1();
        let got = pair_names(&l, &forbidden_pairs(&l, &choose_base(&l)));
        assert_eq!(got, ["e.1 e.1*", "e.1* e.1"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn forbidden_pairs_exqu_only_constrain_base_edge() {
        let g = exqu();
        let aut = NodAutomaton::with_default_base(&g);
        let f1 = g.parse_letter("f.1").unwrap();
        assert!(aut.is_forbidden(f1, g.parse_letter("f.1*").unwrap()));
        assert!(!aut.is_forbidden(f1, g.parse_letter("g.1*").unwrap()));
        assert!(aut.allowed(f1, g.parse_letter("g.1*").unwrap()));
        assert!(aut.is_nod_letters(&word(&g, "e.2 f.1 g.1* e.2*")));
    }

    #[test]
    fn forbidden_words_are_d_paths() {
        for g in [ex4_0(), exqu(), triangle(), loop1()] {
            for &(x, y) in forbidden_pairs(&g, &choose_base(&g)).iter() {
                assert_eq!(g.letter_range(x), g.letter_source(y));
            }
        }
    }

    #[test]
    fn nod_path_predicate() {
        let g = ex4_0();
        let aut = NodAutomaton::with_default_base(&g);
        assert!(aut.is_nod_letters(&word(&g, "e.2* f.1 f.1* e.2")));
        assert!(!aut.is_nod_letters(&word(&g, "e.1 e.1*")));
        assert!(!aut.is_nod_letters(&word(&g, "e.1 f.1")));
        assert!(aut.is_nod_path(&Word::Trivial(VertexId(1))));
    }

    #[test]
    fn successors_in_triangle() {
        let g = triangle();
        let aut = NodAutomaton::with_default_base(&g);
        let names = |x: &str| {
            aut.nod_successors(g.parse_letter(x).unwrap())
                .into_iter()
                .map(|l| g.letter_name(l))
                .collect::<Vec<_>>()
        };
        assert_eq!(names("e.1"), ["f.1"]);
        assert_eq!(names("e.1*"), ["e.2"]);
        assert_eq!(names("g.1*"), ["e.2"]);

        let l = loop1();
        let aut = NodAutomaton::with_default_base(&l);
        assert_eq!(aut.nod_successors(l.parse_letter("e.1").unwrap()), word(&l, "e.1"));
    }

    #[test]
    fn enumeration_ex4_0_has_unique_longest_path() {
        let g = ex4_0();
        let aut = NodAutomaton::with_default_base(&g);
        let paths = aut.enumerate_nod_paths(6);
        assert!(paths[5].is_empty() && paths[6].is_empty());
        assert_eq!(paths[4].len(), 1);
        assert_eq!(g.render_word(&paths[4][0]), "e.2* f.1 f.1* e.2");
        let total: usize = paths.iter().map(Vec::len).sum();
        assert_eq!(total, 18);
        let counts = aut.count_by_length(8);
        assert!(counts[5..].iter().all(|c| c.is_zero()));
        assert_eq!(counts.iter().sum::<BigUint>(), BigUint::from(18u32));
    }

    #[test]
    fn enumeration_single_loop() {
        let g = loop1();
        let aut = NodAutomaton::with_default_base(&g);
        let paths = aut.enumerate_nod_paths(3);
        let rendered: Vec<String> = paths.iter().flatten().map(|w| g.render_word(w)).collect();
        assert_eq!(rendered, ["v", "e.1", "e.1*", "e.1 e.1", "e.1* e.1*", "e.1 e.1 e.1", "e.1* e.1* e.1*"]);
        let d = aut.growth_function(10);
        for (n, dn) in d.iter().enumerate() {
            assert_eq!(*dn, BigUint::from(1 + 2 * n));
        }
    }

    #[test]
    fn isolated_vertex_counts() {
        let g = GraphBuilder::new().vertex("v").build().unwrap();
        let aut = NodAutomaton::with_default_base(&g);
        assert_eq!(aut.enumerate_nod_paths(4).iter().flatten().count(), 1);
        let c = aut.count_by_length(4);
        assert_eq!(c[0], BigUint::one());
        assert!(c[1..].iter().all(|x| x.is_zero()));
    }
}
