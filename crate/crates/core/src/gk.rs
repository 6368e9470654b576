//! Growth type and Gelfand–Kirillov dimension.
//!
//! The algebra grows exponentially iff some quasi-cycle is selfconnected;
//! otherwise its GK dimension is the maximal length of a chain
//! `p_1 => p_2 => ... => p_k` of quasi-cycles from pairwise distinct rotation
//! classes. For unweighted graphs the same number is available from the
//! cycle structure of the graph alone, see [`unweighted_gk`].

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{ensure_internal, Error, Result};
use crate::graph::{EdgeId, Letter, VertexId, WeightedGraph};
use crate::nod::NodAutomaton;
use crate::quasicycle::{
    implies, is_quasicycle, quasicycle_classes, self_connector, QcClass, QuasiCycle,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    Polynomial,
    Exponential,
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Growth::Polynomial => "polynomial",
            Growth::Exponential => "exponential",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GkDimension {
    Finite(usize),
    Infinite,
}

impl fmt::Display for GkDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkDimension::Finite(d) => write!(f, "{d}"),
            GkDimension::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GkResult {
    /// `chain` realises the dimension; it is empty iff there are no quasi-cycles.
    Polynomial { dimension: usize, chain: Vec<QuasiCycle> },
    /// `witness connector witness` is a nod-path and `connector` does not start with `witness`.
    Exponential { witness: QuasiCycle, connector: Vec<Letter> },
}

impl GkResult {
    pub fn growth(&self) -> Growth {
        match self {
            GkResult::Polynomial { .. } => Growth::Polynomial,
            GkResult::Exponential { .. } => Growth::Exponential,
        }
    }

    pub fn dimension(&self) -> GkDimension {
        match self {
            GkResult::Polynomial { dimension, .. } => GkDimension::Finite(*dimension),
            GkResult::Exponential { .. } => GkDimension::Infinite,
        }
    }

    pub fn witness(&self) -> Option<&QuasiCycle> {
        match self {
            GkResult::Exponential { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn chain(&self) -> Option<&[QuasiCycle]> {
        match self {
            GkResult::Polynomial { chain, .. } if !chain.is_empty() => Some(chain),
            _ => None,
        }
    }
}

/// A vertex emitting two distinct edges of weight at least two, if any.
pub fn quick_exponential_check(g: &WeightedGraph) -> Option<VertexId> {
    g.vertices()
        .find(|&v| g.out_edges(v).iter().filter(|&&e| g.edge(e).weight >= 2).count() >= 2)
}

/// Selfconnected quasi-cycle at a vertex with two edges of weight >= 2.
///
/// With `e = e^v` and another such edge `f`: if `f` is a loop then `f_2` is a
/// quasi-cycle connected to itself through `f_2*`; otherwise `f_2 f_2*` is
/// one, connected through `f_2 f_1*`.
fn double_weight_witness(aut: &NodAutomaton<'_>, v: VertexId) -> Result<(QuasiCycle, Vec<Letter>)> {
    let g = aut.graph();
    let base = aut.choice().get(v).ok_or_else(|| Error::Internal("sink in quick check".into()))?;
    let f = g
        .out_edges(v)
        .iter()
        .copied()
        .find(|&e| e != base && g.edge(e).weight >= 2)
        .ok_or_else(|| Error::Internal("quick check fired without two weighted edges".into()))?;
    let (word, connector) = if g.edge(f).range == v {
        (vec![Letter::real(f, 2)], vec![Letter::ghost(f, 2)])
    } else {
        (
            vec![Letter::real(f, 2), Letter::ghost(f, 2)],
            vec![Letter::real(f, 2), Letter::ghost(f, 1)],
        )
    };
    let p = QuasiCycle::new(aut, word)
        .ok_or_else(|| Error::Internal("double-weight word is not a quasi-cycle".into()))?;
    ensure_internal!(
        connects_to_itself(aut, &p, &connector),
        "double-weight connector does not connect"
    );
    Ok((p, connector))
}

fn connects_to_itself(aut: &NodAutomaton<'_>, p: &QuasiCycle, o: &[Letter]) -> bool {
    let word: Vec<Letter> = p.letters().iter().chain(o).chain(p.letters()).copied().collect();
    !o.is_empty() && !o.starts_with(p.letters()) && aut.is_nod_letters(&word)
}

/// Longest chain over the given classes, with the lexicographically least
/// witness among the longest ones. Requires that no class is selfconnected.
pub fn max_chain(aut: &NodAutomaton<'_>, classes: &[QcClass]) -> (usize, Vec<QuasiCycle>) {
    let reps: Vec<&QuasiCycle> = classes.iter().map(|c| &c.canonical).collect();
    let k = reps.len();
    let next: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).filter(|&b| b != a && implies(aut, reps[a], reps[b])).collect())
        .collect();

    let chain = match topological_order(&next) {
        Some(order) => longest_in_dag(&next, &order),
        None => longest_by_search(&next),
    };
    (chain.len(), chain.into_iter().map(|i| reps[i].clone()).collect())
}

fn topological_order(next: &[Vec<usize>]) -> Option<Vec<usize>> {
    let k = next.len();
    let mut indeg = vec![0usize; k];
    for succ in next {
        for &b in succ {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..k).filter(|&a| indeg[a] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(a) = stack.pop() {
        order.push(a);
        for &b in &next[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    (order.len() == k).then_some(order)
}

fn longest_in_dag(next: &[Vec<usize>], order: &[usize]) -> Vec<usize> {
    let k = next.len();
    let mut best = vec![0usize; k];
    let mut step = vec![usize::MAX; k];
    for &a in order.iter().rev() {
        best[a] = 1;
        // Successors are listed in increasing order, so the first maximum is
        // the lexicographically least continuation.
        for &b in &next[a] {
            if best[b] + 1 > best[a] {
                best[a] = best[b] + 1;
                step[a] = b;
            }
        }
    }
    let Some(start) = (0..k).max_by_key(|&a| (best[a], std::cmp::Reverse(a))) else {
        return Vec::new();
    };
    let mut chain = vec![start];
    while step[*chain.last().unwrap()] != usize::MAX {
        chain.push(step[*chain.last().unwrap()]);
    }
    chain
}

/// Exhaustive search with a visited-class set, for relations with cycles.
fn longest_by_search(next: &[Vec<usize>]) -> Vec<usize> {
    fn go(a: usize, next: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], best: &mut Vec<usize>) {
        path.push(a);
        used[a] = true;
        if path.len() > best.len() || (path.len() == best.len() && *path < *best) {
            best.clone_from(path);
        }
        for &b in &next[a] {
            if !used[b] {
                go(b, next, path, used, best);
            }
        }
        used[a] = false;
        path.pop();
    }
    let mut best = Vec::new();
    let mut used = vec![false; next.len()];
    for a in 0..next.len() {
        go(a, next, &mut Vec::new(), &mut used, &mut best);
    }
    best
}

/// GK dimension for the default base choice.
pub fn gk_dimension(g: &WeightedGraph) -> Result<GkResult> {
    gk_dimension_with(&NodAutomaton::with_default_base(g))
}

pub fn gk_dimension_with(aut: &NodAutomaton<'_>) -> Result<GkResult> {
    if let Some(v) = quick_exponential_check(aut.graph()) {
        let (witness, connector) = double_weight_witness(aut, v)?;
        return Ok(GkResult::Exponential { witness, connector });
    }
    let classes = quasicycle_classes(aut);
    for class in &classes {
        if let Some(connector) = self_connector(aut, &class.canonical) {
            return Ok(GkResult::Exponential { witness: class.canonical.clone(), connector });
        }
    }
    let (dimension, chain) = max_chain(aut, &classes);
    Ok(GkResult::Polynomial { dimension, chain })
}

/// A cycle of `E`: the subgraph traced by a cyclic path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    /// Edges in path order, starting at the cycle's least vertex.
    pub edges: Vec<EdgeId>,
    pub vertices: BTreeSet<VertexId>,
}

impl Cycle {
    fn word_from(&self, g: &WeightedGraph, start: VertexId) -> Vec<Letter> {
        let at = self.edges.iter().position(|&e| g.edge(e).source == start).expect("on cycle");
        let mut edges = self.edges.clone();
        edges.rotate_left(at);
        edges.into_iter().map(|e| Letter::real(e, 1)).collect()
    }

    fn has_exit(&self, g: &WeightedGraph) -> bool {
        self.vertices
            .iter()
            .flat_map(|&v| g.out_edges(v))
            .any(|e| !self.edges.contains(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnweightedGkInputs {
    pub cycles: Vec<Cycle>,
    /// Longest chain of cycles.
    pub d1: usize,
    /// Longest chain of cycles whose last cycle has an exit.
    pub d2: usize,
    /// Two distinct cycles through a common vertex, if any.
    pub shared_vertex: Option<(usize, usize, VertexId)>,
    chain_d1: Vec<usize>,
    chain_d2: Vec<usize>,
}

/// All cycles of `E` (distinct edge sets), ordered by discovery from the least vertex.
pub fn cycles(g: &WeightedGraph) -> Vec<Cycle> {
    fn go(
        g: &WeightedGraph,
        start: VertexId,
        at: VertexId,
        edges: &mut Vec<EdgeId>,
        seen: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        for &e in g.out_edges(at) {
            let r = g.edge(e).range;
            if r == start {
                edges.push(e);
                let vertices = edges.iter().map(|&x| g.edge(x).source).collect();
                out.push(Cycle { edges: edges.clone(), vertices });
                edges.pop();
            } else if r > start && !seen[r.0] {
                seen[r.0] = true;
                edges.push(e);
                go(g, start, r, edges, seen, out);
                edges.pop();
                seen[r.0] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; g.vertex_count()];
    for s in g.vertices() {
        seen[s.0] = true;
        go(g, s, s, &mut Vec::new(), &mut seen, &mut out);
        seen[s.0] = false;
    }
    out
}

pub fn unweighted_gk_inputs(g: &WeightedGraph) -> Result<UnweightedGkInputs> {
    if !g.is_unweighted() {
        return Err(Error::NotUnweighted);
    }
    let cycles = cycles(g);
    let mut shared_vertex = None;
    'outer: for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if let Some(&v) = cycles[i].vertices.intersection(&cycles[j].vertices).next() {
                shared_vertex = Some((i, j, v));
                break 'outer;
            }
        }
    }
    let k = cycles.len();
    let next: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            let reach = g.tree(cycles[a].vertices.iter().copied());
            (0..k)
                .filter(|&b| b != a && cycles[b].vertices.iter().any(|v| reach.contains(v)))
                .collect()
        })
        .collect();
    let exits: Vec<bool> = cycles.iter().map(|c| c.has_exit(g)).collect();

    let (chain_d1, chain_d2) = if shared_vertex.is_some() {
        (Vec::new(), Vec::new())
    } else {
        let order = topological_order(&next)
            .ok_or_else(|| Error::Internal("disjoint cycles reach each other".into()))?;
        (
            longest_in_dag(&next, &order),
            longest_ending_in(&next, &order, &exits),
        )
    };
    Ok(UnweightedGkInputs {
        d1: chain_d1.len(),
        d2: chain_d2.len(),
        cycles,
        shared_vertex,
        chain_d1,
        chain_d2,
    })
}

/// Longest path ending in a marked node, lexicographically least among ties.
fn longest_ending_in(next: &[Vec<usize>], order: &[usize], marked: &[bool]) -> Vec<usize> {
    let k = next.len();
    let mut best = vec![0usize; k];
    let mut step = vec![usize::MAX; k];
    for &a in order.iter().rev() {
        if marked[a] {
            best[a] = 1;
        }
        for &b in &next[a] {
            if best[b] > 0 && best[b] + 1 > best[a] {
                best[a] = best[b] + 1;
                step[a] = b;
            }
        }
    }
    let Some(start) = (0..k).filter(|&a| best[a] > 0).max_by_key(|&a| (best[a], std::cmp::Reverse(a)))
    else {
        return Vec::new();
    };
    let mut chain = vec![start];
    while step[*chain.last().unwrap()] != usize::MAX {
        chain.push(step[*chain.last().unwrap()]);
    }
    chain
}

/// GK dimension of an unweighted graph from its cycles: exponential iff two
/// distinct cycles share a vertex, else `max(2 d1 - 1, 2 d2)` (0 without cycles).
pub fn unweighted_gk(g: &WeightedGraph) -> Result<GkResult> {
    let inputs = unweighted_gk_inputs(g)?;
    let cyc = &inputs.cycles;
    if let Some((i, j, v)) = inputs.shared_vertex {
        let witness = QuasiCycle::from_cycle(cyc[i].word_from(g, v));
        let connector = cyc[j].word_from(g, v);
        return Ok(GkResult::Exponential { witness, connector });
    }
    if cyc.is_empty() {
        return Ok(GkResult::Polynomial { dimension: 0, chain: Vec::new() });
    }
    let word = |i: usize| {
        let c = &cyc[i];
        QuasiCycle::from_cycle(c.word_from(g, g.edge(c.edges[0]).source))
    };
    let (forward, back_skip) = if inputs.d2 == inputs.d1 {
        (&inputs.chain_d2, 0)
    } else {
        (&inputs.chain_d1, 1)
    };
    let mut chain: Vec<QuasiCycle> = forward.iter().map(|&i| word(i)).collect();
    chain.extend(forward.iter().rev().skip(back_skip).map(|&i| word(i).star()));
    let dimension = (2 * inputs.d1 - 1).max(2 * inputs.d2);
    debug_assert_eq!(dimension, chain.len());
    Ok(GkResult::Polynomial { dimension, chain })
}

/// Checks that a reported chain is a genuine chain for `aut`.
pub fn is_chain(aut: &NodAutomaton<'_>, chain: &[QuasiCycle]) -> bool {
    chain.iter().all(|p| is_quasicycle(aut, p.letters()))
        && chain.windows(2).all(|w| implies(aut, &w[0], &w[1]))
        && {
            let classes: BTreeSet<_> = chain.iter().map(|p| p.canonical()).collect();
            classes.len() == chain.len()
        }
}
