//! Finite-dimensional case: rewrite a finite aquasicyclic weighted graph into
//! an unweighted acyclic one with an isomorphic algebra, then read off the
//! matrix decomposition from paths into sinks.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{ensure_internal, Error, Result};
use crate::graph::{EdgeId, VertexId, WEdge, WeightedGraph};
use crate::nod::NodAutomaton;

/// True iff the graph has no quasi-cycle.
pub fn is_aquasicyclic(g: &WeightedGraph) -> bool {
    NodAutomaton::with_default_base(g).is_acyclic()
}

fn require_aquasicyclic(g: &WeightedGraph) -> Result<()> {
    if is_aquasicyclic(g) {
        Ok(())
    } else {
        Err(Error::NotAquasicyclic)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub weighted_edges: Vec<EdgeId>,
    pub rwf: BTreeSet<VertexId>,
    /// Pairs of weighted edges not in line whose range trees were compared.
    pub disjoint_pairs: usize,
}

/// Checks the structure every finite aquasicyclic graph must have:
/// `E` is acyclic, every vertex emits at most one weighted edge, every
/// vertex of the range weight forest emits at most one edge, and weighted
/// edges not in line have disjoint range trees.
pub fn structural_audit(g: &WeightedGraph) -> Result<AuditReport> {
    require_aquasicyclic(g)?;
    ensure_internal!(g.is_acyclic(), "aquasicyclic graph has a cycle");
    for v in g.vertices() {
        let weighted = g.out_edges(v).iter().filter(|&&e| g.edge(e).is_weighted()).count();
        ensure_internal!(
            weighted <= 1,
            "vertex '{}' emits {weighted} weighted edges",
            g.vertex_name(v)
        );
    }
    let rwf = g.rwf();
    for &v in &rwf {
        ensure_internal!(
            g.out_edges(v).len() <= 1,
            "vertex '{}' in the range weight forest emits {} edges",
            g.vertex_name(v),
            g.out_edges(v).len()
        );
    }
    let weighted_edges = g.weighted_edges();
    let trees: Vec<BTreeSet<VertexId>> =
        weighted_edges.iter().map(|&e| g.tree([g.edge(e).range])).collect();
    let mut disjoint_pairs = 0;
    for a in 0..weighted_edges.len() {
        for b in a + 1..weighted_edges.len() {
            let (e, f) = (g.edge(weighted_edges[a]), g.edge(weighted_edges[b]));
            let in_line = trees[a].contains(&f.source) || trees[b].contains(&e.source);
            if in_line {
                continue;
            }
            ensure_internal!(
                trees[a].is_disjoint(&trees[b]),
                "range trees of '{}' and '{}' meet",
                e.name,
                f.name
            );
            disjoint_pairs += 1;
        }
    }
    Ok(AuditReport { weighted_edges, rwf, disjoint_pairs })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeType {
    /// The source emits no other edge.
    TypeA,
    TypeB,
}

pub fn classify_edge(g: &WeightedGraph, e: EdgeId) -> Result<EdgeType> {
    let edge = g.edge(e);
    if !edge.is_weighted() {
        return Err(Error::NotWeighted(edge.name.clone()));
    }
    Ok(if g.out_edges(edge.source).len() == 1 { EdgeType::TypeA } else { EdgeType::TypeB })
}

/// Picks `base` or `base_r1`, `base_r2`, ... whichever is not yet taken.
fn fresh_name(taken: &mut HashSet<String>, base: String) -> String {
    let name = if taken.contains(&base) {
        (1..).map(|n| format!("{base}_r{n}")).find(|c| !taken.contains(c)).unwrap()
    } else {
        base
    };
    taken.insert(name.clone());
    name
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub graph: WeightedGraph,
    /// Vertices whose out-edges were reversed (ids of the input graph).
    pub z: BTreeSet<VertexId>,
}

/// Reverses every edge sourced in `Z = RWF ∪ {v : v emits a single weighted
/// edge}`, splitting an edge of weight `w` into `w` reversed edges of
/// weight 1. Afterwards all weighted edges are of type B and end in sinks.
pub fn normalize_weighted_edges(g: &WeightedGraph) -> Result<Normalized> {
    require_aquasicyclic(g)?;
    let mut z = g.rwf();
    z.extend(g.vertices().filter(|&v| match g.out_edges(v) {
        [e] => g.edge(*e).is_weighted(),
        _ => false,
    }));

    let mut taken: HashSet<String> =
        g.edges().iter().filter(|e| !z.contains(&e.source)).map(|e| e.name.clone()).collect();
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        if !z.contains(&e.source) {
            edges.push(e.clone());
            continue;
        }
        for j in 1..=e.weight {
            let base = if e.weight == 1 { e.name.clone() } else { format!("{}_{j}", e.name) };
            edges.push(WEdge {
                name: fresh_name(&mut taken, base),
                source: e.range,
                range: e.source,
                weight: 1,
            });
        }
    }
    let graph = WeightedGraph::from_parts(g.vertex_names().to_vec(), edges)?;

    ensure_internal!(is_aquasicyclic(&graph), "normalization created a quasi-cycle");
    ensure_internal!(
        graph.weighted_edges().len() <= g.weighted_edges().len(),
        "normalization added weighted edges"
    );
    for e in graph.weighted_edges() {
        let edge = graph.edge(e);
        ensure_internal!(
            classify_edge(&graph, e)? == EdgeType::TypeB && graph.is_sink(edge.range),
            "weighted edge '{}' is not of type B into a sink after normalization",
            edge.name
        );
    }
    Ok(Normalized { graph, z })
}

/// The least weighted emitter whose tree contains no other weighted emitter.
pub fn pick_pivot(g: &WeightedGraph) -> Result<VertexId> {
    let emitters: BTreeSet<VertexId> =
        g.weighted_edges().into_iter().map(|e| g.edge(e).source).collect();
    emitters
        .iter()
        .copied()
        .find(|&v| g.tree([v]).iter().all(|y| *y == v || !emitters.contains(y)))
        .ok_or_else(|| Error::Internal("no weighted emitter is alone in its tree".into()))
}

/// Old vertex to the ordered list of new vertices it is sent to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexImageMap {
    images: BTreeMap<VertexId, Vec<VertexId>>,
}

impl VertexImageMap {
    pub fn insert(&mut self, old: VertexId, new: Vec<VertexId>) {
        self.images.insert(old, new);
    }

    pub fn get(&self, old: VertexId) -> Option<&[VertexId]> {
        self.images.get(&old).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[VertexId])> + '_ {
        self.images.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn domain(&self) -> BTreeSet<VertexId> {
        self.images.keys().copied().collect()
    }

    /// Images nonempty, pairwise disjoint, and covering exactly `0..vertex_count`.
    pub fn is_partition_of(&self, vertex_count: usize) -> bool {
        let mut seen = vec![false; vertex_count];
        for list in self.images.values() {
            if list.is_empty() {
                return false;
            }
            for &v in list {
                if v.0 >= vertex_count || seen[v.0] {
                    return false;
                }
                seen[v.0] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotReplacement {
    /// The tree `T(v)` being replaced (ids of the input graph).
    pub tree: BTreeSet<VertexId>,
    /// Unweighted graph with the same algebra as the subgraph on `tree`.
    pub graph: WeightedGraph,
    pub images: VertexImageMap,
}

/// Replaces the subgraph on `T(v)` by an unweighted graph.
///
/// `v` must emit one edge `e` of weight `k >= 2` into a sink `u` and edges of
/// weight 1 into targets `x_1 < ... < x_m`, with `n_i` parallel edges into
/// `x_i`; nothing else in `T(v)` may emit a weighted edge. The new graph has
/// a chain `v -> u_1 -> ... -> u_k`, for each `i` a chain of `n_i` edges from
/// `v` to `x_i` and a chain of `(k-1) n_i` edges out of `x_i`, which takes
/// over the edges `x_i` used to emit. The rest of `T(X)` is copied.
pub fn unweight_pivot_tree(g: &WeightedGraph, v: VertexId) -> Result<PivotReplacement> {
    let tree = g.tree([v]);
    let out = g.out_edges(v);
    let weighted: Vec<EdgeId> = out.iter().copied().filter(|&e| g.edge(e).is_weighted()).collect();
    ensure_internal!(weighted.len() == 1, "pivot '{}' must emit one weighted edge", g.vertex_name(v));
    let e = weighted[0];
    let k = g.edge(e).weight as usize;
    let u = g.edge(e).range;
    ensure_internal!(u != v && g.is_sink(u), "weighted edge of the pivot must end in a sink");

    let mut groups: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &f in out.iter().filter(|&&f| f != e) {
        *groups.entry(g.edge(f).range).or_default() += 1;
    }
    let xs: Vec<(VertexId, usize)> = groups.into_iter().collect();
    ensure_internal!(!xs.is_empty(), "pivot edge is of type A");
    let x_set: BTreeSet<VertexId> = xs.iter().map(|&(x, _)| x).collect();
    let tx = g.tree(x_set.iter().copied());
    ensure_internal!(
        !tx.contains(&u) && !tx.contains(&v),
        "pivot or its weighted range is reachable from the other targets"
    );
    ensure_internal!(
        tx.iter().all(|&y| g.out_edges(y).iter().all(|&f| !g.edge(f).is_weighted())),
        "another weighted emitter lies below the pivot"
    );

    let mut taken_v: HashSet<String> = g.vertex_names().iter().cloned().collect();
    let mut taken_e: HashSet<String> = g.edges().iter().map(|e| e.name.clone()).collect();
    let un = g.vertex_name(u).to_string();
    let vn = g.vertex_name(v).to_string();

    let mut names: Vec<String> = Vec::new();
    let add = |names: &mut Vec<String>, name: String| {
        names.push(name);
        VertexId(names.len() - 1)
    };
    let u_chain: Vec<VertexId> =
        (1..=k).map(|i| add(&mut names, fresh_name(&mut taken_v, format!("{un}_{i}")))).collect();
    let u_tails: Vec<Vec<VertexId>> = xs
        .iter()
        .enumerate()
        .map(|(i, &(_, n))| {
            (1..=(k - 1) * n)
                .map(|j| add(&mut names, fresh_name(&mut taken_v, format!("{un}_{}_{j}", i + 1))))
                .collect()
        })
        .collect();
    let v_new = add(&mut names, vn.clone());
    let v_chains: Vec<Vec<VertexId>> = xs
        .iter()
        .enumerate()
        .map(|(i, &(_, n))| {
            (2..=n)
                .map(|j| add(&mut names, fresh_name(&mut taken_v, format!("{vn}_{}_{j}", i + 1))))
                .collect()
        })
        .collect();
    let mut old_to_new: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &(x, _) in &xs {
        old_to_new.insert(x, add(&mut names, g.vertex_name(x).to_string()));
    }
    for &y in tx.iter().filter(|y| !x_set.contains(y)) {
        old_to_new.insert(y, add(&mut names, g.vertex_name(y).to_string()));
    }

    let mut edges: Vec<WEdge> = Vec::new();
    let link = |edges: &mut Vec<WEdge>, name: String, source: VertexId, range: VertexId| {
        edges.push(WEdge { name, source, range, weight: 1 });
    };
    let mut prev = v_new;
    for (i, &ui) in u_chain.iter().enumerate() {
        link(&mut edges, fresh_name(&mut taken_e, format!("alpha_{}", i + 1)), prev, ui);
        prev = ui;
    }
    for (i, &(x, _)) in xs.iter().enumerate() {
        let mut prev = v_new;
        let stops = v_chains[i].iter().copied().chain([old_to_new[&x]]);
        for (j, stop) in stops.enumerate() {
            link(&mut edges, fresh_name(&mut taken_e, format!("beta_{}_{}", i + 1, j + 1)), prev, stop);
            prev = stop;
        }
    }
    for (i, &(x, _)) in xs.iter().enumerate() {
        let mut prev = old_to_new[&x];
        for (j, &uij) in u_tails[i].iter().enumerate() {
            link(&mut edges, fresh_name(&mut taken_e, format!("gamma_{}_{}", i + 1, j + 1)), prev, uij);
            prev = uij;
        }
    }
    let tail_of: BTreeMap<VertexId, VertexId> = xs
        .iter()
        .enumerate()
        .map(|(i, &(x, _))| (x, *u_tails[i].last().expect("k >= 2 gives a nonempty tail")))
        .collect();
    for edge in g.edges().iter().filter(|edge| tx.contains(&edge.source)) {
        let source = tail_of.get(&edge.source).copied().unwrap_or(old_to_new[&edge.source]);
        edges.push(WEdge { name: edge.name.clone(), source, range: old_to_new[&edge.range], weight: 1 });
    }

    let mut images = VertexImageMap::default();
    images.insert(u, u_chain.iter().chain(u_tails.iter().flatten()).copied().collect());
    images.insert(v, std::iter::once(v_new).chain(v_chains.iter().flatten().copied()).collect());
    for (&old, &new) in &old_to_new {
        images.insert(old, vec![new]);
    }
    let graph = WeightedGraph::from_parts(names, edges)?;
    ensure_internal!(graph.is_unweighted(), "replacement graph is weighted");
    ensure_internal!(images.domain() == tree, "images do not cover the pivot tree");
    ensure_internal!(images.is_partition_of(graph.vertex_count()), "images overlap or miss vertices");
    Ok(PivotReplacement { tree, graph, images })
}

/// Replaces the hereditary set `h` by `replacement`: edges entering `h` are
/// copied once per image vertex of their range (`e_1, e_2, ...`, or `e` when
/// the image is a single vertex), edges sourced in `h` are dropped and the
/// replacement's edges are appended.
pub fn splice_replacement(
    g: &WeightedGraph,
    h: &BTreeSet<VertexId>,
    replacement: &WeightedGraph,
    images: &VertexImageMap,
) -> Result<WeightedGraph> {
    if !g.is_hereditary(h) {
        g.hereditary_subgraph(h)?;
    }
    if images.domain() != *h {
        return Err(Error::ImageMismatch("image keys differ from the replaced set".into()));
    }
    if let Some((old, _)) =
        images.iter().find(|(_, list)| list.iter().any(|w| w.0 >= replacement.vertex_count()))
    {
        return Err(Error::ImageMismatch(format!(
            "image of '{}' names a missing vertex",
            g.vertex_name(old)
        )));
    }

    let outside: Vec<VertexId> = g.vertices().filter(|v| !h.contains(v)).collect();
    let mut new_id: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut names: Vec<String> = Vec::new();
    for &v in &outside {
        new_id.insert(v, VertexId(names.len()));
        names.push(g.vertex_name(v).to_string());
    }
    let offset = names.len();
    names.extend(replacement.vertex_names().iter().cloned());
    let unique: HashSet<&String> = names.iter().collect();
    if unique.len() != names.len() {
        return Err(Error::ImageMismatch("replacement reuses a vertex name outside the set".into()));
    }

    let mut taken: HashSet<String> = replacement.edges().iter().map(|e| e.name.clone()).collect();
    taken.extend(
        g.edges()
            .iter()
            .filter(|e| !h.contains(&e.source) && !h.contains(&e.range))
            .map(|e| e.name.clone()),
    );
    let mut edges: Vec<WEdge> = Vec::new();
    for e in g.edges().iter().filter(|e| !h.contains(&e.source)) {
        let source = new_id[&e.source];
        match images.get(e.range) {
            None => edges.push(WEdge { source, range: new_id[&e.range], ..e.clone() }),
            Some([single]) => {
                let name = fresh_name(&mut taken, e.name.clone());
                edges.push(WEdge { name, source, range: VertexId(single.0 + offset), weight: e.weight });
            }
            Some(list) => {
                for (j, w) in list.iter().enumerate() {
                    let name = fresh_name(&mut taken, format!("{}_{}", e.name, j + 1));
                    edges.push(WEdge { name, source, range: VertexId(w.0 + offset), weight: e.weight });
                }
            }
        }
    }
    for e in replacement.edges() {
        edges.push(WEdge {
            source: VertexId(e.source.0 + offset),
            range: VertexId(e.range.0 + offset),
            ..e.clone()
        });
    }
    WeightedGraph::from_parts(names, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineStep {
    Normalize { z: Vec<String>, graph: WeightedGraph },
    Replace { pivot: String, tree: Vec<String>, replacement: WeightedGraph, graph: WeightedGraph },
}

impl PipelineStep {
    pub fn graph(&self) -> &WeightedGraph {
        match self {
            PipelineStep::Normalize { graph, .. } | PipelineStep::Replace { graph, .. } => graph,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pipeline {
    pub steps: Vec<PipelineStep>,
    pub result: WeightedGraph,
}

/// Alternates normalization and pivot replacement until no weighted edge is left.
pub fn unweight_fully(g: &WeightedGraph) -> Result<Pipeline> {
    require_aquasicyclic(g)?;
    let mut steps = Vec::new();
    let mut current = g.clone();
    let budget = g.weighted_edges().len();
    for _round in 0..=budget {
        let before = current.weighted_edges().len();
        let Normalized { graph, z } = normalize_weighted_edges(&current)?;
        steps.push(PipelineStep::Normalize {
            z: z.iter().map(|&v| current.vertex_name(v).to_string()).collect(),
            graph: graph.clone(),
        });
        if graph.is_unweighted() {
            ensure_internal!(graph.is_acyclic(), "unweighted result has a cycle");
            return Ok(Pipeline { steps, result: graph });
        }
        let pivot = pick_pivot(&graph)?;
        let rep = unweight_pivot_tree(&graph, pivot)?;
        let spliced = splice_replacement(&graph, &rep.tree, &rep.graph, &rep.images)?;
        ensure_internal!(is_aquasicyclic(&spliced), "replacement created a quasi-cycle");
        ensure_internal!(
            spliced.weighted_edges().len() < before,
            "replacement did not remove a weighted edge"
        );
        steps.push(PipelineStep::Replace {
            pivot: graph.vertex_name(pivot).to_string(),
            tree: rep.tree.iter().map(|&v| graph.vertex_name(v).to_string()).collect(),
            replacement: rep.graph,
            graph: spliced.clone(),
        });
        current = spliced;
    }
    Err(Error::Internal("pipeline exceeded its round budget".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Matrix sizes, ascending.
    pub sizes: Vec<u64>,
    /// Sum of the squared sizes.
    pub dimension: u64,
}

/// One matrix block per sink, of size the number of paths (trivial one
/// included) ending there.
pub fn acyclic_decomposition(g: &WeightedGraph) -> Result<Decomposition> {
    if !g.is_unweighted() {
        return Err(Error::NotUnweighted);
    }
    let order = g.topological_order().ok_or(Error::NotAcyclic)?;
    let mut paths = vec![0u64; g.vertex_count()];
    for v in order {
        let mut n: u64 = 1;
        for &e in g.in_edges(v) {
            n = n.checked_add(paths[g.edge(e).source.0]).ok_or(Error::Overflow("paths"))?;
        }
        paths[v.0] = n;
    }
    let mut sizes: Vec<u64> = g.sinks().into_iter().map(|v| paths[v.0]).collect();
    sizes.sort_unstable();
    let dimension = sizes.iter().try_fold(0u64, |acc, &n| {
        n.checked_mul(n).and_then(|sq| acc.checked_add(sq)).ok_or(Error::Overflow("dimension"))
    })?;
    Ok(Decomposition { sizes, dimension })
}

/// Runs the whole pipeline and decomposes its result.
pub fn decompose(g: &WeightedGraph) -> Result<Decomposition> {
    acyclic_decomposition(&unweight_fully(g)?.result)
}

/// Total number of nod-paths, counted one by one. Without quasi-cycles no
/// nod-path repeats a letter, so a path longer than the letter count means
/// the graph is not aquasicyclic.
pub fn dimension_oracle(g: &WeightedGraph) -> Result<u64> {
    fn walk(aut: &NodAutomaton<'_>, at: usize, depth: usize, cap: usize) -> Result<u64> {
        if depth > cap {
            return Err(Error::NotAquasicyclic);
        }
        let mut total: u64 = 1;
        for &next in aut.successors_at(at) {
            let sub = walk(aut, next, depth + 1, cap)?;
            total = total.checked_add(sub).ok_or(Error::Overflow("nod-paths"))?;
        }
        Ok(total)
    }
    let aut = NodAutomaton::with_default_base(g);
    let cap = aut.letter_count();
    let mut total = g.vertex_count() as u64;
    for start in 0..cap {
        total = total.checked_add(walk(&aut, start, 1, cap)?).ok_or(Error::Overflow("nod-paths"))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn build(vertices: &[&str], edges: &[(&str, &str, &str, i64)]) -> WeightedGraph {
        let mut b = GraphBuilder::new();
        b.vertices(vertices.iter().copied());
        for &(n, s, r, w) in edges {
            b.edge(n, s, r, w);
        }
        b.build().unwrap()
    }

    fn ex4_0() -> WeightedGraph {
        build(&["u", "v", "x"], &[("e", "v", "u", 2), ("f", "v", "x", 1)])
    }

    fn ex5_00() -> WeightedGraph {
        build(
            &["a", "u", "v", "x", "y", "b", "c"],
            &[
                ("k", "u", "a", 1),
                ("e", "v", "u", 2),
                ("f", "v", "x", 1),
                ("g", "v", "x", 1),
                ("h", "x", "y", 1),
                ("i", "y", "b", 2),
                ("j", "b", "c", 1),
            ],
        )
    }

    fn names(g: &WeightedGraph, set: &BTreeSet<VertexId>) -> Vec<String> {
        set.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    fn edge_list(g: &WeightedGraph) -> Vec<(String, String, String, u32)> {
        g.edges()
            .iter()
            .map(|e| {
                (e.name.clone(), g.vertex_name(e.source).into(), g.vertex_name(e.range).into(), e.weight)
            })
            .collect()
    }

    #[test]
    fn aquasicyclic_examples() {
        assert!(is_aquasicyclic(&ex4_0()));
        assert!(is_aquasicyclic(&ex5_00()));
        assert!(!is_aquasicyclic(&build(&["v"], &[("l", "v", "v", 1)])));
    }

    #[test]
    fn audit() {
        let r = structural_audit(&ex5_00()).unwrap();
        assert_eq!(r.weighted_edges.len(), 2);
        structural_audit(&ex4_0()).unwrap();
        assert_eq!(
            structural_audit(&build(&["v"], &[("l", "v", "v", 1)])),
            Err(Error::NotAquasicyclic)
        );
    }

    #[test]
    fn classification() {
        let g = ex5_00();
        let by = |n: &str| g.edge_by_name(n).unwrap();
        assert_eq!(classify_edge(&g, by("i")), Ok(EdgeType::TypeA));
        assert_eq!(classify_edge(&g, by("e")), Ok(EdgeType::TypeB));
        assert_eq!(classify_edge(&g, by("f")), Err(Error::NotWeighted("f".into())));
        let g = ex4_0();
        assert_eq!(classify_edge(&g, g.edge_by_name("e").unwrap()), Ok(EdgeType::TypeB));
        let rose = build(&["v"], &[("l", "v", "v", 2)]);
        assert_eq!(classify_edge(&rose, EdgeId(0)), Ok(EdgeType::TypeA));
    }

    #[test]
    fn normalization_of_ex5_00() {
        let g = ex5_00();
        let n = normalize_weighted_edges(&g).unwrap();
        assert_eq!(names(&g, &n.z), ["a", "u", "y", "b", "c"]);
        let expected: Vec<(String, String, String, u32)> = [
            ("k", "a", "u", 1),
            ("e", "v", "u", 2),
            ("f", "v", "x", 1),
            ("g", "v", "x", 1),
            ("h", "x", "y", 1),
            ("i_1", "b", "y", 1),
            ("i_2", "b", "y", 1),
            ("j", "c", "b", 1),
        ]
        .iter()
        .map(|&(a, b, c, w)| (a.into(), b.into(), c.into(), w))
        .collect();
        assert_eq!(edge_list(&n.graph), expected);
    }

    #[test]
    fn normalization_leaves_ex4_0() {
        let g = ex4_0();
        let n = normalize_weighted_edges(&g).unwrap();
        assert_eq!(names(&g, &n.z), ["u"]);
        assert_eq!(n.graph, g);
    }

    #[test]
    fn pivots() {
        let g = ex4_0();
        assert_eq!(pick_pivot(&g).unwrap(), g.vertex_by_name("v").unwrap());
        let two = build(
            &["a", "b", "p", "q", "r", "s"],
            &[("e", "b", "p", 2), ("f", "b", "q", 1), ("g", "a", "r", 2), ("h", "a", "s", 1)],
        );
        assert_eq!(pick_pivot(&two).unwrap(), VertexId(0));
    }

    #[test]
    fn unweight_ex4_0() {
        let g = ex4_0();
        let rep = unweight_pivot_tree(&g, VertexId(1)).unwrap();
        assert_eq!(rep.graph.vertex_names(), ["u_1", "u_2", "u_1_1", "v", "x"]);
        let edges: Vec<_> = edge_list(&rep.graph).into_iter().map(|(_, s, r, _)| (s, r)).collect();
        let expected = [("v", "u_1"), ("u_1", "u_2"), ("v", "x"), ("x", "u_1_1")];
        assert_eq!(edges, expected.map(|(a, b)| (a.to_string(), b.to_string())));
        assert_eq!(rep.images.get(VertexId(0)).unwrap(), [VertexId(0), VertexId(1), VertexId(2)]);
        assert_eq!(rep.images.get(VertexId(1)).unwrap(), [VertexId(3)]);
        assert_eq!(rep.images.get(VertexId(2)).unwrap(), [VertexId(4)]);
    }

    #[test]
    fn unweight_parallel_group() {
        let g = build(
            &["u", "v", "x", "y"],
            &[("e", "v", "u", 2), ("f", "v", "x", 1), ("g", "v", "x", 1), ("h", "x", "y", 1)],
        );
        let rep = unweight_pivot_tree(&g, VertexId(1)).unwrap();
        assert_eq!(rep.graph.vertex_names(), ["u_1", "u_2", "u_1_1", "u_1_2", "v", "v_1_2", "x", "y"]);
        let edges: Vec<_> = edge_list(&rep.graph).into_iter().map(|(_, s, r, _)| (s, r)).collect();
        let expected = [
            ("v", "u_1"),
            ("u_1", "u_2"),
            ("v", "v_1_2"),
            ("v_1_2", "x"),
            ("x", "u_1_1"),
            ("u_1_1", "u_1_2"),
            ("u_1_2", "y"),
        ];
        assert_eq!(edges, expected.map(|(a, b)| (a.to_string(), b.to_string())));
        assert_eq!(rep.images.get(VertexId(0)).unwrap().len(), 4);
        assert_eq!(rep.images.get(VertexId(1)).unwrap().len(), 2);
    }

    #[test]
    fn splice_whole_set_is_replacement() {
        let g = ex4_0();
        let rep = unweight_pivot_tree(&g, VertexId(1)).unwrap();
        let all: BTreeSet<VertexId> = g.vertices().collect();
        assert_eq!(splice_replacement(&g, &all, &rep.graph, &rep.images).unwrap(), rep.graph);
    }

    #[test]
    fn splice_checks_inputs() {
        let g = ex4_0();
        let rep = unweight_pivot_tree(&g, VertexId(1)).unwrap();
        let not_hereditary: BTreeSet<VertexId> = [VertexId(1)].into();
        assert!(matches!(
            splice_replacement(&g, &not_hereditary, &rep.graph, &rep.images),
            Err(Error::NotHereditary(..))
        ));
        let sinks = g.sinks();
        assert!(matches!(
            splice_replacement(&g, &sinks, &rep.graph, &rep.images),
            Err(Error::ImageMismatch(_))
        ));
    }

    #[test]
    fn pipeline_ex4_0() {
        let p = unweight_fully(&ex4_0()).unwrap();
        assert_eq!(p.result.vertex_count(), 5);
        assert_eq!(p.result.edge_count(), 4);
        let d = acyclic_decomposition(&p.result).unwrap();
        assert_eq!(d, Decomposition { sizes: vec![3, 3], dimension: 18 });
        assert_eq!(dimension_oracle(&ex4_0()), Ok(18));
    }

    #[test]
    fn pipeline_ex5_00() {
        let g = ex5_00();
        let p = unweight_fully(&g).unwrap();
        let d = acyclic_decomposition(&p.result).unwrap();
        assert_eq!(d.sizes, [5, 12]);
        assert_eq!(d.dimension, 169);
        assert_eq!(dimension_oracle(&g), Ok(169));
        for step in &p.steps {
            assert_eq!(dimension_oracle(step.graph()), Ok(169));
        }
    }

    #[test]
    fn unweighted_acyclic_is_unchanged() {
        let g = build(&["a", "b", "c"], &[("p", "a", "b", 1), ("q", "a", "c", 1)]);
        let p = unweight_fully(&g).unwrap();
        assert_eq!(p.result, g);
        assert_eq!(p.steps.len(), 1);
    }

    #[test]
    fn decomposition_errors() {
        let single = build(&["v"], &[]);
        assert_eq!(acyclic_decomposition(&single).unwrap().sizes, [1]);
        assert_eq!(dimension_oracle(&single), Ok(1));
        assert_eq!(acyclic_decomposition(&ex4_0()), Err(Error::NotUnweighted));
        let looped = build(&["v"], &[("l", "v", "v", 1)]);
        assert_eq!(acyclic_decomposition(&looped), Err(Error::NotAcyclic));
        assert_eq!(dimension_oracle(&looped), Err(Error::NotAquasicyclic));
    }
}
