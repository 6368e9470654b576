#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use rand::Rng;
use wlpa_core::{is_aquasicyclic, parse_graph, GraphBuilder, WeightedGraph};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_text(name: &str) -> String {
    fs::read_to_string(fixture_dir().join(format!("{name}.wg")))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn load(name: &str) -> WeightedGraph {
    parse_graph(&fixture_text(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Every bundled fixture, sorted by name.
pub fn all_fixtures() -> Vec<(String, WeightedGraph)> {
    let mut names: Vec<String> = fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "wg"))
        .filter_map(|p| p.file_stem().and_then(|s| s.to_str()).map(String::from))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

pub fn graph(vertices: usize, edges: &[(usize, usize, u32)]) -> WeightedGraph {
    let mut b = GraphBuilder::new();
    b.vertices((0..vertices).map(|i| format!("v{i}")));
    for (k, &(s, r, w)) in edges.iter().enumerate() {
        b.edge(format!("e{k}"), format!("v{s}"), format!("v{r}"), w as i64);
    }
    b.build().expect("generated graph is valid")
}

/// All unweighted multigraphs on `1..=max_vertices` vertices with at most
/// `max_edges` edges, each listed once as a sorted multiset of edges.
pub fn small_unweighted(max_vertices: usize, max_edges: usize) -> Vec<WeightedGraph> {
    fn extend(
        n: usize,
        from: usize,
        left: usize,
        edges: &mut Vec<(usize, usize, u32)>,
        out: &mut Vec<WeightedGraph>,
    ) {
        out.push(graph(n, edges));
        if left == 0 {
            return;
        }
        for p in from..n * n {
            edges.push((p / n, p % n, 1));
            extend(n, p, left - 1, edges, out);
            edges.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        extend(n, 0, max_edges, &mut Vec::new(), &mut out);
    }
    out
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize, max_weight: u32) -> WeightedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let edges: Vec<(usize, usize, u32)> = (0..m)
        .map(|_| {
            let w = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=max_weight) };
            (rng.gen_range(0..n), rng.gen_range(0..n), w)
        })
        .collect();
    graph(n, &edges)
}

/// Rejection sampling of aquasicyclic graphs; returns the samples and the
/// number of draws it took. Every other sample must carry a weighted edge,
/// since those are rare among uniform draws.
pub fn random_aquasicyclic<R: Rng>(rng: &mut R, count: usize, max_vertices: usize, max_weight: u32) -> (Vec<WeightedGraph>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count {
        draws += 1;
        let g = random_graph(rng, max_vertices, 7, max_weight);
        let weighted_turn = out.len() % 2 == 0;
        if is_aquasicyclic(&g) && (!weighted_turn || !g.is_unweighted()) {
            out.push(g);
        }
    }
    (out, draws)
}
