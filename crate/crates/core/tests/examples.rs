mod common;

use std::collections::BTreeSet;

use wlpa_core::fd::{classify_edge, normalize_weighted_edges, unweight_pivot_tree, EdgeType};
use wlpa_core::format::{parse_document, render_document};
use wlpa_core::gk::{is_chain, quick_exponential_check};
use wlpa_core::quasicycle::{enumerate_quasicycles, is_quasicycle, is_selfconnected, quasicycle_classes, QuasiCycle};
use wlpa_core::{
    gk_dimension, parse_graph, BasePointChoice, GkDimension, GkResult, Letter, NodAutomaton, WeightedGraph,
};

use common::{all_fixtures, fixture_text, load};

fn word(g: &WeightedGraph, text: &str) -> Vec<Letter> {
    text.split_whitespace().map(|l| g.parse_letter(l).unwrap()).collect()
}

#[test]
fn fixtures_round_trip_through_the_parser() {
    for (name, g) in all_fixtures() {
        let doc = parse_document(&fixture_text(&name)).unwrap();
        assert_eq!(parse_document(&render_document(&doc)).unwrap(), doc, "{name}");
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g, "{name}");
    }
}

#[test]
fn exqu_quasicycles_for_every_base() {
    let g = load("ex4_exqu");
    let p = word(&g, "e.2 f.1 g.1* e.2*");
    let q = word(&g, "e.2 f.1 g.1* e.1*");
    for choice in BasePointChoice::all(&g) {
        let aut = NodAutomaton::new(&g, choice).unwrap();
        for w in [&p, &q] {
            let qc = QuasiCycle::new(&aut, w.clone()).expect("quasi-cycle");
            assert!(is_selfconnected(&aut, &qc));
        }
        // pqp and qpq are nod-paths.
        let pqp: Vec<Letter> = p.iter().chain(&q).chain(&p).copied().collect();
        let qpq: Vec<Letter> = q.iter().chain(&p).chain(&q).copied().collect();
        assert!(aut.is_nod_letters(&pqp) && aut.is_nod_letters(&qpq));
    }
}

#[test]
fn exqu_quasicycle_meets_a_vertex_twice() {
    let g = load("ex4_exqu");
    let p = word(&g, "e.2 f.1 g.1* e.2*");
    let v = g.vertex_by_name("v").unwrap();
    let visits = p.iter().filter(|&&l| g.letter_source(l) == v).count();
    assert_eq!(visits, 2);
}

#[test]
fn triangle_nod_exits() {
    let g = load("ex4_triangle");
    let aut = NodAutomaton::with_default_base(&g);
    let exits = |p: &[Letter]| -> BTreeSet<String> {
        let n = p.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for y in aut.nod_successors(p[i]) {
                if y != p[(i + 1) % n] {
                    out.insert(g.word_name(&[p[i], y]));
                }
            }
        }
        out
    };
    assert!(exits(&word(&g, "e.2 f.1 g.1*")).is_empty());
    let want: BTreeSet<String> = ["e.2* e.1", "e.2* e.2", "f.1* e.1*", "g.1 g.1*"].map(String::from).into();
    assert_eq!(exits(&word(&g, "g.1 f.1* e.2*")), want);
    let succ = |l: &str| -> Vec<String> {
        aut.nod_successors(g.parse_letter(l).unwrap()).into_iter().map(|x| g.letter_name(x)).collect()
    };
    assert_eq!(succ("e.1"), ["f.1"]);
    assert_eq!(succ("e.1*"), ["e.2"]);
    assert_eq!(succ("g.1*"), ["e.2"]);
}

#[test]
fn ladder_quasicycles_are_the_loops() {
    for n in 1..=3usize {
        for name in [format!("ex4_ladder_n{n}"), format!("ex4_ladder_ext_n{n}")] {
            let g = load(&name);
            let aut = NodAutomaton::with_default_base(&g);
            let got: BTreeSet<String> =
                enumerate_quasicycles(&aut).iter().map(|p| g.word_name(p.letters())).collect();
            let want: BTreeSet<String> =
                (1..=n).flat_map(|i| [format!("g{i}.1"), format!("g{i}.1*")]).collect();
            assert_eq!(got, want, "{name}");
            for c in quasicycle_classes(&aut) {
                assert!(!is_selfconnected(&aut, &c.canonical), "{name}");
            }
            let r = gk_dimension(&g).unwrap();
            assert!(is_chain(&aut, r.chain().unwrap()), "{name}");
        }
    }
}

#[test]
fn ladder_last_loop_is_a_dead_end() {
    // Without the extra sink the last loop cannot be followed by its star.
    let g = load("ex4_ladder_n2");
    let aut = NodAutomaton::with_default_base(&g);
    let p = QuasiCycle::new(&aut, word(&g, "g2.1")).unwrap();
    assert!(!wlpa_core::quasicycle::implies(&aut, &p, &p.star()));
    let g = load("ex4_ladder_ext_n2");
    let aut = NodAutomaton::with_default_base(&g);
    let p = QuasiCycle::new(&aut, word(&g, "g2.1")).unwrap();
    assert!(wlpa_core::quasicycle::implies(&aut, &p, &p.star()));
}

#[test]
fn leavitt_algebra_roses() {
    for (n, k, want) in [
        (1, 0, GkDimension::Finite(1)),
        (1, 1, GkDimension::Infinite),
        (1, 2, GkDimension::Infinite),
        (2, 0, GkDimension::Infinite),
        (2, 1, GkDimension::Infinite),
        (3, 0, GkDimension::Infinite),
    ] {
        let g = load(&format!("ex4_rose_n{n}_k{k}"));
        assert_eq!(gk_dimension(&g).unwrap().dimension(), want, "n={n} k={k}");
        assert_eq!(quick_exponential_check(&g).is_some(), n > 1, "n={n} k={k}");
    }
}

#[test]
fn two_weighted_edges_give_exponential_growth() {
    let g = load("ex4_1");
    let r = gk_dimension(&g).unwrap();
    let GkResult::Exponential { witness, connector } = r else { panic!("expected exponential growth") };
    let aut = NodAutomaton::with_default_base(&g);
    assert!(is_quasicycle(&aut, witness.letters()));
    let w: Vec<Letter> = witness.letters().iter().chain(&connector).chain(witness.letters()).copied().collect();
    assert!(aut.is_nod_letters(&w));
    assert!(!connector.starts_with(witness.letters()));
}

#[test]
fn ex4_0_longest_nod_path() {
    let g = load("ex4_0");
    let aut = NodAutomaton::with_default_base(&g);
    let levels = aut.enumerate_nod_paths(6);
    assert_eq!(levels[4].iter().map(|w| g.render_word(w)).collect::<Vec<_>>(), ["e.2* f.1 f.1* e.2"]);
    assert!(levels[5].is_empty());
}

#[test]
fn ex5_00_structure() {
    let g = load("ex5_00");
    let rwf: Vec<&str> = g.rwf().into_iter().map(|v| g.vertex_name(v)).collect();
    assert_eq!(rwf, ["a", "u", "b", "c"]);
    assert_eq!(classify_edge(&g, g.edge_by_name("i").unwrap()).unwrap(), EdgeType::TypeA);
    assert_eq!(classify_edge(&g, g.edge_by_name("e").unwrap()).unwrap(), EdgeType::TypeB);
    let n = normalize_weighted_edges(&g).unwrap();
    assert_eq!(n.graph, load("ex5_1"));
    assert_eq!(n.graph.weighted_edges().len(), 1);
}

#[test]
fn ex5_1_pivot_tree() {
    let g = load("ex5_1");
    let v = g.vertex_by_name("v").unwrap();
    let tree: Vec<&str> = g.tree([v]).into_iter().map(|x| g.vertex_name(x)).collect();
    assert_eq!(tree, ["u", "v", "x", "y"]);
    let rep = unweight_pivot_tree(&g, v).unwrap();
    assert_eq!(rep.graph.vertex_count(), 8);
    assert_eq!(rep.graph.edge_count(), 7);
    let image = |name: &str| -> Vec<&str> {
        rep.images
            .get(g.vertex_by_name(name).unwrap())
            .unwrap()
            .iter()
            .map(|&w| rep.graph.vertex_name(w))
            .collect()
    };
    assert_eq!(image("u"), ["u_1", "u_2", "u_1_1", "u_1_2"]);
    assert_eq!(image("v"), ["v", "v_1_2"]);
    assert_eq!(image("x"), ["x"]);
    assert_eq!(image("y"), ["y"]);
}
