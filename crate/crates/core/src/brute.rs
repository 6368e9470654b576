//! Slow reference implementations used to cross-check the fast paths.
//!
//! Everything here follows the definitions literally: connectors are
//! searched up to a fixed length bound and quasi-cycles are grown as words
//! and filtered with the subword test.

use std::collections::{BTreeSet, HashMap};

use crate::gk::GkDimension;
use crate::graph::Letter;
use crate::nod::NodAutomaton;
use crate::quasicycle::{QcClass, QuasiCycle};

/// Length bound for connector searches: twice the number of letters.
pub fn connector_bound(aut: &NodAutomaton<'_>) -> usize {
    2 * aut.letter_count()
}

/// Some `o` with `|o| <= bound` such that `p o q` is a nod-path and `o` does
/// not start with `p`. With `nonempty`, `o` must have at least one letter.
pub fn literal_connector(
    aut: &NodAutomaton<'_>,
    p: &[Letter],
    q: &[Letter],
    bound: usize,
    nonempty: bool,
) -> Option<Vec<Letter>> {
    if !aut.is_nod_letters(p) || !aut.is_nod_letters(q) || p.is_empty() || q.is_empty() {
        return None;
    }
    if !nonempty && aut.allowed(p[p.len() - 1], q[0]) {
        return Some(Vec::new());
    }
    let mut search = Search { aut, p, target: q[0], exhausted: HashMap::new() };
    let mut o = Vec::new();
    search.extend(p[p.len() - 1], &mut o, bound).then_some(o)
}

struct Search<'a, 'g> {
    aut: &'a NodAutomaton<'g>,
    p: &'a [Letter],
    target: Letter,
    /// (last letter, matched prefix of p or None once diverged) -> largest
    /// remaining budget already searched without success.
    exhausted: HashMap<(Letter, Option<usize>), usize>,
}

impl Search<'_, '_> {
    fn status(&self, o: &[Letter]) -> Option<usize> {
        let m = o.len().min(self.p.len());
        (o[..m] == self.p[..m]).then_some(m)
    }

    fn extend(&mut self, last: Letter, o: &mut Vec<Letter>, budget: usize) -> bool {
        if budget == 0 {
            return false;
        }
        for y in self.aut.nod_successors(last) {
            o.push(y);
            let status = self.status(o);
            // A connector starting with p is excluded, and so is every extension.
            if status != Some(self.p.len()) {
                if self.aut.allowed(y, self.target) {
                    return true;
                }
                let key = (y, status);
                let rest = budget - 1;
                if self.exhausted.get(&key).is_none_or(|&b| b < rest) {
                    if self.extend(y, o, rest) {
                        return true;
                    }
                    self.exhausted.insert(key, rest);
                }
            }
            o.pop();
        }
        false
    }
}

pub fn literal_implies(aut: &NodAutomaton<'_>, p: &[Letter], q: &[Letter]) -> bool {
    literal_connector(aut, p, q, connector_bound(aut), false).is_some()
}

pub fn literal_selfconnected(aut: &NodAutomaton<'_>, p: &[Letter]) -> bool {
    literal_connector(aut, p, p, connector_bound(aut), true).is_some()
}

/// Every quasi-cycle word, found by growing nod-paths letter by letter.
///
/// A proper subword of a quasi-cycle is a proper subword of its square, so
/// a word is abandoned as soon as one of its proper subwords is nod². Each
/// word that closes up is then checked with the full subword test.
pub fn literal_quasicycles(aut: &NodAutomaton<'_>) -> Vec<QuasiCycle> {
    fn go(aut: &NodAutomaton<'_>, path: &mut Vec<Letter>, out: &mut Vec<QuasiCycle>) {
        let last = path[path.len() - 1];
        // Closing back to a later letter makes a proper subword nod².
        if path[1..].iter().any(|&x| aut.allowed(last, x)) {
            return;
        }
        if aut.allowed(last, path[0]) {
            out.extend(QuasiCycle::new(aut, path.clone()));
            return;
        }
        for y in aut.nod_successors(last) {
            path.push(y);
            go(aut, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for &x in aut.letters() {
        go(aut, &mut vec![x], &mut out);
    }
    out.sort();
    out
}

/// Quasi-cycle classes built from [`literal_quasicycles`].
pub fn literal_quasicycle_classes(aut: &NodAutomaton<'_>) -> Vec<QcClass> {
    let mut classes: Vec<QcClass> =
        literal_quasicycles(aut).into_iter().map(|p| p.canonical().rotations()).collect();
    classes.sort();
    classes.dedup();
    classes
}

/// GK dimension from the literal relations: infinite if some quasi-cycle is
/// selfconnected, else the longest chain over classes found by exhaustive search.
pub fn literal_gk_dimension(aut: &NodAutomaton<'_>) -> GkDimension {
    let classes = literal_quasicycle_classes(aut);
    if classes.iter().any(|c| literal_selfconnected(aut, c.canonical.letters())) {
        return GkDimension::Infinite;
    }
    let reps: Vec<&[Letter]> = classes.iter().map(|c| c.canonical.letters()).collect();
    let k = reps.len();
    let rel: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| a != b && literal_implies(aut, reps[a], reps[b])).collect())
        .collect();
    fn longest(a: usize, rel: &[Vec<bool>], used: &mut BTreeSet<usize>) -> usize {
        used.insert(a);
        let best = (0..rel.len())
            .filter(|&b| rel[a][b] && !used.contains(&b))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|b| longest(b, rel, used))
            .max()
            .unwrap_or(0);
        used.remove(&a);
        best + 1
    }
    let d = (0..k).map(|a| longest(a, &rel, &mut BTreeSet::new())).max().unwrap_or(0);
    GkDimension::Finite(d)
}
