//! Quasi-cycles, their rotation classes, and the connection relations between them.
//!
//! A quasi-cycle is a closed nod-path `p` whose square is a nod-path and such
//! that no subword of `p^2` shorter than `p` is itself such a word. Viewed in
//! the letter digraph of a [`NodAutomaton`], these are exactly the induced
//! (chordless) simple cycles: a shorter closed subword of `p^2` corresponds to
//! an allowed pair `x_j x_i` that skips ahead. Enumeration searches induced
//! paths directly; [`is_quasicycle`] keeps the literal subword test.

use std::collections::VecDeque;

use crate::graph::Letter;
use crate::nod::NodAutomaton;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuasiCycle {
    word: Vec<Letter>,
}

impl QuasiCycle {
    /// Wraps `word` after checking it against the literal definition.
    pub fn new(aut: &NodAutomaton<'_>, word: Vec<Letter>) -> Option<Self> {
        is_quasicycle(aut, &word).then_some(QuasiCycle { word })
    }

    pub(crate) fn from_cycle(word: Vec<Letter>) -> Self {
        debug_assert!(!word.is_empty());
        QuasiCycle { word }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn first(&self) -> Letter {
        self.word[0]
    }

    pub fn last(&self) -> Letter {
        self.word[self.word.len() - 1]
    }

    /// `x_{k+1} ... x_n x_1 ... x_k`.
    pub fn rotate(&self, k: usize) -> QuasiCycle {
        let mut word = self.word.clone();
        word.rotate_left(k % self.word.len());
        QuasiCycle { word }
    }

    pub fn rotations(&self) -> QcClass {
        let members: Vec<_> = (0..self.len()).map(|k| self.rotate(k)).collect();
        let canonical = members.iter().min().expect("nonempty").clone();
        QcClass { canonical, members }
    }

    /// The lexicographically least rotation.
    pub fn canonical(&self) -> QuasiCycle {
        self.rotations().canonical
    }

    /// `x_n* ... x_1*`.
    pub fn star(&self) -> QuasiCycle {
        QuasiCycle { word: self.word.iter().rev().map(|l| l.star()).collect() }
    }

    pub fn same_class(&self, other: &QuasiCycle) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

/// A rotation class `[p]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QcClass {
    pub canonical: QuasiCycle,
    /// All rotations, in rotation order starting from the original word.
    pub members: Vec<QuasiCycle>,
}

/// Nonempty nod-path `p` with `p^2` a nod-path.
pub fn is_nod2(aut: &NodAutomaton<'_>, word: &[Letter]) -> bool {
    !word.is_empty() && aut.is_nod_letters(word) && aut.allowed(word[word.len() - 1], word[0])
}

/// Literal check: `p` is nod² and no subword of `p^2` of length `< |p|` is nod².
pub fn is_quasicycle(aut: &NodAutomaton<'_>, word: &[Letter]) -> bool {
    if !is_nod2(aut, word) {
        return false;
    }
    let n = word.len();
    let square: Vec<Letter> = word.iter().chain(word.iter()).copied().collect();
    for start in 0..n {
        for len in 1..n {
            if is_nod2(aut, &square[start..start + len]) {
                return false;
            }
        }
    }
    true
}

/// Every quasi-cycle word (all rotations), in lexicographic order.
pub fn enumerate_quasicycles(aut: &NodAutomaton<'_>) -> Vec<QuasiCycle> {
    let mut out: Vec<QuasiCycle> = quasicycle_classes(aut)
        .into_iter()
        .flat_map(|c| c.members)
        .collect();
    out.sort();
    out
}

/// One class per quasi-cycle, sorted by canonical representative.
pub fn quasicycle_classes(aut: &NodAutomaton<'_>) -> Vec<QcClass> {
    let mut classes = Vec::new();
    induced_cycles(aut, &mut |cycle| {
        // The search starts every cycle at its least letter, which is the
        // canonical rotation since letters are pairwise distinct.
        let word: Vec<Letter> = cycle.iter().map(|&i| aut.letter(i)).collect();
        classes.push(QuasiCycle::from_cycle(word).rotations());
        true
    });
    classes.sort();
    classes
}

/// Some quasi-cycle, if any exists: a shortest cycle of the letter digraph
/// has no chord.
pub fn find_quasicycle(aut: &NodAutomaton<'_>) -> Option<QuasiCycle> {
    let n = aut.letter_count();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        if aut.allowed_at(s, s) {
            return Some(QuasiCycle::from_cycle(vec![aut.letter(s)]));
        }
        // BFS from s back to s.
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &j in aut.successors_at(s) {
            if parent[j] == usize::MAX {
                parent[j] = s;
                queue.push_back(j);
            }
        }
        let mut closing = None;
        while let Some(x) = queue.pop_front() {
            if aut.allowed_at(x, s) {
                closing = Some(x);
                break;
            }
            for &y in aut.successors_at(x) {
                if parent[y] == usize::MAX && y != s {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if let Some(mut x) = closing {
            let mut cyc = vec![x];
            while parent[x] != s {
                x = parent[x];
                cyc.push(x);
            }
            cyc.push(s);
            cyc.reverse();
            if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                best = Some(cyc);
            }
        }
    }
    best.map(|c| QuasiCycle::from_cycle(c.into_iter().map(|i| aut.letter(i)).collect()))
}

/// Calls `visit` with every induced cycle of the letter digraph, each once,
/// starting at its least letter. Stops early when `visit` returns false.
fn induced_cycles(aut: &NodAutomaton<'_>, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn extend(
        aut: &NodAutomaton<'_>,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let s = path[0];
        let last = *path.last().expect("nonempty");
        for &y in aut.successors_at(last) {
            if y <= s || on_path[y] || aut.allowed_at(y, y) {
                continue;
            }
            let k = path.len();
            // No chord from an earlier path letter into y ...
            if path[..k - 1].iter().any(|&x| aut.allowed_at(x, y)) {
                continue;
            }
            // ... and none from y back into the interior of the path.
            if path[1..].iter().any(|&x| aut.allowed_at(y, x)) {
                continue;
            }
            path.push(y);
            if aut.allowed_at(y, s) {
                if !visit(path) {
                    return false;
                }
            } else {
                on_path[y] = true;
                let go_on = extend(aut, path, on_path, visit);
                on_path[y] = false;
                if !go_on {
                    return false;
                }
            }
            path.pop();
        }
        true
    }

    let n = aut.letter_count();
    let mut on_path = vec![false; n];
    for s in 0..n {
        if aut.allowed_at(s, s) {
            if !visit(&[s]) {
                return;
            }
            continue;
        }
        let mut path = vec![s];
        on_path[s] = true;
        let go_on = extend(aut, &mut path, &mut on_path, visit);
        on_path[s] = false;
        if !go_on {
            return;
        }
    }
}

/// How `p => q` is realised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connection {
    /// `pq` is a nod-path.
    Direct,
    /// `poq` is a nod-path with `o` nonempty and not prefixed by `p`.
    Via(Vec<Letter>),
}

/// Decides `p => q` and returns a realisation.
///
/// Any connector that begins with `p` can have that copy of `p` removed and
/// still connects, so it suffices to find any walk in the letter digraph from
/// `last(p)` to `first(q)`. The returned connector is a shortest one; it never
/// starts with `p` because a shortest walk has no repeated letters.
pub fn connection(aut: &NodAutomaton<'_>, p: &QuasiCycle, q: &QuasiCycle) -> Option<Connection> {
    let from = aut.position(p.last());
    let to = aut.position(q.first());
    if aut.allowed_at(from, to) {
        return Some(Connection::Direct);
    }
    const ROOT: usize = usize::MAX - 1;
    let n = aut.letter_count();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &a in aut.successors_at(from) {
        parent[a] = ROOT;
        queue.push_back(a);
    }
    while let Some(x) = queue.pop_front() {
        if aut.allowed_at(x, to) {
            let mut o = vec![x];
            let mut cur = x;
            while parent[cur] != ROOT {
                cur = parent[cur];
                o.push(cur);
            }
            o.reverse();
            return Some(Connection::Via(o.into_iter().map(|i| aut.letter(i)).collect()));
        }
        for &y in aut.successors_at(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// `p => q`: `pq` is a nod-path, or some connector `o` with `p ∤ o` makes `poq` one.
pub fn implies(aut: &NodAutomaton<'_>, p: &QuasiCycle, q: &QuasiCycle) -> bool {
    connection(aut, p, q).is_some()
}

/// A nonempty `o`, not prefixed by `p`, such that `pop` is a nod-path.
///
/// Breadth-first search over pairs (letter, progress) where progress records
/// how many leading letters of `p` the connector has matched so far, or that
/// it has already diverged from `p`. A connector that completes a full copy of
/// `p` is never needed: stripping that copy leaves a shorter connector.
pub fn self_connector(aut: &NodAutomaton<'_>, p: &QuasiCycle) -> Option<Vec<Letter>> {
    const DIVERGED: usize = 0;
    let n = p.len();
    let word: Vec<usize> = p.letters().iter().map(|&l| aut.position(l)).collect();
    let first = word[0];
    let stride = n + 1;
    let states = aut.letter_count() * stride;
    let mut parent = vec![usize::MAX; states];
    let root = usize::MAX - 1;
    let mut queue = VecDeque::new();

    let step = |matched: usize, y: usize| -> Option<usize> {
        if matched != DIVERGED && y == word[matched] {
            // Completing a whole copy of p leads back to the start states.
            (matched + 1 < n).then_some(matched + 1)
        } else {
            Some(DIVERGED)
        }
    };

    for &y in aut.successors_at(word[n - 1]) {
        // Initially the connector has matched nothing; the first letter
        // either starts a copy of p or diverges.
        let m = if y == first { (n > 1).then_some(1) } else { Some(DIVERGED) };
        if let Some(m) = m {
            let s = y * stride + m;
            if parent[s] == usize::MAX {
                parent[s] = root;
                queue.push_back(s);
            }
        }
    }
    while let Some(s) = queue.pop_front() {
        let (x, m) = (s / stride, s % stride);
        if aut.allowed_at(x, first) {
            let mut o = vec![x];
            let mut cur = s;
            while parent[cur] != root {
                cur = parent[cur];
                o.push(cur / stride);
            }
            o.reverse();
            return Some(o.into_iter().map(|i| aut.letter(i)).collect());
        }
        for &y in aut.successors_at(x) {
            if let Some(m2) = step(m, y) {
                let t = y * stride + m2;
                if parent[t] == usize::MAX {
                    parent[t] = s;
                    queue.push_back(t);
                }
            }
        }
    }
    None
}

pub fn is_selfconnected(aut: &NodAutomaton<'_>, p: &QuasiCycle) -> bool {
    self_connector(aut, p).is_some()
}
