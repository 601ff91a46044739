//! Non-deterministic updates as functions on configuration sets.
//!
//! Every update here is determined by its image on singletons and lifted to
//! arbitrary sets by union, so the decomposition
//! `apply(X) = ∪_{x∈X} successors(x)` holds by construction. The induced
//! transition relation pairs every configuration with the members of its
//! singleton image.

use crate::config::{AutomataSet, Config, ConfigSet, MAX_SET_DIM};
use crate::network::BooleanNetwork;
use crate::schedule::Schedule;

/// A set update: a map on configuration sets determined by its values on
/// singletons.
///
/// Implementors provide [`successors`](SetUpdate::successors) only and must
/// leave [`apply`](SetUpdate::apply) with its union-lifting default, which
/// keeps the singleton decomposition structural.
pub trait SetUpdate {
    fn dim(&self) -> usize;

    /// Image of the singleton `{x}`.
    fn successors(&self, x: Config) -> ConfigSet;

    /// Image of an arbitrary set: the union of the singleton images.
    fn apply(&self, xs: &ConfigSet) -> ConfigSet {
        assert_eq!(xs.dim(), self.dim(), "dimension mismatch");
        let mut out = ConfigSet::empty(self.dim());
        for x in xs.iter() {
            out.union_with(&self.successors(x));
        }
        out
    }
}

impl<T: SetUpdate + ?Sized> SetUpdate for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        (**self).successors(x)
    }

    fn apply(&self, xs: &ConfigSet) -> ConfigSet {
        (**self).apply(xs)
    }
}

impl<T: SetUpdate + ?Sized> SetUpdate for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        (**self).successors(x)
    }

    fn apply(&self, xs: &ConfigSet) -> ConfigSet {
        (**self).apply(xs)
    }
}

/// The asynchronous mode's update: every elementary update on a non-empty
/// set of automata.
pub struct Elementary<'a> {
    net: &'a BooleanNetwork,
}

impl<'a> Elementary<'a> {
    pub fn new(net: &'a BooleanNetwork) -> Self {
        Elementary { net }
    }
}

impl SetUpdate for Elementary<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        // φ_W(x) depends on W only through W ∩ unstable(x), so it suffices
        // to range over subsets of the unstable automata. The empty subset
        // is reachable by some non-empty W exactly when an automaton outside
        // unstable(x) exists.
        let unstable = self.net.unstable(x);
        let mut out = ConfigSet::empty(self.dim());
        let full = AutomataSet::full(self.dim());
        for v in unstable.subsets() {
            if v.is_empty() && unstable == full {
                continue;
            }
            out.insert(self.net.update(v, x));
        }
        out
    }
}

/// The fully-asynchronous mode's update: one automaton at a time.
pub struct FullyAsync<'a> {
    net: &'a BooleanNetwork,
}

impl<'a> FullyAsync<'a> {
    pub fn new(net: &'a BooleanNetwork) -> Self {
        FullyAsync { net }
    }
}

impl SetUpdate for FullyAsync<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        let mut out = ConfigSet::empty(self.dim());
        for i in 1..=self.dim() {
            out.insert(x.with(i, self.net.local(i, x)));
        }
        out
    }
}

/// A deterministic schedule viewed as a set update with singleton images.
pub struct Deterministic<'a> {
    net: &'a BooleanNetwork,
    schedule: Schedule,
}

impl<'a> Deterministic<'a> {
    pub fn new(net: &'a BooleanNetwork, schedule: Schedule) -> Self {
        Deterministic { net, schedule }
    }
}

impl SetUpdate for Deterministic<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        ConfigSet::singleton(self.schedule.step(self.net, x))
    }
}

/// Pointwise union of two set updates; its transition relation is the union
/// of theirs. Build with [`superpose`].
pub struct Superpose<A, B> {
    left: A,
    right: B,
}

pub fn superpose<A: SetUpdate, B: SetUpdate>(left: A, right: B) -> Superpose<A, B> {
    assert_eq!(left.dim(), right.dim(), "dimension mismatch");
    Superpose { left, right }
}

impl<A: SetUpdate, B: SetUpdate> SetUpdate for Superpose<A, B> {
    fn dim(&self) -> usize {
        self.left.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        self.left.successors(x).union(&self.right.successors(x))
    }
}

/// Applies `f` to `xs` exactly `k` times; `k = 0` returns `xs` unchanged.
pub fn iterate_k(
    mut f: impl FnMut(&ConfigSet) -> ConfigSet,
    xs: &ConfigSet,
    k: usize,
) -> ConfigSet {
    let mut cur = xs.clone();
    for _ in 0..k {
        cur = f(&cur);
    }
    cur
}

/// Iterates an inflationary operator until it reaches a fixed point — the
/// least fixed point above `xs`. Panics if some step is not inflationary,
/// which signals a caller bug; all users here (interval expansion, widening
/// to fixpoint) grow their argument by construction.
pub fn iterate_omega(mut f: impl FnMut(&ConfigSet) -> ConfigSet, xs: &ConfigSet) -> ConfigSet {
    let mut cur = xs.clone();
    loop {
        let next = f(&cur);
        assert!(
            cur.is_subset(&next),
            "iterate_omega requires an inflationary operator"
        );
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// The transition relation generated by a set update: every pair `(x, y)`
/// with `y` in the image of `{x}`, as codes in ascending order.
pub fn transitions(u: &(impl SetUpdate + ?Sized)) -> Vec<(u64, u64)> {
    let n = u.dim();
    assert!(n <= MAX_SET_DIM, "dimension {n} too large to enumerate");
    let mut edges = Vec::new();
    for code in 0..1u64 << n {
        let x = Config::new(n, code);
        for y in u.successors(x).codes() {
            edges.push((code, y));
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = "x1: !x3\nx2: !x1 & x3\nx3: !x1\n";

    fn net() -> BooleanNetwork {
        BooleanNetwork::parse(REFERENCE).unwrap()
    }

    fn cfg(s: &str) -> Config {
        Config::from_text(s, s.len()).unwrap()
    }

    fn set(texts: &[&str]) -> ConfigSet {
        let n = texts[0].len();
        let mut out = ConfigSet::empty(n);
        for t in texts {
            out.insert(Config::from_text(t, n).unwrap());
        }
        out
    }

    #[test]
    fn elementary_images_match_reference_rows() {
        let net = net();
        let e = Elementary::new(&net);
        assert_eq!(e.successors(cfg("000")), set(&["000", "100", "001", "101"]));
        assert_eq!(e.successors(cfg("011")), set(&["011"]));
        assert_eq!(
            e.successors(cfg("111")),
            set(&["011", "101", "110", "001", "010", "100", "000"])
        );
    }

    #[test]
    fn fully_async_images_match_reference_rows() {
        let net = net();
        let fa = FullyAsync::new(&net);
        assert_eq!(fa.successors(cfg("000")), set(&["100", "000", "001"]));
        assert_eq!(fa.successors(cfg("010")), set(&["110", "000", "011"]));
        assert_eq!(fa.successors(cfg("100")), set(&["100"]));
    }

    // Direct enumeration of every (x, W) pair with W non-empty; independent
    // of the subset pruning in Elementary::successors.
    fn elementary_edges_by_enumeration(net: &BooleanNetwork) -> Vec<(u64, u64)> {
        let n = net.dim();
        let mut edges = std::collections::BTreeSet::new();
        for code in 0..1u64 << n {
            let x = Config::new(n, code);
            for w in AutomataSet::full(n).subsets() {
                if w.is_empty() {
                    continue;
                }
                edges.insert((code, net.update(w, x).code()));
            }
        }
        edges.into_iter().collect()
    }

    #[test]
    fn elementary_relation_agrees_with_pair_enumeration() {
        let nets = [
            BooleanNetwork::parse(REFERENCE).unwrap(),
            BooleanNetwork::parse("a: 1\nb: a\nc: !a & b").unwrap(),
            BooleanNetwork::parse("p: !q & !p\nq: p | q\nr: p & !r\ns: r | q").unwrap(),
        ];
        for net in &nets {
            assert_eq!(
                transitions(&Elementary::new(net)),
                elementary_edges_by_enumeration(net)
            );
        }
    }

    #[test]
    fn fully_async_is_contained_in_elementary() {
        let net = net();
        let e = Elementary::new(&net);
        let fa = FullyAsync::new(&net);
        for code in 0..8 {
            let x = Config::new(3, code);
            assert!(fa.successors(x).is_subset(&e.successors(x)));
        }
    }

    #[test]
    fn iteration_counts() {
        let net = net();
        let fa = FullyAsync::new(&net);
        let start = set(&["000"]);
        assert_eq!(iterate_k(|s| fa.apply(s), &start, 0), start);
        assert_eq!(
            iterate_k(|s| fa.apply(s), &start, 2),
            set(&["100", "000", "001", "011"])
        );
    }

    #[test]
    fn omega_iteration_returns_least_fixed_point() {
        let net = net();
        let e = Elementary::new(&net);
        // Reflexive closure of the elementary update is inflationary.
        let closure = |s: &ConfigSet| e.apply(s).union(s);
        let reached = iterate_omega(closure, &set(&["000"]));
        assert_eq!(reached, set(&["000", "100", "001", "101", "011"]));
        let again = e.apply(&reached).union(&reached);
        assert_eq!(again, reached);
        // A set already closed is returned unchanged.
        assert_eq!(iterate_omega(closure, &reached), reached);
    }

    #[test]
    #[should_panic(expected = "inflationary")]
    fn omega_iteration_rejects_non_inflationary_operators() {
        let net = BooleanNetwork::parse("a: !a").unwrap();
        let e = Elementary::new(&net);
        iterate_omega(|s| e.apply(s), &set(&["0"]));
    }

    #[test]
    fn superposition_unions_pointwise() {
        let net = net();
        let both = superpose(FullyAsync::new(&net), FullyAsync::new(&net));
        let fa = FullyAsync::new(&net);
        for code in 0..8 {
            let x = Config::new(3, code);
            assert_eq!(both.successors(x), fa.successors(x));
        }
        // Φ_fa is pointwise contained in Φ_e, so superposing them is Φ_e.
        let e = superpose(FullyAsync::new(&net), Elementary::new(&net));
        assert_eq!(transitions(&e), transitions(&Elementary::new(&net)));
    }

    #[test]
    fn singleton_decomposition_holds_for_lifted_updates() {
        let net = net();
        let e = Elementary::new(&net);
        // Every subset of the 8 configurations.
        for bits in 0u16..256 {
            let xs = ConfigSet::from_codes(3, (0..8).filter(|&c| bits >> c & 1 == 1));
            let mut union = ConfigSet::empty(3);
            for x in xs.iter() {
                union.union_with(&e.successors(x));
            }
            assert_eq!(e.apply(&xs), union);
        }
    }
}
