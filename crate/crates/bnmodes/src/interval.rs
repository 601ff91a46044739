//! The interval updating mode: state changes are decomposed, so an automaton
//! with a pending change is *held* while the others keep updating against
//! its old value.
//!
//! [`interval_expand`] grows a configuration set with the committed changes
//! of non-held automata; [`interval_commit`] holds one more automaton,
//! saturates the expansion under the larger held set, and then applies the
//! registered change everywhere. The interval update itself is a single
//! expansion from an empty held set.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::config::{AutomataSet, Config, ConfigSet};
use crate::network::BooleanNetwork;
use crate::set_update::SetUpdate;

type Memo = HashMap<(u64, usize, u64), ConfigSet>;

/// `Ψ_L`: extends `xs` with every commit of an automaton outside `held`
/// whose local function disagrees with its state. Inflationary by
/// construction.
pub fn interval_expand(net: &BooleanNetwork, held: AutomataSet, xs: &ConfigSet) -> ConfigSet {
    assert!(held.within(net.dim()), "held set out of range");
    let mut memo = Memo::new();
    expand(net, held, xs, &mut memo)
}

/// Holds automaton `i` on top of `held`, saturates the expansion from `x`,
/// and flips component `i` of every reachable configuration. Since `i` stays
/// held throughout, the flip applies its registered change.
///
/// Requires `i ∉ held` and that the local function of `i` disagrees with
/// `x_i`.
pub fn interval_commit(
    net: &BooleanNetwork,
    held: AutomataSet,
    i: usize,
    x: Config,
) -> ConfigSet {
    assert!(!held.contains(i), "automaton {i} is already held");
    assert!(
        net.local(i, x) != x.get(i),
        "automaton {i} has no pending change at {x}"
    );
    let mut memo = Memo::new();
    commit(net, held, i, x, &mut memo)
}

fn expand(net: &BooleanNetwork, held: AutomataSet, xs: &ConfigSet, memo: &mut Memo) -> ConfigSet {
    let mut out = xs.clone();
    for x in xs.iter() {
        for i in 1..=net.dim() {
            if !held.contains(i) && net.local(i, x) != x.get(i) {
                out.union_with(&commit(net, held, i, x, memo));
            }
        }
    }
    out
}

fn commit(
    net: &BooleanNetwork,
    held: AutomataSet,
    i: usize,
    x: Config,
    memo: &mut Memo,
) -> ConfigSet {
    let key = (held.mask(), i, x.code());
    if let Some(cached) = memo.get(&key) {
        return cached.clone();
    }
    let inner = held.added(i);
    // The held set grows strictly, which bounds the recursion depth by n.
    assert!(inner.len() <= net.dim());
    // Saturation of the expansion under the larger held set: the least set
    // containing x closed under the commits of its members. Each member is
    // processed once.
    let mut saturated = ConfigSet::singleton(x);
    let mut queue = vec![x];
    while let Some(y) = queue.pop() {
        for j in 1..=net.dim() {
            if !inner.contains(j) && net.local(j, y) != y.get(j) {
                for z in commit(net, inner, j, y, memo).iter() {
                    if saturated.insert(z) {
                        queue.push(z);
                    }
                }
            }
        }
    }
    let mut out = ConfigSet::empty(net.dim());
    for y in saturated.iter() {
        out.insert(y.flip(i));
    }
    memo.insert(key, out.clone());
    out
}

/// The interval mode as a set update: one expansion with nothing held.
/// Always reflexive.
///
/// Commit results depend only on the held set, the committed automaton and
/// the source configuration, so they are cached write-once across calls;
/// whole-space passes reuse each other's subproblems.
pub struct Interval<'a> {
    net: &'a BooleanNetwork,
    memo: RefCell<Memo>,
}

impl<'a> Interval<'a> {
    pub fn new(net: &'a BooleanNetwork) -> Self {
        Interval {
            net,
            memo: RefCell::new(Memo::new()),
        }
    }
}

impl SetUpdate for Interval<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        let memo = &mut *self.memo.borrow_mut();
        expand(
            self.net,
            AutomataSet::empty(),
            &ConfigSet::singleton(x),
            memo,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_update::{iterate_omega, Elementary};

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

    fn held(indices: &[usize]) -> AutomataSet {
        AutomataSet::from_indices(indices.iter().copied())
    }

    #[test]
    fn expansion_follows_the_worked_iterates() {
        let net = net();
        let first = interval_expand(&net, held(&[1]), &set(&["000"]));
        assert_eq!(first, set(&["000", "001"]));
        let second = interval_expand(&net, held(&[1]), &first);
        assert_eq!(second, set(&["000", "001", "011"]));
        // Saturation is reached after the second pass.
        let limit = iterate_omega(
            |s| interval_expand(&net, held(&[1]), s),
            &set(&["000"]),
        );
        assert_eq!(limit, second);
    }

    #[test]
    fn expansion_with_everything_held_is_identity() {
        let net = net();
        for bits in [0b000u64, 0b011, 0b101] {
            let xs = ConfigSet::from_codes(3, (0..8).filter(|&c| bits >> c & 1 == 1));
            if xs.is_empty() {
                continue;
            }
            assert_eq!(interval_expand(&net, AutomataSet::full(3), &xs), xs);
        }
    }

    #[test]
    fn commit_flips_the_held_automaton_across_the_closure() {
        let net = net();
        assert_eq!(
            interval_commit(&net, AutomataSet::empty(), 1, cfg("000")),
            set(&["100", "101", "111"])
        );
        // The commit of automaton 3 flips its component across the closure
        // computed under {3} held.
        let closure = iterate_omega(
            |s| interval_expand(&net, held(&[3]), s),
            &set(&["000"]),
        );
        let mut expected = ConfigSet::empty(3);
        for y in closure.iter() {
            expected.insert(y.flip(3));
        }
        assert_eq!(
            interval_commit(&net, AutomataSet::empty(), 3, cfg("000")),
            expected
        );
        let whole = Interval::new(&net).successors(cfg("000"));
        assert!(expected.is_subset(&whole));
    }

    #[test]
    fn interval_reaches_beyond_elementary_transitions() {
        let net = net();
        let iv = Interval::new(&net);
        let image = iv.successors(cfg("000"));
        assert!(image.contains(cfg("111")));
        // 111 is not reachable under the reflexive-transitive closure of
        // the elementary update.
        let e = Elementary::new(&net);
        let closure = iterate_omega(|s| e.apply(s).union(s), &set(&["000"]));
        assert!(!closure.contains(cfg("111")));
    }

    #[test]
    fn fixed_points_are_preserved_both_ways() {
        let nets = [
            net(),
            BooleanNetwork::parse("a: 1\nb: a\nc: !a & b").unwrap(),
            BooleanNetwork::parse("p: q\nq: !p & q\nr: p | !r\ns: s & !q").unwrap(),
        ];
        for net in &nets {
            let iv = Interval::new(net);
            for code in 0..1u64 << net.dim() {
                let x = Config::new(net.dim(), code);
                let fixed = net.apply(x) == x;
                let image = iv.successors(x);
                assert_eq!(image == ConfigSet::singleton(x), fixed, "at {x}");
                assert!(image.contains(x), "reflexivity at {x}");
            }
        }
    }

    #[test]
    fn interval_contains_every_elementary_image() {
        let nets = [net(), BooleanNetwork::parse("a: 1\nb: a\nc: !a & b").unwrap()];
        for net in &nets {
            let e = Elementary::new(net);
            let iv = Interval::new(net);
            for code in 0..1u64 << net.dim() {
                let x = Config::new(net.dim(), code);
                assert!(e.successors(x).is_subset(&iv.successors(x)), "at {x}");
            }
        }
    }

    #[test]
    #[should_panic(expected = "no pending change")]
    fn commit_requires_a_pending_change() {
        let net = net();
        interval_commit(&net, AutomataSet::empty(), 2, cfg("000"));
    }
}
