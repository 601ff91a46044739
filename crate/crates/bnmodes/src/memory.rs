//! The memory updating mode.
//!
//! A memory vector gives each automaton a maximal decay delay; an automaton
//! reads as active while its delay is non-zero. The mode exists in two
//! equivalent forms: the deterministic dynamics over delay vectors projected
//! back to Boolean configurations ([`MemoryDelays`]), and a direct selection
//! of elementary transitions parameterized by the automata with delay
//! maxima of at least 2 ([`Memory`]). The two are checked against each other
//! in the test suites.

use std::fmt;

use crate::config::{AutomataSet, Config, ConfigSet};
use crate::network::BooleanNetwork;
use crate::set_update::SetUpdate;

/// Per-automaton maximal decay delays, all at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryVector(Vec<u32>);

impl MemoryVector {
    pub fn new(maxima: Vec<u32>) -> Self {
        assert!(!maxima.is_empty(), "memory vector must not be empty");
        assert!(
            maxima.iter().all(|&m| m >= 1),
            "memory maxima must be at least 1"
        );
        MemoryVector(maxima)
    }

    /// Canonical vector for a parameter set: maximum 2 on the selected
    /// automata, 1 elsewhere.
    pub fn from_selected(selected: AutomataSet, n: usize) -> Self {
        assert!(selected.within(n));
        MemoryVector((1..=n).map(|i| if selected.contains(i) { 2 } else { 1 }).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Maximum delay of automaton `i` (1-based).
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// The automata whose maximum leaves room for a decay choice.
    pub fn selected(&self) -> AutomataSet {
        (1..=self.dim()).filter(|&i| self.get(i) >= 2).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

/// A delay vector; entry `i` counts the steps automaton `i` still reads as
/// active.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MemoryConfig(Vec<u32>);

impl MemoryConfig {
    pub fn new(delays: Vec<u32>) -> Self {
        assert!(!delays.is_empty());
        MemoryConfig(delays)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// Is every delay within the maxima of `m`?
    pub fn valid_for(&self, m: &MemoryVector) -> bool {
        self.dim() == m.dim() && (1..=self.dim()).all(|i| self.get(i) <= m.get(i))
    }

    /// Boolean projection: automaton `i` reads active iff its delay is
    /// non-zero.
    pub fn to_binary(&self) -> Config {
        let n = self.dim();
        let mut code = 0u64;
        for i in 1..=n {
            code = code << 1 | (self.get(i) >= 1) as u64;
        }
        Config::new(n, code)
    }
}

impl fmt::Debug for MemoryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// All delay vectors projecting to `x`: zero where `x` is 0, anything in
/// `1..=M_i` where `x` is 1. The result has `Π_{x_i=1} M_i` members;
/// enumeration is capped at `2^20`.
pub fn compatible_delays(x: Config, m: &MemoryVector) -> Vec<MemoryConfig> {
    assert_eq!(x.dim(), m.dim(), "dimension mismatch");
    let n = x.dim();
    let count: u64 = (1..=n)
        .filter(|&i| x.get(i))
        .map(|i| m.get(i) as u64)
        .product();
    assert!(count <= 1 << 20, "delay expansion too large ({count} vectors)");

    let mut out = Vec::with_capacity(count as usize);
    let mut current: Vec<u32> = (1..=n).map(|i| x.get(i) as u32).collect();
    loop {
        out.push(MemoryConfig(current.clone()));
        // Odometer over the active positions.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            if x.get(i) && current[i - 1] < m.get(i) {
                current[i - 1] += 1;
                break;
            }
            if x.get(i) {
                current[i - 1] = 1;
            }
            i -= 1;
        }
    }
}

/// The deterministic update on delay vectors: an automaton rearms to its
/// maximum when its local function reads 1 on the Boolean projection, and
/// otherwise decays by one step, stopping at zero.
pub fn delay_step(net: &BooleanNetwork, m: &MemoryVector, d: &MemoryConfig) -> MemoryConfig {
    assert!(d.valid_for(m), "delay vector outside the memory maxima");
    assert_eq!(net.dim(), m.dim(), "dimension mismatch");
    let x = d.to_binary();
    MemoryConfig(
        (1..=net.dim())
            .map(|i| {
                if net.local(i, x) {
                    m.get(i)
                } else {
                    d.get(i).saturating_sub(1)
                }
            })
            .collect(),
    )
}

/// One step of the coupled dynamics: the next delay vector together with
/// its Boolean projection.
pub fn coupled_step(
    net: &BooleanNetwork,
    m: &MemoryVector,
    d: &MemoryConfig,
) -> (Config, MemoryConfig) {
    let next = delay_step(net, m, d);
    (next.to_binary(), next)
}

/// Memory mode computed through the delay dynamics: expand a configuration
/// to its compatible delay vectors, step each deterministically, project
/// back.
pub struct MemoryDelays<'a> {
    net: &'a BooleanNetwork,
    maxima: MemoryVector,
}

impl<'a> MemoryDelays<'a> {
    pub fn new(net: &'a BooleanNetwork, maxima: MemoryVector) -> Self {
        assert_eq!(net.dim(), maxima.dim(), "dimension mismatch");
        MemoryDelays { net, maxima }
    }
}

impl SetUpdate for MemoryDelays<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        let mut out = ConfigSet::empty(self.dim());
        for d in compatible_delays(x, &self.maxima) {
            out.insert(delay_step(self.net, &self.maxima, &d).to_binary());
        }
        out
    }
}

/// Memory mode as a selection of elementary transitions: automata outside
/// the parameter set, and automata whose local function reads 1, are always
/// updated; any subset of the remaining (decaying) automata may join.
pub struct Memory<'a> {
    net: &'a BooleanNetwork,
    selected: AutomataSet,
}

impl<'a> Memory<'a> {
    pub fn new(net: &'a BooleanNetwork, selected: AutomataSet) -> Self {
        assert!(selected.within(net.dim()), "parameter set out of range");
        Memory { net, selected }
    }
}

impl SetUpdate for Memory<'_> {
    fn dim(&self) -> usize {
        self.net.dim()
    }

    fn successors(&self, x: Config) -> ConfigSet {
        let n = self.dim();
        let mandatory: AutomataSet = (1..=n)
            .filter(|&i| !self.selected.contains(i) || self.net.local(i, x))
            .collect();
        // Only selected automata currently active with local value 0 make a
        // difference beyond the mandatory block.
        let branching: AutomataSet = self
            .selected
            .iter()
            .filter(|&i| x.get(i) && !self.net.local(i, x))
            .collect();
        let base = self.net.update(mandatory, x);
        let mut out = ConfigSet::empty(n);
        for extra in branching.subsets() {
            let mut y = base;
            for i in extra.iter() {
                y = y.with(i, false);
            }
            out.insert(y);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_update::{transitions, Elementary};

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

    fn d(values: &[u32]) -> MemoryConfig {
        MemoryConfig::new(values.to_vec())
    }

    #[test]
    fn binary_projection_truncates_at_one() {
        assert_eq!(d(&[2, 0, 1]).to_binary(), cfg("101"));
        assert_eq!(d(&[0, 0, 0]).to_binary(), cfg("000"));
        assert_eq!(d(&[1, 1, 1]).to_binary(), cfg("111"));
    }

    #[test]
    fn delay_expansion_enumerates_compatible_vectors() {
        let m = MemoryVector::new(vec![2, 1, 1]);
        let exp = compatible_delays(cfg("101"), &m);
        assert_eq!(exp, vec![d(&[1, 0, 1]), d(&[2, 0, 1])]);
        assert_eq!(compatible_delays(cfg("000"), &m), vec![d(&[0, 0, 0])]);
        // Every expansion projects back to its source.
        for code in 0..8 {
            let x = Config::new(3, code);
            for delays in compatible_delays(x, &m) {
                assert_eq!(delays.to_binary(), x);
            }
        }
        // Cardinality is the product of the maxima over active automata.
        let m = MemoryVector::new(vec![3, 2, 3]);
        assert_eq!(compatible_delays(cfg("111"), &m).len(), 18);
        assert_eq!(compatible_delays(cfg("101"), &m).len(), 9);
    }

    #[test]
    fn delay_step_matches_worked_values() {
        let net = net();
        let m = MemoryVector::new(vec![2, 1, 1]);
        assert_eq!(delay_step(&net, &m, &d(&[2, 0, 1])), d(&[1, 0, 0]));
        assert_eq!(delay_step(&net, &m, &d(&[1, 0, 1])), d(&[0, 0, 0]));
        assert_eq!(delay_step(&net, &m, &d(&[0, 0, 0])), d(&[2, 0, 1]));
    }

    #[test]
    fn coupled_step_projects_the_delay_step() {
        let net = net();
        let m = MemoryVector::new(vec![2, 1, 1]);
        assert_eq!(
            coupled_step(&net, &m, &d(&[2, 0, 1])),
            (cfg("100"), d(&[1, 0, 0]))
        );
        assert_eq!(
            coupled_step(&net, &m, &d(&[0, 1, 0])),
            (cfg("101"), d(&[2, 0, 1]))
        );
        // At a fixed point of the global map with extreme delays, nothing
        // moves: rearmed automata stay at their maxima, inactive ones at 0.
        assert_eq!(
            coupled_step(&net, &m, &d(&[0, 1, 1])),
            (cfg("011"), d(&[0, 1, 1]))
        );
    }

    #[test]
    fn projected_images_match_reference_rows() {
        let net = net();
        let md = MemoryDelays::new(&net, MemoryVector::new(vec![2, 1, 1]));
        assert_eq!(md.successors(cfg("101")), set(&["100", "000"]));
        assert_eq!(md.successors(cfg("000")), set(&["101"]));
        // All maxima 1 degenerates to the parallel update.
        let md = MemoryDelays::new(&net, MemoryVector::new(vec![1, 1, 1]));
        assert_eq!(md.successors(cfg("101")), set(&["000"]));
    }

    #[test]
    fn selection_images_match_reference_rows() {
        let net = net();
        let mb = Memory::new(&net, AutomataSet::from_indices([1]));
        assert_eq!(mb.successors(cfg("101")), set(&["100", "000"]));
        assert_eq!(mb.successors(cfg("000")), set(&["101"]));
        // Empty parameter set means every automaton is mandatory.
        let none = Memory::new(&net, AutomataSet::empty());
        for code in 0..8 {
            let x = Config::new(3, code);
            assert_eq!(none.successors(x), ConfigSet::singleton(net.apply(x)));
        }
    }

    #[test]
    fn both_formulations_agree_on_the_reference_network() {
        let net = net();
        for maxima in [[1, 1, 1], [2, 1, 1], [2, 2, 2], [3, 1, 2], [3, 3, 3]] {
            let m = MemoryVector::new(maxima.to_vec());
            let delays = MemoryDelays::new(&net, m.clone());
            let selection = Memory::new(&net, m.selected());
            for code in 0..8 {
                let x = Config::new(3, code);
                assert_eq!(
                    delays.successors(x),
                    selection.successors(x),
                    "maxima {maxima:?} at {x}"
                );
            }
        }
    }

    #[test]
    fn memory_transitions_are_elementary_apart_from_decay_loops() {
        // Every proper memory transition is elementary. Self-loops appear
        // exactly when updating the mandatory automata changes nothing; such
        // a loop escapes the elementary relation only in the corner where
        // every automaton is selected, active and reading 0 (the delay
        // semantics keep the configuration while the delays tick down).
        let net = net();
        let e = Elementary::new(&net);
        for mask in 0..8u64 {
            let mb: AutomataSet = (1..=3).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            let memory = Memory::new(&net, mb);
            for code in 0..8 {
                let x = Config::new(3, code);
                let succ = memory.successors(x);
                if net.apply(x) == x {
                    assert_eq!(succ, ConfigSet::singleton(x));
                }
                let elementary = e.successors(x);
                for y in succ.iter() {
                    if y != x {
                        assert!(elementary.contains(y), "{x} -> {y} under {mb}");
                    }
                }
                let mandatory: AutomataSet = (1..=3)
                    .filter(|&i| !mb.contains(i) || net.local(i, x))
                    .collect();
                assert_eq!(succ.contains(x), net.update(mandatory, x) == x);
            }
        }
        let memory_edges = transitions(&Memory::new(&net, AutomataSet::from_indices([1])));
        let e_edges = transitions(&e);
        assert!(memory_edges.iter().all(|edge| e_edges.contains(edge)));
    }

    #[test]
    fn branching_census_matches_the_decay_predicate() {
        let net = net();
        for mask in 0..8u64 {
            let mb: AutomataSet = (1..=3).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            let memory = Memory::new(&net, mb);
            for code in 0..8 {
                let x = Config::new(3, code);
                let choices = mb
                    .iter()
                    .filter(|&i| x.get(i) && !net.local(i, x))
                    .count();
                assert_eq!(memory.successors(x).len(), 1 << choices);
            }
        }
    }
}
