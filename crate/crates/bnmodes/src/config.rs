//! Configurations, dense configuration sets and automata index sets.
//!
//! A configuration assigns a Boolean state to each automaton `1..=n`. Its
//! canonical integer code reads the textual form as a binary numeral, with
//! automaton 1 as the leftmost (most significant) bit: `"011"` has code 3,
//! `"100"` has code 4.

use std::fmt;
use thiserror::Error;

/// Largest dimension for which dense whole-space sets are allocated.
/// `ConfigSet` stores one bit per code, so this is a memory fuse, not a
/// semantic limit; analysis entry points apply their own (lower) caps.
pub const MAX_SET_DIM: usize = 28;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("expected {expected} characters, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("illegal character {ch:?} at position {pos} (expected '0' or '1')")]
    IllegalChar { ch: char, pos: usize },
}

/// A Boolean state vector for `n` automata.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    code: u64,
    n: u16,
}

impl Config {
    pub fn new(n: usize, code: u64) -> Self {
        assert!((1..=64).contains(&n), "dimension {n} out of range 1..=64");
        assert!(
            n == 64 || code < (1u64 << n),
            "code {code} out of range for dimension {n}"
        );
        Config { code, n: n as u16 }
    }

    /// Parses a configuration from its textual form, e.g. `"011"`.
    pub fn from_text(s: &str, n: usize) -> Result<Self, ConfigError> {
        if s.len() != n {
            return Err(ConfigError::WrongLength {
                expected: n,
                got: s.len(),
            });
        }
        let mut code = 0u64;
        for (pos, ch) in s.chars().enumerate() {
            code <<= 1;
            match ch {
                '0' => {}
                '1' => code |= 1,
                _ => return Err(ConfigError::IllegalChar { ch, pos }),
            }
        }
        Ok(Config::new(n, code))
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// State of automaton `i` (1-based).
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.dim(), "automaton {i} out of range");
        (self.code >> (self.dim() - i)) & 1 == 1
    }

    /// Copy with automaton `i` set to `v`.
    pub fn with(&self, i: usize, v: bool) -> Self {
        assert!(i >= 1 && i <= self.dim(), "automaton {i} out of range");
        let bit = 1u64 << (self.dim() - i);
        let code = if v { self.code | bit } else { self.code & !bit };
        Config { code, n: self.n }
    }

    /// Copy with the state of automaton `i` negated.
    pub fn flip(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.dim(), "automaton {i} out of range");
        Config {
            code: self.code ^ (1u64 << (self.dim() - i)),
            n: self.n,
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A set of configurations of a fixed dimension, stored as one bit per code.
#[derive(Clone, PartialEq, Eq)]
pub struct ConfigSet {
    n: u16,
    words: Vec<u64>,
}

impl ConfigSet {
    pub fn empty(n: usize) -> Self {
        assert!(
            (1..=MAX_SET_DIM).contains(&n),
            "dimension {n} too large for a dense configuration set"
        );
        let words = if n <= 6 { 1 } else { 1usize << (n - 6) };
        ConfigSet {
            n: n as u16,
            words: vec![0; words],
        }
    }

    pub fn universe(n: usize) -> Self {
        let mut set = ConfigSet::empty(n);
        if n <= 6 {
            set.words[0] = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        } else {
            set.words.fill(u64::MAX);
        }
        set
    }

    pub fn singleton(x: Config) -> Self {
        let mut set = ConfigSet::empty(x.dim());
        set.insert(x);
        set
    }

    pub fn from_codes(n: usize, codes: impl IntoIterator<Item = u64>) -> Self {
        let mut set = ConfigSet::empty(n);
        for code in codes {
            set.insert_code(code);
        }
        set
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, x: Config) -> bool {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        self.contains_code(x.code())
    }

    pub fn contains_code(&self, code: u64) -> bool {
        debug_assert!(code < (1u64 << self.n));
        self.words[(code >> 6) as usize] >> (code & 63) & 1 == 1
    }

    /// Returns true if the configuration was not already present.
    pub fn insert(&mut self, x: Config) -> bool {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        self.insert_code(x.code())
    }

    pub fn insert_code(&mut self, code: u64) -> bool {
        debug_assert!(code < (1u64 << self.n));
        let word = &mut self.words[(code >> 6) as usize];
        let mask = 1u64 << (code & 63);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn union(&self, other: &ConfigSet) -> ConfigSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &ConfigSet) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect(&self, other: &ConfigSet) -> ConfigSet {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        ConfigSet { n: self.n, words }
    }

    pub fn minus(&self, other: &ConfigSet) -> ConfigSet {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        ConfigSet { n: self.n, words }
    }

    pub fn is_subset(&self, other: &ConfigSet) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Member configurations in ascending code order.
    pub fn iter(&self) -> impl Iterator<Item = Config> + '_ {
        let n = self.dim();
        self.codes().map(move |code| Config::new(n, code))
    }

    /// Member codes in ascending order.
    pub fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let base = (wi as u64) << 6;
            BitIter { word }.map(move |b| base + b)
        })
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(b)
    }
}

impl fmt::Debug for ConfigSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Extend<Config> for ConfigSet {
    fn extend<T: IntoIterator<Item = Config>>(&mut self, iter: T) {
        for x in iter {
            self.insert(x);
        }
    }
}

/// A set of automaton indices (1-based), e.g. an update block `W`, a memory
/// parameter set, or the held automata of the interval mode.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutomataSet {
    mask: u64,
}

impl AutomataSet {
    pub fn empty() -> Self {
        AutomataSet { mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        assert!((1..=64).contains(&n));
        AutomataSet {
            mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = AutomataSet::empty();
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn insert(&mut self, i: usize) {
        assert!((1..=64).contains(&i), "automaton {i} out of range");
        self.mask |= 1u64 << (i - 1);
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=64).contains(&i) && self.mask >> (i - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// True when every member lies in `1..=n`.
    pub fn within(&self, n: usize) -> bool {
        n >= 64 || self.mask >> n == 0
    }

    pub fn union(&self, other: AutomataSet) -> AutomataSet {
        AutomataSet {
            mask: self.mask | other.mask,
        }
    }

    pub fn intersect(&self, other: AutomataSet) -> AutomataSet {
        AutomataSet {
            mask: self.mask & other.mask,
        }
    }

    pub fn is_subset(&self, other: AutomataSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(&self, other: AutomataSet) -> bool {
        self.mask & other.mask == 0
    }

    pub fn added(&self, i: usize) -> AutomataSet {
        let mut out = *self;
        out.insert(i);
        out
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        BitIter { word: self.mask }.map(|b| b as usize + 1)
    }

    /// All subsets, the empty set first and `self` last.
    pub fn subsets(&self) -> Subsets {
        Subsets {
            mask: self.mask,
            next: Some(0),
        }
    }

    pub(crate) fn mask(&self) -> u64 {
        self.mask
    }
}

/// Iterator over all subsets of an [`AutomataSet`].
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = AutomataSet;

    fn next(&mut self) -> Option<AutomataSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(AutomataSet { mask: cur })
    }
}

impl FromIterator<usize> for AutomataSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        AutomataSet::from_indices(iter)
    }
}

impl fmt::Display for AutomataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for AutomataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
