//! Shared fixtures: the two reference networks, golden edge sets, and
//! network generators for the property sweeps.

#![allow(dead_code)]

use rand::Rng;

use bnmodes::{BooleanNetwork, Config, ConfigSet};

pub const SAMPLE: &str = "x1: !x3\nx2: !x1 & x3\nx3: !x1\n";
pub const FFL: &str = "a: 1\nb: a\nc: !a & b\n";

pub fn sample_net() -> BooleanNetwork {
    BooleanNetwork::parse(SAMPLE).unwrap()
}

pub fn ffl_net() -> BooleanNetwork {
    BooleanNetwork::parse(FFL).unwrap()
}

pub fn cfg(s: &str) -> Config {
    Config::from_text(s, s.len()).unwrap()
}

pub fn set(texts: &[&str]) -> ConfigSet {
    let n = texts[0].len();
    let mut out = ConfigSet::empty(n);
    for t in texts {
        out.insert(Config::from_text(t, n).unwrap());
    }
    out
}

pub fn edges(pairs: &[(&str, &str)]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = pairs
        .iter()
        .map(|(s, d)| (cfg(s).code(), cfg(d).code()))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Every network of dimension 2, one per pair of truth tables.
pub fn all_networks_dim2() -> impl Iterator<Item = BooleanNetwork> {
    (0u32..256).map(|bits| {
        let rows: Vec<Vec<bool>> = (0..2)
            .map(|i| (0..4).map(|c| bits >> (i * 4 + c) & 1 == 1).collect())
            .collect();
        BooleanNetwork::from_truth_tables(&rows)
    })
}

pub fn random_network(n: usize, rng: &mut impl Rng) -> BooleanNetwork {
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|_| (0..1usize << n).map(|_| rng.random::<bool>()).collect())
        .collect();
    BooleanNetwork::from_truth_tables(&rows)
}

/// Transcription of the drawn deterministic dynamics of the sample network:
/// parallel, the block-sequential schedule ({2,3},{1}), and the sequential
/// schedule (3),(1),(2).
pub fn golden_parallel() -> Vec<(u64, u64)> {
    edges(&[
        ("000", "101"),
        ("001", "011"),
        ("010", "101"),
        ("011", "011"),
        ("100", "100"),
        ("101", "000"),
        ("110", "100"),
        ("111", "000"),
    ])
}

pub fn golden_bs_23_1() -> Vec<(u64, u64)> {
    edges(&[
        ("000", "001"),
        ("001", "011"),
        ("010", "001"),
        ("011", "011"),
        ("100", "100"),
        ("101", "100"),
        ("110", "100"),
        ("111", "100"),
    ])
}

pub fn golden_seq_3_1_2() -> Vec<(u64, u64)> {
    edges(&[
        ("000", "011"),
        ("001", "011"),
        ("010", "011"),
        ("011", "011"),
        ("100", "100"),
        ("101", "100"),
        ("110", "100"),
        ("111", "100"),
    ])
}

/// Drawn fully-asynchronous dynamics, self-loops included.
pub fn golden_fully_async() -> Vec<(u64, u64)> {
    edges(&[
        ("000", "000"),
        ("000", "001"),
        ("000", "100"),
        ("001", "001"),
        ("001", "011"),
        ("010", "000"),
        ("010", "011"),
        ("010", "110"),
        ("011", "011"),
        ("100", "100"),
        ("101", "001"),
        ("101", "100"),
        ("101", "101"),
        ("110", "100"),
        ("110", "110"),
        ("111", "011"),
        ("111", "101"),
        ("111", "110"),
    ])
}

/// Drawn asynchronous dynamics, self-loops included.
pub fn golden_async() -> Vec<(u64, u64)> {
    edges(&[
        ("000", "000"),
        ("000", "001"),
        ("000", "100"),
        ("000", "101"),
        ("001", "001"),
        ("001", "011"),
        ("010", "000"),
        ("010", "001"),
        ("010", "011"),
        ("010", "100"),
        ("010", "101"),
        ("010", "110"),
        ("010", "111"),
        ("011", "011"),
        ("100", "100"),
        ("101", "000"),
        ("101", "001"),
        ("101", "100"),
        ("101", "101"),
        ("110", "100"),
        ("110", "110"),
        ("111", "000"),
        ("111", "001"),
        ("111", "010"),
        ("111", "011"),
        ("111", "100"),
        ("111", "101"),
        ("111", "110"),
    ])
}

/// Drawn memory dynamics with parameter set {1}, self-loops included.
pub fn golden_memory_1() -> Vec<(u64, u64)> {
    edges(&[
        ("000", "101"),
        ("001", "011"),
        ("010", "101"),
        ("011", "011"),
        ("100", "100"),
        ("101", "000"),
        ("101", "100"),
        ("110", "100"),
        ("111", "000"),
        ("111", "100"),
    ])
}

fn without_loops(mut base: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    base.retain(|(s, d)| s != d);
    base
}

/// Drawn interval dynamics without self-loops: the asynchronous transitions
/// plus the two additional reaches.
pub fn golden_interval_nonloop() -> Vec<(u64, u64)> {
    let mut out = without_loops(golden_async());
    out.extend(edges(&[("000", "111"), ("101", "010")]));
    out.sort_unstable();
    out.dedup();
    out
}

/// Drawn most-permissive dynamics without self-loops: the asynchronous
/// transitions plus the eight additional reaches.
pub fn golden_mp_nonloop() -> Vec<(u64, u64)> {
    let mut out = without_loops(golden_async());
    out.extend(edges(&[
        ("000", "110"),
        ("000", "111"),
        ("000", "010"),
        ("000", "011"),
        ("101", "110"),
        ("101", "010"),
        ("101", "111"),
        ("101", "011"),
    ]));
    out.sort_unstable();
    out.dedup();
    out
}
