//! Whole-space transition graphs and their dynamical analysis: fixed points,
//! limit sets, attractors, basins, reachability and cross-mode comparison.

use std::collections::BTreeSet;

use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::config::{Config, ConfigSet};
use crate::mode::{ModeError, ModeSpec};
use crate::mp::DEFAULT_MP_CAP;
use crate::network::BooleanNetwork;

/// Default dimension cap for operations that enumerate all `2^n`
/// configurations.
pub const DEFAULT_SPACE_CAP: usize = 20;

/// Dimension caps for whole-space analyses.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub space: usize,
    pub most_permissive: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            space: DEFAULT_SPACE_CAP,
            most_permissive: DEFAULT_MP_CAP,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("dimension {dim} exceeds the whole-space cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error("graphs have different dimensions: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("the given configuration set is not an attractor of this graph")]
    NotAnAttractor,
}

/// The transition graph of a network under one updating mode: a directed
/// graph over all `2^n` configurations.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    n: usize,
    automata: Vec<String>,
    mode: ModeSpec,
    succ: Vec<Vec<u64>>,
}

impl TransitionGraph {
    pub fn build(net: &BooleanNetwork, mode: &ModeSpec) -> Result<Self, AnalysisError> {
        Self::build_with_caps(net, mode, Caps::default())
    }

    pub fn build_with_caps(
        net: &BooleanNetwork,
        mode: &ModeSpec,
        caps: Caps,
    ) -> Result<Self, AnalysisError> {
        let n = net.dim();
        if n > caps.space {
            return Err(AnalysisError::CapExceeded {
                dim: n,
                cap: caps.space,
            });
        }
        net.compile_tables();
        let update = mode.update_with_mp_cap(net, caps.most_permissive)?;
        let succ = (0..1u64 << n)
            .map(|code| update.successors(Config::new(n, code)).codes().collect())
            .collect();
        Ok(TransitionGraph {
            n,
            automata: net.names().to_vec(),
            mode: mode.clone(),
            succ,
        })
    }

    /// Builds a graph from an explicit edge list (used for synthetic inputs
    /// and tests); edges are deduplicated and sorted.
    pub fn from_edges(
        n: usize,
        automata: Vec<String>,
        mode: ModeSpec,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let mut succ = vec![Vec::new(); 1 << n];
        for (src, dst) in edges {
            assert!(src < 1 << n && dst < 1 << n, "edge out of range");
            succ[src as usize].push(dst);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        TransitionGraph {
            n,
            automata,
            mode,
            succ,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn automata(&self) -> &[String] {
        &self.automata
    }

    pub fn mode(&self) -> &ModeSpec {
        &self.mode
    }

    pub fn node_count(&self) -> usize {
        1 << self.n
    }

    pub fn successors(&self, code: u64) -> &[u64] {
        &self.succ[code as usize]
    }

    /// Edges in ascending `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(src, dsts)| dsts.iter().map(move |&d| (src as u64, d)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// The edge set with self-loops removed (the convention used when
    /// comparing against drawings that omit loops).
    pub fn edges_without_loops(&self) -> Vec<(u64, u64)> {
        self.edges().filter(|(s, d)| s != d).collect()
    }

    /// Terminal strongly connected components with their classification,
    /// attractor status and basins, ordered by smallest member code.
    pub fn limit_structure(&self) -> LimitStructure {
        let mut graph = DiGraph::<(), ()>::with_capacity(self.node_count(), self.edge_count());
        let nodes: Vec<NodeIndex> = (0..self.node_count()).map(|_| graph.add_node(())).collect();
        for (src, dst) in self.edges() {
            graph.add_edge(nodes[src as usize], nodes[dst as usize], ());
        }

        let mut preds: Vec<Vec<u64>> = vec![Vec::new(); self.node_count()];
        for (src, dst) in self.edges() {
            preds[dst as usize].push(src);
        }

        let mut sets = Vec::new();
        for component in petgraph::algo::tarjan_scc(&graph) {
            let members: BTreeSet<u64> = component.iter().map(|ix| ix.index() as u64).collect();
            let terminal = members
                .iter()
                .all(|&code| self.successors(code).iter().all(|d| members.contains(d)));
            if !terminal {
                continue;
            }
            let member_set = ConfigSet::from_codes(self.n, members.iter().copied());
            // Transient configurations reaching the component. Any
            // configuration that reaches one member reaches them all, so
            // backward closure minus the component is exactly the basin.
            let mut reaching = member_set.clone();
            let mut stack: Vec<u64> = members.iter().copied().collect();
            while let Some(code) = stack.pop() {
                for &p in &preds[code as usize] {
                    if reaching.insert_code(p) {
                        stack.push(p);
                    }
                }
            }
            let basin = reaching.minus(&member_set);
            let kind = if member_set.len() == 1 {
                LimitKind::FixedPoint
            } else {
                LimitKind::LimitCycle
            };
            sets.push(LimitSet {
                members: member_set,
                kind,
                basin,
            });
        }
        sets.sort_by_key(|s| s.members.codes().next());
        LimitStructure { sets }
    }

    /// Basin of attraction of an attractor given by its member set.
    pub fn basin(&self, members: &ConfigSet) -> Result<ConfigSet, AnalysisError> {
        self.limit_structure()
            .sets
            .into_iter()
            .find(|s| &s.members == members && s.is_attractor())
            .map(|s| s.basin)
            .ok_or(AnalysisError::NotAnAttractor)
    }

    /// Reflexive-transitive reachability, with a shortest witness path when
    /// the endpoints differ (breadth-first, ties broken by ascending code).
    pub fn reach(&self, from: Config, to: Config) -> ReachResult {
        assert_eq!(from.dim(), self.n, "dimension mismatch");
        assert_eq!(to.dim(), self.n, "dimension mismatch");
        if from == to {
            return ReachResult {
                reachable: true,
                witness: None,
            };
        }
        let mut parent: Vec<Option<u64>> = vec![None; self.node_count()];
        let mut queue = std::collections::VecDeque::new();
        parent[from.code() as usize] = Some(from.code());
        queue.push_back(from.code());
        while let Some(code) = queue.pop_front() {
            for &next in self.successors(code) {
                if parent[next as usize].is_none() {
                    parent[next as usize] = Some(code);
                    if next == to.code() {
                        let mut path = vec![next];
                        let mut cur = code;
                        while cur != from.code() {
                            path.push(cur);
                            cur = parent[cur as usize].unwrap();
                        }
                        path.push(from.code());
                        path.reverse();
                        return ReachResult {
                            reachable: true,
                            witness: Some(
                                path.into_iter().map(|c| Config::new(self.n, c)).collect(),
                            ),
                        };
                    }
                    queue.push_back(next);
                }
            }
        }
        ReachResult {
            reachable: false,
            witness: None,
        }
    }

    /// Edge-set comparison with both difference sets.
    pub fn compare(&self, other: &TransitionGraph) -> Result<Comparison, AnalysisError> {
        if self.n != other.n {
            return Err(AnalysisError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let left: BTreeSet<(u64, u64)> = self.edges().collect();
        let right: BTreeSet<(u64, u64)> = other.edges().collect();
        let only_left: Vec<_> = left.difference(&right).copied().collect();
        let only_right: Vec<_> = right.difference(&left).copied().collect();
        let order = match (only_left.is_empty(), only_right.is_empty()) {
            (true, true) => GraphOrder::Equal,
            (true, false) => GraphOrder::Subset,
            (false, true) => GraphOrder::Superset,
            (false, false) => GraphOrder::Incomparable,
        };
        Ok(Comparison {
            order,
            only_left,
            only_right,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    FixedPoint,
    LimitCycle,
}

/// A terminal strongly connected component. The basin holds the transient
/// configurations from which every member is reachable; it is empty exactly
/// when the limit set is not an attractor.
#[derive(Debug, Clone)]
pub struct LimitSet {
    pub members: ConfigSet,
    pub kind: LimitKind,
    pub basin: ConfigSet,
}

impl LimitSet {
    pub fn is_attractor(&self) -> bool {
        !self.basin.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct LimitStructure {
    pub sets: Vec<LimitSet>,
}

impl LimitStructure {
    pub fn fixed_points(&self) -> impl Iterator<Item = &LimitSet> {
        self.sets.iter().filter(|s| s.kind == LimitKind::FixedPoint)
    }

    pub fn limit_cycles(&self) -> impl Iterator<Item = &LimitSet> {
        self.sets.iter().filter(|s| s.kind == LimitKind::LimitCycle)
    }

    /// Limit sets reachable from at least one transient configuration.
    pub fn attractors(&self) -> impl Iterator<Item = &LimitSet> {
        self.sets.iter().filter(|s| s.is_attractor())
    }
}

#[derive(Debug, Clone)]
pub struct ReachResult {
    pub reachable: bool,
    pub witness: Option<Vec<Config>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphOrder {
    Equal,
    /// The left edge set is strictly contained in the right one.
    Subset,
    /// The right edge set is strictly contained in the left one.
    Superset,
    Incomparable,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub order: GraphOrder,
    pub only_left: Vec<(u64, u64)>,
    pub only_right: Vec<(u64, u64)>,
}

/// Configurations fixed under the global map; independent of the updating
/// mode for every mode implemented here.
pub fn fixed_points(net: &BooleanNetwork) -> Result<ConfigSet, AnalysisError> {
    fixed_points_with_cap(net, DEFAULT_SPACE_CAP)
}

pub fn fixed_points_with_cap(
    net: &BooleanNetwork,
    cap: usize,
) -> Result<ConfigSet, AnalysisError> {
    let n = net.dim();
    if n > cap {
        return Err(AnalysisError::CapExceeded { dim: n, cap });
    }
    net.compile_tables();
    let mut out = ConfigSet::empty(n);
    for code in 0..1u64 << n {
        let x = Config::new(n, code);
        if net.apply(x) == x {
            out.insert(x);
        }
    }
    Ok(out)
}
