//! Boolean networks and their updating modes.
//!
//! A Boolean network assigns each automaton a local Boolean function over
//! the state of the whole network; an updating mode decides which automata
//! may apply their function in one transition. This crate implements the
//! classical deterministic modes (parallel, sequential, block-sequential,
//! general periodic schedules), the non-deterministic asynchronous and
//! fully-asynchronous modes, and three modes defined through set updates —
//! functions on configuration *sets* determined by their singleton images:
//!
//! * **memory**: automata with a decay delay may linger in their active
//!   state, selecting a configuration-dependent subset of the elementary
//!   transitions;
//! * **interval**: state changes are decomposed so other automata can keep
//!   updating against the old value, which reaches configurations no
//!   elementary path reaches;
//! * **most permissive**: widening over hypercube closures plus narrowing
//!   to producible states, abstracting every threshold ordering a
//!   quantitative refinement could realize.
//!
//! Whole-space transition graphs expose fixed points, limit sets (terminal
//! strongly connected components), attractors, basins, reachability with
//! witnesses, and edge-set comparison across modes.
//!
//! ```
//! use bnmodes::{BooleanNetwork, Config, ModeSpec, TransitionGraph};
//!
//! let net = BooleanNetwork::parse("x1: !x3\nx2: !x1 & x3\nx3: !x1")?;
//! let mode: ModeSpec = "async".parse()?;
//! let graph = TransitionGraph::build(&net, &mode)?;
//!
//! let from = Config::from_text("000", 3)?;
//! let to = Config::from_text("111", 3)?;
//! assert!(!graph.reach(from, to).reachable);
//!
//! let interval = TransitionGraph::build(&net, &"interval".parse()?)?;
//! assert!(interval.reach(from, to).reachable);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod config;
pub mod expr;
pub mod export;
pub mod graph;
pub mod interval;
pub mod memory;
pub mod mode;
pub mod mp;
pub mod network;
pub mod props;
pub mod schedule;
pub mod set_update;

pub use config::{AutomataSet, Config, ConfigError, ConfigSet};
pub use expr::{parse_expression, parse_model, Expr, ParseError, ParsedModel};
pub use graph::{
    fixed_points, fixed_points_with_cap, AnalysisError, Caps, Comparison, GraphOrder, LimitKind,
    LimitSet, LimitStructure, ReachResult, TransitionGraph, DEFAULT_SPACE_CAP,
};
pub use interval::{interval_commit, interval_expand, Interval};
pub use memory::{
    compatible_delays, coupled_step, delay_step, Memory, MemoryConfig, MemoryDelays, MemoryVector,
};
pub use mode::{MemoryParam, ModeError, ModeParseError, ModeSpec};
pub use mp::{hypercube_closure, narrow, widen, MostPermissive, MpCapExceeded, DEFAULT_MP_CAP};
pub use network::BooleanNetwork;
pub use schedule::{Schedule, ScheduleError};
pub use set_update::{
    iterate_k, iterate_omega, superpose, transitions, Deterministic, Elementary, FullyAsync,
    SetUpdate, Superpose,
};
