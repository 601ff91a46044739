//! Updating-mode specifications: the textual grammar and the binding of a
//! mode to a concrete network.
//!
//! Grammar (automaton indices are 1-based):
//!
//! ```text
//! parallel | fully-async | async | interval | mp
//! seq:i1,i2,...            sequential, a permutation of the automata
//! bs:{a,b};{c};...          block-sequential, an ordered partition
//! periodic:{a};{b,c};...    general periodic schedule, repetition allowed
//! memory:{i,j}              memory mode by parameter set
//! memory-vector:m1,m2,...   memory mode by per-automaton maxima
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::config::AutomataSet;
use crate::memory::{Memory, MemoryVector};
use crate::interval::Interval;
use crate::mp::{MostPermissive, MpCapExceeded};
use crate::network::BooleanNetwork;
use crate::schedule::{Schedule, ScheduleError};
use crate::set_update::{Deterministic, Elementary, FullyAsync, SetUpdate};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModeParseError {
    #[error("unknown mode {0:?}")]
    Unknown(String),
    #[error("malformed mode parameters: {0}")]
    Malformed(String),
    #[error("block-sequential blocks overlap: not a partition")]
    NotAPartition,
    #[error("sequential order repeats an automaton: not a permutation")]
    NotAPermutation,
}

/// Errors from binding a parsed mode to a network of a concrete dimension.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModeError {
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    MpCap(#[from] MpCapExceeded),
    #[error("memory parameters do not fit dimension {dim}: {msg}")]
    Memory { dim: usize, msg: String },
}

/// Memory-mode parameterization: either the automata allowed to linger, or
/// explicit per-automaton maxima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MemoryParam {
    Selected(AutomataSet),
    Maxima(Vec<u32>),
}

impl MemoryParam {
    pub fn selected(&self) -> AutomataSet {
        match self {
            MemoryParam::Selected(set) => *set,
            MemoryParam::Maxima(maxima) => MemoryVector::new(maxima.clone()).selected(),
        }
    }
}

/// An updating mode, independent of any particular network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeSpec {
    Parallel,
    Sequential(Vec<usize>),
    BlockSequential(Vec<AutomataSet>),
    Periodic(Vec<AutomataSet>),
    FullyAsync,
    Async,
    Memory(MemoryParam),
    Interval,
    MostPermissive,
}

impl ModeSpec {
    /// Deterministic modes produce exactly one successor per configuration.
    pub fn is_deterministic(&self) -> bool {
        matches!(
            self,
            ModeSpec::Parallel
                | ModeSpec::Sequential(_)
                | ModeSpec::BlockSequential(_)
                | ModeSpec::Periodic(_)
        ) || matches!(self, ModeSpec::Memory(p) if p.selected().is_empty())
    }

    /// Binds the mode to a network, validating dimension-dependent
    /// parameters, and returns its set update.
    pub fn update<'a>(
        &self,
        net: &'a BooleanNetwork,
    ) -> Result<Box<dyn SetUpdate + 'a>, ModeError> {
        self.update_with_mp_cap(net, crate::mp::DEFAULT_MP_CAP)
    }

    pub fn update_with_mp_cap<'a>(
        &self,
        net: &'a BooleanNetwork,
        mp_cap: usize,
    ) -> Result<Box<dyn SetUpdate + 'a>, ModeError> {
        let n = net.dim();
        Ok(match self {
            ModeSpec::Parallel => Box::new(Deterministic::new(net, Schedule::parallel(n))),
            ModeSpec::Sequential(order) => {
                Box::new(Deterministic::new(net, Schedule::sequential(order, n)?))
            }
            ModeSpec::BlockSequential(blocks) => Box::new(Deterministic::new(
                net,
                Schedule::block_sequential(blocks.clone(), n)?,
            )),
            ModeSpec::Periodic(blocks) => Box::new(Deterministic::new(
                net,
                Schedule::periodic(blocks.clone(), n)?,
            )),
            ModeSpec::FullyAsync => Box::new(FullyAsync::new(net)),
            ModeSpec::Async => Box::new(Elementary::new(net)),
            ModeSpec::Memory(param) => {
                match param {
                    MemoryParam::Selected(set) => {
                        if !set.within(n) {
                            return Err(ModeError::Memory {
                                dim: n,
                                msg: format!("automaton set {set} out of range"),
                            });
                        }
                    }
                    MemoryParam::Maxima(maxima) => {
                        if maxima.len() != n {
                            return Err(ModeError::Memory {
                                dim: n,
                                msg: format!("{} maxima for {n} automata", maxima.len()),
                            });
                        }
                    }
                }
                Box::new(Memory::new(net, param.selected()))
            }
            ModeSpec::Interval => Box::new(Interval::new(net)),
            ModeSpec::MostPermissive => Box::new(MostPermissive::with_cap(net, mp_cap)?),
        })
    }
}

impl fmt::Display for ModeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeSpec::Parallel => write!(f, "parallel"),
            ModeSpec::FullyAsync => write!(f, "fully-async"),
            ModeSpec::Async => write!(f, "async"),
            ModeSpec::Interval => write!(f, "interval"),
            ModeSpec::MostPermissive => write!(f, "mp"),
            ModeSpec::Sequential(order) => {
                write!(f, "seq:")?;
                for (k, i) in order.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                Ok(())
            }
            ModeSpec::BlockSequential(blocks) => write_blocks(f, "bs", blocks),
            ModeSpec::Periodic(blocks) => write_blocks(f, "periodic", blocks),
            ModeSpec::Memory(MemoryParam::Selected(set)) => write!(f, "memory:{set}"),
            ModeSpec::Memory(MemoryParam::Maxima(maxima)) => {
                write!(f, "memory-vector:")?;
                for (k, m) in maxima.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
        }
    }
}

fn write_blocks(f: &mut fmt::Formatter<'_>, tag: &str, blocks: &[AutomataSet]) -> fmt::Result {
    write!(f, "{tag}:")?;
    for (k, block) in blocks.iter().enumerate() {
        if k > 0 {
            write!(f, ";")?;
        }
        write!(f, "{block}")?;
    }
    Ok(())
}

impl FromStr for ModeSpec {
    type Err = ModeParseError;

    fn from_str(s: &str) -> Result<Self, ModeParseError> {
        let s = s.trim();
        match s {
            "parallel" => return Ok(ModeSpec::Parallel),
            "fully-async" => return Ok(ModeSpec::FullyAsync),
            "async" => return Ok(ModeSpec::Async),
            "interval" => return Ok(ModeSpec::Interval),
            "mp" => return Ok(ModeSpec::MostPermissive),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("seq:") {
            let order = parse_indices(rest)?;
            if order.is_empty() {
                return Err(ModeParseError::Malformed("empty sequential order".into()));
            }
            let distinct: AutomataSet = order.iter().copied().collect();
            if distinct.len() != order.len() {
                return Err(ModeParseError::NotAPermutation);
            }
            return Ok(ModeSpec::Sequential(order));
        }
        if let Some(rest) = s.strip_prefix("bs:") {
            let blocks = parse_block_list(rest)?;
            let mut union = AutomataSet::empty();
            for block in &blocks {
                if !union.is_disjoint(*block) {
                    return Err(ModeParseError::NotAPartition);
                }
                union = union.union(*block);
            }
            return Ok(ModeSpec::BlockSequential(blocks));
        }
        if let Some(rest) = s.strip_prefix("periodic:") {
            return Ok(ModeSpec::Periodic(parse_block_list(rest)?));
        }
        if let Some(rest) = s.strip_prefix("memory-vector:") {
            let maxima: Vec<u32> = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| ModeParseError::Malformed(format!("bad maximum {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if maxima.is_empty() || maxima.iter().any(|&m| m < 1) {
                return Err(ModeParseError::Malformed(
                    "memory maxima must be at least 1".into(),
                ));
            }
            return Ok(ModeSpec::Memory(MemoryParam::Maxima(maxima)));
        }
        if let Some(rest) = s.strip_prefix("memory:") {
            return Ok(ModeSpec::Memory(MemoryParam::Selected(parse_braced_set(
                rest,
            )?)));
        }
        Err(ModeParseError::Unknown(s.to_string()))
    }
}

fn parse_indices(text: &str) -> Result<Vec<usize>, ModeParseError> {
    text.split(',')
        .map(|t| {
            let i: usize = t
                .trim()
                .parse()
                .map_err(|_| ModeParseError::Malformed(format!("bad index {t:?}")))?;
            if !(1..=64).contains(&i) {
                return Err(ModeParseError::Malformed(format!(
                    "index {i} out of range 1..=64"
                )));
            }
            Ok(i)
        })
        .collect()
}

fn parse_braced_set(text: &str) -> Result<AutomataSet, ModeParseError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| ModeParseError::Malformed(format!("expected {{...}}, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(AutomataSet::empty());
    }
    Ok(AutomataSet::from_indices(parse_indices(inner)?))
}

fn parse_block_list(text: &str) -> Result<Vec<AutomataSet>, ModeParseError> {
    let blocks: Vec<AutomataSet> = text
        .split(';')
        .map(parse_braced_set)
        .collect::<Result<_, _>>()?;
    if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
        return Err(ModeParseError::Malformed(
            "schedule blocks must be non-empty".into(),
        ));
    }
    Ok(blocks)
}
