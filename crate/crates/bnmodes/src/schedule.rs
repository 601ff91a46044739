//! Deterministic updating modes: ordered compositions of elementary updates.
//!
//! A schedule is a non-empty list of update blocks applied left to right.
//! The parallel mode is the single block `1..=n`; sequential modes use
//! singleton blocks along a permutation; block-sequential modes require the
//! blocks to partition the automata; general periodic schedules accept any
//! non-empty blocks, repetition included.

use thiserror::Error;

use crate::config::{AutomataSet, Config};
use crate::network::BooleanNetwork;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("schedule blocks must be non-empty")]
    EmptyBlock,
    #[error("automaton {index} out of range for dimension {dim}")]
    OutOfRange { index: usize, dim: usize },
    #[error("blocks do not form an ordered partition of the automata")]
    NotAPartition,
    #[error("sequential order is not a permutation of the automata")]
    NotAPermutation,
}

/// An ordered list of update blocks defining a deterministic updating mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    blocks: Vec<AutomataSet>,
    requires_partition: bool,
}

impl Schedule {
    pub fn parallel(n: usize) -> Schedule {
        Schedule {
            blocks: vec![AutomataSet::full(n)],
            requires_partition: true,
        }
    }

    pub fn sequential(order: &[usize], n: usize) -> Result<Schedule, ScheduleError> {
        for &i in order {
            if i < 1 || i > n {
                return Err(ScheduleError::OutOfRange { index: i, dim: n });
            }
        }
        let seen = AutomataSet::from_indices(order.iter().copied());
        if order.len() != n || seen != AutomataSet::full(n) {
            return Err(ScheduleError::NotAPermutation);
        }
        Ok(Schedule {
            blocks: order
                .iter()
                .map(|&i| AutomataSet::from_indices([i]))
                .collect(),
            requires_partition: true,
        })
    }

    pub fn block_sequential(
        blocks: Vec<AutomataSet>,
        n: usize,
    ) -> Result<Schedule, ScheduleError> {
        check_blocks(&blocks, n)?;
        let mut union = AutomataSet::empty();
        for block in &blocks {
            if !union.is_disjoint(*block) {
                return Err(ScheduleError::NotAPartition);
            }
            union = union.union(*block);
        }
        if union != AutomataSet::full(n) {
            return Err(ScheduleError::NotAPartition);
        }
        Ok(Schedule {
            blocks,
            requires_partition: true,
        })
    }

    pub fn periodic(blocks: Vec<AutomataSet>, n: usize) -> Result<Schedule, ScheduleError> {
        check_blocks(&blocks, n)?;
        Ok(Schedule {
            blocks,
            requires_partition: false,
        })
    }

    pub fn blocks(&self) -> &[AutomataSet] {
        &self.blocks
    }

    pub fn requires_partition(&self) -> bool {
        self.requires_partition
    }

    /// One pass of the schedule: applies the blocks left to right.
    pub fn step(&self, net: &BooleanNetwork, x: Config) -> Config {
        self.blocks
            .iter()
            .fold(x, |state, &block| net.update(block, state))
    }

    /// Iterates [`Schedule::step`]; the result has `steps + 1` entries and
    /// starts at `x`.
    pub fn trajectory(&self, net: &BooleanNetwork, x: Config, steps: usize) -> Vec<Config> {
        let mut path = Vec::with_capacity(steps + 1);
        path.push(x);
        let mut state = x;
        for _ in 0..steps {
            state = self.step(net, state);
            path.push(state);
        }
        path
    }
}

fn check_blocks(blocks: &[AutomataSet], n: usize) -> Result<(), ScheduleError> {
    if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
        return Err(ScheduleError::EmptyBlock);
    }
    for block in blocks {
        if !block.within(n) {
            return Err(ScheduleError::OutOfRange {
                index: block.iter().max().unwrap(),
                dim: n,
            });
        }
    }
    Ok(())
}
