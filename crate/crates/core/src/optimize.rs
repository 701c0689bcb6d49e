//! Local schedule reductions: cancelling adjacent inverse pairs and greedily
//! merging runs of factors whose product is still local.

use crate::error::Result;
use crate::factor::{is_directly_implementable, Factor};
use crate::graph::Graph;
use crate::matrix::{check_dim, Matrix};
use crate::schedule::{Schedule, Step};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OptimizationReport {
    pub before: usize,
    pub after: usize,
    /// Inverse pairs removed; each removes two factors.
    pub cancellations: usize,
    /// Factors absorbed into a preceding block; each removes one factor.
    pub merges: usize,
}

/// Removes adjacent `Swap`/`Swap`, `AddRow(m)`/`AddRow(-m)` and
/// `ScaleRow(m)`/`ScaleRow(1/m)` pairs until none remain.
pub fn cancel_inverse_pairs(s: &Schedule) -> (Schedule, usize) {
    // stack reduction: a removal can expose a new adjacent pair, which the
    // next comparison against the stack top picks up
    let mut kept: Vec<Step> = Vec::with_capacity(s.len());
    let mut cancellations = 0;
    for step in &s.steps {
        match kept.last() {
            Some(top) if top.factor.is_inverse_of(&step.factor) => {
                kept.pop();
                cancellations += 1;
            }
            _ => kept.push(step.clone()),
        }
    }
    let mut out = s.clone();
    out.steps = kept;
    out.stats.optimized = out.len();
    (out, cancellations)
}

struct Block {
    matrix: Matrix,
    members: Vec<Step>,
}

impl Block {
    fn into_step(mut self) -> Step {
        if self.members.len() == 1 {
            return self.members.pop().unwrap();
        }
        Step {
            factor: Factor::from_matrix(&self.matrix),
            stage: format!("merged({})", self.members.len()),
        }
    }
}

/// Greedy left-to-right merge over the multiplication order: a factor joins
/// the current block while the block product stays local to `g`.
///
/// Merging minimizes rounds, not messages. A merged block can need more
/// messages than its members did separately, e.g. `L(3,2) L(2,1)` on a
/// triangle fills in the `(3,1)` entry.
pub fn merge_adjacent(s: &Schedule, g: &Graph) -> Result<(Schedule, usize)> {
    check_dim(g.n(), s.n())?;
    let n = g.n();
    let mut blocks: Vec<Block> = Vec::new();
    for step in s.steps.iter().rev() {
        if let Some(block) = blocks.last_mut() {
            let candidate = step.factor.apply_right(&block.matrix)?;
            if is_directly_implementable(&candidate, g)? {
                block.matrix = candidate;
                block.members.push(step.clone());
                continue;
            }
        }
        blocks.push(Block {
            matrix: step.factor.materialize(n)?,
            members: vec![step.clone()],
        });
    }
    let merges = s.len() - blocks.len();
    let mut steps: Vec<Step> = blocks.into_iter().map(Block::into_step).collect();
    steps.reverse();

    let mut out = s.clone();
    out.steps = steps;
    out.stats.optimized = out.len();
    Ok((out, merges))
}

/// Cancellation followed by merging.
pub fn optimize(s: &Schedule, g: &Graph) -> Result<(Schedule, OptimizationReport)> {
    let (cancelled, cancellations) = cancel_inverse_pairs(s);
    let (merged, merges) = merge_adjacent(&cancelled, g)?;
    let report = OptimizationReport {
        before: s.len(),
        after: merged.len(),
        cancellations,
        merges,
    };
    Ok((merged, report))
}
