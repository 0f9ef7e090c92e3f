//! Hardness-gadget generators: faithful constructions that turn
//! multicolored-clique, cubic vertex-cover and set-cover instances into
//! control instances with fixed (or parameter-bounded) voter counts, plus
//! the edge-coloring subroutine and the source-problem types.
//!
//! Conventions shared by every construction: set-valued blocks inside a
//! vote are laid out in ascending candidate-id order, reversed blocks in
//! descending order, and unlisted candidates fill gaps in ascending order.

mod coloring;
mod cvc;
mod mcc;
mod setcover;
mod source;

pub use coloring::{misra_gries_color, EdgeColoring};
pub use cvc::reduce_cvc;
pub use mcc::reduce_mcc;
pub use setcover::reduce_setcover;
pub use source::{ColoredGraph, Graph, SetCoverInstance};

use crate::control::{ControlAction, ControlGoal};
use crate::election::CandidateId;
use crate::rules::VotingRule;

/// A problem identifier within the supported reduction catalog: rule plus
/// control type plus the combinatorial flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionTarget {
    pub rule: VotingRule,
    pub action: ControlAction,
    pub goal: ControlGoal,
    pub combinatorial: bool,
}

impl ReductionTarget {
    pub fn new(
        rule: VotingRule,
        action: ControlAction,
        goal: ControlGoal,
        combinatorial: bool,
    ) -> Self {
        ReductionTarget {
            rule,
            action,
            goal,
            combinatorial,
        }
    }

    pub(crate) fn shape(&self) -> (ControlAction, ControlGoal, bool) {
        (self.action, self.goal, self.combinatorial)
    }
}

impl std::fmt::Display for ReductionTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let comb = if self.combinatorial { "comb-" } else { "" };
        let shape = match (self.goal, self.action) {
            (ControlGoal::Constructive, ControlAction::AddCandidates) => "ccac",
            (ControlGoal::Constructive, ControlAction::DeleteCandidates) => "ccdc",
            (ControlGoal::Destructive, ControlAction::AddCandidates) => "dcac",
            (ControlGoal::Destructive, ControlAction::DeleteCandidates) => "dcdc",
        };
        write!(f, "{}-{comb}{shape}", self.rule)
    }
}

/// Incremental vote assembly. Blocks are pushed most-preferred first; the
/// remaining candidates are filled in ascending id order, optionally ahead
/// of an explicit tail.
pub(crate) struct VoteBuilder {
    universe: usize,
    placed: Vec<bool>,
    order: Vec<CandidateId>,
}

impl VoteBuilder {
    pub(crate) fn new(universe: usize) -> Self {
        VoteBuilder {
            universe,
            placed: vec![false; universe],
            order: Vec::with_capacity(universe),
        }
    }

    pub(crate) fn push(&mut self, c: CandidateId) -> &mut Self {
        debug_assert!(!self.placed[c.index()], "candidate placed twice in a vote");
        self.placed[c.index()] = true;
        self.order.push(c);
        self
    }

    pub(crate) fn push_block<I: IntoIterator<Item = CandidateId>>(&mut self, block: I) -> &mut Self {
        for c in block {
            self.push(c);
        }
        self
    }

    /// Fill every unplaced candidate except `tail`, ascending, then `tail`.
    pub(crate) fn fill_then<I: IntoIterator<Item = CandidateId>>(&mut self, tail: I) -> &mut Self {
        let tail: Vec<CandidateId> = tail.into_iter().collect();
        let reserved: Vec<bool> = {
            let mut r = vec![false; self.universe];
            for c in &tail {
                r[c.index()] = true;
            }
            r
        };
        for i in 0..self.universe {
            if !self.placed[i] && !reserved[i] {
                self.push(CandidateId(i as u32));
            }
        }
        self.push_block(tail)
    }

    pub(crate) fn fill(&mut self) -> &mut Self {
        self.fill_then([])
    }

    pub(crate) fn finish(self) -> Vec<CandidateId> {
        debug_assert_eq!(self.order.len(), self.universe, "vote must rank everyone");
        self.order
    }
}

pub(crate) fn descending(block: &[CandidateId]) -> Vec<CandidateId> {
    let mut b = block.to_vec();
    b.reverse();
    b
}
