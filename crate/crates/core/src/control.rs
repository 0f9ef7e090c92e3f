//! Problem statements and solution verification for the eight candidate
//! control problems (constructive/destructive x adding/deleting x
//! plain/combinatorial).

use std::collections::BTreeMap;

use crate::election::{BundlingFunction, CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};
use crate::rules::{winners, VotingRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ControlAction {
    AddCandidates,
    DeleteCandidates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ControlGoal {
    Constructive,
    Destructive,
}

/// A full control problem instance: the election plus rule, control shape,
/// bundling, designated candidate and budget.
///
/// The designated candidate is the preferred one for constructive control
/// and the despised one for destructive control. Budgets count bundles, not
/// closed candidates, in the combinatorial variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlInstance {
    pub election: Election,
    pub rule: VotingRule,
    pub action: ControlAction,
    pub goal: ControlGoal,
    pub combinatorial: bool,
    pub kappa: BundlingFunction,
    pub designated: CandidateId,
    pub budget: u32,
}

impl ControlInstance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        election: Election,
        rule: VotingRule,
        action: ControlAction,
        goal: ControlGoal,
        combinatorial: bool,
        kappa: BundlingFunction,
        designated: CandidateId,
        budget: u32,
    ) -> Result<Self> {
        rule.validate()?;
        if !election.is_registered(designated) {
            return Err(Error::invalid_argument(
                "designated candidate must be registered",
            ));
        }
        if action == ControlAction::DeleteCandidates && !election.unregistered().is_empty() {
            return Err(Error::invalid_argument(
                "deleting-candidates instances must have an empty pool",
            ));
        }
        if !combinatorial && !kappa.is_identity() {
            return Err(Error::invalid_argument(
                "non-combinatorial instances require the identity bundling function",
            ));
        }
        for c in election.registered().iter().chain(election.unregistered()) {
            let bundle = kappa.bundle(*c).ok_or_else(|| {
                Error::invalid_argument("bundling function must cover every candidate")
            })?;
            if bundle.iter().any(|x| x.index() >= election.universe_size()) {
                return Err(Error::invalid_argument("bundle references unknown candidate"));
            }
        }
        let cap = match action {
            ControlAction::AddCandidates => election.unregistered().len(),
            ControlAction::DeleteCandidates => election.registered().len().saturating_sub(1),
        };
        if budget as usize > cap {
            return Err(Error::invalid_argument(format!(
                "budget {budget} exceeds the feasible maximum {cap}"
            )));
        }
        Ok(ControlInstance {
            election,
            rule,
            action,
            goal,
            combinatorial,
            kappa,
            designated,
            budget,
        })
    }

    /// Candidates an action may pick from: the pool when adding, the
    /// registered set when deleting.
    pub fn choosable(&self) -> &CandidateSet {
        match self.action {
            ControlAction::AddCandidates => self.election.unregistered(),
            ControlAction::DeleteCandidates => self.election.registered(),
        }
    }
}

/// A proposed action: the chosen candidates (bundle owners in the
/// combinatorial variants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlSolution {
    pub chosen: CandidateSet,
}

impl ControlSolution {
    pub fn new(chosen: CandidateSet) -> Self {
        ControlSolution { chosen }
    }

    pub fn empty() -> Self {
        ControlSolution {
            chosen: CandidateSet::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
}

/// Outcome of a solver run: the decision, a verifying witness for yes
/// answers, the algorithm that produced it and a few counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub decision: Decision,
    pub witness: Option<ControlSolution>,
    pub algorithm: String,
    pub stats: BTreeMap<String, u64>,
}

impl SolveReport {
    pub fn yes(witness: ControlSolution, algorithm: &str) -> Self {
        SolveReport {
            decision: Decision::Yes,
            witness: Some(witness),
            algorithm: algorithm.to_string(),
            stats: BTreeMap::new(),
        }
    }

    pub fn no(algorithm: &str) -> Self {
        SolveReport {
            decision: Decision::No,
            witness: None,
            algorithm: algorithm.to_string(),
            stats: BTreeMap::new(),
        }
    }

    pub fn with_stat(mut self, key: &str, value: u64) -> Self {
        self.stats.insert(key.to_string(), value);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}

/// Check the structural constraints of `sol` and return the resulting
/// election. Budgets count chosen bundles; closures are applied here.
pub fn apply_solution(instance: &ControlInstance, sol: &ControlSolution) -> Result<Election> {
    if sol.chosen.len() > instance.budget as usize {
        return Err(Error::invalid_solution(format!(
            "{} candidates chosen, budget is {}",
            sol.chosen.len(),
            instance.budget
        )));
    }
    if !sol.chosen.is_subset(instance.choosable()) {
        return Err(Error::invalid_solution(
            "chosen candidates are outside the permitted set",
        ));
    }
    let closed = instance.kappa.closure(&sol.chosen)?;
    match instance.action {
        ControlAction::AddCandidates => {
            let to_add: CandidateSet = closed
                .intersection(instance.election.unregistered())
                .copied()
                .collect();
            instance.election.add_candidates(&to_add)
        }
        ControlAction::DeleteCandidates => {
            if closed.contains(&instance.designated) {
                return Err(Error::invalid_solution(match instance.goal {
                    ControlGoal::Constructive => "a chosen bundle deletes the preferred candidate",
                    ControlGoal::Destructive => "a chosen bundle contains the despised candidate",
                }));
            }
            instance.election.restrict(&closed)
        }
    }
}

/// True iff `sol` satisfies all structural constraints and achieves the
/// instance's goal. Structural violations yield `false`, never a panic.
pub fn verify_solution(instance: &ControlInstance, sol: &ControlSolution) -> bool {
    verify_solution_checked(instance, sol).unwrap_or(false)
}

/// Like [`verify_solution`] but surfaces the diagnostic for malformed
/// solutions.
pub fn verify_solution_checked(instance: &ControlInstance, sol: &ControlSolution) -> Result<bool> {
    let outcome = apply_solution(instance, sol)?;
    let winner_set = winners(&outcome, &instance.rule)?;
    Ok(match instance.goal {
        ControlGoal::Constructive => winner_set.contains(&instance.designated),
        ControlGoal::Destructive => !winner_set.contains(&instance.designated),
    })
}
