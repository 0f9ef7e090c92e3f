//! Voter-subset search for control by deleting candidates under Plurality
//! and Veto: guess the voters that will hand the target candidate a point
//! (or the despised candidate a veto); the deletions implementing a guess
//! are forced.

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::CandidateSet;
use crate::error::{Error, Result};
use crate::rules::{scores_over_active, VotingRule};
use crate::solvers::signature::MAX_BINARY_VOTERS;

const ALGO: &str = "voter-subsets";

fn normalized(rule: &VotingRule) -> Option<VotingRule> {
    match rule {
        VotingRule::Plurality | VotingRule::TApproval(1) => Some(VotingRule::Plurality),
        VotingRule::Veto | VotingRule::TVeto(1) => Some(VotingRule::Veto),
        _ => None,
    }
}

/// Plurality-CCDC / Plurality-DCDC / Veto-DCDC by enumerating the 2^n voter
/// subsets.
pub fn solve_ccdc_dcdc_voter_subsets(instance: &ControlInstance) -> Result<SolveReport> {
    if instance.action != ControlAction::DeleteCandidates || instance.combinatorial {
        return Err(Error::unsupported(
            "voter-subset search covers plain control by deleting candidates",
        ));
    }
    let rule = normalized(&instance.rule).ok_or_else(|| {
        Error::unsupported("voter-subset search covers Plurality and Veto only")
    })?;
    if rule == VotingRule::Veto && instance.goal != ControlGoal::Destructive {
        return Err(Error::unsupported(
            "the deletion search for Veto handles the destructive goal only",
        ));
    }
    let n = instance.election.voter_count();
    if n > MAX_BINARY_VOTERS {
        return Err(Error::exhausted(format!(
            "voter-subset search supports at most {MAX_BINARY_VOTERS} voters"
        )));
    }
    match (rule, instance.goal) {
        (VotingRule::Plurality, ControlGoal::Constructive) => plurality_constructive(instance),
        (VotingRule::Plurality, ControlGoal::Destructive) => {
            destructive(instance, DeleteMode::AbovePreferred)
        }
        (VotingRule::Veto, ControlGoal::Destructive) => destructive(instance, DeleteMode::BelowDespised),
        _ => unreachable!(),
    }
}

/// For each guessed voter subset, delete everything those voters prefer to
/// the designated candidate, then cascade-delete candidates whose score
/// exceeds the subset size; deletions forced so far are forced in every
/// extension, so the cascade set is contained in any valid solution.
fn plurality_constructive(instance: &ControlInstance) -> Result<SolveReport> {
    let p = instance.designated;
    let election = &instance.election;
    let n = election.voter_count();
    let k = instance.budget as usize;
    let mut explored = 0u64;
    for mask in 0u32..(1u32 << n) {
        explored += 1;
        let mut deleted = CandidateSet::new();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                for &c in election.voters()[i].ranking() {
                    if c == p {
                        break;
                    }
                    deleted.insert(c);
                }
            }
        }
        if deleted.len() > k {
            continue;
        }
        let threshold = mask.count_ones() as i64;
        let mut active: CandidateSet = election
            .registered()
            .difference(&deleted)
            .copied()
            .collect();
        let mut over_budget = false;
        loop {
            let scores = scores_over_active(election, &VotingRule::Plurality, &active)?;
            let over: CandidateSet = scores
                .scores
                .iter()
                .filter(|(&c, &s)| c != p && s > threshold)
                .map(|(&c, _)| c)
                .collect();
            if over.is_empty() {
                break;
            }
            for c in over {
                active.remove(&c);
                deleted.insert(c);
            }
            if deleted.len() > k {
                over_budget = true;
                break;
            }
        }
        if over_budget {
            continue;
        }
        return Ok(
            SolveReport::yes(ControlSolution::new(deleted), ALGO)
                .with_stat("subsets_explored", explored),
        );
    }
    Ok(SolveReport::no(ALGO).with_stat("subsets_explored", explored))
}

enum DeleteMode {
    /// give the challenger a point: delete everything above it
    AbovePreferred,
    /// give the despised candidate a veto: delete everything below it
    BelowDespised,
}

/// Destructive deletion: guess a challenger and the voters that are to give
/// it a point (Plurality) or give the despised candidate a veto (Veto).
fn destructive(instance: &ControlInstance, mode: DeleteMode) -> Result<SolveReport> {
    let d = instance.designated;
    let election = &instance.election;
    let k = instance.budget as usize;
    let rule = match mode {
        DeleteMode::AbovePreferred => VotingRule::Plurality,
        DeleteMode::BelowDespised => VotingRule::Veto,
    };
    let mut explored = 0u64;
    for &p in election.registered() {
        if p == d {
            continue;
        }
        // only voters preferring the challenger keep it safe from deletion
        let eligible: Vec<usize> = (0..election.voter_count())
            .filter(|&i| election.voters()[i].prefers(p, d))
            .collect();
        for mask in 0u32..(1u32 << eligible.len()) {
            explored += 1;
            let mut deleted = CandidateSet::new();
            for (slot, &i) in eligible.iter().enumerate() {
                if mask & (1 << slot) == 0 {
                    continue;
                }
                match mode {
                    DeleteMode::AbovePreferred => {
                        for &c in election.voters()[i].ranking() {
                            if c == p {
                                break;
                            }
                            deleted.insert(c);
                        }
                    }
                    DeleteMode::BelowDespised => {
                        for &c in election.voters()[i].ranking().iter().rev() {
                            if c == d {
                                break;
                            }
                            deleted.insert(c);
                        }
                    }
                }
            }
            if deleted.len() > k || deleted.contains(&d) || deleted.contains(&p) {
                continue;
            }
            let active: CandidateSet = election
                .registered()
                .difference(&deleted)
                .copied()
                .collect();
            let scores = scores_over_active(election, &rule, &active)?;
            // both rules score points: more points means fewer vetoes
            if scores.scores[&p] > scores.scores[&d] {
                return Ok(SolveReport::yes(ControlSolution::new(deleted), ALGO)
                    .with_stat("subsets_explored", explored));
            }
        }
    }
    Ok(SolveReport::no(ALGO).with_stat("subsets_explored", explored))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::verify_solution;
    use crate::election::{BundlingFunction, ElectionBuilder};
    use std::collections::BTreeMap;

    fn deletion_instance(
        orders: &[&[&str]],
        registered: &[&str],
        rule: VotingRule,
        goal: ControlGoal,
        designated: &str,
        budget: u32,
    ) -> ControlInstance {
        let mut b = ElectionBuilder::new();
        let mut ids = BTreeMap::new();
        for &r in registered {
            ids.insert(r, b.add_registered(r));
        }
        for order in orders {
            b.push_vote(order.iter().map(|n| ids[n]).collect());
        }
        let e = b.finish().unwrap();
        let kappa = BundlingFunction::identity(e.universe_size());
        ControlInstance::new(
            e,
            rule,
            ControlAction::DeleteCandidates,
            goal,
            false,
            kappa,
            ids[designated],
            budget,
        )
        .unwrap()
    }

    #[test]
    fn unanimous_top_is_yes_with_empty_witness() {
        let inst = deletion_instance(
            &[&["p", "a", "b"], &["p", "b", "a"]],
            &["p", "a", "b"],
            VotingRule::Plurality,
            ControlGoal::Constructive,
            "p",
            1,
        );
        let report = solve_ccdc_dcdc_voter_subsets(&inst).unwrap();
        assert!(report.is_yes());
        assert!(report.witness.as_ref().unwrap().chosen.is_empty());
    }

    #[test]
    fn deleting_the_common_front_runner_lets_p_tie() {
        let inst = deletion_instance(
            &[&["a", "p", "b"], &["a", "b", "p"]],
            &["a", "p", "b"],
            VotingRule::Plurality,
            ControlGoal::Constructive,
            "p",
            1,
        );
        let report = solve_ccdc_dcdc_voter_subsets(&inst).unwrap();
        assert!(report.is_yes());
        let w = report.witness.unwrap();
        assert!(verify_solution(&inst, &w));
        assert_eq!(w.chosen.len(), 1);
    }

    #[test]
    fn veto_destructive_pushes_despised_to_the_bottom() {
        // one voter: p > d > a; deleting a leaves d with the veto
        let inst = deletion_instance(
            &[&["p", "d", "a"]],
            &["p", "d", "a"],
            VotingRule::Veto,
            ControlGoal::Destructive,
            "d",
            1,
        );
        let report = solve_ccdc_dcdc_voter_subsets(&inst).unwrap();
        assert!(report.is_yes());
        assert!(verify_solution(&inst, report.witness.as_ref().unwrap()));
    }
}
