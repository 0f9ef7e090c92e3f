//! Destructive control by adding candidates under Maximin, combinatorial or
//! plain: whenever any number of bundles dethrones the despised candidate,
//! two well-chosen bundles already do (one carrying a challenger, one
//! carrying the candidate realizing the despised candidate's minimum), so
//! trying the empty set, every single bundle and every bundle pair decides
//! the problem in polynomial time.

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::{CandidateId, CandidateSet};
use crate::error::{Error, Result};
use crate::rules::{winners_over_active, VotingRule};

const ALGO: &str = "two-bundle";

pub fn solve_maximin_comb_dcac(instance: &ControlInstance) -> Result<SolveReport> {
    if instance.rule != VotingRule::Maximin
        || instance.action != ControlAction::AddCandidates
        || instance.goal != ControlGoal::Destructive
    {
        return Err(Error::unsupported(
            "the two-bundle search covers destructive Maximin control by adding candidates",
        ));
    }
    let election = &instance.election;
    let d = instance.designated;
    let mut checks = 0u64;

    let mut try_choice = |chosen: CandidateSet| -> Result<Option<SolveReport>> {
        checks += 1;
        if chosen.len() > instance.budget as usize {
            return Ok(None);
        }
        let closed = instance.kappa.closure(&chosen)?;
        let active: CandidateSet = election
            .registered()
            .iter()
            .copied()
            .chain(closed.into_iter())
            .collect();
        let winner_set = winners_over_active(election, &instance.rule, &active)?;
        if !winner_set.contains(&d) {
            Ok(Some(SolveReport::yes(ControlSolution::new(chosen), ALGO)))
        } else {
            Ok(None)
        }
    };

    if let Some(report) = try_choice(CandidateSet::new())? {
        return Ok(report.with_stat("choices_checked", checks));
    }
    let pool: Vec<CandidateId> = election.unregistered().iter().copied().collect();
    for &a in &pool {
        if let Some(report) = try_choice(CandidateSet::from([a]))? {
            return Ok(report.with_stat("choices_checked", checks));
        }
    }
    for (i, &a) in pool.iter().enumerate() {
        for &b in &pool[i + 1..] {
            if let Some(report) = try_choice(CandidateSet::from([a, b]))? {
                return Ok(report.with_stat("choices_checked", checks));
            }
        }
    }
    Ok(SolveReport::no(ALGO).with_stat("choices_checked", checks))
}
