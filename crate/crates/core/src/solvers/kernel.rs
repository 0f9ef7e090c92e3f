//! Per-challenger Turing kernelization for destructive control by adding
//! candidates under approval-family rules, and the brute-force solver that
//! runs on top of it.
//!
//! For a fixed challenger the pool collapses to at most `t` candidates per
//! signature class relative to the challenger/despised pair, and registered
//! candidates that score no point (take no veto) can be dropped outright.
//! The shrunken instance decides the same as the original for that
//! challenger.

use std::collections::BTreeMap;

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::{BundlingFunction, CandidateId, CandidateSet};
use crate::error::{Error, Result};
use crate::oracle::{solve_control_bruteforce, WorkBudget};
use crate::rules::{score_all, veto_counts, winners};
use crate::solvers::signature::{flavor_of, SignatureVector};

/// Result of kernelizing for one challenger. Trivial shortcuts carry the
/// decision directly; otherwise the shrunken equivalent instance is
/// returned.
#[derive(Debug, Clone)]
pub enum KernelOutcome {
    Reduced(ControlInstance),
    /// Decided yes without search; the witness already verifies.
    TrivialYes(ControlSolution),
    /// This challenger can never out-score the despised candidate.
    TrivialNo,
}

/// Shrink a destructive adding instance for one challenger: drop irrelevant
/// registered candidates, group the pool by signature relative to the
/// challenger/despised pair, and keep at most `t` per class.
pub fn turing_kernelize_dcac(
    instance: &ControlInstance,
    challenger: CandidateId,
) -> Result<KernelOutcome> {
    let (flavor, t) = flavor_of(&instance.rule)
        .ok_or_else(|| Error::unsupported("kernelization needs an approval-family rule"))?;
    if instance.action != ControlAction::AddCandidates || instance.goal != ControlGoal::Destructive
    {
        return Err(Error::unsupported(
            "kernelization applies to destructive control by adding candidates",
        ));
    }
    if instance.combinatorial {
        return Err(Error::unsupported("kernelization covers the plain variant"));
    }
    let d = instance.designated;
    if challenger == d {
        return Err(Error::invalid_argument(
            "challenger must differ from the despised candidate",
        ));
    }

    if !winners(&instance.election, &instance.rule)?.contains(&d) {
        return Ok(KernelOutcome::TrivialYes(ControlSolution::empty()));
    }

    // Bring the challenger into the election if it sits in the pool.
    let (election, budget, added_challenger) = if instance.election.is_registered(challenger) {
        (instance.election.clone(), instance.budget, false)
    } else {
        if instance.budget == 0 {
            return Ok(KernelOutcome::TrivialNo);
        }
        let election = instance
            .election
            .add_candidates(&CandidateSet::from([challenger]))?;
        (election, instance.budget - 1, true)
    };

    // Adding candidates never raises an approval score, so a pointless
    // challenger stays pointless. Mirrored for vetoes: an unvetoed despised
    // candidate stays unvetoed.
    use crate::solvers::signature::Flavor;
    match flavor {
        Flavor::Points => {
            let scores = score_all(&election, &instance.rule)?;
            if scores.scores[&challenger] <= 0 {
                return Ok(KernelOutcome::TrivialNo);
            }
        }
        Flavor::Vetoes => {
            let vetoes = veto_counts(&election, t)?;
            if vetoes[&d] == 0 {
                return Ok(KernelOutcome::TrivialNo);
            }
        }
    }

    // Irrelevant registered candidates: zero points (zero vetoes). They sit
    // outside every voter's window, so forgetting them changes no score.
    let mut forget = CandidateSet::new();
    match flavor {
        Flavor::Points => {
            let scores = score_all(&election, &instance.rule)?;
            for (&c, &s) in &scores.scores {
                if s == 0 && c != d && c != challenger {
                    forget.insert(c);
                }
            }
        }
        Flavor::Vetoes => {
            let vetoes = veto_counts(&election, t)?;
            for (&c, &v) in &vetoes {
                if v == 0 && c != d && c != challenger {
                    forget.insert(c);
                }
            }
        }
    }

    // Group the remaining pool by signature; keep the t smallest ids per
    // class.
    let mut kept_per_class: BTreeMap<u32, u32> = BTreeMap::new();
    for &a in election.unregistered() {
        let code = SignatureVector::of(&election, a, challenger, d).encode();
        let kept = kept_per_class.entry(code).or_insert(0);
        if *kept < t {
            *kept += 1;
        } else {
            forget.insert(a);
        }
    }

    let kernel_election = election.forget(&forget)?;
    let budget = budget.min(kernel_election.unregistered().len() as u32);
    let kappa = BundlingFunction::identity(kernel_election.universe_size());
    let kernel = ControlInstance::new(
        kernel_election,
        instance.rule,
        ControlAction::AddCandidates,
        ControlGoal::Destructive,
        false,
        kappa,
        d,
        budget,
    )?;
    let _ = added_challenger;
    Ok(KernelOutcome::Reduced(kernel))
}

/// Kernel-plus-brute-force path: kernelize per challenger and exhaust each
/// kernel with the oracle.
pub fn solve_dcac_kernelized(
    instance: &ControlInstance,
    limit: &WorkBudget,
) -> Result<SolveReport> {
    const ALGO: &str = "kernel-bruteforce";
    let d = instance.designated;
    if !winners(&instance.election, &instance.rule)?.contains(&d) {
        return Ok(SolveReport::yes(ControlSolution::empty(), ALGO));
    }
    let mut kernels = 0u64;
    let challengers: Vec<CandidateId> = instance
        .election
        .registered()
        .iter()
        .chain(instance.election.unregistered().iter())
        .copied()
        .filter(|&c| c != d)
        .collect();
    for p in challengers {
        match turing_kernelize_dcac(instance, p)? {
            KernelOutcome::TrivialYes(w) => {
                return Ok(SolveReport::yes(w, ALGO).with_stat("kernels_built", kernels))
            }
            KernelOutcome::TrivialNo => continue,
            KernelOutcome::Reduced(kernel) => {
                kernels += 1;
                let sub = solve_control_bruteforce(&kernel, limit)?;
                if sub.is_yes() {
                    let mut chosen = sub.witness.unwrap().chosen;
                    if !instance.election.is_registered(p) {
                        chosen.insert(p);
                    }
                    return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO)
                        .with_stat("kernels_built", kernels));
                }
            }
        }
    }
    Ok(SolveReport::no(ALGO).with_stat("kernels_built", kernels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::ElectionBuilder;
    use crate::rules::VotingRule;

    fn pool_instance(pool_names: &[&str], budget: u32) -> (ControlInstance, CandidateId) {
        // two voters ranking the pool last; all pool candidates share a
        // signature, and the challenger keeps a point
        let mut b = ElectionBuilder::new();
        let d = b.add_registered("d");
        let p = b.add_registered("p");
        let pool: Vec<CandidateId> = pool_names.iter().map(|n| b.add_unregistered(*n)).collect();
        let mut order = vec![p, d];
        order.extend(pool.iter().copied());
        b.push_vote(order);
        let mut order = vec![d, p];
        order.extend(pool);
        b.push_vote(order);
        let e = b.finish().unwrap();
        let kappa = BundlingFunction::identity(e.universe_size());
        let inst = ControlInstance::new(
            e,
            VotingRule::Plurality,
            ControlAction::AddCandidates,
            ControlGoal::Destructive,
            false,
            kappa,
            d,
            budget,
        )
        .unwrap();
        (inst, p)
    }

    #[test]
    fn identical_signatures_collapse_to_window_size() {
        let (inst, p) = pool_instance(&["x1", "x2", "x3", "x4", "x5"], 2);
        match turing_kernelize_dcac(&inst, p).unwrap() {
            KernelOutcome::Reduced(kernel) => {
                assert_eq!(kernel.election.unregistered().len(), 1);
            }
            other => panic!("expected a reduced kernel, got {other:?}"),
        }
    }

    #[test]
    fn empty_pool_kernel_keeps_relevant_registered() {
        let mut b = ElectionBuilder::new();
        let d = b.add_registered("d");
        let p = b.add_registered("p");
        let z = b.add_registered("z");
        b.push_vote(vec![d, p, z]);
        b.push_vote(vec![p, d, z]);
        let e = b.finish().unwrap();
        let kappa = BundlingFunction::identity(e.universe_size());
        let inst = ControlInstance::new(
            e,
            VotingRule::Plurality,
            ControlAction::AddCandidates,
            ControlGoal::Destructive,
            false,
            kappa,
            d,
            0,
        )
        .unwrap();
        match turing_kernelize_dcac(&inst, p).unwrap() {
            KernelOutcome::Reduced(kernel) => {
                // z never scores and is forgotten; d and p stay
                assert!(kernel.election.is_registered(d));
                assert!(kernel.election.is_registered(p));
                assert!(!kernel.election.is_registered(z));
            }
            other => panic!("expected a reduced kernel, got {other:?}"),
        }
    }
}
