//! Destructive control by deleting candidates under t-Approval and t-Veto:
//! guess a challenger and, per voter, which of the pair gains a point after
//! the deletions; a small integer program over signature classes decides
//! whether the guess is implementable within budget.

use std::collections::BTreeMap;

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};
use crate::ip::{solve_ip, Cmp, Constraint, IntegerProgram};
use crate::oracle::WorkBudget;
use crate::rules::VotingRule;
use crate::solvers::signature::SignatureVector;

const ALGO: &str = "delta-ilp";
const MAX_VOTERS: usize = 10; // 4^n guesses and 3^n signature classes

/// Per-voter guess of who gains a point after deleting candidates:
/// 1 = only the despised candidate, 2 = only the challenger, 3 = both,
/// 4 = neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaVector {
    entries: Vec<u8>,
}

impl DeltaVector {
    pub fn decode(mut code: u64, n: usize) -> Self {
        let mut entries = vec![0u8; n];
        for slot in (0..n).rev() {
            entries[slot] = (code % 4) as u8 + 1;
            code /= 4;
        }
        DeltaVector { entries }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }
}

/// t-Approval-DCDC / t-Veto-DCDC. t-Veto runs the same machinery on the
/// reversed orders with points re-read as vetoes and the winning comparison
/// flipped.
pub fn solve_approval_dcdc_ilp(
    instance: &ControlInstance,
    limit: &WorkBudget,
) -> Result<SolveReport> {
    if instance.action != ControlAction::DeleteCandidates
        || instance.goal != ControlGoal::Destructive
        || instance.combinatorial
    {
        return Err(Error::unsupported(
            "the delta/ILP search covers plain destructive control by deleting candidates",
        ));
    }
    let (t, veto) = match instance.rule {
        VotingRule::TApproval(t) => (t, false),
        VotingRule::TVeto(t) => (t, true),
        _ => {
            return Err(Error::unsupported(
                "the delta/ILP search covers t-Approval and t-Veto",
            ))
        }
    };
    let n = instance.election.voter_count();
    if n > MAX_VOTERS {
        return Err(Error::exhausted(format!(
            "delta enumeration supports at most {MAX_VOTERS} voters"
        )));
    }
    let d = instance.designated;

    // Work in reversed space for t-Veto: a "point" there is a veto here.
    let working: Election = if veto {
        instance.election.reversed_orders()
    } else {
        instance.election.clone()
    };

    let mut ips_solved = 0u64;
    let challengers: Vec<CandidateId> = working
        .registered()
        .iter()
        .copied()
        .filter(|&c| c != d)
        .collect();
    for p in challengers {
        // existing candidates other than p and d, grouped by signature
        let mut classes: BTreeMap<u32, Vec<CandidateId>> = BTreeMap::new();
        for &c in working.registered() {
            if c == p || c == d {
                continue;
            }
            let code = SignatureVector::of(&working, c, d, p).encode();
            classes.entry(code).or_default().push(c);
        }
        let codes: Vec<u32> = classes.keys().copied().collect();
        let prefer_d: Vec<bool> = working
            .voters()
            .iter()
            .map(|v| v.prefers(d, p))
            .collect();

        for delta_code in 0..4u64.pow(n as u32) {
            let delta = DeltaVector::decode(delta_code, n);
            let gains_d = delta.entries().iter().filter(|&&e| e == 1).count();
            let gains_p = delta.entries().iter().filter(|&&e| e == 2).count();
            // points implied by the guess must leave the challenger ahead
            // (behind, for vetoes)
            let beats = if veto { gains_d > gains_p } else { gains_p > gains_d };
            if !beats {
                continue;
            }
            if !sanity_check(&delta, &prefer_d) {
                continue;
            }
            let program = build_program(&delta, &codes, &classes, n, t, instance.budget);
            ips_solved += 1;
            let result = solve_ip(&program, limit)?;
            if let Some(assignment) = result.assignment {
                let mut chosen = CandidateSet::new();
                for (slot, &code) in codes.iter().enumerate() {
                    let take = assignment[slot] as usize;
                    for &c in classes[&code].iter().take(take) {
                        chosen.insert(c);
                    }
                }
                return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO)
                    .with_stat("ips_solved", ips_solved));
            }
        }
    }
    Ok(SolveReport::no(ALGO).with_stat("ips_solved", ips_solved))
}

/// A guess is sane when each voter's pair order allows the guessed single
/// gainer: only d can gain alone if the voter prefers d to p, and vice
/// versa.
fn sanity_check(delta: &DeltaVector, prefer_d: &[bool]) -> bool {
    delta.entries().iter().zip(prefer_d).all(|(&e, &pd)| match e {
        1 => pd,
        2 => !pd,
        _ => true,
    })
}

/// Variables: deletions per signature class. Per voter, the remaining
/// candidates ahead of the pair's winner must fit the window and the loser
/// must be pushed out of it.
fn build_program(
    delta: &DeltaVector,
    codes: &[u32],
    classes: &BTreeMap<u32, Vec<CandidateId>>,
    n: usize,
    t: u32,
    budget: u32,
) -> IntegerProgram {
    let var_bounds: Vec<u64> = codes.iter().map(|c| classes[c].len() as u64).collect();
    let mut constraints = Vec::new();
    let digit = |code: u32, voter: usize| SignatureVector::decode(code, n).entries()[voter];

    // sum over a class family of (z - x) compared to rhs, rewritten over x
    let mut push = |family: &dyn Fn(u8) -> bool, voter: usize, cmp: Cmp, rhs: i64| {
        let mut coeffs = vec![0i64; codes.len()];
        let mut total = 0i64;
        for (slot, &code) in codes.iter().enumerate() {
            if family(digit(code, voter)) {
                coeffs[slot] = 1;
                total += classes[&code].len() as i64;
            }
        }
        // sum(z - x) <= rhs  <=>  sum(x) >= total - rhs
        // sum(z - x) >= rhs  <=>  sum(x) <= total - rhs
        let (cmp, rhs) = match cmp {
            Cmp::Le => (Cmp::Ge, total - rhs),
            Cmp::Ge => (Cmp::Le, total - rhs),
        };
        constraints.push(Constraint { coeffs, cmp, rhs });
    };

    let ahead_of_both = |g: u8| g == 3;
    let ahead_of_loser = |g: u8| g == 3 || g == 2;
    for (voter, &guess) in delta.entries().iter().enumerate() {
        match guess {
            1 | 2 => {
                // the gainer needs the window: at most t-1 others ahead of both
                push(&ahead_of_both, voter, Cmp::Le, t as i64 - 1);
                // the loser stays out: at least t-1 others ahead of it
                push(&ahead_of_loser, voter, Cmp::Ge, t as i64 - 1);
            }
            3 => {
                // both inside the window
                push(&ahead_of_loser, voter, Cmp::Le, t as i64 - 2);
            }
            _ => {
                // neither inside the window
                push(&ahead_of_both, voter, Cmp::Ge, t as i64);
            }
        }
    }
    IntegerProgram {
        var_bounds,
        constraints,
        budget: Some(budget as u64),
    }
}
