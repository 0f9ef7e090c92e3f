//! Guess-and-check solvers for the control problems that are polynomial
//! only for a fixed number of voters: constructive adding/deleting under
//! approval-family rules, and the combinatorial adding variants.
//!
//! Per voter we guess the final top window (bottom window for veto-style
//! rules); the candidate additions/deletions implementing a guess are
//! forced, so each guess is checked directly against the real winner set.
//! Guesses are enumerated odometer-style and abandoned as soon as the
//! forced action set exceeds the budget.

use std::collections::BTreeSet;

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::{CandidateId, CandidateSet};
use crate::error::{Error, Result};
use crate::oracle::{next_combination, WorkBudget, WorkMeter};
use crate::rules::winners_over_active;
use crate::solvers::signature::{flavor_of, vote_positions, Flavor};

const ALGO: &str = "xp-guess";

struct GuessContext<'a> {
    instance: &'a ControlInstance,
    flavor: Flavor,
    t: usize,
    /// candidates a per-voter window may be guessed from
    universe: Vec<CandidateId>,
    /// direction-adjusted position per voter and candidate
    dpos: Vec<Vec<u32>>,
}

impl<'a> GuessContext<'a> {
    fn goal_met(&self, active: &CandidateSet) -> Result<bool> {
        let winner_set =
            winners_over_active(&self.instance.election, &self.instance.rule, active)?;
        Ok(match self.instance.goal {
            ControlGoal::Constructive => winner_set.contains(&self.instance.designated),
            ControlGoal::Destructive => !winner_set.contains(&self.instance.designated),
        })
    }
}

/// XP guess-and-check for t-Approval/t-Veto (including Plurality and Veto
/// as t = 1): plain CCAC and CCDC, and the combinatorial adding variants
/// Comb-CCAC and Comb-DCAC.
pub fn solve_approval_xp(instance: &ControlInstance, limit: &WorkBudget) -> Result<SolveReport> {
    let (flavor, t) = flavor_of(&instance.rule)
        .ok_or_else(|| Error::unsupported("the XP search needs an approval-family rule"))?;
    let supported = matches!(
        (instance.action, instance.goal, instance.combinatorial),
        (ControlAction::AddCandidates, ControlGoal::Constructive, _)
            | (ControlAction::DeleteCandidates, ControlGoal::Constructive, false)
            | (ControlAction::AddCandidates, ControlGoal::Destructive, true)
    );
    if !supported {
        return Err(Error::unsupported(
            "the XP search covers CCAC, CCDC, Comb-CCAC and Comb-DCAC",
        ));
    }

    let election = &instance.election;
    let mut meter = WorkMeter::new(limit);

    // no action needed
    let baseline: CandidateSet = election.registered().clone();
    let ctx = GuessContext {
        instance,
        flavor,
        t: t as usize,
        universe: match instance.action {
            ControlAction::DeleteCandidates => election.registered().iter().copied().collect(),
            ControlAction::AddCandidates => election
                .registered()
                .iter()
                .chain(election.unregistered())
                .copied()
                .collect(),
        },
        dpos: {
            let positions = vote_positions(election);
            match flavor {
                Flavor::Points => positions,
                Flavor::Vetoes => positions
                    .into_iter()
                    .map(|row| {
                        let len = election.universe_size() as u32;
                        row.into_iter()
                            .map(|p| if p == u32::MAX { p } else { len - 1 - p })
                            .collect()
                    })
                    .collect(),
            }
        },
    };
    if ctx.goal_met(&baseline)? {
        return Ok(SolveReport::yes(ControlSolution::empty(), ALGO));
    }

    // Deleting down to a field of at most t candidates makes everyone tie,
    // which hands constructive control a free win.
    if instance.action == ControlAction::DeleteCandidates {
        let m = election.registered_count();
        if m > t as usize && instance.budget as usize >= m - t as usize {
            let chosen: CandidateSet = election
                .registered()
                .iter()
                .rev()
                .filter(|&&c| c != instance.designated)
                .take(m - t as usize)
                .copied()
                .collect();
            let active: CandidateSet =
                election.registered().difference(&chosen).copied().collect();
            if ctx.goal_met(&active)? {
                return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO));
            }
        }
    }

    let n = election.voter_count();
    let result = if n == 0 {
        None
    } else {
        let mut windows: Vec<Vec<CandidateId>> = vec![Vec::new(); n];
        descend(&ctx, 0, &mut windows, &CandidateSet::new(), &mut meter)?
    };
    let report = match result {
        Some(chosen) => SolveReport::yes(ControlSolution::new(chosen), ALGO),
        None => SolveReport::no(ALGO),
    };
    Ok(report
        .with_stat("guesses", meter.used())
        .with_stat("wall_ms", meter.elapsed_ms()))
}

/// Forced actions implied by guessing `window` as voter `i`'s final top
/// (bottom) t set: every non-window candidate ranked inside the guessed
/// span must be deleted (for added candidates: must not exist, which only
/// window members may).
fn forced_for_voter(
    ctx: &GuessContext,
    voter: usize,
    window: &[CandidateId],
) -> Option<CandidateSet> {
    let dpos = &ctx.dpos[voter];
    let span = window.iter().map(|c| dpos[c.index()]).max()?;
    match ctx.instance.action {
        ControlAction::DeleteCandidates => {
            let mut forced = CandidateSet::new();
            for &c in ctx.instance.election.registered() {
                if dpos[c.index()] < span && !window.contains(&c) {
                    forced.insert(c);
                }
            }
            Some(forced)
        }
        ControlAction::AddCandidates => {
            // pool members inside the guessed window must join the election
            Some(window.iter().copied().filter(|c| !ctx.instance.election.is_registered(*c)).collect())
        }
    }
}

/// Depth-first odometer over per-voter window guesses.
fn descend(
    ctx: &GuessContext,
    voter: usize,
    windows: &mut Vec<Vec<CandidateId>>,
    forced: &CandidateSet,
    meter: &mut WorkMeter,
) -> Result<Option<CandidateSet>> {
    let n = ctx.instance.election.voter_count();
    if voter == n {
        return finalize(ctx, windows, forced, meter);
    }
    let m = ctx.universe.len();
    if m < ctx.t {
        return Ok(None);
    }
    let deleting = ctx.instance.action == ControlAction::DeleteCandidates;
    let mut indices: Vec<usize> = (0..ctx.t).collect();
    loop {
        meter.tick()?;
        let window: Vec<CandidateId> = indices.iter().map(|&i| ctx.universe[i]).collect();
        // when deleting, a guessed window member an earlier voter forced
        // out is a contradiction
        let consistent = !deleting || window.iter().all(|c| !forced.contains(c));
        if consistent {
            if let Some(new_forced) = forced_for_voter(ctx, voter, &window) {
                let merged: CandidateSet = forced.union(&new_forced).copied().collect();
                let viable = match ctx.instance.action {
                    ControlAction::DeleteCandidates => {
                        merged.len() <= ctx.instance.budget as usize
                            && !merged.contains(&ctx.instance.designated)
                            && windows[..voter]
                                .iter()
                                .all(|w| w.iter().all(|c| !merged.contains(c)))
                            && window.iter().all(|c| !merged.contains(c))
                    }
                    // bundles can cover several forced additions; the exact
                    // budget check happens at the ownership stage
                    ControlAction::AddCandidates => {
                        ctx.instance.combinatorial
                            || merged.len() <= ctx.instance.budget as usize
                    }
                };
                if viable {
                    windows[voter] = window;
                    if let Some(hit) = descend(ctx, voter + 1, windows, &merged, meter)? {
                        return Ok(Some(hit));
                    }
                }
            }
        }
        if !next_combination(&mut indices, m) {
            break;
        }
    }
    Ok(None)
}

fn finalize(
    ctx: &GuessContext,
    windows: &[Vec<CandidateId>],
    forced: &CandidateSet,
    meter: &mut WorkMeter,
) -> Result<Option<CandidateSet>> {
    let instance = ctx.instance;
    let election = &instance.election;
    match instance.action {
        ControlAction::DeleteCandidates => {
            meter.tick()?;
            let mut deletions = forced.clone();
            if ctx.flavor == Flavor::Vetoes {
                // unvetoed leftovers would undercut every vetoed candidate;
                // a guess that vetoes the designated candidate must clear them
                let in_windows: BTreeSet<CandidateId> =
                    windows.iter().flatten().copied().collect();
                if in_windows.contains(&instance.designated) {
                    for &c in election.registered() {
                        if !in_windows.contains(&c) && c != instance.designated {
                            deletions.insert(c);
                        }
                    }
                }
            }
            if deletions.len() > instance.budget as usize
                || deletions.contains(&instance.designated)
            {
                return Ok(None);
            }
            let active: CandidateSet = election
                .registered()
                .difference(&deletions)
                .copied()
                .collect();
            if active.is_empty() {
                return Ok(None);
            }
            if ctx.goal_met(&active)? {
                return Ok(Some(deletions));
            }
            Ok(None)
        }
        ControlAction::AddCandidates if !instance.combinatorial => {
            meter.tick()?;
            if forced.len() > instance.budget as usize {
                return Ok(None);
            }
            let active: CandidateSet = election.registered().union(forced).copied().collect();
            if ctx.goal_met(&active)? {
                return Ok(Some(forced.clone()));
            }
            Ok(None)
        }
        ControlAction::AddCandidates => ownerships(ctx, forced, meter),
    }
}

/// Combinatorial adding: per forced addition, guess the bundle that owns
/// it; identical closed sets are deduplicated. Destructive variants may
/// additionally spend one bundle on a challenger outside the guessed
/// windows (a veto-family challenger can win without taking any window
/// slot).
fn ownerships(
    ctx: &GuessContext,
    forced: &CandidateSet,
    meter: &mut WorkMeter,
) -> Result<Option<CandidateSet>> {
    let instance = ctx.instance;
    let election = &instance.election;
    let pool: Vec<CandidateId> = election.unregistered().iter().copied().collect();
    let owners_of: Vec<Vec<CandidateId>> = forced
        .iter()
        .map(|&f| {
            pool.iter()
                .copied()
                .filter(|&b| {
                    instance
                        .kappa
                        .bundle(b)
                        .map(|set| set.contains(&f))
                        .unwrap_or(false)
                })
                .collect()
        })
        .collect();
    if owners_of.iter().any(|o| o.is_empty()) {
        return Ok(None);
    }
    let mut seen: BTreeSet<Vec<CandidateId>> = BTreeSet::new();
    let mut pick = vec![0usize; owners_of.len()];
    loop {
        meter.tick()?;
        let owners: CandidateSet = pick
            .iter()
            .enumerate()
            .map(|(slot, &i)| owners_of[slot][i])
            .collect();
        let key: Vec<CandidateId> = owners.iter().copied().collect();
        if seen.insert(key) && owners.len() <= instance.budget as usize {
            let closed = instance.kappa.closure(&owners)?;
            let added: CandidateSet = closed
                .intersection(election.unregistered())
                .copied()
                .collect();
            let active: CandidateSet = election.registered().union(&added).copied().collect();
            if ctx.goal_met(&active)? {
                return Ok(Some(owners));
            }
            if instance.goal == ControlGoal::Destructive
                && owners.len() < instance.budget as usize
            {
                for &extra in &pool {
                    if owners.contains(&extra) {
                        continue;
                    }
                    meter.tick()?;
                    let mut extended = owners.clone();
                    extended.insert(extra);
                    let closed = instance.kappa.closure(&extended)?;
                    let added: CandidateSet = closed
                        .intersection(election.unregistered())
                        .copied()
                        .collect();
                    let active: CandidateSet =
                        election.registered().union(&added).copied().collect();
                    if ctx.goal_met(&active)? {
                        return Ok(Some(extended));
                    }
                }
            }
        }
        // odometer over ownership picks; empty forced set means one pass
        if pick.is_empty() {
            return Ok(None);
        }
        let mut slot = pick.len();
        loop {
            if slot == 0 {
                return Ok(None);
            }
            slot -= 1;
            pick[slot] += 1;
            if pick[slot] < owners_of[slot].len() {
                break;
            }
            pick[slot] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::verify_solution;
    use crate::election::{BundlingFunction, ElectionBuilder};
    use crate::rules::VotingRule;
    use std::collections::BTreeMap;

    fn build(
        orders: &[&[&str]],
        registered: &[&str],
        pool: &[&str],
        rule: VotingRule,
        action: ControlAction,
        goal: ControlGoal,
        comb: bool,
        designated: &str,
        budget: u32,
    ) -> (ControlInstance, BTreeMap<String, CandidateId>) {
        let mut b = ElectionBuilder::new();
        let mut ids = BTreeMap::new();
        for &r in registered {
            ids.insert(r.to_string(), b.add_registered(r));
        }
        for &a in pool {
            ids.insert(a.to_string(), b.add_unregistered(a));
        }
        for order in orders {
            b.push_vote(order.iter().map(|n| ids[&n.to_string()]).collect());
        }
        let e = b.finish().unwrap();
        let kappa = BundlingFunction::identity(e.universe_size());
        let inst = ControlInstance::new(e, rule, action, goal, comb, kappa, ids[designated], budget)
            .unwrap();
        (inst, ids)
    }

    #[test]
    fn already_winning_needs_no_action() {
        let (inst, _) = build(
            &[&["p", "a", "x"]],
            &["p", "a"],
            &["x"],
            VotingRule::Plurality,
            ControlAction::AddCandidates,
            ControlGoal::Constructive,
            false,
            "p",
            0,
        );
        let report = solve_approval_xp(&inst, &WorkBudget::default()).unwrap();
        assert!(report.is_yes());
        assert!(report.witness.unwrap().chosen.is_empty());
    }

    #[test]
    fn ccac_adds_a_spoiler_to_split_the_leader() {
        // a leads 2:1; adding x steals one of a's first places and the
        // field ties at one point each
        let (inst, ids) = build(
            &[&["x", "a", "p", "b"], &["a", "p", "b", "x"], &["p", "a", "b", "x"]],
            &["a", "p", "b"],
            &["x"],
            VotingRule::Plurality,
            ControlAction::AddCandidates,
            ControlGoal::Constructive,
            false,
            "p",
            1,
        );
        let report = solve_approval_xp(&inst, &WorkBudget::default()).unwrap();
        assert!(report.is_yes());
        let w = report.witness.unwrap();
        assert_eq!(w.chosen, CandidateSet::from([ids["x"]]));
        assert!(verify_solution(&inst, &w));
    }

    #[test]
    fn veto_ccdc_uses_the_all_tie_escape_when_cheap() {
        // p takes both vetoes; deleting down to one candidate field is the
        // only way p ever wins
        let (inst, _) = build(
            &[&["a", "b", "p"], &["b", "a", "p"]],
            &["p", "a", "b"],
            &[],
            VotingRule::Veto,
            ControlAction::DeleteCandidates,
            ControlGoal::Constructive,
            false,
            "p",
            2,
        );
        let report = solve_approval_xp(&inst, &WorkBudget::default()).unwrap();
        assert!(report.is_yes());
        assert!(verify_solution(&inst, report.witness.as_ref().unwrap()));
    }

    #[test]
    fn comb_dcac_veto_challenger_outside_every_window() {
        // d and a trade vetoes; adding c (never last) undercuts both
        let (inst, ids) = build(
            &[&["a", "c", "d"], &["d", "c", "a"]],
            &["d", "a"],
            &["c"],
            VotingRule::Veto,
            ControlAction::AddCandidates,
            ControlGoal::Destructive,
            true,
            "d",
            1,
        );
        let report = solve_approval_xp(&inst, &WorkBudget::default()).unwrap();
        assert!(report.is_yes());
        let w = report.witness.unwrap();
        assert_eq!(w.chosen, CandidateSet::from([ids["c"]]));
        assert!(verify_solution(&inst, &w));
    }
}
