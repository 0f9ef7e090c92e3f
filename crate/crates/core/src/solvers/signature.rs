//! Signature-based fixed-parameter solvers for destructive control by
//! adding candidates.
//!
//! Common scheme: guess a challenger `p` that is to out-score the despised
//! candidate `d`, abstract every pool candidate (or bundle) into a per-voter
//! signature, and run a table DP over signatures. Tables are dense arrays
//! indexed by the signature encoding; entries hold the minimal number of
//! pool picks realizing the signature (budget+1 meaning impossible), with
//! predecessor links so yes answers carry a concrete witness.

use std::collections::BTreeMap;

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};
use crate::rules::winners;

/// Largest voter count for the 2^n binary-signature tables.
pub const MAX_BINARY_VOTERS: usize = 16;
/// Caps for the counted-signature tables: total digits and table cells.
pub const MAX_COUNTED_DIGITS: usize = 16;
pub const MAX_COUNTED_CELLS: usize = 1 << 22;

/// Relative position of a candidate with respect to a reference pair, per
/// voter: 3 = ahead of both, 2 = between, 1 = behind both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureVector {
    entries: Vec<u8>,
}

impl SignatureVector {
    /// Signature of `c` with respect to `{a, b}` over all voters.
    pub fn of(election: &Election, c: CandidateId, a: CandidateId, b: CandidateId) -> Self {
        let entries = election
            .voters()
            .iter()
            .map(|v| match (v.prefers(c, a), v.prefers(c, b)) {
                (true, true) => 3,
                (false, false) => 1,
                _ => 2,
            })
            .collect();
        SignatureVector { entries }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Base-3 encoding; round-trips with [`SignatureVector::decode`].
    pub fn encode(&self) -> u32 {
        self.entries
            .iter()
            .fold(0u32, |acc, &e| acc * 3 + (e - 1) as u32)
    }

    pub fn decode(mut code: u32, n: usize) -> Self {
        let mut entries = vec![0u8; n];
        for slot in (0..n).rev() {
            entries[slot] = (code % 3) as u8 + 1;
            code /= 3;
        }
        SignatureVector { entries }
    }
}

/// Per-voter bounded count vectors: entry `[i][j]` counts added candidates
/// that voter `i` prefers to all but `j` of the registered field, capped at
/// `t`. Two disjoint added sets merge by capped component-wise sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleCountSignature {
    entries: Vec<Vec<u8>>,
    t: u8,
}

impl BundleCountSignature {
    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn merge(&self, other: &BundleCountSignature) -> BundleCountSignature {
        debug_assert_eq!(self.t, other.t);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(&x, &y)| (x + y).min(self.t))
                    .collect()
            })
            .collect();
        BundleCountSignature { entries, t: self.t }
    }

    pub fn encode(&self) -> u32 {
        let base = self.t as u32 + 1;
        self.entries
            .iter()
            .flatten()
            .fold(0u32, |acc, &e| acc * base + e as u32)
    }

    pub fn decode(mut code: u32, n: usize, t: u8) -> Self {
        let base = t as u32 + 1;
        let mut flat = vec![0u8; n * t as usize];
        for slot in (0..flat.len()).rev() {
            flat[slot] = (code % base) as u8;
            code /= base;
        }
        let entries = flat.chunks(t as usize).map(|c| c.to_vec()).collect();
        BundleCountSignature { entries, t }
    }

    /// Signature of one added candidate: voter `i` contributes the 0/1
    /// step vector determined by how many registered candidates the voter
    /// ranks ahead of it.
    pub fn of_candidate(ahead_counts: &[u32], t: u8) -> Self {
        let entries = ahead_counts
            .iter()
            .map(|&r| (0..t).map(|j| u8::from(r <= j as u32)).collect())
            .collect();
        BundleCountSignature { entries, t }
    }
}

/// Map from signature states to minimal realizing-set sizes, with
/// predecessor links for witness reconstruction.
#[derive(Debug, Clone)]
pub struct SignatureTable {
    counts: Vec<u32>,
    preds: Vec<Option<(u32, CandidateId)>>,
    impossible: u32,
}

impl SignatureTable {
    pub fn count(&self, state: u32) -> u32 {
        self.counts[state as usize]
    }

    pub fn impossible(&self) -> u32 {
        self.impossible
    }

    pub fn cells(&self) -> usize {
        self.counts.len()
    }

    /// Walk predecessor links back to an initialization entry.
    fn witness(&self, mut state: u32) -> CandidateSet {
        let mut chosen = CandidateSet::new();
        while let Some((prev, pick)) = self.preds[state as usize] {
            chosen.insert(pick);
            if prev == state {
                break;
            }
            state = prev;
        }
        chosen
    }

    /// Fold `picks` into a table under `merge`, keeping minimal counts.
    /// `merge` must be monotone (the merged state never shrinks), which the
    /// bitwise-or and capped-sum merges both are; this keeps predecessor
    /// chains acyclic. A candidate's singleton entry appears only at its
    /// own turn so no chain uses the same candidate twice — with capped
    /// sums a duplicate would corrupt the realized signature.
    fn build<F>(cells: usize, impossible: u32, picks: &[(CandidateId, u32)], merge: F) -> Self
    where
        F: Fn(u32, u32) -> u32,
    {
        let mut table = SignatureTable {
            counts: vec![impossible; cells],
            preds: vec![None; cells],
            impossible,
        };
        let mut next_counts = table.counts.clone();
        let mut next_preds = table.preds.clone();
        for &(cand, sig) in picks {
            if 1 < next_counts[sig as usize] {
                next_counts[sig as usize] = 1;
                next_preds[sig as usize] = Some((sig, cand));
            }
            for state in 0..cells as u32 {
                let cur = table.counts[state as usize];
                if cur >= impossible {
                    continue;
                }
                let merged = merge(state, sig);
                if merged == state {
                    continue;
                }
                let cost = cur + 1;
                if cost < next_counts[merged as usize] {
                    next_counts[merged as usize] = cost;
                    next_preds[merged as usize] = Some((state, cand));
                }
            }
            table.counts.copy_from_slice(&next_counts);
            table.preds.clone_from(&next_preds);
        }
        table
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flavor {
    Points,
    Vetoes,
}

pub(crate) fn flavor_of(rule: &crate::rules::VotingRule) -> Option<(Flavor, u32)> {
    if let Some(t) = rule.approval_window() {
        Some((Flavor::Points, t))
    } else {
        rule.veto_window().map(|t| (Flavor::Vetoes, t))
    }
}

/// Rank of every candidate in every vote (0 = most preferred).
pub(crate) fn vote_positions(election: &Election) -> Vec<Vec<u32>> {
    election
        .voters()
        .iter()
        .map(|v| {
            let mut pos = vec![u32::MAX; election.universe_size()];
            for (j, &c) in v.ranking().iter().enumerate() {
                pos[c.index()] = j as u32;
            }
            pos
        })
        .collect()
}

/// Per-voter registered extreme: the Plurality point taker, or the Veto
/// veto taker when `flavor` is `Vetoes`.
fn registered_extremes(election: &Election, flavor: Flavor) -> Vec<CandidateId> {
    election
        .voters()
        .iter()
        .map(|v| {
            let found = match flavor {
                Flavor::Points => v.ranking().iter().find(|c| election.is_registered(**c)),
                Flavor::Vetoes => v
                    .ranking()
                    .iter()
                    .rev()
                    .find(|c| election.is_registered(**c)),
            };
            *found.expect("an election always keeps a registered candidate")
        })
        .collect()
}

/// Binary signature of an added set: bit i set when some member takes voter
/// i's point (veto) away from the registered field.
fn binary_signature(
    positions: &[Vec<u32>],
    extremes: &[CandidateId],
    members: &CandidateSet,
    flavor: Flavor,
) -> u32 {
    let mut sig = 0u32;
    for (i, &edge) in extremes.iter().enumerate() {
        let edge_pos = positions[i][edge.index()];
        let beats = members.iter().any(|m| {
            let mp = positions[i][m.index()];
            match flavor {
                Flavor::Points => mp < edge_pos,
                Flavor::Vetoes => mp > edge_pos,
            }
        });
        if beats {
            sig |= 1 << i;
        }
    }
    sig
}

/// Pool candidates as bundle owners paired with the candidate set their
/// choice actually brings in (identity bundles in the plain setting).
fn pool_bundles(
    instance: &ControlInstance,
    election: &Election,
) -> Vec<(CandidateId, CandidateSet)> {
    election
        .unregistered()
        .iter()
        .map(|&owner| {
            let closed = instance
                .kappa
                .closure(&CandidateSet::from([owner]))
                .expect("bundling domain covers the pool");
            let added: CandidateSet = closed
                .iter()
                .copied()
                .filter(|c| !election.is_registered(*c))
                .collect();
            (owner, added)
        })
        .collect()
}

/// Plurality/Veto destructive control by adding candidates, plain or
/// combinatorial, via the 2^n binary-signature table.
pub fn solve_dcac_signature_plurality_veto(instance: &ControlInstance) -> Result<SolveReport> {
    const ALGO: &str = "signature-dp";
    let (flavor, t) = flavor_of(&instance.rule)
        .ok_or_else(|| Error::unsupported("signature DP needs an approval-family rule"))?;
    if t != 1 {
        return Err(Error::unsupported(
            "the binary signature DP covers Plurality and Veto only",
        ));
    }
    if instance.action != ControlAction::AddCandidates || instance.goal != ControlGoal::Destructive
    {
        return Err(Error::unsupported(
            "signature DP solves destructive control by adding candidates",
        ));
    }
    let n = instance.election.voter_count();
    if n > MAX_BINARY_VOTERS {
        return Err(Error::exhausted(format!(
            "binary signature tables support at most {MAX_BINARY_VOTERS} voters"
        )));
    }
    let d = instance.designated;
    if !winners(&instance.election, &instance.rule)?.contains(&d) {
        return Ok(SolveReport::yes(ControlSolution::empty(), ALGO));
    }
    let mut signatures_built = 0u64;

    // Challengers already registered share one table over the unchanged
    // election; the accept scan below covers all of them at once.
    if let Some(chosen) = binary_pass(instance, &instance.election, instance.budget, flavor, None, &mut signatures_built)
    {
        return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO)
            .with_stat("signatures_built", signatures_built));
    }
    // Pool challengers: each way of adding a bundle that registers a new
    // candidate gets its own pass with the bundle pre-added.
    if instance.budget >= 1 {
        let owners: Vec<CandidateId> = instance.election.unregistered().iter().copied().collect();
        for owner in owners {
            let closed = instance.kappa.closure(&CandidateSet::from([owner]))?;
            let brings_new_challenger = closed
                .iter()
                .any(|&c| c != d && !instance.election.is_registered(c));
            if !brings_new_challenger {
                continue;
            }
            let to_add: CandidateSet = closed
                .intersection(instance.election.unregistered())
                .copied()
                .collect();
            let election = instance.election.add_candidates(&to_add)?;
            if let Some(mut chosen) = binary_pass(
                instance,
                &election,
                instance.budget - 1,
                flavor,
                Some(owner),
                &mut signatures_built,
            ) {
                chosen.insert(owner);
                return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO)
                    .with_stat("signatures_built", signatures_built));
            }
        }
    }
    Ok(SolveReport::no(ALGO).with_stat("signatures_built", signatures_built))
}

fn binary_pass(
    instance: &ControlInstance,
    election: &Election,
    budget: u32,
    flavor: Flavor,
    exclude_owner: Option<CandidateId>,
    signatures_built: &mut u64,
) -> Option<CandidateSet> {
    let positions = vote_positions(election);
    let extremes = registered_extremes(election, flavor);
    let picks: Vec<(CandidateId, u32)> = pool_bundles(instance, election)
        .into_iter()
        .filter(|(o, _)| Some(*o) != exclude_owner)
        .map(|(o, added)| {
            *signatures_built += 1;
            (o, binary_signature(&positions, &extremes, &added, flavor))
        })
        .collect();
    let n = election.voter_count();
    let registered_non_d = election
        .registered()
        .iter()
        .filter(|&&c| c != instance.designated)
        .count();
    let table = SignatureTable::build(1 << n, budget + 1, &picks, |s, sig| s | sig);
    let state = accept_binary(
        instance.designated,
        &extremes,
        registered_non_d,
        n,
        budget,
        &table,
        flavor,
    )?;
    Some(if state == 0 {
        CandidateSet::new()
    } else {
        table.witness(state)
    })
}

/// Find the cheapest accepting signature. Voters whose bit is unset keep
/// giving their point (veto) to the registered extreme; set bits divert it
/// to an added candidate.
fn accept_binary(
    despised: CandidateId,
    extremes: &[CandidateId],
    registered_non_d: usize,
    n: usize,
    budget: u32,
    table: &SignatureTable,
    flavor: Flavor,
) -> Option<u32> {
    let mut best: Option<(u32, u32)> = None;
    for state in 0..(1u32 << n) {
        let cost = if state == 0 { 0 } else { table.count(state) };
        if cost > budget {
            continue;
        }
        let mut tally: BTreeMap<CandidateId, u32> = BTreeMap::new();
        for (i, &edge) in extremes.iter().enumerate() {
            if state & (1 << i) == 0 {
                *tally.entry(edge).or_insert(0) += 1;
            }
        }
        let d_count = tally.get(&despised).copied().unwrap_or(0);
        let accept = match flavor {
            Flavor::Points => tally.iter().any(|(&c, &cnt)| c != despised && cnt > d_count),
            Flavor::Vetoes => {
                if d_count == 0 {
                    false
                } else {
                    let non_d: Vec<u32> = tally
                        .iter()
                        .filter(|(&c, _)| c != despised)
                        .map(|(_, &cnt)| cnt)
                        .collect();
                    // unmentioned registered candidates carry zero vetoes
                    non_d.len() < registered_non_d
                        || non_d.iter().copied().min().map(|m| m < d_count).unwrap_or(false)
                }
            }
        };
        if accept {
            best = match best {
                None => Some((cost, state)),
                Some((c, _)) if cost < c => Some((cost, state)),
                other => other,
            };
        }
    }
    best.map(|(_, s)| s)
}

/// t-Approval / t-Veto destructive control by adding candidates (t >= 2,
/// non-combinatorial) via counted signature tables.
pub fn solve_dcac_signature_approval(instance: &ControlInstance) -> Result<SolveReport> {
    const ALGO: &str = "signature-dp-approval";
    let (flavor, t) = flavor_of(&instance.rule)
        .ok_or_else(|| Error::unsupported("signature DP needs an approval-family rule"))?;
    if t < 2 {
        return Err(Error::unsupported(
            "use the binary signature DP for Plurality and Veto",
        ));
    }
    if instance.action != ControlAction::AddCandidates || instance.goal != ControlGoal::Destructive
    {
        return Err(Error::unsupported(
            "signature DP solves destructive control by adding candidates",
        ));
    }
    if instance.combinatorial {
        return Err(Error::unsupported(
            "bundles of differing sizes break counted signatures; use the XP solver",
        ));
    }
    let n = instance.election.voter_count();
    let digits = n * t as usize;
    let cells = (t as u64 + 1).checked_pow(digits as u32);
    match cells {
        Some(c) if digits <= MAX_COUNTED_DIGITS && c <= MAX_COUNTED_CELLS as u64 => {}
        _ => {
            return Err(Error::exhausted(format!(
                "counted signature table too large (t={t}, n={n})"
            )))
        }
    }
    let d = instance.designated;
    if !winners(&instance.election, &instance.rule)?.contains(&d) {
        return Ok(SolveReport::yes(ControlSolution::empty(), ALGO));
    }
    let mut signatures_built = 0u64;

    // Registered challengers over the unchanged election.
    for p in instance.election.registered().iter().copied() {
        if p == d {
            continue;
        }
        if let Some(chosen) = counted_pass(
            instance,
            &instance.election,
            instance.budget,
            flavor,
            t,
            p,
            None,
            &mut signatures_built,
        ) {
            return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO)
                .with_stat("signatures_built", signatures_built));
        }
    }
    if instance.budget >= 1 {
        let pool: Vec<CandidateId> = instance.election.unregistered().iter().copied().collect();
        for p in pool {
            if p == d {
                continue;
            }
            let election = instance.election.add_candidates(&CandidateSet::from([p]))?;
            if let Some(mut chosen) = counted_pass(
                instance,
                &election,
                instance.budget - 1,
                flavor,
                t,
                p,
                Some(p),
                &mut signatures_built,
            ) {
                chosen.insert(p);
                return Ok(SolveReport::yes(ControlSolution::new(chosen), ALGO)
                    .with_stat("signatures_built", signatures_built));
            }
        }
    }
    Ok(SolveReport::no(ALGO).with_stat("signatures_built", signatures_built))
}

/// One counted-table DP for a fixed challenger; `flavor` decides whether
/// positions are taken from the top (points) or bottom (vetoes) of votes.
#[allow(clippy::too_many_arguments)]
fn counted_pass(
    instance: &ControlInstance,
    election: &Election,
    budget: u32,
    flavor: Flavor,
    t: u32,
    challenger: CandidateId,
    exclude: Option<CandidateId>,
    signatures_built: &mut u64,
) -> Option<CandidateSet> {
    let d = instance.designated;
    let n = election.voter_count();
    let base = t + 1;
    let cells = (base as u64).pow((n as u32) * t) as usize;

    // direction-adjusted rank among registered candidates, 1-based
    let reg_rank = |voter: usize, c: CandidateId| -> u32 {
        let v = &election.voters()[voter];
        let iter: Box<dyn Iterator<Item = &CandidateId>> = match flavor {
            Flavor::Points => Box::new(v.ranking().iter()),
            Flavor::Vetoes => Box::new(v.ranking().iter().rev()),
        };
        let mut rank = 0u32;
        for x in iter {
            if election.is_registered(*x) {
                rank += 1;
                if *x == c {
                    return rank;
                }
            }
        }
        u32::MAX
    };
    // registered candidates ahead of (behind, for vetoes) a pool candidate
    let ahead_count = |voter: usize, c: CandidateId| -> u32 {
        let v = &election.voters()[voter];
        let mut count = 0u32;
        match flavor {
            Flavor::Points => {
                for x in v.ranking() {
                    if *x == c {
                        break;
                    }
                    if election.is_registered(*x) {
                        count += 1;
                    }
                }
            }
            Flavor::Vetoes => {
                for x in v.ranking().iter().rev() {
                    if *x == c {
                        break;
                    }
                    if election.is_registered(*x) {
                        count += 1;
                    }
                }
            }
        }
        count
    };

    let picks: Vec<(CandidateId, u32)> = election
        .unregistered()
        .iter()
        .copied()
        .filter(|&c| Some(c) != exclude)
        .map(|c| {
            *signatures_built += 1;
            let ahead: Vec<u32> = (0..n).map(|i| ahead_count(i, c)).collect();
            (c, BundleCountSignature::of_candidate(&ahead, t as u8).encode())
        })
        .collect();

    let merge = |s: u32, sig: u32| {
        let a = BundleCountSignature::decode(s, n, t as u8);
        let b = BundleCountSignature::decode(sig, n, t as u8);
        a.merge(&b).encode()
    };
    let table = SignatureTable::build(cells, budget + 1, &picks, merge);

    let p_rank: Vec<u32> = (0..n).map(|i| reg_rank(i, challenger)).collect();
    let d_rank: Vec<u32> = (0..n).map(|i| reg_rank(i, d)).collect();

    // score of a registered candidate given a state: voter i contributes
    // when the candidate's rank fits the window once the added candidates
    // recorded in the state are slotted in
    let tally = |state: &BundleCountSignature, ranks: &[u32]| -> u32 {
        let mut score = 0u32;
        for i in 0..n {
            let r = ranks[i];
            if r <= t {
                let inserted = state.entries()[i][(r - 1) as usize] as u32;
                if inserted <= t - r {
                    score += 1;
                }
            }
        }
        score
    };

    let mut best: Option<(u32, u32)> = None;
    for state in 0..cells as u32 {
        let cost = if state == 0 { 0 } else { table.count(state) };
        if cost > budget {
            continue;
        }
        let decoded = BundleCountSignature::decode(state, n, t as u8);
        let p_score = tally(&decoded, &p_rank);
        let d_score = tally(&decoded, &d_rank);
        let accept = match flavor {
            Flavor::Points => p_score > d_score,
            Flavor::Vetoes => p_score < d_score,
        };
        if accept {
            best = match best {
                None => Some((cost, state)),
                Some((c, _)) if cost < c => Some((cost, state)),
                other => other,
            };
        }
    }
    let (_, state) = best?;
    Some(if state == 0 {
        CandidateSet::new()
    } else {
        table.witness(state)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::ElectionBuilder;
    use crate::rules::VotingRule;

    #[test]
    fn signature_vector_round_trips() {
        for n in 1..6usize {
            for code in 0..3u32.pow(n as u32) {
                let sig = SignatureVector::decode(code, n);
                assert_eq!(sig.encode(), code);
                assert_eq!(sig.entries().len(), n);
                assert!(sig.entries().iter().all(|&e| (1..=3).contains(&e)));
            }
        }
    }

    #[test]
    fn counted_signature_round_trips_and_caps() {
        let t = 2u8;
        for code in 0..81u32 {
            let sig = BundleCountSignature::decode(code, 2, t);
            assert_eq!(sig.encode(), code);
        }
        let a = BundleCountSignature::decode(80, 2, t); // all twos
        let merged = a.merge(&a);
        assert_eq!(merged.encode(), 80); // saturates at t
    }

    fn dcac_instance(
        orders: &[&[&str]],
        registered: &[&str],
        pool: &[&str],
        rule: VotingRule,
        despised: &str,
        budget: u32,
    ) -> ControlInstance {
        let mut b = ElectionBuilder::new();
        let mut ids = BTreeMap::new();
        for &r in registered {
            ids.insert(r, b.add_registered(r));
        }
        for &a in pool {
            ids.insert(a, b.add_unregistered(a));
        }
        for order in orders {
            b.push_vote(order.iter().map(|n| ids[n]).collect());
        }
        let e = b.finish().unwrap();
        let kappa = crate::election::BundlingFunction::identity(e.universe_size());
        ControlInstance::new(
            e,
            rule,
            ControlAction::AddCandidates,
            ControlGoal::Destructive,
            false,
            kappa,
            ids[despised],
            budget,
        )
        .unwrap()
    }

    #[test]
    fn empty_pool_with_winning_despised_is_no() {
        let inst = dcac_instance(
            &[&["d", "a"], &["d", "a"]],
            &["d", "a"],
            &[],
            VotingRule::Plurality,
            "d",
            0,
        );
        let report = solve_dcac_signature_plurality_veto(&inst).unwrap();
        assert!(!report.is_yes());
    }

    #[test]
    fn universally_top_pool_candidate_beats_despised() {
        let inst = dcac_instance(
            &[&["x", "d", "a"], &["x", "d", "a"]],
            &["d", "a"],
            &["x"],
            VotingRule::Plurality,
            "d",
            1,
        );
        let report = solve_dcac_signature_plurality_veto(&inst).unwrap();
        assert!(report.is_yes());
        assert!(crate::control::verify_solution(
            &inst,
            report.witness.as_ref().unwrap()
        ));
    }

    #[test]
    fn two_approval_single_blocker_cannot_dethrone() {
        // adding x pushes p out of the window but d keeps scoring
        let inst = dcac_instance(
            &[&["d", "a", "p", "x"]],
            &["d", "a", "p"],
            &["x"],
            VotingRule::TApproval(2),
            "d",
            1,
        );
        let report = solve_dcac_signature_approval(&inst).unwrap();
        assert!(!report.is_yes());
    }
}
