//! Exact score computation and co-winner determination for Plurality, Veto,
//! t-Approval, t-Veto, Borda, Copeland^alpha and Maximin.
//!
//! All scores are integers. Copeland scores are scaled by the denominator of
//! alpha so that argmax comparisons stay exact; every other rule uses scale 1.

use std::collections::BTreeMap;

use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::{Error, Result};

/// Exact rational tie value for Copeland, `0 <= num/den <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alpha {
    pub num: u32,
    pub den: u32,
}

impl Alpha {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid_argument("alpha denominator must be >= 1"));
        }
        if num > den {
            return Err(Error::invalid_argument("alpha must satisfy 0 <= num/den <= 1"));
        }
        Ok(Alpha { num, den })
    }

    pub fn half() -> Self {
        Alpha { num: 1, den: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VotingRule {
    Plurality,
    Veto,
    TApproval(u32),
    TVeto(u32),
    Borda,
    Copeland(Alpha),
    Maximin,
}

impl VotingRule {
    pub fn validate(&self) -> Result<()> {
        match self {
            VotingRule::TApproval(t) | VotingRule::TVeto(t) if *t < 1 => {
                Err(Error::invalid_argument("t must be at least 1"))
            }
            _ => Ok(()),
        }
    }

    /// Top-window size for approval-style rules: `Some(t)` for Plurality and
    /// t-Approval, `None` otherwise.
    pub fn approval_window(&self) -> Option<u32> {
        match self {
            VotingRule::Plurality => Some(1),
            VotingRule::TApproval(t) => Some(*t),
            _ => None,
        }
    }

    /// Bottom-window size for veto-style rules.
    pub fn veto_window(&self) -> Option<u32> {
        match self {
            VotingRule::Veto => Some(1),
            VotingRule::TVeto(t) => Some(*t),
            _ => None,
        }
    }

    pub fn is_approval_family(&self) -> bool {
        self.approval_window().is_some() || self.veto_window().is_some()
    }
}

impl std::fmt::Display for VotingRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VotingRule::Plurality => write!(f, "plurality"),
            VotingRule::Veto => write!(f, "veto"),
            VotingRule::TApproval(t) => write!(f, "{t}-approval"),
            VotingRule::TVeto(t) => write!(f, "{t}-veto"),
            VotingRule::Borda => write!(f, "borda"),
            VotingRule::Copeland(a) => write!(f, "copeland({}/{})", a.num, a.den),
            VotingRule::Maximin => write!(f, "maximin"),
        }
    }
}

/// Integer-scaled per-candidate scores over the active (registered) set.
/// The true score of `c` is `scores[c] / scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreVector {
    pub scores: BTreeMap<CandidateId, i64>,
    pub scale: u64,
}

impl ScoreVector {
    pub fn winners(&self) -> CandidateSet {
        let max = self.scores.values().copied().max();
        match max {
            None => CandidateSet::new(),
            Some(max) => self
                .scores
                .iter()
                .filter(|(_, &s)| s == max)
                .map(|(&c, _)| c)
                .collect(),
        }
    }
}

fn active_mask(election: &Election, active: &CandidateSet) -> Vec<bool> {
    let mut mask = vec![false; election.universe_size()];
    for &c in active {
        mask[c.index()] = true;
    }
    mask
}

/// Points for every active candidate, counting voters that rank the
/// candidate among the top `window` active positions.
fn approval_points(election: &Election, mask: &[bool], window: usize) -> Vec<i64> {
    let mut points = vec![0i64; election.universe_size()];
    if window == 0 {
        return points;
    }
    for voter in election.voters() {
        let mut taken = 0usize;
        for &c in voter.ranking() {
            if mask[c.index()] {
                points[c.index()] += 1;
                taken += 1;
                if taken == window {
                    break;
                }
            }
        }
    }
    points
}

/// Number of voters ranking each active candidate among the bottom
/// `window` active positions.
fn veto_tallies(election: &Election, mask: &[bool], window: usize) -> Vec<i64> {
    let mut vetoes = vec![0i64; election.universe_size()];
    if window == 0 {
        return vetoes;
    }
    for voter in election.voters() {
        let mut taken = 0usize;
        for &c in voter.ranking().iter().rev() {
            if mask[c.index()] {
                vetoes[c.index()] += 1;
                taken += 1;
                if taken == window {
                    break;
                }
            }
        }
    }
    vetoes
}

fn borda_points(election: &Election, mask: &[bool], active_count: usize) -> Vec<i64> {
    let mut points = vec![0i64; election.universe_size()];
    for voter in election.voters() {
        let mut ahead = 0i64;
        for &c in voter.ranking() {
            if mask[c.index()] {
                points[c.index()] += active_count as i64 - 1 - ahead;
                ahead += 1;
            }
        }
    }
    points
}

/// Per-candidate scaled scores over an explicit active set. This is the
/// workhorse the solvers use so they never materialize restricted elections.
pub(crate) fn scores_over_active(
    election: &Election,
    rule: &VotingRule,
    active: &CandidateSet,
) -> Result<ScoreVector> {
    rule.validate()?;
    if active.is_empty() {
        return Err(Error::invalid_argument("active candidate set is empty"));
    }
    for &c in active {
        if !election.registered().contains(&c) && !election.unregistered().contains(&c) {
            return Err(Error::invalid_argument(format!("unknown candidate id {}", c.0)));
        }
    }
    let m = active.len();
    let mask = active_mask(election, active);
    let (raw, scale): (Vec<i64>, u64) = match rule {
        VotingRule::Plurality => (approval_points(election, &mask, 1), 1),
        VotingRule::TApproval(t) => {
            (approval_points(election, &mask, (*t as usize).min(m)), 1)
        }
        // t-Veto scores are (m - t)-Approval points, so argmax matches
        // "fewest vetoes". With m <= t every candidate is vetoed by every
        // voter and all scores collapse to zero (everybody ties).
        VotingRule::Veto => (approval_points(election, &mask, m.saturating_sub(1)), 1),
        VotingRule::TVeto(t) => (
            approval_points(election, &mask, m.saturating_sub(*t as usize)),
            1,
        ),
        VotingRule::Borda => (borda_points(election, &mask, m), 1),
        VotingRule::Maximin => {
            let tally = election.pairwise_tally(active)?;
            let n = election.voter_count() as i64;
            let mut points = vec![0i64; election.universe_size()];
            for &c in active {
                let mut best = n; // min over an empty field: sole candidate beats nobody
                for &d in active {
                    if d != c {
                        best = best.min(tally.n(c, d) as i64);
                    }
                }
                points[c.index()] = best;
            }
            (points, 1)
        }
        VotingRule::Copeland(alpha) => {
            let tally = election.pairwise_tally(active)?;
            let mut points = vec![0i64; election.universe_size()];
            for &c in active {
                let mut wins = 0i64;
                let mut ties = 0i64;
                for &d in active {
                    if d == c {
                        continue;
                    }
                    let ncd = tally.n(c, d);
                    let ndc = tally.n(d, c);
                    if ncd > ndc {
                        wins += 1;
                    } else if ncd == ndc {
                        ties += 1;
                    }
                }
                points[c.index()] = wins * alpha.den as i64 + ties * alpha.num as i64;
            }
            (points, alpha.den as u64)
        }
    };
    let scores = active.iter().map(|&c| (c, raw[c.index()])).collect();
    Ok(ScoreVector { scores, scale })
}

/// Exact integer-scaled scores of all registered candidates.
pub fn score_all(election: &Election, rule: &VotingRule) -> Result<ScoreVector> {
    scores_over_active(election, rule, election.registered())
}

/// Scores over an explicit active set, which may mix registered and pool
/// candidates; useful for what-if evaluations without rebuilding elections.
pub fn scores_over(
    election: &Election,
    rule: &VotingRule,
    active: &CandidateSet,
) -> Result<ScoreVector> {
    scores_over_active(election, rule, active)
}

/// The nonempty argmax set of `score_all` (co-winner model).
pub fn winners(election: &Election, rule: &VotingRule) -> Result<CandidateSet> {
    Ok(score_all(election, rule)?.winners())
}

pub(crate) fn winners_over_active(
    election: &Election,
    rule: &VotingRule,
    active: &CandidateSet,
) -> Result<CandidateSet> {
    Ok(scores_over_active(election, rule, active)?.winners())
}

pub fn is_winner(candidate: CandidateId, election: &Election, rule: &VotingRule) -> Result<bool> {
    if !election.is_registered(candidate) {
        return Err(Error::invalid_argument(format!(
            "candidate {} is not active",
            candidate.0
        )));
    }
    Ok(winners(election, rule)?.contains(&candidate))
}

/// Veto counts for veto-style reasoning: voters ranking each registered
/// candidate among the bottom `min(t, m)` positions.
pub fn veto_counts(election: &Election, t: u32) -> Result<BTreeMap<CandidateId, i64>> {
    let active = election.registered();
    if active.is_empty() {
        return Err(Error::invalid_argument("active candidate set is empty"));
    }
    let mask = active_mask(election, active);
    let window = (t as usize).min(active.len());
    let vetoes = veto_tallies(election, &mask, window);
    Ok(active.iter().map(|&c| (c, vetoes[c.index()])).collect())
}
