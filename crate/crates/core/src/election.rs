//! Immutable election data model: candidates, preference orders, pairwise
//! tallies, bundling functions, and candidate addition/deletion.
//!
//! Candidate ids are dense indices into a shared name table. An election
//! constructed from scratch has ids `0..universe_size`; elections derived by
//! [`Election::restrict`] keep the surviving ids stable (so witnesses remain
//! comparable across hypothetical elections) while the name table is shared.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Dense candidate index. Display names live in the election's name table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub u32);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type CandidateSet = BTreeSet<CandidateId>;

/// One voter's strict total order over the whole candidate universe,
/// most-preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceOrder {
    ranking: Vec<CandidateId>,
}

impl PreferenceOrder {
    pub fn new(ranking: Vec<CandidateId>) -> Self {
        PreferenceOrder { ranking }
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// True if this voter ranks `a` ahead of `b`.
    pub fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        for &c in &self.ranking {
            if c == a {
                return true;
            }
            if c == b {
                return false;
            }
        }
        false
    }

    /// Reversed copy of the order (used by veto-style arguments).
    pub fn reversed(&self) -> PreferenceOrder {
        let mut r = self.ranking.clone();
        r.reverse();
        PreferenceOrder { ranking: r }
    }
}

/// An election: registered candidates, an optional pool of unregistered
/// candidates, and voters ranking the full universe (registered + pool).
///
/// Scores only ever look at the registered set; pool members sit in the
/// orders but are invisible until added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    names: Arc<Vec<String>>,
    registered: CandidateSet,
    unregistered: CandidateSet,
    voters: Vec<PreferenceOrder>,
}

impl Election {
    pub fn new(
        names: Vec<String>,
        registered: CandidateSet,
        unregistered: CandidateSet,
        voters: Vec<PreferenceOrder>,
    ) -> Result<Self> {
        let universe = names.len();
        if universe == 0 {
            return Err(Error::invalid_argument("election needs at least one candidate"));
        }
        let mut seen = BTreeSet::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::invalid_argument(format!("candidate {i} has an empty name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::invalid_argument(format!("duplicate candidate name `{name}`")));
            }
        }
        if !registered.is_disjoint(&unregistered) {
            return Err(Error::invalid_argument(
                "registered and unregistered candidate sets overlap",
            ));
        }
        let all: CandidateSet = registered.union(&unregistered).copied().collect();
        if all.len() != universe || all.iter().any(|c| c.index() >= universe) {
            return Err(Error::invalid_argument(
                "registered + unregistered must exactly cover the candidate universe",
            ));
        }
        let election = Election {
            names: Arc::new(names),
            registered,
            unregistered,
            voters,
        };
        election.check_voters()?;
        Ok(election)
    }

    fn check_voters(&self) -> Result<()> {
        let universe: CandidateSet = self
            .registered
            .union(&self.unregistered)
            .copied()
            .collect();
        for (i, voter) in self.voters.iter().enumerate() {
            if voter.len() != universe.len() {
                return Err(Error::invalid_argument(format!(
                    "voter {i} ranks {} candidates, expected {}",
                    voter.len(),
                    universe.len()
                )));
            }
            let ranked: CandidateSet = voter.ranking().iter().copied().collect();
            if ranked != universe {
                return Err(Error::invalid_argument(format!(
                    "voter {i} is not a permutation of the candidate universe"
                )));
            }
        }
        Ok(())
    }

    pub fn registered(&self) -> &CandidateSet {
        &self.registered
    }

    pub fn unregistered(&self) -> &CandidateSet {
        &self.unregistered
    }

    pub fn voters(&self) -> &[PreferenceOrder] {
        &self.voters
    }

    pub fn voter_count(&self) -> usize {
        self.voters.len()
    }

    pub fn registered_count(&self) -> usize {
        self.registered.len()
    }

    /// Size of the name table (ids are always `< universe_size`, though a
    /// restricted election may no longer use all of them).
    pub fn universe_size(&self) -> usize {
        self.names.len()
    }

    pub fn is_registered(&self, c: CandidateId) -> bool {
        self.registered.contains(&c)
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.index()]
    }

    pub fn id_of(&self, name: &str) -> Option<CandidateId> {
        let id = self.names.iter().position(|n| n == name)?;
        let c = CandidateId(id as u32);
        if self.registered.contains(&c) || self.unregistered.contains(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// Number of voters preferring `a` to `b` when orders are restricted to
    /// `active`, for every pair of active candidates.
    pub fn pairwise_tally(&self, active: &CandidateSet) -> Result<PairwiseMatrix> {
        if active.is_empty() {
            return Err(Error::invalid_argument("active candidate set is empty"));
        }
        for &c in active {
            if !self.registered.contains(&c) && !self.unregistered.contains(&c) {
                return Err(Error::invalid_argument(format!(
                    "unknown candidate id {} in active set",
                    c.0
                )));
            }
        }
        let index: BTreeMap<CandidateId, usize> =
            active.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let k = active.len();
        let mut counts = vec![vec![0u32; k]; k];
        let mut mask = vec![false; self.universe_size()];
        for &c in active {
            mask[c.index()] = true;
        }
        let mut seen: Vec<usize> = Vec::with_capacity(k);
        for voter in &self.voters {
            seen.clear();
            for &c in voter.ranking() {
                if mask[c.index()] {
                    let j = index[&c];
                    for &i in &seen {
                        counts[i][j] += 1;
                    }
                    seen.push(j);
                }
            }
        }
        Ok(PairwiseMatrix {
            index,
            counts,
            voter_count: self.voters.len() as u32,
        })
    }

    /// Delete `deleted` from the registered set; voter orders are shortened
    /// preserving relative positions. Pool candidates cannot be deleted here.
    pub fn restrict(&self, deleted: &CandidateSet) -> Result<Election> {
        if !deleted.is_subset(&self.registered) {
            return Err(Error::invalid_argument(
                "restrict can only delete registered candidates",
            ));
        }
        if deleted.len() == self.registered.len() {
            return Err(Error::invalid_argument(
                "cannot delete every registered candidate",
            ));
        }
        if deleted.is_empty() {
            return Ok(self.clone());
        }
        let mut gone = vec![false; self.universe_size()];
        for &c in deleted {
            gone[c.index()] = true;
        }
        let registered: CandidateSet = self
            .registered
            .iter()
            .copied()
            .filter(|c| !gone[c.index()])
            .collect();
        let voters = self
            .voters
            .iter()
            .map(|v| {
                PreferenceOrder::new(
                    v.ranking()
                        .iter()
                        .copied()
                        .filter(|c| !gone[c.index()])
                        .collect(),
                )
            })
            .collect();
        Ok(Election {
            names: Arc::clone(&self.names),
            registered,
            unregistered: self.unregistered.clone(),
            voters,
        })
    }

    /// Copy of the election with every voter's order reversed. Veto-style
    /// arguments run on this mirror.
    pub fn reversed_orders(&self) -> Election {
        Election {
            names: Arc::clone(&self.names),
            registered: self.registered.clone(),
            unregistered: self.unregistered.clone(),
            voters: self.voters.iter().map(|v| v.reversed()).collect(),
        }
    }

    /// Remove candidates from the universe entirely, whether registered or
    /// pooled. Ids of the survivors stay stable; the shared name table is
    /// untouched.
    pub fn forget(&self, gone: &CandidateSet) -> Result<Election> {
        for &c in gone {
            if !self.registered.contains(&c) && !self.unregistered.contains(&c) {
                return Err(Error::invalid_argument(format!(
                    "cannot forget unknown candidate id {}",
                    c.0
                )));
            }
        }
        if self.registered.is_subset(gone) {
            return Err(Error::invalid_argument(
                "cannot forget every registered candidate",
            ));
        }
        if gone.is_empty() {
            return Ok(self.clone());
        }
        let mut drop = vec![false; self.universe_size()];
        for &c in gone {
            drop[c.index()] = true;
        }
        let registered = self
            .registered
            .iter()
            .copied()
            .filter(|c| !drop[c.index()])
            .collect();
        let unregistered = self
            .unregistered
            .iter()
            .copied()
            .filter(|c| !drop[c.index()])
            .collect();
        let voters = self
            .voters
            .iter()
            .map(|v| {
                PreferenceOrder::new(
                    v.ranking()
                        .iter()
                        .copied()
                        .filter(|c| !drop[c.index()])
                        .collect(),
                )
            })
            .collect();
        Ok(Election {
            names: Arc::clone(&self.names),
            registered,
            unregistered,
            voters,
        })
    }

    /// Move `added` from the pool into the registered set. Orders are left
    /// untouched; the candidates simply become visible to scoring.
    pub fn add_candidates(&self, added: &CandidateSet) -> Result<Election> {
        if !added.is_subset(&self.unregistered) {
            return Err(Error::invalid_argument(
                "add_candidates takes candidates from the unregistered pool only",
            ));
        }
        if added.is_empty() {
            return Ok(self.clone());
        }
        let registered: CandidateSet = self.registered.union(added).copied().collect();
        let unregistered: CandidateSet =
            self.unregistered.difference(added).copied().collect();
        Ok(Election {
            names: Arc::clone(&self.names),
            registered,
            unregistered,
            voters: self.voters.clone(),
        })
    }
}

/// Incremental construction helper used by the gadget generators and parsers.
#[derive(Debug, Default)]
pub struct ElectionBuilder {
    names: Vec<String>,
    registered: CandidateSet,
    unregistered: CandidateSet,
    votes: Vec<Vec<CandidateId>>,
}

impl ElectionBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_registered(&mut self, name: impl Into<String>) -> CandidateId {
        let id = CandidateId(self.names.len() as u32);
        self.names.push(name.into());
        self.registered.insert(id);
        id
    }

    pub fn add_unregistered(&mut self, name: impl Into<String>) -> CandidateId {
        let id = CandidateId(self.names.len() as u32);
        self.names.push(name.into());
        self.unregistered.insert(id);
        id
    }

    pub fn universe_size(&self) -> usize {
        self.names.len()
    }

    pub fn push_vote(&mut self, ranking: Vec<CandidateId>) {
        self.votes.push(ranking);
    }

    pub fn finish(self) -> Result<Election> {
        let voters = self.votes.into_iter().map(PreferenceOrder::new).collect();
        Election::new(self.names, self.registered, self.unregistered, voters)
    }
}

/// Candidate -> bundle map. Reflexive: every candidate belongs to its own
/// bundle. The identity map models the non-combinatorial setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundlingFunction {
    bundles: BTreeMap<CandidateId, CandidateSet>,
}

impl BundlingFunction {
    /// Identity bundling over ids `0..universe_size`.
    pub fn identity(universe_size: usize) -> Self {
        let bundles = (0..universe_size)
            .map(|i| {
                let c = CandidateId(i as u32);
                (c, CandidateSet::from([c]))
            })
            .collect();
        BundlingFunction { bundles }
    }

    pub fn from_map(bundles: BTreeMap<CandidateId, CandidateSet>) -> Result<Self> {
        for (&c, bundle) in &bundles {
            if !bundle.contains(&c) {
                return Err(Error::invalid_argument(format!(
                    "bundle of candidate {} does not contain the candidate itself",
                    c.0
                )));
            }
        }
        Ok(BundlingFunction { bundles })
    }

    /// Replace the bundle of `c` (keeps reflexivity by inserting `c`).
    pub fn set_bundle(&mut self, c: CandidateId, mut bundle: CandidateSet) {
        bundle.insert(c);
        self.bundles.insert(c, bundle);
    }

    pub fn bundle(&self, c: CandidateId) -> Option<&CandidateSet> {
        self.bundles.get(&c)
    }

    pub fn domain(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.bundles.keys().copied()
    }

    pub fn domain_size(&self) -> usize {
        self.bundles.len()
    }

    pub fn is_identity(&self) -> bool {
        self.bundles.iter().all(|(c, b)| b.len() == 1 && b.contains(c))
    }

    /// Union of the bundles of all chosen candidates.
    pub fn closure(&self, chosen: &CandidateSet) -> Result<CandidateSet> {
        let mut out = CandidateSet::new();
        for &c in chosen {
            let bundle = self
                .bundles
                .get(&c)
                .ok_or_else(|| Error::invalid_argument(format!("candidate {} not in bundling domain", c.0)))?;
            out.extend(bundle.iter().copied());
        }
        Ok(out)
    }
}

/// Pairwise comparison tallies over a fixed active candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseMatrix {
    index: BTreeMap<CandidateId, usize>,
    counts: Vec<Vec<u32>>,
    voter_count: u32,
}

impl PairwiseMatrix {
    /// N(a, b): voters preferring `a` to `b`. Panics on candidates outside
    /// the active set the matrix was built for.
    pub fn n(&self, a: CandidateId, b: CandidateId) -> u32 {
        self.counts[self.index[&a]][self.index[&b]]
    }

    pub fn voter_count(&self) -> u32 {
        self.voter_count
    }

    pub fn active(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.index.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_election(orders: &[&[u32]], registered: &[u32], pool: &[u32]) -> Election {
        let universe = registered.len() + pool.len();
        let names = (0..universe).map(|i| format!("c{i}")).collect();
        let reg = registered.iter().map(|&i| CandidateId(i)).collect();
        let unreg = pool.iter().map(|&i| CandidateId(i)).collect();
        let voters = orders
            .iter()
            .map(|o| PreferenceOrder::new(o.iter().map(|&i| CandidateId(i)).collect()))
            .collect();
        Election::new(names, reg, unreg, voters).unwrap()
    }

    #[test]
    fn pairwise_single_vote() {
        let e = small_election(&[&[0, 1]], &[0, 1], &[]);
        let active: CandidateSet = [CandidateId(0), CandidateId(1)].into();
        let m = e.pairwise_tally(&active).unwrap();
        assert_eq!(m.n(CandidateId(0), CandidateId(1)), 1);
        assert_eq!(m.n(CandidateId(1), CandidateId(0)), 0);
    }

    #[test]
    fn pairwise_symmetric_pair() {
        let e = small_election(&[&[0, 1], &[1, 0]], &[0, 1], &[]);
        let active: CandidateSet = [CandidateId(0), CandidateId(1)].into();
        let m = e.pairwise_tally(&active).unwrap();
        assert_eq!(m.n(CandidateId(0), CandidateId(1)), 1);
        assert_eq!(m.n(CandidateId(1), CandidateId(0)), 1);
    }

    #[test]
    fn pairwise_rejects_unknown_candidate() {
        let e = small_election(&[&[0, 1]], &[0, 1], &[]);
        let active: CandidateSet = [CandidateId(5)].into();
        assert!(matches!(e.pairwise_tally(&active), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn restrict_preserves_relative_order() {
        let e = small_election(&[&[0, 1, 2]], &[0, 1, 2], &[]);
        let deleted: CandidateSet = [CandidateId(1)].into();
        let r = e.restrict(&deleted).unwrap();
        assert_eq!(r.voters()[0].ranking(), &[CandidateId(0), CandidateId(2)]);
        assert_eq!(r.registered().len(), 2);
    }

    #[test]
    fn restrict_empty_is_identity() {
        let e = small_election(&[&[2, 0, 1]], &[0, 1, 2], &[]);
        let r = e.restrict(&CandidateSet::new()).unwrap();
        assert_eq!(r, e);
    }

    #[test]
    fn restrict_rejects_deleting_everything() {
        let e = small_election(&[&[0, 1]], &[0, 1], &[]);
        let all: CandidateSet = [CandidateId(0), CandidateId(1)].into();
        assert!(e.restrict(&all).is_err());
    }

    #[test]
    fn restrict_rejects_pool_candidates() {
        let e = small_election(&[&[0, 1, 2]], &[0, 1], &[2]);
        let deleted: CandidateSet = [CandidateId(2)].into();
        assert!(e.restrict(&deleted).is_err());
    }

    #[test]
    fn add_candidates_moves_pool_members() {
        let e = small_election(&[&[2, 0, 1]], &[0, 1], &[2]);
        let added: CandidateSet = [CandidateId(2)].into();
        let a = e.add_candidates(&added).unwrap();
        assert!(a.is_registered(CandidateId(2)));
        assert!(a.unregistered().is_empty());
        assert_eq!(a.voters(), e.voters());

        let same = e.add_candidates(&CandidateSet::new()).unwrap();
        assert_eq!(same, e);
    }

    #[test]
    fn add_rejects_non_pool_candidate() {
        let e = small_election(&[&[0, 1, 2]], &[0, 1], &[2]);
        let added: CandidateSet = [CandidateId(0)].into();
        assert!(e.add_candidates(&added).is_err());
    }

    #[test]
    fn bundle_closure_unions_bundles() {
        let mut kappa = BundlingFunction::identity(4);
        kappa.set_bundle(
            CandidateId(0),
            [CandidateId(0), CandidateId(2), CandidateId(3)].into(),
        );
        let closed = kappa.closure(&[CandidateId(0)].into()).unwrap();
        assert_eq!(
            closed,
            CandidateSet::from([CandidateId(0), CandidateId(2), CandidateId(3)])
        );
        assert_eq!(kappa.closure(&CandidateSet::new()).unwrap(), CandidateSet::new());

        let ident = BundlingFunction::identity(3);
        let chosen: CandidateSet = [CandidateId(0), CandidateId(1)].into();
        assert_eq!(ident.closure(&chosen).unwrap(), chosen);
    }

    #[test]
    fn forget_drops_candidates_from_both_sets() {
        let e = small_election(&[&[3, 0, 1, 2]], &[0, 1], &[2, 3]);
        let gone: CandidateSet = [CandidateId(1), CandidateId(2)].into();
        let f = e.forget(&gone).unwrap();
        assert_eq!(f.registered(), &CandidateSet::from([CandidateId(0)]));
        assert_eq!(f.unregistered(), &CandidateSet::from([CandidateId(3)]));
        assert_eq!(f.voters()[0].ranking(), &[CandidateId(3), CandidateId(0)]);
        // ids stay stable, so names still resolve
        assert_eq!(f.name(CandidateId(3)), "c3");
        assert!(e.forget(&[CandidateId(0), CandidateId(1)].into()).is_err());
    }

    #[test]
    fn votes_must_be_permutations() {
        let names = vec!["a".into(), "b".into()];
        let reg: CandidateSet = [CandidateId(0), CandidateId(1)].into();
        let voters = vec![PreferenceOrder::new(vec![CandidateId(0), CandidateId(0)])];
        assert!(Election::new(names, reg, CandidateSet::new(), voters).is_err());
    }
}
