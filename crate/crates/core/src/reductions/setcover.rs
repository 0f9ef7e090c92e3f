//! Combinatorial control gadgets generated from set-cover instances. The
//! bundling function does the heavy lifting: picking a set candidate drags
//! in the element candidates it covers, so a constant number of voters
//! suffices for every construction.

use crate::control::{ControlAction, ControlGoal, ControlInstance};
use crate::election::{BundlingFunction, CandidateId, CandidateSet, ElectionBuilder};
use crate::error::{Error, Result};
use crate::reductions::source::SetCoverInstance;
use crate::reductions::{descending, ReductionTarget, VoteBuilder};
use crate::rules::VotingRule;

/// Element and set candidates plus the set-embedding bundles.
struct Embedding {
    elements: Vec<CandidateId>,
    sets: Vec<CandidateId>,
    bundles: Vec<(CandidateId, CandidateSet)>,
}

impl Embedding {
    /// `pad_sets` appends empty sets until the budget is strictly below the
    /// family size (some constructions need a set candidate to survive).
    fn build(
        src: &SetCoverInstance,
        builder: &mut ElectionBuilder,
        registered: bool,
        pad_sets: bool,
    ) -> Embedding {
        let add = |b: &mut ElectionBuilder, name: String| {
            if registered {
                b.add_registered(name)
            } else {
                b.add_unregistered(name)
            }
        };
        let elements: Vec<CandidateId> = (0..src.ground_size())
            .map(|i| add(builder, format!("x{}", i + 1)))
            .collect();
        let mut families: Vec<CandidateSet> = src
            .sets()
            .iter()
            .map(|s| s.iter().map(|&i| elements[i as usize]).collect())
            .collect();
        if pad_sets {
            while src.h() as usize >= families.len() {
                families.push(CandidateSet::new());
            }
        }
        let sets: Vec<CandidateId> = (0..families.len())
            .map(|j| add(builder, format!("s{}", j + 1)))
            .collect();
        let bundles = sets
            .iter()
            .zip(&families)
            .map(|(&s, members)| {
                let mut bundle = members.clone();
                bundle.insert(s);
                (s, bundle)
            })
            .collect();
        Embedding {
            elements,
            sets,
            bundles,
        }
    }

    fn install(self, kappa: &mut BundlingFunction) {
        for (owner, bundle) in self.bundles {
            kappa.set_bundle(owner, bundle);
        }
    }
}

/// `reduce_setcover` entry point over the combinatorial target catalog.
pub fn reduce_setcover(
    src: &SetCoverInstance,
    target: &ReductionTarget,
) -> Result<ControlInstance> {
    if !target.combinatorial {
        return Err(Error::invalid_argument(
            "set-embedding targets are combinatorial",
        ));
    }
    use ControlAction::*;
    use ControlGoal::*;
    match (target.rule, target.action, target.goal) {
        (
            VotingRule::Plurality
            | VotingRule::Borda
            | VotingRule::Copeland(_)
            | VotingRule::Maximin,
            DeleteCandidates,
            Constructive,
        ) => unanimity_ccdc(src, target.rule),
        (VotingRule::TApproval(t), DeleteCandidates, Constructive) if t >= 2 => {
            approval_ccdc(src, t)
        }
        (VotingRule::Veto, DeleteCandidates, Constructive) => veto_ccdc(src, 1),
        (VotingRule::TVeto(t), DeleteCandidates, Constructive) => veto_ccdc(src, t),
        (VotingRule::Plurality, DeleteCandidates, Destructive) => plurality_dcdc(src),
        (VotingRule::TApproval(t), DeleteCandidates, Destructive) if t >= 2 => {
            approval_dcdc(src, t)
        }
        (VotingRule::Veto, DeleteCandidates, Destructive) => veto_dcdc(src, 1),
        (VotingRule::TVeto(t), DeleteCandidates, Destructive) => veto_dcdc(src, t),
        (VotingRule::Borda, DeleteCandidates, Destructive) => borda_dcdc(src),
        (VotingRule::Borda, AddCandidates, Constructive) => borda_ac(src, true),
        (VotingRule::Borda, AddCandidates, Destructive) => borda_ac(src, false),
        (VotingRule::Copeland(_), AddCandidates, Constructive) => copeland_ac(src, target.rule, true),
        (VotingRule::Copeland(_), AddCandidates, Destructive) => {
            copeland_ac(src, target.rule, false)
        }
        (VotingRule::Copeland(_), DeleteCandidates, Destructive) => copeland_dcdc(src, target.rule),
        (VotingRule::Maximin, AddCandidates, Constructive) => maximin_ccac(src),
        (VotingRule::Maximin, DeleteCandidates, Destructive) => maximin_dcdc(src),
        _ => Err(Error::invalid_argument(format!(
            "unsupported set-embedding target {target}"
        ))),
    }
}

fn finish_deletion(
    builder: ElectionBuilder,
    embedding: Embedding,
    rule: VotingRule,
    designated: CandidateId,
    goal: ControlGoal,
    budget: u32,
) -> Result<ControlInstance> {
    let election = builder.finish()?;
    let mut kappa = BundlingFunction::identity(election.universe_size());
    embedding.install(&mut kappa);
    let budget = budget.min(election.registered().len() as u32 - 1);
    ControlInstance::new(
        election,
        rule,
        ControlAction::DeleteCandidates,
        goal,
        true,
        kappa,
        designated,
        budget,
    )
}

fn finish_addition(
    builder: ElectionBuilder,
    embedding: Embedding,
    rule: VotingRule,
    designated: CandidateId,
    goal: ControlGoal,
    budget: u32,
) -> Result<ControlInstance> {
    let election = builder.finish()?;
    let mut kappa = BundlingFunction::identity(election.universe_size());
    embedding.install(&mut kappa);
    let budget = budget.min(election.unregistered().len() as u32);
    ControlInstance::new(
        election,
        rule,
        ControlAction::AddCandidates,
        goal,
        true,
        kappa,
        designated,
        budget,
    )
}

/// One voter, any unanimous rule: deleting cover bundles lifts p to the
/// top.
fn unanimity_ccdc(src: &SetCoverInstance, rule: VotingRule) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let mut vote = VoteBuilder::new(builder.universe_size());
    vote.push_block(embedding.elements.iter().copied())
        .push(p)
        .push_block(embedding.sets.iter().copied());
    builder.push_vote(vote.finish());
    finish_deletion(builder, embedding, rule, p, ControlGoal::Constructive, src.h())
}

fn approval_ccdc(src: &SetCoverInstance, t: u32) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let dummies: Vec<CandidateId> = (0..t - 1)
        .map(|z| builder.add_registered(format!("d{}", z + 1)))
        .collect();
    let mut vote = VoteBuilder::new(builder.universe_size());
    vote.push_block(dummies)
        .push_block(embedding.elements.iter().copied())
        .push(p)
        .push_block(embedding.sets.iter().copied());
    builder.push_vote(vote.finish());
    finish_deletion(
        builder,
        embedding,
        VotingRule::TApproval(t),
        p,
        ControlGoal::Constructive,
        src.h(),
    )
}

/// One voter; a z-candidate bundles the whole set family so the field can
/// be cleared with one extra deletion, leaving everyone vetoed and tied.
fn veto_ccdc(src: &SetCoverInstance, t: u32) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let z = builder.add_registered("z");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let dummies: Vec<CandidateId> = (0..t - 1)
        .map(|i| builder.add_registered(format!("d{}", i + 1)))
        .collect();
    let mut vote = VoteBuilder::new(builder.universe_size());
    vote.push(z)
        .push_block(embedding.elements.iter().copied())
        .push_block(embedding.sets.iter().copied())
        .push_block(dummies)
        .push(p);
    builder.push_vote(vote.finish());
    let rule = if t == 1 {
        VotingRule::Veto
    } else {
        VotingRule::TVeto(t)
    };
    let all_sets: CandidateSet = embedding.sets.iter().copied().collect();
    let election_budget = src.h() + 1;
    let election = builder.finish()?;
    let mut kappa = BundlingFunction::identity(election.universe_size());
    embedding.install(&mut kappa);
    let mut z_bundle = all_sets;
    z_bundle.insert(z);
    kappa.set_bundle(z, z_bundle);
    let budget = election_budget.min(election.registered().len() as u32 - 1);
    ControlInstance::new(
        election,
        rule,
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
        true,
        kappa,
        p,
        budget,
    )
}

fn plurality_dcdc(src: &SetCoverInstance) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let universe = builder.universe_size();
    let x = || embedding.elements.iter().copied();
    let s = || embedding.sets.iter().copied();

    let mut v1 = VoteBuilder::new(universe);
    v1.push_block(x()).push(p).push_block(s()).push(d);
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(d).push_block(x()).push(p).push_block(s());
    builder.push_vote(v2.finish());
    let mut v3 = VoteBuilder::new(universe);
    v3.push(p).push(d).push_block(x()).push_block(s());
    builder.push_vote(v3.finish());
    finish_deletion(
        builder,
        embedding,
        VotingRule::Plurality,
        d,
        ControlGoal::Destructive,
        src.h(),
    )
}

fn approval_dcdc(src: &SetCoverInstance, t: u32) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let dummies: Vec<CandidateId> = (0..t.saturating_sub(2))
        .map(|z| builder.add_registered(format!("d{}", z + 1)))
        .collect();
    let guards: Vec<CandidateId> = (0..t - 1)
        .map(|z| builder.add_registered(format!("f{}", z + 1)))
        .collect();
    let universe = builder.universe_size();
    let x = || embedding.elements.iter().copied();
    let s = || embedding.sets.iter().copied();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(d)
        .push_block(x())
        .push_block(dummies.iter().copied())
        .push(p)
        .push_block(s())
        .push_block(guards.iter().copied());
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(p)
        .push_block(guards.iter().copied())
        .push(d)
        .push_block(x())
        .push_block(s())
        .push_block(dummies.iter().copied());
    builder.push_vote(v2.finish());
    finish_deletion(
        builder,
        embedding,
        VotingRule::TApproval(t),
        d,
        ControlGoal::Destructive,
        src.h(),
    )
}

/// One voter; preventing the despised candidate from winning means pushing
/// it into the bottom window, possible exactly when the elements above it
/// can all be deleted through cover bundles. The set family is padded so a
/// set candidate survives to take the win.
fn veto_dcdc(src: &SetCoverInstance, t: u32) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let d = builder.add_registered("d");
    let embedding = Embedding::build(src, &mut builder, true, true);
    let dummies: Vec<CandidateId> = (0..t - 1)
        .map(|z| builder.add_registered(format!("dd{}", z + 1)))
        .collect();
    let mut vote = VoteBuilder::new(builder.universe_size());
    vote.push_block(embedding.sets.iter().copied())
        .push(d)
        .push_block(embedding.elements.iter().copied())
        .push_block(dummies);
    builder.push_vote(vote.finish());
    let rule = if t == 1 {
        VotingRule::Veto
    } else {
        VotingRule::TVeto(t)
    };
    finish_deletion(builder, embedding, rule, d, ControlGoal::Destructive, src.h())
}

fn borda_dcdc(src: &SetCoverInstance) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    let z = builder.add_registered("z");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let universe = builder.universe_size();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(d)
        .push_block(embedding.elements.iter().copied())
        .push(p)
        .push_block(embedding.sets.iter().copied())
        .push(z);
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(p)
        .push(z)
        .push(d)
        .push_block(descending(&embedding.elements))
        .push_block(descending(&embedding.sets));
    builder.push_vote(v2.finish());
    finish_deletion(
        builder,
        embedding,
        VotingRule::Borda,
        d,
        ControlGoal::Destructive,
        src.h(),
    )
}

/// Borda-Comb-CCAC (constructive) and Borda-Comb-DCAC (destructive): two
/// voters, a dummy ladder keeping the gap between d and p at exactly the
/// number of elements; only bringing every element in closes it.
fn borda_ac(src: &SetCoverInstance, constructive: bool) -> Result<ControlInstance> {
    let n = src.ground_size();
    let mut builder = ElectionBuilder::new();
    let d = builder.add_registered("d");
    let p = builder.add_registered("p");
    let ladder = if constructive { n } else { n.saturating_sub(1) };
    let dummies: Vec<CandidateId> = (0..ladder)
        .map(|i| builder.add_registered(format!("dd{}", i + 1)))
        .collect();
    let embedding = Embedding::build(src, &mut builder, false, false);
    let universe = builder.universe_size();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(d)
        .push_block(dummies.iter().copied())
        .push(p)
        .push_block(embedding.sets.iter().copied())
        .push_block(embedding.elements.iter().copied());
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(p)
        .push_block(descending(&embedding.elements))
        .push(d)
        .push_block(embedding.sets.iter().copied())
        .push_block(descending(&dummies));
    builder.push_vote(v2.finish());

    let (designated, goal) = if constructive {
        (p, ControlGoal::Constructive)
    } else {
        (d, ControlGoal::Destructive)
    };
    finish_addition(builder, embedding, VotingRule::Borda, designated, goal, src.h())
}

/// Copeland-Comb-DCAC / Copeland-Comb-CCAC, three voters. The constructive
/// flavor widens the dummy ladder by one.
fn copeland_ac(
    src: &SetCoverInstance,
    rule: VotingRule,
    constructive: bool,
) -> Result<ControlInstance> {
    let n = src.ground_size();
    if n < 2 {
        return Err(Error::invalid_argument(
            "the Copeland adding gadgets need at least two elements",
        ));
    }
    let mut builder = ElectionBuilder::new();
    let d = builder.add_registered("d");
    let p = builder.add_registered("p");
    let ladder = if constructive { n - 1 } else { n - 2 };
    let dummies: Vec<CandidateId> = (0..ladder)
        .map(|i| builder.add_registered(format!("dd{}", i + 1)))
        .collect();
    let fences: Vec<CandidateId> = (0..n - 1)
        .map(|i| builder.add_registered(format!("f{}", i + 1)))
        .collect();
    let embedding = Embedding::build(src, &mut builder, false, false);
    let universe = builder.universe_size();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(d)
        .push_block(dummies.iter().copied())
        .push(p)
        .push_block(fences.iter().copied())
        .push_block(embedding.elements.iter().copied())
        .push_block(embedding.sets.iter().copied());
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(p)
        .push_block(descending(&fences))
        .push_block(descending(&embedding.elements))
        .push_block(descending(&dummies))
        .push(d)
        .push_block(descending(&embedding.sets));
    builder.push_vote(v2.finish());
    let mut v3 = VoteBuilder::new(universe);
    v3.push_block(embedding.elements.iter().copied())
        .push(d)
        .push_block(dummies.iter().copied())
        .push_block(fences.iter().copied())
        .push(p)
        .push_block(embedding.sets.iter().copied());
    builder.push_vote(v3.finish());

    let (designated, goal) = if constructive {
        (p, ControlGoal::Constructive)
    } else {
        (d, ControlGoal::Destructive)
    };
    finish_addition(builder, embedding, rule, designated, goal, src.h())
}

fn copeland_dcdc(src: &SetCoverInstance, rule: VotingRule) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let universe = builder.universe_size();
    let x = || embedding.elements.iter().copied();
    let s = || embedding.sets.iter().copied();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(p).push(d).push_block(x()).push_block(s());
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(d).push_block(x()).push(p).push_block(s());
    builder.push_vote(v2.finish());
    let mut v3 = VoteBuilder::new(universe);
    v3.push_block(descending(&embedding.elements))
        .push(p)
        .push(d)
        .push_block(descending(&embedding.sets));
    builder.push_vote(v3.finish());
    finish_deletion(builder, embedding, rule, d, ControlGoal::Destructive, src.h())
}

/// Six voters; every element arrival knocks one dummy's pairwise minimum
/// down, so p joins the winners exactly when all elements arrive.
fn maximin_ccac(src: &SetCoverInstance) -> Result<ControlInstance> {
    let n = src.ground_size() as usize;
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let dummies: Vec<CandidateId> = (0..n)
        .map(|i| builder.add_registered(format!("dd{}", i + 1)))
        .collect();
    let embedding = Embedding::build(src, &mut builder, false, false);
    let universe = builder.universe_size();
    let x = &embedding.elements;
    let s = || embedding.sets.iter().copied();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(p);
    for i in 0..n {
        v1.push(x[i]).push(dummies[i]);
    }
    v1.push_block(s());
    builder.push_vote(v1.finish());
    let mut v2 = VoteBuilder::new(universe);
    v2.push(p);
    for i in (0..n).rev() {
        v2.push(x[i]).push(dummies[i]);
    }
    v2.push_block(s());
    builder.push_vote(v2.finish());
    for _ in 0..2 {
        let mut v = VoteBuilder::new(universe);
        v.push_block(x.iter().copied())
            .push_block(dummies.iter().copied())
            .push(p)
            .push_block(s());
        builder.push_vote(v.finish());
        let mut w = VoteBuilder::new(universe);
        w.push_block(descending(&dummies))
            .push(p)
            .push_block(descending(x))
            .push_block(s());
        builder.push_vote(w.finish());
    }
    // interleave to the declared order: v1 v2 v3 v4 v5 v6 with v5=v3, v6=v4
    finish_addition(
        builder,
        embedding,
        VotingRule::Maximin,
        p,
        ControlGoal::Constructive,
        src.h(),
    )
}

fn maximin_dcdc(src: &SetCoverInstance) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    let e = builder.add_registered("e");
    let embedding = Embedding::build(src, &mut builder, true, false);
    let universe = builder.universe_size();
    let x = &embedding.elements;
    let s = || embedding.sets.iter().copied();

    let mut v1 = VoteBuilder::new(universe);
    v1.push(p)
        .push(d)
        .push_block(x.iter().copied())
        .push(e)
        .push_block(s());
    builder.push_vote(v1.finish());
    for _ in 0..2 {
        let mut v = VoteBuilder::new(universe);
        v.push(d)
            .push_block(x.iter().copied())
            .push(p)
            .push(e)
            .push_block(s());
        builder.push_vote(v.finish());
    }
    for _ in 0..2 {
        let mut v = VoteBuilder::new(universe);
        v.push(e)
            .push_block(descending(x))
            .push(p)
            .push(d)
            .push_block(descending(&embedding.sets));
        builder.push_vote(v.finish());
    }
    finish_deletion(
        builder,
        embedding,
        VotingRule::Maximin,
        d,
        ControlGoal::Destructive,
        src.h(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::{ControlAction, ControlGoal};
    use crate::election::CandidateSet;

    fn cover(ground: u32, sets: &[&[u32]], h: u32) -> SetCoverInstance {
        let families = sets.iter().map(|s| s.iter().copied().collect()).collect();
        SetCoverInstance::new(ground, families, h).unwrap()
    }

    fn comb(rule: VotingRule, action: ControlAction, goal: ControlGoal) -> ReductionTarget {
        ReductionTarget::new(rule, action, goal, true)
    }

    #[test]
    fn constant_voter_counts() {
        let src = cover(3, &[&[0, 1], &[1, 2], &[2]], 2);
        use ControlAction::*;
        use ControlGoal::*;
        let alpha = crate::rules::Alpha::half();
        let cases: Vec<(ReductionTarget, usize)> = vec![
            (comb(VotingRule::Borda, DeleteCandidates, Constructive), 1),
            (comb(VotingRule::TApproval(2), DeleteCandidates, Constructive), 1),
            (comb(VotingRule::TVeto(2), DeleteCandidates, Constructive), 1),
            (comb(VotingRule::Veto, DeleteCandidates, Destructive), 1),
            (comb(VotingRule::TApproval(2), DeleteCandidates, Destructive), 2),
            (comb(VotingRule::Borda, DeleteCandidates, Destructive), 2),
            (comb(VotingRule::Borda, AddCandidates, Constructive), 2),
            (comb(VotingRule::Borda, AddCandidates, Destructive), 2),
            (comb(VotingRule::Plurality, DeleteCandidates, Destructive), 3),
            (comb(VotingRule::Copeland(alpha), AddCandidates, Constructive), 3),
            (comb(VotingRule::Copeland(alpha), AddCandidates, Destructive), 3),
            (comb(VotingRule::Copeland(alpha), DeleteCandidates, Destructive), 3),
            (comb(VotingRule::Maximin, DeleteCandidates, Destructive), 5),
            (comb(VotingRule::Maximin, AddCandidates, Constructive), 6),
        ];
        for (target, expected) in cases {
            let inst = reduce_setcover(&src, &target).unwrap();
            assert_eq!(
                inst.election.voter_count(),
                expected,
                "voter count for {target}"
            );
        }
    }

    #[test]
    fn veto_ccdc_budget_is_h_plus_one() {
        let src = cover(2, &[&[0], &[1], &[0, 1]], 1);
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::TVeto(2),
                ControlAction::DeleteCandidates,
                ControlGoal::Constructive,
            ),
        )
        .unwrap();
        assert_eq!(inst.budget, src.h() + 1);
    }

    #[test]
    fn set_bundles_cover_their_elements() {
        let src = cover(2, &[&[0, 1]], 1);
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::Borda,
                ControlAction::DeleteCandidates,
                ControlGoal::Constructive,
            ),
        )
        .unwrap();
        let s1 = inst.election.id_of("s1").unwrap();
        let x1 = inst.election.id_of("x1").unwrap();
        let x2 = inst.election.id_of("x2").unwrap();
        let closed = inst.kappa.closure(&CandidateSet::from([s1])).unwrap();
        assert_eq!(closed, CandidateSet::from([s1, x1, x2]));
    }

    #[test]
    fn borda_dcdc_initial_score_ledger() {
        let src = cover(3, &[&[0, 1], &[2]], 2);
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::Borda,
                ControlAction::DeleteCandidates,
                ControlGoal::Destructive,
            ),
        )
        .unwrap();
        let scores = crate::rules::score_all(&inst.election, &inst.rule).unwrap();
        let id = |n: &str| inst.election.id_of(n).unwrap();
        let x = src.ground_size() as i64;
        let s = src.sets().len() as i64;
        assert_eq!(scores.scores[&id("d")], 2 * s + 2 * x + 2);
        assert_eq!(scores.scores[&id("p")], 2 * s + x + 3);
        for i in 1..=x {
            assert_eq!(scores.scores[&id(&format!("x{i}"))], 2 * s + x + 1);
        }
        assert_eq!(scores.scores[&id("z")], s + x + 1);
        for j in 1..=s {
            assert_eq!(scores.scores[&id(&format!("s{j}"))], s);
        }
    }

    #[test]
    fn copeland_dcac_initial_score_ledger() {
        // d dominates everything registered; p only beats the fences
        let src = cover(3, &[&[0, 1], &[1, 2]], 1);
        let n = src.ground_size() as i64;
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::Copeland(crate::rules::Alpha::half()),
                ControlAction::AddCandidates,
                ControlGoal::Destructive,
            ),
        )
        .unwrap();
        let scores = crate::rules::score_all(&inst.election, &inst.rule).unwrap();
        let id = |name: &str| inst.election.id_of(name).unwrap();
        let scale = scores.scale as i64;
        assert_eq!(scores.scores[&id("d")], (2 * n - 2) * scale);
        assert_eq!(scores.scores[&id("p")], (n - 1) * scale);
    }

    #[test]
    fn maximin_ccac_initial_score_ledger() {
        let src = cover(3, &[&[0, 1], &[1, 2]], 2);
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::Maximin,
                ControlAction::AddCandidates,
                ControlGoal::Constructive,
            ),
        )
        .unwrap();
        let scores = crate::rules::score_all(&inst.election, &inst.rule).unwrap();
        let id = |name: &str| inst.election.id_of(name).unwrap();
        assert_eq!(scores.scores[&id("p")], 2);
        for i in 1..=src.ground_size() {
            assert_eq!(scores.scores[&id(&format!("dd{i}"))], 3);
        }
        // adding every element candidate levels the dummies down to p
        let added: CandidateSet = (1..=src.ground_size())
            .map(|i| id(&format!("x{i}")))
            .collect();
        let election = inst.election.add_candidates(&added).unwrap();
        let after = crate::rules::score_all(&election, &inst.rule).unwrap();
        assert!(after.winners().contains(&inst.designated));
    }

    #[test]
    fn maximin_dcdc_cover_scores() {
        // deleting cover bundles clears the element block: p climbs to
        // three points while d stays at two
        let src = cover(2, &[&[0, 1]], 1);
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::Maximin,
                ControlAction::DeleteCandidates,
                ControlGoal::Destructive,
            ),
        )
        .unwrap();
        let p = inst.election.id_of("p").unwrap();
        let d = inst.election.id_of("d").unwrap();
        let before = crate::rules::score_all(&inst.election, &inst.rule).unwrap();
        assert_eq!(before.scores[&p], 1);
        assert_eq!(before.scores[&d], 2);
        let s1 = inst.election.id_of("s1").unwrap();
        let solution = crate::control::ControlSolution::new(CandidateSet::from([s1]));
        let outcome = crate::control::apply_solution(&inst, &solution).unwrap();
        let after = crate::rules::score_all(&outcome, &inst.rule).unwrap();
        assert_eq!(after.scores[&p], 3);
        assert_eq!(after.scores[&d], 2);
        assert!(crate::control::verify_solution(&inst, &solution));
    }

    #[test]
    fn unanimity_cover_puts_p_first_for_the_voter() {
        let src = cover(2, &[&[0, 1]], 1);
        let inst = reduce_setcover(
            &src,
            &comb(
                VotingRule::Borda,
                ControlAction::DeleteCandidates,
                ControlGoal::Constructive,
            ),
        )
        .unwrap();
        let s1 = inst.election.id_of("s1").unwrap();
        let outcome = crate::control::apply_solution(
            &inst,
            &crate::control::ControlSolution::new(CandidateSet::from([s1])),
        )
        .unwrap();
        assert_eq!(outcome.voters()[0].ranking()[0], inst.designated);
    }

    #[test]
    fn non_combinatorial_targets_are_rejected() {
        let src = cover(1, &[&[0]], 1);
        let target = ReductionTarget::new(
            VotingRule::Borda,
            ControlAction::DeleteCandidates,
            ControlGoal::Constructive,
            false,
        );
        assert!(reduce_setcover(&src, &target).is_err());
    }
}
