//! Gadget elections generated from cubic vertex-cover instances. The edge
//! set of a cubic graph splits into four matchings, so eight paired votes
//! (two per matching) encode the whole graph; a handful of closing votes
//! pins the initial scores so that only cover vertices can promote the
//! preferred candidate.

use std::collections::BTreeMap;

use crate::control::{ControlAction, ControlGoal, ControlInstance};
use crate::election::{BundlingFunction, CandidateId, ElectionBuilder};
use crate::error::{Error, Result};
use crate::reductions::coloring::{misra_gries_color, EdgeColoring};
use crate::reductions::source::Graph;
use crate::reductions::{descending, ReductionTarget, VoteBuilder};
use crate::rules::VotingRule;

struct Blocks {
    vertices: Vec<CandidateId>,
    edges: Vec<CandidateId>,
    /// per matching: the edge>v'>v'' runs (deleting flavor)
    a_fwd: Vec<Vec<CandidateId>>,
    a_rev: Vec<Vec<CandidateId>>,
    /// per matching: the v'>v''>edge runs (adding flavor)
    b_fwd: Vec<Vec<CandidateId>>,
    b_rev: Vec<Vec<CandidateId>>,
    /// per matching: edges and vertices untouched by it
    edges_out: Vec<Vec<CandidateId>>,
    verts_out: Vec<Vec<CandidateId>>,
}

fn build_blocks(
    graph: &Graph,
    coloring: &EdgeColoring,
    vertex_ids: &[CandidateId],
    edge_ids: &BTreeMap<(u32, u32), CandidateId>,
) -> Blocks {
    let mut a_fwd = Vec::new();
    let mut a_rev = Vec::new();
    let mut b_fwd = Vec::new();
    let mut b_rev = Vec::new();
    let mut edges_out = Vec::new();
    let mut verts_out = Vec::new();
    for l in 0..4 {
        let matching = &coloring.matchings()[l];
        let mut af = Vec::new();
        let mut bf = Vec::new();
        for &(u, v) in matching {
            let e = edge_ids[&(u, v)];
            af.extend([e, vertex_ids[u as usize], vertex_ids[v as usize]]);
            bf.extend([vertex_ids[u as usize], vertex_ids[v as usize], e]);
        }
        let mut ar = Vec::new();
        let mut br = Vec::new();
        for &(u, v) in matching.iter().rev() {
            let e = edge_ids[&(u, v)];
            ar.extend([e, vertex_ids[v as usize], vertex_ids[u as usize]]);
            br.extend([vertex_ids[v as usize], vertex_ids[u as usize], e]);
        }
        a_fwd.push(af);
        a_rev.push(ar);
        b_fwd.push(bf);
        b_rev.push(br);
        edges_out.push(
            coloring
                .edges_outside(l)
                .into_iter()
                .map(|pair| edge_ids[&pair])
                .collect(),
        );
        verts_out.push(
            coloring
                .vertices_outside(l, graph.vertex_count())
                .into_iter()
                .map(|v| vertex_ids[v as usize])
                .collect(),
        );
    }
    Blocks {
        vertices: vertex_ids.to_vec(),
        edges: edge_ids.values().copied().collect(),
        a_fwd,
        a_rev,
        b_fwd,
        b_rev,
        edges_out,
        verts_out,
    }
}

/// `reduce_cvc` entry point: Borda-CCDC/CCAC, Maximin-CCAC and
/// Copeland-CCAC/CCDC from a cubic graph and a cover budget.
pub fn reduce_cvc(src: &Graph, target: &ReductionTarget, h: u32) -> Result<ControlInstance> {
    if !src.is_cubic() {
        return Err(Error::invalid_argument(
            "vertex-cover gadgets require a cubic source graph",
        ));
    }
    use ControlAction::*;
    use ControlGoal::*;
    match (target.rule, target.shape()) {
        (VotingRule::Borda, (DeleteCandidates, Constructive, false)) => borda_ccdc(src, h),
        (VotingRule::Borda, (AddCandidates, Constructive, false)) => borda_ccac(src, h),
        (VotingRule::Maximin, (AddCandidates, Constructive, false)) => maximin_ccac(src, h),
        (VotingRule::Copeland(alpha), (AddCandidates, Constructive, false)) => {
            copeland_ccac(src, h, alpha)
        }
        (VotingRule::Copeland(alpha), (DeleteCandidates, Constructive, false)) => {
            copeland_ccdc(src, h, alpha)
        }
        _ => Err(Error::invalid_argument(format!(
            "unsupported vertex-cover target {target}"
        ))),
    }
}

struct Base {
    builder: ElectionBuilder,
    p: CandidateId,
    d: Option<CandidateId>,
    blocks: Blocks,
}

/// Candidates in a fixed id order: p, optional d, edges, vertices.
/// Registered candidates always precede the pool, which keeps serialized
/// instances bit-identical through a parse round trip.
fn base(src: &Graph, with_d: bool, vertices_registered: bool) -> Result<Base> {
    let coloring = misra_gries_color(src)?;
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = with_d.then(|| builder.add_registered("d"));
    let edge_ids: BTreeMap<(u32, u32), CandidateId> = src
        .edges()
        .iter()
        .map(|&(u, v)| {
            (
                (u, v),
                builder.add_registered(format!("u{}.u{}", u + 1, v + 1)),
            )
        })
        .collect();
    let vertex_ids: Vec<CandidateId> = (0..src.vertex_count())
        .map(|v| {
            let name = format!("u{}", v + 1);
            if vertices_registered {
                builder.add_registered(name)
            } else {
                builder.add_unregistered(name)
            }
        })
        .collect();
    let blocks = build_blocks(src, &coloring, &vertex_ids, &edge_ids);
    Ok(Base {
        builder,
        p,
        d,
        blocks,
    })
}

fn deletion_budget(h: u32, registered: usize) -> u32 {
    h.min(registered.saturating_sub(1) as u32)
}

fn borda_ccdc(src: &Graph, h: u32) -> Result<ControlInstance> {
    let Base {
        mut builder,
        p,
        d,
        blocks,
    } = base(src, true, true)?;
    let d = d.unwrap();
    let universe = builder.universe_size();
    for l in 0..4 {
        let mut mu = VoteBuilder::new(universe);
        mu.push_block(blocks.a_fwd[l].iter().copied())
            .push_block(blocks.edges_out[l].iter().copied())
            .push_block(blocks.verts_out[l].iter().copied())
            .push(d)
            .push(p);
        builder.push_vote(mu.finish());
        let mut mu2 = VoteBuilder::new(universe);
        mu2.push(p)
            .push(d)
            .push_block(descending(&blocks.verts_out[l]))
            .push_block(descending(&blocks.edges_out[l]))
            .push_block(blocks.a_rev[l].iter().copied());
        builder.push_vote(mu2.finish());
    }
    let mut closing = VoteBuilder::new(universe);
    closing
        .push(p)
        .push(d)
        .push_block(blocks.vertices.iter().copied())
        .push_block(blocks.edges.iter().copied());
    builder.push_vote(closing.finish());
    let mut closing2 = VoteBuilder::new(universe);
    closing2
        .push_block(descending(&blocks.edges))
        .push_block(descending(&blocks.vertices))
        .push(p)
        .push(d);
    builder.push_vote(closing2.finish());

    let election = builder.finish()?;
    let budget = deletion_budget(h, election.registered().len());
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        VotingRule::Borda,
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

fn borda_ccac(src: &Graph, h: u32) -> Result<ControlInstance> {
    let Base {
        mut builder,
        p,
        d,
        blocks,
    } = base(src, true, false)?;
    let d = d.unwrap();
    let universe = builder.universe_size();
    for l in 0..4 {
        let mut mu = VoteBuilder::new(universe);
        mu.push_block(blocks.b_fwd[l].iter().copied())
            .push_block(blocks.edges_out[l].iter().copied())
            .push_block(blocks.verts_out[l].iter().copied())
            .push(d)
            .push(p);
        builder.push_vote(mu.finish());
        let mut mu2 = VoteBuilder::new(universe);
        // the fourth pair flips p and d
        if l < 3 {
            mu2.push(p).push(d);
        } else {
            mu2.push(d).push(p);
        }
        mu2.push_block(descending(&blocks.verts_out[l]))
            .push_block(descending(&blocks.edges_out[l]))
            .push_block(blocks.b_rev[l].iter().copied());
        builder.push_vote(mu2.finish());
    }
    let mut closing = VoteBuilder::new(universe);
    closing
        .push_block(blocks.edges.iter().copied())
        .push(p)
        .push(d)
        .push_block(blocks.vertices.iter().copied());
    builder.push_vote(closing.finish());
    let mut closing2 = VoteBuilder::new(universe);
    closing2
        .push(p)
        .push_block(descending(&blocks.edges))
        .push(d)
        .push_block(descending(&blocks.vertices));
    builder.push_vote(closing2.finish());

    let election = builder.finish()?;
    let budget = h.min(election.unregistered().len() as u32);
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        VotingRule::Borda,
        ControlAction::AddCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

fn maximin_ccac(src: &Graph, h: u32) -> Result<ControlInstance> {
    let Base {
        mut builder,
        p,
        d: _,
        blocks,
    } = base(src, false, false)?;
    let universe = builder.universe_size();
    for l in 0..4 {
        // untouched vertices go ahead of untouched edges here: an incident
        // vertex must win its edge 6:4 across the ten votes, and the
        // edges-first layout would leave every such duel tied at five
        let mut mu = VoteBuilder::new(universe);
        mu.push_block(blocks.b_fwd[l].iter().copied())
            .push_block(blocks.verts_out[l].iter().copied())
            .push_block(blocks.edges_out[l].iter().copied())
            .push(p);
        builder.push_vote(mu.finish());
        let mut mu2 = VoteBuilder::new(universe);
        mu2.push(p)
            .push_block(descending(&blocks.verts_out[l]))
            .push_block(descending(&blocks.edges_out[l]))
            .push_block(blocks.b_rev[l].iter().copied());
        builder.push_vote(mu2.finish());
    }
    let mut closing = VoteBuilder::new(universe);
    closing
        .push_block(blocks.edges.iter().copied())
        .push(p)
        .push_block(blocks.vertices.iter().copied());
    builder.push_vote(closing.finish());
    let mut closing2 = VoteBuilder::new(universe);
    closing2
        .push_block(descending(&blocks.edges))
        .push(p)
        .push_block(descending(&blocks.vertices));
    builder.push_vote(closing2.finish());

    let election = builder.finish()?;
    let budget = h.min(election.unregistered().len() as u32);
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        VotingRule::Maximin,
        ControlAction::AddCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

fn copeland_ccac(src: &Graph, h: u32, alpha: crate::rules::Alpha) -> Result<ControlInstance> {
    let Base {
        mut builder,
        p,
        d,
        blocks,
    } = base(src, true, false)?;
    let d = d.unwrap();
    let universe = builder.universe_size();
    for l in 0..4 {
        for _ in 0..2 {
            let mut mu = VoteBuilder::new(universe);
            mu.push_block(blocks.b_fwd[l].iter().copied())
                .push_block(blocks.edges_out[l].iter().copied())
                .push_block(blocks.verts_out[l].iter().copied())
                .push(d)
                .push(p);
            builder.push_vote(mu.finish());
        }
        for _ in 0..2 {
            let mut mu2 = VoteBuilder::new(universe);
            mu2.push(p)
                .push(d)
                .push_block(descending(&blocks.verts_out[l]))
                .push_block(descending(&blocks.edges_out[l]))
                .push_block(blocks.b_rev[l].iter().copied());
            builder.push_vote(mu2.finish());
        }
    }
    let mut v = VoteBuilder::new(universe);
    v.push_block(blocks.edges.iter().copied())
        .push_block(blocks.vertices.iter().copied())
        .push(d)
        .push(p);
    builder.push_vote(v.finish());
    let mut v = VoteBuilder::new(universe);
    v.push(d)
        .push(p)
        .push_block(descending(&blocks.edges))
        .push_block(descending(&blocks.vertices));
    builder.push_vote(v.finish());
    let mut v = VoteBuilder::new(universe);
    v.push(p)
        .push_block(blocks.vertices.iter().copied())
        .push_block(blocks.edges.iter().copied())
        .push(d);
    builder.push_vote(v.finish());
    let mut v = VoteBuilder::new(universe);
    v.push_block(descending(&blocks.edges))
        .push(d)
        .push(p)
        .push_block(descending(&blocks.vertices));
    builder.push_vote(v.finish());

    let election = builder.finish()?;
    let budget = h.min(election.unregistered().len() as u32);
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        VotingRule::Copeland(alpha),
        ControlAction::AddCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

fn copeland_ccdc(src: &Graph, h: u32, alpha: crate::rules::Alpha) -> Result<ControlInstance> {
    let Base {
        mut builder,
        p,
        d,
        blocks,
    } = base(src, true, true)?;
    let d = d.unwrap();
    let z_count = src.vertex_count() as usize + src.edge_count();
    let z_block: Vec<CandidateId> = (0..z_count)
        .map(|i| builder.add_registered(format!("z{}", i + 1)))
        .collect();
    let universe = builder.universe_size();
    for l in 0..4 {
        for _ in 0..2 {
            let mut mu = VoteBuilder::new(universe);
            mu.push_block(blocks.a_fwd[l].iter().copied())
                .push_block(blocks.edges_out[l].iter().copied())
                .push_block(blocks.verts_out[l].iter().copied())
                .push_block(z_block.iter().copied())
                .push(d)
                .push(p);
            builder.push_vote(mu.finish());
        }
        for _ in 0..2 {
            let mut mu2 = VoteBuilder::new(universe);
            mu2.push(p)
                .push(d)
                .push_block(descending(&z_block))
                .push_block(descending(&blocks.verts_out[l]))
                .push_block(descending(&blocks.edges_out[l]))
                .push_block(blocks.a_rev[l].iter().copied());
            builder.push_vote(mu2.finish());
        }
    }
    // five hand-built pairs closing the head-to-head ledger
    let pairs: Vec<(Vec<CandidateId>, Vec<CandidateId>)> = {
        let verts = blocks.vertices.clone();
        let edges = blocks.edges.clone();
        let rv = descending(&verts);
        let re = descending(&edges);
        let rz = descending(&z_block);
        vec![
            (
                [verts.clone(), edges.clone(), z_block.clone(), vec![d, p]].concat(),
                [vec![p, d], rz.clone(), rv.clone(), re.clone()].concat(),
            ),
            (
                [verts.clone(), vec![p, d], edges.clone(), z_block.clone()].concat(),
                [re.clone(), rz.clone(), rv.clone(), vec![p, d]].concat(),
            ),
            (
                [vec![p], z_block.clone(), vec![d], verts.clone(), edges.clone()].concat(),
                [re.clone(), rv.clone(), vec![p], rz.clone(), vec![d]].concat(),
            ),
            (
                [vec![d], edges.clone(), z_block.clone(), verts.clone(), vec![p]].concat(),
                [vec![p], rv.clone(), rz.clone(), vec![d], re.clone()].concat(),
            ),
            (
                [z_block.clone(), verts.clone(), edges.clone(), vec![d, p]].concat(),
                [vec![p, d], re, rz, rv].concat(),
            ),
        ]
    };
    for (fwd, bwd) in pairs {
        let mut b = VoteBuilder::new(universe);
        b.push_block(fwd);
        builder.push_vote(b.finish());
        let mut b = VoteBuilder::new(universe);
        b.push_block(bwd);
        builder.push_vote(b.finish());
    }

    let election = builder.finish()?;
    let budget = deletion_budget(h, election.registered().len());
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        VotingRule::Copeland(alpha),
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{score_all, Alpha};

    fn target(rule: VotingRule, action: ControlAction) -> ReductionTarget {
        ReductionTarget::new(rule, action, ControlGoal::Constructive, false)
    }

    #[test]
    fn borda_ccdc_shape_on_k4() {
        let inst = reduce_cvc(
            &Graph::k4(),
            &target(VotingRule::Borda, ControlAction::DeleteCandidates),
            3,
        )
        .unwrap();
        assert_eq!(inst.election.voter_count(), 10);
        assert_eq!(inst.election.registered().len(), 12);
    }

    #[test]
    fn borda_ccdc_initial_score_ledger() {
        for g in [Graph::k4(), Graph::k33()] {
            let np = g.vertex_count() as i64;
            let mp = g.edge_count() as i64;
            let inst = reduce_cvc(
                &g,
                &target(VotingRule::Borda, ControlAction::DeleteCandidates),
                2,
            )
            .unwrap();
            let scores = score_all(&inst.election, &inst.rule).unwrap();
            let d = inst.election.id_of("d").unwrap();
            assert_eq!(scores.scores[&inst.designated], 5 * (np + mp) + 6);
            assert_eq!(scores.scores[&d], 5 * (np + mp) + 4);
            for v in 0..g.vertex_count() {
                let c = inst.election.id_of(&format!("u{}", v + 1)).unwrap();
                assert_eq!(scores.scores[&c], 5 * (np + mp) + 2);
            }
            for &(u, v) in g.edges() {
                let c = inst
                    .election
                    .id_of(&format!("u{}.u{}", u + 1, v + 1))
                    .unwrap();
                assert_eq!(scores.scores[&c], 5 * (np + mp) + 7);
            }
        }
    }

    #[test]
    fn borda_ccdc_cover_deletion_deltas() {
        // deleting a vertex cover drops p by exactly 5h and every covered
        // edge candidate by at least 5h + 1
        let g = Graph::k4();
        let h = 3u32;
        let inst = reduce_cvc(
            &g,
            &target(VotingRule::Borda, ControlAction::DeleteCandidates),
            h,
        )
        .unwrap();
        let before = score_all(&inst.election, &inst.rule).unwrap();
        let cover: crate::election::CandidateSet = (0..h)
            .map(|i| inst.election.id_of(&format!("u{}", i + 1)).unwrap())
            .collect();
        let restricted = inst.election.restrict(&cover).unwrap();
        let after = score_all(&restricted, &inst.rule).unwrap();
        let p = inst.designated;
        assert_eq!(before.scores[&p] - after.scores[&p], 5 * h as i64);
        for &(u, v) in g.edges() {
            let e = inst
                .election
                .id_of(&format!("u{}.u{}", u + 1, v + 1))
                .unwrap();
            assert!(before.scores[&e] - after.scores[&e] >= 5 * h as i64 + 1);
        }
    }

    #[test]
    fn borda_ccac_initial_winners_are_the_edge_candidates() {
        let g = Graph::k4();
        let inst = reduce_cvc(&g, &target(VotingRule::Borda, ControlAction::AddCandidates), 2)
            .unwrap();
        let winner_set = crate::rules::winners(&inst.election, &inst.rule).unwrap();
        let edges: crate::election::CandidateSet = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                inst.election
                    .id_of(&format!("u{}.u{}", u + 1, v + 1))
                    .unwrap()
            })
            .collect();
        assert_eq!(winner_set, edges);
    }

    #[test]
    fn borda_ccac_initial_scores() {
        let g = Graph::k4();
        let mp = g.edge_count() as i64;
        let inst = reduce_cvc(&g, &target(VotingRule::Borda, ControlAction::AddCandidates), 2)
            .unwrap();
        assert_eq!(inst.election.voter_count(), 10);
        let scores = score_all(&inst.election, &inst.rule).unwrap();
        let d = inst.election.id_of("d").unwrap();
        assert_eq!(scores.scores[&inst.designated], 5 * mp + 5);
        assert_eq!(scores.scores[&d], 4 * mp + 5);
        for &(u, v) in g.edges() {
            let c = inst
                .election
                .id_of(&format!("u{}.u{}", u + 1, v + 1))
                .unwrap();
            assert_eq!(scores.scores[&c], 5 * mp + 6);
        }
    }

    #[test]
    fn maximin_ccac_pairwise_structure() {
        let g = Graph::k4();
        let inst = reduce_cvc(
            &g,
            &target(VotingRule::Maximin, ControlAction::AddCandidates),
            2,
        )
        .unwrap();
        assert_eq!(inst.election.voter_count(), 10);
        let all: crate::election::CandidateSet = inst
            .election
            .registered()
            .union(inst.election.unregistered())
            .copied()
            .collect();
        let tally = inst.election.pairwise_tally(&all).unwrap();
        let p = inst.designated;
        for v in 0..g.vertex_count() {
            let vc = inst.election.id_of(&format!("u{}", v + 1)).unwrap();
            assert_eq!(tally.n(p, vc), 6);
        }
        for &(u, v) in g.edges() {
            let e = inst
                .election
                .id_of(&format!("u{}.u{}", u + 1, v + 1))
                .unwrap();
            assert_eq!(tally.n(p, e), 4);
            for w in 0..g.vertex_count() {
                let vc = inst.election.id_of(&format!("u{}", w + 1)).unwrap();
                if w == u || w == v {
                    // an incident vertex knocks its edge down to four
                    assert_eq!(tally.n(vc, e), 6, "vertex u{} vs edge ({u},{v})", w + 1);
                } else {
                    // nobody else may lower the edge below five
                    assert!(tally.n(vc, e) < 6, "vertex u{} vs edge ({u},{v})", w + 1);
                }
            }
        }
    }

    #[test]
    fn copeland_voter_counts_and_candidate_counts() {
        let g = Graph::k4();
        let ccac = reduce_cvc(
            &g,
            &target(VotingRule::Copeland(Alpha::half()), ControlAction::AddCandidates),
            2,
        )
        .unwrap();
        assert_eq!(ccac.election.voter_count(), 20);
        let ccdc = reduce_cvc(
            &g,
            &target(VotingRule::Copeland(Alpha::half()), ControlAction::DeleteCandidates),
            2,
        )
        .unwrap();
        assert_eq!(ccdc.election.voter_count(), 26);
        assert_eq!(ccdc.election.registered().len(), 2 + 4 + 6 + 10);
    }

    #[test]
    fn non_cubic_source_is_rejected() {
        let square = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(reduce_cvc(
            &square,
            &target(VotingRule::Borda, ControlAction::DeleteCandidates),
            1
        )
        .is_err());
    }
}
