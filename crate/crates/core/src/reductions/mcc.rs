//! Gadget elections generated from multicolored-clique instances. One
//! candidate per vertex and two directed candidates per edge (a single
//! undirected candidate for the combinatorial adding target); paired orders
//! over vertex/edge interleavings force any cheap solution to pick exactly
//! the candidates of a multicolored clique.

use std::collections::BTreeMap;

use crate::control::{ControlAction, ControlGoal, ControlInstance};
use crate::election::{BundlingFunction, CandidateId, CandidateSet, ElectionBuilder};
use crate::error::{Error, Result};
use crate::reductions::source::ColoredGraph;
use crate::reductions::{ReductionTarget, VoteBuilder};
use crate::rules::VotingRule;

/// Vertex and directed-edge candidates addressed by (color, index) pairs.
struct Gadget {
    h: usize,
    class_size: usize,
    /// vertices[i][z]: candidate of the z-th vertex of color i
    vertices: Vec<Vec<CandidateId>>,
    /// directed edge candidate from (i, z) to (j, w)
    edges: BTreeMap<((usize, usize), (usize, usize)), CandidateId>,
}

impl Gadget {
    /// Register the vertex and directed-edge candidates on `builder`.
    /// `registered` decides whether they join the election or the pool.
    fn build(src: &ColoredGraph, builder: &mut ElectionBuilder, registered: bool) -> Gadget {
        let h = src.color_count();
        let class_size = src.class_size();
        let coord_of: BTreeMap<u32, (usize, usize)> = src
            .classes()
            .iter()
            .enumerate()
            .flat_map(|(i, class)| {
                class
                    .iter()
                    .enumerate()
                    .map(move |(z, &v)| (v, (i, z)))
            })
            .collect();
        let vname = |(i, z): (usize, usize)| format!("v{}_{}", i + 1, z + 1);
        let add = |b: &mut ElectionBuilder, name: String| {
            if registered {
                b.add_registered(name)
            } else {
                b.add_unregistered(name)
            }
        };
        let vertices: Vec<Vec<CandidateId>> = (0..h)
            .map(|i| {
                (0..class_size)
                    .map(|z| add(builder, vname((i, z))))
                    .collect()
            })
            .collect();
        let mut edges = BTreeMap::new();
        for &(u, v) in src.graph().edges() {
            let cu = coord_of[&u];
            let cv = coord_of[&v];
            let (a, b) = if cu < cv { (cu, cv) } else { (cv, cu) };
            let fwd = add(builder, format!("{}.{}", vname(a), vname(b)));
            let bwd = add(builder, format!("{}.{}", vname(b), vname(a)));
            edges.insert((a, b), fwd);
            edges.insert((b, a), bwd);
        }
        Gadget {
            h,
            class_size,
            vertices,
            edges,
        }
    }

    fn class(&self, i: usize) -> &[CandidateId] {
        &self.vertices[i]
    }

    /// Edge candidates leaving vertex (i, z) toward color j, by target
    /// index.
    fn leaving(&self, i: usize, z: usize, j: usize) -> Vec<CandidateId> {
        (0..self.class_size)
            .filter_map(|w| self.edges.get(&((i, z), (j, w))).copied())
            .collect()
    }

    /// All edge candidates from color i to color j, grouped by source
    /// vertex.
    fn between(&self, i: usize, j: usize) -> Vec<CandidateId> {
        (0..self.class_size)
            .flat_map(|z| self.leaving(i, z, j))
            .collect()
    }

    /// The vertex/edge interleaving v1 > L(v1,j) > v2 > L(v2,j) > ...
    fn interleaved(&self, i: usize, j: usize) -> Vec<CandidateId> {
        let mut block = Vec::new();
        for z in 0..self.class_size {
            block.push(self.vertices[i][z]);
            block.extend(self.leaving(i, z, j));
        }
        block
    }

    /// The mirrored interleaving L(v1,j) > v1 > L(v2,j) > v2 > ...
    fn interleaved_flipped(&self, i: usize, j: usize) -> Vec<CandidateId> {
        let mut block = Vec::new();
        for z in 0..self.class_size {
            block.extend(self.leaving(i, z, j));
            block.push(self.vertices[i][z]);
        }
        block
    }

    fn ordered_color_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.h {
            for j in 0..self.h {
                if i != j {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

fn choose2(h: u32) -> u32 {
    h * h.saturating_sub(1) / 2
}

/// `reduce_mcc` entry point: dispatch over the supported target catalog.
pub fn reduce_mcc(src: &ColoredGraph, target: &ReductionTarget) -> Result<ControlInstance> {
    if src.color_count() < 2 {
        return Err(Error::invalid_argument(
            "multicolored-clique gadgets need at least two colors",
        ));
    }
    use ControlAction::*;
    use ControlGoal::*;
    match (target.rule, target.shape()) {
        (VotingRule::Plurality, (AddCandidates, Constructive, false)) => {
            plurality_ccac(src, None)
        }
        (VotingRule::TApproval(t), (AddCandidates, Constructive, false)) if t >= 2 => {
            plurality_ccac(src, Some(t))
        }
        (VotingRule::Veto, (AddCandidates, Constructive, false)) => veto_ccac(src, None),
        (VotingRule::TVeto(t), (AddCandidates, Constructive, false)) if t >= 2 => {
            veto_ccac(src, Some(t))
        }
        (VotingRule::Veto, (DeleteCandidates, Constructive, false)) => veto_ccdc(src, None),
        (VotingRule::TVeto(t), (DeleteCandidates, Constructive, false)) if t >= 1 => {
            veto_ccdc(src, Some(t))
        }
        (VotingRule::TApproval(2), (DeleteCandidates, Constructive, false)) => {
            approval_ccdc(src, 2)
        }
        (VotingRule::TApproval(t), (DeleteCandidates, Constructive, false)) if t >= 3 => {
            approval_ccdc(src, t)
        }
        (VotingRule::TApproval(t), (AddCandidates, Destructive, true)) if t >= 2 => {
            approval_comb_dcac(src, t)
        }
        _ => Err(Error::invalid_argument(format!(
            "unsupported multicolored-clique target {target}"
        ))),
    }
}

/// Plurality-CCAC; with `approval = Some(t)` the t-Approval variant that
/// gives each voter t-1 personal dummies ranked first (everyone else ranks
/// them at the very bottom).
fn plurality_ccac(src: &ColoredGraph, approval: Option<u32>) -> Result<ControlInstance> {
    let h = src.color_count();
    let c2 = choose2(h as u32) as usize;
    let voter_total = 3 * h + 2 * (h + 1) * c2;

    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    // registered dummies precede the pool so serialized ids stay canonical
    let dummies: Vec<Vec<CandidateId>> = match approval {
        Some(t) => (0..voter_total)
            .map(|v| {
                (0..t - 1)
                    .map(|z| builder.add_registered(format!("d{}_{}", v + 1, z + 1)))
                    .collect()
            })
            .collect(),
        None => vec![Vec::new(); voter_total],
    };
    let gadget = Gadget::build(src, &mut builder, false);
    let universe = builder.universe_size();

    let all_dummies: Vec<CandidateId> = dummies.iter().flatten().copied().collect();
    let mut voter_idx = 0usize;
    let mut votes: Vec<Vec<CandidateId>> = Vec::new();
    let mut vote = |blocks: Vec<Vec<CandidateId>>, mid: CandidateId, last: CandidateId| {
        let own = &dummies[voter_idx];
        let foreign = all_dummies.iter().copied().filter(|c| !own.contains(c));
        let mut b = VoteBuilder::new(universe);
        b.push_block(own.iter().copied());
        for block in blocks {
            b.push_block(block);
        }
        b.push(mid);
        b.fill_then([last].into_iter().chain(foreign));
        votes.push(b.finish());
        voter_idx += 1;
    };
    for i in 0..h {
        vote(vec![gadget.class(i).to_vec()], d, p);
    }
    for &(i, j) in &gadget.ordered_color_pairs() {
        for _ in 0..h - 1 {
            vote(vec![gadget.between(i, j)], d, p);
        }
        vote(vec![gadget.interleaved(i, j)], d, p);
        vote(vec![gadget.interleaved_flipped(i, j)], d, p);
    }
    for _ in 0..h {
        vote(vec![], d, p);
    }
    for _ in 0..h {
        vote(vec![], p, d);
    }
    debug_assert_eq!(voter_idx, voter_total);
    for v in votes {
        builder.push_vote(v);
    }

    let rule = match approval {
        Some(t) => VotingRule::TApproval(t),
        None => VotingRule::Plurality,
    };
    let election = builder.finish()?;
    let pool = election.unregistered().len() as u32;
    let budget = (h as u32 + 2 * choose2(h as u32)).min(pool);
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        rule,
        ControlAction::AddCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

/// Veto-CCAC: the Plurality-CCAC construction with p and d swapped in every
/// vote, then every vote reversed. The t-Veto variant appends t-1 dummies
/// that every voter ranks last.
fn veto_ccac(src: &ColoredGraph, t_veto: Option<u32>) -> Result<ControlInstance> {
    let plurality = plurality_ccac(src, None)?;
    let p = plurality.designated;
    let d = plurality
        .election
        .id_of("d")
        .expect("gadget always has a despised candidate");
    let dummy_count = t_veto.map(|t| t - 1).unwrap_or(0);

    // rebuild the universe with the global dummies right after p and d so
    // the registered block stays an id prefix; old pool ids shift up
    let mut builder = ElectionBuilder::new();
    builder.add_registered("p");
    builder.add_registered("d");
    for z in 0..dummy_count {
        builder.add_registered(format!("d{}", z + 1));
    }
    for i in 2..plurality.election.universe_size() {
        let c = CandidateId(i as u32);
        builder.add_unregistered(plurality.election.name(c).to_string());
    }
    let remap = |c: CandidateId| {
        if c.0 < 2 {
            c
        } else {
            CandidateId(c.0 + dummy_count)
        }
    };
    let universe = builder.universe_size();
    for voter in plurality.election.voters() {
        let mut swapped: Vec<CandidateId> = voter
            .ranking()
            .iter()
            .map(|&c| {
                if c == p {
                    remap(d)
                } else if c == d {
                    remap(p)
                } else {
                    remap(c)
                }
            })
            .collect();
        swapped.reverse();
        let mut b = VoteBuilder::new(universe);
        b.push_block(swapped);
        b.fill(); // every voter ranks the global dummies last
        builder.push_vote(b.finish());
    }
    let election = builder.finish()?;
    let rule = match t_veto {
        Some(t) => VotingRule::TVeto(t),
        None => VotingRule::Veto,
    };
    let budget = plurality.budget.min(election.unregistered().len() as u32);
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        rule,
        ControlAction::AddCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        CandidateId(0),
        budget,
    )
}

/// Veto-CCDC: every vote buries a block below p; a winner must be left with
/// the full veto load, which only a clique's candidates can share evenly.
/// The t-Veto variant wraps every vote with t fresh dummies and adds one
/// voter block that vetoes them.
fn veto_ccdc(src: &ColoredGraph, t_veto: Option<u32>) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let gadget = Gadget::build(src, &mut builder, true);
    let h = gadget.h as u32;
    let cap_h = 2 * choose2(h); // the block size written H in the tallies

    // tails: every base vote is "everyone else > p > tail"
    let mut tails: Vec<Vec<CandidateId>> = Vec::new();
    for i in 0..gadget.h {
        for _ in 0..2 * cap_h - (h - 1) {
            tails.push(gadget.class(i).to_vec());
        }
    }
    for &(i, j) in &gadget.ordered_color_pairs() {
        for _ in 0..2 * cap_h - 1 {
            tails.push(gadget.between(i, j));
        }
        tails.push(gadget.interleaved(i, j));
        tails.push(gadget.interleaved_flipped(i, j));
    }
    for _ in 0..2 * cap_h {
        tails.push(Vec::new());
    }

    let (rule, extra_voters, dummies) = match t_veto {
        None => (VotingRule::Veto, 0usize, Vec::new()),
        Some(t) => {
            let dummies: Vec<CandidateId> = (0..t)
                .map(|z| builder.add_registered(format!("d{}", z + 1)))
                .collect();
            (VotingRule::TVeto(t), tails.len(), dummies)
        }
    };

    let universe = builder.universe_size();
    for tail in &tails {
        let mut b = VoteBuilder::new(universe);
        match (&dummies[..], tail.is_empty()) {
            ([], _) => {
                b.fill_then([p].into_iter().chain(tail.iter().copied()));
            }
            (ds, false) => {
                // d_t first, original vote, d_1..d_{t-1} last
                let (last, front) = ds.split_last().unwrap();
                b.push(*last);
                b.fill_then(
                    [p].into_iter()
                        .chain(tail.iter().copied())
                        .chain(front.iter().copied()),
                );
            }
            (ds, true) => {
                // the all-filler vote keeps p last
                let (last, front) = ds.split_last().unwrap();
                b.push(*last);
                b.fill_then(front.iter().copied().chain([p]));
            }
        }
        builder.push_vote(b.finish());
    }
    for _ in 0..extra_voters {
        let mut b = VoteBuilder::new(universe);
        b.fill_then([p].into_iter().chain(dummies.iter().copied()));
        builder.push_vote(b.finish());
    }

    let election = builder.finish()?;
    let vertices = src.graph().vertex_count();
    let edge_count = src.graph().edge_count() as u32;
    let raw = vertices as i64 - h as i64 + 2 * edge_count as i64 - 2 * choose2(h) as i64;
    let budget = raw.max(0).min(election.registered().len() as i64 - 1) as u32;
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        rule,
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

/// 2-Approval-CCDC, and the t >= 3 variant that shields each voter with a
/// personal dummy prefix plus blocker-protecting voters.
fn approval_ccdc(src: &ColoredGraph, t: u32) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let gadget_blockers = src.graph().vertex_count() as usize + src.graph().edge_count();
    let blockers: Vec<CandidateId> = (0..gadget_blockers)
        .map(|i| builder.add_registered(format!("b{}", i + 1)))
        .collect();
    let gadget = Gadget::build(src, &mut builder, true);
    let h = gadget.h;
    let cap_h = 2 * choose2(h as u32) as usize;
    let color_dummies: Vec<CandidateId> = (0..h)
        .map(|i| builder.add_registered(format!("d{}", i + 1)))
        .collect();
    let pair_dummies: BTreeMap<(usize, usize), CandidateId> = gadget
        .ordered_color_pairs()
        .into_iter()
        .map(|(i, j)| {
            (
                (i, j),
                builder.add_registered(format!("f{}_{}", i + 1, j + 1)),
            )
        })
        .collect();

    // prefix blocks of the base votes; the blocker run and ascending fill
    // complete each one
    let mut prefixes: Vec<Vec<CandidateId>> = Vec::new();
    for _ in 0..h + 3 * cap_h {
        prefixes.push(Vec::new());
    }
    for i in 0..h {
        let mut first = gadget.class(i).to_vec();
        first.push(p);
        prefixes.push(first);
        for _ in 0..3 * cap_h {
            let mut rest = gadget.class(i).to_vec();
            rest.push(color_dummies[i]);
            prefixes.push(rest);
        }
    }
    for &(i, j) in &gadget.ordered_color_pairs() {
        let mut first = gadget.between(i, j);
        first.push(p);
        prefixes.push(first);
        for _ in 0..3 * cap_h + h - 2 {
            let mut rest = gadget.between(i, j);
            rest.push(pair_dummies[&(i, j)]);
            prefixes.push(rest);
        }
    }
    for &(i, j) in &gadget.ordered_color_pairs() {
        let mut fwd = vec![p];
        fwd.extend(gadget.interleaved(i, j));
        prefixes.push(fwd);
        let mut bwd = vec![p];
        bwd.extend(gadget.interleaved_flipped(i, j));
        prefixes.push(bwd);
    }

    // t >= 3: a personal dummy prefix per base voter, plus voters that make
    // deleting any of those dummies feed the blockers
    let personal: Vec<Vec<CandidateId>> = if t >= 3 {
        (0..prefixes.len())
            .map(|v| {
                (0..t - 2)
                    .map(|z| builder.add_registered(format!("g{}_{}", v + 1, z + 1)))
                    .collect()
            })
            .collect()
    } else {
        vec![Vec::new(); prefixes.len()]
    };
    let guards: Vec<Vec<CandidateId>> = if t >= 3 {
        (0..prefixes.len())
            .map(|v| {
                (0..2)
                    .map(|z| builder.add_registered(format!("c{}_{}", v + 1, z + 1)))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };

    let universe = builder.universe_size();
    let base_count = prefixes.len();
    for (v, prefix) in prefixes.iter().enumerate() {
        let mut b = VoteBuilder::new(universe);
        b.push_block(personal[v].iter().copied());
        let keeps_p_last = prefix.is_empty();
        b.push_block(prefix.iter().copied());
        if keeps_p_last {
            b.push_block(blockers.iter().copied());
            b.fill_then([p]);
        } else {
            b.push_block(blockers.iter().copied());
            b.fill();
        }
        builder.push_vote(b.finish());
    }
    if t >= 3 {
        for v in 0..base_count {
            for _ in 0..base_count - 1 {
                let mut b = VoteBuilder::new(universe);
                b.push_block(personal[v].iter().copied());
                b.push_block(guards[v].iter().copied());
                b.push_block(blockers.iter().copied());
                b.fill();
                builder.push_vote(b.finish());
            }
        }
    }

    let election = builder.finish()?;
    let vertices = src.graph().vertex_count() as i64;
    let edges = src.graph().edge_count() as i64;
    let raw = vertices - h as i64 + 2 * edges - 2 * choose2(h as u32) as i64;
    let budget = raw.max(0).min(election.registered().len() as i64 - 1) as u32;
    let kappa = BundlingFunction::identity(election.universe_size());
    ControlInstance::new(
        election,
        VotingRule::TApproval(t),
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
        false,
        kappa,
        p,
        budget,
    )
}

/// t-Approval-Comb-DCAC: single undirected edge candidates whose bundles
/// drag in both endpoints; adding a clique's edges strips the despised
/// candidate of its pair points while the color votes keep paying p.
fn approval_comb_dcac(src: &ColoredGraph, t: u32) -> Result<ControlInstance> {
    let mut builder = ElectionBuilder::new();
    let p = builder.add_registered("p");
    let d = builder.add_registered("d");
    let h = src.color_count();
    let mut pair_dummies: BTreeMap<(usize, usize), Vec<CandidateId>> = BTreeMap::new();
    for i in 0..h {
        for j in i + 1..h {
            let block = (0..t - 1)
                .map(|z| builder.add_registered(format!("d{}_{}_{}", i + 1, j + 1, z + 1)))
                .collect();
            pair_dummies.insert((i, j), block);
        }
    }
    let color_dummies: Vec<Vec<CandidateId>> = (0..h)
        .map(|i| {
            (0..t - 1)
                .map(|z| builder.add_registered(format!("g{}_{}", i + 1, z + 1)))
                .collect()
        })
        .collect();
    let point_dummies: Vec<Vec<CandidateId>> = (0..h)
        .map(|i| {
            (0..t - 1)
                .map(|z| builder.add_registered(format!("e{}_{}", i + 1, z + 1)))
                .collect()
        })
        .collect();
    // One p-first voter with a private dummy tail keeps p one point ahead
    // of the locked-in part of d's score. Without it, adding a clique's
    // edge bundles leaves p and d tied and d would stay a co-winner.
    let anchor_dummies: Vec<CandidateId> = (0..t - 1)
        .map(|z| builder.add_registered(format!("w{}", z + 1)))
        .collect();

    // pool: vertices and single undirected edge candidates
    let coord_of: BTreeMap<u32, (usize, usize)> = src
        .classes()
        .iter()
        .enumerate()
        .flat_map(|(i, class)| class.iter().enumerate().map(move |(z, &v)| (v, (i, z))))
        .collect();
    let vname = |(i, z): (usize, usize)| format!("v{}_{}", i + 1, z + 1);
    let vertex_ids: BTreeMap<(usize, usize), CandidateId> = {
        let mut ids = BTreeMap::new();
        for i in 0..h {
            for z in 0..src.class_size() {
                ids.insert((i, z), builder.add_unregistered(vname((i, z))));
            }
        }
        ids
    };
    let mut edge_ids: BTreeMap<((usize, usize), (usize, usize)), CandidateId> = BTreeMap::new();
    let mut kappa_edges: Vec<(CandidateId, CandidateSet)> = Vec::new();
    for &(u, v) in src.graph().edges() {
        let (a, b) = {
            let (ca, cb) = (coord_of[&u], coord_of[&v]);
            if ca < cb {
                (ca, cb)
            } else {
                (cb, ca)
            }
        };
        let e = builder.add_unregistered(format!("{}.{}", vname(a), vname(b)));
        edge_ids.insert((a, b), e);
        kappa_edges.push((e, CandidateSet::from([e, vertex_ids[&a], vertex_ids[&b]])));
    }

    let universe = builder.universe_size();
    for i in 0..h {
        for j in i + 1..h {
            let mut b = VoteBuilder::new(universe);
            let between: Vec<CandidateId> = edge_ids
                .iter()
                .filter(|(((ci, _), (cj, _)), _)| *ci == i && *cj == j)
                .map(|(_, &e)| e)
                .collect();
            b.push_block(between);
            b.push_block(pair_dummies[&(i, j)].iter().copied());
            b.push(d);
            b.fill();
            builder.push_vote(b.finish());
        }
    }
    for i in 0..h {
        let mut b = VoteBuilder::new(universe);
        let class: Vec<CandidateId> = (0..src.class_size()).map(|z| vertex_ids[&(i, z)]).collect();
        b.push_block(class);
        let dummies = &color_dummies[i];
        if let Some((last, front)) = dummies.split_last() {
            b.push_block(front.iter().copied());
            b.push(p);
            b.push(*last);
        } else {
            b.push(p);
        }
        b.fill();
        builder.push_vote(b.finish());
    }
    for i in 0..h {
        let mut b = VoteBuilder::new(universe);
        b.push(d);
        b.push_block(point_dummies[i].iter().copied());
        b.fill();
        builder.push_vote(b.finish());
    }
    let mut anchor = VoteBuilder::new(universe);
    anchor.push(p);
    anchor.push_block(anchor_dummies.iter().copied());
    anchor.fill();
    builder.push_vote(anchor.finish());

    let election = builder.finish()?;
    let mut kappa = BundlingFunction::identity(election.universe_size());
    for (e, bundle) in kappa_edges {
        kappa.set_bundle(e, bundle);
    }
    let budget = choose2(h as u32).min(election.unregistered().len() as u32);
    ControlInstance::new(
        election,
        VotingRule::TApproval(t),
        ControlAction::AddCandidates,
        ControlGoal::Destructive,
        true,
        kappa,
        d,
        budget,
    )
}
