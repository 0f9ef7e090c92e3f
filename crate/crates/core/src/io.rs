//! Text formats and seeded random generation.
//!
//! Control instances travel as `.eci` documents: header lines (`rule:`,
//! `control:`, `comb:`, `budget:`, `designated:`), candidate declarations,
//! optional `bundle:` lines and one `vote:` line per voter. Serialization
//! is canonical (candidates in id order, voters in input order) so
//! generated instances are reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::control::{ControlAction, ControlGoal, ControlInstance, SolveReport};
use crate::election::{
    BundlingFunction, CandidateId, CandidateSet, Election, PreferenceOrder,
};
use crate::error::{Error, Result};
use crate::reductions::{ColoredGraph, Graph, ReductionTarget, SetCoverInstance};
use crate::rules::{Alpha, VotingRule};

pub fn rule_token(rule: &VotingRule) -> String {
    rule.to_string()
}

pub fn parse_rule_token(token: &str) -> Option<VotingRule> {
    match token {
        "plurality" => return Some(VotingRule::Plurality),
        "veto" => return Some(VotingRule::Veto),
        "borda" => return Some(VotingRule::Borda),
        "maximin" => return Some(VotingRule::Maximin),
        _ => {}
    }
    if let Some(rest) = token.strip_prefix("copeland(") {
        let inner = rest.strip_suffix(')')?;
        let (num, den) = inner.split_once('/')?;
        let alpha = Alpha::new(num.parse().ok()?, den.parse().ok()?).ok()?;
        return Some(VotingRule::Copeland(alpha));
    }
    if let Some(t) = token.strip_suffix("-approval") {
        let t: u32 = t.parse().ok()?;
        return (t >= 1).then_some(VotingRule::TApproval(t));
    }
    if let Some(t) = token.strip_suffix("-veto") {
        let t: u32 = t.parse().ok()?;
        return (t >= 1).then_some(VotingRule::TVeto(t));
    }
    None
}

pub fn shape_token(action: ControlAction, goal: ControlGoal) -> &'static str {
    match (goal, action) {
        (ControlGoal::Constructive, ControlAction::AddCandidates) => "ccac",
        (ControlGoal::Constructive, ControlAction::DeleteCandidates) => "ccdc",
        (ControlGoal::Destructive, ControlAction::AddCandidates) => "dcac",
        (ControlGoal::Destructive, ControlAction::DeleteCandidates) => "dcdc",
    }
}

pub fn parse_shape_token(token: &str) -> Option<(ControlAction, ControlGoal)> {
    match token {
        "ccac" => Some((ControlAction::AddCandidates, ControlGoal::Constructive)),
        "ccdc" => Some((ControlAction::DeleteCandidates, ControlGoal::Constructive)),
        "dcac" => Some((ControlAction::AddCandidates, ControlGoal::Destructive)),
        "dcdc" => Some((ControlAction::DeleteCandidates, ControlGoal::Destructive)),
        _ => None,
    }
}

/// Target identifiers like `plurality-ccac`, `2-approval-comb-dcac`,
/// `copeland(1/2)-ccdc`.
pub fn parse_target(token: &str) -> Result<ReductionTarget> {
    let err = || Error::invalid_argument(format!("unrecognized target `{token}`"));
    let (head, shape) = token.rsplit_once('-').ok_or_else(err)?;
    let (action, goal) = parse_shape_token(shape).ok_or_else(err)?;
    let (rule_part, comb) = match head.strip_suffix("-comb") {
        Some(rule_part) => (rule_part, true),
        None => (head, false),
    };
    let rule = parse_rule_token(rule_part).ok_or_else(err)?;
    Ok(ReductionTarget::new(rule, action, goal, comb))
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.line, column, msg)
    }

    fn column_of(&self, token: &str) -> usize {
        self.text.find(token).map(|i| i + 1).unwrap_or(1)
    }
}

/// Parse an `.eci` document into a validated control instance.
pub fn parse_instance(text: &str) -> Result<ControlInstance> {
    let mut rule: Option<VotingRule> = None;
    let mut shape: Option<(ControlAction, ControlGoal)> = None;
    let mut comb: Option<bool> = None;
    let mut budget: Option<u32> = None;
    let mut designated: Option<String> = None;
    let mut registered: Vec<String> = Vec::new();
    let mut unregistered: Vec<String> = Vec::new();
    let mut saw_candidates = false;
    let mut bundles: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut votes: Vec<(usize, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let cur = Cursor {
            line: idx + 1,
            text: raw,
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| cur.err(1, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "rule" => {
                rule = Some(parse_rule_token(value).ok_or_else(|| {
                    cur.err(cur.column_of(value), format!("unknown rule `{value}`"))
                })?)
            }
            "control" => {
                shape = Some(parse_shape_token(value).ok_or_else(|| {
                    cur.err(cur.column_of(value), format!("unknown control type `{value}`"))
                })?)
            }
            "comb" => {
                comb = Some(match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(cur.err(cur.column_of(value), "expected true or false")),
                })
            }
            "budget" => {
                budget = Some(value.parse().map_err(|_| {
                    cur.err(cur.column_of(value), "budget must be a non-negative integer")
                })?)
            }
            "designated" => designated = Some(value.to_string()),
            "candidates" => {
                saw_candidates = true;
                registered = value.split_whitespace().map(str::to_string).collect();
            }
            "unregistered" => {
                unregistered = value.split_whitespace().map(str::to_string).collect();
            }
            "bundle" => {
                let (owner, members) = value.split_once("->").ok_or_else(|| {
                    cur.err(cur.column_of(value), "expected `bundle: owner -> members`")
                })?;
                bundles.push((
                    idx + 1,
                    owner.trim().to_string(),
                    members.split_whitespace().map(str::to_string).collect(),
                ));
            }
            "vote" => {
                votes.push((
                    idx + 1,
                    value.split('>').map(|t| t.trim().to_string()).collect(),
                ));
            }
            other => return Err(cur.err(1, format!("unknown directive `{other}`"))),
        }
    }

    let rule = rule.ok_or_else(|| Error::parse(1, 1, "missing `rule:` header"))?;
    let (action, goal) = shape.ok_or_else(|| Error::parse(1, 1, "missing `control:` header"))?;
    let comb = comb.unwrap_or(false);
    let budget = budget.ok_or_else(|| Error::parse(1, 1, "missing `budget:` header"))?;
    let designated =
        designated.ok_or_else(|| Error::parse(1, 1, "missing `designated:` header"))?;
    if !saw_candidates {
        return Err(Error::parse(1, 1, "missing `candidates:` declaration"));
    }

    let mut ids: BTreeMap<String, CandidateId> = BTreeMap::new();
    let mut names = Vec::new();
    for name in registered.iter().chain(&unregistered) {
        if ids.contains_key(name) {
            return Err(Error::parse(1, 1, format!("candidate `{name}` declared twice")));
        }
        ids.insert(name.clone(), CandidateId(names.len() as u32));
        names.push(name.clone());
    }
    let reg_set: CandidateSet = registered.iter().map(|n| ids[n]).collect();
    let pool_set: CandidateSet = unregistered.iter().map(|n| ids[n]).collect();

    let mut voters = Vec::new();
    for (line, tokens) in votes {
        let mut seen = BTreeSet::new();
        let mut ranking = Vec::new();
        for token in &tokens {
            let id = *ids.get(token).ok_or_else(|| {
                Error::parse(line, 1, format!("vote references unknown candidate `{token}`"))
            })?;
            if !seen.insert(id) {
                return Err(Error::parse(
                    line,
                    1,
                    format!("duplicate in ranking: `{token}`"),
                ));
            }
            ranking.push(id);
        }
        if ranking.len() != names.len() {
            return Err(Error::parse(
                line,
                1,
                format!(
                    "vote ranks {} of {} declared candidates",
                    ranking.len(),
                    names.len()
                ),
            ));
        }
        voters.push(PreferenceOrder::new(ranking));
    }

    let election = Election::new(names, reg_set, pool_set, voters)
        .map_err(|e| Error::parse(1, 1, e.to_string()))?;

    let mut kappa = BundlingFunction::identity(election.universe_size());
    for (line, owner, members) in bundles {
        let owner_id = *ids
            .get(&owner)
            .ok_or_else(|| Error::parse(line, 1, format!("unknown bundle owner `{owner}`")))?;
        let mut bundle = CandidateSet::new();
        for member in &members {
            bundle.insert(*ids.get(member).ok_or_else(|| {
                Error::parse(line, 1, format!("unknown bundle member `{member}`"))
            })?);
        }
        if !bundle.contains(&owner_id) {
            return Err(Error::parse(
                line,
                1,
                format!("bundle of `{owner}` does not contain `{owner}` itself"),
            ));
        }
        kappa.set_bundle(owner_id, bundle);
    }

    let designated_id = *ids
        .get(&designated)
        .ok_or_else(|| Error::parse(1, 1, format!("designated candidate `{designated}` missing")))?;
    ControlInstance::new(
        election,
        rule,
        action,
        goal,
        comb,
        kappa,
        designated_id,
        budget,
    )
    .map_err(|e| Error::parse(1, 1, e.to_string()))
}

/// Canonical `.eci` text for an instance; `parse_instance` round-trips it.
pub fn serialize_instance(instance: &ControlInstance) -> String {
    let election = &instance.election;
    let mut out = String::new();
    out.push_str(&format!("rule: {}\n", rule_token(&instance.rule)));
    out.push_str(&format!(
        "control: {}\n",
        shape_token(instance.action, instance.goal)
    ));
    out.push_str(&format!("comb: {}\n", instance.combinatorial));
    out.push_str(&format!("budget: {}\n", instance.budget));
    out.push_str(&format!(
        "designated: {}\n",
        election.name(instance.designated)
    ));
    let list = |set: &CandidateSet| {
        set.iter()
            .map(|&c| election.name(c))
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&format!("candidates: {}\n", list(election.registered())));
    if !election.unregistered().is_empty() {
        out.push_str(&format!("unregistered: {}\n", list(election.unregistered())));
    }
    for c in election
        .registered()
        .iter()
        .chain(election.unregistered())
    {
        if let Some(bundle) = instance.kappa.bundle(*c) {
            if bundle.len() > 1 {
                out.push_str(&format!(
                    "bundle: {} -> {}\n",
                    election.name(*c),
                    list(bundle)
                ));
            }
        }
    }
    for voter in election.voters() {
        let body = voter
            .ranking()
            .iter()
            .map(|&c| election.name(c))
            .collect::<Vec<_>>()
            .join(" > ");
        out.push_str(&format!("vote: {body}\n"));
    }
    out
}

/// Line-oriented graph text: `vertices <n>`, optional `colors ...` lines
/// (one per class) and `edge u v` lines.
pub struct GraphDocument {
    pub graph: Graph,
    pub classes: Option<Vec<Vec<u32>>>,
}

impl GraphDocument {
    pub fn colored(&self) -> Result<ColoredGraph> {
        let classes = self
            .classes
            .clone()
            .ok_or_else(|| Error::invalid_argument("graph file declares no color classes"))?;
        ColoredGraph::new(self.graph.clone(), classes)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    let mut vertices: Option<u32> = None;
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        let parse_u32 = |tok: &str| {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(idx + 1, 1, format!("expected an integer, got `{tok}`")))
        };
        match head {
            "vertices" => {
                if rest.len() != 1 {
                    return Err(Error::parse(idx + 1, 1, "expected `vertices <n>`"));
                }
                vertices = Some(parse_u32(rest[0])?);
            }
            "colors" => {
                classes.push(rest.iter().map(|t| parse_u32(t)).collect::<Result<_>>()?);
            }
            "edge" => {
                if rest.len() != 2 {
                    return Err(Error::parse(idx + 1, 1, "expected `edge <u> <v>`"));
                }
                edges.push((parse_u32(rest[0])?, parse_u32(rest[1])?));
            }
            other => {
                return Err(Error::parse(idx + 1, 1, format!("unknown directive `{other}`")))
            }
        }
    }
    let vertices = vertices.ok_or_else(|| Error::parse(1, 1, "missing `vertices` line"))?;
    let graph = Graph::new(vertices, &edges)?;
    Ok(GraphDocument {
        graph,
        classes: (!classes.is_empty()).then_some(classes),
    })
}

pub fn serialize_graph(graph: &Graph, classes: Option<&[Vec<u32>]>) -> String {
    let mut out = format!("vertices {}\n", graph.vertex_count());
    if let Some(classes) = classes {
        for class in classes {
            let body: Vec<String> = class.iter().map(u32::to_string).collect();
            out.push_str(&format!("colors {}\n", body.join(" ")));
        }
    }
    for &(u, v) in graph.edges() {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    out
}

/// Set-cover text: `universe <n>`, optional `budget <h>`, `set e1 e2 ...`
/// lines.
pub fn parse_setcover(text: &str) -> Result<SetCoverInstance> {
    let mut universe: Option<u32> = None;
    let mut budget = 0u32;
    let mut sets: Vec<BTreeSet<u32>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        let parse_u32 = |tok: &str| {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(idx + 1, 1, format!("expected an integer, got `{tok}`")))
        };
        match head {
            "universe" => {
                if rest.len() != 1 {
                    return Err(Error::parse(idx + 1, 1, "expected `universe <n>`"));
                }
                universe = Some(parse_u32(rest[0])?);
            }
            "budget" => {
                if rest.len() != 1 {
                    return Err(Error::parse(idx + 1, 1, "expected `budget <h>`"));
                }
                budget = parse_u32(rest[0])?;
            }
            "set" => {
                sets.push(rest.iter().map(|t| parse_u32(t)).collect::<Result<_>>()?);
            }
            other => {
                return Err(Error::parse(idx + 1, 1, format!("unknown directive `{other}`")))
            }
        }
    }
    let universe = universe.ok_or_else(|| Error::parse(1, 1, "missing `universe` line"))?;
    SetCoverInstance::new(universe, sets, budget)
}

pub fn serialize_setcover(instance: &SetCoverInstance) -> String {
    let mut out = format!("universe {}\n", instance.ground_size());
    out.push_str(&format!("budget {}\n", instance.h()));
    for set in instance.sets() {
        let body: Vec<String> = set.iter().map(u32::to_string).collect();
        out.push_str(&format!("set {}\n", body.join(" ")));
    }
    out
}

/// Seeded random-instance recipe: impartial-culture votes, independent
/// bundle membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub registered: u32,
    pub voters: u32,
    pub pool: u32,
    pub budget: u32,
    pub rule: VotingRule,
    pub action: ControlAction,
    pub goal: ControlGoal,
    pub combinatorial: bool,
    /// probability num/den of including each non-self candidate in a bundle
    pub bundle_density: (u32, u32),
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        if self.registered == 0 {
            return Err(Error::invalid_argument("need at least one registered candidate"));
        }
        if self.voters == 0 {
            return Err(Error::invalid_argument("need at least one voter"));
        }
        if self.action == ControlAction::DeleteCandidates && self.pool > 0 {
            return Err(Error::invalid_argument(
                "deleting-candidates instances cannot have a pool",
            ));
        }
        let (num, den) = self.bundle_density;
        if den == 0 || num > den {
            return Err(Error::invalid_argument("bundle density must be a rational in [0,1]"));
        }
        if !self.combinatorial && num > 0 {
            return Err(Error::invalid_argument(
                "non-combinatorial instances need bundle density 0",
            ));
        }
        Ok(())
    }
}

/// Deterministic per seed: same config, byte-identical serialization.
pub fn generate_random(config: &GeneratorConfig) -> Result<ControlInstance> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut builder = crate::election::ElectionBuilder::new();
    for i in 0..config.registered {
        builder.add_registered(format!("c{}", i + 1));
    }
    for j in 0..config.pool {
        builder.add_unregistered(format!("a{}", j + 1));
    }
    let universe = builder.universe_size();
    for _ in 0..config.voters {
        let mut ranking: Vec<CandidateId> =
            (0..universe).map(|i| CandidateId(i as u32)).collect();
        ranking.shuffle(&mut rng);
        builder.push_vote(ranking);
    }
    let election = builder.finish()?;
    let mut kappa = BundlingFunction::identity(universe);
    let (num, den) = config.bundle_density;
    if config.combinatorial && num > 0 {
        for owner in 0..universe {
            let owner = CandidateId(owner as u32);
            let mut bundle = CandidateSet::from([owner]);
            for member in 0..universe {
                let member = CandidateId(member as u32);
                if member != owner && rng.random_range(0..den) < num {
                    bundle.insert(member);
                }
            }
            kappa.set_bundle(owner, bundle);
        }
    }
    let cap = match config.action {
        ControlAction::AddCandidates => config.pool,
        ControlAction::DeleteCandidates => config.registered - 1,
    };
    ControlInstance::new(
        election,
        config.rule,
        config.action,
        config.goal,
        config.combinatorial,
        kappa,
        CandidateId(0),
        config.budget.min(cap),
    )
}

/// The result schema emitted by `--json`: decision, witness names,
/// algorithm and counters.
pub fn report_json(report: &SolveReport, election: &Election) -> serde_json::Value {
    let witness = report.witness.as_ref().map(|w| {
        w.chosen
            .iter()
            .map(|&c| election.name(c).to_string())
            .collect::<Vec<_>>()
    });
    serde_json::json!({
        "decision": if report.is_yes() { "yes" } else { "no" },
        "witness": witness,
        "algorithm": report.algorithm,
        "stats": report.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_parses() {
        let text = "rule: plurality\ncontrol: ccdc\nbudget: 0\ndesignated: a\ncandidates: a\nvote: a\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.budget, 0);
        assert_eq!(inst.election.registered().len(), 1);
    }

    #[test]
    fn duplicate_in_ranking_is_a_parse_error() {
        let text =
            "rule: plurality\ncontrol: ccdc\nbudget: 0\ndesignated: a\ncandidates: a b\nvote: a > a\n";
        match parse_instance(text) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 6);
                assert!(message.contains("duplicate in ranking"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bundle_without_reflexivity_is_rejected() {
        let text = "rule: plurality\ncontrol: dcdc\ncomb: true\nbudget: 1\ndesignated: a\ncandidates: a b c\nbundle: b -> c\nvote: a > b > c\n";
        assert!(matches!(parse_instance(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn generated_instances_round_trip_and_are_deterministic() {
        let config = GeneratorConfig {
            seed: 42,
            registered: 5,
            voters: 3,
            pool: 2,
            budget: 2,
            rule: VotingRule::TApproval(2),
            action: ControlAction::AddCandidates,
            goal: ControlGoal::Destructive,
            combinatorial: true,
            bundle_density: (1, 3),
        };
        let a = generate_random(&config).unwrap();
        let b = generate_random(&config).unwrap();
        assert_eq!(a, b);
        let text = serialize_instance(&a);
        let back = parse_instance(&text).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn zero_density_means_identity_bundles() {
        let config = GeneratorConfig {
            seed: 7,
            registered: 4,
            voters: 2,
            pool: 0,
            budget: 1,
            rule: VotingRule::Borda,
            action: ControlAction::DeleteCandidates,
            goal: ControlGoal::Constructive,
            combinatorial: true,
            bundle_density: (0, 1),
        };
        let inst = generate_random(&config).unwrap();
        assert!(inst.kappa.is_identity());
    }

    #[test]
    fn rule_tokens_round_trip() {
        let rules = [
            VotingRule::Plurality,
            VotingRule::Veto,
            VotingRule::TApproval(3),
            VotingRule::TVeto(2),
            VotingRule::Borda,
            VotingRule::Copeland(Alpha::new(1, 3).unwrap()),
            VotingRule::Maximin,
        ];
        for rule in rules {
            assert_eq!(parse_rule_token(&rule_token(&rule)), Some(rule));
        }
    }

    #[test]
    fn target_tokens_parse() {
        let t = parse_target("2-approval-comb-dcac").unwrap();
        assert_eq!(t.rule, VotingRule::TApproval(2));
        assert!(t.combinatorial);
        assert_eq!(t.action, ControlAction::AddCandidates);
        assert_eq!(t.goal, ControlGoal::Destructive);
        assert!(parse_target("nonsense").is_err());
        let u = parse_target("copeland(1/2)-ccdc").unwrap();
        assert_eq!(u.rule, VotingRule::Copeland(Alpha::half()));
        assert!(!u.combinatorial);
    }

    #[test]
    fn graph_and_setcover_files_round_trip() {
        let g = Graph::k4();
        let text = serialize_graph(&g, Some(&[vec![0, 1], vec![2, 3]]));
        let doc = parse_graph(&text).unwrap();
        assert_eq!(doc.graph, g);
        assert_eq!(doc.classes.as_deref(), Some(&[vec![0, 1], vec![2, 3]][..]));

        let sc = SetCoverInstance::new(3, vec![[0u32, 1].into(), [2u32].into()], 2).unwrap();
        let text = serialize_setcover(&sc);
        assert_eq!(parse_setcover(&text).unwrap(), sc);
    }
}
