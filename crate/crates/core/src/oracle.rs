//! Ground-truth brute-force solvers. These stay deliberately dumb: they
//! enumerate subsets in increasing cardinality (lexicographic within each
//! cardinality) and back every optimized solver and every reduction test.

use std::time::Instant;

use crate::control::{ControlAction, ControlGoal, ControlInstance, ControlSolution, SolveReport};
use crate::election::{CandidateId, CandidateSet};
use crate::error::{Error, Result};
use crate::reductions::{ColoredGraph, Graph, SetCoverInstance};
use crate::rules::winners_over_active;

/// Caps on enumeration work. Exceeding a cap is reported as
/// `Error::ResourceExhausted`, never silently turned into a "no".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget {
    pub max_subsets: u64,
    pub max_millis: u64,
}

impl WorkBudget {
    pub fn new(max_subsets: u64, max_millis: u64) -> Result<Self> {
        if max_subsets == 0 || max_millis == 0 {
            return Err(Error::invalid_argument("work budget caps must be positive"));
        }
        Ok(WorkBudget {
            max_subsets,
            max_millis,
        })
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget {
            max_subsets: 20_000_000,
            max_millis: 600_000,
        }
    }
}

pub(crate) struct WorkMeter {
    start: Instant,
    used: u64,
    budget: WorkBudget,
}

impl WorkMeter {
    pub(crate) fn new(budget: &WorkBudget) -> Self {
        WorkMeter {
            start: Instant::now(),
            used: 0,
            budget: *budget,
        }
    }

    /// Charge one unit of work; errs once the meter runs over.
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.max_subsets {
            return Err(Error::exhausted(format!(
                "exceeded {} enumeration steps",
                self.budget.max_subsets
            )));
        }
        // The clock is coarse; only look at it every so often.
        if self.used % 4096 == 0 && self.start.elapsed().as_millis() as u64 > self.budget.max_millis
        {
            return Err(Error::exhausted(format!(
                "exceeded {} ms",
                self.budget.max_millis
            )));
        }
        Ok(())
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}

/// Advance `indices` to the next k-combination of `0..n` in lexicographic
/// order; false when exhausted.
pub(crate) fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn candidate_base(instance: &ControlInstance) -> Vec<CandidateId> {
    // Bundles that would take out the designated candidate are never legal
    // to pick, for either constructive or destructive deletion.
    instance
        .choosable()
        .iter()
        .copied()
        .filter(|&c| {
            instance.action != ControlAction::DeleteCandidates
                || !instance
                    .kappa
                    .bundle(c)
                    .map(|b| b.contains(&instance.designated))
                    .unwrap_or(false)
        })
        .collect()
}

fn goal_met(instance: &ControlInstance, chosen: &CandidateSet) -> Result<bool> {
    let closed = instance.kappa.closure(chosen)?;
    let active: CandidateSet = match instance.action {
        ControlAction::AddCandidates => instance
            .election
            .registered()
            .union(&closed)
            .copied()
            .collect(),
        ControlAction::DeleteCandidates => instance
            .election
            .registered()
            .difference(&closed)
            .copied()
            .collect(),
    };
    let winner_set = winners_over_active(&instance.election, &instance.rule, &active)?;
    Ok(match instance.goal {
        ControlGoal::Constructive => winner_set.contains(&instance.designated),
        ControlGoal::Destructive => !winner_set.contains(&instance.designated),
    })
}

pub const ORACLE_ALGORITHM: &str = "oracle-bruteforce";

/// Exhaustive decision with a minimum-cardinality witness (lexicographically
/// least within that cardinality).
pub fn solve_control_bruteforce(
    instance: &ControlInstance,
    limit: &WorkBudget,
) -> Result<SolveReport> {
    solve_control_bruteforce_threaded(instance, limit, 1)
}

/// Same decision and witness as the sequential oracle. With more than one
/// worker each cardinality layer is scanned in parallel and the
/// lexicographically least hit of the layer is kept, which coincides with
/// the sequential first hit.
pub fn solve_control_bruteforce_threaded(
    instance: &ControlInstance,
    limit: &WorkBudget,
    threads: usize,
) -> Result<SolveReport> {
    let base = candidate_base(instance);
    let cap = (instance.budget as usize).min(base.len());
    let mut meter = WorkMeter::new(limit);

    for k in 0..=cap {
        if threads > 1 && k > 0 {
            match scan_layer_parallel(instance, &base, k, &mut meter, threads)? {
                Some(chosen) => {
                    let report = SolveReport::yes(ControlSolution::new(chosen), ORACLE_ALGORITHM)
                        .with_stat("subsets_explored", meter.used())
                        .with_stat("wall_ms", meter.elapsed_ms());
                    return Ok(report);
                }
                None => continue,
            }
        }
        let mut indices: Vec<usize> = (0..k).collect();
        loop {
            meter.tick()?;
            let chosen: CandidateSet = indices.iter().map(|&i| base[i]).collect();
            if goal_met(instance, &chosen)? {
                let report = SolveReport::yes(ControlSolution::new(chosen), ORACLE_ALGORITHM)
                    .with_stat("subsets_explored", meter.used())
                    .with_stat("wall_ms", meter.elapsed_ms());
                return Ok(report);
            }
            if !next_combination(&mut indices, base.len()) {
                break;
            }
        }
    }
    Ok(SolveReport::no(ORACLE_ALGORITHM)
        .with_stat("subsets_explored", meter.used())
        .with_stat("wall_ms", meter.elapsed_ms()))
}

fn scan_layer_parallel(
    instance: &ControlInstance,
    base: &[CandidateId],
    k: usize,
    meter: &mut WorkMeter,
    threads: usize,
) -> Result<Option<CandidateSet>> {
    // Materialize the layer, then split it across workers. Layers at desk
    // scale are small; the meter still guards the total.
    let mut layer: Vec<Vec<usize>> = Vec::new();
    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        meter.tick()?;
        layer.push(indices.clone());
        if !next_combination(&mut indices, base.len()) {
            break;
        }
    }
    let chunk = layer.len().div_ceil(threads);
    let results: Vec<Result<Option<CandidateSet>>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for part in layer.chunks(chunk.max(1)) {
            handles.push(scope.spawn(move || {
                for indices in part {
                    let chosen: CandidateSet = indices.iter().map(|&i| base[i]).collect();
                    if goal_met(instance, &chosen)? {
                        return Ok(Some(chosen));
                    }
                }
                Ok(None)
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut best: Option<CandidateSet> = None;
    for r in results {
        if let Some(hit) = r? {
            best = match best {
                None => Some(hit),
                Some(cur) if hit < cur => Some(hit),
                Some(cur) => Some(cur),
            };
        }
    }
    Ok(best)
}

/// The three source problems the reductions start from.
#[derive(Debug, Clone)]
pub enum GraphProblem {
    /// Is there a clique picking exactly one vertex of each color?
    MulticoloredClique(ColoredGraph),
    /// Can `h` of the sets cover the whole ground set?
    SetCover(SetCoverInstance),
    /// Is there a vertex cover of size at most `h`?
    VertexCover(Graph, u32),
}

/// Exact decision for a source problem by exhaustive search.
pub fn solve_graph_bruteforce(problem: &GraphProblem, limit: &WorkBudget) -> Result<bool> {
    let mut meter = WorkMeter::new(limit);
    match problem {
        GraphProblem::MulticoloredClique(colored) => {
            let h = colored.color_count();
            let graph = colored.graph();
            let mut pick = vec![0usize; h];
            loop {
                meter.tick()?;
                let chosen: Vec<u32> = (0..h).map(|i| colored.classes()[i][pick[i]]).collect();
                let mut clique = true;
                'pairs: for i in 0..h {
                    for j in i + 1..h {
                        if !graph.has_edge(chosen[i], chosen[j]) {
                            clique = false;
                            break 'pairs;
                        }
                    }
                }
                if clique {
                    return Ok(true);
                }
                // odometer over class members
                let mut pos = h;
                loop {
                    if pos == 0 {
                        return Ok(false);
                    }
                    pos -= 1;
                    pick[pos] += 1;
                    if pick[pos] < colored.classes()[pos].len() {
                        break;
                    }
                    pick[pos] = 0;
                }
            }
        }
        GraphProblem::SetCover(sc) => {
            let n = sc.sets().len();
            let cap = (sc.h() as usize).min(n);
            for k in 0..=cap {
                let mut indices: Vec<usize> = (0..k).collect();
                loop {
                    meter.tick()?;
                    let mut covered = vec![false; sc.ground_size() as usize];
                    for &i in &indices {
                        for &x in sc.sets()[i].iter() {
                            covered[x as usize] = true;
                        }
                    }
                    if covered.iter().all(|&c| c) {
                        return Ok(true);
                    }
                    if !next_combination(&mut indices, n) {
                        break;
                    }
                }
            }
            Ok(false)
        }
        GraphProblem::VertexCover(graph, h) => {
            let n = graph.vertex_count() as usize;
            let cap = (*h as usize).min(n);
            for k in 0..=cap {
                let mut indices: Vec<usize> = (0..k).collect();
                loop {
                    meter.tick()?;
                    let covered = graph.edges().iter().all(|&(u, v)| {
                        indices.iter().any(|&i| i as u32 == u || i as u32 == v)
                    });
                    if covered {
                        return Ok(true);
                    }
                    if !next_combination(&mut indices, n) {
                        break;
                    }
                }
            }
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::verify_solution;
    use crate::election::{BundlingFunction, ElectionBuilder};
    use crate::rules::VotingRule;

    fn one_voter_instance(
        order: &[&str],
        registered: &[&str],
        pool: &[&str],
        rule: VotingRule,
        action: ControlAction,
        goal: ControlGoal,
        designated: &str,
        budget: u32,
    ) -> ControlInstance {
        let mut b = ElectionBuilder::new();
        let mut ids = std::collections::BTreeMap::new();
        for &r in registered {
            ids.insert(r.to_string(), b.add_registered(r));
        }
        for &a in pool {
            ids.insert(a.to_string(), b.add_unregistered(a));
        }
        b.push_vote(order.iter().map(|&n| ids[n]).collect());
        let e = b.finish().unwrap();
        let kappa = BundlingFunction::identity(e.universe_size());
        let d = ids[designated];
        ControlInstance::new(e, rule, action, goal, false, kappa, d, budget).unwrap()
    }

    #[test]
    fn ccdc_budget_zero_with_winning_designated_is_yes_empty() {
        let inst = one_voter_instance(
            &["p", "a"],
            &["p", "a"],
            &[],
            VotingRule::Plurality,
            ControlAction::DeleteCandidates,
            ControlGoal::Constructive,
            "p",
            0,
        );
        let report = solve_control_bruteforce(&inst, &WorkBudget::default()).unwrap();
        assert!(report.is_yes());
        assert!(report.witness.as_ref().unwrap().chosen.is_empty());
        assert!(verify_solution(&inst, report.witness.as_ref().unwrap()));
    }

    #[test]
    fn one_voter_approval_dcdc_with_top_ranked_despised_is_no() {
        // Deleting candidates can only promote the despised candidate.
        let inst = one_voter_instance(
            &["d", "a", "b", "c"],
            &["d", "a", "b", "c"],
            &[],
            VotingRule::TApproval(2),
            ControlAction::DeleteCandidates,
            ControlGoal::Destructive,
            "d",
            3,
        );
        let report = solve_control_bruteforce(&inst, &WorkBudget::default()).unwrap();
        assert!(!report.is_yes());
    }

    #[test]
    fn budget_exhaustion_is_an_error_not_a_no() {
        let inst = one_voter_instance(
            &["d", "a", "b", "c"],
            &["d", "a", "b", "c"],
            &[],
            VotingRule::Plurality,
            ControlAction::DeleteCandidates,
            ControlGoal::Destructive,
            "d",
            3,
        );
        let tiny = WorkBudget::new(2, 10_000).unwrap();
        assert!(matches!(
            solve_control_bruteforce(&inst, &tiny),
            Err(Error::ResourceExhausted(_))
        ));
    }

    #[test]
    fn vertex_cover_oracle_on_k4() {
        let budget = WorkBudget::default();
        assert!(solve_graph_bruteforce(&GraphProblem::VertexCover(Graph::k4(), 3), &budget).unwrap());
        assert!(!solve_graph_bruteforce(&GraphProblem::VertexCover(Graph::k4(), 2), &budget).unwrap());
    }

    #[test]
    fn set_cover_oracle_small_cases() {
        let budget = WorkBudget::default();
        let sc1 = SetCoverInstance::new(2, vec![[0u32].into(), [1u32].into()], 1).unwrap();
        assert!(!solve_graph_bruteforce(&GraphProblem::SetCover(sc1), &budget).unwrap());
        let sc2 = SetCoverInstance::new(2, vec![[0u32].into(), [1u32].into()], 2).unwrap();
        assert!(solve_graph_bruteforce(&GraphProblem::SetCover(sc2), &budget).unwrap());
    }

    #[test]
    fn mcc_oracle_two_colors() {
        let budget = WorkBudget::default();
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let colored = ColoredGraph::new(g, vec![vec![0], vec![1]]).unwrap();
        assert!(
            solve_graph_bruteforce(&GraphProblem::MulticoloredClique(colored), &budget).unwrap()
        );
        let g2 = Graph::new(2, &[]).unwrap();
        let colored2 = ColoredGraph::new(g2, vec![vec![0], vec![1]]).unwrap();
        assert!(
            !solve_graph_bruteforce(&GraphProblem::MulticoloredClique(colored2), &budget).unwrap()
        );
    }

    #[test]
    fn parallel_oracle_matches_sequential_witness() {
        let inst = one_voter_instance(
            &["a", "b", "p", "c"],
            &["a", "b", "p", "c"],
            &[],
            VotingRule::Plurality,
            ControlAction::DeleteCandidates,
            ControlGoal::Constructive,
            "p",
            3,
        );
        let seq = solve_control_bruteforce(&inst, &WorkBudget::default()).unwrap();
        let par =
            solve_control_bruteforce_threaded(&inst, &WorkBudget::default(), 4).unwrap();
        assert_eq!(seq.decision, par.decision);
        assert_eq!(seq.witness, par.witness);
    }
}
