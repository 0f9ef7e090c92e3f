//! Criterion benchmarks for the solver suite: the signature DP at its
//! headline scale, the delta/ILP deletion path, the brute-force oracle at
//! desk scale, edge coloring, and gadget emission.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use controlctl_core::io::{generate_random, GeneratorConfig};
use controlctl_core::oracle::{solve_control_bruteforce, WorkBudget};
use controlctl_core::reductions::{misra_gries_color, reduce_cvc, Graph, ReductionTarget};
use controlctl_core::rules::VotingRule;
use controlctl_core::solvers::{
    solve_approval_dcdc_ilp, solve_approval_xp, solve_dcac_signature_plurality_veto,
};
use controlctl_core::{ControlAction, ControlGoal, ControlInstance};

fn config(
    seed: u64,
    registered: u32,
    voters: u32,
    pool: u32,
    budget: u32,
    rule: VotingRule,
    action: ControlAction,
    goal: ControlGoal,
) -> ControlInstance {
    generate_random(&GeneratorConfig {
        seed,
        registered,
        voters,
        pool,
        budget,
        rule,
        action,
        goal,
        combinatorial: false,
        bundle_density: (0, 1),
    })
    .expect("valid bench config")
}

fn bench_signature_dp(c: &mut Criterion) {
    // worst case for the DP: the despised candidate is ranked first
    // outright by six of ten voters, so every challenger pass must run to
    // exhaustion before the solver can answer no
    use controlctl_core::{BundlingFunction, CandidateId, ElectionBuilder};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let registered = 9_950u32;
    let pool = 50u32;
    let universe = (registered + pool) as usize;
    let mut builder = ElectionBuilder::new();
    for i in 0..registered {
        builder.add_registered(format!("c{i}"));
    }
    for j in 0..pool {
        builder.add_unregistered(format!("a{j}"));
    }
    let despised = CandidateId(0);
    for voter in 0..10 {
        let mut rest: Vec<CandidateId> = (1..universe as u32).map(CandidateId).collect();
        rest.shuffle(&mut rng);
        let mut ranking = Vec::with_capacity(universe);
        if voter < 6 {
            ranking.push(despised);
            ranking.extend(rest);
        } else {
            ranking.extend_from_slice(&rest[..3]);
            ranking.push(despised);
            ranking.extend_from_slice(&rest[3..]);
        }
        builder.push_vote(ranking);
    }
    let election = builder.finish().unwrap();
    let kappa = BundlingFunction::identity(universe);
    let large = ControlInstance::new(
        election,
        VotingRule::Plurality,
        ControlAction::AddCandidates,
        ControlGoal::Destructive,
        false,
        kappa,
        despised,
        3,
    )
    .unwrap();
    c.bench_function("signature_dp_plurality_dcac_m10000_n10", |b| {
        b.iter(|| solve_dcac_signature_plurality_veto(black_box(&large)).unwrap())
    });
}

fn bench_delta_ilp(c: &mut Criterion) {
    let budget = WorkBudget::default();
    let instance = config(
        6,
        50,
        3,
        0,
        3,
        VotingRule::TApproval(2),
        ControlAction::DeleteCandidates,
        ControlGoal::Destructive,
    );
    c.bench_function("delta_ilp_2approval_dcdc_m50_n3", |b| {
        b.iter(|| solve_approval_dcdc_ilp(black_box(&instance), &budget).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let budget = WorkBudget::default();
    let instance = config(
        7,
        10,
        4,
        0,
        4,
        VotingRule::Borda,
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
    );
    c.bench_function("oracle_borda_ccdc_m10_k4", |b| {
        b.iter(|| solve_control_bruteforce(black_box(&instance), &budget).unwrap())
    });
}

fn bench_xp_guess(c: &mut Criterion) {
    let budget = WorkBudget::default();
    let instance = config(
        8,
        6,
        3,
        0,
        2,
        VotingRule::TApproval(2),
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
    );
    c.bench_function("xp_guess_2approval_ccdc_m6_n3", |b| {
        b.iter(|| solve_approval_xp(black_box(&instance), &budget).unwrap())
    });
}

fn bench_edge_coloring_and_gadgets(c: &mut Criterion) {
    let graph = Graph::random_cubic(20, 3).unwrap();
    c.bench_function("misra_gries_cubic_n20", |b| {
        b.iter(|| misra_gries_color(black_box(&graph)).unwrap())
    });
    let target = ReductionTarget::new(
        VotingRule::Borda,
        ControlAction::DeleteCandidates,
        ControlGoal::Constructive,
        false,
    );
    c.bench_function("reduce_cvc_borda_ccdc_n20", |b| {
        b.iter(|| reduce_cvc(black_box(&graph), &target, 8).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_signature_dp, bench_delta_ilp, bench_oracle, bench_xp_guess,
              bench_edge_coloring_and_gadgets
}
criterion_main!(benches);
