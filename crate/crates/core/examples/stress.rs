//! One-off randomized cross-check at larger seed counts than the
//! committed acceptance sweeps. Not part of the test suite.
use controlctl_core::io::{generate_random, GeneratorConfig};
use controlctl_core::oracle::{solve_control_bruteforce, WorkBudget};
use controlctl_core::solvers::*;
use controlctl_core::*;

fn main() {
    let budget = WorkBudget::default();
    let mut bad = 0u32;
    let mut run = |label: &str,
                   base: GeneratorConfig,
                   seeds: u64,
                   solver: &dyn Fn(&ControlInstance, &WorkBudget) -> Result<SolveReport>| {
        for seed in 0..seeds {
            let config = GeneratorConfig {
                seed: seed.wrapping_mul(0x100001b3) ^ label.len() as u64,
                ..base
            };
            let instance = generate_random(&config).unwrap();
            let expected = solve_control_bruteforce(&instance, &budget).unwrap();
            let got = solver(&instance, &budget).unwrap();
            if got.is_yes() != expected.is_yes() {
                println!("DISAGREE {label} seed {seed}: {:?} vs oracle {:?}", got.decision, expected.decision);
                bad += 1;
            }
            if let Some(w) = &got.witness {
                if !verify_solution(&instance, w) {
                    println!("BAD WITNESS {label} seed {seed}");
                    bad += 1;
                }
            }
        }
        println!("done: {label} x{seeds}");
    };
    use ControlAction::*;
    use ControlGoal::*;
    let g = |rule, action, goal, comb, registered, pool, voters, budget, density| GeneratorConfig {
        seed: 0, registered, voters, pool, budget, rule, action, goal,
        combinatorial: comb, bundle_density: density,
    };
    // dense bundles, plurality/veto comb DCAC
    run("sig-dp plur comb dense", g(VotingRule::Plurality, AddCandidates, Destructive, true, 3, 5, 4, 3, (1, 2)), 2000, &|i, _| solve_dcac_signature_plurality_veto(i));
    run("sig-dp veto comb dense", g(VotingRule::Veto, AddCandidates, Destructive, true, 3, 5, 4, 3, (1, 2)), 2000, &|i, _| solve_dcac_signature_plurality_veto(i));
    run("sig-dp veto comb full", g(VotingRule::Veto, AddCandidates, Destructive, true, 2, 6, 3, 4, (2, 3)), 2000, &|i, _| solve_dcac_signature_plurality_veto(i));
    // counted DP with n=4
    run("sig-approval n4", g(VotingRule::TApproval(2), AddCandidates, Destructive, false, 4, 4, 4, 3, (0, 1)), 1500, &|i, _| solve_dcac_signature_approval(i));
    run("sig-veto n4", g(VotingRule::TVeto(2), AddCandidates, Destructive, false, 4, 4, 4, 3, (0, 1)), 1500, &|i, _| solve_dcac_signature_approval(i));
    // delta ilp with n=4 and bigger budgets
    run("delta-ilp n4 2app", g(VotingRule::TApproval(2), DeleteCandidates, Destructive, false, 8, 0, 4, 3, (0, 1)), 1500, &|i, b| solve_approval_dcdc_ilp(i, b));
    run("delta-ilp n4 2veto", g(VotingRule::TVeto(2), DeleteCandidates, Destructive, false, 8, 0, 4, 3, (0, 1)), 1500, &|i, b| solve_approval_dcdc_ilp(i, b));
    // xp comb paths with dense bundles
    run("xp 2app comb-ccac dense", g(VotingRule::TApproval(2), AddCandidates, Constructive, true, 3, 4, 3, 2, (1, 2)), 800, &|i, b| solve_approval_xp(i, b));
    run("xp 2veto comb-dcac dense", g(VotingRule::TVeto(2), AddCandidates, Destructive, true, 3, 4, 3, 2, (1, 2)), 800, &|i, b| solve_approval_xp(i, b));
    run("xp veto comb-dcac dense", g(VotingRule::Veto, AddCandidates, Destructive, true, 3, 4, 3, 3, (1, 2)), 800, &|i, b| solve_approval_xp(i, b));
    run("xp plur comb-ccac dense", g(VotingRule::Plurality, AddCandidates, Constructive, true, 3, 4, 3, 3, (1, 2)), 800, &|i, b| solve_approval_xp(i, b));
    run("xp veto ccdc m8", g(VotingRule::Veto, DeleteCandidates, Constructive, false, 8, 0, 3, 3, (0, 1)), 800, &|i, b| solve_approval_xp(i, b));
    run("xp 2veto ccdc m8", g(VotingRule::TVeto(2), DeleteCandidates, Constructive, false, 8, 0, 3, 3, (0, 1)), 800, &|i, b| solve_approval_xp(i, b));
    run("xp 2app ccac n4", g(VotingRule::TApproval(2), AddCandidates, Constructive, false, 4, 3, 4, 3, (0, 1)), 800, &|i, b| solve_approval_xp(i, b));
    // voter subsets with n=4, m=8
    run("subsets plur ccdc", g(VotingRule::Plurality, DeleteCandidates, Constructive, false, 8, 0, 4, 3, (0, 1)), 1500, &|i, _| solve_ccdc_dcdc_voter_subsets(i));
    run("subsets veto dcdc", g(VotingRule::Veto, DeleteCandidates, Destructive, false, 8, 0, 4, 3, (0, 1)), 1500, &|i, _| solve_ccdc_dcdc_voter_subsets(i));
    // kernels with pools of 6
    run("kernel 2app pool6", g(VotingRule::TApproval(2), AddCandidates, Destructive, false, 4, 6, 3, 3, (0, 1)), 1000, &|i, b| solve_dcac_kernelized(i, b));
    run("kernel 2veto pool6", g(VotingRule::TVeto(2), AddCandidates, Destructive, false, 4, 6, 3, 3, (0, 1)), 1000, &|i, b| solve_dcac_kernelized(i, b));
    // maximin two-bundle with larger pools and unbounded budget
    run("two-bundle pool6", g(VotingRule::Maximin, AddCandidates, Destructive, true, 3, 6, 5, 6, (1, 3)), 2000, &|i, _| solve_maximin_comb_dcac(i));
    if bad == 0 {
        println!("ALL STRESS SWEEPS AGREE");
    } else {
        println!("{bad} FAILURES");
        std::process::exit(1);
    }
}
