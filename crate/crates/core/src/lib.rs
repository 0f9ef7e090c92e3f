//! Exact solvers for candidate control in elections with few voters.
//!
//! The crate bundles four layers:
//!
//! * an immutable election model with seven voting rules ([`election`],
//!   [`rules`]) and the eight control problem statements ([`control`]);
//! * brute-force oracles for control instances and their graph/set-cover
//!   source problems ([`oracle`]), used as ground truth everywhere;
//! * optimized solvers: signature dynamic programs, Turing kernelization,
//!   voter-subset search, a guess-plus-integer-program routine backed by the
//!   exact feasibility engine in [`ip`], guess-and-check routines for the
//!   cells that are polynomial only for fixed voter counts, and the
//!   two-bundle algorithm for Maximin ([`solvers`]);
//! * hardness-gadget generators that turn multicolored-clique, cubic
//!   vertex-cover and set-cover instances into control instances with fixed
//!   voter counts ([`reductions`]), plus text formats and seeded random
//!   instance generation ([`io`]).

pub mod control;
pub mod election;
pub mod error;
pub mod io;
pub mod ip;
pub mod oracle;
pub mod reductions;
pub mod rules;
pub mod solvers;

pub use control::{
    apply_solution, verify_solution, verify_solution_checked, ControlAction, ControlGoal,
    ControlInstance, ControlSolution, Decision, SolveReport,
};
pub use election::{
    BundlingFunction, CandidateId, CandidateSet, Election, ElectionBuilder, PairwiseMatrix,
    PreferenceOrder,
};
pub use error::{Error, Result};
pub use oracle::{
    solve_control_bruteforce, solve_control_bruteforce_threaded, solve_graph_bruteforce,
    GraphProblem, WorkBudget,
};
pub use rules::{is_winner, score_all, veto_counts, winners, Alpha, ScoreVector, VotingRule};
