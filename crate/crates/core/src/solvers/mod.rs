//! The optimized control solvers: signature dynamic programs and Turing
//! kernelization for destructive adding, voter-subset search and the
//! delta/ILP routine for deleting, guess-and-check for the
//! fixed-voter-count polynomial cells, and the Maximin two-bundle
//! algorithm.

pub mod delta_ilp;
pub mod guess;
pub mod kernel;
pub mod maximin;
pub mod signature;
pub mod subsets;

pub use delta_ilp::{solve_approval_dcdc_ilp, DeltaVector};
pub use guess::solve_approval_xp;
pub use kernel::{solve_dcac_kernelized, turing_kernelize_dcac, KernelOutcome};
pub use maximin::solve_maximin_comb_dcac;
pub use signature::{
    solve_dcac_signature_approval, solve_dcac_signature_plurality_veto, BundleCountSignature,
    SignatureTable, SignatureVector,
};
pub use subsets::solve_ccdc_dcdc_voter_subsets;
