//! The solver registry: for every (rule, control shape, combinatorial
//! flag) cell, the applicable algorithms ordered best class first, with the
//! complexity label reported alongside every dispatch.

use controlctl_core::oracle::ORACLE_ALGORITHM;
use controlctl_core::solvers;
use controlctl_core::{
    solve_control_bruteforce_threaded, ControlAction, ControlGoal, ControlInstance, Error, Result,
    SolveReport, VotingRule, WorkBudget,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexityClass {
    Polynomial,
    Fpt,
    W1HardXp,
    /// fixed-parameter status open, XP algorithm available
    OpenXp,
    /// NP-hard already at this many voters
    ParaNpHard(u32),
}

impl std::fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexityClass::Polynomial => write!(f, "P"),
            ComplexityClass::Fpt => write!(f, "FPT"),
            ComplexityClass::W1HardXp => write!(f, "W[1]-h/XP"),
            ComplexityClass::OpenXp => write!(f, "?/XP"),
            ComplexityClass::ParaNpHard(v) => write!(f, "para-NP-h({v})"),
        }
    }
}

pub const SIGNATURE_DP: &str = "signature-dp";
pub const SIGNATURE_DP_APPROVAL: &str = "signature-dp-approval";
pub const KERNEL_BRUTEFORCE: &str = "kernel-bruteforce";
pub const VOTER_SUBSETS: &str = "voter-subsets";
pub const DELTA_ILP: &str = "delta-ilp";
pub const XP_GUESS: &str = "xp-guess";
pub const TWO_BUNDLE: &str = "two-bundle";

#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub class: ComplexityClass,
    pub algorithms: &'static [&'static str],
}

/// Approval-family column: Plurality and 1-Approval collapse, likewise
/// Veto and 1-Veto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Plurality,
    Veto,
    TApproval,
    TVeto,
    Borda,
    Copeland,
    Maximin,
}

fn column(rule: &VotingRule) -> Column {
    match rule {
        VotingRule::Plurality | VotingRule::TApproval(1) => Column::Plurality,
        VotingRule::Veto | VotingRule::TVeto(1) => Column::Veto,
        VotingRule::TApproval(_) => Column::TApproval,
        VotingRule::TVeto(_) => Column::TVeto,
        VotingRule::Borda => Column::Borda,
        VotingRule::Copeland(_) => Column::Copeland,
        VotingRule::Maximin => Column::Maximin,
    }
}

/// One row of the complexity table.
pub fn lookup(rule: &VotingRule, action: ControlAction, goal: ControlGoal, comb: bool) -> Cell {
    use ComplexityClass::*;
    use Column::*;
    use ControlAction::*;
    use ControlGoal::*;
    let col = column(rule);
    let (class, algorithms): (ComplexityClass, &'static [&'static str]) =
        match (col, action, goal, comb) {
            // approval-based rules, plain variants
            (Plurality | Veto | TApproval | TVeto, AddCandidates, Constructive, false) => {
                (W1HardXp, &[XP_GUESS, ORACLE_ALGORITHM])
            }
            (Plurality, DeleteCandidates, Constructive, false) => {
                (Fpt, &[VOTER_SUBSETS, XP_GUESS, ORACLE_ALGORITHM])
            }
            (Veto | TApproval | TVeto, DeleteCandidates, Constructive, false) => {
                (W1HardXp, &[XP_GUESS, ORACLE_ALGORITHM])
            }
            (Plurality | Veto, AddCandidates, Destructive, false) => {
                (Fpt, &[SIGNATURE_DP, KERNEL_BRUTEFORCE, ORACLE_ALGORITHM])
            }
            (TApproval | TVeto, AddCandidates, Destructive, false) => (
                Fpt,
                &[SIGNATURE_DP_APPROVAL, KERNEL_BRUTEFORCE, ORACLE_ALGORITHM],
            ),
            (Plurality | Veto, DeleteCandidates, Destructive, false) => {
                (Fpt, &[VOTER_SUBSETS, ORACLE_ALGORITHM])
            }
            (TApproval | TVeto, DeleteCandidates, Destructive, false) => {
                (Fpt, &[DELTA_ILP, ORACLE_ALGORITHM])
            }
            // approval-based rules, combinatorial variants
            (Plurality | Veto | TApproval | TVeto, AddCandidates, Constructive, true) => {
                (W1HardXp, &[XP_GUESS, ORACLE_ALGORITHM])
            }
            (Plurality | Veto | TApproval | TVeto, DeleteCandidates, Constructive, true) => {
                (ParaNpHard(1), &[ORACLE_ALGORITHM])
            }
            (Plurality | Veto, AddCandidates, Destructive, true) => {
                (Fpt, &[SIGNATURE_DP, ORACLE_ALGORITHM])
            }
            (TApproval, AddCandidates, Destructive, true) => (W1HardXp, &[XP_GUESS, ORACLE_ALGORITHM]),
            (TVeto, AddCandidates, Destructive, true) => (OpenXp, &[XP_GUESS, ORACLE_ALGORITHM]),
            (Plurality, DeleteCandidates, Destructive, true) => {
                (ParaNpHard(3), &[ORACLE_ALGORITHM])
            }
            (Veto | TVeto, DeleteCandidates, Destructive, true) => {
                (ParaNpHard(1), &[ORACLE_ALGORITHM])
            }
            (TApproval, DeleteCandidates, Destructive, true) => {
                (ParaNpHard(2), &[ORACLE_ALGORITHM])
            }
            // Borda
            (Borda, AddCandidates, Constructive, false) => (ParaNpHard(10), &[ORACLE_ALGORITHM]),
            (Borda, DeleteCandidates, Constructive, false) => (ParaNpHard(10), &[ORACLE_ALGORITHM]),
            (Borda, _, Destructive, false) => (Polynomial, &[ORACLE_ALGORITHM]),
            (Borda, AddCandidates, Constructive, true) => (ParaNpHard(2), &[ORACLE_ALGORITHM]),
            (Borda, DeleteCandidates, Constructive, true) => (ParaNpHard(1), &[ORACLE_ALGORITHM]),
            (Borda, AddCandidates, Destructive, true) => (ParaNpHard(2), &[ORACLE_ALGORITHM]),
            (Borda, DeleteCandidates, Destructive, true) => (ParaNpHard(2), &[ORACLE_ALGORITHM]),
            // Copeland
            (Copeland, AddCandidates, Constructive, false) => (ParaNpHard(20), &[ORACLE_ALGORITHM]),
            (Copeland, DeleteCandidates, Constructive, false) => {
                (ParaNpHard(26), &[ORACLE_ALGORITHM])
            }
            (Copeland, _, Destructive, false) => (Polynomial, &[ORACLE_ALGORITHM]),
            (Copeland, AddCandidates, Constructive, true) => (ParaNpHard(3), &[ORACLE_ALGORITHM]),
            (Copeland, DeleteCandidates, Constructive, true) => {
                (ParaNpHard(1), &[ORACLE_ALGORITHM])
            }
            (Copeland, AddCandidates, Destructive, true) => (ParaNpHard(3), &[ORACLE_ALGORITHM]),
            (Copeland, DeleteCandidates, Destructive, true) => (ParaNpHard(3), &[ORACLE_ALGORITHM]),
            // Maximin
            (Maximin, AddCandidates, Constructive, false) => (ParaNpHard(10), &[ORACLE_ALGORITHM]),
            (Maximin, DeleteCandidates, Constructive, false) => {
                (Polynomial, &[ORACLE_ALGORITHM])
            }
            (Maximin, AddCandidates, Destructive, false) => {
                (Polynomial, &[TWO_BUNDLE, ORACLE_ALGORITHM])
            }
            (Maximin, DeleteCandidates, Destructive, false) => (Polynomial, &[ORACLE_ALGORITHM]),
            (Maximin, AddCandidates, Constructive, true) => (ParaNpHard(6), &[ORACLE_ALGORITHM]),
            (Maximin, DeleteCandidates, Constructive, true) => (ParaNpHard(1), &[ORACLE_ALGORITHM]),
            (Maximin, AddCandidates, Destructive, true) => {
                (Polynomial, &[TWO_BUNDLE, ORACLE_ALGORITHM])
            }
            (Maximin, DeleteCandidates, Destructive, true) => (ParaNpHard(5), &[ORACLE_ALGORITHM]),
        };
    Cell { class, algorithms }
}

pub fn run_algorithm(
    id: &str,
    instance: &ControlInstance,
    budget: &WorkBudget,
    threads: usize,
) -> Result<SolveReport> {
    match id {
        ORACLE_ALGORITHM => solve_control_bruteforce_threaded(instance, budget, threads),
        SIGNATURE_DP => solvers::solve_dcac_signature_plurality_veto(instance),
        SIGNATURE_DP_APPROVAL => solvers::solve_dcac_signature_approval(instance),
        KERNEL_BRUTEFORCE => solvers::solve_dcac_kernelized(instance, budget),
        VOTER_SUBSETS => solvers::solve_ccdc_dcdc_voter_subsets(instance),
        DELTA_ILP => solvers::solve_approval_dcdc_ilp(instance, budget),
        XP_GUESS => solvers::solve_approval_xp(instance, budget),
        TWO_BUNDLE => solvers::solve_maximin_comb_dcac(instance),
        other => Err(Error::invalid_argument(format!("unknown algorithm `{other}`"))),
    }
}

/// Dispatch: `auto` picks the row's best class; an explicit identifier must
/// be applicable to the instance's shape.
pub fn dispatch(
    instance: &ControlInstance,
    algorithm: Option<&str>,
    budget: &WorkBudget,
    threads: usize,
) -> Result<(SolveReport, ComplexityClass)> {
    let cell = lookup(
        &instance.rule,
        instance.action,
        instance.goal,
        instance.combinatorial,
    );
    let id = match algorithm {
        None => cell.algorithms[0],
        Some(requested) => {
            if cell.algorithms.contains(&requested) {
                requested
            } else {
                return Err(Error::unsupported(format!(
                    "algorithm `{requested}` does not apply here; applicable: {}",
                    cell.algorithms.join(", ")
                )));
            }
        }
    };
    let report = run_algorithm(id, instance, budget, threads)?;
    Ok((report, cell.class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use controlctl_core::rules::Alpha;

    #[test]
    fn every_table_cell_resolves_with_an_oracle_fallback() {
        let rules = [
            VotingRule::Plurality,
            VotingRule::Veto,
            VotingRule::TApproval(2),
            VotingRule::TVeto(2),
            VotingRule::Borda,
            VotingRule::Copeland(Alpha::half()),
            VotingRule::Maximin,
        ];
        for rule in rules {
            for action in [ControlAction::AddCandidates, ControlAction::DeleteCandidates] {
                for goal in [ControlGoal::Constructive, ControlGoal::Destructive] {
                    for comb in [false, true] {
                        let cell = lookup(&rule, action, goal, comb);
                        assert!(
                            !cell.algorithms.is_empty(),
                            "cell ({rule}, {action:?}, {goal:?}, comb={comb}) unresolved"
                        );
                        assert!(cell.algorithms.contains(&ORACLE_ALGORITHM));
                    }
                }
            }
        }
    }

    #[test]
    fn table_labels_spot_checks() {
        use ComplexityClass::*;
        let half = VotingRule::Copeland(Alpha::half());
        let cases = [
            (VotingRule::Plurality, ControlAction::DeleteCandidates, ControlGoal::Constructive, false, Fpt),
            (VotingRule::Veto, ControlAction::DeleteCandidates, ControlGoal::Constructive, false, W1HardXp),
            (VotingRule::Borda, ControlAction::DeleteCandidates, ControlGoal::Constructive, false, ParaNpHard(10)),
            (half, ControlAction::DeleteCandidates, ControlGoal::Constructive, false, ParaNpHard(26)),
            (half, ControlAction::AddCandidates, ControlGoal::Constructive, false, ParaNpHard(20)),
            (VotingRule::Maximin, ControlAction::AddCandidates, ControlGoal::Constructive, true, ParaNpHard(6)),
            (VotingRule::Maximin, ControlAction::AddCandidates, ControlGoal::Destructive, true, Polynomial),
            (VotingRule::TVeto(2), ControlAction::AddCandidates, ControlGoal::Destructive, true, OpenXp),
            (VotingRule::TApproval(2), ControlAction::DeleteCandidates, ControlGoal::Destructive, true, ParaNpHard(2)),
            (VotingRule::Maximin, ControlAction::DeleteCandidates, ControlGoal::Destructive, true, ParaNpHard(5)),
        ];
        for (rule, action, goal, comb, expected) in cases {
            assert_eq!(lookup(&rule, action, goal, comb).class, expected, "{rule}");
        }
    }

    #[test]
    fn one_approval_collapses_to_plurality_row() {
        let a = lookup(
            &VotingRule::TApproval(1),
            ControlAction::DeleteCandidates,
            ControlGoal::Constructive,
            false,
        );
        assert_eq!(a.class, ComplexityClass::Fpt);
    }
}
