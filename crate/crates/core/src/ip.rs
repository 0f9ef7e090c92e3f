//! Exact feasibility solver for small bounded integer programs: variables
//! with individual upper bounds, integer linear constraints, and an optional
//! cardinality budget on the variable sum.
//!
//! Depth-first search over variable values in input order with per-node
//! slack pruning. Keeping the input order makes the returned assignment the
//! lexicographically least feasible one, which the callers rely on for
//! deterministic witnesses.

use crate::error::{Error, Result};
use crate::oracle::{WorkBudget, WorkMeter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub cmp: Cmp,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerProgram {
    /// Upper bound per variable; lower bounds are zero.
    pub var_bounds: Vec<u64>,
    pub constraints: Vec<Constraint>,
    /// Optional cap on the sum of all variables.
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpResult {
    pub feasible: bool,
    pub assignment: Option<Vec<u64>>,
}

impl IpResult {
    fn infeasible() -> Self {
        IpResult {
            feasible: false,
            assignment: None,
        }
    }
}

/// Exact feasibility. With a budget the solver iterates caps `0..=k`, so a
/// feasible answer also has minimal variable sum.
pub fn solve_ip(program: &IntegerProgram, limit: &WorkBudget) -> Result<IpResult> {
    for c in &program.constraints {
        if c.coeffs.len() != program.var_bounds.len() {
            return Err(Error::invalid_argument(
                "constraint coefficient count does not match variable count",
            ));
        }
    }
    let mut meter = WorkMeter::new(limit);

    // Variables pinned to zero contribute fixed amounts; strip them.
    let live: Vec<usize> = (0..program.var_bounds.len())
        .filter(|&i| program.var_bounds[i] > 0)
        .collect();
    let bounds: Vec<u64> = live.iter().map(|&i| program.var_bounds[i]).collect();
    let constraints: Vec<Constraint> = program
        .constraints
        .iter()
        .map(|c| Constraint {
            coeffs: live.iter().map(|&i| c.coeffs[i]).collect(),
            cmp: c.cmp,
            rhs: c.rhs,
        })
        .collect();

    let run = |cap: Option<u64>, meter: &mut WorkMeter| -> Result<Option<Vec<u64>>> {
        let mut assignment = vec![0u64; bounds.len()];
        if dfs(&bounds, &constraints, cap, 0, 0, &mut assignment, meter)? {
            Ok(Some(assignment))
        } else {
            Ok(None)
        }
    };

    let found = match program.budget {
        None => run(None, &mut meter)?,
        Some(k) => {
            let mut hit = None;
            for b in 0..=k {
                if let Some(a) = run(Some(b), &mut meter)? {
                    hit = Some(a);
                    break;
                }
            }
            hit
        }
    };

    match found {
        None => Ok(IpResult::infeasible()),
        Some(compact) => {
            let mut full = vec![0u64; program.var_bounds.len()];
            for (slot, &var) in live.iter().enumerate() {
                full[var] = compact[slot];
            }
            Ok(IpResult {
                feasible: true,
                assignment: Some(full),
            })
        }
    }
}

/// Can the partially assigned program still satisfy every constraint?
/// Bounds each constraint by its best achievable completion.
fn still_satisfiable(
    bounds: &[u64],
    constraints: &[Constraint],
    cap: Option<u64>,
    depth: usize,
    used: u64,
    assignment: &[u64],
) -> bool {
    let remaining_budget = cap.map(|k| k - used);
    for c in constraints {
        let fixed: i64 = (0..depth).map(|i| c.coeffs[i] * assignment[i] as i64).sum();
        match c.cmp {
            Cmp::Le => {
                // best case: leave positive-coefficient variables at zero,
                // push negative ones to their bound
                let mut best = fixed;
                for i in depth..bounds.len() {
                    if c.coeffs[i] < 0 {
                        let ub = effective_ub(bounds[i], remaining_budget);
                        best += c.coeffs[i] * ub as i64;
                    }
                }
                if best > c.rhs {
                    return false;
                }
            }
            Cmp::Ge => {
                let mut best = fixed;
                for i in depth..bounds.len() {
                    if c.coeffs[i] > 0 {
                        let ub = effective_ub(bounds[i], remaining_budget);
                        best += c.coeffs[i] * ub as i64;
                    }
                }
                if best < c.rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn effective_ub(bound: u64, remaining_budget: Option<u64>) -> u64 {
    match remaining_budget {
        Some(r) => bound.min(r),
        None => bound,
    }
}

fn dfs(
    bounds: &[u64],
    constraints: &[Constraint],
    cap: Option<u64>,
    depth: usize,
    used: u64,
    assignment: &mut Vec<u64>,
    meter: &mut WorkMeter,
) -> Result<bool> {
    meter.tick()?;
    if !still_satisfiable(bounds, constraints, cap, depth, used, assignment) {
        return Ok(false);
    }
    if depth == bounds.len() {
        // slack check with no free variables left is the exact check
        return Ok(true);
    }
    let ub = effective_ub(bounds[depth], cap.map(|k| k - used));
    for v in 0..=ub {
        assignment[depth] = v;
        if dfs(bounds, constraints, cap, depth + 1, used + v, assignment, meter)? {
            return Ok(true);
        }
    }
    assignment[depth] = 0;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_program_is_feasible_all_zero() {
        let p = IntegerProgram {
            var_bounds: vec![0, 0, 0],
            constraints: vec![],
            budget: None,
        };
        let r = solve_ip(&p, &WorkBudget::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.assignment.unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn unreachable_lower_bound_is_infeasible() {
        let p = IntegerProgram {
            var_bounds: vec![3],
            constraints: vec![Constraint {
                coeffs: vec![1],
                cmp: Cmp::Ge,
                rhs: 5,
            }],
            budget: None,
        };
        let r = solve_ip(&p, &WorkBudget::default()).unwrap();
        assert!(!r.feasible);
    }

    #[test]
    fn budget_iteration_minimizes_the_sum() {
        let p = IntegerProgram {
            var_bounds: vec![5, 5],
            constraints: vec![Constraint {
                coeffs: vec![1, 1],
                cmp: Cmp::Ge,
                rhs: 3,
            }],
            budget: Some(5),
        };
        let r = solve_ip(&p, &WorkBudget::default()).unwrap();
        assert!(r.feasible);
        let a = r.assignment.unwrap();
        assert_eq!(a.iter().sum::<u64>(), 3);
        // lexicographically least among sum-3 assignments
        assert_eq!(a, vec![0, 3]);
    }

    #[test]
    fn mixed_constraints() {
        // x0 + 2 x1 <= 4, x0 + x1 >= 2, x0 <= 1
        let p = IntegerProgram {
            var_bounds: vec![1, 3],
            constraints: vec![
                Constraint {
                    coeffs: vec![1, 2],
                    cmp: Cmp::Le,
                    rhs: 4,
                },
                Constraint {
                    coeffs: vec![1, 1],
                    cmp: Cmp::Ge,
                    rhs: 2,
                },
            ],
            budget: Some(4),
        };
        let r = solve_ip(&p, &WorkBudget::default()).unwrap();
        assert!(r.feasible);
        let a = r.assignment.unwrap();
        assert!(a[0] + 2 * a[1] <= 4);
        assert!(a[0] + a[1] >= 2);
    }

    #[test]
    fn node_budget_is_reported_as_exhaustion() {
        let p = IntegerProgram {
            var_bounds: vec![3; 8],
            constraints: vec![Constraint {
                coeffs: vec![1; 8],
                cmp: Cmp::Ge,
                rhs: 24,
            }],
            budget: None,
        };
        let tiny = WorkBudget::new(3, 10_000).unwrap();
        assert!(matches!(solve_ip(&p, &tiny), Err(Error::ResourceExhausted(_))));
    }
}
