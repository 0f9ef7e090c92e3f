//! Command-line front end: solve, verify, reduce, generate, oracle and
//! bench subcommands over `.eci` instance files.
//!
//! Exit codes are a stable scripting contract: 0 = yes, 1 = no, 2 = error,
//! 3 = resource budget exhausted.

mod registry;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use controlctl_core::io::{
    generate_random, parse_graph, parse_instance, parse_rule_token, parse_setcover,
    parse_shape_token, parse_target, report_json, serialize_instance, GeneratorConfig,
};
use controlctl_core::reductions::{reduce_cvc, reduce_mcc, reduce_setcover};
use controlctl_core::{
    solve_control_bruteforce_threaded, verify_solution_checked, ControlInstance, ControlSolution,
    Error, SolveReport, WorkBudget,
};

const WORK_BUDGET_ENV: &str = "CONTROLCTL_WORK_BUDGET";

#[derive(Parser)]
#[command(
    name = "controlctl",
    version,
    about = "Exact solvers and hardness gadgets for candidate control in elections with few voters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a control instance with the best (or a chosen) algorithm
    Solve(SolveArgs),
    /// Check a proposed solution against an instance
    Verify(VerifyArgs),
    /// Generate a control instance from a graph or set-cover source
    Reduce(ReduceArgs),
    /// Generate a seeded random instance
    Generate(GenerateArgs),
    /// Decide an instance with the brute-force oracle only
    Oracle(OracleArgs),
    /// Run the timing suites
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// algorithm identifier; omit for the best applicable class
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    json: bool,
    /// worker count for guess-parallel solvers; 1 keeps witnesses
    /// deterministic
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    /// comma-separated candidate names
    #[arg(long)]
    solution: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// source problem: mcc, setcover or cvc
    #[arg(long, value_enum)]
    from: SourceKind,
    /// target identifier, e.g. plurality-ccac or borda-comb-dcdc
    #[arg(long)]
    target: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// cover budget for cvc sources (overrides the file budget for
    /// setcover sources)
    #[arg(long)]
    cover_size: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceKind {
    Mcc,
    Setcover,
    Cvc,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    candidates: u32,
    #[arg(long)]
    voters: u32,
    #[arg(long, default_value_t = 0)]
    pool: u32,
    #[arg(long)]
    budget: u32,
    /// rule token, e.g. plurality, 2-approval, copeland(1/2)
    #[arg(long)]
    rule: String,
    /// control shape: ccac, ccdc, dcac or dcdc
    #[arg(long)]
    control: String,
    #[arg(long)]
    comb: bool,
    /// bundle density as NUM/DEN, e.g. 1/4
    #[arg(long, default_value = "0/1")]
    bundle_density: String,
    /// output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    max_subsets: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchSuite::Smoke)]
    suite: BenchSuite,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchSuite {
    Smoke,
    Full,
}

fn work_budget(max_subsets: Option<u64>) -> WorkBudget {
    let mut budget = WorkBudget::default();
    if let Ok(value) = std::env::var(WORK_BUDGET_ENV) {
        if let Ok(parsed) = value.parse::<u64>() {
            budget.max_subsets = parsed.max(1);
        }
    }
    if let Some(cap) = max_subsets {
        budget.max_subsets = cap.max(1);
    }
    budget
}

fn read_instance(path: &PathBuf) -> Result<ControlInstance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid_argument(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn print_report(
    instance: &ControlInstance,
    report: &SolveReport,
    class: Option<registry::ComplexityClass>,
    json: bool,
) {
    if json {
        let mut value = report_json(report, &instance.election);
        if let Some(class) = class {
            value["class"] = serde_json::json!(class.to_string());
        }
        println!("{value}");
        return;
    }
    let decision = if report.is_yes() { "yes" } else { "no" };
    println!("decision:  {decision}");
    if let Some(witness) = &report.witness {
        let names: Vec<&str> = witness
            .chosen
            .iter()
            .map(|&c| instance.election.name(c))
            .collect();
        println!("witness:   [{}]", names.join(", "));
    }
    println!("algorithm: {}", report.algorithm);
    if let Some(class) = class {
        println!("class:     {class}");
    }
    for (key, value) in &report.stats {
        println!("  {key}: {value}");
    }
}

fn exit_for(report: &SolveReport) -> ExitCode {
    if report.is_yes() {
        ExitCode::from(0)
    } else {
        ExitCode::from(1)
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::ResourceExhausted(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => fail(&err),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve(args) => {
            let instance = read_instance(&args.instance)?;
            let budget = work_budget(None);
            let (report, class) = registry::dispatch(
                &instance,
                args.algorithm.as_deref(),
                &budget,
                args.threads.max(1),
            )?;
            print_report(&instance, &report, Some(class), args.json);
            Ok(exit_for(&report))
        }
        Command::Verify(args) => {
            let instance = read_instance(&args.instance)?;
            let mut chosen = controlctl_core::CandidateSet::new();
            for name in args
                .solution
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
            {
                let id = instance.election.id_of(name).ok_or_else(|| {
                    Error::invalid_argument(format!("unknown candidate `{name}`"))
                })?;
                chosen.insert(id);
            }
            let solution = ControlSolution::new(chosen);
            match verify_solution_checked(&instance, &solution) {
                Ok(true) => {
                    println!("valid: the solution achieves the goal");
                    Ok(ExitCode::from(0))
                }
                Ok(false) => {
                    println!("invalid: the goal is not achieved");
                    Ok(ExitCode::from(1))
                }
                Err(err) => {
                    println!("invalid: {err}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Reduce(args) => {
            let target = parse_target(&args.target)?;
            let text = std::fs::read_to_string(&args.input).map_err(|e| {
                Error::invalid_argument(format!("cannot read {}: {e}", args.input.display()))
            })?;
            let instance = match args.from {
                SourceKind::Mcc => {
                    let doc = parse_graph(&text)?;
                    reduce_mcc(&doc.colored()?, &target)?
                }
                SourceKind::Cvc => {
                    let doc = parse_graph(&text)?;
                    let h = args.cover_size.ok_or_else(|| {
                        Error::invalid_argument("cvc sources need --cover-size")
                    })?;
                    reduce_cvc(&doc.graph, &target, h)?
                }
                SourceKind::Setcover => {
                    let mut src = parse_setcover(&text)?;
                    if let Some(h) = args.cover_size {
                        src = src.with_h(h);
                    }
                    reduce_setcover(&src, &target)?
                }
            };
            std::fs::write(&args.out, serialize_instance(&instance)).map_err(|e| {
                Error::invalid_argument(format!("cannot write {}: {e}", args.out.display()))
            })?;
            println!(
                "wrote {} ({} candidates, {} voters, budget {})",
                args.out.display(),
                instance.election.registered().len() + instance.election.unregistered().len(),
                instance.election.voter_count(),
                instance.budget
            );
            Ok(ExitCode::from(0))
        }
        Command::Generate(args) => {
            let rule = parse_rule_token(&args.rule)
                .ok_or_else(|| Error::invalid_argument(format!("unknown rule `{}`", args.rule)))?;
            let (action, goal) = parse_shape_token(&args.control).ok_or_else(|| {
                Error::invalid_argument(format!("unknown control shape `{}`", args.control))
            })?;
            let density = args
                .bundle_density
                .split_once('/')
                .and_then(|(n, d)| Some((n.parse().ok()?, d.parse().ok()?)))
                .ok_or_else(|| Error::invalid_argument("bundle density must be NUM/DEN"))?;
            let config = GeneratorConfig {
                seed: args.seed,
                registered: args.candidates,
                voters: args.voters,
                pool: args.pool,
                budget: args.budget,
                rule,
                action,
                goal,
                combinatorial: args.comb,
                bundle_density: density,
            };
            let instance = generate_random(&config)?;
            let text = serialize_instance(&instance);
            match args.out {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    Error::invalid_argument(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(ExitCode::from(0))
        }
        Command::Oracle(args) => {
            let instance = read_instance(&args.instance)?;
            let budget = work_budget(args.max_subsets);
            let report =
                solve_control_bruteforce_threaded(&instance, &budget, args.threads.max(1))?;
            print_report(&instance, &report, None, args.json);
            Ok(exit_for(&report))
        }
        Command::Bench(args) => {
            run_bench(args.suite)?;
            Ok(ExitCode::from(0))
        }
    }
}

/// Wall-clock smoke checks; `full` adds the large signature-DP and ILP
/// cases.
fn run_bench(suite: BenchSuite) -> Result<(), Error> {
    use controlctl_core::solvers;
    use controlctl_core::{ControlAction, ControlGoal, VotingRule};

    let time =
        |label: &str, f: &mut dyn FnMut() -> Result<String, Error>| -> Result<(), Error> {
            let start = Instant::now();
            let outcome = f()?;
            println!(
                "{label:<46} {:>8.1} ms   {outcome}",
                start.elapsed().as_secs_f64() * 1e3
            );
            Ok(())
        };

    let small = GeneratorConfig {
        seed: 11,
        registered: 6,
        voters: 4,
        pool: 0,
        budget: 2,
        rule: VotingRule::TApproval(2),
        action: ControlAction::DeleteCandidates,
        goal: ControlGoal::Destructive,
        combinatorial: false,
        bundle_density: (0, 1),
    };
    let small_instance = generate_random(&small)?;
    time("oracle, m=6 n=4 k=2", &mut || {
        let r = solve_control_bruteforce_threaded(&small_instance, &WorkBudget::default(), 1)?;
        Ok(format!("decision {:?}", r.decision))
    })?;
    time("delta-ilp, m=6 n=4 k=2", &mut || {
        let r = solvers::solve_approval_dcdc_ilp(&small_instance, &WorkBudget::default())?;
        Ok(format!("decision {:?}", r.decision))
    })?;

    if matches!(suite, BenchSuite::Full) {
        let dp = GeneratorConfig {
            seed: 5,
            registered: 9_900,
            voters: 10,
            pool: 100,
            budget: 3,
            rule: VotingRule::Plurality,
            action: ControlAction::AddCandidates,
            goal: ControlGoal::Destructive,
            combinatorial: false,
            bundle_density: (0, 1),
        };
        let dp_instance = generate_random(&dp)?;
        time("signature-dp, m=10000 n=10 k=3", &mut || {
            let r = solvers::solve_dcac_signature_plurality_veto(&dp_instance)?;
            Ok(format!("decision {:?}", r.decision))
        })?;
        let ilp = GeneratorConfig {
            seed: 6,
            registered: 50,
            voters: 3,
            pool: 0,
            budget: 3,
            rule: VotingRule::TApproval(2),
            action: ControlAction::DeleteCandidates,
            goal: ControlGoal::Destructive,
            combinatorial: false,
            bundle_density: (0, 1),
        };
        let ilp_instance = generate_random(&ilp)?;
        time("delta-ilp, m=50 n=3 t=2", &mut || {
            let r = solvers::solve_approval_dcdc_ilp(&ilp_instance, &WorkBudget::default())?;
            Ok(format!("decision {:?}", r.decision))
        })?;
    }
    Ok(())
}
