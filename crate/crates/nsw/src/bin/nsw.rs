//! Command-line front end: solve instances, run the brute-force oracle,
//! check reports against fairness properties, generate seeded instances, and
//! benchmark a directory of instances into a CSV.
//!
//! Exit codes: 0 success, 1 infrastructure/usage error, 2 property violation.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use nsw::binary::binary_max_nsw;
use nsw::generate::{generate, GenSpec};
use nsw::io::{
    allocation_from_report, format_rational, instance_from_json, instance_to_json, parse_rational,
    report_from_approx, report_from_solve, report_inconsistencies, ReportFile,
};
use nsw::model::{heavy_part, utility_vector, Allocation, Instance, Rational};
use nsw::oracle::{brute_force_leximax_heavy, brute_force_mnw, OracleError, DEFAULT_STATE_BUDGET};
use nsw::properties::{check_phase3_invariants, is_ef1, is_efx, is_pareto_optimal};
use nsw::solver::{approx_solve, greedy_light_phase, phase3_numbering, round_p, solve};
use num_traits::One;
use rayon::prelude::*;
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "nsw", version, about = "Nash social welfare solver for 2-value valuations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly (integral p) or approximately (rational p)
    Solve {
        instance: PathBuf,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force the optimum by complete enumeration
    Oracle {
        instance: PathBuf,
        /// Refuse enumerations needing more than this many states
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        max_states: u64,
    },
    /// Check a report against the instance and fairness properties
    Check {
        instance: PathBuf,
        report: PathBuf,
        /// Comma-separated subset of ef1,efx,po,leximax-heavy,phase3
        #[arg(long, value_delimiter = ',', default_value = "ef1,efx,po,leximax-heavy,phase3")]
        props: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        max_states: u64,
    },
    /// Generate a seeded random instance
    Gen {
        out: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Exact rational, e.g. "5" or "3/2"
        #[arg(long)]
        p: String,
        /// Independent heavy-edge probability per (agent, good) pair
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Solve every instance in a directory and emit a CSV
    Bench {
        #[arg(long)]
        suite: PathBuf,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for independent instance evaluations
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        max_states: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { instance, out } => cmd_solve(&instance, out.as_deref()),
        Command::Oracle { instance, max_states } => cmd_oracle(&instance, max_states),
        Command::Check { instance, report, props, max_states } => {
            cmd_check(&instance, &report, &props, max_states)
        }
        Command::Gen { out, n, m, p, density, seed } => cmd_gen(&out, n, m, &p, density, seed),
        Command::Bench { suite, out, jobs, max_states } => {
            cmd_bench(&suite, out.as_deref(), jobs, max_states)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    instance_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn solve_to_report(instance: &Instance) -> Result<ReportFile> {
    if instance.is_integral() {
        let result = solve(instance)?;
        Ok(report_from_solve(instance, &result))
    } else {
        let result = approx_solve(instance)?;
        Ok(report_from_approx(instance, &result))
    }
}

fn cmd_solve(instance_path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let instance = load_instance(instance_path)?;
    let report = solve_to_report(&instance)?;
    emit(out, &serde_json::to_string_pretty(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(instance_path: &Path, max_states: u64) -> Result<ExitCode> {
    let instance = load_instance(instance_path)?;
    let report = brute_force_mnw(&instance, max_states)?;
    let best = report.best_allocations.first();
    let output = json!({
        "best_product": format_rational(&report.best_product.product),
        "nsw_float": report.best_product.geometric_mean_f64(),
        "best_assignment": best.map(|a| a.owners().to_vec()),
        "maximizer_count": report.best_allocations.len(),
        "maximizer_overflow": report.maximizer_overflow,
        "positive_agent_count": report.positive_agent_count,
        "state_count": report.state_count,
    });
    println!("{}", serde_json::to_string_pretty(&output)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(out: &Path, n: usize, m: usize, p: &str, density: f64, seed: u64) -> Result<ExitCode> {
    let p = parse_rational(p)?;
    let spec = GenSpec { n, m, p, heavy_density: density, seed };
    let instance = generate(&spec)?;
    emit(Some(out), &instance_to_json(&instance))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    instance_path: &Path,
    report_path: &Path,
    props: &[String],
    max_states: u64,
) -> Result<ExitCode> {
    const KNOWN: [&str; 5] = ["ef1", "efx", "po", "leximax-heavy", "phase3"];
    for prop in props {
        if !KNOWN.contains(&prop.as_str()) {
            bail!("unknown property {prop:?}; expected a subset of {KNOWN:?}");
        }
    }
    let instance = load_instance(instance_path)?;
    let text = fs::read_to_string(report_path)
        .with_context(|| format!("reading {}", report_path.display()))?;
    let report: ReportFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", report_path.display()))?;
    let allocation = allocation_from_report(&instance, &report)?;

    let mut violations: Vec<serde_json::Value> = Vec::new();
    for field in report_inconsistencies(&instance, &report) {
        violations.push(json!({"property": "report-consistency", "witness": {"field": field}}));
    }
    for prop in props {
        match prop.as_str() {
            "ef1" => {
                if let Some(w) = is_ef1(&instance, &allocation) {
                    violations.push(json!({
                        "property": "ef1",
                        "witness": {"envious": w.envious, "envied": w.envied},
                    }));
                }
            }
            "efx" => {
                if let Some(w) = is_efx(&instance, &allocation) {
                    violations.push(json!({
                        "property": "efx",
                        "witness": {"envious": w.envious, "envied": w.envied},
                    }));
                }
            }
            "po" => {
                if let Some(dominator) = is_pareto_optimal(&instance, &allocation, max_states)? {
                    violations.push(json!({
                        "property": "po",
                        "witness": {"dominating_assignment": dominator.owners().to_vec()},
                    }));
                }
            }
            "leximax-heavy" => {
                let h = heavy_part(&instance, &allocation).map_err(|e| anyhow!(e))?;
                let cardinality = h.assigned_count();
                let best = brute_force_leximax_heavy(&instance, cardinality, max_states)?;
                let profile = utility_vector(&instance, &h).map_err(|e| anyhow!(e))?.profile();
                if profile != best {
                    violations.push(json!({
                        "property": "leximax-heavy",
                        "witness": {
                            "cardinality": cardinality,
                            "profile": profile.sorted.iter().map(format_rational).collect::<Vec<_>>(),
                            "leximax": best.sorted.iter().map(format_rational).collect::<Vec<_>>(),
                        },
                    }));
                }
            }
            "phase3" => check_phase3_replay(&instance, &report, &allocation, &mut violations)?,
            _ => unreachable!("validated above"),
        }
    }

    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for v in &violations {
            println!("{}", serde_json::to_string(v)?);
        }
        Ok(ExitCode::from(2))
    }
}

/// Recomputes phases 1-2, replays the reported moves one by one through the
/// invariant checker, and confirms the trace ends at the reported assignment
/// with the stopping condition satisfied.
fn check_phase3_replay(
    instance: &Instance,
    report: &ReportFile,
    allocation: &Allocation,
    violations: &mut Vec<serde_json::Value>,
) -> Result<()> {
    // rational p: the trace belongs to the rounded instance
    let replay_instance = if instance.is_integral() {
        instance.clone()
    } else {
        let (rounded, _) = round_p(instance.p())?;
        Instance::new(
            instance.agent_count(),
            instance.good_count(),
            Rational::from_integer(rounded),
            instance.heavy_edges(),
        )
        .map_err(|e| anyhow!(e))?
    };
    let degenerate = replay_instance.p().is_one();
    let phase1 = if degenerate {
        Allocation::empty(replay_instance.good_count())
    } else {
        binary_max_nsw(&replay_instance)
    };
    let phase2 = greedy_light_phase(&replay_instance, &phase1);
    let order = phase3_numbering(&replay_instance, &phase2);

    let mut current = phase2;
    for (idx, record) in report.moves.iter().enumerate() {
        let mv = record.to_move(replay_instance.agent_count())?;
        let mut next = current.clone();
        next.assign(mv.good, mv.to_agent);
        for violation in
            check_phase3_invariants(&replay_instance, &order, &current, &mv, &next, None)
        {
            violations.push(json!({
                "property": "phase3",
                "witness": {"move_index": idx, "violation": violation.to_string()},
            }));
        }
        current = next;
    }
    if &current != allocation {
        violations.push(json!({
            "property": "phase3",
            "witness": {"violation": "replayed trace does not end at the reported assignment"},
        }));
        return Ok(());
    }
    let utilities = utility_vector(&replay_instance, &current).map_err(|e| anyhow!(e))?.values;
    let u_min = utilities.iter().min().expect("at least one agent");
    let u_max = utilities.iter().max().expect("at least one agent");
    let p = replay_instance.p();
    if *u_max > p * u_min + p {
        violations.push(json!({
            "property": "phase3",
            "witness": {"violation": "final state violates u_max <= p * u_min + p"},
        }));
    }
    Ok(())
}

struct BenchRow {
    instance: String,
    n: String,
    m: String,
    p: String,
    nsw_product: String,
    phase3_move_count: String,
    wall_time_ms: String,
    oracle_product: String,
    matches: String,
    error: String,
}

fn bench_row(path: &Path, max_states: u64) -> BenchRow {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = BenchRow {
        instance: name,
        n: String::new(),
        m: String::new(),
        p: String::new(),
        nsw_product: String::new(),
        phase3_move_count: String::new(),
        wall_time_ms: String::new(),
        oracle_product: String::new(),
        matches: String::new(),
        error: String::new(),
    };
    let run = || -> Result<(Instance, ReportFile, Rational, u128)> {
        let instance = load_instance(path)?;
        let start = Instant::now();
        let report = solve_to_report(&instance)?;
        let elapsed = start.elapsed().as_millis();
        let product = parse_rational(&report.nsw_product)?;
        Ok((instance, report, product, elapsed))
    };
    let (instance, report, product, elapsed) = match run() {
        Ok(parts) => parts,
        Err(err) => {
            row.error = format!("{err:#}");
            return row;
        }
    };
    row.n = instance.agent_count().to_string();
    row.m = instance.good_count().to_string();
    row.p = format_rational(instance.p());
    row.nsw_product = report.nsw_product.clone();
    row.phase3_move_count = report.moves.len().to_string();
    row.wall_time_ms = elapsed.to_string();
    match brute_force_mnw(&instance, max_states) {
        Ok(oracle) => {
            let opt = oracle.best_product.product;
            row.oracle_product = format_rational(&opt);
            let matches = if instance.is_integral() {
                product == opt
            } else {
                // the approximate solver only promises the factor bound
                let factor = parse_rational(report.factor.as_deref().unwrap_or("1"))
                    .unwrap_or_else(|_| Rational::one());
                let mut bound = opt;
                for _ in 0..instance.agent_count() {
                    bound *= &factor;
                }
                product >= bound
            };
            row.matches = matches.to_string();
        }
        Err(OracleError::BudgetExceeded { .. }) => {}
        Err(err) => row.error = err.to_string(),
    }
    row
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_bench(suite: &Path, out: Option<&Path>, jobs: usize, max_states: u64) -> Result<ExitCode> {
    let mut paths: Vec<PathBuf> = fs::read_dir(suite)
        .with_context(|| format!("reading {}", suite.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("building thread pool")?;
    let rows: Vec<BenchRow> =
        pool.install(|| paths.par_iter().map(|p| bench_row(p, max_states)).collect());

    let mut csv = String::from(
        "instance,n,m,p,nsw_product,phase3_move_count,wall_time_ms,oracle_product,match,error\n",
    );
    for r in &rows {
        let fields = [
            &r.instance,
            &r.n,
            &r.m,
            &r.p,
            &r.nsw_product,
            &r.phase3_move_count,
            &r.wall_time_ms,
            &r.oracle_product,
            &r.matches,
            &r.error,
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        csv.push_str(&line.join(","));
        csv.push('\n');
    }
    emit(out, csv.trim_end_matches('\n'))?;
    if !rows.is_empty() && rows.iter().all(|r| !r.error.is_empty()) {
        bail!("all {} instances failed", rows.len());
    }
    Ok(ExitCode::SUCCESS)
}
