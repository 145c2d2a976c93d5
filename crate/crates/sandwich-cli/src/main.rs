//! Command line front end: problem files in, reports and certificates out.
//!
//! Exit codes are a stable contract: 0 when the decision holds or the
//! construction succeeds, 1 for mathematical infeasibility, 2 for input
//! errors, 3 for internal numeric breakdowns.

mod demos;
mod report;
mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use sandwich_core::{
    brute_force_bounds, brute_force_t, compute_t, extend_full, interval_bounds, run_checks,
    CheckOptions, ConditionId, Error, FunctionalClass, GridSpec, ProblemFile, ResolvedProblem,
    Subspace, TLevel, Vector, XiPolicy,
};
use serde_json::{json, Value};

use report::{digest_of, RunReport};
use suite::SuiteArgs;

#[derive(Parser)]
#[command(
    name = "sandwich",
    version,
    about = "Decide and construct linear functionals sandwiched between convex bounds"
)]
struct Cli {
    /// Emit the full JSON report instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every sampled check and seeded search.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Sample budget for sampled condition checks.
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,
    /// Cross-check reported values against the grid oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Margin tolerance for sampled decisions.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check conditions (4.2), (4.3) and (4.1) for a problem file.
    Check {
        problem: PathBuf,
        /// Keep checking after the first failed condition.
        #[arg(long)]
        all: bool,
    },
    /// Construct a sandwiched extension and print its certificate.
    Extend {
        problem: PathBuf,
        /// Where in a feasible window to pick each coefficient: midpoint, low or high.
        #[arg(long, default_value = "midpoint")]
        xi_policy: String,
        /// Directions to adjoin first, as semicolon-separated vectors like "0,0,1;0,1,0".
        #[arg(long)]
        order: Option<String>,
        /// Write the certificate JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a single bound: dominated by S (sublinear) or dominating P (superlinear).
    Classical {
        /// Which bound the problem file carries: sublinear or superlinear.
        kind: String,
        problem: PathBuf,
        /// Seed point as a comma-separated vector like "1,0,0".
        #[arg(long)]
        x0: Option<String>,
    },
    /// Run a named built-in scenario end to end: example-4-1, example-4-2, lemma-4-2 or classical.
    Demo { name: String },
    /// Sweep generated instances with known feasibility and summarize agreement.
    Suite {
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Ambient dimensions to cycle through, comma separated.
        #[arg(long, default_value = "2,3")]
        dims: String,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let opts = CheckOptions::default()
        .with_seed(cli.seed)
        .with_samples(cli.samples)
        .with_tolerance(cli.tolerance);

    let started = Instant::now();
    match run(&cli, &opts) {
        Ok((mut report, code)) => {
            report.wall_ms = started.elapsed().as_millis();
            if cli.json {
                println!("{}", report.to_json());
            } else {
                report.print_human();
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::InfeasibleExtension { .. } | Error::ConditionFailed { .. } => 1,
        Error::SolverBreakdown(_) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli, opts: &CheckOptions) -> Result<(RunReport, u8), Error> {
    match &cli.command {
        Command::Check { problem, all } => cmd_check(problem, *all, cli, opts),
        Command::Extend {
            problem,
            xi_policy,
            order,
            out,
        } => cmd_extend(problem, xi_policy, order.as_deref(), out.as_deref(), cli, opts),
        Command::Classical { kind, problem, x0 } => {
            cmd_classical(kind, problem, x0.as_deref(), cli, opts)
        }
        Command::Demo { name } => demos::run_demo(name, opts),
        Command::Suite { count, dims } => {
            let args = SuiteArgs {
                count: *count,
                dims: parse_dims(dims)?,
                seed: cli.seed,
                oracle: cli.oracle,
            };
            suite::run_suite(&args, opts)
        }
    }
}

fn load_problem(path: &std::path::Path) -> Result<ProblemFile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    ProblemFile::from_json_str(&text)
}

fn parse_vector(text: &str) -> Result<Vector, Error> {
    let coords: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match coords {
        Ok(c) if !c.is_empty() => Ok(Vector::new(c)),
        _ => Err(Error::InvalidInput(format!(
            "expected a comma-separated vector, got {text:?}"
        ))),
    }
}

fn parse_order(text: &str) -> Result<Vec<Vector>, Error> {
    text.split(';').map(parse_vector).collect()
}

fn parse_dims(text: &str) -> Result<Vec<usize>, Error> {
    let dims: Result<Vec<usize>, _> = text.split(',').map(|t| t.trim().parse::<usize>()).collect();
    match dims {
        Ok(d) if !d.is_empty() => Ok(d),
        _ => Err(Error::InvalidInput(format!(
            "expected comma-separated dimensions, got {text:?}"
        ))),
    }
}

fn cmd_check(
    path: &std::path::Path,
    all: bool,
    cli: &Cli,
    opts: &CheckOptions,
) -> Result<(RunReport, u8), Error> {
    let problem = load_problem(path)?;
    let resolved = problem.resolve()?;
    let mut report = RunReport::new("check", digest_of(&problem.canonical_json()));
    report.conditions = run_checks(
        &resolved.s,
        &resolved.p,
        &resolved.f0,
        resolved.restriction.as_ref(),
        opts,
        all,
    )?;
    if cli.oracle {
        report.oracle = Some(oracle_t_block(&resolved, opts)?);
    }
    let holds = report
        .conditions
        .iter()
        .any(|c| c.condition == ConditionId::Domination && c.holds);
    Ok((report, if holds { 0 } else { 1 }))
}

fn cmd_extend(
    path: &std::path::Path,
    xi_policy: &str,
    order: Option<&str>,
    out: Option<&std::path::Path>,
    cli: &Cli,
    opts: &CheckOptions,
) -> Result<(RunReport, u8), Error> {
    let problem = load_problem(path)?;
    let resolved = problem.resolve()?;
    let policy: XiPolicy = xi_policy.parse()?;
    let order_vectors = match order {
        Some(text) => Some(parse_order(text)?),
        None => resolved.order.clone(),
    };
    let mut report = RunReport::new("extend", digest_of(&problem.canonical_json()));
    report.fact("xi policy", json!(policy.as_str()));

    match extend_full(
        &resolved.s,
        &resolved.p,
        &resolved.f0,
        resolved.restriction.as_ref(),
        order_vectors.as_deref(),
        policy,
        opts,
    ) {
        Ok(cert) => {
            if let Some(out_path) = out {
                let text = serde_json::to_string_pretty(&cert.to_json())
                    .expect("certificates always serialize");
                fs::write(out_path, text + "\n").map_err(|e| {
                    Error::InvalidInput(format!("writing {}: {e}", out_path.display()))
                })?;
                report.fact("certificate written to", json!(out_path.display().to_string()));
            }
            if cli.oracle {
                report.oracle = Some(oracle_window_block(&resolved, &cert, opts)?);
            }
            report.certificate = Some(cert);
            Ok((report, 0))
        }
        Err(Error::ConditionFailed { report: cond }) => {
            report.fact(
                "refusal",
                json!(format!("condition ({}) does not hold", cond.condition.id())),
            );
            report.conditions.push(cond);
            Ok((report, 1))
        }
        Err(Error::InfeasibleExtension {
            step,
            lo,
            hi,
            gap,
            bounds,
            trace,
        }) => {
            report.fact(
                "refusal",
                json!({
                    "step": step,
                    "window": [lo, hi],
                    "gap": gap,
                    "bounds": bounds,
                    "trace": trace.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
                }),
            );
            Ok((report, 1))
        }
        Err(other) => Err(other),
    }
}

fn cmd_classical(
    kind: &str,
    path: &std::path::Path,
    x0: Option<&str>,
    cli: &Cli,
    opts: &CheckOptions,
) -> Result<(RunReport, u8), Error> {
    let problem = load_problem(path)?;
    let class = match kind {
        "sublinear" => FunctionalClass::Sublinear,
        "superlinear" => FunctionalClass::Superlinear,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown bound kind {other:?}, expected sublinear or superlinear"
            )))
        }
    };
    let spec = problem.resolve_side(class)?;
    let x0_vector = x0.map(parse_vector).transpose()?;
    let mut report = RunReport::new("classical", digest_of(&problem.canonical_json()));

    let cert = match class {
        FunctionalClass::Sublinear => sandwich_core::classical_extend_sublinear(
            &spec,
            x0_vector.as_ref(),
            XiPolicy::Midpoint,
            opts,
        )?,
        FunctionalClass::Superlinear => sandwich_core::classical_extend_superlinear(
            &spec,
            x0_vector.as_ref(),
            XiPolicy::Midpoint,
            opts,
        )?,
    };
    if let Some(x0v) = &x0_vector {
        let attained = cert.functional.evaluate(x0v)?;
        let bound = spec.evaluate(x0v)?;
        report.fact("L(x0)", json!(attained));
        report.fact("bound at x0", json!(bound));
    }
    if cli.oracle {
        // For a single bound the tight pair collapses the convolution onto
        // the bound itself, which the grid can confirm independently.
        let (s, p) = match class {
            FunctionalClass::Sublinear => (spec.clone(), spec.dual_negate()),
            FunctionalClass::Superlinear => (spec.dual_negate(), spec.clone()),
        };
        let x = x0_vector.unwrap_or_else(|| {
            let mut e1 = vec![0.0; spec.dim()];
            e1[0] = 1.0;
            Vector::new(e1)
        });
        let grid = brute_force_t(&s, &p, &x, None, &GridSpec::coarse())?;
        let sv = s.evaluate(&x)?;
        let gv = grid.level.finite().unwrap_or(f64::NAN);
        report.oracle = Some(json!({
            "x": x.as_slice(),
            "bound": sv,
            "grid_T": gv,
            "agree": (sv - gv).abs() <= 1e-3 * (1.0 + sv.abs()),
        }));
    }
    report.certificate = Some(cert);
    Ok((report, 0))
}

/// Grid cross-check of the convolution bound at the prescribed basis points.
fn oracle_t_block(resolved: &ResolvedProblem, opts: &CheckOptions) -> Result<Value, Error> {
    let search_dim = resolved
        .restriction
        .as_ref()
        .map_or(resolved.s.dim(), Subspace::rank);
    if search_dim > 4 {
        return Ok(json!({ "skipped": "search dimension beyond the grid budget" }));
    }
    let mut rows = Vec::new();
    for x in resolved.f0.subspace().basis().iter().take(2) {
        let path = compute_t(
            &resolved.s,
            &resolved.p,
            x,
            resolved.restriction.as_ref(),
            opts,
        )?;
        match path.level {
            TLevel::Finite(v) => {
                let grid = brute_force_t(
                    &resolved.s,
                    &resolved.p,
                    x,
                    resolved.restriction.as_ref(),
                    &GridSpec::coarse(),
                )?;
                let gv = grid.level.finite().unwrap_or(f64::NAN);
                rows.push(json!({
                    "x": x.as_slice(),
                    "path": v,
                    "grid": gv,
                    "agree": (v - gv).abs() <= 1e-3 * (1.0 + v.abs()),
                }));
            }
            TLevel::MinusInfinity => rows.push(json!({
                "x": x.as_slice(),
                "path": "-inf",
                "note": "a finite grid cannot certify a collapse",
            })),
        }
    }
    Ok(json!(rows))
}

/// Grid cross-check of the first adjoined direction's one-step window.
fn oracle_window_block(
    resolved: &ResolvedProblem,
    cert: &sandwich_core::SandwichCertificate,
    opts: &CheckOptions,
) -> Result<Value, Error> {
    let Some(step) = cert.trace.first() else {
        return Ok(json!({ "skipped": "no adjoined directions" }));
    };
    if resolved.f0.subspace().rank() > 3 {
        return Ok(json!({ "skipped": "window searches beyond the grid budget" }));
    }
    let path = interval_bounds(&resolved.s, &resolved.p, &resolved.f0, &step.direction, opts)?;
    let grid = brute_force_bounds(
        &resolved.s,
        &resolved.p,
        &resolved.f0,
        &step.direction,
        &GridSpec::coarse(),
    )?;
    let pair = |pv: f64, gv: f64| {
        let agree = if pv.is_finite() && gv.is_finite() {
            (pv - gv).abs() <= 1e-3 * (1.0 + pv.abs())
        } else {
            pv.is_finite() == gv.is_finite()
        };
        json!({ "path": tag(pv), "grid": tag(gv), "agree": agree })
    };
    Ok(json!({
        "direction": step.direction.as_slice(),
        "a": pair(path.a, grid.a),
        "b": pair(path.b, grid.b),
        "c": pair(path.c, grid.c),
        "d": pair(path.d, grid.d),
    }))
}

fn tag(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v < 0.0 {
        json!("-inf")
    } else {
        json!("inf")
    }
}
