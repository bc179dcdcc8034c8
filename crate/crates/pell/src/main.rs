//! Command-line front end for the Pell solver.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 domain
//! error (perfect square or D < 2). The environment variable
//! `PELL_ITER_CAP` overrides the continued fraction iteration safety cap.
//! Data goes to stdout, diagnostics to stderr.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use pell::cf::{self, Radicand, DEFAULT_ITER_CAP};
use pell::families::{family_convergent, FamilyId, FamilyParams};
use pell::rd::{self, Sign};
use pell::solver;
use pell::survey::{self, percent_decimal, ReportFormat, SurveyOptions};
use pell::Error;

#[derive(Parser)]
#[command(name = "pell", version, about = "Exact Pell equation toolkit: continued fractions, closed forms, coverage survey")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of line-oriented key=value output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fundamental solution of X^2 - D*Y^2 = 1.
    Solve {
        d: String,
        /// Skip the closed-form fast path and use the CF engine directly.
        #[arg(long)]
        no_fastpath: bool,
    },
    /// Continued fraction expansion of sqrt(D).
    Cf { d: String },
    /// Richaud-Degert decompositions of D.
    Classify { d: String },
    /// Branch elements 1..n generated by the fundamental solution.
    Solutions { d: String, n: u64 },
    /// Closed-form convergent of a catalog family.
    Family(FamilyArgs),
    /// Coverage survey over squarefree non-square D in [2, N].
    Survey {
        n: u64,
        /// Cross-verify closed forms against the CF engine (exit 2 on mismatch).
        #[arg(long)]
        verify: bool,
        /// Full CSV report instead of the stats summary.
        #[arg(long)]
        csv: bool,
        /// Skip per-record X1 digits and period length (faster).
        #[arg(long)]
        no_details: bool,
    },
    /// Cross-check fast path vs CF engine (all covered D <= N) and the
    /// brute-force oracle (D <= min(N, 500)).
    Verify {
        n: u64,
        /// Oracle scan bound on Y.
        #[arg(long, default_value_t = 1_000_000)]
        ymax: u64,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Family id: c1-i .. c1-ix, c2-i .. c2-vi.
    id: String,
    #[arg(long)]
    d: String,
    #[arg(long, default_value = "1")]
    m: String,
    #[arg(long, default_value = "1")]
    n: String,
    #[arg(long, default_value_t = 0)]
    alpha: u32,
    #[arg(long, default_value_t = 1)]
    beta: u32,
    #[arg(long, default_value = "plus")]
    sign: String,
    /// Inner sign of c1-ix (the shift d +- 2).
    #[arg(long, default_value = "plus")]
    inner_sign: String,
}

fn parse_biguint(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s).map_err(|e| format!("invalid integer '{s}': {e}"))
}

fn iter_cap() -> u64 {
    std::env::var("PELL_ITER_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ITER_CAP)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            let code = match err {
                Error::PerfectSquare(_) | Error::DomainTooSmall(_) => 3,
                _ => 1,
            };
            eprintln!("error: {err}");
            ExitCode::from(code)
        }
    }
}

fn radicand(s: &str) -> Result<Radicand, Error> {
    let d = parse_biguint(s).map_err(Error::ConditionViolation)?;
    Radicand::new(d)
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let cap = iter_cap();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match &cli.cmd {
        Cmd::Solve { d, no_fastpath } => {
            let rad = radicand(d)?;
            let (sol, fast_path, reduced) = if *no_fastpath {
                (solver::fundamental_solution_with_cap(&rad, cap)?, None, false)
            } else {
                let outc = rd::solve_fundamental_with_cap(&rad, cap)?;
                (outc.solution, outc.fast_path, outc.reduced)
            };
            if cli.json {
                let v = serde_json::json!({
                    "D": rad.value().to_string(),
                    "X": sol.x.to_string(),
                    "Y": sol.y.to_string(),
                    "fast_path": fast_path.map(|v| v.to_string()),
                    "reduced": reduced,
                });
                writeln!(out, "{v}").ok();
            } else {
                let annotation = match fast_path {
                    Some(v) => format!("fast path: {v}, reduced: {}", if reduced { "yes" } else { "no" }),
                    None => "fast path: none".to_string(),
                };
                writeln!(out, "X={} Y={} ({annotation})", sol.x, sol.y).ok();
            }
        }
        Cmd::Cf { d } => {
            let rad = radicand(d)?;
            let exp = cf::expand_sqrt_with_cap(&rad, cap)?;
            if cli.json {
                let v = serde_json::json!({
                    "D": rad.value().to_string(),
                    "a0": exp.a0().to_string(),
                    "period": exp.period().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "r": exp.r(),
                });
                writeln!(out, "{v}").ok();
            } else {
                writeln!(out, "{exp}").ok();
            }
        }
        Cmd::Classify { d } => {
            let rad = radicand(d)?;
            let decs = rd::classify(&rad);
            if cli.json {
                let v = serde_json::json!(decs
                    .iter()
                    .map(|dec| serde_json::json!({
                        "f": dec.f().to_string(),
                        "alpha": dec.alpha(),
                        "n": dec.n().to_string(),
                        "sign": dec.sign().to_string(),
                        "variant": dec.variant().to_string(),
                    }))
                    .collect::<Vec<_>>());
                writeln!(out, "{v}").ok();
            } else if decs.is_empty() {
                writeln!(out, "not covered").ok();
            } else {
                for dec in &decs {
                    writeln!(out, "{dec}").ok();
                }
            }
        }
        Cmd::Solutions { d, n } => {
            let rad = radicand(d)?;
            let fund = solver::fundamental_solution_with_cap(&rad, cap)?;
            let mut rows = Vec::new();
            for k in 1..=*n {
                let sol = solver::nth_solution(&fund, k)?;
                rows.push(sol);
            }
            if cli.json {
                let v = serde_json::json!(rows
                    .iter()
                    .map(|s| serde_json::json!({
                        "n": s.branch_index,
                        "X": s.x.to_string(),
                        "Y": s.y.to_string(),
                    }))
                    .collect::<Vec<_>>());
                writeln!(out, "{v}").ok();
            } else {
                for s in &rows {
                    writeln!(out, "n={} X={} Y={}", s.branch_index, s.x, s.y).ok();
                }
            }
        }
        Cmd::Family(args) => {
            let id = FamilyId::from_str(&args.id).map_err(Error::ConditionViolation)?;
            let mut fp = FamilyParams::new(id, parse_biguint(&args.d).map_err(Error::ConditionViolation)?);
            fp.m = parse_biguint(&args.m).map_err(Error::ConditionViolation)?;
            fp.n = parse_biguint(&args.n).map_err(Error::ConditionViolation)?;
            fp.alpha = args.alpha;
            fp.beta = args.beta;
            fp.sign = Sign::from_str(&args.sign).map_err(Error::ConditionViolation)?;
            fp.inner_sign = Sign::from_str(&args.inner_sign).map_err(Error::ConditionViolation)?;
            let (rad, conv) = family_convergent(&fp)?;
            if cli.json {
                let v = serde_json::json!({
                    "D": rad.value().to_string(),
                    "p": conv.p.to_string(),
                    "q": conv.q.to_string(),
                    "squarefree": rad.is_squarefree(),
                });
                writeln!(out, "{v}").ok();
            } else {
                writeln!(out, "D={} p={} q={}", rad.value(), conv.p, conv.q).ok();
            }
        }
        Cmd::Survey { n, verify, csv, no_details } => {
            let opts = SurveyOptions {
                verify: *verify,
                details: !*no_details,
                period_cap: 10_000.min(cap),
            };
            let (stats, records) = survey::survey_range(*n, &opts);
            if *csv {
                survey::emit_report(&stats, &records, ReportFormat::Csv, &mut out)
                    .map_err(|e| Error::ConditionViolation(e.to_string()))?;
            } else if cli.json {
                survey::emit_report(&stats, &records, ReportFormat::Json, &mut out)
                    .map_err(|e| Error::ConditionViolation(e.to_string()))?;
            } else {
                let (sfn, sfd) = stats.percent_squarefree();
                let (nsn, nsd) = stats.percent_nonsquare();
                let (an, ad) = stats.percent_all();
                writeln!(out, "bound=2..={} (inclusive)", stats.bound).ok();
                writeln!(
                    out,
                    "covered_squarefree={}/{} percent={}",
                    stats.covered_squarefree,
                    stats.total_squarefree,
                    percent_decimal(sfn, sfd)
                )
                .ok();
                writeln!(
                    out,
                    "covered_nonsquare={}/{} percent={}",
                    stats.covered_nonsquare,
                    stats.total_nonsquare,
                    percent_decimal(nsn, nsd)
                )
                .ok();
                writeln!(
                    out,
                    "covered_all_denominator={}/{} percent={}",
                    stats.covered_nonsquare,
                    stats.total_all,
                    percent_decimal(an, ad)
                )
                .ok();
                for (variant, count) in &stats.per_variant {
                    writeln!(out, "variant.{variant}={count}").ok();
                }
                if *verify {
                    writeln!(out, "mismatches={}", stats.mismatches).ok();
                }
            }
            if *verify && stats.mismatches > 0 {
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::Verify { n, ymax } => {
            let (checked, mismatches) = survey::verify_range(*n, cap)?;
            let mut oracle_checked = 0u64;
            let mut oracle_mismatches = 0u64;
            for d in 2..=(*n).min(500) {
                let s = d.isqrt();
                if s * s == d {
                    continue;
                }
                let rad = Radicand::from_u64(d)?;
                match solver::brute_fundamental(&rad, *ymax) {
                    Ok(oracle) => {
                        oracle_checked += 1;
                        let engine = solver::fundamental_solution_with_cap(&rad, cap)?;
                        if oracle.x != engine.x || oracle.y != engine.y {
                            oracle_mismatches += 1;
                        }
                    }
                    Err(Error::NotFound(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            let total_mismatches = mismatches + oracle_mismatches;
            if cli.json {
                let v = serde_json::json!({
                    "covered_checked": checked,
                    "closed_form_mismatches": mismatches,
                    "oracle_checked": oracle_checked,
                    "oracle_mismatches": oracle_mismatches,
                });
                writeln!(out, "{v}").ok();
            } else {
                writeln!(out, "covered_checked={checked} closed_form_mismatches={mismatches}").ok();
                writeln!(out, "oracle_checked={oracle_checked} oracle_mismatches={oracle_mismatches}").ok();
            }
            if total_mismatches > 0 {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
