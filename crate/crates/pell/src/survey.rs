//! Coverage survey: what fraction of radicands do the closed forms handle?
//!
//! Sieves squarefree non-square D over an inclusive range, classifies each,
//! and aggregates coverage statistics. Because the source of the reference
//! percentages does not pin down its counting convention, the stats carry
//! three denominators side by side:
//!
//! - squarefree non-square D in [2, N] (the default),
//! - all non-square D in [2, N],
//! - all D in [2, N].
//!
//! Reports are deterministic: records sorted by D, fixed CSV header, stable
//! JSON key order.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_bigint::BigUint;

use crate::cf::{expand_sqrt_with_cap, Radicand};
use crate::rd::{classify, closed_form, reduce_to_fundamental, solve_fundamental};
use crate::solver::fundamental_solution_with_cap;
use crate::Error;

/// Flags entry d (1-indexed) iff no prime square divides d; index 0 is
/// false. Classic sieve marking multiples of p² for primes p ≤ √N.
pub fn sieve_squarefree(n: u64) -> Vec<bool> {
    let mut flags = vec![true; n as usize + 1];
    flags[0] = false;
    let root = n.isqrt() as usize;
    let mut is_prime = vec![true; root + 1];
    for p in 2..=root {
        if is_prime[p] {
            for q in (p * p..=root).step_by(p) {
                is_prime[q] = false;
            }
            for mult in (p * p..=n as usize).step_by(p * p) {
                flags[mult] = false;
            }
        }
    }
    flags
}

/// Options for [`survey_range`].
#[derive(Debug, Clone)]
pub struct SurveyOptions {
    /// Cross-verify every covered D's reduced closed form against the
    /// continued fraction engine; mismatches are counted in the stats.
    pub verify: bool,
    /// Compute the per-record digit count of X₁ and the period length.
    /// Coverage statistics do not need either, so large sweeps can skip
    /// them.
    pub details: bool,
    /// Iteration cap per D for period computation; a period that exceeds
    /// the cap is reported as absent.
    pub period_cap: u64,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            verify: false,
            details: true,
            period_cap: 10_000,
        }
    }
}

/// Per-radicand survey row (squarefree non-square D only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRecord {
    pub d: u64,
    pub squarefree: bool,
    pub covered: bool,
    /// Distinct variant tags of the decompositions, sorted.
    pub variants: Vec<String>,
    /// Decimal digit count of X₁, when computed.
    pub x1_digits: Option<u64>,
    /// Period length r + 1, when computed within the cap.
    pub period_length: Option<u64>,
}

/// Aggregate coverage statistics for a bound N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageStats {
    pub bound: u64,
    /// Squarefree non-square D in [2, N].
    pub total_squarefree: u64,
    /// Covered among the squarefree non-square D.
    pub covered_squarefree: u64,
    /// All non-square D in [2, N].
    pub total_nonsquare: u64,
    /// Covered among all non-square D.
    pub covered_nonsquare: u64,
    /// All D in [2, N].
    pub total_all: u64,
    /// Count of D (once per D, not per decomposition) by variant tag.
    pub per_variant: BTreeMap<String, u64>,
    /// Verification mismatches (only populated in verify mode).
    pub mismatches: u64,
}

impl CoverageStats {
    /// Percentage as an exact rational (numerator, denominator), scaled by
    /// 100, for the squarefree denominator convention.
    pub fn percent_squarefree(&self) -> (u64, u64) {
        (100 * self.covered_squarefree, self.total_squarefree)
    }

    pub fn percent_nonsquare(&self) -> (u64, u64) {
        (100 * self.covered_nonsquare, self.total_nonsquare)
    }

    pub fn percent_all(&self) -> (u64, u64) {
        (100 * self.covered_nonsquare, self.total_all)
    }
}

/// Decimal rendering of an exact percentage rational, three places.
pub fn percent_decimal(num: u64, den: u64) -> String {
    if den == 0 {
        return "n/a".into();
    }
    format!("{:.3}", num as f64 / den as f64)
}

/// Survey the inclusive range [2, N].
///
/// Coverage is decided by the classifier alone. Records are emitted for
/// squarefree non-square D; the stats additionally count coverage over all
/// non-square D so the alternative denominator conventions can be reported.
pub fn survey_range(n: u64, opts: &SurveyOptions) -> (CoverageStats, Vec<SurveyRecord>) {
    let squarefree = sieve_squarefree(n);
    let mut stats = CoverageStats {
        bound: n,
        total_squarefree: 0,
        covered_squarefree: 0,
        total_nonsquare: 0,
        covered_nonsquare: 0,
        total_all: n.saturating_sub(1),
        per_variant: BTreeMap::new(),
        mismatches: 0,
    };
    let mut records = Vec::new();
    for d in 2..=n {
        let s = d.isqrt();
        if s * s == d {
            continue;
        }
        let is_sf = squarefree[d as usize];
        let rad = Radicand::with_squarefree_flag(BigUint::from(d), is_sf)
            .expect("d is non-square and >= 2");
        let decs = classify(&rad);
        let covered = !decs.is_empty();
        stats.total_nonsquare += 1;
        if covered {
            stats.covered_nonsquare += 1;
        }
        let mut variants: Vec<String> = decs.iter().map(|x| x.variant().to_string()).collect();
        variants.sort();
        variants.dedup();
        for v in &variants {
            *stats.per_variant.entry(v.clone()).or_insert(0) += 1;
        }
        if opts.verify && covered {
            let engine = fundamental_solution_with_cap(&rad, opts.period_cap);
            for dec in &decs {
                let ok = closed_form(dec)
                    .and_then(|conv| {
                        reduce_to_fundamental(&crate::solver::PellSolution {
                            d: rad.value().clone(),
                            x: conv.p,
                            y: conv.q,
                            branch_index: 1,
                        })
                    })
                    .map(|(fund, _)| match &engine {
                        Ok(e) => e.x == fund.x && e.y == fund.y,
                        Err(_) => false,
                    })
                    .unwrap_or(false);
                if !ok {
                    stats.mismatches += 1;
                }
            }
        }
        if !is_sf {
            continue;
        }
        stats.total_squarefree += 1;
        if covered {
            stats.covered_squarefree += 1;
        }
        let (x1_digits, period_length) = if opts.details {
            match expand_sqrt_with_cap(&rad, opts.period_cap) {
                Ok(exp) => {
                    let digits = if covered {
                        solve_fundamental(&rad)
                            .ok()
                            .map(|o| o.solution.x.to_string().len() as u64)
                    } else {
                        fundamental_solution_with_cap(&rad, opts.period_cap)
                            .ok()
                            .map(|sol| sol.x.to_string().len() as u64)
                    };
                    (digits, Some(exp.period_len() as u64))
                }
                Err(_) => (None, None),
            }
        } else {
            (None, None)
        };
        records.push(SurveyRecord {
            d,
            squarefree: true,
            covered,
            variants,
            x1_digits,
            period_length,
        });
    }
    (stats, records)
}

/// Output format for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Write a deterministic report: CSV with the fixed header
/// `D,squarefree,covered,variants,X1_digits,period_length` (variants joined
/// by `|`, absent values empty), or a JSON object with `bound`, `stats` and
/// `records` keys.
pub fn emit_report<W: Write>(
    stats: &CoverageStats,
    records: &[SurveyRecord],
    format: ReportFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        ReportFormat::Csv => {
            writeln!(out, "D,squarefree,covered,variants,X1_digits,period_length")?;
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.d,
                    r.squarefree,
                    r.covered,
                    r.variants.join("|"),
                    r.x1_digits.map(|v| v.to_string()).unwrap_or_default(),
                    r.period_length.map(|v| v.to_string()).unwrap_or_default(),
                )?;
            }
        }
        ReportFormat::Json => {
            let (sf_num, sf_den) = stats.percent_squarefree();
            let (ns_num, ns_den) = stats.percent_nonsquare();
            let (all_num, all_den) = stats.percent_all();
            let json = serde_json::json!({
                "bound": stats.bound,
                "stats": {
                    "total_squarefree": stats.total_squarefree,
                    "covered_squarefree": stats.covered_squarefree,
                    "total_nonsquare": stats.total_nonsquare,
                    "covered_nonsquare": stats.covered_nonsquare,
                    "total_all": stats.total_all,
                    "percent_squarefree": {
                        "numerator": sf_num,
                        "denominator": sf_den,
                        "decimal": percent_decimal(sf_num, sf_den),
                    },
                    "percent_nonsquare": {
                        "numerator": ns_num,
                        "denominator": ns_den,
                        "decimal": percent_decimal(ns_num, ns_den),
                    },
                    "percent_all": {
                        "numerator": all_num,
                        "denominator": all_den,
                        "decimal": percent_decimal(all_num, all_den),
                    },
                    "per_variant": stats.per_variant,
                    "mismatches": stats.mismatches,
                },
                "records": records.iter().map(|r| serde_json::json!({
                    "D": r.d,
                    "squarefree": r.squarefree,
                    "covered": r.covered,
                    "variants": r.variants,
                    "X1_digits": r.x1_digits,
                    "period_length": r.period_length,
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&json)?)?;
        }
    }
    Ok(())
}

/// Differential check used by the `verify` subcommand and the acceptance
/// suite: every covered non-square D in [2, N] must have each of its
/// reduced closed forms equal to the engine's fundamental solution.
/// Returns the number of covered D checked and the mismatch count.
pub fn verify_range(n: u64, cap: u64) -> Result<(u64, u64), Error> {
    let mut checked = 0;
    let mut mismatches = 0;
    for d in 2..=n {
        let s = d.isqrt();
        if s * s == d {
            continue;
        }
        let rad = Radicand::from_u64(d)?;
        let decs = classify(&rad);
        if decs.is_empty() {
            continue;
        }
        checked += 1;
        let engine = fundamental_solution_with_cap(&rad, cap)?;
        for dec in &decs {
            let conv = closed_form(dec)?;
            let raw = crate::solver::PellSolution {
                d: rad.value().clone(),
                x: conv.p,
                y: conv.q,
                branch_index: 1,
            };
            let (fund, _) = reduce_to_fundamental(&raw)?;
            if fund.x != engine.x || fund.y != engine.y {
                mismatches += 1;
            }
        }
    }
    Ok((checked, mismatches))
}
