//! Exact-arithmetic solver for the simple Pell equation X² − D·Y² = 1.
//!
//! The classical route goes through the periodic continued fraction of √D:
//! the fundamental solution is a convergent at the end of the first period
//! (or the second, depending on the parity of the period length). For
//! radicands of Richaud-Degert type, D = f² ± 2^α·n with f lying in a fixed
//! residue class modulo the offset, the period is short and the fundamental
//! solution has a closed form in f, α and n — no expansion needed.
//!
//! The crate provides:
//!
//! - [`cf`]: the continued fraction engine (expansion of √D, convergents),
//!   all in arbitrary-precision integer arithmetic;
//! - [`solver`]: fundamental solution, the infinite solution branch, and an
//!   independent brute-force oracle;
//! - [`rd`]: classification of D as Richaud-Degert type and the closed-form
//!   fast paths, including reduction when a closed form lands on a higher
//!   branch element;
//! - [`families`]: the catalog of parameterized radicand families with
//!   one-line convergent formulas;
//! - [`survey`]: a squarefree sieve and a range survey measuring what
//!   fraction of radicands the closed forms cover, with CSV/JSON reports.
//!
//! The `pell` binary exposes all of it on the command line.

use num_bigint::BigUint;
use thiserror::Error;

pub mod cf;
pub mod families;
pub mod rd;
pub mod solver;
pub mod survey;

pub use cf::{expand_sqrt, isqrt, CfExpansion, Convergent, Radicand};
pub use rd::{classify, reduce_to_fundamental, RdDecomposition, Sign, Variant};
pub use solver::{brute_fundamental, fundamental_solution, is_solution, nth_solution, PellSolution};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("D = {0} is a perfect square")]
    PerfectSquare(BigUint),
    #[error("D must be at least 2, got {0}")]
    DomainTooSmall(BigUint),
    #[error("continued fraction expansion exceeded the iteration cap of {0}")]
    PeriodCapExceeded(u64),
    #[error("expected the fundamental solution (branch index 1), got branch index {0}")]
    NotFundamental(u64),
    #[error("no solution with Y <= {0}; the oracle range may be too small")]
    NotFound(u64),
    #[error("({x}, {y}) does not solve X^2 - {d}*Y^2 = 1")]
    NotASolution { d: BigUint, x: BigUint, y: BigUint },
    #[error("closed-form precondition violated: {0}")]
    ConditionViolation(String),
    #[error("inexact division in closed form ({0}); this indicates a classifier bug")]
    DivisionInexact(String),
}
