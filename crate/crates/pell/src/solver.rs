//! Fundamental solution of X² − D·Y² = 1 and the solution branch.
//!
//! With period length r + 1 for the expansion of √D, the fundamental
//! solution is the convergent (p_r, q_r) when r is odd, and (p_{2r+1},
//! q_{2r+1}) when r is even (the convergent stream simply continues through
//! the second period). Every solution is then a power of the fundamental one
//! in Z[√D], generated here by an integer two-term recurrence.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::cf::{convergent_at, expand_sqrt_with_cap, isqrt, Radicand, DEFAULT_ITER_CAP};
use crate::Error;

/// An exact solution (X, Y) of X² − D·Y² = 1.
///
/// `branch_index` is the position in the solution branch: 0 for the trivial
/// (1, 0), 1 for the fundamental, n for its n-th power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub branch_index: u64,
}

impl PellSolution {
    /// Validating constructor; `branch_index` is taken on trust.
    pub fn new(d: BigUint, x: BigUint, y: BigUint, branch_index: u64) -> Result<Self, Error> {
        if !is_solution(&d, &x, &y) {
            return Err(Error::NotASolution { d, x, y });
        }
        Ok(PellSolution { d, x, y, branch_index })
    }

    pub fn trivial(d: BigUint) -> Self {
        PellSolution {
            d,
            x: BigUint::one(),
            y: BigUint::zero(),
            branch_index: 0,
        }
    }
}

/// True iff X² − D·Y² = 1 exactly.
pub fn is_solution(d: &BigUint, x: &BigUint, y: &BigUint) -> bool {
    x * x == d * (y * y) + 1u32
}

/// The minimal nontrivial solution (X₁ > 1, Y₁ > 0), via the continued
/// fraction of √D.
pub fn fundamental_solution(rad: &Radicand) -> Result<PellSolution, Error> {
    fundamental_solution_with_cap(rad, DEFAULT_ITER_CAP)
}

/// Like [`fundamental_solution`] with an explicit cap on the expansion.
pub fn fundamental_solution_with_cap(rad: &Radicand, cap: u64) -> Result<PellSolution, Error> {
    let exp = expand_sqrt_with_cap(rad, cap)?;
    let r = exp.r() as u64;
    let target = if r % 2 == 1 { r } else { 2 * r + 1 };
    let conv = convergent_at(&exp, target);
    let sol = PellSolution {
        d: rad.value().clone(),
        x: conv.p,
        y: conv.q,
        branch_index: 1,
    };
    assert!(
        is_solution(&sol.d, &sol.x, &sol.y),
        "convergent at the selection index must solve the Pell equation"
    );
    Ok(sol)
}

/// The n-th element of the solution branch generated by the fundamental
/// solution: X_{k+1} = X₁X_k + D·Y₁Y_k, Y_{k+1} = X₁Y_k + Y₁X_k.
pub fn nth_solution(fund: &PellSolution, n: u64) -> Result<PellSolution, Error> {
    if fund.branch_index != 1 {
        return Err(Error::NotFundamental(fund.branch_index));
    }
    let d = &fund.d;
    let (mut x, mut y) = (fund.x.clone(), fund.y.clone());
    for _ in 1..n {
        let x_next = &fund.x * &x + d * &fund.y * &y;
        let y_next = &fund.x * &y + &fund.y * &x;
        x = x_next;
        y = y_next;
    }
    debug_assert!(is_solution(d, &x, &y));
    Ok(PellSolution {
        d: d.clone(),
        x,
        y,
        branch_index: n,
    })
}

/// Independent brute-force oracle: scan Y = 1..y_max and return the first Y
/// with D·Y² + 1 a perfect square. By minimality of Y this is the
/// fundamental solution.
///
/// Deliberately ignorant of continued fractions so it can serve as a
/// cross-check for the other solving paths.
pub fn brute_fundamental(rad: &Radicand, y_max: u64) -> Result<PellSolution, Error> {
    let d = rad.value();
    if let Some(du) = d.to_u64() {
        let d128 = du as u128;
        let ym = y_max as u128;
        if let Some(vmax) = ym.checked_mul(ym).and_then(|yy| d128.checked_mul(yy)) {
            if vmax <= u128::MAX / 8 {
                return brute_u128(rad, d128, y_max);
            }
        }
    }
    brute_big(rad, y_max)
}

fn brute_u128(rad: &Radicand, d: u128, y_max: u64) -> Result<PellSolution, Error> {
    let step = d.isqrt();
    // s tracks floor(sqrt(d*y^2 + 1)); it grows by roughly sqrt(d) per
    // step, so a constant number of adjustments suffices.
    let mut s: u128 = 0;
    for y in 1..=y_max as u128 {
        let v = d * y * y + 1;
        s += step;
        while (s + 1) * (s + 1) <= v {
            s += 1;
        }
        while s * s > v {
            s -= 1;
        }
        if s * s == v {
            return Ok(PellSolution {
                d: rad.value().clone(),
                x: BigUint::from(s),
                y: BigUint::from(y),
                branch_index: 1,
            });
        }
    }
    Err(Error::NotFound(y_max))
}

fn brute_big(rad: &Radicand, y_max: u64) -> Result<PellSolution, Error> {
    let d = rad.value();
    for y in 1..=y_max {
        let yb = BigUint::from(y);
        let v = d * (&yb * &yb) + 1u32;
        let s = isqrt(&v);
        if &s * &s == v {
            return Ok(PellSolution {
                d: d.clone(),
                x: s,
                y: yb,
                branch_index: 1,
            });
        }
    }
    Err(Error::NotFound(y_max))
}
