//! Continued fraction expansion of √D and its convergents.
//!
//! For non-square D ≥ 2 the regular continued fraction of √D is periodic:
//!
//! ```text
//! √D = [a0; a1, ..., ar, 2*a0]   (the block a1..ar, 2*a0 repeats forever)
//! ```
//!
//! with a0 = ⌊√D⌋ and the prefix a1..ar a palindrome. The expansion is
//! driven by integer state pairs (b_i, c_i):
//!
//! ```text
//! b_0 = 0,  c_0 = 1,
//! a_i = ⌊(a0 + b_i) / c_i⌋,  b_{i+1} = a_i*c_i - b_i,  c_{i+1} = (D - b_{i+1}²) / c_i
//! ```
//!
//! where the division defining c_{i+1} is always exact. The period closes at
//! the first index i ≥ 1 with c_i = 1, at which point a_i = 2*a0 necessarily.
//! Everything is arbitrary-precision; no floating point anywhere.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Safety cap on expansion length; the period of √D is finite but no a
/// priori bound is assumed.
pub const DEFAULT_ITER_CAP: u64 = 1_000_000;

/// Trial-division bound used when deciding squarefreeness of radicands too
/// large for exact factorization.
const SQUAREFREE_TRIAL_BOUND: u64 = 100_000;

/// Floor square root: the unique s with s² ≤ n < (s+1)².
pub fn isqrt(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    debug_assert!(&s * &s <= *n && *n < (&s + 1u32) * (&s + 1u32));
    s
}

/// A validated non-square radicand D ≥ 2.
///
/// The squarefree flag is metadata for the survey and reports; the expansion
/// itself works for any non-square D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radicand {
    d: BigUint,
    squarefree: bool,
}

impl Radicand {
    pub fn new(d: BigUint) -> Result<Self, Error> {
        if d < BigUint::from(2u32) {
            return Err(Error::DomainTooSmall(d));
        }
        let s = isqrt(&d);
        if &s * &s == d {
            return Err(Error::PerfectSquare(d));
        }
        let squarefree = is_squarefree(&d);
        Ok(Radicand { d, squarefree })
    }

    pub fn from_u64(d: u64) -> Result<Self, Error> {
        Self::new(BigUint::from(d))
    }

    /// Construct with a squarefree flag the caller has already computed
    /// (e.g. from the survey sieve). The non-square check still applies.
    pub(crate) fn with_squarefree_flag(d: BigUint, squarefree: bool) -> Result<Self, Error> {
        let rad = Self::new(d)?;
        debug_assert_eq!(rad.squarefree, squarefree);
        Ok(Radicand { squarefree, ..rad })
    }

    pub fn value(&self) -> &BigUint {
        &self.d
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.d.fmt(f)
    }
}

/// Exact for values fitting in a machine word; above that, trial division
/// up to a fixed bound (a square factor with a larger prime goes unseen).
fn is_squarefree(d: &BigUint) -> bool {
    if let Some(mut v) = d.to_u64() {
        let mut p: u64 = 2;
        while p.saturating_mul(p).saturating_mul(p) <= v {
            if v % p == 0 {
                v /= p;
                if v % p == 0 {
                    return false;
                }
            }
            p += if p == 2 { 1 } else { 2 };
        }
        // v now has no factor <= v^(1/3): it is 1, a prime, a semiprime,
        // or a prime square. Only the last is not squarefree.
        let s = v.isqrt();
        !(v > 1 && s * s == v)
    } else {
        let mut v = d.clone();
        let mut p: u64 = 2;
        while p <= SQUAREFREE_TRIAL_BOUND {
            let pb = BigUint::from(p);
            if (&v % &pb).is_zero() {
                v /= &pb;
                if (&v % &pb).is_zero() {
                    return false;
                }
            }
            p += if p == 2 { 1 } else { 2 };
        }
        !isqrt(&v).pow(2).eq(&v) || v.is_one()
    }
}

/// One state of the expansion: √D continues as (√D + b_i) / c_i at index i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfState {
    pub index: u64,
    pub b: BigUint,
    pub c: BigUint,
}

/// Iterator over the states (b_i, c_i) for i ≥ 1, without termination
/// detection. Each yielded state satisfies c_{i-1} * c_i = D - b_i².
pub struct CfStateIter {
    d: BigUint,
    a0: BigUint,
    b: BigUint,
    c: BigUint,
    index: u64,
}

impl CfStateIter {
    pub fn new(rad: &Radicand) -> Self {
        let a0 = isqrt(rad.value());
        CfStateIter {
            d: rad.value().clone(),
            b: BigUint::zero(),
            c: BigUint::one(),
            a0,
            index: 0,
        }
    }

    /// Partial quotient a_i for the state (b_i, c_i) currently held.
    fn quotient(&self) -> BigUint {
        (&self.a0 + &self.b) / &self.c
    }
}

impl Iterator for CfStateIter {
    type Item = CfState;

    fn next(&mut self) -> Option<CfState> {
        let a = self.quotient();
        let b_next = &a * &self.c - &self.b;
        let (c_next, rem) = (&self.d - &b_next * &b_next).div_rem(&self.c);
        assert!(rem.is_zero(), "CF state division must be exact");
        self.b = b_next;
        self.c = c_next;
        self.index += 1;
        Some(CfState {
            index: self.index,
            b: self.b.clone(),
            c: self.c.clone(),
        })
    }
}

/// The periodic continued fraction of √D: a0 plus the block a1..a_{r+1},
/// where a_{r+1} = 2*a0 closes the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    a0: BigUint,
    period: Vec<BigUint>,
}

impl CfExpansion {
    pub fn a0(&self) -> &BigUint {
        &self.a0
    }

    /// The full period a1..a_{r+1} (last element 2*a0).
    pub fn period(&self) -> &[BigUint] {
        &self.period
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// r = period length − 1; the fundamental solution comes from index r
    /// (r odd) or 2r+1 (r even).
    pub fn r(&self) -> usize {
        self.period.len() - 1
    }

    /// Partial quotient at index i, continuing cyclically past the first
    /// period: a_{r+1+j} = a_j for j ≥ 1.
    pub fn partial_quotient(&self, i: u64) -> &BigUint {
        if i == 0 {
            &self.a0
        } else {
            &self.period[((i - 1) % self.period.len() as u64) as usize]
        }
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; ", self.a0)?;
        for (i, a) in self.period.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Expand √D to its full first period.
pub fn expand_sqrt(rad: &Radicand) -> Result<CfExpansion, Error> {
    expand_sqrt_with_cap(rad, DEFAULT_ITER_CAP)
}

/// Like [`expand_sqrt`] with an explicit iteration cap.
pub fn expand_sqrt_with_cap(rad: &Radicand, cap: u64) -> Result<CfExpansion, Error> {
    let mut states = CfStateIter::new(rad);
    let a0 = states.a0.clone();
    let two_a0 = &a0 * 2u32;
    let mut period = Vec::new();
    let mut iters: u64 = 0;
    loop {
        states.next();
        iters += 1;
        if iters > cap {
            return Err(Error::PeriodCapExceeded(cap));
        }
        let a = states.quotient();
        let done = states.c.is_one();
        period.push(a);
        if done {
            // Termination is c_i = 1; the closing quotient 2*a0 is implied.
            assert_eq!(period.last().unwrap(), &two_a0, "closing quotient must be 2*a0");
            break;
        }
    }
    let r = period.len() - 1;
    for j in 0..r / 2 {
        assert_eq!(period[j], period[r - 1 - j], "period prefix must be a palindrome");
    }
    Ok(CfExpansion { a0, period })
}

/// A convergent p_i/q_i of √D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: i64,
    pub p: BigUint,
    pub q: BigUint,
}

/// Streaming convergents of an expansion, starting at the seed index −1:
/// (p_{-1}, q_{-1}) = (1, 0), (p_0, q_0) = (a0, 1), then
/// p_i = a_i p_{i-1} + p_{i-2} and likewise for q.
pub struct ConvergentIter<'a> {
    exp: &'a CfExpansion,
    prev: Option<(BigUint, BigUint)>,
    cur: Option<(BigUint, BigUint)>,
    index: i64,
}

impl<'a> ConvergentIter<'a> {
    pub fn new(exp: &'a CfExpansion) -> Self {
        ConvergentIter {
            exp,
            prev: None,
            cur: None,
            index: -2,
        }
    }
}

impl Iterator for ConvergentIter<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        self.index += 1;
        let (p, q) = match self.index {
            -1 => (BigUint::one(), BigUint::zero()),
            0 => (self.exp.a0().clone(), BigUint::one()),
            i => {
                let a = self.exp.partial_quotient(i as u64);
                let (pp, qp) = self.prev.as_ref().unwrap();
                let (pc, qc) = self.cur.as_ref().unwrap();
                (a * pc + pp, a * qc + qp)
            }
        };
        self.prev = self.cur.take();
        self.cur = Some((p.clone(), q.clone()));
        Some(Convergent {
            index: self.index,
            p,
            q,
        })
    }
}

/// All convergents from index −1 through `upto` inclusive.
pub fn convergents(exp: &CfExpansion, upto: u64) -> Vec<Convergent> {
    ConvergentIter::new(exp).take(upto as usize + 2).collect()
}

/// The single convergent at index i ≥ 0.
pub fn convergent_at(exp: &CfExpansion, i: u64) -> Convergent {
    ConvergentIter::new(exp).nth(i as usize + 1).unwrap()
}
