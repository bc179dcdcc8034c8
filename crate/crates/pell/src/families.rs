//! Parameterized radicand families with one-line convergent formulas.
//!
//! The two catalogs specialize the closed forms to families of radicands
//! indexed by small parameters. Each entry below evaluates the family's
//! formula directly — with exact integer arithmetic and a
//! Pell-identity assertion — rather than routing through the classifier, so
//! boundary parameters whose period pattern collapses (a zero partial
//! quotient) still get their valid, possibly non-fundamental, solution.
//! Callers that need the fundamental solution pipe the result through
//! [`crate::rd::reduce_to_fundamental`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cf::{Convergent, Radicand};
use crate::rd::Sign;
use crate::solver::is_solution;
use crate::Error;

/// Identifier of a catalog family. `C1*` come from the k = 2f/m congruence
/// class (short periods, linear/quadratic formulas), `C2*` from the
/// 4f ≡ m (mod 2m) class (longer periods, quartic/sextic formulas).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyId {
    /// D = d² − 1 → (d, 1)
    C1i,
    /// D = d² + 1 → (2d² + 1, 2d)
    C1ii,
    /// D = d² ± 2 → (d² ± 1, d)
    C1iii,
    /// D = m²(d² ± 2^α n) → (2d²/M ± 1, 2d/(M m)), M = 2^α n
    C1iv,
    /// D = (m d^β)² ± 2^α n → (2F²/M ± 1, 2F/M), F = m d^β
    C1v,
    /// D = n(n d² ± 1) → (2n d² ± 1, 2d)
    C1vi,
    /// D = d(m² d ± 2) → (m² d ± 1, m)
    C1vii,
    /// D = d(d + 4), d even → ((d+2)²/2 − 1, (d+2)/2)
    C1viii,
    /// D = (d ± 2)² ± 4, d even → ((d±2)²/2 ± 1, (d±2)/2)
    C1ix,
    /// D = 4d(d ± 2), d odd → (2d(d±2) + 1, d ± 1)
    C2i,
    /// D = 4(d² ± 2), d odd → (2d²(d²±2) + 1, d(d²±1))
    C2ii,
    /// D = 16n(n d² ± 1), d odd → (8nd²(nd²±1) + 1, d(2nd²±1))
    C2iii,
    /// D = 4n(n d² ± 2), d odd → (2nd²(nd²±2) + 1, d(nd²±1))
    C2iv,
    /// D = d² ± 4, d odd → (d²(d²±3)²/2 ± 1, d(d²±1)(d²±3)/2)
    C2v,
    /// D = n(n d² ± 4), n, d odd → (nd²(nd²±3)²/2 ± 1, d(nd²±1)(nd²±3)/2)
    C2vi,
}

pub const ALL_FAMILIES: [FamilyId; 15] = [
    FamilyId::C1i,
    FamilyId::C1ii,
    FamilyId::C1iii,
    FamilyId::C1iv,
    FamilyId::C1v,
    FamilyId::C1vi,
    FamilyId::C1vii,
    FamilyId::C1viii,
    FamilyId::C1ix,
    FamilyId::C2i,
    FamilyId::C2ii,
    FamilyId::C2iii,
    FamilyId::C2iv,
    FamilyId::C2v,
    FamilyId::C2vi,
];

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyId::C1i => "c1-i",
            FamilyId::C1ii => "c1-ii",
            FamilyId::C1iii => "c1-iii",
            FamilyId::C1iv => "c1-iv",
            FamilyId::C1v => "c1-v",
            FamilyId::C1vi => "c1-vi",
            FamilyId::C1vii => "c1-vii",
            FamilyId::C1viii => "c1-viii",
            FamilyId::C1ix => "c1-ix",
            FamilyId::C2i => "c2-i",
            FamilyId::C2ii => "c2-ii",
            FamilyId::C2iii => "c2-iii",
            FamilyId::C2iv => "c2-iv",
            FamilyId::C2v => "c2-v",
            FamilyId::C2vi => "c2-vi",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "c1-i" => Ok(FamilyId::C1i),
            "c1-ii" => Ok(FamilyId::C1ii),
            "c1-iii" => Ok(FamilyId::C1iii),
            "c1-iv" => Ok(FamilyId::C1iv),
            "c1-v" => Ok(FamilyId::C1v),
            "c1-vi" => Ok(FamilyId::C1vi),
            "c1-vii" => Ok(FamilyId::C1vii),
            "c1-viii" => Ok(FamilyId::C1viii),
            "c1-ix" => Ok(FamilyId::C1ix),
            "c2-i" => Ok(FamilyId::C2i),
            "c2-ii" => Ok(FamilyId::C2ii),
            "c2-iii" => Ok(FamilyId::C2iii),
            "c2-iv" => Ok(FamilyId::C2iv),
            "c2-v" => Ok(FamilyId::C2v),
            "c2-vi" => Ok(FamilyId::C2vi),
            other => Err(format!("unknown family id '{other}'")),
        }
    }
}

/// Parameters for a family formula. Only the fields a family uses are read;
/// unused fields are ignored. `sign` matches the ± in the family's D, and
/// `inner_sign` is the inner ± of `C1ix` (the shift d ± 2).
#[derive(Debug, Clone)]
pub struct FamilyParams {
    pub id: FamilyId,
    pub d: BigUint,
    pub m: BigUint,
    pub n: BigUint,
    pub alpha: u32,
    pub beta: u32,
    pub sign: Sign,
    pub inner_sign: Sign,
}

impl FamilyParams {
    pub fn new(id: FamilyId, d: BigUint) -> Self {
        FamilyParams {
            id,
            d,
            m: BigUint::one(),
            n: BigUint::one(),
            alpha: 0,
            beta: 1,
            sign: Sign::Plus,
            inner_sign: Sign::Plus,
        }
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::ConditionViolation(msg.into())
}

fn add_or_sub(base: BigUint, off: &BigUint, sign: Sign, what: &str) -> Result<BigUint, Error> {
    match sign {
        Sign::Plus => Ok(base + off),
        Sign::Minus => {
            if base <= *off {
                Err(violation(format!("{what}: {base} - {off} is not positive")))
            } else {
                Ok(base - off)
            }
        }
    }
}

/// Evaluate a family's closed-form convergent.
///
/// Returns the radicand (validated non-square, with its squarefree flag) and
/// the convergent pair, which always satisfies p² − D q² = 1 but may be a
/// higher branch element for boundary parameters.
pub fn family_convergent(fp: &FamilyParams) -> Result<(Radicand, Convergent), Error> {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let d = &fp.d;
    let n = &fp.n;
    let m = &fp.m;
    if d.is_zero() {
        return Err(violation("d must be positive"));
    }
    let (dv, p, q, index) = match fp.id {
        FamilyId::C1i => {
            if *d < two {
                return Err(violation("c1-i needs d >= 2"));
            }
            (d * d - &one, d.clone(), one.clone(), 1)
        }
        FamilyId::C1ii => (d * d + &one, (d * d) * 2u32 + 1u32, d * 2u32, 1),
        FamilyId::C1iii => {
            if fp.sign == Sign::Minus && *d == two {
                // the pattern collapses for d = 2: sqrt(2) = [1; 2, ...]
                (two.clone(), BigUint::from(3u32), two.clone(), 1)
            } else {
                if fp.sign == Sign::Minus && *d < BigUint::from(3u32) {
                    return Err(violation("c1-iii minus needs d >= 3"));
                }
                let dv = add_or_sub(d * d, &two, fp.sign, "c1-iii D")?;
                let p = add_or_sub(d * d, &one, fp.sign, "c1-iii p")?;
                (dv, p, d.clone(), if fp.sign == Sign::Plus { 1 } else { 3 })
            }
        }
        FamilyId::C1iv => {
            if m.is_zero() || n.is_zero() {
                return Err(violation("c1-iv needs m, n >= 1"));
            }
            let big_m = n << fp.alpha;
            let md = &big_m * m;
            if !((d * 2u32) % &md).is_zero() {
                return Err(violation("c1-iv needs 2d = 0 (mod 2^alpha * n * m)"));
            }
            let core = add_or_sub(d * d, &big_m, fp.sign, "c1-iv d^2 +- M")?;
            let dv = m * m * &core;
            let p = add_or_sub((d * d * 2u32) / &big_m, &one, fp.sign, "c1-iv p")?;
            let q = (d * 2u32) / &md;
            (dv, p, q, if fp.sign == Sign::Plus { 1 } else { 3 })
        }
        FamilyId::C1v => {
            if m.is_zero() || n.is_zero() {
                return Err(violation("c1-v needs m, n >= 1"));
            }
            let f = m * d.pow(fp.beta);
            let big_m = n << fp.alpha;
            if !((&f * 2u32) % &big_m).is_zero() {
                return Err(violation("c1-v needs 2 m d^beta = 0 (mod 2^alpha * n)"));
            }
            let dv = add_or_sub(&f * &f, &big_m, fp.sign, "c1-v D")?;
            let p = add_or_sub((&f * &f * 2u32) / &big_m, &one, fp.sign, "c1-v p")?;
            let q = (&f * 2u32) / &big_m;
            (dv, p, q, if fp.sign == Sign::Plus { 1 } else { 3 })
        }
        FamilyId::C1vi => {
            if n.is_zero() {
                return Err(violation("c1-vi needs n >= 1"));
            }
            let ndd = n * d * d;
            let core = add_or_sub(ndd.clone(), &one, fp.sign, "c1-vi n d^2 +- 1")?;
            let dv = n * &core;
            let p = add_or_sub(&ndd * 2u32, &one, fp.sign, "c1-vi p")?;
            (dv, p, d * 2u32, if fp.sign == Sign::Plus { 1 } else { 3 })
        }
        FamilyId::C1vii => {
            if m.is_zero() {
                return Err(violation("c1-vii needs m >= 1"));
            }
            let mmd = m * m * d;
            let core = add_or_sub(mmd.clone(), &two, fp.sign, "c1-vii m^2 d +- 2")?;
            let dv = d * &core;
            let p = add_or_sub(mmd, &one, fp.sign, "c1-vii p")?;
            (dv, p, m.clone(), if fp.sign == Sign::Plus { 1 } else { 3 })
        }
        FamilyId::C1viii => {
            if (d % 2u32).is_one() || *d < two {
                return Err(violation("c1-viii needs even d >= 2"));
            }
            let f = d + 2u32;
            let dv = d * (d + 4u32);
            let p = (&f * &f) / 2u32 - 1u32;
            let q = &f / 2u32;
            (dv, p, q, 3)
        }
        FamilyId::C1ix => {
            if (d % 2u32).is_one() || *d < two {
                return Err(violation("c1-ix needs even d >= 2"));
            }
            let f = add_or_sub(d.clone(), &two, fp.inner_sign, "c1-ix d +- 2")?;
            let four = BigUint::from(4u32);
            let dv = add_or_sub(&f * &f, &four, fp.sign, "c1-ix D")?;
            let p = add_or_sub((&f * &f) / 2u32, &one, fp.sign, "c1-ix p")?;
            let q = &f / 2u32;
            (dv, p, q, if fp.sign == Sign::Plus { 1 } else { 3 })
        }
        FamilyId::C2i => {
            check_odd(d, "c2-i d")?;
            if fp.sign == Sign::Minus && *d < BigUint::from(3u32) {
                return Err(violation("c2-i minus needs d >= 3"));
            }
            let shifted = add_or_sub(d.clone(), &two, fp.sign, "c2-i d +- 2")?;
            let dv = d * &shifted * 4u32;
            let p = d * &shifted * 2u32 + 1u32;
            let q = add_or_sub(d.clone(), &one, fp.sign, "c2-i q")?;
            (dv, p, q, 7)
        }
        FamilyId::C2ii => {
            check_odd(d, "c2-ii d")?;
            if fp.sign == Sign::Minus && *d < BigUint::from(3u32) {
                return Err(violation("c2-ii minus needs d >= 3"));
            }
            let core = add_or_sub(d * d, &two, fp.sign, "c2-ii d^2 +- 2")?;
            let dv = &core * 4u32;
            let p = d * d * &core * 2u32 + 1u32;
            let q = d * &add_or_sub(d * d, &one, fp.sign, "c2-ii q")?;
            (dv, p, q, 7)
        }
        FamilyId::C2iii => {
            check_odd(d, "c2-iii d")?;
            if n.is_zero() {
                return Err(violation("c2-iii needs n >= 1"));
            }
            if fp.sign == Sign::Minus && n * d <= one {
                return Err(violation("c2-iii minus needs n*d > 1"));
            }
            let ndd = n * d * d;
            let core = add_or_sub(ndd.clone(), &one, fp.sign, "c2-iii n d^2 +- 1")?;
            let dv = n * &core * 16u32;
            let p = &ndd * &core * 8u32 + 1u32;
            let q = d * &add_or_sub(&ndd * 2u32, &one, fp.sign, "c2-iii q")?;
            (dv, p, q, 7)
        }
        FamilyId::C2iv => {
            check_odd(d, "c2-iv d")?;
            if n.is_zero() {
                return Err(violation("c2-iv needs n >= 1"));
            }
            if fp.sign == Sign::Minus && n * d <= two {
                return Err(violation("c2-iv minus needs n*d > 2"));
            }
            let ndd = n * d * d;
            let core = add_or_sub(ndd.clone(), &two, fp.sign, "c2-iv n d^2 +- 2")?;
            let dv = n * &core * 4u32;
            let p = &ndd * &core * 2u32 + 1u32;
            let q = d * &add_or_sub(ndd, &one, fp.sign, "c2-iv q")?;
            (dv, p, q, 7)
        }
        FamilyId::C2v => {
            check_odd(d, "c2-v d")?;
            if fp.sign == Sign::Minus && *d < BigUint::from(3u32) {
                return Err(violation("c2-v minus needs d >= 3"));
            }
            let four = BigUint::from(4u32);
            let three = BigUint::from(3u32);
            let dv = add_or_sub(d * d, &four, fp.sign, "c2-v D")?;
            let t = add_or_sub(d * d, &three, fp.sign, "c2-v d^2 +- 3")?;
            let u = add_or_sub(d * d, &one, fp.sign, "c2-v d^2 +- 1")?;
            let p = add_or_sub((d * d * &t * &t) / 2u32, &one, fp.sign, "c2-v p")?;
            let q = (d * &u * &t) / 2u32;
            (dv, p, q, if fp.sign == Sign::Plus { 9 } else { 11 })
        }
        FamilyId::C2vi => {
            check_odd(d, "c2-vi d")?;
            check_odd(n, "c2-vi n")?;
            let ndd = n * d * d;
            if fp.sign == Sign::Minus && ndd <= two {
                return Err(violation("c2-vi minus needs n*d^2 > 2"));
            }
            let four = BigUint::from(4u32);
            let three = BigUint::from(3u32);
            let core = add_or_sub(ndd.clone(), &four, fp.sign, "c2-vi n d^2 +- 4")?;
            let dv = n * &core;
            let t = add_or_sub(ndd.clone(), &three, fp.sign, "c2-vi n d^2 +- 3")?;
            let u = add_or_sub(ndd.clone(), &one, fp.sign, "c2-vi n d^2 +- 1")?;
            let p = add_or_sub((&ndd * &t * &t) / 2u32, &one, fp.sign, "c2-vi p")?;
            let q = (d * &u * &t) / 2u32;
            (dv, p, q, if fp.sign == Sign::Plus { 9 } else { 11 })
        }
    };
    let rad = Radicand::new(dv)?;
    if !is_solution(rad.value(), &p, &q) {
        return Err(violation(format!(
            "family {} with d={} does not yield a Pell solution",
            fp.id, fp.d
        )));
    }
    Ok((rad, Convergent { index, p, q }))
}

fn check_odd(v: &BigUint, what: &str) -> Result<(), Error> {
    if (v % 2u32).is_zero() {
        Err(violation(format!("{what} must be odd, got {v}")))
    } else {
        Ok(())
    }
}

/// A triangular-number radicand pair: D₊ = 8△(k) + 5 = (2k+1)² + 4 and,
/// for k ≥ 1, D₋ = 8△(k) − 3 = (2k+1)² − 4, with △(k) = k(k+1)/2.
#[derive(Debug, Clone)]
pub struct TriangularRadicand {
    pub k: u64,
    pub d_plus: Radicand,
    pub d_minus: Option<Radicand>,
}

/// Enumerate the triangular-number radicands for k = 0..=k_max. Both forms
/// lie strictly between consecutive squares, so they are never perfect
/// squares; the squarefree flag is computed per value.
pub fn triangular_radicands(k_max: u64) -> Vec<TriangularRadicand> {
    (0..=k_max)
        .map(|k| {
            let odd = BigUint::from(2 * k + 1);
            let sq = &odd * &odd;
            let d_plus = Radicand::new(&sq + 4u32).expect("(2k+1)^2 + 4 is never a square");
            let d_minus = (k >= 1)
                .then(|| Radicand::new(&sq - 4u32).expect("(2k+1)^2 - 4 is never a square for k >= 1"));
            TriangularRadicand { k, d_plus, d_minus }
        })
        .collect()
}
