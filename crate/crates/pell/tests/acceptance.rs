//! End-to-end acceptance checks. Each test prints a single PASS/FAIL line
//! for its criterion; a FAIL line is followed by the collected evidence.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use pell::cf::{convergents, expand_sqrt, Radicand};
use pell::families::{family_convergent, FamilyId, FamilyParams, ALL_FAMILIES};
use pell::rd::{reduce_to_fundamental, solve_fundamental, Sign};
use pell::solver::{brute_fundamental, fundamental_solution, is_solution, nth_solution, PellSolution};
use pell::survey::{survey_range, verify_range, SurveyOptions};
use pell::Error;

fn report(name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("acceptance: {name}: PASS");
    } else {
        println!("acceptance: {name}: FAIL");
        for f in &failures {
            println!("  - {f}");
        }
        panic!("{name}: {} check(s) failed", failures.len());
    }
}

fn rad(d: u64) -> Radicand {
    Radicand::from_u64(d).unwrap()
}

fn is_square(d: u64) -> bool {
    let s = d.isqrt();
    s * s == d
}

#[test]
fn criterion_coverage_statistics() {
    let mut failures = Vec::new();
    let opts = SurveyOptions {
        verify: false,
        details: false,
        period_cap: 10_000,
    };

    let (_, records) = survey_range(10, &opts);
    let covered: Vec<u64> = records.iter().filter(|r| r.covered).map(|r| r.d).collect();
    if covered != vec![2, 3, 5, 6, 7, 10] {
        failures.push(format!("bound 10: covered set {covered:?}, expected [2, 3, 5, 6, 7, 10]"));
    }

    // Percentages over all non-square D in [2, N].
    for (bound, expected) in [(100u64, 72.2f64), (1000, 35.4), (10_000, 15.7)] {
        let (stats, _) = survey_range(bound, &opts);
        let got = stats.covered_nonsquare as f64 * 100.0 / stats.total_nonsquare as f64;
        if (got - expected).abs() > 3.0 {
            failures.push(format!(
                "bound {bound}: coverage {got:.1}% not within 3 points of {expected}%"
            ));
        }
    }
    report("coverage statistics", failures);
}

#[test]
fn criterion_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for d in 2..=500u64 {
        if is_square(d) {
            continue;
        }
        let r = rad(d);
        match brute_fundamental(&r, 1_000_000) {
            Ok(oracle) => {
                checked += 1;
                let got = solve_fundamental(&r).unwrap().solution;
                if (got.x.clone(), got.y.clone()) != (oracle.x.clone(), oracle.y.clone()) {
                    failures.push(format!(
                        "D={d}: solver ({}, {}) != oracle ({}, {})",
                        got.x, got.y, oracle.x, oracle.y
                    ));
                }
            }
            Err(Error::NotFound(_)) => {} // fundamental Y exceeds the scan bound
            Err(e) => failures.push(format!("D={d}: oracle error {e}")),
        }
    }
    if checked < 350 {
        failures.push(format!("only {checked} radicands checked against the oracle"));
    }
    report("brute-force oracle equivalence D <= 500", failures);
}

#[test]
fn criterion_closed_form_differential() {
    let mut failures = Vec::new();
    match verify_range(10_000, 1_000_000) {
        Ok((checked, mismatches)) => {
            if mismatches != 0 {
                failures.push(format!("{mismatches} closed-form mismatches among {checked}"));
            }
            if checked < 1000 {
                failures.push(format!("only {checked} covered radicands found up to 10^4"));
            }
        }
        Err(e) => failures.push(format!("verify_range failed: {e}")),
    }
    report("closed form vs engine differential D <= 10^4", failures);
}

#[test]
fn criterion_named_fixed_points() {
    let mut failures = Vec::new();
    let cases: [(u64, u64, u64, bool); 6] = [
        (7, 8, 3, false),
        (11, 10, 3, false),
        (13, 649, 180, false),
        (21, 55, 12, true),
        (44, 199, 30, false),
        (92, 1151, 120, false),
    ];
    for (d, x, y, reduced) in cases {
        let r = rad(d);
        let out = solve_fundamental(&r).unwrap();
        let got = (
            out.solution.x.to_u64().unwrap_or(0),
            out.solution.y.to_u64().unwrap_or(0),
        );
        if got != (x, y) {
            failures.push(format!("D={d}: got {got:?}, expected ({x}, {y})"));
        }
        if out.fast_path.is_none() {
            failures.push(format!("D={d}: expected a closed-form fast path"));
        }
        if out.reduced != reduced {
            failures.push(format!("D={d}: reduced={}, expected {reduced}", out.reduced));
        }
        if x * x != d * y * y + 1 {
            failures.push(format!("D={d}: ({x}, {y}) fails the defining identity"));
        }
        let oracle = brute_fundamental(&r, 1_000_000).unwrap();
        if (oracle.x.to_u64(), oracle.y.to_u64()) != (Some(x), Some(y)) {
            failures.push(format!("D={d}: oracle disagrees"));
        }
    }
    report("named fixed points", failures);
}

#[test]
fn criterion_expansion_invariants() {
    let mut failures = Vec::new();
    for d in 2..=10_000u64 {
        if is_square(d) {
            continue;
        }
        let r = rad(d);
        let exp = expand_sqrt(&r).unwrap();
        let period = exp.period();
        let last = period.last().unwrap();
        if *last != exp.a0() * 2u32 {
            failures.push(format!("D={d}: closing quotient {last} != 2*a0"));
        }
        let prefix = &period[..period.len() - 1];
        if !prefix.iter().eq(prefix.iter().rev()) {
            failures.push(format!("D={d}: period prefix is not a palindrome"));
        }
        let r_idx = exp.r() as u64;
        let upto = (r_idx + 2).min(r_idx.max(6));
        let convs = convergents(&exp, upto);
        for w in convs.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            // p_i q_{i-1} - p_{i-1} q_i = (-1)^{i+1}, checked without
            // signed arithmetic by moving a term across.
            let lhs = &hi.p * &lo.q;
            let rhs = &lo.p * &hi.q;
            let expect_plus_one = (hi.index + 1) % 2 == 0;
            let ok = if expect_plus_one {
                lhs == rhs + 1u32
            } else {
                lhs + 1u32 == rhs
            };
            if !ok {
                failures.push(format!("D={d}: cross-determinant fails at index {}", hi.index));
            }
        }
        // p_r^2 - D q_r^2 = (-1)^(r+1)
        let cr = convs.iter().find(|c| c.index == r_idx as i64).unwrap();
        let lhs = &cr.p * &cr.p;
        let rhs = r.value() * (&cr.q * &cr.q);
        let ok = if r_idx % 2 == 1 {
            lhs == rhs + 1u32
        } else {
            lhs + 1u32 == rhs
        };
        if !ok {
            failures.push(format!("D={d}: half-period convergent has the wrong norm"));
        }
        if failures.len() > 20 {
            break;
        }
    }
    // sqrt(a^2 + 1) = [a; 2a, 2a, ...]: period length exactly one.
    for a in 1..=50u64 {
        let exp = expand_sqrt(&rad(a * a + 1)).unwrap();
        if exp.period_len() != 1 || *exp.partial_quotient(1) != BigUint::from(2 * a) {
            failures.push(format!("D={}: expected period [2a] = [{}]", a * a + 1, 2 * a));
        }
    }
    report("expansion invariants D <= 10^4", failures);
}

#[test]
fn criterion_family_catalog() {
    let mut failures = Vec::new();
    let signs = [Sign::Plus, Sign::Minus];
    for id in ALL_FAMILIES {
        let mut points = 0u64;
        for sign in signs {
            for dv in 1..=60u64 {
                for (m, n, alpha, beta) in param_grid(id) {
                    let mut fp = FamilyParams::new(id, BigUint::from(dv));
                    fp.m = BigUint::from(m);
                    fp.n = BigUint::from(n);
                    fp.alpha = alpha;
                    fp.beta = beta;
                    fp.sign = sign;
                    for inner in inner_signs(id) {
                        fp.inner_sign = inner;
                        let (r, conv) = match family_convergent(&fp) {
                            Ok(v) => v,
                            Err(_) => continue, // parameter point outside the family
                        };
                        points += 1;
                        let dvl = r.value().clone();
                        if !is_solution(&dvl, &conv.p, &conv.q) {
                            failures.push(format!("{id} d={dv} {sign}: identity fails"));
                            continue;
                        }
                        let sol = PellSolution {
                            d: dvl,
                            x: conv.p.clone(),
                            y: conv.q.clone(),
                            branch_index: 1,
                        };
                        let (fund, _) = reduce_to_fundamental(&sol).unwrap();
                        let engine = fundamental_solution(&r).unwrap();
                        if (fund.x, fund.y) != (engine.x, engine.y) {
                            failures.push(format!("{id} d={dv} {sign}: reduction disagrees with engine"));
                        }
                    }
                }
            }
        }
        if points < 20 {
            failures.push(format!("{id}: only {points} grid points evaluated"));
        }
    }
    report("family catalog (15 families, >= 20 points each)", failures);
}

fn param_grid(id: FamilyId) -> Vec<(u64, u64, u32, u32)> {
    // (m, n, alpha, beta) tuples; families ignore the fields they don't use.
    match id {
        FamilyId::C1iv => vec![(2, 1, 0, 1), (2, 1, 1, 1), (3, 1, 1, 1), (2, 3, 0, 1)],
        FamilyId::C1v => vec![(1, 1, 1, 1), (1, 1, 2, 1), (2, 1, 1, 1), (1, 3, 1, 2)],
        FamilyId::C1vi | FamilyId::C2iii | FamilyId::C2iv => {
            vec![(1, 1, 0, 1), (1, 2, 0, 1), (1, 3, 0, 1), (1, 5, 0, 1)]
        }
        FamilyId::C2vi => vec![(1, 1, 0, 1), (1, 3, 0, 1), (1, 5, 0, 1), (1, 7, 0, 1)],
        FamilyId::C1vii => vec![(1, 1, 0, 1), (2, 1, 0, 1), (3, 1, 0, 1)],
        _ => vec![(1, 1, 0, 1)],
    }
}

fn inner_signs(id: FamilyId) -> Vec<Sign> {
    if id == FamilyId::C1ix {
        vec![Sign::Plus, Sign::Minus]
    } else {
        vec![Sign::Plus]
    }
}

#[test]
fn criterion_solution_branch() {
    let mut failures = Vec::new();
    for d in [2u64, 3, 5, 6, 7, 10] {
        let r = rad(d);
        let fund = fundamental_solution(&r).unwrap();
        let dv = r.value();
        let mut branch = vec![PellSolution::trivial(dv.clone())];
        for n in 1..=10u64 {
            let sol = nth_solution(&fund, n).unwrap();
            if !is_solution(dv, &sol.x, &sol.y) {
                failures.push(format!("D={d} n={n}: identity fails"));
            }
            branch.push(sol);
        }
        // Composition in Z[sqrt(D)]: element(a) * element(b) = element(a+b).
        for a in 1..=5usize {
            for b in 1..=5usize {
                let (sa, sb, sab) = (&branch[a], &branch[b], &branch[a + b]);
                let x = &sa.x * &sb.x + dv * &sa.y * &sb.y;
                let y = &sa.x * &sb.y + &sa.y * &sb.x;
                if (x, y) != (sab.x.clone(), sab.y.clone()) {
                    failures.push(format!("D={d}: composition {a}+{b} fails"));
                }
            }
        }
        // Second-order recurrence X_{n+1} = 2 X_1 X_n - X_{n-1}, same for Y.
        for n in 1..=9usize {
            let two_x1 = &fund.x * 2u32;
            if &branch[n + 1].x + &branch[n - 1].x != &two_x1 * &branch[n].x {
                failures.push(format!("D={d} n={n}: X recurrence fails"));
            }
            if &branch[n + 1].y + &branch[n - 1].y != &two_x1 * &branch[n].y {
                failures.push(format!("D={d} n={n}: Y recurrence fails"));
            }
        }
        if fund.x <= BigUint::one() {
            failures.push(format!("D={d}: fundamental X must exceed 1"));
        }
    }
    report("solution branch generation and recurrences", failures);
}
