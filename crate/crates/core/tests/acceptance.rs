//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always print. The exit
//! status is nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use beta10::bijection::{tree_to_map, witness_noncorrespondence};
use beta10::fixed_points::{classify, count_fixed, enumerate_fixed, is_fixed};
use beta10::involution::{check_theorem1, h};
use beta10::series::{
    census_a, lagrange_u, verify_eq1, verify_eq2, verify_ternary_link, verify_theorem4,
};
use beta10::symmetry::{census, Family};
use beta10::tree::{generate_all, par_generate_all, BetaTree};
use beta10::TruncatedBiSeries;
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

// the displayed prefix 1, 2, 7, 30, 143, 728, 3876
const FIXED_PREFIX: [u64; 7] = [1, 2, 7, 30, 143, 728, 3876];

fn choose(n: u64, k: u64) -> BigUint {
    // Pascal row, independent of the library's binomial
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::from(1u32); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[k as usize].clone()
}

fn a_n(n: u64) -> BigUint {
    choose(3 * n - 2, n - 1) / BigUint::from(n)
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn criterion_1() -> Outcome {
    let mut got = Vec::new();
    for n in [2usize, 4, 6, 8, 10] {
        got.push(par_generate_all(n).filter(is_fixed).count() as u64);
    }
    if got != FIXED_PREFIX[..5] {
        return Err(format!("brute force gave {got:?}"));
    }
    for (i, &want) in FIXED_PREFIX.iter().enumerate() {
        if count_fixed(i as u64 + 1) != BigUint::from(want) {
            return Err(format!("count_fixed({}) != {want}", i + 1));
        }
    }
    Ok(format!("{got:?}"))
}

fn criterion_2() -> Outcome {
    let max = 12;
    let mut total = 0usize;
    for n in 1..=max {
        let (count, bad) = par_generate_all(n)
            .map(|t| (1usize, h(&h(&t)) != t))
            .reduce(|| (0, false), |a, b| (a.0 + b.0, a.1 || b.1));
        if bad {
            let t = par_generate_all(n).find_any(|t| h(&h(t)) != *t).unwrap();
            return Err(format!("h(h({t})) != {t}"));
        }
        total += count;
    }
    Ok(format!("{total} trees with n <= {max}"))
}

fn criterion_3() -> Outcome {
    for n in 2..=10 {
        if let Some(t) = par_generate_all(n).find_any(|t| !check_theorem1(t)) {
            let (a, b) = (t.stats(), h(&t).stats());
            return Err(format!("{t}: {a:?} vs {b:?}"));
        }
    }
    Ok("2 <= n <= 10".into())
}

fn criterion_4() -> Outcome {
    if classify(&BetaTree::leaf()).map(|s| s.tag()) != Ok("F0") {
        return Err("single node is not F0".into());
    }
    for n in (2..=12).step_by(2) {
        let brute: BTreeSet<String> = par_generate_all(n)
            .filter(is_fixed)
            .map(|t| t.to_text())
            .collect();
        let grammar: Vec<BetaTree> = enumerate_fixed(n).collect();
        let texts: BTreeSet<String> = grammar.iter().map(|t| t.to_text()).collect();
        if texts != brute || texts.len() != grammar.len() {
            return Err(format!(
                "n = {n}: {} brute vs {} enumerated",
                brute.len(),
                grammar.len()
            ));
        }
        let bad = grammar.par_iter().find_any(|t| match classify(t) {
            Ok(s) => !matches!(s.tag(), "F1" | "F2") || s.build().as_ref() != Ok(*t),
            Err(_) => true,
        });
        if let Some(t) = bad {
            return Err(format!("classify/build fails at {t}"));
        }
    }
    Ok("even n <= 12".into())
}

fn criterion_5() -> Outcome {
    for n in [3usize, 5, 7, 9, 11] {
        if let Some(t) = par_generate_all(n).find_any(is_fixed) {
            return Err(format!("{t} is fixed"));
        }
    }
    if !is_fixed(&BetaTree::leaf()) {
        return Err("single node is not fixed".into());
    }
    Ok("n in {3,5,7,9,11}".into())
}

fn criterion_6() -> Outcome {
    let checks = [
        ("eq1", verify_eq1(10)),
        ("eq2", verify_eq2(10)),
        ("thm4", verify_theorem4(10)),
        ("ternary", verify_ternary_link(20)),
    ];
    if let Some((name, _)) = checks.iter().find(|c| !c.1) {
        return Err(format!("{name} fails"));
    }
    // xy + 2x^2y^2 + (3y^2 + 4y^3)x^3 + (9y^2 + 13y^3 + 8y^4)x^4
    let mut want = TruncatedBiSeries::zero(4);
    for (n, k, c) in [
        (1, 1, 1),
        (2, 2, 2),
        (3, 2, 3),
        (3, 3, 4),
        (4, 2, 9),
        (4, 3, 13),
        (4, 4, 8),
    ] {
        want.set(n, k, BigInt::from(c));
    }
    let got = census_a(10).truncate(4);
    if got != want {
        return Err(format!("A(x,y) prefix is {got}"));
    }
    Ok("eq1, eq2, thm4 at order 10; ternary at 20; A(x,y) prefix".into())
}

fn criterion_7() -> Outcome {
    let u = lagrange_u(20);
    for n in 1..=20u64 {
        let want = a_n(n);
        if count_fixed(n) != want || u.x_coeff(n as usize) != BigInt::from(want.clone()) {
            return Err(format!("n = {n}"));
        }
    }
    Ok(format!("a_20 = {}", a_n(20)))
}

fn criterion_8() -> Outcome {
    for n in 1..=8 {
        let mut codes = HashSet::new();
        for t in generate_all(n) {
            let m = tree_to_map(&t);
            if !m.is_valid() || !m.is_nonseparable() {
                return Err(format!("{t} maps to an invalid or separable map"));
            }
            if m.edge_count() != n {
                return Err(format!("{t} maps to {} edges", m.edge_count()));
            }
            if m.root_face_degree() != t.label() as usize + 1 {
                return Err(format!("{t}: root-face degree {}", m.root_face_degree()));
            }
            if !codes.insert(m.canonical_code()) {
                return Err(format!("{t} collides with another tree"));
            }
        }
    }
    Ok("n <= 8".into())
}

fn criterion_9() -> Outcome {
    let mut census = Vec::new();
    for n in 2..=8 {
        let mut self_dual = 0u64;
        for t in generate_all(n) {
            let m = tree_to_map(&t);
            let d = m.dual().map_err(|e| e.to_string())?;
            if !d.dual().map_err(|e| e.to_string())?.is_isomorphic(&m) {
                return Err(format!("dual(dual(M)) differs for {t}"));
            }
            if d.is_isomorphic(&m) {
                self_dual += 1;
            }
        }
        if n % 2 == 0 {
            census.push(self_dual);
        }
    }
    if census != [1, 2, 7, 30] {
        return Err(format!("self-dual census {census:?}"));
    }
    Ok(format!("self-dual census {census:?}"))
}

fn criterion_10() -> Outcome {
    match witness_noncorrespondence(6) {
        Some(t) if is_fixed(&t) && !tree_to_map(&t).is_self_dual() => Ok(format!("witness {t}")),
        Some(t) => Err(format!("bad witness {t}")),
        None => Err("no witness on 4..=6 nodes".into()),
    }
}

fn criterion_11() -> Outcome {
    let mut row = Vec::new();
    for n in 1..=7usize {
        let want = if n % 2 == 1 {
            a_n((n as u64).div_ceil(2))
        } else {
            choose(3 * n as u64 / 2, n as u64 / 2) / BigUint::from(n as u64 + 1)
        };
        for f in [Family::Ternary, Family::Even, Family::NonCrossing] {
            let c = census(f, n).map_err(|e| e.to_string())?;
            if BigUint::from(c.symmetric) != want {
                return Err(format!(
                    "{f} n = {n}: {} symmetric, want {want}",
                    c.symmetric
                ));
            }
            if BigUint::from(c.total)
                != choose(3 * n as u64, n as u64) / BigUint::from(2 * n as u64 + 1)
            {
                return Err(format!("{f} n = {n}: total {}", c.total));
            }
        }
        row.push(want.to_string());
    }
    Ok(format!("symmetric counts {}", row.join(",")))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("fixed-point counts", criterion_1),
        ("involution", criterion_2),
        ("statistic swap", criterion_3),
        ("structure theorem", criterion_4),
        ("odd-size emptiness", criterion_5),
        ("series identities", criterion_6),
        ("closed form", criterion_7),
        ("map corpus", criterion_8),
        ("duality", criterion_9),
        ("non-correspondence witness", criterion_10),
        ("symmetry census", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
