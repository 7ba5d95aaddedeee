//! Aggregate consistency checks, one entry per claim.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{audit_size, tree_to_map, witness_noncorrespondence};
use crate::combinatorics::binomial;
use crate::fixed_points::{classify, count_fixed, enumerate_fixed, is_fixed};
use crate::involution::{check_theorem1, h};
use crate::series::{
    check_eq1, check_eq2, check_ternary_link, check_theorem4, lagrange_u, IdentityCheck,
};
use crate::symmetry::{census, expected_symmetric, expected_total, Family};
use crate::tree::par_generate_all;

/// Largest order used for the bivariate series checks.
pub const SERIES_ORDER: usize = 10;
/// Order of the univariate checks.
pub const UNIVARIATE_ORDER: usize = 20;
/// Largest tree size pushed through the map audits.
pub const MAP_NODES: usize = 8;
/// Largest `n` of the symmetry census.
pub const SYMMETRY_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// `h(h(t)) = t` and `h(t)` valid with the same size, for all trees with
/// `1..=max_nodes` nodes.
pub fn check_involution(max_nodes: usize) -> CheckResult {
    let bad = (1..=max_nodes).find_map(|n| {
        par_generate_all(n).find_any(|t| {
            let s = h(t);
            !s.is_valid() || s.node_count() != n || h(&s) != *t
        })
    });
    match bad {
        None => CheckResult::new("involution", true, format!("h^2 = id for n <= {max_nodes}")),
        Some(t) => CheckResult::new("involution", false, format!("fails at {t}")),
    }
}

pub fn check_statistic_swap(max_nodes: usize) -> CheckResult {
    let bad = (2..=max_nodes).find_map(|n| par_generate_all(n).find_any(|t| !check_theorem1(t)));
    match bad {
        None => CheckResult::new(
            "statistic-swap",
            true,
            format!("root<->rpath, sub<->rsub for 2 <= n <= {max_nodes}"),
        ),
        Some(t) => CheckResult::new("statistic-swap", false, format!("fails at {t}")),
    }
}

/// Brute-force fixed points against the closed form, the grammar and the
/// classification, and emptiness at odd sizes.
pub fn check_fixed_points(max_nodes: usize) -> Vec<CheckResult> {
    let mut counts = Vec::new();
    let mut count_ok = true;
    let mut structure_ok = true;
    let mut structure_detail = String::new();
    for n in (2..=max_nodes).step_by(2) {
        let brute: BTreeSet<String> = par_generate_all(n)
            .filter(is_fixed)
            .map(|t| t.to_text())
            .collect();
        counts.push(brute.len().to_string());
        if BigUint::from(brute.len()) != count_fixed(n as u64 / 2) {
            count_ok = false;
        }
        let grammar: Vec<_> = enumerate_fixed(n).collect();
        let texts: BTreeSet<String> = grammar.iter().map(|t| t.to_text()).collect();
        if texts != brute || texts.len() != grammar.len() {
            structure_ok = false;
            structure_detail = format!("grammar and brute force differ at n = {n}");
            continue;
        }
        if let Some(t) = grammar.par_iter().find_any(|t| match classify(t) {
            Ok(s) => s.build().ok().as_ref() != Some(*t),
            Err(_) => true,
        }) {
            structure_ok = false;
            structure_detail = format!("classify/build fails at {t}");
        }
    }
    if structure_ok {
        structure_detail =
            format!("F1/F2 grammar = brute force, build(classify(t)) = t, even n <= {max_nodes}");
    }
    let odd_bad: Vec<usize> = (3..=max_nodes)
        .step_by(2)
        .filter(|&n| par_generate_all(n).any(|t| is_fixed(&t)))
        .collect();
    vec![
        CheckResult::new("fixed-point-counts", count_ok, counts.join(",")),
        CheckResult::new("structure", structure_ok, structure_detail),
        CheckResult::new(
            "odd-sizes-empty",
            odd_bad.is_empty(),
            if odd_bad.is_empty() {
                format!("no fixed points at odd 3 <= n <= {max_nodes}")
            } else {
                format!("fixed points found at n = {odd_bad:?}")
            },
        ),
    ]
}

fn identity_result(c: IdentityCheck) -> CheckResult {
    let detail = match c.first_failure() {
        None => format!("all residuals vanish through x^{}", c.order),
        Some(r) => {
            let (n, k, v) = r.first_nonzero.as_ref().expect("failure has a term");
            format!("{}: coefficient x^{n} y^{k} is {v}", r.name)
        }
    };
    CheckResult::new(&format!("series-{}", c.name), c.passed(), detail)
}

pub fn check_series(order: usize) -> Vec<CheckResult> {
    vec![
        identity_result(check_eq1(order)),
        identity_result(check_eq2(order)),
        identity_result(check_theorem4(order)),
        identity_result(check_ternary_link(UNIVARIATE_ORDER)),
    ]
}

/// `count_fixed(n) = [x^n] u = (1/n) C(3n-2, n-1)` for `n <= order`.
pub fn check_closed_form(order: usize) -> CheckResult {
    let u = lagrange_u(order);
    let bad = (1..=order).find(|&n| {
        let direct = binomial(3 * n as u64 - 2, n as u64 - 1) / BigUint::from(n);
        let c = count_fixed(n as u64);
        c != direct || BigInt::from(c) != u.x_coeff(n)
    });
    CheckResult::new(
        "closed-form",
        bad.is_none(),
        match bad {
            None => format!("count_fixed = Lagrange coefficient for n <= {order}"),
            Some(n) => format!("mismatch at n = {n}"),
        },
    )
}

pub fn check_maps(max_nodes: usize) -> Vec<CheckResult> {
    let rows: Vec<_> = (1..=max_nodes).map(audit_size).collect();
    let failing: Vec<usize> = rows
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.nodes)
        .collect();
    let self_dual: Vec<String> = rows
        .iter()
        .filter(|r| r.nodes % 2 == 0)
        .map(|r| r.self_dual.unwrap_or(0).to_string())
        .collect();
    let census_ok = rows
        .iter()
        .filter(|r| r.nodes % 2 == 0)
        .all(|r| r.self_dual.map(BigUint::from) == Some(count_fixed(r.nodes as u64 / 2)));
    let witness = witness_noncorrespondence(max_nodes.max(4));
    let mut out = vec![
        CheckResult::new(
            "bijection",
            failing.is_empty(),
            if failing.is_empty() {
                format!(
                    "injective, non-separable, degree law, dual involution for n <= {max_nodes}"
                )
            } else {
                format!("audit fails at n = {failing:?}")
            },
        ),
        CheckResult::new("self-dual-census", census_ok, self_dual.join(",")),
    ];
    out.push(match witness {
        Some(t) => CheckResult::new(
            "noncorrespondence",
            !tree_to_map(&t).is_self_dual(),
            format!("fixed point {t} maps to a map that is not self-dual"),
        ),
        None => CheckResult::new(
            "noncorrespondence",
            false,
            "every scanned fixed point maps to a self-dual map",
        ),
    });
    out
}

pub fn check_symmetry(max_n: usize) -> CheckResult {
    for n in 0..=max_n {
        let want_total = expected_total(n);
        let want_sym = expected_symmetric(n);
        for f in Family::ALL {
            let c = match census(f, n) {
                Ok(c) => c,
                Err(e) => return CheckResult::new("symmetry", false, e.to_string()),
            };
            if BigUint::from(c.total) != want_total || BigUint::from(c.symmetric) != want_sym {
                return CheckResult::new(
                    "symmetry",
                    false,
                    format!("{f} n = {n}: total {} symmetric {}", c.total, c.symmetric),
                );
            }
        }
    }
    CheckResult::new(
        "symmetry",
        true,
        format!("ternary, even and non-crossing agree for n <= {max_n}"),
    )
}

/// Every check, with enumeration bounded by `max_nodes`. Series, map and
/// symmetry checks use the smaller of `max_nodes` and their own caps.
pub fn verify_all(max_nodes: usize) -> Vec<CheckResult> {
    let mut out = vec![check_involution(max_nodes), check_statistic_swap(max_nodes)];
    out.extend(check_fixed_points(max_nodes));
    out.extend(check_series(max_nodes.clamp(1, SERIES_ORDER)));
    out.push(check_closed_form(UNIVARIATE_ORDER));
    out.extend(check_maps(max_nodes.min(MAP_NODES)));
    out.push(check_symmetry(max_nodes.min(SYMMETRY_N)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_verify_passes() {
        let results = verify_all(6);
        for r in &results {
            assert!(r.passed, "{r:?}");
        }
        let names: Vec<&str> = results.iter().map(|r| r.name.as_str()).collect();
        assert!(names.contains(&"series-thm4"));
        assert!(names.contains(&"self-dual-census"));
        assert_eq!(results[2].detail, "1,2,7");
    }
}
