//! Generating functions built from exhaustive censuses, and the identities
//! they must satisfy, checked coefficient by coefficient.
//!
//! - `B(x, y)`: trees by nodes (`x`) and root label (`y`), with the single
//!   node counted at `y^0`.
//! - `A(x, y)`: fixed points of `h` by half their node count and root label.
//! - `u(x)`: the power series solution of `x = u (1 - u)^2`.
//! - `T(x)`: ternary trees by internal nodes, `T = 1 + x T^3`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::TruncatedBiSeries;
use crate::fixed_points::FixedPointTable;
use crate::tree::{generate_all, par_generate_all};

/// How the single-node tree enters `B(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SeriesConvention {
    /// Power of `y` carried by the single-node tree. The identities use 0:
    /// `b_{1,0} = 1` and `b_{1,1} = 0`.
    pub single_node_y_power: usize,
}

/// `B(x, y)` through `x^order` by exhaustive generation.
pub fn census_b(order: usize, convention: &SeriesConvention) -> TruncatedBiSeries {
    let mut s = TruncatedBiSeries::zero(order);
    if order >= 1 {
        s.set(1, convention.single_node_y_power, BigInt::from(1));
    }
    for n in 2..=order {
        let counts = par_generate_all(n)
            .fold(
                || vec![0u64; n],
                |mut acc, t| {
                    acc[t.label() as usize] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        for (k, c) in counts.into_iter().enumerate() {
            s.set(n, k, BigInt::from(c));
        }
    }
    s
}

/// `A(x, y)` through `x^order` from the F1/F2 grammar, by root label.
///
/// F1(a) has root label `child_sum(a) + 1` and F2(a1, a2, b) has
/// `child_sum(a1) + b`, so only the child sums of small trees and the root
/// labels of smaller fixed points are needed.
pub fn census_a(order: usize) -> TruncatedBiSeries {
    // by_sum[m][c]: trees on m nodes whose root children sum to c
    let mut by_sum: Vec<Vec<u128>> = vec![Vec::new()];
    for m in 1..=order {
        let mut row = vec![0u128; m];
        for t in generate_all(m) {
            row[t.child_sum() as usize] += 1;
        }
        by_sum.push(row);
    }
    // fixed[n][k]: fixed points on 2n nodes with root label k
    let mut fixed: Vec<Vec<u128>> = vec![Vec::new()];
    for n in 1..=order {
        let mut row = vec![0u128; 2 * n + 1];
        for (c, &cnt) in by_sum[n].iter().enumerate() {
            row[c + 1] += cnt;
        }
        for m in 1..n {
            for (label, &a2) in fixed[n - m].iter().enumerate() {
                if a2 == 0 {
                    continue;
                }
                for b in 2..=label + 1 {
                    for (c, &a1) in by_sum[m].iter().enumerate() {
                        row[c + b] += a1 * a2;
                    }
                }
            }
        }
        fixed.push(row);
    }
    let mut s = TruncatedBiSeries::zero(order);
    for (n, row) in fixed.iter().enumerate().skip(1) {
        for (k, &c) in row.iter().enumerate() {
            s.set(n, k, BigInt::from(c));
        }
    }
    s
}

/// `A(x, y)` by building every fixed point on up to `2 * order` nodes.
pub fn census_a_enumerated(order: usize) -> TruncatedBiSeries {
    let mut s = TruncatedBiSeries::zero(order);
    if order == 0 {
        return s;
    }
    let table = FixedPointTable::new(2 * order);
    for n in 1..=order {
        let mut counts = vec![0u64; 2 * n + 1];
        for t in table.stream(2 * n) {
            counts[t.label() as usize] += 1;
        }
        for (k, c) in counts.into_iter().enumerate() {
            s.set(n, k, BigInt::from(c));
        }
    }
    s
}

/// Solution of `u = x / (1 - u)^2` by Lagrange inversion:
/// `[x^n] u = (1/n) [t^(n-1)] (1 - t)^(-2n)`.
pub fn lagrange_u(order: usize) -> TruncatedBiSeries {
    let one = TruncatedBiSeries::one(order);
    let t = TruncatedBiSeries::x(order);
    let phi = (&one - &t).pow(2).inverse().expect("constant term is 1");
    let mut coeffs = vec![BigInt::zero()];
    let mut phi_pow = one.clone();
    for n in 1..=order {
        phi_pow = &phi_pow * &phi;
        let c = phi_pow.x_coeff(n - 1);
        let n_big = BigInt::from(n);
        debug_assert!((&c % &n_big).is_zero());
        coeffs.push(c / n_big);
    }
    TruncatedBiSeries::univariate(order, coeffs)
}

/// `T(x)` from the fixed-point iteration `T <- 1 + x T^3`.
pub fn ternary_t(order: usize) -> TruncatedBiSeries {
    let one = TruncatedBiSeries::one(order);
    let x = TruncatedBiSeries::x(order);
    let mut t = one.clone();
    // each pass fixes one more coefficient
    for _ in 0..=order {
        t = &one + &(&x * &t.pow(3));
    }
    t
}

/// One series that must vanish through the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub name: &'static str,
    /// First nonzero coefficient `(n, k, value)`, if any.
    pub first_nonzero: Option<(usize, usize, BigInt)>,
}

impl Residual {
    fn of(name: &'static str, s: &TruncatedBiSeries) -> Self {
        Residual {
            name,
            first_nonzero: s.leading_term(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub order: usize,
    pub residuals: Vec<Residual>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.first_nonzero.is_none())
    }

    pub fn first_failure(&self) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.first_nonzero.is_some())
    }
}

struct Vars {
    one: TruncatedBiSeries,
    x: TruncatedBiSeries,
    y: TruncatedBiSeries,
}

impl Vars {
    fn new(order: usize) -> Self {
        Vars {
            one: TruncatedBiSeries::one(order),
            x: TruncatedBiSeries::x(order),
            y: TruncatedBiSeries::y(order),
        }
    }
}

fn int(order: usize, c: i64) -> TruncatedBiSeries {
    TruncatedBiSeries::constant(order, c)
}

/// `B~(x)` written through `u`: `u^2 (1 - 2u)`.
fn b_tilde_of_u(u: &TruncatedBiSeries) -> TruncatedBiSeries {
    let order = u.order();
    &(u * u) * &(&int(order, 1) - &u.scale(&BigInt::from(2)))
}

/// Quadratic equation for `B~(x, y) = (B(x, y) - x) y`:
/// `B~^2 + [1 - y + x y^2 - y B~(x)] B~ - x y^2 (B~(x) + x (1 - y)) = 0`.
pub fn check_eq1(order: usize) -> IdentityCheck {
    let Vars { one, x, y } = Vars::new(order);
    let b = census_b(order, &SeriesConvention::default());
    let bt_xy = &(&b - &x) * &y;
    let bt_x = b_tilde_of_u(&lagrange_u(order));

    let y2 = &y * &y;
    let bracket = &(&(&one - &y) + &(&x * &y2)) - &(&y * &bt_x);
    let tail = &(&x * &y2) * &(&bt_x + &(&x * &(&one - &y)));
    let lhs = &(&(&bt_xy * &bt_xy) + &(&bracket * &bt_xy)) - &tail;

    let census_bt_x = &b.substitute_y1() - &x;
    IdentityCheck {
        name: "eq1",
        order,
        residuals: vec![
            Residual::of("quadratic in B~(x,y)", &lhs),
            Residual::of("B(x) - x - u^2(1-2u)", &(&census_bt_x - &bt_x)),
        ],
    }
}

/// `y^2 (A(x,y) - A(x,1)) / (y - 1)` without dividing: each `a_{n,k} x^n y^k`
/// contributes `a_{n,k} x^n (1 + y + ... + y^(k-1))`, before the `y^2`.
fn divided_difference(a: &TruncatedBiSeries) -> TruncatedBiSeries {
    let mut out = TruncatedBiSeries::zero(a.order());
    for (n, k, c) in a.terms() {
        for j in 0..k {
            out.add_to(n, j, c);
        }
    }
    out
}

/// `A(x,y) = y B(x,y) + y^2 B(x,y) (A(x,y) - A(x,1)) / (y - 1)`.
pub fn check_eq2(order: usize) -> IdentityCheck {
    let Vars { y, .. } = Vars::new(order);
    let a = census_a(order);
    let b = census_b(order, &SeriesConvention::default());
    let rhs = &(&y * &b) + &(&(&(&y * &y) * &b) * &divided_difference(&a));
    IdentityCheck {
        name: "eq2",
        order,
        residuals: vec![Residual::of("A - yB - y^2 B DA", &(&a - &rhs))],
    }
}

/// The closed forms for `A(x)` and `A(x, y)`, and the kernel root
/// `y*(x) = 1 / (1 - u)`.
pub fn check_theorem4(order: usize) -> IdentityCheck {
    let Vars { one, x, y } = Vars::new(order);
    let a = census_a(order);
    let a1 = a.substitute_y1();
    let u = lagrange_u(order);
    let b = census_b(order, &SeriesConvention::default());

    let a1_2 = &a1 * &a1;
    let a1_3 = &a1_2 * &a1;
    let ya1 = &y * &a1;
    let quad = &(&ya1.scale(&BigInt::from(2)) - &one) * &(&a * &a);
    let lin =
        &(&(&(&y * &a1_2).scale(&BigInt::from(3)) - &ya1.scale(&BigInt::from(3))) + &one) * &a;
    let cst = &(&(&y * &a1_3) - &(&y * &a1_2).scale(&BigInt::from(2))) + &ya1;
    let poly = &(&quad - &lin) + &cst;

    let one_minus_a1 = &one - &a1;
    let univariate = &(&a1 * &(&one_minus_a1 * &one_minus_a1)) - &x;

    let ystar = (&one - &u).inverse().expect("constant term 1");
    let kernel_a = &(&(&ystar - &one) * &ystar.inverse().expect("constant term 1")) - &u;
    let b_at_ystar = b.substitute_y(&ystar).expect("y* is free of y");
    let kernel = &(&ystar - &one) - &(&(&ystar * &ystar) * &b_at_ystar);

    IdentityCheck {
        name: "thm4",
        order,
        residuals: vec![
            Residual::of("quadratic in A(x,y)", &poly),
            Residual::of("A(x)(1-A(x))^2 - x", &univariate),
            Residual::of("A(x) - u(x)", &(&a1 - &u)),
            Residual::of("(y*-1)/y* - u", &kernel_a),
            Residual::of("y* - 1 - y*^2 B(x,y*)", &kernel),
        ],
    }
}

/// `A(x) = x T(x)^2`, with `A(x)` taken as the Lagrange series `u(x)`.
pub fn check_ternary_link(order: usize) -> IdentityCheck {
    let Vars { x, .. } = Vars::new(order);
    let t = ternary_t(order);
    let u = lagrange_u(order);
    IdentityCheck {
        name: "ternary",
        order,
        residuals: vec![Residual::of("u - x T^2", &(&u - &(&x * &(&t * &t))))],
    }
}

pub fn verify_eq1(order: usize) -> bool {
    check_eq1(order).passed()
}

pub fn verify_eq2(order: usize) -> bool {
    check_eq2(order).passed()
}

pub fn verify_theorem4(order: usize) -> bool {
    check_theorem4(order).passed()
}

pub fn verify_ternary_link(order: usize) -> bool {
    check_ternary_link(order).passed()
}
