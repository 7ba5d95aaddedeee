//! Exact truncated power series in `x`, polynomial in `y`.
//!
//! A [`TruncatedBiSeries`] of order `N` stores the coefficients of `x^n y^k`
//! for `n <= N` as big integers; every product is truncated at `x^N`. A
//! series without `y` is simply one whose only column is `k = 0`.

mod identities;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use identities::{
    census_a, census_a_enumerated, census_b, check_eq1, check_eq2, check_ternary_link,
    check_theorem4, lagrange_u, ternary_t, verify_eq1, verify_eq2, verify_ternary_link,
    verify_theorem4, IdentityCheck, Residual, SeriesConvention,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: constant term must be 1 or -1 and free of y")]
    NotInvertible,
    #[error("substituted series must be free of y")]
    NotUnivariate,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedBiSeries {
    order: usize,
    /// `coeffs[n][k]`; trailing zeros in each row are trimmed.
    coeffs: Vec<Vec<BigInt>>,
}

impl TruncatedBiSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedBiSeries {
            order,
            coeffs: vec![Vec::new(); order + 1],
        }
    }

    pub fn constant(order: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(order, 0, 0, c)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, 1)
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(order, 1, 0, 1)
    }

    pub fn y(order: usize) -> Self {
        Self::monomial(order, 0, 1, 1)
    }

    /// `c x^n y^k`, or zero when `n` exceeds the order.
    pub fn monomial(order: usize, n: usize, k: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.set(n, k, c.into());
        }
        s
    }

    /// Series in `x` alone from its coefficients, `coeffs[n]` for `x^n`.
    pub fn univariate<I, C>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.set(n, 0, c.into());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize, k: usize) -> BigInt {
        self.coeffs
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of `x^n` in a series free of `y`.
    pub fn x_coeff(&self, n: usize) -> BigInt {
        self.coeff(n, 0)
    }

    pub fn set(&mut self, n: usize, k: usize, c: BigInt) {
        assert!(n <= self.order, "x^{n} is beyond order {}", self.order);
        let row = &mut self.coeffs[n];
        if row.len() <= k {
            if c.is_zero() {
                return;
            }
            row.resize(k + 1, BigInt::zero());
        }
        row[k] = c;
        trim(row);
    }

    pub fn add_to(&mut self, n: usize, k: usize, c: &BigInt) {
        if n > self.order {
            return;
        }
        let row = &mut self.coeffs[n];
        if row.len() <= k {
            row.resize(k + 1, BigInt::zero());
        }
        row[k] += c;
        trim(row);
    }

    /// Nonzero terms `(n, k, c)` ordered by `n` then `k`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (n, k, c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Vec::is_empty)
    }

    /// First nonzero term, if any.
    pub fn leading_term(&self) -> Option<(usize, usize, BigInt)> {
        self.terms().next().map(|(n, k, c)| (n, k, c.clone()))
    }

    pub fn is_univariate(&self) -> bool {
        self.coeffs.iter().all(|row| row.len() <= 1)
    }

    /// Same series read at a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedBiSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (n, k, c) in other.terms() {
            out.add_to(n, k, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.checked_add(&other.scale(&BigInt::from(-1)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (n1, row1) in self.coeffs.iter().enumerate() {
            if row1.is_empty() {
                continue;
            }
            for (n2, row2) in other.coeffs.iter().enumerate().take(self.order + 1 - n1) {
                if row2.is_empty() {
                    continue;
                }
                let target = &mut out.coeffs[n1 + n2];
                let need = row1.len() + row2.len() - 1;
                if target.len() < need {
                    target.resize(need, BigInt::zero());
                }
                for (k1, c1) in row1.iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    for (k2, c2) in row2.iter().enumerate() {
                        target[k1 + k2] += c1 * c2;
                    }
                }
            }
        }
        for row in &mut out.coeffs {
            trim(row);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for v in row.iter_mut() {
                *v *= c;
            }
            trim(row);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sets `y = 1`.
    pub fn substitute_y1(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (n, row) in self.coeffs.iter().enumerate() {
            let total: BigInt = row.iter().sum();
            out.set(n, 0, total);
        }
        out
    }

    /// Substitutes a series in `x` alone for `y`.
    pub fn substitute_y(&self, y_value: &Self) -> Result<Self, SeriesError> {
        self.check_order(y_value)?;
        if !y_value.is_univariate() {
            return Err(SeriesError::NotUnivariate);
        }
        let max_k = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_k);
        let mut p = Self::one(self.order);
        for _ in 0..max_k {
            powers.push(p.clone());
            p = &p * y_value;
        }
        let mut out = Self::zero(self.order);
        for (n, k, c) in self.terms() {
            // x^n * c * y_value^k
            for (m, coeff) in powers[k].coeffs.iter().enumerate().take(self.order + 1 - n) {
                if let Some(v) = coeff.first() {
                    out.add_to(n + m, 0, &(c * v));
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series in `x` alone with constant term ±1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.is_univariate() {
            return Err(SeriesError::NotInvertible);
        }
        let c0 = self.x_coeff(0);
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NotInvertible);
        }
        // a * inv = 1  =>  inv_n = -c0 * sum_{i=1..n} a_i inv_{n-i}
        let mut inv: Vec<BigInt> = vec![c0.clone()];
        for n in 1..=self.order {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                acc += self.x_coeff(i) * &inv[n - i];
            }
            inv.push(-(&c0 * acc));
        }
        Ok(Self::univariate(self.order, inv))
    }
}

fn trim(row: &mut Vec<BigInt>) {
    while row.last().is_some_and(Zero::is_zero) {
        row.pop();
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the truncation orders differ; see the `checked_*` methods.
        impl $trait<&TruncatedBiSeries> for &TruncatedBiSeries {
            type Output = TruncatedBiSeries;
            fn $method(self, rhs: &TruncatedBiSeries) -> TruncatedBiSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn neg(self) -> TruncatedBiSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for TruncatedBiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, k, c) in self.terms() {
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (n == 0 && k == 0) {
                parts.push(mag.to_string());
            }
            match n {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{n}")),
            }
            match k {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{k}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

impl fmt::Debug for TruncatedBiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: usize = 6;

    #[test]
    fn examples() {
        let x = TruncatedBiSeries::x(N);
        let y = TruncatedBiSeries::y(N);
        assert_eq!(&x + &x, TruncatedBiSeries::monomial(N, 1, 0, 2));
        let xy = &x * &y;
        assert_eq!(&xy * &xy, TruncatedBiSeries::monomial(N, 2, 2, 1));
        let s = &xy + &(&xy * &xy).scale(&BigInt::from(2));
        assert_eq!(
            s.substitute_y1(),
            TruncatedBiSeries::univariate(N, [0, 1, 2])
        );
    }

    #[test]
    fn truncation_and_mismatch() {
        let x = TruncatedBiSeries::x(3);
        assert!(x.pow(4).is_zero());
        assert_eq!(x.pow(3), TruncatedBiSeries::monomial(3, 3, 0, 1));
        let other = TruncatedBiSeries::x(4);
        assert_eq!(x.checked_add(&other), Err(SeriesError::OrderMismatch(3, 4)));
        assert_eq!(x.checked_mul(&other), Err(SeriesError::OrderMismatch(3, 4)));
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let s = &TruncatedBiSeries::one(N) - &TruncatedBiSeries::x(N);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, TruncatedBiSeries::univariate(N, vec![1; N + 1]));
        assert_eq!(&s * &inv, TruncatedBiSeries::one(N));
        assert_eq!(
            TruncatedBiSeries::constant(N, 2).inverse(),
            Err(SeriesError::NotInvertible)
        );
        assert_eq!(
            TruncatedBiSeries::y(N).inverse(),
            Err(SeriesError::NotInvertible)
        );
    }

    #[test]
    fn substitute_y_matches_hand_expansion() {
        // y^2 with y = 1 + x gives 1 + 2x + x^2
        let y2 = TruncatedBiSeries::y(N).pow(2);
        let y_val = &TruncatedBiSeries::one(N) + &TruncatedBiSeries::x(N);
        assert_eq!(
            y2.substitute_y(&y_val).unwrap(),
            TruncatedBiSeries::univariate(N, [1, 2, 1])
        );
        assert_eq!(
            y2.substitute_y(&TruncatedBiSeries::y(N)),
            Err(SeriesError::NotUnivariate)
        );
    }

    #[test]
    fn display() {
        let s = &TruncatedBiSeries::x(3) - &TruncatedBiSeries::monomial(3, 2, 1, 3);
        assert_eq!(s.to_string(), "x - 3*x^2*y + O(x^4)");
        assert_eq!(TruncatedBiSeries::zero(2).to_string(), "0 + O(x^3)");
    }

    fn arb_series() -> impl Strategy<Value = TruncatedBiSeries> {
        proptest::collection::vec((0..=N, 0usize..4, -20i64..20), 0..8).prop_map(|terms| {
            let mut s = TruncatedBiSeries::zero(N);
            for (n, k, c) in terms {
                s.add_to(n, k, &BigInt::from(c));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn y1_substitution_is_a_ring_map(a in arb_series(), b in arb_series()) {
            prop_assert_eq!((&a * &b).substitute_y1(), &a.substitute_y1() * &b.substitute_y1());
            prop_assert_eq!((&a + &b).substitute_y1(), &a.substitute_y1() + &b.substitute_y1());
        }
    }
}
