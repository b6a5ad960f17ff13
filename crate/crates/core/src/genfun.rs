//! Generating functions as exact truncated series.
//!
//! Hypergeometric-type sums `sum_m t_m` are built innermost-first: with
//! `r_m = t_m / t_(m-1)` the sum is `1 + r_1 (1 + r_2 (1 + ...))`, and each
//! `r_m` is a monomial shift combined with a few `(1 +- q^k)` factors. Every
//! factor costs O(N), so a sum with `sqrt(N)` live terms costs O(N^1.5)
//! big-integer additions instead of a full product expansion per term.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::{neg_pochhammer, qpochhammer, Count, PowerSeries};

/// Residue class `m mod 4` of the summation index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParityClass(u8);

impl ParityClass {
    pub fn new(j: u8) -> Result<Self> {
        if j < 4 {
            Ok(ParityClass(j))
        } else {
            Err(Error::InvalidArgument(format!("parity class must be 0..=3, got {j}")))
        }
    }

    pub fn all() -> [ParityClass; 4] {
        [ParityClass(0), ParityClass(1), ParityClass(2), ParityClass(3)]
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// `m(m+1)/2` is even exactly for `m = 0, 3 (mod 4)`.
    pub fn feeds_even(self) -> bool {
        matches!(self.0, 0 | 3)
    }
}

fn triangular(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Largest `m` with `f(m) <= order` for increasing `f` with `f(0) = 0`.
fn last_index(order: usize, f: impl Fn(usize) -> usize) -> usize {
    let mut m = 0;
    while f(m + 1) <= order {
        m += 1;
    }
    m
}

/// `1 + r_1(1 + r_2(1 + ... r_top))`, where `apply_ratio(s, m)` multiplies
/// `s` by `r_m` in place.
fn nested_sum(order: usize, top: usize, mut apply_ratio: impl FnMut(&mut PowerSeries, usize)) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for m in (1..=top).rev() {
        apply_ratio(&mut acc, m);
        *acc.coeff_mut(0) += 1;
    }
    acc
}

/// `O(q) = sum_m q^(m(m+1)/2) / (q^2; q^2)_m`, coefficients `OE(0..=N)`.
pub fn oe_series(order: usize) -> PowerSeries {
    let top = last_index(order, triangular);
    nested_sum(order, top, |s, m| {
        s.div_binomial_in_place(2 * m, -1);
        s.shift_in_place(m);
    })
}

/// `S_j = sum_{m = j (mod 4)} q^(m(m+1)/2) / (q^2; q^2)_m`.
pub fn sj_series(class: ParityClass, order: usize) -> PowerSeries {
    let j = class.index() as usize;
    if triangular(j) > order {
        return PowerSeries::zero(order);
    }
    // Steps of four in m: t_m / t_(m-4) = q^(4m-6) / prod_{i=m-3}^{m} (1 - q^(2i)).
    let top = last_index(order, |k| triangular(j + 4 * k));
    let inner = nested_sum(order, top, |s, k| {
        let m = j + 4 * k;
        for i in m - 3..=m {
            s.div_binomial_in_place(2 * i, -1);
        }
        s.shift_in_place(4 * m - 6);
    });
    // Leading term t_j.
    let mut out = inner;
    for i in 1..=j {
        out.div_binomial_in_place(2 * i, -1);
    }
    out.shift_in_place(triangular(j));
    out
}

/// `(O_e, O_o)`: the even- and odd-exponent parts of `O(q)`.
pub fn parity_split(order: usize) -> (PowerSeries, PowerSeries) {
    let full = oe_series(order);
    let mut even = PowerSeries::zero(order);
    let mut odd = PowerSeries::zero(order);
    for (k, c) in full.coeffs().iter().enumerate() {
        let target = if k % 2 == 0 { &mut even } else { &mut odd };
        *target.coeff_mut(k) = c.clone();
    }
    (even, odd)
}

/// Third-order mock theta function `f(q) = sum_n q^(n^2) / (-q; q)_n^2`.
pub fn f_mock_series(order: usize) -> PowerSeries {
    let top = last_index(order, |n| n * n);
    nested_sum(order, top, |s, n| {
        s.div_binomial_in_place(n, 1);
        s.div_binomial_in_place(n, 1);
        s.shift_in_place(2 * n - 1);
    })
}

/// `2 sum_{n in Z} (-1)^n q^(n(3n+1)/2) / (1 + q^n)`, i.e. `f(q) (q; q)_inf`.
///
/// Uses the fold `sum_{n in Z} = 1/2 + 2 sum_{n >= 1}` and expands
/// `1/(1 + q^n)` geometrically.
pub fn watson_core(order: usize) -> PowerSeries {
    let mut s = PowerSeries::one(order);
    let mut n = 1usize;
    while n * (3 * n + 1) / 2 <= order {
        let base = n * (3 * n + 1) / 2;
        let mut k = 0usize;
        while base + n * k <= order {
            let sign_odd = (n + k) % 2 == 1;
            let c = s.coeff_mut(base + n * k);
            if sign_odd {
                *c -= 4;
            } else {
                *c += 4;
            }
            k += 1;
        }
        n += 1;
    }
    s
}

/// `sum_m (-1; q)_m q^(m(m+1)/2) / (q^2; q^2)_m`, coefficients `OE-bar(0..=N)`.
pub fn oebar_series_hypergeometric(order: usize) -> PowerSeries {
    let top = last_index(order, triangular);
    nested_sum(order, top, |s, m| {
        if m == 1 {
            *s = s.scale(&BigInt::from(2));
        } else {
            s.mul_binomial_in_place(m - 1, 1);
        }
        s.div_binomial_in_place(2 * m, -1);
        s.shift_in_place(m);
    })
}

/// `(-q; q)_inf f(q)`, the mixed mock modular form.
pub fn oebar_series_product(order: usize) -> PowerSeries {
    &neg_pochhammer(1, Count::Infinite, order) * &f_mock_series(order)
}

/// `f(q) = watson_core / (q; q)_inf`, dividing via the series inverse.
pub fn f_mock_from_watson(order: usize) -> PowerSeries {
    let euler = qpochhammer(1, 1, Count::Infinite, order).expect("valid pochhammer arguments");
    &watson_core(order) * &euler.invert().expect("(q;q)_inf has constant term 1")
}

/// Generic `sum_n q^(e(n)) / (q^d; q^d)_n` with `e(0) = 0`, `e` increasing.
fn basic_hypergeometric(order: usize, step: usize, exponent: impl Fn(usize) -> usize) -> PowerSeries {
    let top = last_index(order, &exponent);
    nested_sum(order, top, |s, n| {
        s.div_binomial_in_place(step * n, -1);
        s.shift_in_place(exponent(n) - exponent(n - 1));
    })
}

/// One line of the classical identity report.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub order: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<usize>,
}

impl IdentityCheck {
    pub fn compare(name: &'static str, lhs: &PowerSeries, rhs: &PowerSeries) -> Self {
        let order = lhs.order().min(rhs.order());
        let bad: Vec<usize> = (0..=order).filter(|&k| lhs.coeff(k) != rhs.coeff(k)).collect();
        IdentityCheck { name, order, mismatches: bad.len(), first_mismatch: bad.first().copied() }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// The five sum-product identities whose companion is the odd-even series,
/// plus the odd-even series itself compared against [`oe_series`].
pub fn classical_identity_suite(order: usize) -> Vec<IdentityCheck> {
    let n = order;
    let inv = |s: PowerSeries| s.invert().expect("product with constant term 1");
    let poch = |start, step| qpochhammer(start, step, Count::Infinite, n).expect("valid pochhammer arguments");

    let partitions = inv(poch(1, 1));
    let distinct = neg_pochhammer(1, Count::Infinite, n);
    let rogers_ramanujan = inv(&poch(1, 5) * &poch(4, 5));
    let odd_parts = inv(poch(1, 2));
    let mut distinct_odd = PowerSeries::one(n);
    for k in (1..=n).step_by(2) {
        distinct_odd.mul_binomial_in_place(k, 1);
    }

    vec![
        IdentityCheck::compare("euler_partitions", &basic_hypergeometric(n, 1, |m| m), &partitions),
        IdentityCheck::compare("euler_distinct_parts", &basic_hypergeometric(n, 1, triangular), &distinct),
        IdentityCheck::compare("rogers_ramanujan", &basic_hypergeometric(n, 1, |m| m * m), &rogers_ramanujan),
        IdentityCheck::compare("odd_parts", &basic_hypergeometric(n, 2, |m| m), &odd_parts),
        IdentityCheck::compare("distinct_odd_parts", &basic_hypergeometric(n, 2, |m| m * m), &distinct_odd),
        IdentityCheck::compare("odd_even_series", &basic_hypergeometric(n, 2, triangular), &oe_series(n)),
    ]
}

/// Whether every coefficient is nonnegative.
pub fn is_nonnegative(s: &PowerSeries) -> bool {
    s.coeffs().iter().all(|c| c >= &BigInt::zero())
}

/// `OE(n) <= OE(n + 2)` for `from <= n <= order - 2`.
pub fn shift_monotone(s: &PowerSeries, from: usize) -> bool {
    (from..s.order().saturating_sub(1)).all(|k| s.coeff(k) <= s.coeff(k + 2))
}

pub fn coefficient_is_one(s: &PowerSeries, k: usize) -> bool {
    s.coeff(k).is_one()
}
