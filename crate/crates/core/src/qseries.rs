//! Exact truncated power series in `q` with big-integer coefficients.
//!
//! A [`PowerSeries`] of order `N` stores the coefficients of `q^0 ..= q^N`
//! and is exact modulo `q^(N+1)`. Binary operations truncate to the smaller
//! of the two operand orders, so no coefficient is ever reported beyond the
//! point where it is known.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{working_precision, BigComplex, BigReal};

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, BigInt::one(), order)
    }

    /// `c * q^exp`, or zero if `exp > order`.
    pub fn monomial(exp: usize, c: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Series whose order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least the constant term");
        PowerSeries { coeffs }
    }

    /// Small-integer convenience constructor; missing coefficients are zero.
    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (c, v) in s.coeffs.iter_mut().zip(values) {
            *c = BigInt::from(*v);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut BigInt {
        &mut self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every coefficient above `order`.
    ///
    /// # Panics
    /// If `order` exceeds the current order (the missing terms are unknown).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series from order {} to {order}", self.order());
        PowerSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Coefficientwise sum at order `min(order(a), order(b))`.
    pub fn add(&self, other: &PowerSeries) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &PowerSeries) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        PowerSeries { coeffs }
    }

    /// Cauchy product truncated to `min(order(a), order(b))`.
    pub fn mul(&self, other: &PowerSeries) -> Self {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: convolve(&self.coeffs, &other.coeffs, n) }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplicative inverse modulo `q^(N+1)`.
    ///
    /// Needs a unit constant term; uses `b_0 = 1/a_0`,
    /// `b_k = -a_0 * sum_{j=1..k} a_j b_{k-j}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(a0.to_string()));
        }
        let n = self.order();
        let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
        b.push(a0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                let aj = &self.coeffs[j];
                if !aj.is_zero() {
                    acc += aj * &b[k - j];
                }
            }
            b.push(-(a0 * acc));
        }
        Ok(PowerSeries { coeffs: b })
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        if k <= n {
            coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        PowerSeries { coeffs }
    }

    /// In place: `self *= q^k`, keeping the order.
    pub fn shift_in_place(&mut self, k: usize) {
        let n = self.order();
        if k > n {
            self.coeffs.iter_mut().for_each(|c| *c = BigInt::zero());
            return;
        }
        self.coeffs.truncate(n + 1 - k);
        self.coeffs.splice(0..0, std::iter::repeat_with(BigInt::zero).take(k));
    }

    /// In place: `self *= (1 + sign * q^k)` with `sign = +-1`, `k >= 1`.
    pub fn mul_binomial_in_place(&mut self, k: usize, sign: i8) {
        assert!(k >= 1);
        let n = self.order();
        if k > n {
            return;
        }
        for j in (k..=n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(j);
            if sign > 0 {
                hi[0] += &lo[j - k];
            } else {
                hi[0] -= &lo[j - k];
            }
        }
    }

    /// In place: `self /= (1 + sign * q^k)` with `sign = +-1`, `k >= 1`.
    pub fn div_binomial_in_place(&mut self, k: usize, sign: i8) {
        assert!(k >= 1);
        let n = self.order();
        for j in k..=n {
            let (lo, hi) = self.coeffs.split_at_mut(j);
            if sign > 0 {
                hi[0] -= &lo[j - k];
            } else {
                hi[0] += &lo[j - k];
            }
        }
    }

    /// Substitutes `q -> q^d`, keeping the order.
    pub fn dilate(&self, d: usize) -> Self {
        assert!(d >= 1);
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * d > n {
                break;
            }
            out.coeffs[k * d] = c.clone();
        }
        out
    }

    /// Coefficients rounded to `prec` bits, for repeated numeric evaluation.
    pub fn to_numeric(&self, prec: usize) -> Vec<BigReal> {
        self.coeffs.iter().map(|c| BigReal::from_bigint(c, prec)).collect()
    }

    /// Exact partial sum at `point` plus a tail bound.
    pub fn evaluate_at(&self, point: &BigComplex, prec: usize, growth: &GrowthBound) -> Result<EvalResult> {
        let wp = working_precision(prec);
        let radius = point.abs().to_f64();
        if !(radius < 1.0) {
            return Err(Error::OutsideUnitDisc(radius));
        }
        let z = BigComplex::new(point.re.with_prec(wp), point.im.with_prec(wp));
        let coeffs = self.to_numeric(wp);
        let value = horner(&coeffs, &z);
        let tail_bound = growth.tail_bound(self.order(), radius, wp);
        Ok(EvalResult { value, tail_bound })
    }
}

fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    // Schoolbook; at the orders used here the big-integer additions dominate
    // and most products involve sparse factors.
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Horner evaluation of `sum c_k z^k`; takes the real path when `Im z = 0`.
pub fn horner(coeffs: &[BigReal], z: &BigComplex) -> BigComplex {
    let p = z.prec();
    if z.im.is_zero() {
        let mut acc = BigReal::zero(p);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &z.re) + c;
        }
        return BigComplex::from_real(acc);
    }
    let mut acc = BigComplex::zero(p);
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

/// Hypothesis on coefficient size used to bound the omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthBound {
    /// The series is a polynomial: nothing beyond the stored order.
    Polynomial,
    /// `|c_k| <= scale * exp(sqrt_rate * sqrt(k))` for every `k`.
    SubExponential { scale: f64, sqrt_rate: f64 },
}

impl GrowthBound {
    pub fn sub_exponential(sqrt_rate: f64) -> Self {
        GrowthBound::SubExponential { scale: 1.0, sqrt_rate }
    }

    /// Bound on `sum_{k > order} |c_k| r^k`.
    pub fn tail_bound(&self, order: usize, radius: f64, prec: usize) -> BigReal {
        match self {
            GrowthBound::Polynomial => BigReal::zero(prec),
            GrowthBound::SubExponential { scale, sqrt_rate } => {
                match log_tail_sum(order, radius, *scale, *sqrt_rate) {
                    Some(log_tail) => BigReal::from_f64(log_tail, prec).exp(),
                    None => BigReal::zero(prec),
                }
            }
        }
    }
}

/// `log sum_{k>order} scale * exp(rate sqrt k) r^k`, or `None` when `r = 0`.
///
/// Sums explicitly until the term ratio bound `exp(rate / (2 sqrt k)) * r`
/// drops below 1/2 past the peak, then closes with a geometric tail.
fn log_tail_sum(order: usize, radius: f64, scale: f64, rate: f64) -> Option<f64> {
    if radius == 0.0 {
        return None;
    }
    if radius >= 1.0 {
        return Some(f64::INFINITY);
    }
    let ln_r = radius.ln();
    let log_term = |k: f64| scale.ln() + rate * k.sqrt() + k * ln_r;
    let mut k = (order + 1) as f64;
    let mut acc = f64::NEG_INFINITY;
    let start = k;
    loop {
        // The ratio bound decreases in k, so once below 1 it bounds every later ratio.
        let ratio_log = rate / (2.0 * k.sqrt()) + ln_r;
        if ratio_log <= -std::f64::consts::LN_2 || (ratio_log < 0.0 && k - start > 100_000.0) {
            let lt = log_term(k) - (1.0 - ratio_log.exp()).ln();
            return Some(log_add(acc, lt) + 1e-9);
        }
        acc = log_add(acc, log_term(k));
        k += 1.0;
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Partial sum with a bound on the omitted tail.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: BigComplex,
    pub tail_bound: BigReal,
}

/// `(q^start; q^step)_count = prod_{j<count} (1 - q^(start + j*step))` mod `q^(N+1)`.
pub fn qpochhammer(start_exp: usize, step: usize, count: Count, order: usize) -> Result<PowerSeries> {
    if start_exp == 0 || step == 0 {
        return Err(Error::InvalidArgument(format!(
            "qpochhammer needs start_exp >= 1 and step >= 1 (got {start_exp}, {step})"
        )));
    }
    let mut s = PowerSeries::one(order);
    for e in factor_exponents(start_exp, step, count, order) {
        s.mul_binomial_in_place(e, -1);
    }
    Ok(s)
}

/// `(-q^start; q)_count = prod_{j<count} (1 + q^(start + j))` mod `q^(N+1)`.
///
/// `start_exp = 0` gives `(-1; q)_m`, whose first factor is 2.
pub fn neg_pochhammer(start_exp: usize, count: Count, order: usize) -> PowerSeries {
    let mut s = PowerSeries::one(order);
    let mut rest = count;
    if start_exp == 0 {
        match count {
            Count::Finite(0) => return s,
            Count::Finite(m) => rest = Count::Finite(m - 1),
            Count::Infinite => {}
        }
        s = s.scale(&BigInt::from(2));
        for e in factor_exponents(1, 1, rest, order) {
            s.mul_binomial_in_place(e, 1);
        }
        return s;
    }
    for e in factor_exponents(start_exp, 1, rest, order) {
        s.mul_binomial_in_place(e, 1);
    }
    s
}

// Exponents of the nontrivial factors modulo q^(N+1).
fn factor_exponents(start: usize, step: usize, count: Count, order: usize) -> impl Iterator<Item = usize> {
    let limit = match count {
        Count::Finite(m) => m,
        Count::Infinite => usize::MAX,
    };
    (0..limit).map(move |j| start + j * step).take_while(move |&e| e <= order)
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::add(self, rhs)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::sub(self, rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
