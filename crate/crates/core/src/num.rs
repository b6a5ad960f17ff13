//! Arbitrary-precision real and complex numbers.
//!
//! [`BigReal`] is a thin wrapper around [`astro_float::BigFloat`] that adds
//! operator overloading. Every value carries its own precision; a binary
//! operation produces its result at the larger of the two operand
//! precisions, and transcendental functions evaluate at the precision of
//! their argument. Callers choose a precision once, when the inputs are
//! constructed, and it propagates from there.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;

/// Extra bits carried by every routine on top of the caller's precision.
pub const GUARD_BITS: usize = 32;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    // Cache of pi, ln 2 etc. Only a cache: precision is never read from here.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Internal precision used by a routine asked for `prec` bits.
pub fn working_precision(prec: usize) -> usize {
    prec + GUARD_BITS
}

#[derive(Clone)]
pub struct BigReal(BigFloat);

impl BigReal {
    pub fn from_f64(x: f64, prec: usize) -> Self {
        BigReal(BigFloat::from_f64(x, prec))
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        BigReal(BigFloat::from_i64(x, prec))
    }

    pub fn from_u64(x: u64, prec: usize) -> Self {
        BigReal(BigFloat::from_u64(x, prec))
    }

    /// Exact rational `num / den`, rounded to `prec` bits.
    pub fn ratio(num: i64, den: i64, prec: usize) -> Self {
        Self::from_i64(num, prec) / Self::from_i64(den, prec)
    }

    /// Rounds an arbitrary-size integer to `prec` bits.
    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        let (sign, digits) = x.to_u64_digits();
        if digits.is_empty() {
            return Self::zero(prec);
        }
        let s = match sign {
            num_bigint::Sign::Minus => Sign::Neg,
            _ => Sign::Pos,
        };
        let exp = (64 * digits.len()) as i32;
        let mut v = BigFloat::from_words(&digits, s, exp);
        v.set_precision(prec, RM).expect("precision change");
        BigReal(v)
    }

    pub fn zero(prec: usize) -> Self {
        BigReal(BigFloat::new(prec))
    }

    pub fn one(prec: usize) -> Self {
        Self::from_u64(1, prec)
    }

    pub fn pi(prec: usize) -> Self {
        BigReal(with_consts(|cc| cc.pi(prec, RM)))
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn prec(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(64).max(64)
    }

    /// Same value rounded (or zero-extended) to `prec` bits.
    pub fn with_prec(&self, prec: usize) -> Self {
        let mut v = self.0.clone();
        v.set_precision(prec, RM).expect("precision change");
        BigReal(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.0.is_zero() || !self.is_finite() {
            return None;
        }
        self.0.exponent()
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        let mant = (top as f64 + next as f64 / 18446744073709551616.0) / 18446744073709551616.0;
        let v = scale_pow2(mant, exp);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> BigInt {
        let half = BigReal::ratio(1, 2, self.prec());
        let shifted = if self.is_negative() {
            -(&(-self) + &half).floor()
        } else {
            (self + &half).floor()
        };
        shifted.trunc_to_bigint()
    }

    fn trunc_to_bigint(&self) -> BigInt {
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return BigInt::from(0);
        };
        if words.is_empty() || exp <= 0 {
            return BigInt::from(0);
        }
        let s = if sign == Sign::Neg {
            num_bigint::Sign::Minus
        } else {
            num_bigint::Sign::Plus
        };
        let mut digits = Vec::with_capacity(words.len() * 2);
        for w in words {
            digits.push(*w as u32);
            digits.push((*w >> 32) as u32);
        }
        let m = BigInt::from_slice(s, &digits);
        let width = 64 * words.len() as i64;
        let shift = width - exp as i64;
        if shift >= 0 {
            m >> (shift as usize)
        } else {
            m << ((-shift) as usize)
        }
    }

    pub fn abs(&self) -> Self {
        BigReal(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        BigReal(self.0.floor())
    }

    pub fn fract(&self) -> Self {
        // BigFloat::fract keeps the sign; fractional part here means x - floor(x).
        self - &self.floor()
    }

    pub fn sqrt(&self) -> Self {
        BigReal(self.0.sqrt(self.prec(), RM))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        BigReal(with_consts(|cc| self.0.exp(p, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        let p = self.prec();
        BigReal(with_consts(|cc| self.0.ln(p, RM, cc)))
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        BigReal(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        BigReal(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        let p = self.prec();
        BigReal(with_consts(|cc| self.0.atan(p, RM, cc)))
    }

    /// Quadrant-aware arctangent of `y / x`, in `(-pi, pi]`.
    pub fn atan2(y: &BigReal, x: &BigReal) -> Self {
        let p = y.prec().max(x.prec());
        if x.is_zero() {
            let half_pi = BigReal::pi(p) / 2.0;
            return if y.is_negative() { -half_pi } else if y.is_zero() { BigReal::zero(p) } else { half_pi };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - BigReal::pi(p)
        } else {
            base + BigReal::pi(p)
        }
    }

    /// `self^y` for `self > 0`.
    pub fn pow(&self, y: &BigReal) -> Self {
        let p = self.prec().max(y.prec());
        BigReal(with_consts(|cc| self.0.pow(&y.0, p, RM, cc)))
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let v = BigReal(self.0.powi(n.unsigned_abs() as usize, p, RM));
        if n < 0 {
            v.recip()
        } else {
            v
        }
    }

    pub fn recip(&self) -> Self {
        BigReal(self.0.reciprocal(self.prec(), RM))
    }

    pub fn max(&self, other: &BigReal) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &BigReal) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let s = with_consts(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| format!("{}", self.to_f64()));
        truncate_decimal(&s, digits)
    }
}

fn scale_pow2(x: f64, e: i32) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e)
}

fn truncate_decimal(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mut out = String::new();
    let mut seen = 0;
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if seen >= digits.max(1) {
                continue;
            }
            seen += 1;
        }
        out.push(ch);
    }
    if out.ends_with('.') {
        out.pop();
    }
    out + exp
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => write!(f, "{}", self.to_sci(d)),
            None => write!(f, "{}", self.to_sci(30)),
        }
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let p = self.prec().max(rhs.prec());
                BigReal(self.0.$inner(&rhs.0, p, RM))
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
        impl $tr<f64> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: f64) -> BigReal {
                self.$method(&BigReal::from_f64(rhs, self.prec()))
            }
        }
        impl $tr<f64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: f64) -> BigReal {
                (&self).$method(rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(self.0.neg())
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-&self.0)
    }
}

/// Complex number with [`BigReal`] parts.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigReal) -> Self {
        let p = re.prec();
        BigComplex { re, im: BigReal::zero(p) }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        BigComplex { re: BigReal::from_f64(re, prec), im: BigReal::from_f64(im, prec) }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: usize) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    /// `r * e^{i theta}`
    pub fn from_polar(r: &BigReal, theta: &BigReal) -> Self {
        BigComplex { re: r * theta.cos(), im: r * theta.sin() }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> BigReal {
        BigReal::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, k: &BigReal) -> Self {
        BigComplex { re: &self.re * k, im: &self.im * k }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        BigComplex { re: &self.re / &d, im: -(&self.im / &d) }
    }

    pub fn exp(&self) -> Self {
        BigComplex::from_polar(&self.re.exp(), &self.im)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        BigComplex { re: self.abs().ln(), im: self.arg() }
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let re = ((&r + &self.re) / 2.0).sqrt();
        let im_mag = ((&r - &self.re) / 2.0).sqrt();
        let im = if self.im.is_negative() { -im_mag } else { im_mag };
        BigComplex { re, im }
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = BigComplex::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(30);
        write!(f, "{} + {}i", self.re.to_sci(d), self.im.to_sci(d))
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &d;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &d;
        BigComplex { re, im }
    }
}

macro_rules! complex_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                (&self).$method(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$method(&rhs)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

impl Mul<&BigReal> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigReal) -> BigComplex {
        self.scale(rhs)
    }
}

impl Add<&BigReal> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigReal) -> BigComplex {
        BigComplex { re: &self.re + rhs, im: self.im.clone() }
    }
}

impl Sub<&BigReal> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigReal) -> BigComplex {
        BigComplex { re: &self.re - rhs, im: self.im.clone() }
    }
}
