//! Exact constants of the form `+-pi^a * prod p^(e_p)` with rational exponents.
//!
//! Closed under multiplication, division and rational powers, which is all the
//! Tauberian transfer needs. Two values are equal iff their normal forms are.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::num::BigReal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    negative: bool,
    pi: Rational64,
    primes: BTreeMap<u64, Rational64>,
}

impl ClosedForm {
    pub fn one() -> Self {
        ClosedForm { negative: false, pi: Rational64::zero(), primes: BTreeMap::new() }
    }

    pub fn pi() -> Self {
        ClosedForm { pi: Rational64::one(), ..Self::one() }
    }

    /// Nonzero integer, factored by trial division.
    pub fn integer(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("zero has no closed form".into()));
        }
        let mut out = Self::one();
        out.negative = n < 0;
        let mut m = n.unsigned_abs();
        let mut p = 2u64;
        while p * p <= m {
            while m % p == 0 {
                *out.primes.entry(p).or_insert_with(Rational64::zero) += 1;
                m /= p;
            }
            p += 1;
        }
        if m > 1 {
            *out.primes.entry(m).or_insert_with(Rational64::zero) += 1;
        }
        Ok(out)
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        Ok(Self::integer(num)? / Self::integer(den)?)
    }

    /// Real power with rational exponent; negative bases only for integer exponents.
    pub fn pow(&self, e: Rational64) -> Result<Self> {
        if self.negative && !e.is_integer() {
            return Err(Error::InvalidArgument("fractional power of a negative closed form".into()));
        }
        let negative = self.negative && (e.to_integer() % 2 != 0);
        let primes = self.primes.iter().map(|(&p, &x)| (p, x * e)).collect();
        Ok(ClosedForm { negative, pi: self.pi * e, primes }.normalized())
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.pow(Rational64::new(1, 2))
    }

    pub fn recip(&self) -> Self {
        self.pow(-Rational64::one()).expect("integer exponent")
    }

    pub fn to_real(&self, prec: usize) -> BigReal {
        let mut v = BigReal::one(prec);
        if !self.pi.is_zero() {
            v = &v * &BigReal::pi(prec).pow(&rational_to_real(self.pi, prec));
        }
        for (&p, &e) in &self.primes {
            v = &v * &BigReal::from_u64(p, prec).pow(&rational_to_real(e, prec));
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    fn normalized(mut self) -> Self {
        self.primes.retain(|_, e| !e.is_zero());
        self
    }
}

fn rational_to_real(r: Rational64, prec: usize) -> BigReal {
    BigReal::ratio(*r.numer(), *r.denom(), prec)
}

impl Mul for &ClosedForm {
    type Output = ClosedForm;
    fn mul(self, rhs: &ClosedForm) -> ClosedForm {
        let mut primes = self.primes.clone();
        for (&p, &e) in &rhs.primes {
            *primes.entry(p).or_insert_with(Rational64::zero) += e;
        }
        ClosedForm { negative: self.negative != rhs.negative, pi: self.pi + rhs.pi, primes }.normalized()
    }
}

impl Mul for ClosedForm {
    type Output = ClosedForm;
    fn mul(self, rhs: ClosedForm) -> ClosedForm {
        &self * &rhs
    }
}

impl Div for &ClosedForm {
    type Output = ClosedForm;
    fn div(self, rhs: &ClosedForm) -> ClosedForm {
        self * &rhs.recip()
    }
}

impl Div for ClosedForm {
    type Output = ClosedForm;
    fn div(self, rhs: ClosedForm) -> ClosedForm {
        &self / &rhs
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if !self.pi.is_zero() {
            factors.push(format!("pi^({})", self.pi));
        }
        for (p, e) in &self.primes {
            factors.push(format!("{p}^({e})"));
        }
        let body = if factors.is_empty() { "1".to_string() } else { factors.join(" * ") };
        if self.negative {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}
